import csv
import os

import numpy as np

from utilities.constants import *
from utilities.errors import InvalidArgumentError
from utilities.serialization import write_jsonl, read_jsonl

from problems.scenario_tree import ScenarioTree, chain_tree

# _as_matrix
def _as_matrix(values, name, shape=None):
    arr = np.array(values, dtype=np.float64)
    if(shape is not None and arr.shape != shape):
        raise InvalidArgumentError("%s has shape %s, expected %s" % (name, arr.shape, shape))
    if(not np.all(np.isfinite(arr))):
        raise InvalidArgumentError("%s has non-finite entries" % name)

    return arr

# MclspInstance
class MclspInstance:
    """
    ----------
    - Multi-item capacitated lot-sizing instance
    - Item-by-stage arrays have shape (n_items, horizon), capacity has shape (horizon,)
    - Constraint system: inventory balance, shared stage capacity, setup linking
    ----------
    """

    kind = KIND_MCLSP

    # __init__
    def __init__(self, demand, capacity, setup_cost, production_cost, holding_cost, initial_inventory=None, instance_id=0, seed=None):
        self.demand = _as_matrix(demand, "demand")
        if(self.demand.ndim != 2):
            raise InvalidArgumentError("MclspInstance: demand must be (items, stages)")

        d, T = self.demand.shape
        self.capacity = _as_matrix(capacity, "capacity", (T,))
        self.setup_cost = _as_matrix(setup_cost, "setup_cost", (d, T))
        self.production_cost = _as_matrix(production_cost, "production_cost", (d, T))
        self.holding_cost = _as_matrix(holding_cost, "holding_cost", (d, T))
        if(initial_inventory is None):
            initial_inventory = np.zeros(d)
        self.initial_inventory = _as_matrix(initial_inventory, "initial_inventory", (d,))

        self.instance_id = instance_id
        self.seed = seed

        for name in ("demand", "setup_cost", "production_cost", "holding_cost", "initial_inventory"):
            if(np.any(getattr(self, name) < 0)):
                raise InvalidArgumentError("MclspInstance: %s must be nonnegative" % name)
        # Zero capacity only shows up on item subsets with no demand at that stage
        if(np.any(self.capacity < 0)):
            raise InvalidArgumentError("MclspInstance: capacity must be nonnegative")

    @property
    def n_items(self):
        return self.demand.shape[0]

    @property
    def horizon(self):
        return self.demand.shape[1]

    # net_demand
    def net_demand(self, demand=None):
        """
        ----------
        - Demand left after initial inventory is used up, per item and stage
        ----------
        """

        if(demand is None):
            demand = self.demand

        cum = np.cumsum(demand, axis=1)
        net_cum = np.maximum(cum - self.initial_inventory[:, None], 0.0)
        return np.diff(net_cum, axis=1, prepend=0.0)

    # capacity_slack
    def capacity_slack(self, demand=None):
        """
        ----------
        - Cumulative capacity minus cumulative net demand per stage
        - The instance is feasible iff every entry is >= 0 (single shared resource, no backlog)
        ----------
        """

        net = self.net_demand(demand).sum(axis=0)
        return np.cumsum(self.capacity) - np.cumsum(net)

    def copy(self, **overrides):
        fields = {
            "demand": self.demand.copy(), "capacity": self.capacity.copy(), "setup_cost": self.setup_cost.copy(),
            "production_cost": self.production_cost.copy(), "holding_cost": self.holding_cost.copy(),
            "initial_inventory": self.initial_inventory.copy(), "instance_id": self.instance_id, "seed": self.seed,
        }
        fields.update(overrides)
        return MclspInstance(**fields)

    def to_record(self):
        return {
            "kind": self.kind, "id": self.instance_id, "seed": self.seed, "demand": self.demand,
            "capacity": self.capacity, "setup_cost": self.setup_cost, "production_cost": self.production_cost,
            "holding_cost": self.holding_cost, "initial_inventory": self.initial_inventory,
        }

    @staticmethod
    def from_record(record):
        return MclspInstance(
            record["demand"], record["capacity"], record["setup_cost"], record["production_cost"],
            record["holding_cost"], record["initial_inventory"], instance_id=record.get("id", 0), seed=record.get("seed"),
        )

    def to_string(self):
        return "MCLSP: id: %s  items: %d  stages: %d  total demand: %.1f  total capacity: %.1f" % \
            (self.instance_id, self.n_items, self.horizon, self.demand.sum(), self.capacity.sum())

# MsmkInstance
class MsmkInstance:
    """
    ----------
    - Multi-stage multi-dimensional knapsack: one knapsack per stage
    - An item may be packed at most once over the horizon
    ----------
    """

    kind = KIND_MSMK

    # __init__
    def __init__(self, value, weight, capacity, instance_id=0, seed=None):
        self.value = _as_matrix(value, "value")
        if(self.value.ndim != 2):
            raise InvalidArgumentError("MsmkInstance: value must be (items, stages)")

        d, T = self.value.shape
        self.weight = _as_matrix(weight, "weight", (d, T))
        self.capacity = _as_matrix(capacity, "capacity", (T,))
        self.instance_id = instance_id
        self.seed = seed

        if(np.any(self.value < 0) or np.any(self.weight < 0)):
            raise InvalidArgumentError("MsmkInstance: values and weights must be nonnegative")
        if(np.any(self.capacity < 0)):
            raise InvalidArgumentError("MsmkInstance: capacity must be nonnegative")

    @property
    def n_items(self):
        return self.value.shape[0]

    @property
    def horizon(self):
        return self.value.shape[1]

    def copy(self, **overrides):
        fields = {
            "value": self.value.copy(), "weight": self.weight.copy(), "capacity": self.capacity.copy(),
            "instance_id": self.instance_id, "seed": self.seed,
        }
        fields.update(overrides)
        return MsmkInstance(**fields)

    def to_record(self):
        return {
            "kind": self.kind, "id": self.instance_id, "seed": self.seed, "value": self.value,
            "weight": self.weight, "capacity": self.capacity,
        }

    @staticmethod
    def from_record(record):
        return MsmkInstance(record["value"], record["weight"], record["capacity"], instance_id=record.get("id", 0), seed=record.get("seed"))

    def to_string(self):
        return "MSMK: id: %s  items: %d  stages: %d  total weight: %.1f  total capacity: %.1f" % \
            (self.instance_id, self.n_items, self.horizon, self.weight.sum(), self.capacity.sum())

# StochasticInstance
class StochasticInstance:
    """
    ----------
    - A base instance bound to a scenario tree
    - node_params has shape (n_items, n_nodes): the realized uncertain parameter at each node
      (demand for MCLSP, value for MSMK). Everything else is taken from the base at the node's stage.
    ----------
    """

    kind = KIND_STOCH

    # __init__
    def __init__(self, base, tree, node_params, instance_id=None):
        if(base.kind not in BASE_KINDS):
            raise InvalidArgumentError("StochasticInstance: base must be mclsp or msmk, got %s" % base.kind)
        if(tree.horizon != base.horizon):
            raise InvalidArgumentError("StochasticInstance: tree horizon %d does not match instance horizon %d" % (tree.horizon, base.horizon))

        self.base = base
        self.tree = tree
        self.node_params = _as_matrix(node_params, "node_params", (base.n_items, tree.n_nodes))
        self.instance_id = base.instance_id if instance_id is None else instance_id

        if(np.any(self.node_params < 0)):
            raise InvalidArgumentError("StochasticInstance: node realizations must be nonnegative")

    @property
    def base_kind(self):
        return self.base.kind

    @property
    def n_items(self):
        return self.base.n_items

    @property
    def horizon(self):
        return self.base.horizon

    @property
    def seed(self):
        return self.base.seed

    # base_params
    def base_params(self):
        """
        ----------
        - The base counterpart of node_params, shape (n_items, horizon)
        ----------
        """

        if(self.base_kind == KIND_MCLSP):
            return self.base.demand
        return self.base.value

    # node_stage_params
    def node_stage_params(self, attr):
        """
        ----------
        - Base attribute (n_items, horizon) spread onto nodes by stage: shape (n_items, n_nodes)
        ----------
        """

        values = getattr(self.base, attr)
        return values[:, self.tree.node_stage - ROOT_STAGE]

    # scenario_instance
    def scenario_instance(self, scenario):
        """
        ----------
        - Deterministic instance realized along one scenario path
        ----------
        """

        path = self.tree.leaf_paths[scenario]
        realized = self.node_params[:, path]

        if(self.base_kind == KIND_MCLSP):
            return self.base.copy(demand=realized)
        return self.base.copy(value=realized)

    def to_record(self):
        return {
            "kind": self.kind, "id": self.instance_id, "base": self.base.to_record(),
            "tree": self.tree.to_records(), "node_params": self.node_params,
        }

    @staticmethod
    def from_record(record):
        base = instance_from_record(record["base"])
        tree = ScenarioTree.from_records(record["tree"])
        return StochasticInstance(base, tree, record["node_params"], instance_id=record.get("id"))

    def to_string(self):
        return "STOCH(%s)  scenarios: %d  nodes: %d" % (self.base.to_string(), self.tree.n_scenarios, self.tree.n_nodes)

# SolutionVector
class SolutionVector:
    """
    ----------
    - Node-indexed decisions: arrays of shape (n_items, n_nodes)
    - binary holds setups (MCLSP) or selections (MSMK)
    - production and inventory are None for MSMK
    - Indexing by node (not scenario) makes bundle members share decisions by construction
    ----------
    """

    def __init__(self, binary, production=None, inventory=None, objective=None):
        self.binary = np.array(binary, dtype=np.float64)
        self.production = None if production is None else np.array(production, dtype=np.float64)
        self.inventory = None if inventory is None else np.array(inventory, dtype=np.float64)
        self.objective = None if objective is None else float(objective)

    def to_record(self):
        return {"binary": self.binary, "production": self.production, "inventory": self.inventory, "objective": self.objective}

    @staticmethod
    def from_record(record):
        return SolutionVector(record["binary"], record.get("production"), record.get("inventory"), record.get("objective"))

# as_stochastic
def as_stochastic(instance):
    """
    ----------
    - Deterministic instances become a one-scenario chain tree with the base data at each node
    - Stochastic instances are returned as is
    ----------
    """

    if(instance.kind == KIND_STOCH):
        return instance

    tree = chain_tree(instance.horizon, instance.n_items)
    if(instance.kind == KIND_MCLSP):
        params = instance.demand.copy()
    else:
        params = instance.value.copy()

    return StochasticInstance(instance, tree, params)

# restrict_to_subset
def restrict_to_subset(instance, subset):
    """
    ----------
    - Restricts an instance to the items in subset (kept in the given order)
    - MCLSP capacity is scaled by the subset's share of stage demand,
      MSMK capacity by the subset's share of stage weight
    - A stage with zero total demand/weight is scaled by the cardinality share |S|/d
    - Stochastic instances use the expected stage demand for the MCLSP share
    ----------
    """

    subset = np.asarray(list(subset), dtype=np.int64)
    d = instance.n_items

    if(subset.size == 0):
        raise InvalidArgumentError("restrict_to_subset: subset must be non-empty")
    if(np.any(subset < 0) or np.any(subset >= d)):
        raise InvalidArgumentError("restrict_to_subset: item ids must lie in 0..%d" % (d - 1))
    if(np.unique(subset).size != subset.size):
        raise InvalidArgumentError("restrict_to_subset: duplicate item ids")

    if(instance.kind == KIND_STOCH):
        base = instance.base
        if(instance.base_kind == KIND_MCLSP):
            tree = instance.tree
            share_source = np.zeros((d, instance.horizon))
            for t in range(instance.horizon):
                nodes = tree.stage_nodes[t]
                share_source[:, t] = (instance.node_params[:, nodes] * tree.node_prob[nodes]).sum(axis=1)
        else:
            share_source = base.weight

        scale = _share(share_source, subset)
        restricted_base = _restrict_base(base, subset, scale)
        return StochasticInstance(restricted_base, instance.tree, instance.node_params[subset], instance_id=instance.instance_id)

    if(instance.kind == KIND_MCLSP):
        scale = _share(instance.demand, subset)
    else:
        scale = _share(instance.weight, subset)

    return _restrict_base(instance, subset, scale)

# _share
def _share(values, subset):
    total = values.sum(axis=0)
    part = values[subset].sum(axis=0)

    scale = np.empty_like(total)
    zero = (total == 0)
    scale[~zero] = part[~zero] / total[~zero]
    scale[zero] = subset.size / values.shape[0]

    return scale

# _restrict_base
def _restrict_base(base, subset, scale):
    if(base.kind == KIND_MCLSP):
        return MclspInstance(
            base.demand[subset], base.capacity * scale, base.setup_cost[subset], base.production_cost[subset],
            base.holding_cost[subset], base.initial_inventory[subset], instance_id=base.instance_id, seed=base.seed,
        )

    return MsmkInstance(base.value[subset], base.weight[subset], base.capacity * scale, instance_id=base.instance_id, seed=base.seed)

# instance_from_record
def instance_from_record(record):
    kind = record.get("kind")
    if(kind == KIND_MCLSP):
        return MclspInstance.from_record(record)
    elif(kind == KIND_MSMK):
        return MsmkInstance.from_record(record)
    elif(kind == KIND_STOCH):
        return StochasticInstance.from_record(record)

    raise InvalidArgumentError("Unknown instance kind tag: %r" % kind)

# save_instances
def save_instances(path, instances):
    write_jsonl(path, [inst.to_record() for inst in instances])

# load_instances
def load_instances(path):
    return [instance_from_record(r) for r in read_jsonl(path)]

# export_instance_csv
def export_instance_csv(path, instances):
    """
    ----------
    - Writes the per-stage demand (or weight) and capacity tables for inspection
    - One row per (instance, stage); stochastic instances report their base data
    ----------
    """

    p, _ = os.path.split(path)
    if(p):
        os.makedirs(p, exist_ok=True)

    with open(path, "w", newline="") as o_stream:
        writer = csv.writer(o_stream)
        writer.writerow(("instance", "stage", "total_demand_or_weight", "capacity"))

        for inst in instances:
            base = inst.base if inst.kind == KIND_STOCH else inst
            load = base.demand if base.kind == KIND_MCLSP else base.weight
            for t in range(base.horizon):
                writer.writerow((inst.instance_id, t + ROOT_STAGE, repr(float(load[:, t].sum())), repr(float(base.capacity[t]))))

    return
