import numpy as np
import torch

from utilities.constants import *
from utilities.errors import InvalidArgumentError

from problems.instances import as_stochastic
from problems.generators import MCLSP_RANGES_DEF, MSMK_RANGES_DEF

MCLSP_SCALED = ("demand", "setup_cost", "production_cost", "holding_cost")
MSMK_SCALED = ("value", "weight")

# FeatureScaler
class FeatureScaler:
    """
    ----------
    - Min-max normalization per instance family, keyed by parameter name
    - Ranges come from the generation ranges and are stored with the model checkpoint
    ----------
    """

    def __init__(self, kind, ranges):
        self.kind = kind
        self.ranges = {k: (float(lo), float(hi)) for k, (lo, hi) in ranges.items()}

    # for_kind
    @staticmethod
    def for_kind(kind, ranges=None):
        if(kind == KIND_MCLSP):
            defaults, keys = MCLSP_RANGES_DEF, MCLSP_SCALED
        elif(kind == KIND_MSMK):
            defaults, keys = MSMK_RANGES_DEF, MSMK_SCALED
        else:
            raise InvalidArgumentError("FeatureScaler: unknown kind %r" % kind)

        merged = dict(defaults)
        if(ranges is not None):
            merged.update({k: v for k, v in ranges.items() if k in keys})

        return FeatureScaler(kind, {k: merged[k] for k in keys})

    # scale
    def scale(self, values, key):
        lo, hi = self.ranges[key]
        span = hi - lo
        if(span <= 0):
            span = 1.0

        return (values - lo) / span

    def to_record(self):
        return {"kind": self.kind, "ranges": {k: list(v) for k, v in self.ranges.items()}}

    @staticmethod
    def from_record(record):
        return FeatureScaler(record["kind"], record["ranges"])

# DecisionInput
class DecisionInput:
    """
    ----------
    - Everything the sequence model needs about one instance
    - features (S, T, F): encoder inputs along each scenario path
    - paths (S, T): node id per scenario and stage
    - stage_nodes[t]: node ids at stage t+1, stage_keys[t]: their root paths (U_t, t+1),
      stage_parent_pos[t]: position of each node's parent in stage_nodes[t-1]
    - targets (n_nodes, n_items) when built from a solved instance
    ----------
    """

    def __init__(self, kind, node_features, tree, targets=None, instance_id=None):
        self.kind = kind
        self.instance_id = instance_id
        self.n_nodes = tree.n_nodes
        self.horizon = tree.horizon
        self.n_scenarios = tree.n_scenarios

        self.node_features = torch.as_tensor(node_features, dtype=torch.float64)
        self.paths = torch.as_tensor(tree.leaf_paths, dtype=torch.long)
        self.features = self.node_features[self.paths]

        self.stage_nodes = []
        self.stage_keys = []
        self.stage_parent_pos = []
        for t in range(self.horizon):
            nodes = tree.stage_nodes[t]
            self.stage_nodes.append(torch.as_tensor(nodes, dtype=torch.long))
            self.stage_keys.append(torch.as_tensor([tree.node_path(n) for n in nodes], dtype=torch.long))

            if(t == 0):
                self.stage_parent_pos.append(None)
            else:
                prev = {int(n): k for k, n in enumerate(tree.stage_nodes[t - 1])}
                pos = [prev[int(tree.node_parent[n])] for n in nodes]
                self.stage_parent_pos.append(torch.as_tensor(pos, dtype=torch.long))

        self.targets = None
        if(targets is not None):
            self.targets = torch.as_tensor(targets, dtype=torch.float64)

    @property
    def input_width(self):
        return self.node_features.shape[1]

    @property
    def n_items(self):
        if(self.targets is not None):
            return self.targets.shape[1]
        return None

# _cumulative_mean
def _cumulative_mean(values, tree):
    # Mean of the realized values along the root path of each node
    cum = values.copy()
    for n in range(tree.n_nodes):
        parent = tree.node_parent[n]
        if(parent != NO_PARENT):
            cum[:, n] += cum[:, parent]

    return cum / tree.node_stage[None, :]

# node_feature_matrix
def node_feature_matrix(instance, scaler):
    """
    ----------
    - Encoder features per tree node, shape (n_nodes, F)
    - MCLSP blocks: demand, setup, production and holding cost, realized demand factor and
      mean realized demand to date, each of width n_items; last column is capacity per item
    - MSMK blocks: value, weight, realized value factor, mean realized value to date
    - Deterministic instances are treated as one-scenario chains
    ----------
    """

    st = as_stochastic(instance)
    if(st.base_kind != scaler.kind):
        raise InvalidArgumentError("node_feature_matrix: scaler is for %s, instance is %s" % (scaler.kind, st.base_kind))

    tree = st.tree
    d = st.n_items
    realized = st.node_params
    base = st.base_params()[:, tree.node_stage - ROOT_STAGE]
    safe_base = np.where(base > 0, base, 1.0)
    factor = np.where(base > 0, realized / safe_base, 1.0)
    cum_mean = _cumulative_mean(realized, tree)
    capacity = st.base.capacity[tree.node_stage - ROOT_STAGE] / d

    if(st.base_kind == KIND_MCLSP):
        blocks = [
            scaler.scale(realized, "demand"),
            scaler.scale(st.node_stage_params("setup_cost"), "setup_cost"),
            scaler.scale(st.node_stage_params("production_cost"), "production_cost"),
            scaler.scale(st.node_stage_params("holding_cost"), "holding_cost"),
            factor,
            scaler.scale(cum_mean, "demand"),
        ]
        cap_col = scaler.scale(capacity, "demand")
    else:
        blocks = [
            scaler.scale(realized, "value"),
            scaler.scale(st.node_stage_params("weight"), "weight"),
            factor,
            scaler.scale(cum_mean, "value"),
        ]
        cap_col = scaler.scale(capacity, "weight")

    features = np.concatenate([b.T for b in blocks] + [cap_col[:, None]], axis=1)
    return features

# make_decision_input
def make_decision_input(instance, scaler, solution=None):
    """
    ----------
    - Builds the DecisionInput of an instance, with targets when a solution is given
    ----------
    """

    st = as_stochastic(instance)
    features = node_feature_matrix(st, scaler)

    targets = None
    if(solution is not None):
        if(solution.binary.shape != (st.n_items, st.tree.n_nodes)):
            raise InvalidArgumentError("make_decision_input: solution does not match the instance")
        targets = solution.binary.T

    return DecisionInput(st.base_kind, features, st.tree, targets=targets, instance_id=st.instance_id)
