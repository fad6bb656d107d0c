import math

import numpy as np

from utilities.constants import *
from utilities.errors import InvalidArgumentError, GenerationFailedError
from utilities.rando import make_rng, uniform_int, derive_seed

from problems.instances import MclspInstance, MsmkInstance, StochasticInstance
from problems.scenario_tree import build_tree

MCLSP_RANGES_DEF = {
    "demand": MCLSP_DEMAND_DEF,
    "setup_cost": MCLSP_SETUP_DEF,
    "production_cost": MCLSP_PROD_DEF,
    "holding_cost": MCLSP_HOLD_DEF,
    "initial_inventory": MCLSP_INIT_INV_DEF,
    "utilization": MCLSP_UTILIZATION_DEF,
    "max_capacity": MCLSP_MAX_CAPACITY_DEF,
}

MSMK_RANGES_DEF = {
    "value": MSMK_VALUE_DEF,
    "weight": MSMK_WEIGHT_DEF,
}

# _check_range
def _check_range(name, bounds):
    lo, hi = bounds
    if((lo < 0) or (hi < lo)):
        raise InvalidArgumentError("Generation range %s=%s must satisfy 0 <= lo <= hi" % (name, list(bounds)))

# resolve_ranges
def resolve_ranges(defaults, ranges):
    """
    ----------
    - Merges user ranges over the defaults, rejecting unknown keys
    ----------
    """

    resolved = dict(defaults)
    if(ranges is not None):
        for key, value in ranges.items():
            if(key not in defaults):
                raise InvalidArgumentError("Unknown generation range key: %s" % key)
            resolved[key] = value

    return resolved

# repair_capacity
def repair_capacity(capacity, cum_required):
    """
    ----------
    - Raises stage capacities (earliest stage first) until cumulative capacity covers cum_required
    ----------
    """

    capacity = capacity.copy()
    cum_cap = 0.0
    for t in range(capacity.shape[0]):
        cum_cap += capacity[t]
        deficit = cum_required[t] - cum_cap
        if(deficit > 0):
            capacity[t] += deficit
            cum_cap += deficit

    return capacity

# generate_mclsp
def generate_mclsp(seed, n_items, horizon, ranges=None):
    """
    ----------
    - Generates a deterministic MCLSP instance from the seed
    - Integer demand and costs are drawn uniformly from the (inclusive) ranges
    - Capacity is constant at mean stage demand / utilization, followed by a repair pass
      so cumulative capacity covers cumulative net demand at every stage
    - Raises GenerationFailedError if no draw satisfies max_capacity within the retry budget
    ----------
    """

    if(n_items < 1):
        raise InvalidArgumentError("generate_mclsp: need at least one item")
    if(horizon < 2):
        raise InvalidArgumentError("generate_mclsp: need at least two stages")

    r = resolve_ranges(MCLSP_RANGES_DEF, ranges)
    for key in ("demand", "setup_cost", "production_cost", "holding_cost", "initial_inventory"):
        _check_range(key, r[key])
    if(r["utilization"] <= 0):
        raise InvalidArgumentError("generate_mclsp: utilization must be positive")

    rng = make_rng(seed)
    shape = (n_items, horizon)

    for attempt in range(GENERATION_MAX_RETRIES):
        demand = uniform_int(rng, r["demand"], shape)
        setup = uniform_int(rng, r["setup_cost"], shape)
        prod = uniform_int(rng, r["production_cost"], shape)
        hold = uniform_int(rng, r["holding_cost"], shape)
        init_inv = uniform_int(rng, r["initial_inventory"], (n_items,))

        mean_load = demand.sum(axis=0).mean()
        level = max(1.0, math.ceil(mean_load / r["utilization"]))
        capacity = np.full(horizon, level)

        instance = MclspInstance(demand, capacity, setup, prod, hold, init_inv, seed=seed)
        cum_required = np.cumsum(instance.net_demand().sum(axis=0))
        capacity = repair_capacity(capacity, cum_required)

        if((r["max_capacity"] is not None) and np.any(capacity > r["max_capacity"])):
            continue

        return instance.copy(capacity=capacity)

    raise GenerationFailedError("generate_mclsp: no feasible draw within %d retries (seed %s)" % (GENERATION_MAX_RETRIES, seed))

# generate_msmk
def generate_msmk(seed, n_items, horizon, tightness=MSMK_TIGHTNESS_DEF, ranges=None):
    """
    ----------
    - Generates a deterministic MSMK instance from the seed
    - capacity[t] = tightness * sum of that stage's weights
    ----------
    """

    if(not (0.0 < tightness < 1.0)):
        raise InvalidArgumentError("generate_msmk: tightness ratio must lie in (0,1), got %r" % tightness)
    if((n_items < 1) or (horizon < 1)):
        raise InvalidArgumentError("generate_msmk: need at least one item and one stage")

    r = resolve_ranges(MSMK_RANGES_DEF, ranges)
    _check_range("value", r["value"])
    _check_range("weight", r["weight"])

    rng = make_rng(seed)
    shape = (n_items, horizon)

    for attempt in range(GENERATION_MAX_RETRIES):
        value = uniform_int(rng, r["value"], shape)
        weight = uniform_int(rng, r["weight"], shape)
        capacity = tightness * weight.sum(axis=0)

        if(np.any(capacity <= 0)):
            continue

        return MsmkInstance(value, weight, capacity, seed=seed)

    raise GenerationFailedError("generate_msmk: every draw had an empty stage (seed %s)" % seed)

# generate_stochastic
def generate_stochastic(base, branching, seed, levels=STOCH_LEVELS_DEF):
    """
    ----------
    - Attaches a scenario tree to base; payloads are per-item multiplicative factors
    - Node realization = base parameter at the node's stage times the node payload
      (demand for MCLSP, value for MSMK)
    - MCLSP capacity is repaired so every scenario is feasible
    ----------
    """

    tree = build_tree(branching, seed, base.n_items, levels=levels)

    if(base.kind == KIND_MCLSP):
        params = base.demand[:, tree.node_stage - ROOT_STAGE] * tree.payloads().T

        cum_required = np.zeros(base.horizon)
        for s in range(tree.n_scenarios):
            realized = params[:, tree.leaf_paths[s]]
            cum_net = np.cumsum(base.net_demand(realized).sum(axis=0))
            cum_required = np.maximum(cum_required, cum_net)

        base = base.copy(capacity=repair_capacity(base.capacity, cum_required))

    else:
        params = base.value[:, tree.node_stage - ROOT_STAGE] * tree.payloads().T

    return StochasticInstance(base, tree, params)

# generate_family
def generate_family(kind, n, seed_base, n_items, horizon, branching=None, ranges=None, tightness=MSMK_TIGHTNESS_DEF, levels=STOCH_LEVELS_DEF):
    """
    ----------
    - Generates n instances with per-instance seeds seed_base + i and ids 0..n-1
    - A non-empty branching attaches a scenario tree to each instance
    ----------
    """

    instances = []
    for i in range(n):
        seed = derive_seed(seed_base, i)

        if(kind == KIND_MCLSP):
            inst = generate_mclsp(seed, n_items, horizon, ranges=ranges)
        elif(kind == KIND_MSMK):
            inst = generate_msmk(seed, n_items, horizon, tightness=tightness, ranges=ranges)
        else:
            raise InvalidArgumentError("generate_family: unknown kind %r" % kind)

        inst.instance_id = i
        if(branching):
            inst = generate_stochastic(inst, branching, seed, levels=levels)

        instances.append(inst)

    return instances
