import numpy as np

from utilities.constants import *
from utilities.errors import InvalidArgumentError

from problems.instances import as_stochastic
from solver.mip_model import FixSet
from solver.extensive_form import build_extensive_form, binary_block

# ScreenResult
class ScreenResult:
    """
    ----------
    - fixset: screened FixSet over model variable indices (confidence attached)
    - warm_start: {model index: 0/1} over every binary, thresholded and repaired
    - n_candidates: fixes proposed before repair
    - repairs: unfix and flip actions taken
    - exhausted: True when the repair budget ran out and the FixSet was emptied
    ----------
    """

    def __init__(self, fixset, warm_start, n_candidates, repairs, exhausted):
        self.fixset = fixset
        self.warm_start = warm_start
        self.n_candidates = n_candidates
        self.repairs = repairs
        self.exhausted = exhausted

# _mclsp_scan
def _mclsp_scan(values, st):
    # A setup fixed to 0 closes the item at that node; cumulative open capacity along every
    # scenario path must cover cumulative net demand, per item and in total
    tree = st.tree
    d = st.n_items
    capacity = st.base.capacity

    for s in range(tree.n_scenarios):
        path = tree.leaf_paths[s]
        net = st.base.net_demand(st.node_params[:, path])
        cum_net = np.cumsum(net, axis=1)
        closed = np.array([[values.get((j, int(n))) == 0 for n in path] for j in range(d)])

        for j in range(d):
            cum_open = np.cumsum(np.where(closed[j], 0.0, capacity))
            bad = np.flatnonzero(cum_net[j] > cum_open + FEASIBILITY_TOL)
            if(bad.size > 0):
                t = int(bad[0])
                cands = [(j, int(path[u])) for u in range(t + 1) if closed[j, u]]
                yield ("item", s, j, t), cands

        stage_closed = closed.all(axis=0)
        cum_open = np.cumsum(np.where(stage_closed, 0.0, capacity))
        bad = np.flatnonzero(cum_net.sum(axis=0) > cum_open + FEASIBILITY_TOL)
        if(bad.size > 0):
            t = int(bad[0])
            cands = [(j, int(path[u])) for u in range(t + 1) if stage_closed[u] for j in range(d)]
            yield ("aggregate", s, None, t), cands

# _msmk_scan
def _msmk_scan(values, st):
    # Selections fixed to 1 must fit every knapsack and use each item at most once per path
    tree = st.tree
    d = st.n_items
    weight = st.node_stage_params("weight")
    capacity = st.base.capacity[tree.node_stage - ROOT_STAGE]

    for n in range(tree.n_nodes):
        chosen = [j for j in range(d) if values.get((j, n)) == 1]
        load = sum(weight[j, n] for j in chosen)
        if(load > capacity[n] + FEASIBILITY_TOL):
            yield ("load", n, None, None), [(j, n) for j in chosen]

    for s in range(tree.n_scenarios):
        path = tree.leaf_paths[s]
        for j in range(d):
            chosen = [(j, int(n)) for n in path if values.get((j, int(n))) == 1]
            if(len(chosen) > 1):
                yield ("once", s, j, None), chosen

# _scan
def _scan(values, st):
    if(st.base_kind == KIND_MCLSP):
        return _mclsp_scan(values, st)
    return _msmk_scan(values, st)

# check_feasible
def check_feasible(values, instance):
    """
    ----------
    - Aggregate screening of a (partial) binary assignment {(item, node): 0/1}
    - MCLSP: cumulative open capacity vs cumulative net demand per scenario path,
      per item and over all items
    - MSMK: knapsack loads of the selected items and at most one selection per item and path
    - Returns the list of violations, empty when the screen passes
    - Necessary conditions only; full feasibility is left to the solver
    ----------
    """

    return [v for v, _ in _scan(values, as_stochastic(instance))]

# _confidence
def _confidence(p, value):
    return p if value == 1 else 1.0 - p

# _repair
def _repair(values, probs, st, budget, flip):
    """
    ----------
    - Repeatedly takes the first violation and releases its lowest-confidence entry
      (ties: lowest node, then item); flip=False deletes the entry, flip=True inverts it
    - Returns (values, actions, ok)
    ----------
    """

    values = dict(values)
    actions = 0

    while(True):
        first = next(iter(_scan(values, st)), None)
        if(first is None):
            return values, actions, True

        violation, cands = first
        if((len(cands) == 0) or (actions >= budget)):
            return values, actions, False

        pick = min(cands, key=lambda jn: (_confidence(probs[jn], values[jn]), jn[1], jn[0]))
        if(flip):
            values[pick] = 1 - values[pick]
        else:
            del values[pick]
        actions += 1

# candidate_fixes
def candidate_fixes(probs, p_fix):
    """
    ----------
    - {(item, node): 1} where p >= p_fix and {(item, node): 0} where p <= 1 - p_fix
    ----------
    """

    fixes = {}
    d, n_nodes = probs.shape
    for j in range(d):
        for n in range(n_nodes):
            if(probs[j, n] >= p_fix):
                fixes[(j, n)] = 1
            elif(probs[j, n] <= 1.0 - p_fix):
                fixes[(j, n)] = 0

    return fixes

# screen
def screen(probs, instance, config, model=None):
    """
    ----------
    - Turns node probabilities (n_items, n_nodes) into a FixSet and a warm start
    - Fix candidates clear the p_fix threshold; when screening is on, failing candidates
      are unfixed lowest-confidence first (MCLSP releases 0-fixes, MSMK releases 1-fixes)
    - Warm start is the 0.5-thresholded prediction repaired by flipping the same way
    - Exhausting the unfix budget returns an empty FixSet with a warning
    ----------
    """

    st = as_stochastic(instance)
    probs = np.asarray(probs, dtype=np.float64)
    if(probs.shape != (st.n_items, st.tree.n_nodes)):
        raise InvalidArgumentError("screen: probabilities have shape %s, expected %s" % (probs.shape, (st.n_items, st.tree.n_nodes)))
    if(np.any(probs < 0.0) or np.any(probs > 1.0)):
        raise InvalidArgumentError("screen: probabilities must lie in [0,1]")

    if(model is None):
        model = build_extensive_form(st)
    idx = binary_block(model)

    p_map = {(j, n): probs[j, n] for j in range(st.n_items) for n in range(st.tree.n_nodes)}
    fixes = candidate_fixes(probs, config.p_fix)
    n_candidates = len(fixes)
    warm = {jn: int(p >= DECISION_THRESHOLD) for jn, p in p_map.items()}

    repairs = 0
    exhausted = False
    if(config.screening):
        fixes, actions, ok = _repair(fixes, p_map, st, config.unfix_budget, flip=False)
        repairs += actions
        if(not ok):
            print("----- WARNING: screen: repair budget exhausted on instance %s, fixing nothing -----" % st.instance_id)
            fixes = {}
            exhausted = True

        warm, actions, _ = _repair(warm, p_map, st, config.unfix_budget, flip=True)
        repairs += actions

    fixset = FixSet(
        {int(idx[j, n]): v for (j, n), v in fixes.items()},
        {int(idx[j, n]): _confidence(p_map[(j, n)], v) for (j, n), v in fixes.items()},
    )
    warm_start = {int(idx[j, n]): v for (j, n), v in warm.items()}

    return ScreenResult(fixset, warm_start, n_candidates, repairs, exhausted)
