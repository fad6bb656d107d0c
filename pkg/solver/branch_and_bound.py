import time

import numpy as np

from utilities.constants import *
from utilities.errors import InvalidArgumentError

from solver.mip_model import MipResult
from solver.simplex import simplex_solve

# _binary_values
def _binary_values(model, assignment):
    """
    ----------
    - Normalizes a warm start (full array or {index: value} over binaries) to {index: 0/1}
    - Returns None if some binary value is not integral
    ----------
    """

    bins = model.binary_indices()
    if(isinstance(assignment, dict)):
        values = {int(k): float(v) for k, v in assignment.items()}
    else:
        assignment = np.asarray(assignment, dtype=np.float64)
        if(assignment.shape != (model.n_vars,)):
            raise InvalidArgumentError("warm start has %d entries, model has %d variables" % (assignment.size, model.n_vars))
        values = {int(k): float(assignment[k]) for k in bins}

    for k, v in values.items():
        if((k < 0) or (k >= model.n_vars) or (not model.is_binary[k])):
            raise InvalidArgumentError("warm start sets non-binary variable %d" % k)
        if(abs(v - round(v)) > INTEGRALITY_TOL):
            return None

    return {k: int(round(v)) for k, v in values.items()}

# complete_assignment
def complete_assignment(model, binaries, lb=None, ub=None):
    """
    ----------
    - Fixes every binary to the given {index: 0/1} values and solves the continuous remainder
    - Missing binaries make the call fail (returns None)
    - Returns (x, objective) or None when the remainder is infeasible
    ----------
    """

    c, A, senses, b, model_lb, model_ub = model.dense()
    lb = model_lb.copy() if lb is None else lb.copy()
    ub = model_ub.copy() if ub is None else ub.copy()

    for k in model.binary_indices():
        if(k not in binaries):
            return None
        v = binaries[k]
        if((v < lb[k]) or (v > ub[k])):
            return None
        lb[k] = v
        ub[k] = v

    result = simplex_solve(model, lb=lb, ub=ub)
    if(result.status != STATUS_OPTIMAL):
        return None

    return result.x, result.objective

# _Node
class _Node:
    def __init__(self, lb, ub, bound, order, depth):
        self.lb = lb
        self.ub = ub
        self.bound = bound
        self.order = order
        self.depth = depth

# branch_and_bound
def branch_and_bound(model, fixset=None, warm_start=None, time_limit=None, node_limit=None, verbose=False):
    """
    ----------
    - Exact LP-based branch-and-bound for a minimization MipModel
    - fixset pins binaries (optimum of the restricted problem is returned)
    - warm_start only seeds the incumbent; it is checked by completing the continuous part
      and ignored with a printed note if unusable
    - Branches on the most fractional binary (ties: lowest index), dives depth-first into
      the child nearest the LP value and reorders by best bound when backtracking
    - Status: optimal, infeasible, feasible (limit hit with incumbent) or time-limit
      (limit hit without incumbent)
    ----------
    """

    start = time.perf_counter()
    c, A, senses, b, lb, ub = model.dense()

    if(fixset is not None):
        fixset.check(model)
        lb, ub = fixset.apply_bounds(lb, ub)

    bins = model.binary_indices()
    incumbent = None
    inc_obj = INF

    ##### Warm start #####
    if(warm_start is not None):
        values = _binary_values(model, warm_start)
        completed = None
        if(values is not None):
            completed = complete_assignment(model, values, lb=lb, ub=ub)

        if(completed is None):
            print("branch_and_bound: Note: warm start is not feasible for this problem, ignoring it")
        else:
            incumbent, inc_obj = completed
            if(verbose):
                print("branch_and_bound: warm start accepted with objective %.6f" % inc_obj)

    open_nodes = []
    dive = _Node(lb, ub, -INF, 0, 0)
    order = 1
    n_explored = 0
    stopped = False

    while((dive is not None) or (len(open_nodes) > 0)):
        if((time_limit is not None) and (time.perf_counter() - start > time_limit)):
            stopped = True
            break
        if((node_limit is not None) and (n_explored >= node_limit)):
            stopped = True
            break

        if(dive is not None):
            node = dive
            dive = None
        else:
            best = min(range(len(open_nodes)), key=lambda i: (open_nodes[i].bound, open_nodes[i].order))
            node = open_nodes.pop(best)

        if(node.bound >= inc_obj - PRUNE_TOL * max(1.0, abs(inc_obj))):
            continue

        n_explored += 1
        lp = simplex_solve(model, lb=node.lb, ub=node.ub)

        if(lp.status == STATUS_UNBOUNDED):
            raise RuntimeError("branch_and_bound: LP relaxation unbounded, the model is malformed")
        if(lp.status == STATUS_INFEASIBLE):
            continue
        if(lp.objective >= inc_obj - PRUNE_TOL * max(1.0, abs(inc_obj))):
            continue

        values = lp.x[bins]
        frac = np.abs(values - np.round(values))
        fractional = np.flatnonzero(frac > INTEGRALITY_TOL)

        if(fractional.size == 0):
            # Polishing: binaries rounded, continuous part re-solved
            completed = complete_assignment(model, {int(k): int(round(v)) for k, v in zip(bins, values)}, lb=node.lb, ub=node.ub)
            if(completed is None):
                x, obj = lp.x, lp.objective
            else:
                x, obj = completed

            if(obj < inc_obj):
                incumbent, inc_obj = x, obj
                if(verbose):
                    print("branch_and_bound: new incumbent %.6f at node %d" % (inc_obj, n_explored))
            continue

        # Most fractional, lowest index on ties
        pick = fractional[np.argmax(frac[fractional])]
        var = int(bins[pick])
        value = lp.x[var]

        down_ub = node.ub.copy()
        down_ub[var] = 0.0
        up_lb = node.lb.copy()
        up_lb[var] = 1.0

        down = _Node(node.lb, down_ub, lp.objective, order, node.depth + 1)
        up = _Node(up_lb, node.ub, lp.objective, order + 1, node.depth + 1)
        order += 2

        if(value >= 0.5):
            dive, other = up, down
        else:
            dive, other = down, up
        open_nodes.append(other)

        if(verbose):
            print("Nodes: %d  Open: %d  Incumbent: %s" % (n_explored, len(open_nodes), inc_obj), end=CARRIAGE_RETURN)

    wall = time.perf_counter() - start
    if(verbose):
        print("")

    if(stopped):
        remaining = [n.bound for n in open_nodes]
        if(dive is not None):
            remaining.append(dive.bound)
        bound = min(remaining + [inc_obj]) if remaining else inc_obj

        if(incumbent is None):
            return MipResult(STATUS_TIME_LIMIT, None, None, bound, n_explored, wall)
        return MipResult(STATUS_FEASIBLE, inc_obj, incumbent, bound, n_explored, wall)

    if(incumbent is None):
        return MipResult(STATUS_INFEASIBLE, None, None, None, n_explored, wall)

    return MipResult(STATUS_OPTIMAL, inc_obj, incumbent, inc_obj, n_explored, wall)
