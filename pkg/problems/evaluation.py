import numpy as np

from utilities.constants import *
from utilities.errors import InvalidArgumentError

from problems.instances import as_stochastic

# EvaluationResult
class EvaluationResult:
    """
    ----------
    - Objective (expected cost, minimization form) plus named constraint residual arrays
    - feasible is True iff every residual entry is <= FEASIBILITY_TOL
    ----------
    """

    def __init__(self, objective, residuals):
        self.objective = float(objective)
        self.residuals = residuals

        worst = 0.0
        for arr in residuals.values():
            if(arr.size > 0):
                worst = max(worst, float(np.max(arr)))
        self.max_residual = worst
        self.feasible = (worst <= FEASIBILITY_TOL)

    def to_string(self):
        return "EVAL: objective: %.6f  feasible: %s  max residual: %.3g" % (self.objective, self.feasible, self.max_residual)

# evaluate_solution
def evaluate_solution(instance, solution):
    """
    ----------
    - Evaluates a node-indexed SolutionVector on a deterministic or stochastic instance
    - Stochastic objective is the probability-weighted sum over nodes, which equals the
      expectation over scenarios of the per-scenario cost
    - MSMK objective is the negative packed value (everything is minimized)
    ----------
    """

    st = as_stochastic(instance)
    tree = st.tree
    shape = (st.n_items, tree.n_nodes)

    if(solution.binary.shape != shape):
        raise InvalidArgumentError("evaluate_solution: binary decisions have shape %s, expected %s" % (solution.binary.shape, shape))

    y = solution.binary
    prob = tree.node_prob
    integrality = np.minimum(np.abs(y), np.abs(y - 1.0))
    capacity = st.base.capacity[tree.node_stage - ROOT_STAGE]

    if(st.base_kind == KIND_MCLSP):
        if((solution.production is None) or (solution.inventory is None)):
            raise InvalidArgumentError("evaluate_solution: MCLSP solutions need production and inventory")
        if((solution.production.shape != shape) or (solution.inventory.shape != shape)):
            raise InvalidArgumentError("evaluate_solution: continuous decisions have the wrong shape")

        x = solution.production
        inv = solution.inventory
        demand = st.node_params

        inv_prev = np.empty(shape)
        for n, parent in enumerate(tree.node_parent):
            if(parent == NO_PARENT):
                inv_prev[:, n] = st.base.initial_inventory
            else:
                inv_prev[:, n] = inv[:, parent]

        residuals = {
            "demand_balance": np.abs(inv - (inv_prev + x - demand)),
            "capacity": np.maximum(x.sum(axis=0) - capacity, 0.0),
            "setup_linking": np.maximum(x - capacity[None, :] * y, 0.0),
            "nonnegativity": np.maximum(np.maximum(-x, -inv), 0.0),
            "integrality": integrality,
        }

        stage_cost = (
            st.node_stage_params("setup_cost") * y
            + st.node_stage_params("production_cost") * x
            + st.node_stage_params("holding_cost") * inv
        )
        objective = float(np.sum(stage_cost.sum(axis=0) * prob))

    else:
        weight = st.node_stage_params("weight")
        once = np.empty((st.n_items, tree.n_scenarios))
        for s in range(tree.n_scenarios):
            once[:, s] = y[:, tree.leaf_paths[s]].sum(axis=1) - 1.0

        residuals = {
            "capacity": np.maximum((weight * y).sum(axis=0) - capacity, 0.0),
            "assign_once": np.maximum(once, 0.0),
            "integrality": integrality,
        }

        objective = -float(np.sum((st.node_params * y).sum(axis=0) * prob))

    return EvaluationResult(objective, residuals)
