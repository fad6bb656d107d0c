import numpy as np

from utilities.constants import *
from utilities.errors import InvalidArgumentError

MAX_PIVOTS = 100000

# LpResult
class LpResult:
    def __init__(self, status, objective=None, x=None, pivots=0):
        self.status = status
        self.objective = objective
        self.x = x
        self.pivots = pivots

# Tableau
class Tableau:
    """
    ----------
    - Dense simplex tableau for min c'x s.t. Ax = b, x >= 0, b >= 0
    - Row 0 holds reduced costs with -objective in the last column
    - Pivot selection follows Bland's rule (lowest entering index, lowest leaving
      basic index among ratio ties), so the method cannot cycle
    ----------
    """

    def __init__(self, A, b, basis):
        m, n = A.shape
        self.m = m
        self.n = n
        self.table = np.zeros((m + 1, n + 1))
        self.table[1:, :n] = A
        self.table[1:, n] = b
        self.basis = list(basis)
        self.pivots = 0

    # set_cost
    def set_cost(self, c):
        """
        ----------
        - Loads the cost vector and prices out the current basis
        ----------
        """

        row = np.zeros(self.n + 1)
        row[:self.n] = c
        for i, k in enumerate(self.basis):
            if(c[k] != 0.0):
                row -= c[k] * self.table[i + 1]
        self.table[0] = row

    # pivot
    def pivot(self, row, col):
        table = self.table
        table[row] /= table[row, col]

        pivot_row = table[row].copy()
        factors = table[:, col].copy()
        factors[row] = 0.0
        table -= np.outer(factors, pivot_row)
        table[:, col] = 0.0
        table[row, col] = 1.0

        self.basis[row - 1] = col
        self.pivots += 1

    # run
    def run(self, allowed=None):
        """
        ----------
        - Iterates to optimality over the allowed columns (all if None)
        - Returns STATUS_OPTIMAL or STATUS_UNBOUNDED
        ----------
        """

        n = self.n
        while(True):
            if(self.pivots > MAX_PIVOTS):
                raise RuntimeError("Tableau: pivot limit exceeded")

            reduced = self.table[0, :n]
            candidates = np.flatnonzero(reduced < -PIVOT_TOL)
            if(allowed is not None):
                candidates = candidates[allowed[candidates]]
            if(candidates.size == 0):
                return STATUS_OPTIMAL

            col = int(candidates[0])
            column = self.table[1:, col]
            rows = np.flatnonzero(column > PIVOT_TOL)
            if(rows.size == 0):
                return STATUS_UNBOUNDED

            ratios = self.table[1 + rows, n] / column[rows]
            best = ratios.min()
            ties = rows[ratios <= best + PIVOT_TOL * max(1.0, abs(best))]
            leave = min(ties, key=lambda r: self.basis[r])

            self.pivot(int(leave) + 1, col)

    @property
    def objective(self):
        return -self.table[0, self.n]

    # primal
    def primal(self):
        x = np.zeros(self.n)
        for i, k in enumerate(self.basis):
            x[k] = self.table[i + 1, self.n]
        return x

# _row_feasible
def _row_feasible(act, senses, b, tol):
    for i, sense in enumerate(senses):
        if((sense == SENSE_LE) and (act[i] > b[i] + tol)):
            return False
        if((sense == SENSE_GE) and (act[i] < b[i] - tol)):
            return False
        if((sense == SENSE_EQ) and (abs(act[i] - b[i]) > tol)):
            return False

    return True

# simplex_solve
def simplex_solve(model, fixset=None, lb=None, ub=None):
    """
    ----------
    - Solves the LP relaxation of model (binaries relaxed to their bounds) by a two-phase
      dense tableau simplex with Bland's rule
    - lb/ub override the model bounds (used by branch-and-bound), fixset pins binaries
    - Fixed columns are substituted out, finite lower bounds shifted to zero and finite
      upper bounds added as rows
    - Returns an LpResult with status optimal, infeasible or unbounded
    ----------
    """

    c, A, senses, b, model_lb, model_ub = model.dense()
    lb = model_lb.copy() if lb is None else np.array(lb, dtype=np.float64)
    ub = model_ub.copy() if ub is None else np.array(ub, dtype=np.float64)

    if(fixset is not None):
        fixset.check(model)
        lb, ub = fixset.apply_bounds(lb, ub)

    if(np.any(~np.isfinite(lb))):
        raise InvalidArgumentError("simplex_solve: lower bounds must be finite")
    if(np.any(lb > ub + FEASIBILITY_TOL)):
        return LpResult(STATUS_INFEASIBLE)

    fixed = (ub - lb) <= 0.0
    free = np.flatnonzero(~fixed)
    n_free = free.size

    # Shift every variable by its lower bound
    rhs = b - A @ lb
    tol = FEASIBILITY_TOL * 1e-1 * max(1.0, float(np.max(np.abs(b), initial=0.0)))

    if(n_free == 0):
        if(_row_feasible(np.zeros(len(senses)), senses, rhs, tol)):
            x = lb.copy()
            return LpResult(STATUS_OPTIMAL, float(c @ x), x)
        return LpResult(STATUS_INFEASIBLE)

    A_free = A[:, free]

    row_coefs = [A_free[i] for i in range(len(senses))]
    row_senses = list(senses)
    row_rhs = list(rhs)

    span = ub[free] - lb[free]
    for k in np.flatnonzero(np.isfinite(span)):
        coefs = np.zeros(n_free)
        coefs[k] = 1.0
        row_coefs.append(coefs)
        row_senses.append(SENSE_LE)
        row_rhs.append(span[k])

    # Rows with no free coefficients are checked directly
    keep = []
    for i, coefs in enumerate(row_coefs):
        if(np.all(coefs == 0.0)):
            if(not _row_feasible([0.0], [row_senses[i]], [row_rhs[i]], tol)):
                return LpResult(STATUS_INFEASIBLE)
        else:
            keep.append(i)

    m = len(keep)
    n_slack = sum(1 for i in keep if row_senses[i] != SENSE_EQ)

    # Standard form: structural | slack-surplus | artificial
    total = n_free + n_slack + m
    std_A = np.zeros((m, total))
    std_b = np.zeros(m)
    basis = []
    slack_col = n_free
    art_col = n_free + n_slack
    art_cols = []

    for r, i in enumerate(keep):
        coefs = row_coefs[i]
        sense = row_senses[i]
        value = row_rhs[i]

        sign = 1.0
        if(value < 0):
            sign = -1.0
            if(sense == SENSE_LE):
                sense = SENSE_GE
            elif(sense == SENSE_GE):
                sense = SENSE_LE

        std_A[r, :n_free] = sign * coefs
        std_b[r] = sign * value

        if(sense == SENSE_LE):
            std_A[r, slack_col] = 1.0
            basis.append(slack_col)
            slack_col += 1
        else:
            if(sense == SENSE_GE):
                std_A[r, slack_col] = -1.0
                slack_col += 1
            std_A[r, art_col] = 1.0
            basis.append(art_col)
            art_cols.append(art_col)
            art_col += 1

    # Unused artificial columns are dropped
    n_cols = art_col
    std_A = std_A[:, :n_cols]
    is_art = np.zeros(n_cols, dtype=bool)
    is_art[art_cols] = True

    tableau = Tableau(std_A, std_b, basis)

    ##### Phase 1 #####
    if(len(art_cols) > 0):
        phase1 = np.zeros(n_cols)
        phase1[art_cols] = 1.0
        tableau.set_cost(phase1)
        tableau.run()

        if(tableau.objective > tol):
            return LpResult(STATUS_INFEASIBLE, pivots=tableau.pivots)

        # Driving artificials out of the basis, dropping redundant rows
        r = 0
        while(r < tableau.m):
            k = tableau.basis[r]
            if(is_art[k]):
                row = tableau.table[r + 1, :n_cols]
                candidates = np.flatnonzero((np.abs(row) > PIVOT_TOL) & (~is_art))
                if(candidates.size > 0):
                    tableau.pivot(r + 1, int(candidates[0]))
                else:
                    tableau.table = np.delete(tableau.table, r + 1, axis=0)
                    del tableau.basis[r]
                    tableau.m -= 1
                    continue
            r += 1

    ##### Phase 2 #####
    cost = np.zeros(n_cols)
    cost[:n_free] = c[free]
    tableau.set_cost(cost)
    status = tableau.run(allowed=~is_art)

    if(status == STATUS_UNBOUNDED):
        return LpResult(STATUS_UNBOUNDED, pivots=tableau.pivots)

    primal = tableau.primal()
    x = lb.copy()
    x[free] = lb[free] + np.maximum(primal[:n_free], 0.0)
    x = np.minimum(x, ub)

    return LpResult(STATUS_OPTIMAL, float(c @ x), x, pivots=tableau.pivots)
