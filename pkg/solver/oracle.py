import time

import numpy as np

from utilities.constants import *
from utilities.errors import InvalidArgumentError

from solver.mip_model import MipResult
from solver.branch_and_bound import complete_assignment

# _assignments
def _assignments(start, stop, n_bits):
    """
    ----------
    - Rows of 0/1 values for assignment numbers start..stop-1 (bit i -> binary i)
    ----------
    """

    codes = np.arange(start, stop, dtype=np.int64)
    bits = (codes[:, None] >> np.arange(n_bits, dtype=np.int64)[None, :]) & 1

    return bits.astype(np.float64)

# _rows_ok
def _rows_ok(act, senses, b):
    ok = np.ones(act.shape[0], dtype=bool)
    tol = FEASIBILITY_TOL * np.maximum(1.0, np.abs(b))

    for i, sense in enumerate(senses):
        if(sense == SENSE_LE):
            ok &= act[:, i] <= b[i] + tol[i]
        elif(sense == SENSE_GE):
            ok &= act[:, i] >= b[i] - tol[i]
        else:
            ok &= np.abs(act[:, i] - b[i]) <= tol[i]

    return ok

# exhaustive_oracle
def exhaustive_oracle(model, fixset=None):
    """
    ----------
    - Enumerates every assignment of the model's binaries and returns the true optimum
    - Pure binary models are checked in vectorized chunks; models with continuous variables
      solve the continuous remainder of each assignment by simplex
    - Ties keep the lowest assignment number
    - Refuses models with more than ORACLE_MAX_BINARIES binaries
    ----------
    """

    start = time.perf_counter()
    c, A, senses, b, lb, ub = model.dense()

    bins = model.binary_indices()
    n_bits = bins.size
    if(n_bits > ORACLE_MAX_BINARIES):
        raise InvalidArgumentError("exhaustive_oracle: %d binaries exceeds the limit of %d" % (n_bits, ORACLE_MAX_BINARIES))

    if(fixset is not None):
        fixset.check(model)
        lb, ub = fixset.apply_bounds(lb, ub)

    total = 1 << n_bits
    best_obj = INF
    best_x = None

    if(n_bits == model.n_vars):
        for chunk in range(0, total, ORACLE_CHUNK):
            X = _assignments(chunk, min(chunk + ORACLE_CHUNK, total), n_bits)
            ok = np.all((X >= lb[None, :]) & (X <= ub[None, :]), axis=1)
            if(model.n_rows > 0):
                ok &= _rows_ok(X @ A.T, senses, b)

            if(not np.any(ok)):
                continue

            objs = np.where(ok, X @ c, INF)
            k = int(np.argmin(objs))
            if(objs[k] < best_obj):
                best_obj = float(objs[k])
                best_x = X[k].copy()

    else:
        for code in range(total):
            bits = _assignments(code, code + 1, n_bits)[0]
            values = {int(k): int(v) for k, v in zip(bins, bits)}
            completed = complete_assignment(model, values, lb=lb, ub=ub)
            if(completed is None):
                continue

            x, obj = completed
            if(obj < best_obj):
                best_obj = obj
                best_x = x

    wall = time.perf_counter() - start
    if(best_x is None):
        return MipResult(STATUS_INFEASIBLE, None, None, None, total, wall)

    return MipResult(STATUS_OPTIMAL, best_obj, best_x, best_obj, total, wall)
