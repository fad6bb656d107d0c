import numpy as np

from utilities.constants import *
from utilities.errors import InvalidArgumentError

# MipModel
class MipModel:
    """
    ----------
    - Minimization MIP: variable table (name, bounds, binary flag, objective coefficient)
      and sparse constraint rows (coefficients, sense, rhs)
    - blocks maps a decision family (y, x, I, z) to an index array shaped (items, nodes)
    - Rows are immutable once solving starts; the dense form is cached
    ----------
    """

    # __init__
    def __init__(self, name="model"):
        self.name = name
        self.names = []
        self.lb = []
        self.ub = []
        self.is_binary = []
        self.obj = []
        self.rows = []
        self.blocks = {}
        self.meta = {}

        self._dense = None

    @property
    def n_vars(self):
        return len(self.names)

    @property
    def n_rows(self):
        return len(self.rows)

    # add_variable
    def add_variable(self, name, lb=0.0, ub=INF, obj=0.0, binary=False):
        if(binary):
            lb, ub = 0.0, 1.0

        self.names.append(name)
        self.lb.append(float(lb))
        self.ub.append(float(ub))
        self.is_binary.append(bool(binary))
        self.obj.append(float(obj))
        self._dense = None

        return len(self.names) - 1

    # add_block
    def add_block(self, block, obj, binary=False, lb=0.0, ub=INF):
        """
        ----------
        - Adds one variable per entry of the (items, nodes) objective array
        - Variables are named <block>_<item>_<node> and indexed item-major
        ----------
        """

        obj = np.asarray(obj, dtype=np.float64)
        idx = np.empty(obj.shape, dtype=np.int64)
        for j in range(obj.shape[0]):
            for n in range(obj.shape[1]):
                idx[j, n] = self.add_variable("%s_%d_%d" % (block, j, n), lb=lb, ub=ub, obj=obj[j, n], binary=binary)

        self.blocks[block] = idx
        return idx

    # add_row
    def add_row(self, coefs, sense, rhs, name=None):
        if(sense not in ALL_SENSES):
            raise InvalidArgumentError("MipModel: unknown row sense %r" % sense)

        clean = {}
        for k, v in coefs.items():
            k = int(k)
            if((k < 0) or (k >= self.n_vars)):
                raise InvalidArgumentError("MipModel: row references unknown variable %d" % k)
            if(v != 0.0):
                clean[k] = clean.get(k, 0.0) + float(v)

        if(name is None):
            name = "c%d" % len(self.rows)

        self.rows.append((clean, sense, float(rhs), name))
        self._dense = None

        return len(self.rows) - 1

    # binary_indices
    def binary_indices(self):
        return np.flatnonzero(np.asarray(self.is_binary, dtype=bool))

    # dense
    def dense(self):
        """
        ----------
        - Returns (c, A, senses, b, lb, ub) as numpy arrays (senses is a tuple of strings)
        ----------
        """

        if(self._dense is None):
            A = np.zeros((self.n_rows, self.n_vars))
            b = np.zeros(self.n_rows)
            senses = []
            for i, (coefs, sense, rhs, _) in enumerate(self.rows):
                for k, v in coefs.items():
                    A[i, k] = v
                b[i] = rhs
                senses.append(sense)

            self._dense = (
                np.asarray(self.obj, dtype=np.float64), A, tuple(senses), b,
                np.asarray(self.lb, dtype=np.float64), np.asarray(self.ub, dtype=np.float64),
            )

        return self._dense

    # objective_value
    def objective_value(self, x):
        c = self.dense()[0]
        return float(c @ np.asarray(x, dtype=np.float64))

    # max_violation
    def max_violation(self, x):
        """
        ----------
        - Largest row, bound or integrality violation of the full assignment x
        ----------
        """

        c, A, senses, b, lb, ub = self.dense()
        x = np.asarray(x, dtype=np.float64)

        worst = max(0.0, float(np.max(lb - x, initial=0.0)), float(np.max(x - ub, initial=0.0)))
        if(self.n_rows > 0):
            act = A @ x
            for i, sense in enumerate(senses):
                if(sense == SENSE_LE):
                    worst = max(worst, act[i] - b[i])
                elif(sense == SENSE_GE):
                    worst = max(worst, b[i] - act[i])
                else:
                    worst = max(worst, abs(act[i] - b[i]))

        bins = self.binary_indices()
        if(bins.size > 0):
            worst = max(worst, float(np.max(np.abs(x[bins] - np.round(x[bins])))))

        return worst

    # validate
    def validate(self):
        for k in self.binary_indices():
            if((self.lb[k] != 0.0) or (self.ub[k] != 1.0)):
                raise InvalidArgumentError("MipModel: binary %s must have bounds [0,1]" % self.names[k])

        return

    def to_string(self):
        return "MODEL: %s  vars: %d  binaries: %d  rows: %d" % (self.name, self.n_vars, self.binary_indices().size, self.n_rows)

# FixSet
class FixSet:
    """
    ----------
    - Map of binary variable index -> fixed value in {0,1}
    - confidence (optional) ranks entries for halving during fallback
    ----------
    """

    def __init__(self, values=None, confidence=None):
        self.values = {}
        self.confidence = {}

        if(values is not None):
            for k, v in dict(values).items():
                self.values[int(k)] = int(round(v))
        if(confidence is not None):
            for k, v in dict(confidence).items():
                self.confidence[int(k)] = float(v)

        for v in self.values.values():
            if(v not in (0, 1)):
                raise InvalidArgumentError("FixSet: values must be 0 or 1")

    def __len__(self):
        return len(self.values)

    def __contains__(self, k):
        return int(k) in self.values

    def items(self):
        return sorted(self.values.items())

    # check
    def check(self, model):
        """
        ----------
        - Raises InvalidArgumentError if a non-binary variable is fixed
        ----------
        """

        for k in self.values:
            if((k < 0) or (k >= model.n_vars) or (not model.is_binary[k])):
                raise InvalidArgumentError("FixSet: variable %d is not a binary of the model" % k)

        return

    # halve
    def halve(self):
        """
        ----------
        - Keeps the most confident half (ties broken by lowest index)
        ----------
        """

        ranked = sorted(self.values.keys(), key=lambda k: (-self.confidence.get(k, 0.0), k))
        keep = ranked[:len(ranked) // 2]

        return FixSet({k: self.values[k] for k in keep}, {k: self.confidence.get(k, 0.0) for k in keep})

    # apply_bounds
    def apply_bounds(self, lb, ub):
        lb = lb.copy()
        ub = ub.copy()
        for k, v in self.values.items():
            lb[k] = v
            ub[k] = v

        return lb, ub

# MipResult
class MipResult:
    """
    ----------
    - Outcome of a MIP solve: status, objective, incumbent assignment, best bound,
      explored node count and wall time in seconds
    ----------
    """

    def __init__(self, status, objective=None, incumbent=None, bound=None, nodes=0, wall_time=0.0):
        self.status = status
        self.objective = objective
        self.incumbent = incumbent
        self.bound = bound
        self.nodes = nodes
        self.wall_time = wall_time

    @property
    def has_solution(self):
        return self.incumbent is not None

    def to_string(self):
        obj = "None" if self.objective is None else "%.6f" % self.objective
        bound = "None" if self.bound is None else "%.6f" % self.bound
        return "RESULT: status: %s  objective: %s  bound: %s  nodes: %d  time: %.3fs" % \
            (self.status, obj, bound, self.nodes, self.wall_time)
