import time

from utilities.constants import *
from utilities.errors import InvalidArgumentError
from utilities.expansion import predict_any
from utilities.screening import screen
from utilities.metrics import prediction_accuracy, fixed_accuracy, optimality_gap, time_factor

from problems.evaluation import evaluate_solution
from solver.extensive_form import build_extensive_form, binary_block, solution_from_assignment
from solver.branch_and_bound import branch_and_bound, complete_assignment

# PipelineConfig
class PipelineConfig:
    def __init__(self, p_fix=P_FIX_DEF, mode=PIPE_FIX, screening=True, time_limit=TIME_LIMIT_DEF,
        unfix_budget=UNFIX_BUDGET_DEF, delta=DELTA_DEF, aggregation=AGG_MEAN, seed=SEED_DEF):

        if(not (0.5 < p_fix <= 1.0)):
            raise InvalidArgumentError("PipelineConfig: p_fix must lie in (0.5, 1], got %r" % p_fix)
        if(mode not in ALL_PIPE_MODES):
            raise InvalidArgumentError("PipelineConfig: mode must be one of %s" % list(ALL_PIPE_MODES))
        if((time_limit is not None) and (time_limit <= 0)):
            raise InvalidArgumentError("PipelineConfig: time limit must be positive")
        if(int(unfix_budget) < 0):
            raise InvalidArgumentError("PipelineConfig: unfix budget must be nonnegative")

        self.p_fix = float(p_fix)
        self.mode = mode
        self.screening = bool(screening)
        self.time_limit = time_limit
        self.unfix_budget = int(unfix_budget)
        self.delta = int(delta)
        self.aggregation = aggregation
        self.seed = int(seed)

    def to_string(self):
        return "PIPELINE: mode: %s  p_fix: %g  screening: %s  time_limit: %s  unfix_budget: %d  delta: %d  aggregation: %s" % \
            (self.mode, self.p_fix, self.screening, self.time_limit, self.unfix_budget, self.delta, self.aggregation)

# Reference
class Reference:
    """
    ----------
    - Plain branch-and-bound solve of an instance used as the baseline of a pipeline run
    ----------
    """

    def __init__(self, result):
        self.status = result.status
        self.objective = result.objective
        self.x = result.incumbent
        self.wall_time = result.wall_time

# PipelineReport
class PipelineReport:
    def __init__(self, instance_id, accuracy, fixed_acc, gap, infeas_rate, factor, status,
        repairs, n_fixed, fallbacks, objective, reference_objective, t_pipeline, t_reference):

        self.instance_id = instance_id
        self.accuracy = accuracy
        self.fixed_accuracy = fixed_acc
        self.gap = gap
        self.infeas_rate = infeas_rate
        self.time_factor = factor
        self.status = status
        self.repairs = repairs
        self.n_fixed = n_fixed
        self.fallbacks = fallbacks
        self.objective = objective
        self.reference_objective = reference_objective
        self.t_pipeline = t_pipeline
        self.t_reference = t_reference

    def to_row(self):
        return {
            "id": self.instance_id, "accuracy": self.accuracy, "fixed_accuracy": self.fixed_accuracy,
            "gap": self.gap, "infeas_rate": self.infeas_rate, "time_factor": self.time_factor,
            "status": self.status, "repairs": self.repairs, "n_fixed": self.n_fixed, "fallbacks": self.fallbacks,
            "objective": self.objective, "reference_objective": self.reference_objective,
            "t_pipeline": self.t_pipeline, "t_reference": self.t_reference,
        }

    def to_string(self):
        def fmt(v):
            return "None" if v is None else "%.4f" % v

        return "REPORT: id: %s  accuracy: %s  gap: %s  infeasible: %s  time factor: %s  repairs: %d  status: %s" % \
            (self.instance_id, fmt(self.accuracy), fmt(self.gap), fmt(self.infeas_rate), fmt(self.time_factor), self.repairs, self.status)

# solve_reference
def solve_reference(instance, time_limit=TIME_LIMIT_DEF, model=None):
    if(model is None):
        model = build_extensive_form(instance)

    result = branch_and_bound(model, time_limit=time_limit)
    if(result.status not in (STATUS_OPTIMAL,)):
        print("----- WARNING: reference solve of instance %s ended with status %s -----" % (instance.instance_id, result.status))

    return Reference(result)

# raw_infeasible
def raw_infeasible(model, probs):
    """
    ----------
    - 1.0 if the 0.5-thresholded predictions admit no feasible completion, else 0.0
    ----------
    """

    idx = binary_block(model)
    values = {int(idx[j, n]): int(probs[j, n] >= DECISION_THRESHOLD) for j in range(idx.shape[0]) for n in range(idx.shape[1])}

    return 0.0 if complete_assignment(model, values) is not None else 1.0

# _solve_with_fixes
def _solve_with_fixes(model, config, fixset, warm_start, verbose):
    # Halves the FixSet on infeasibility, then drops it
    fallbacks = 0
    while(True):
        warm = None
        if(warm_start is not None):
            warm = dict(warm_start)
            if(fixset is not None):
                warm.update(fixset.values)

        result = branch_and_bound(model, fixset=fixset, warm_start=warm, time_limit=config.time_limit)
        if(result.has_solution or (fixset is None)):
            return result, fallbacks

        fallbacks += 1
        if((fallbacks > FALLBACK_ROUNDS) or (len(fixset) == 0)):
            if(verbose):
                print("run_pipeline: fixing failed, falling back to a plain solve")
            fixset = None
        else:
            fixset = fixset.halve()
            if(verbose):
                print("run_pipeline: restricted problem %s, retrying with %d fixes" % (result.status, len(fixset)))

# run_pipeline
def run_pipeline(instance, model, config, reference=None, verbose=False):
    """
    ----------
    - Predict, screen, then fix and/or warm start the exact solver
    - Infeasible restrictions fall back by halving the FixSet (most confident half kept)
      at most FALLBACK_ROUNDS times, then solve without fixes
    - reference (plain solve) is computed here when not given
    - Returns (SolutionVector, PipelineReport); the solution is checked by evaluate_solution
    ----------
    """

    mip = build_extensive_form(instance)
    if(reference is None):
        reference = solve_reference(instance, time_limit=config.time_limit, model=mip)

    before = time.perf_counter()
    probs = predict_any(model, instance, delta=config.delta, seed=config.seed, aggregation=config.aggregation)
    screened = screen(probs, instance, config, model=mip)

    fixset = screened.fixset if config.mode in (PIPE_FIX, PIPE_FIX_WARM) else None
    warm = screened.warm_start if config.mode in (PIPE_WARM, PIPE_FIX_WARM) else None

    result, fallbacks = _solve_with_fixes(mip, config, fixset, warm, verbose)
    t_pipeline = time.perf_counter() - before

    solution = None
    if(result.has_solution):
        solution = solution_from_assignment(mip, result.incumbent, result.objective)
        check = evaluate_solution(instance, solution)
        if(not check.feasible):
            print("----- WARNING: run_pipeline: solution of instance %s failed verification (%s), solving without fixes -----" % (instance.instance_id, check.to_string()))
            result = branch_and_bound(mip, time_limit=config.time_limit)
            fallbacks += 1
            t_pipeline = time.perf_counter() - before
            solution = None if not result.has_solution else solution_from_assignment(mip, result.incumbent, result.objective)

    accuracy = None
    fixed_acc = None
    if(reference.x is not None):
        ref_binary = reference.x[binary_block(mip)]
        accuracy = prediction_accuracy(probs, ref_binary)
        fixed_acc = fixed_accuracy(screened.fixset, reference.x)

    report = PipelineReport(
        instance.instance_id, accuracy, fixed_acc, optimality_gap(result.objective, reference.objective),
        raw_infeasible(mip, probs), time_factor(reference.wall_time, t_pipeline), result.status,
        screened.repairs, 0 if fixset is None else len(fixset), fallbacks,
        result.objective, reference.objective, t_pipeline, reference.wall_time,
    )

    if(verbose):
        print(report.to_string())

    return solution, report
