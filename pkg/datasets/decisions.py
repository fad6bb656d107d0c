import time

from torch.utils.data import Dataset

from utilities.constants import *
from utilities.errors import InvalidArgumentError
from utilities.serialization import write_jsonl, read_jsonl
from utilities.preprocessing import make_decision_input

from problems.instances import SolutionVector
from problems.evaluation import evaluate_solution
from solver.extensive_form import build_extensive_form, solution_from_assignment
from solver.branch_and_bound import branch_and_bound

# SolvedRecord
class SolvedRecord:
    """
    ----------
    - Archived outcome of an exact solve of one instance
    - solution is None when the instance was excluded (reason says why)
    ----------
    """

    def __init__(self, instance_id, status, objective=None, bound=None, nodes=0, solution=None, reason=None):
        self.instance_id = instance_id
        self.status = status
        self.objective = objective
        self.bound = bound
        self.nodes = nodes
        self.solution = solution
        self.reason = reason

    @property
    def usable(self):
        return self.solution is not None

    def to_record(self):
        return {
            "id": self.instance_id, "status": self.status, "objective": self.objective, "bound": self.bound,
            "nodes": self.nodes, "reason": self.reason,
            "solution": None if self.solution is None else self.solution.to_record(),
        }

    @staticmethod
    def from_record(record):
        solution = None
        if(record.get("solution") is not None):
            solution = SolutionVector.from_record(record["solution"])

        return SolvedRecord(
            record["id"], record["status"], record.get("objective"), record.get("bound"),
            record.get("nodes", 0), solution, record.get("reason"),
        )

# solve_instance
def solve_instance(instance, time_limit=TIME_LIMIT_DEF):
    """
    ----------
    - Solves an instance exactly and checks the optimum with evaluate_solution
    - Returns (SolvedRecord, wall time in seconds); unsolved or unverified instances carry a reason
    ----------
    """

    before = time.perf_counter()
    model = build_extensive_form(instance)
    result = branch_and_bound(model, time_limit=time_limit)
    wall = time.perf_counter() - before

    if(result.status != STATUS_OPTIMAL):
        reason = "solver status %s" % result.status
        return SolvedRecord(instance.instance_id, result.status, result.objective, result.bound, result.nodes, reason=reason), wall

    solution = solution_from_assignment(model, result.incumbent, result.objective)
    check = evaluate_solution(instance, solution)
    if(not check.feasible):
        reason = "optimum failed verification (max residual %.3g)" % check.max_residual
        return SolvedRecord(instance.instance_id, result.status, result.objective, result.bound, result.nodes, reason=reason), wall

    return SolvedRecord(instance.instance_id, result.status, result.objective, result.bound, result.nodes, solution=solution), wall

# save_solutions
def save_solutions(path, records):
    write_jsonl(path, [r.to_record() for r in sorted(records, key=lambda r: r.instance_id)])

# load_solutions
def load_solutions(path):
    return [SolvedRecord.from_record(r) for r in read_jsonl(path)]

# DecisionDataset
class DecisionDataset(Dataset):
    """
    ----------
    - Pytorch Dataset of solved instances
    - Each item is a DecisionInput with node-level targets from the archived optimum;
      every scenario of a stochastic instance is in the same item and shares its bundle targets
    ----------
    """

    # __init__
    def __init__(self, instances, solutions, scaler):
        if(len(instances) != len(solutions)):
            raise InvalidArgumentError("DecisionDataset: %d instances but %d solutions" % (len(instances), len(solutions)))

        self.instances = list(instances)
        self.solutions = list(solutions)
        self.scaler = scaler
        self._inputs = [None] * len(self.instances)

    # __len__
    def __len__(self):
        return len(self.instances)

    # __getitem__
    def __getitem__(self, idx):
        if(self._inputs[idx] is None):
            self._inputs[idx] = make_decision_input(self.instances[idx], self.scaler, solution=self.solutions[idx])

        return self._inputs[idx]

# dataset_from_records
def dataset_from_records(instances, records, scaler, verbose=True):
    """
    ----------
    - Pairs instances with their archived solves by instance id, skipping unusable ones
      with a printed reason
    ----------
    """

    by_id = {r.instance_id: r for r in records}
    kept_inst = []
    kept_sol = []
    for inst in instances:
        record = by_id.get(inst.instance_id)
        if(record is None):
            if(verbose):
                print("----- WARNING: instance %s has no archived solve, excluded -----" % inst.instance_id)
            continue
        if(not record.usable):
            if(verbose):
                print("----- WARNING: instance %s excluded: %s -----" % (inst.instance_id, record.reason))
            continue

        kept_inst.append(inst)
        kept_sol.append(record.solution)

    return DecisionDataset(kept_inst, kept_sol, scaler)

# make_dataset
def make_dataset(instances, scaler, time_limit=TIME_LIMIT_DEF, verbose=True):
    """
    ----------
    - Solves every instance and builds the training dataset from the optima
    - Instances the solver cannot close are excluded with a printed reason
    - Returns (DecisionDataset, list of SolvedRecord)
    ----------
    """

    records = []
    for i, inst in enumerate(instances):
        record, wall = solve_instance(inst, time_limit=time_limit)
        records.append(record)
        if(verbose):
            print("Solved: %d / %d  (id %s: %s, %.2fs)" % (i + 1, len(instances), inst.instance_id, record.status, wall), end=CARRIAGE_RETURN)

    if(verbose):
        print("")

    return dataset_from_records(instances, records, scaler, verbose=verbose), records
