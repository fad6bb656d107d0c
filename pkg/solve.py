import os
import sys
from concurrent.futures import ProcessPoolExecutor

from utilities.constants import *
from utilities.errors import InvalidArgumentError
from utilities.arguments import parse_solve_args
from utilities.configs import resolve_config, artifact_path, archive_config, write_info, update_manifest, run_guarded
from utilities.logging import make_log_file, log_solve_timing, SOLVE_TIMING_HEADER

from problems.instances import load_instances
from solver.extensive_form import build_extensive_form
from solver.lp_format import write_lp

from datasets.decisions import solve_instance, save_solutions

# _solve_one
def _solve_one(job):
    instance, time_limit = job
    return solve_instance(instance, time_limit=time_limit)

# cmd_solve
def cmd_solve(config):
    """
    ----------
    - Solves every instance of the set exactly into <workdir>/solutions/<set>.jsonl
    - Wall times go to a separate csv so the solutions file stays deterministic
    - With jobs > 1 instances are solved in worker processes; results are merged by id
    ----------
    """

    if(config.jobs < 1):
        raise InvalidArgumentError("jobs must be positive, got %d" % config.jobs)
    if(config.time_limit <= 0):
        raise InvalidArgumentError("time limit must be positive")

    instances = load_instances(artifact_path(config, DIR_INSTANCES))
    jobs = [(inst, config.time_limit) for inst in instances]

    print("Solving %d instances (time limit: %gs  jobs: %d)..." % (len(instances), config.time_limit, config.jobs))
    if(config.jobs == 1):
        outcomes = []
        for i, job in enumerate(jobs):
            outcomes.append(_solve_one(job))
            print("Solved: %d / %d" % (i + 1, len(jobs)), end=CARRIAGE_RETURN)
        print("")
    else:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            outcomes = list(pool.map(_solve_one, jobs))

    records = [r for r, _ in outcomes]
    for r in records:
        if(not r.usable):
            print("----- WARNING: instance %s: %s -----" % (r.instance_id, r.reason))

    solutions_f = artifact_path(config, DIR_SOLUTIONS)
    timing_f = artifact_path(config, DIR_SOLUTIONS, suffix="_timing.csv")
    save_solutions(solutions_f, records)
    make_log_file(timing_f, header=SOLVE_TIMING_HEADER)
    for record, wall in sorted(outcomes, key=lambda o: o[0].instance_id):
        log_solve_timing(timing_f, record, wall)

    artifacts = [solutions_f, timing_f]
    if(config.lp):
        for inst in instances:
            lp_f = artifact_path(config, DIR_SOLUTIONS, name=os.path.join("lp", "%s_%s.lp" % (config.set, inst.instance_id)))
            write_lp(build_extensive_form(inst), lp_f)
            artifacts.append(lp_f)

    n_ok = sum(1 for r in records if r.usable)
    print("Solved to optimality: %d / %d" % (n_ok, len(records)))
    print("Wrote:", solutions_f)

    artifacts.append(archive_config(config))
    write_info(config, ["solved: %d / %d" % (n_ok, len(records))])
    update_manifest(config.workdir, artifacts, config.command)

    return records

def main(argv=None):
    """
    ----------
    - Entry point for solving an instance set exactly
    ----------
    """

    args = parse_solve_args(argv)

    def body():
        config = resolve_config("solve", args)
        cmd_solve(config)

    return run_guarded("solve", body)


if __name__ == "__main__":
    sys.exit(main())
