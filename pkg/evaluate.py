import os
import sys
from concurrent.futures import ProcessPoolExecutor

import torch

from utilities.constants import *
from utilities.errors import InvalidArgumentError
from utilities.arguments import parse_evaluate_args
from utilities.configs import resolve_config, artifact_path, archive_config, write_info, update_manifest, run_guarded
from utilities.logging import write_pipeline_log
from utilities.metrics import summarize, write_summary
from utilities.pipeline import PipelineConfig, run_pipeline
from utilities.weights import load_weights

from problems.instances import load_instances

# _evaluate_one
def _evaluate_one(job):
    instance, model, pipe_config = job
    with torch.no_grad():
        _, report = run_pipeline(instance, model, pipe_config)

    return report

# cmd_evaluate
def cmd_evaluate(config):
    """
    ----------
    - Runs the pipeline on every instance of the set against a plain reference solve
    - Writes <workdir>/metrics/<set>_metrics.csv (one row per instance) and the summary json
    - With jobs > 1 instances run in worker processes; rows are sorted by id before writing
    ----------
    """

    if(config.jobs < 1):
        raise InvalidArgumentError("jobs must be positive, got %d" % config.jobs)

    checkpoint_f = os.path.join(config.workdir, DIR_CHECKPOINTS, CHECKPOINT_NAME)
    model = load_weights(checkpoint_f)
    instances = load_instances(artifact_path(config, DIR_INSTANCES))

    pipe_config = PipelineConfig(
        p_fix=config.p_fix, mode=config.pipeline, screening=config.screening, time_limit=config.time_limit,
        unfix_budget=config.unfix_budget, delta=config.delta, aggregation=config.aggregation, seed=config.seed,
    )

    print("")
    print(SEPARATOR)
    print("Checkpoint:", checkpoint_f)
    print("Epochs trained:", model.epochs_trained)
    print(model.config.to_string())
    print(pipe_config.to_string())
    print(SEPARATOR)
    print("")

    jobs = [(inst, model, pipe_config) for inst in instances]
    if(config.jobs == 1):
        reports = []
        for i, job in enumerate(jobs):
            reports.append(_evaluate_one(job))
            print("Evaluated: %d / %d" % (i + 1, len(jobs)), end=CARRIAGE_RETURN)
        print("")
    else:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            reports = list(pool.map(_evaluate_one, jobs))

    metrics_f = artifact_path(config, DIR_METRICS, suffix="_metrics.csv")
    summary_f = artifact_path(config, DIR_METRICS, suffix="_summary.json")
    write_pipeline_log(metrics_f, reports)

    summary = summarize([r.to_row() for r in reports])
    write_summary(summary_f, summary)

    print("Median gap:", summary["median"]["gap"])
    print("Median accuracy:", summary["median"]["accuracy"])
    print("Median time factor:", summary["median"]["time_factor"])
    print("Wrote:", metrics_f)

    write_info(config, [pipe_config.to_string(), "evaluated: %d" % len(reports)])
    update_manifest(config.workdir, [metrics_f, summary_f, archive_config(config)], config.command)

    return reports

def main(argv=None):
    """
    ----------
    - Entry point for evaluating the predict, screen and solve pipeline
    ----------
    """

    args = parse_evaluate_args(argv)

    def body():
        config = resolve_config("evaluate", args)
        cmd_evaluate(config)

    return run_guarded("evaluate", body)


if __name__ == "__main__":
    sys.exit(main())
