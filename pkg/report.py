import sys

from utilities.constants import *
from utilities.arguments import parse_report_args
from utilities.configs import resolve_config, artifact_path, update_manifest, run_guarded
from utilities.logging import read_pipeline_log
from utilities.metrics import summarize, write_summary, SUMMARY_METRICS

# cmd_report
def cmd_report(config):
    """
    ----------
    - Aggregates <workdir>/metrics/<set>_metrics.csv into <set>_summary.json (medians and means)
    ----------
    """

    metrics_f = artifact_path(config, DIR_METRICS, suffix="_metrics.csv")
    summary_f = artifact_path(config, DIR_METRICS, suffix="_summary.json")

    summary = summarize(read_pipeline_log(metrics_f))
    write_summary(summary_f, summary)

    print(SEPARATOR)
    print("Instances:", summary["count"])
    for name in SUMMARY_METRICS:
        print("%s: median %s  mean %s" % (name, summary["median"][name], summary["mean"][name]))
    print("Statuses:", summary["status"])
    print(SEPARATOR)

    update_manifest(config.workdir, [summary_f], config.command)

    return summary

def main(argv=None):
    """
    ----------
    - Entry point for summarizing evaluated metrics
    ----------
    """

    args = parse_report_args(argv)

    def body():
        config = resolve_config("report", args)
        cmd_report(config)

    return run_guarded("report", body)


if __name__ == "__main__":
    sys.exit(main())
