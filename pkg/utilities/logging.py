import csv
import os

from utilities.constants import *
from utilities.errors import MissingArtifactError, InvalidArgumentError

TRAIN_EPOCH_HEADER = ("Epoch", "Learn Rate", "Loss")
TRAIN_EPOCH_TB_GROUP = "Epochs"

# One row per instance; t_pipeline and t_reference are the timing columns
PIPELINE_HEADER = (
    "id", "accuracy", "fixed_accuracy", "gap", "infeas_rate", "time_factor", "status",
    "repairs", "n_fixed", "fallbacks", "objective", "reference_objective", "t_pipeline", "t_reference",
)
PIPELINE_TIMING_COLUMNS = ("time_factor", "t_pipeline", "t_reference")

# solve.py wall times, kept out of the solutions file
SOLVE_TIMING_HEADER = ("id", "status", "nodes", "wall_time")

# make_log_file
def make_log_file(log_f, header=None):
    """
    ----------
    - Creates a csv log file with the given header
    - Warning: Creates an empty csv file regardless if log_f already exists
    ----------
    """

    p, _ = os.path.split(log_f)
    if(p):
        os.makedirs(p, exist_ok=True)

    with open(log_f, "w", newline="") as log_stream:
        if(header is not None):
            writer = csv.writer(log_stream)
            writer.writerow(header)

    return

# log_train_epoch
def log_train_epoch(log_f, epoch, learn_rate, loss):
    """
    ----------
    - Logs the mean training loss of one epoch to csv
    - Creates log_f if it does not exist already, otherwise appends to it
    ----------
    """

    if(not os.path.isfile(log_f)):
        make_log_file(log_f, header=TRAIN_EPOCH_HEADER)

    row = (epoch, repr(float(learn_rate)), repr(float(loss)))
    with open(log_f, "a", newline="") as log_stream:
        writer = csv.writer(log_stream)
        writer.writerow(row)

    return

# log_train_epoch_tb
def log_train_epoch_tb(tensorboard_summary, epoch, learn_rate, loss):
    name = "%s/Learn Rate" % TRAIN_EPOCH_TB_GROUP
    tensorboard_summary.add_scalar(name, learn_rate, global_step=epoch)

    name = "%s/Loss" % TRAIN_EPOCH_TB_GROUP
    tensorboard_summary.add_scalar(name, loss, global_step=epoch)

    tensorboard_summary.flush()

    return

# _cell
def _cell(value):
    if(value is None):
        return ""
    if(isinstance(value, float)):
        return repr(value)
    return value

# write_pipeline_log
def write_pipeline_log(log_f, reports):
    """
    ----------
    - Writes one csv row per PipelineReport, sorted by instance id
    ----------
    """

    make_log_file(log_f, header=PIPELINE_HEADER)

    with open(log_f, "a", newline="") as log_stream:
        writer = csv.writer(log_stream)
        for report in sorted(reports, key=lambda r: r.instance_id):
            row = report.to_row()
            writer.writerow([_cell(row[k]) for k in PIPELINE_HEADER])

    return

# read_pipeline_log
def read_pipeline_log(log_f):
    """
    ----------
    - Reads a pipeline metrics csv back into a list of dicts (numeric columns as floats,
      empty cells as None)
    ----------
    """

    if(not os.path.isfile(log_f)):
        raise MissingArtifactError("Metrics file not found: %s" % log_f)

    rows = []
    with open(log_f, "r", newline="") as log_stream:
        reader = csv.DictReader(log_stream)
        missing = [k for k in ("id", "accuracy", "gap") if k not in (reader.fieldnames or [])]
        if(len(missing) > 0):
            raise InvalidArgumentError("%s: missing metric columns %s" % (log_f, missing))

        for raw in reader:
            row = {}
            for k, v in raw.items():
                if(k == "status"):
                    row[k] = v
                elif(v == "" or v is None):
                    row[k] = None
                else:
                    row[k] = float(v)
            row["id"] = int(row["id"])
            rows.append(row)

    return rows

# log_solve_timing
def log_solve_timing(log_f, record, wall_time):
    with open(log_f, "a", newline="") as log_stream:
        writer = csv.writer(log_stream)
        writer.writerow((record.instance_id, record.status, record.nodes, repr(float(wall_time))))

    return
