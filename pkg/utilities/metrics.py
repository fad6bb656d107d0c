import json
import os

import numpy as np

from utilities.constants import *
from utilities.errors import InvalidArgumentError

SUMMARY_METRICS = ("accuracy", "fixed_accuracy", "gap", "infeas_rate", "time_factor", "repairs", "fallbacks")

# prediction_accuracy
def prediction_accuracy(predicted, reference):
    """
    ----------
    - Share of binary decisions whose thresholded prediction matches the reference optimum
    ----------
    """

    predicted = np.asarray(predicted, dtype=np.float64)
    reference = np.asarray(reference, dtype=np.float64)
    if(predicted.shape != reference.shape):
        raise InvalidArgumentError("prediction_accuracy: shapes %s and %s differ" % (predicted.shape, reference.shape))
    if(predicted.size == 0):
        return None

    hits = (predicted >= DECISION_THRESHOLD) == (reference >= DECISION_THRESHOLD)
    return float(np.mean(hits))

# fixed_accuracy
def fixed_accuracy(fixset, reference_x):
    """
    ----------
    - Share of fixed variables whose fixed value matches the reference assignment
    - None when nothing was fixed
    ----------
    """

    if(len(fixset) == 0):
        return None

    hits = [int(round(reference_x[k])) == v for k, v in fixset.items()]
    return float(np.mean(hits))

# optimality_gap
def optimality_gap(objective, reference):
    """
    ----------
    - (objective - reference) / |reference|, with |reference| replaced by 1 when it is zero
    ----------
    """

    if((objective is None) or (reference is None)):
        return None

    denom = abs(reference)
    if(denom == 0.0):
        denom = 1.0

    return (objective - reference) / denom

# time_factor
def time_factor(t_reference, t_pipeline):
    if((t_reference is None) or (t_pipeline is None) or (t_pipeline <= 0.0)):
        return None

    return t_reference / t_pipeline

# summarize
def summarize(rows, metrics=SUMMARY_METRICS):
    """
    ----------
    - Medians and means of each metric over rows (dicts), skipping missing values
    - Also counts rows and final statuses
    ----------
    """

    summary = {"count": len(rows), "median": {}, "mean": {}, "status": {}}

    for name in metrics:
        values = [r[name] for r in rows if (name in r) and (r[name] is not None)]
        if(len(values) == 0):
            summary["median"][name] = None
            summary["mean"][name] = None
        else:
            summary["median"][name] = float(np.median(values))
            summary["mean"][name] = float(np.mean(values))

    for r in rows:
        status = r.get("status")
        if(status):
            summary["status"][status] = summary["status"].get(status, 0) + 1

    return summary

# write_summary
def write_summary(path, summary):
    p, _ = os.path.split(path)
    if(p):
        os.makedirs(p, exist_ok=True)

    with open(path, "w", newline="\n") as o_stream:
        json.dump(summary, o_stream, sort_keys=True, indent=2)
        o_stream.write("\n")

    return
