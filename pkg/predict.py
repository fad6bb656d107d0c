import os
import sys

from utilities.constants import *
from utilities.arguments import parse_predict_args
from utilities.configs import resolve_config, artifact_path, archive_config, write_info, update_manifest, run_guarded
from utilities.expansion import predict_any
from utilities.serialization import write_jsonl
from utilities.weights import load_weights

from problems.instances import load_instances

# cmd_predict
def cmd_predict(config):
    """
    ----------
    - Writes node probabilities (n_items, n_nodes) per instance to <workdir>/predictions/<set>.jsonl
    - Longer horizons run the recurrence further; larger item counts go through item-wise expansion
    ----------
    """

    checkpoint_f = os.path.join(config.workdir, DIR_CHECKPOINTS, CHECKPOINT_NAME)
    model = load_weights(checkpoint_f)
    instances = load_instances(artifact_path(config, DIR_INSTANCES))

    mode = config.mode if config.mode is not None else model.config.mode

    records = []
    for i, inst in enumerate(instances):
        probs = predict_any(model, inst, delta=config.delta, seed=config.seed, aggregation=config.aggregation, mode=mode)
        records.append({"id": inst.instance_id, "mode": mode, "probs": probs})
        print("Predicted: %d / %d" % (i + 1, len(instances)), end=CARRIAGE_RETURN)
    print("")

    predictions_f = artifact_path(config, DIR_PREDICTIONS)
    write_jsonl(predictions_f, sorted(records, key=lambda r: r["id"]))
    print("Wrote:", predictions_f)

    write_info(config, ["predicted: %d" % len(records)])
    update_manifest(config.workdir, [predictions_f, archive_config(config)], config.command)

    return records

def main(argv=None):
    """
    ----------
    - Entry point for predicting decisions with a trained model
    ----------
    """

    args = parse_predict_args(argv)

    def body():
        config = resolve_config("predict", args)
        cmd_predict(config)

    return run_guarded("predict", body)


if __name__ == "__main__":
    sys.exit(main())
