import os
import sys

from utilities.constants import *
from utilities.errors import InvalidArgumentError
from utilities.arguments import parse_train_args
from utilities.configs import resolve_config, artifact_path, archive_config, load_archived_config, write_info, update_manifest, run_guarded
from utilities.preprocessing import FeatureScaler
from utilities.training import train
from utilities.weights import write_weights

from problems.instances import load_instances, as_stochastic
from datasets.decisions import load_solutions, dataset_from_records

from model.model_config import SeqModelConfig
from model.seq_model import build_model

# training_scaler
def training_scaler(config, kind):
    """
    ----------
    - Feature scaler from the generation ranges archived in the workdir (defaults otherwise)
    ----------
    """

    generated = load_archived_config(config.workdir, "generate")
    if(generated is None):
        print("----- WARNING: no archived generate config in %s, scaling features with default ranges -----" % config.workdir)

    return FeatureScaler.for_kind(kind, generated)

# cmd_train
def cmd_train(config):
    """
    ----------
    - Trains the sequence model on the solved set and writes <workdir>/checkpoints/model.jsonl
    - Epoch losses go to train_log.csv and optionally Tensorboard
    ----------
    """

    instances = load_instances(artifact_path(config, DIR_INSTANCES))
    records = load_solutions(artifact_path(config, DIR_SOLUTIONS))
    if(len(instances) == 0):
        raise InvalidArgumentError("instance set %s is empty" % config.set)

    kinds = {as_stochastic(inst).base_kind for inst in instances}
    n_items = {as_stochastic(inst).n_items for inst in instances}
    if((len(kinds) != 1) or (len(n_items) != 1)):
        raise InvalidArgumentError("training set mixes kinds %s or item counts %s" % (sorted(kinds), sorted(n_items)))

    kind = kinds.pop()
    model_config = SeqModelConfig(
        kind=kind, n_items=n_items.pop(), hidden=config.hidden, mode=config.mode,
        lr=config.lr, epochs=config.epochs, seed=config.seed,
    )

    print("Building dataset...")
    scaler = training_scaler(config, kind)
    dataset = dataset_from_records(instances, records, scaler)
    if(len(dataset) == 0):
        raise InvalidArgumentError("no solved instances to train on in set %s" % config.set)
    print("Training instances: %d / %d" % (len(dataset), len(instances)))

    print("Building model...")
    model = build_model(model_config, scaler=scaler)

    print("")
    print(SEPARATOR)
    print(model_config.to_string())
    print(SEPARATOR)
    print("")

    if(config.print_network):
        model.print_network()

    ##### Setting up results #####
    checkpoint_f = os.path.join(config.workdir, DIR_CHECKPOINTS, CHECKPOINT_NAME)
    epoch_log = os.path.join(config.workdir, TRAIN_LOG_NAME)
    if(os.path.isfile(epoch_log)):
        os.remove(epoch_log)

    if(config.tensorboard):
        print("Setting up tensorboard...")
        from torch.utils.tensorboard import SummaryWriter
        tensorboard_dir = os.path.join(config.workdir, DIR_TENSORBOARD)
        tensorboard_summary = SummaryWriter(log_dir=tensorboard_dir)
    else:
        tensorboard_summary = None

    history = train(model, dataset, mode=config.mode, epoch_log=epoch_log, tb_summary=tensorboard_summary)

    if(tensorboard_summary is not None):
        tensorboard_summary.close()

    print("Writing checkpoint:", checkpoint_f)
    write_weights(model, checkpoint_f)

    artifacts = [checkpoint_f, epoch_log, archive_config(config)]
    final = history[-1] if len(history) > 0 else None
    write_info(config, [model_config.to_string(), "instances trained on: %d" % len(dataset), "final loss: %r" % final])
    update_manifest(config.workdir, artifacts, config.command)

    return model, history

def main(argv=None):
    """
    ----------
    - Entry point for training the sequence model
    ----------
    """

    args = parse_train_args(argv)

    def body():
        config = resolve_config("train", args)
        cmd_train(config)

    return run_guarded("train", body)


if __name__ == "__main__":
    sys.exit(main())
