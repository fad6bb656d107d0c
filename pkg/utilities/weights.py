import os

import numpy as np
import torch

from utilities.constants import *
from utilities.errors import MissingArtifactError, InvalidArgumentError
from utilities.serialization import write_jsonl, read_jsonl
from utilities.preprocessing import FeatureScaler

from model.model_config import SeqModelConfig
from model.seq_model import SeqModel

# write_weights
def write_weights(model, weights_file):
    """
    ----------
    - Saves a SeqModel checkpoint as json lines
    - Header: checkpoint version, code version, epochs trained, model config and feature scaler
    - Then one record per named tensor with its shape and flattened values
    ----------
    """

    header = {
        "checkpoint_version": CHECKPOINT_VERSION,
        "version": model.version,
        "epochs_trained": model.epochs_trained,
        "config": model.config.to_record(),
        "scaler": None if model.scaler is None else model.scaler.to_record(),
    }

    records = [header]
    for name, tensor in model.state_dict().items():
        values = tensor.detach().cpu().numpy().astype(np.float64)
        records.append({"name": name, "shape": list(values.shape), "data": values.reshape(-1)})

    write_jsonl(weights_file, records)

    return

# load_weights
def load_weights(weights_file):
    """
    ----------
    - Rebuilds a SeqModel from a checkpoint written by write_weights
    - Raises MissingArtifactError if the file does not exist
    ----------
    """

    if(not os.path.isfile(weights_file)):
        raise MissingArtifactError("model checkpoint not found: %s" % weights_file)

    records = read_jsonl(weights_file)
    if(len(records) == 0):
        raise InvalidArgumentError("%s: empty checkpoint" % weights_file)

    header = records[0]
    if(header.get("checkpoint_version") != CHECKPOINT_VERSION):
        raise InvalidArgumentError("%s: unsupported checkpoint version %r" % (weights_file, header.get("checkpoint_version")))

    config = SeqModelConfig.from_record(header["config"])
    scaler = None
    if(header.get("scaler") is not None):
        scaler = FeatureScaler.from_record(header["scaler"])

    model = SeqModel(config, scaler=scaler)
    model.version = header.get("version", SCENOPT_VERSION)
    model.epochs_trained = int(header.get("epochs_trained", 0))

    expected = model.state_dict()
    state = {}
    for r in records[1:]:
        name = r["name"]
        if(name not in expected):
            print("----- WARNING: Checkpoint tensor %s is not part of the model, skipping -----" % name)
            continue

        values = torch.tensor(r["data"], dtype=torch.float64).reshape(r["shape"])
        if(tuple(values.shape) != tuple(expected[name].shape)):
            raise InvalidArgumentError("%s: tensor %s has shape %s, model expects %s" % (weights_file, name, list(values.shape), list(expected[name].shape)))
        state[name] = values

    missing = [k for k in expected if k not in state]
    if(len(missing) > 0):
        raise InvalidArgumentError("%s: checkpoint is missing tensors %s" % (weights_file, missing))

    model.load_state_dict(state)
    model.eval()

    return model
