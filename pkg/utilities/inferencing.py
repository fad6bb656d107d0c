import numpy as np
import torch

from utilities.constants import *
from utilities.errors import InvalidArgumentError
from utilities.preprocessing import FeatureScaler, make_decision_input

from problems.instances import as_stochastic

# inference
def inference(model, inp, mode=None):
    """
    ----------
    - Runs the model on a DecisionInput without teacher forcing
    - Returns unit probabilities as a float64 tensor (see SeqModel.forward_units)
    ----------
    """

    model.eval()
    with torch.no_grad():
        probs, mode = model.forward_units(inp, mode=mode, teacher_forcing=False)

    return probs, mode

# _scaler
def _scaler(model):
    if(model.scaler is not None):
        return model.scaler
    return FeatureScaler.for_kind(model.config.kind)

# predict_scenarios
def predict_scenarios(model, instance, mode=None):
    """
    ----------
    - Per-scenario probabilities, shape (S, T, n_items)
    ----------
    """

    inp = make_decision_input(instance, _scaler(model))
    model.eval()
    with torch.no_grad():
        probs = model(inp, mode=mode, teacher_forcing=False)

    return probs.numpy()

# predict_nodes
def predict_nodes(model, instance, mode=None):
    """
    ----------
    - Node-indexed probabilities for an instance, shape (n_items, n_nodes), the layout of
      the binary decisions of the extensive form
    - Deterministic mode (anticipative) is reduced to nodes by taking each node's first
      scenario, the representative of its bundle
    - Instance item count must equal the model's (see expansion.itemwise_expand otherwise)
    ----------
    """

    st = as_stochastic(instance)
    if(st.n_items != model.config.n_items):
        raise InvalidArgumentError("predict_nodes: instance has %d items, model expects %d" % (st.n_items, model.config.n_items))

    inp = make_decision_input(st, _scaler(model))
    probs, mode = inference(model, inp, mode=mode)

    if(mode == MODE_NEDA):
        return probs.numpy().T.copy()

    tree = st.tree
    S, T = tree.leaf_paths.shape
    per_unit = probs.numpy().reshape(S, T, -1)
    nodes = np.empty((st.n_items, tree.n_nodes))
    for t in range(T):
        for n in tree.stage_nodes[t]:
            s = tree.leaves_under(n)[0]
            nodes[:, n] = per_unit[s, t]

    return nodes
