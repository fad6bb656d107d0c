import torch

from utilities.constants import *

# neda_average
def neda_average(states, paths, n_nodes=None):
    """
    ----------
    - Averages encoder states over scenario bundles
    - states (S, T, W) per scenario and stage, paths (S, T) node id per scenario and stage
    - Returns (n_nodes, W): the arithmetic mean of the states of every scenario passing
      through each node, at that node's stage
    - Gradients split evenly over the bundle members
    ----------
    """

    paths = torch.as_tensor(paths, dtype=torch.long)
    if(n_nodes is None):
        n_nodes = int(paths.max().item()) + 1

    width = states.shape[SEQ_FEAT_DIM]
    flat_ids = paths.reshape(-1)
    flat_states = states.reshape(-1, width)

    total = states.new_zeros((n_nodes, width)).index_add(0, flat_ids, flat_states)
    count = states.new_zeros((n_nodes,)).index_add(0, flat_ids, states.new_ones(flat_ids.shape))

    return total / count[:, None]

# to_scenarios
def to_scenarios(node_values, paths):
    """
    ----------
    - Gathers node-level rows back onto (S, T, ...) along the scenario paths
    ----------
    """

    paths = torch.as_tensor(paths, dtype=torch.long)
    return node_values[paths]
