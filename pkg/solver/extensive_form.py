import numpy as np

from utilities.constants import *

from problems.instances import as_stochastic, SolutionVector
from solver.mip_model import MipModel

# remaining_demand
def remaining_demand(st):
    """
    ----------
    - Largest demand still to come from each node through the horizon over the subtree,
      shape (n_items, n_nodes)
    ----------
    """

    tree = st.tree
    rem = st.node_params.copy()
    for n in range(tree.n_nodes - 1, -1, -1):
        kids = tree.children[n]
        if(len(kids) > 0):
            rem[:, n] += np.max(rem[:, list(kids)], axis=1)

    return rem

# build_extensive_form
def build_extensive_form(instance):
    """
    ----------
    - Builds the deterministic-equivalent MIP with one decision per (item, tree node)
    - Non-anticipativity holds by construction: scenarios sharing a node share its variables
    - Objective terms are weighted by the node's unconditional probability
    - MCLSP: y (setup, binary), x (production), I (inventory);
      balance I[n] = I[parent] + x[n] - demand[n], capacity sum_j x <= cap,
      linking x <= M y with M = min(cap, largest remaining subtree demand)
    - MSMK: z (selection, binary); per-node knapsack and at-most-once per scenario path
    ----------
    """

    st = as_stochastic(instance)
    tree = st.tree
    d = st.n_items
    n_nodes = tree.n_nodes
    prob = tree.node_prob[None, :]
    capacity = st.base.capacity[tree.node_stage - ROOT_STAGE]

    model = MipModel(name="%s_%s" % (st.base_kind, st.instance_id))
    model.meta = {"kind": st.base_kind, "n_items": d, "n_nodes": n_nodes, "horizon": st.horizon}

    if(st.base_kind == KIND_MCLSP):
        y = model.add_block(VAR_SETUP, prob * st.node_stage_params("setup_cost"), binary=True)
        x = model.add_block(VAR_PRODUCTION, prob * st.node_stage_params("production_cost"))
        inv = model.add_block(VAR_INVENTORY, prob * st.node_stage_params("holding_cost"))

        demand = st.node_params
        big_m = np.minimum(capacity[None, :], remaining_demand(st))

        for j in range(d):
            for n in range(n_nodes):
                parent = tree.node_parent[n]
                coefs = {inv[j, n]: 1.0, x[j, n]: -1.0}
                if(parent == NO_PARENT):
                    rhs = st.base.initial_inventory[j] - demand[j, n]
                else:
                    coefs[inv[j, parent]] = -1.0
                    rhs = -demand[j, n]
                model.add_row(coefs, SENSE_EQ, rhs, name="bal_%d_%d" % (j, n))

        for n in range(n_nodes):
            model.add_row({x[j, n]: 1.0 for j in range(d)}, SENSE_LE, capacity[n], name="cap_%d" % n)

        for j in range(d):
            for n in range(n_nodes):
                model.add_row({x[j, n]: 1.0, y[j, n]: -big_m[j, n]}, SENSE_LE, 0.0, name="link_%d_%d" % (j, n))

    else:
        z = model.add_block(VAR_SELECT, -prob * st.node_params, binary=True)
        weight = st.node_stage_params("weight")

        for n in range(n_nodes):
            model.add_row({z[j, n]: weight[j, n] for j in range(d)}, SENSE_LE, capacity[n], name="knap_%d" % n)

        if(st.horizon > 1):
            for j in range(d):
                for s in range(tree.n_scenarios):
                    model.add_row({z[j, n]: 1.0 for n in tree.leaf_paths[s]}, SENSE_LE, 1.0, name="once_%d_%d" % (j, s))

    model.validate()
    return model

# binary_block
def binary_block(model):
    """
    ----------
    - Index array (items, nodes) of the model's binary decisions
    ----------
    """

    if(VAR_SETUP in model.blocks):
        return model.blocks[VAR_SETUP]
    return model.blocks[VAR_SELECT]

# solution_from_assignment
def solution_from_assignment(model, x, objective=None):
    """
    ----------
    - Unpacks a full variable assignment into a node-indexed SolutionVector
    ----------
    """

    x = np.asarray(x, dtype=np.float64)
    binary = np.round(x[binary_block(model)])

    production = None
    inventory = None
    if(VAR_PRODUCTION in model.blocks):
        production = x[model.blocks[VAR_PRODUCTION]]
        inventory = x[model.blocks[VAR_INVENTORY]]

    if(objective is None):
        objective = model.objective_value(x)

    return SolutionVector(binary, production, inventory, objective)
