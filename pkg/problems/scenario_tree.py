import numpy as np

from utilities.constants import *
from utilities.errors import InvalidArgumentError
from utilities.rando import make_rng
from utilities.serialization import write_jsonl, read_jsonl

# ScenarioNode
class ScenarioNode:
    """
    ----------
    - One node of a scenario tree: a realized history up to its stage
    - prob is the conditional probability given the parent (1.0 at the root)
    - payload is the realization vector interpreted by the instance attached to the tree
    ----------
    """

    def __init__(self, node_id, stage, parent, prob, payload):
        self.node_id = int(node_id)
        self.stage = int(stage)
        self.parent = None if (parent is None or parent == NO_PARENT) else int(parent)
        self.prob = float(prob)
        self.payload = np.asarray(payload, dtype=np.float64)

    def to_record(self):
        parent = NO_PARENT if self.parent is None else self.parent
        return {"id": self.node_id, "stage": self.stage, "parent": parent, "prob": self.prob, "payload": self.payload}

# ScenarioBundle
class ScenarioBundle:
    """
    ----------
    - Scenarios indistinguishable at a given stage (they share the stage node)
    - representative is the smallest member id
    ----------
    """

    def __init__(self, stage, node_id, members):
        self.stage = stage
        self.node_id = node_id
        self.members = tuple(sorted(members))
        self.representative = self.members[0]

    def __len__(self):
        return len(self.members)

    def __repr__(self):
        return "ScenarioBundle(stage=%d, node=%d, members=%s)" % (self.stage, self.node_id, list(self.members))

# ScenarioPath
class ScenarioPath:
    def __init__(self, scenario, nodes, probability):
        self.scenario = scenario
        self.nodes = tuple(nodes)
        self.probability = probability

# ScenarioTree
class ScenarioTree:
    """
    ----------
    - Full, stage-uniform scenario tree
    - Node ids are dense and breadth-first, scenario ids follow leaf order (both 0-based)
    - Stages run from 1 to horizon
    - Immutable after construction
    ----------
    """

    # __init__
    def __init__(self, nodes, branching, seed=None):
        self.nodes = list(nodes)
        self.branching = tuple(int(b) for b in branching)
        self.seed = seed
        self.horizon = len(self.branching) + 1

        self._validate()
        self._index()

    # _validate
    def _validate(self):
        if(len(self.nodes) == 0):
            raise InvalidArgumentError("ScenarioTree: no nodes")

        for i, node in enumerate(self.nodes):
            if(node.node_id != i):
                raise InvalidArgumentError("ScenarioTree: node ids must be dense and breadth-first (got %d at %d)" % (node.node_id, i))

        root = self.nodes[0]
        if((root.parent is not None) or (root.stage != ROOT_STAGE)):
            raise InvalidArgumentError("ScenarioTree: node 0 must be the root at stage %d" % ROOT_STAGE)

        payload_dim = root.payload.shape[0]
        children = [[] for _ in self.nodes]
        for node in self.nodes[1:]:
            if(node.parent is None):
                raise InvalidArgumentError("ScenarioTree: more than one root (node %d)" % node.node_id)
            if((node.parent < 0) or (node.parent >= node.node_id)):
                raise InvalidArgumentError("ScenarioTree: node %d has invalid parent %d" % (node.node_id, node.parent))

            parent = self.nodes[node.parent]
            if(node.stage != parent.stage + 1):
                raise InvalidArgumentError("ScenarioTree: node %d stage must be parent stage + 1" % node.node_id)
            if(not (0.0 < node.prob <= 1.0)):
                raise InvalidArgumentError("ScenarioTree: node %d probability %r outside (0,1]" % (node.node_id, node.prob))
            if(node.payload.shape != (payload_dim,)):
                raise InvalidArgumentError("ScenarioTree: node %d payload has the wrong dimension" % node.node_id)

            children[node.parent].append(node.node_id)

        for node in self.nodes:
            kids = children[node.node_id]
            if(node.stage < self.horizon):
                if(len(kids) != self.branching[node.stage - 1]):
                    raise InvalidArgumentError("ScenarioTree: node %d must have %d children" % (node.node_id, self.branching[node.stage - 1]))

                total = sum(self.nodes[k].prob for k in kids)
                if(abs(total - 1.0) > PROB_TOL):
                    raise InvalidArgumentError("ScenarioTree: children of node %d sum to %r" % (node.node_id, total))

            elif(len(kids) != 0):
                raise InvalidArgumentError("ScenarioTree: leaf %d has children" % node.node_id)

        n_leaves = sum(1 for node in self.nodes if node.stage == self.horizon)
        if(n_leaves != int(np.prod(self.branching, dtype=np.int64))):
            raise InvalidArgumentError("ScenarioTree: leaf count does not match branching")

        self.children = [tuple(k) for k in children]

        return

    # _index
    def _index(self):
        n = len(self.nodes)

        self.node_stage = np.array([node.stage for node in self.nodes], dtype=np.int64)
        self.node_parent = np.array([NO_PARENT if node.parent is None else node.parent for node in self.nodes], dtype=np.int64)

        # Unconditional node probability (product along the path)
        self.node_prob = np.empty(n, dtype=np.float64)
        for node in self.nodes:
            if(node.parent is None):
                self.node_prob[node.node_id] = node.prob
            else:
                self.node_prob[node.node_id] = self.node_prob[node.parent] * node.prob

        self.stage_nodes = [np.flatnonzero(self.node_stage == t) for t in range(ROOT_STAGE, self.horizon + 1)]
        self.leaves = self.stage_nodes[-1]

        # Node id per (scenario, stage index)
        self.leaf_paths = np.empty((len(self.leaves), self.horizon), dtype=np.int64)
        for s, leaf in enumerate(self.leaves):
            cur = int(leaf)
            for t in range(self.horizon - 1, -1, -1):
                self.leaf_paths[s, t] = cur
                cur = self.node_parent[cur]

        return

    @property
    def n_nodes(self):
        return len(self.nodes)

    @property
    def n_scenarios(self):
        return len(self.leaves)

    @property
    def payload_dim(self):
        return self.nodes[0].payload.shape[0]

    # payloads
    def payloads(self):
        """
        ----------
        - Payload matrix of shape (n_nodes, payload_dim)
        ----------
        """

        return np.stack([node.payload for node in self.nodes])

    # node_path
    def node_path(self, node_id):
        """
        ----------
        - Node ids from the root down to node_id (inclusive)
        ----------
        """

        path = []
        cur = int(node_id)
        while(cur != NO_PARENT):
            path.append(cur)
            cur = int(self.node_parent[cur])

        return path[::-1]

    # leaves_under
    def leaves_under(self, node_id):
        """
        ----------
        - Scenario ids whose path passes through node_id
        ----------
        """

        stage = self.nodes[node_id].stage
        return np.flatnonzero(self.leaf_paths[:, stage - 1] == node_id)

    # to_records
    def to_records(self):
        header = {"T": self.horizon, "branching": list(self.branching), "seed": self.seed}
        return [header] + [node.to_record() for node in self.nodes]

    # from_records
    @staticmethod
    def from_records(records):
        if(len(records) == 0):
            raise InvalidArgumentError("ScenarioTree: empty record list")

        header = records[0]
        nodes = [ScenarioNode(r["id"], r["stage"], r["parent"], r["prob"], r["payload"]) for r in records[1:]]
        tree = ScenarioTree(nodes, header["branching"], seed=header.get("seed"))

        if(tree.horizon != header["T"]):
            raise InvalidArgumentError("ScenarioTree: header T does not match branching")

        return tree

    # to_string
    def to_string(self):
        return "TREE: T: %d  branching: %s  nodes: %d  scenarios: %d  payload_dim: %d  seed: %s" % \
            (self.horizon, list(self.branching), self.n_nodes, self.n_scenarios, self.payload_dim, self.seed)

# build_tree
def build_tree(branching, seed, payload_dim, levels=STOCH_LEVELS_DEF, probabilities=None):
    """
    ----------
    - Builds a full scenario tree breadth-first with the given branching (length T-1)
    - Non-root payloads are drawn per entry from levels using a generator seeded with seed
    - The root payload is all ones (stage 1 data is known)
    - probabilities optionally gives the conditional branch probabilities per stage,
      otherwise every split is uniform
    ----------
    """

    branching = [int(b) for b in branching]
    if(len(branching) == 0):
        raise InvalidArgumentError("build_tree: branching must be non-empty")
    if(any(b <= 0 for b in branching)):
        raise InvalidArgumentError("build_tree: branching factors must be positive, got %s" % branching)
    if(int(payload_dim) < 1):
        raise InvalidArgumentError("build_tree: payload dimension must be >= 1")

    if(probabilities is not None):
        if(len(probabilities) != len(branching)):
            raise InvalidArgumentError("build_tree: need one probability list per stage split")
        for b, probs in zip(branching, probabilities):
            if(len(probs) != b):
                raise InvalidArgumentError("build_tree: probability list %s does not match branching %d" % (list(probs), b))

    rng = make_rng(seed)
    levels = np.asarray(levels, dtype=np.float64)

    nodes = [ScenarioNode(0, ROOT_STAGE, None, 1.0, np.ones(payload_dim))]
    frontier = [0]
    for split, b in enumerate(branching):
        next_frontier = []
        for parent in frontier:
            for k in range(b):
                if(probabilities is None):
                    prob = 1.0 / b
                else:
                    prob = float(probabilities[split][k])

                payload = rng.choice(levels, size=payload_dim)
                node = ScenarioNode(len(nodes), nodes[parent].stage + 1, parent, prob, payload)
                nodes.append(node)
                next_frontier.append(node.node_id)
        frontier = next_frontier

    return ScenarioTree(nodes, branching, seed=seed)

# chain_tree
def chain_tree(horizon, payload_dim):
    """
    ----------
    - Single-scenario tree (one node per stage) with all-ones payloads
    - Deterministic instances are solved and encoded through this tree
    ----------
    """

    nodes = []
    for t in range(horizon):
        parent = None if t == 0 else t - 1
        nodes.append(ScenarioNode(t, ROOT_STAGE + t, parent, 1.0, np.ones(payload_dim)))

    return ScenarioTree(nodes, [1] * (horizon - 1), seed=None)

# bundle_partition
def bundle_partition(tree, t):
    """
    ----------
    - Partitions scenarios by their shared node at stage t
    - Bundles are ordered by their smallest member id
    ----------
    """

    if((t < ROOT_STAGE) or (t > tree.horizon)):
        raise InvalidArgumentError("bundle_partition: stage %r outside 1..%d" % (t, tree.horizon))

    column = tree.leaf_paths[:, t - 1]
    bundles = {}
    for s, node_id in enumerate(column):
        bundles.setdefault(int(node_id), []).append(s)

    result = [ScenarioBundle(t, node_id, members) for node_id, members in bundles.items()]
    result.sort(key=lambda b: b.representative)

    return result

# scenario_paths
def scenario_paths(tree):
    """
    ----------
    - One path per leaf in leaf order with its probability (product of conditionals)
    ----------
    """

    paths = []
    for s in range(tree.n_scenarios):
        nodes = tree.leaf_paths[s].tolist()
        prob = 1.0
        for node_id in nodes:
            prob *= tree.nodes[node_id].prob
        paths.append(ScenarioPath(s, nodes, prob))

    return paths

# save_tree
def save_tree(tree, path):
    write_jsonl(path, tree.to_records())

# load_tree
def load_tree(path):
    return ScenarioTree.from_records(read_jsonl(path))
