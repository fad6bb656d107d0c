import numpy as np
import pytest

from utilities.errors import InvalidArgumentError
from problems.scenario_tree import build_tree, chain_tree, bundle_partition, scenario_paths, save_tree, load_tree


def test_node_and_scenario_counts():
    tree = build_tree([2, 2], seed=0, payload_dim=1)
    assert tree.horizon == 3
    assert tree.n_nodes == 7
    assert tree.n_scenarios == 4


def test_degenerate_chain_has_singleton_bundles():
    tree = build_tree([1, 1], seed=0, payload_dim=1)
    assert tree.n_nodes == 3
    assert tree.n_scenarios == 1
    for t in (1, 2, 3):
        bundles = bundle_partition(tree, t)
        assert [b.members for b in bundles] == [(0,)]


def test_seeded_trees_are_identical():
    a = build_tree([3], seed=7, payload_dim=2)
    b = build_tree([3], seed=7, payload_dim=2)
    assert np.array_equal(a.payloads(), b.payloads())
    assert [n.to_record()["prob"] for n in a.nodes] == [n.to_record()["prob"] for n in b.nodes]


def test_bundles_per_stage():
    tree = build_tree([2, 2], seed=0, payload_dim=1)
    assert [b.members for b in bundle_partition(tree, 1)] == [(0, 1, 2, 3)]
    assert [b.members for b in bundle_partition(tree, 2)] == [(0, 1), (2, 3)]
    assert [b.members for b in bundle_partition(tree, 3)] == [(0,), (1,), (2,), (3,)]


def test_bundles_only_split_as_stages_advance():
    tree = build_tree([2, 3, 2], seed=3, payload_dim=1)
    for t in range(2, tree.horizon + 1):
        parents = [set(b.members) for b in bundle_partition(tree, t - 1)]
        for bundle in bundle_partition(tree, t):
            assert any(set(bundle.members) <= p for p in parents)


def test_bundle_stage_out_of_range():
    tree = build_tree([2], seed=0, payload_dim=1)
    with pytest.raises(InvalidArgumentError):
        bundle_partition(tree, 0)
    with pytest.raises(InvalidArgumentError):
        bundle_partition(tree, 3)


def test_uniform_path_probabilities():
    assert [p.probability for p in scenario_paths(build_tree([2], 0, 1))] == [0.5, 0.5]
    assert [p.probability for p in scenario_paths(build_tree([2, 2], 0, 1))] == [0.25] * 4


def test_conditional_path_probabilities():
    tree = build_tree([2, 2], 0, 1, probabilities=[(0.3, 0.7), (0.5, 0.5)])
    probs = [p.probability for p in scenario_paths(tree)]
    assert probs == pytest.approx([0.15, 0.15, 0.35, 0.35], abs=1e-12)
    assert sum(probs) == pytest.approx(1.0, abs=1e-9)


def test_invalid_branching():
    with pytest.raises(InvalidArgumentError):
        build_tree([2, 0], seed=0, payload_dim=1)
    with pytest.raises(InvalidArgumentError):
        build_tree([2], 0, 1, probabilities=[(0.5, 0.5, 0.0)])


def test_paths_and_leaves():
    tree = build_tree([2, 2], seed=0, payload_dim=1)
    assert tree.node_path(6) == [0, 2, 6]
    assert tree.leaves_under(1).tolist() == [0, 1]
    assert chain_tree(4, 2).n_scenarios == 1


def test_tree_file_round_trip(tmp_path):
    tree = build_tree([2, 3], seed=5, payload_dim=2, probabilities=[(0.3, 0.7), (0.2, 0.3, 0.5)])
    path = str(tmp_path / "tree.jsonl")
    save_tree(tree, path)
    loaded = load_tree(path)

    assert loaded.branching == tree.branching
    assert np.array_equal(loaded.payloads(), tree.payloads())
    assert [p.probability for p in scenario_paths(loaded)] == [p.probability for p in scenario_paths(tree)]
