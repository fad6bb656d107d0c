import numpy as np
import pytest

from utilities.constants import *
from utilities.errors import InvalidArgumentError, ExpansionError
from utilities.preprocessing import FeatureScaler
from utilities.inferencing import predict_nodes
from utilities.expansion import expand_horizon, itemwise_expand, least_covered_sampler, ExpansionState, predict_any
from problems.instances import restrict_to_subset
from problems.generators import generate_mclsp, generate_msmk, generate_stochastic
from model.model_config import SeqModelConfig
from model.seq_model import build_model


def _model(kind, n_items, seed=0):
    config = SeqModelConfig(kind=kind, n_items=n_items, hidden=4, seed=seed)
    return build_model(config, scaler=FeatureScaler.for_kind(kind))


def test_horizon_identity_and_longer_horizons():
    model = _model(KIND_MCLSP, 2)
    inst = generate_mclsp(0, 2, 4)
    assert np.array_equal(expand_horizon(model, inst), predict_nodes(model, inst))

    longer = generate_mclsp(0, 2, 8)
    assert expand_horizon(model, longer).shape == (2, 8)


def test_full_subset_reproduces_plain_forward():
    model = _model(KIND_MCLSP, 3)
    inst = generate_stochastic(generate_mclsp(1, 3, 3), [2, 2], seed=1)

    expanded = itemwise_expand(model, inst, delta=0, aggregation=AGG_MEAN)
    assert np.array_equal(expanded, predict_nodes(model, inst))


def test_hand_traced_coverage_loop():
    model = _model(KIND_MSMK, 2, seed=2)
    inst = generate_msmk(2, 3, 3)
    schedule = [[0, 1], [2, 0]]

    def sampler(state):
        return schedule[len(state.subsets)]

    expanded = itemwise_expand(model, inst, delta=0, sampler=sampler)

    first = predict_nodes(model, restrict_to_subset(inst, [0, 1]))
    second = predict_nodes(model, restrict_to_subset(inst, [2, 0]))
    assert np.allclose(expanded[0], (first[0] + second[1]) / 2.0, atol=1e-15)
    assert np.array_equal(expanded[1], first[1])
    assert np.array_equal(expanded[2], second[0])


def test_mean_stays_within_subset_predictions():
    model = _model(KIND_MCLSP, 2, seed=3)
    inst = generate_mclsp(3, 5, 3)
    seen = {}

    rng = np.random.default_rng(0)

    def sampler(state):
        subset = np.sort(rng.choice(5, size=2, replace=False))
        probs = predict_nodes(model, restrict_to_subset(inst, subset))
        for k, j in enumerate(subset):
            seen.setdefault(int(j), []).append(probs[k])
        return subset

    expanded = itemwise_expand(model, inst, delta=1, sampler=sampler)
    for j, preds in seen.items():
        preds = np.stack(preds)
        assert np.all(expanded[j] >= preds.min(axis=0) - 1e-15)
        assert np.all(expanded[j] <= preds.max(axis=0) + 1e-15)


def test_vote_aggregation_gives_shares():
    model = _model(KIND_MCLSP, 2, seed=4)
    inst = generate_mclsp(4, 4, 3)
    voted = itemwise_expand(model, inst, delta=2, aggregation=AGG_VOTE, seed=4)

    assert voted.shape == (4, 3)
    assert np.all((voted >= 0.0) & (voted <= 1.0))


def test_least_covered_sampler_prefers_uncovered_items():
    sampler = least_covered_sampler(0)
    state = ExpansionState(5, 1, 0, 2, AGG_MEAN)
    state.counts[:] = [1, 0, 1, 1, 0]

    assert sampler(state).tolist() == [1, 4]


def test_seeded_expansion_is_deterministic():
    model = _model(KIND_MCLSP, 2, seed=5)
    inst = generate_mclsp(5, 5, 3)
    a = itemwise_expand(model, inst, delta=1, seed=9)
    b = itemwise_expand(model, inst, delta=1, seed=9)
    assert np.array_equal(a, b)
    assert np.array_equal(predict_any(model, inst, delta=1, seed=9), a)


def test_stuck_sampler_raises():
    model = _model(KIND_MCLSP, 2, seed=6)
    inst = generate_mclsp(6, 3, 3)

    with pytest.raises(ExpansionError):
        itemwise_expand(model, inst, delta=0, sampler=lambda state: [0, 1])


def test_invalid_expansion_arguments():
    model = _model(KIND_MCLSP, 3)
    with pytest.raises(InvalidArgumentError):
        itemwise_expand(model, generate_mclsp(0, 2, 3))
    with pytest.raises(InvalidArgumentError):
        itemwise_expand(model, generate_mclsp(0, 4, 3), delta=-1)
    with pytest.raises(InvalidArgumentError):
        itemwise_expand(model, generate_mclsp(0, 4, 3), aggregation="median")


def test_subsets_without_demand_or_weight_are_predicted():
    mclsp = generate_mclsp(3, 4, 3, ranges={"demand": (0, 2)})
    probs = itemwise_expand(_model(KIND_MCLSP, 2, seed=7), mclsp, delta=1, seed=3)
    assert probs.shape == (4, 3)
    assert np.all((probs >= 0.0) & (probs <= 1.0))

    msmk = generate_msmk(5, 4, 2, ranges={"weight": (0, 1)})
    probs = predict_any(_model(KIND_MSMK, 2, seed=7), msmk, delta=1, seed=5)
    assert probs.shape == (4, 2)
    assert np.all((probs >= 0.0) & (probs <= 1.0))


def test_relabelled_items_permute_the_expansion():
    model = _model(KIND_MSMK, 2, seed=8)
    inst = generate_msmk(8, 4, 3)
    perm = [2, 0, 3, 1]
    relabelled = restrict_to_subset(inst, perm)

    # Item perm[k] of inst is item k of relabelled
    position = {j: k for k, j in enumerate(perm)}
    schedule = [[0, 1], [2, 3], [1, 2], [3, 0]]
    relabelled_schedule = [[position[j] for j in subset] for subset in schedule]

    expanded = itemwise_expand(model, inst, delta=0, sampler=lambda state: schedule[len(state.subsets)])
    relabelled_expanded = itemwise_expand(model, relabelled, delta=0, sampler=lambda state: relabelled_schedule[len(state.subsets)])

    assert np.array_equal(relabelled_expanded, expanded[perm])
