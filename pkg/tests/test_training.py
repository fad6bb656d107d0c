import math

import numpy as np
import torch
import pytest

from utilities.constants import *
from utilities.errors import InvalidArgumentError
from utilities.preprocessing import FeatureScaler, DecisionInput, make_decision_input
from utilities.training import bce_loss, backward, gradient_check, train
from problems.instances import SolutionVector, as_stochastic
from problems.generators import generate_mclsp, generate_stochastic
from datasets.decisions import DecisionDataset, make_dataset
from problems.evaluation import evaluate_solution
from model.model_config import SeqModelConfig
from model.seq_model import build_model


def test_loss_of_perfect_predictions():
    targets = torch.tensor([[1.0, 0.0], [0.0, 1.0]], dtype=torch.float64)
    assert bce_loss(targets.clone(), targets).item() <= 1e-9


def test_loss_at_one_half():
    probs = torch.full((3, 2), 0.5, dtype=torch.float64)
    targets = torch.tensor([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]], dtype=torch.float64)
    assert bce_loss(probs, targets).item() == pytest.approx(math.log(2.0), abs=1e-15)


def test_loss_symmetry():
    probs = torch.tensor([[0.2, 0.9]], dtype=torch.float64)
    targets = torch.tensor([[1.0, 0.0]], dtype=torch.float64)
    assert bce_loss(probs, targets).item() == pytest.approx(bce_loss(1.0 - probs, 1.0 - targets).item(), abs=1e-15)

    with pytest.raises(InvalidArgumentError):
        bce_loss(probs, targets.T)


def _sample(seed, n_items=2, horizon=3, branching=None):
    inst = generate_mclsp(seed, n_items, horizon)
    if(branching):
        inst = generate_stochastic(inst, branching, seed=seed)
    st = as_stochastic(inst)
    rng = np.random.default_rng(seed)
    binary = rng.integers(0, 2, size=(n_items, st.tree.n_nodes)).astype(np.float64)
    return inst, SolutionVector(binary)


def test_gradients_match_finite_differences():
    config = SeqModelConfig(kind=KIND_MCLSP, n_items=2, hidden=4, seed=0)
    scaler = FeatureScaler.for_kind(KIND_MCLSP)
    model = build_model(config, scaler=scaler)

    inst, solution = _sample(0)
    batch = [make_decision_input(inst, scaler, solution=solution)]

    worst = gradient_check(model, batch, step=GRAD_CHECK_STEP)
    for name, err in worst.items():
        assert err < GRAD_CHECK_RTOL, name


def test_gradients_through_bundle_averaging():
    config = SeqModelConfig(kind=KIND_MCLSP, n_items=2, hidden=4, seed=1)
    scaler = FeatureScaler.for_kind(KIND_MCLSP)
    model = build_model(config, scaler=scaler)

    inst, solution = _sample(1, branching=[2, 2])
    batch = [make_decision_input(inst, scaler, solution=solution)]

    worst = gradient_check(model, batch, step=GRAD_CHECK_STEP)
    assert max(worst.values()) < GRAD_CHECK_RTOL


def test_zero_gradient_at_stationary_point():
    config = SeqModelConfig(kind=KIND_MCLSP, n_items=2, hidden=4, seed=2)
    scaler = FeatureScaler.for_kind(KIND_MCLSP)
    model = build_model(config, scaler=scaler)
    with torch.no_grad():
        model.out.weight.zero_()
        model.out.bias.zero_()

    inst = generate_mclsp(2, 2, 3)
    half = SolutionVector(np.full((2, 3), 0.5))
    batch = [make_decision_input(inst, scaler, solution=half)]

    loss, grads = backward(model, batch)
    assert loss == pytest.approx(math.log(2.0), abs=1e-15)
    for name, g in grads.items():
        assert torch.all(g == 0.0), name


def test_loss_decreases_on_toy_set():
    scaler = FeatureScaler.for_kind(KIND_MCLSP)
    instances = [generate_mclsp(seed, 1, 3) for seed in range(20)]
    # Learnable rule: set up whenever demand is above the middle of its range
    solutions = [SolutionVector((inst.demand > 10.0).astype(np.float64)) for inst in instances]
    dataset = DecisionDataset(instances, solutions, scaler)

    config = SeqModelConfig(kind=KIND_MCLSP, n_items=1, hidden=4, lr=1e-2, epochs=3, seed=0)
    model = build_model(config, scaler=scaler)

    history = train(model, dataset, verbose=False)
    assert len(history) == 3
    assert model.epochs_trained == 3
    assert history[-1] < history[0]


def test_training_replays_for_a_seed():
    scaler = FeatureScaler.for_kind(KIND_MCLSP)
    instances = [generate_mclsp(seed, 1, 3) for seed in range(4)]
    solutions = [SolutionVector((inst.demand > 10.0).astype(np.float64)) for inst in instances]

    runs = []
    for _ in range(2):
        config = SeqModelConfig(kind=KIND_MCLSP, n_items=1, hidden=3, lr=1e-2, epochs=2, seed=5)
        model = build_model(config, scaler=scaler)
        runs.append((train(model, DecisionDataset(instances, solutions, scaler), verbose=False), model.state_dict()))

    assert runs[0][0] == runs[1][0]
    for name in runs[0][1]:
        assert torch.equal(runs[0][1][name], runs[1][1][name])


def test_solved_dataset_targets_are_feasible():
    scaler = FeatureScaler.for_kind(KIND_MCLSP)
    instances = [generate_mclsp(seed, 1, 3) for seed in range(5)]
    for i, inst in enumerate(instances):
        inst.instance_id = i

    dataset, records = make_dataset(instances, scaler, verbose=False)
    assert len(dataset) == 5
    for inst, record in zip(instances, records):
        assert evaluate_solution(inst, record.solution).feasible

    inp = dataset[0]
    assert isinstance(inp, DecisionInput)
    assert inp.targets.shape == (3, 1)


def test_stochastic_sample_shares_bundle_targets():
    scaler = FeatureScaler.for_kind(KIND_MCLSP)
    inst, solution = _sample(3, branching=[2, 2])
    inp = make_decision_input(inst, scaler, solution=solution)

    scen_targets = inp.targets[inp.paths]
    assert scen_targets.shape == (4, 3, 2)
    assert torch.equal(scen_targets[0, 1], scen_targets[1, 1])
