import math

import torch
import pytest

from utilities.constants import *
from model.layers.lstm_cell import lstm_cell, LstmCell
from model.layers.bilstm import BiLstmEncoder
from model.layers.attention import attention
from model.layers.neda import neda_average, to_scenarios


def _zero_weights(in_width, hidden):
    weights = {}
    for g in LSTM_GATES:
        weights["W_" + g] = torch.zeros((hidden, in_width), dtype=torch.float64)
        weights["U_" + g] = torch.zeros((hidden, hidden), dtype=torch.float64)
        weights["b_" + g] = torch.zeros((hidden,), dtype=torch.float64)
    return weights


def test_zero_cell_stays_at_rest():
    zero = torch.zeros((1, 1), dtype=torch.float64)
    h, c = lstm_cell(zero, zero, zero, _zero_weights(1, 1))
    assert h.item() == 0.0
    assert c.item() == 0.0


def test_zero_weights_with_unit_memory():
    zero = torch.zeros((1, 1), dtype=torch.float64)
    one = torch.ones((1, 1), dtype=torch.float64)
    h, c = lstm_cell(zero, zero, one, _zero_weights(1, 1))

    assert c.item() == 0.5
    assert h.item() == pytest.approx(0.5 * math.tanh(0.5), abs=1e-15)
    assert h.item() == pytest.approx(0.23105857863000487, abs=1e-15)


def test_gates_lie_in_open_interval():
    gen = torch.Generator()
    gen.manual_seed(0)
    cell = LstmCell(3, 4, generator=gen)
    x = torch.randn((5, 3), dtype=torch.float64, generator=gen) * 10.0
    h = torch.randn((5, 4), dtype=torch.float64, generator=gen)

    for g in ("f", "i", "o"):
        w = cell.weights()
        gate = torch.sigmoid(x @ w["W_" + g].T + h @ w["U_" + g].T + w["b_" + g])
        assert torch.all(gate > 0.0) and torch.all(gate < 1.0)


def test_bilstm_single_stage_width():
    gen = torch.Generator()
    gen.manual_seed(1)
    enc = BiLstmEncoder(3, 4, generator=gen)
    out = enc(torch.ones((2, 1, 3), dtype=torch.float64))
    assert out.shape == (2, 1, 8)


def test_bilstm_reversal_swaps_directions():
    gen = torch.Generator()
    gen.manual_seed(2)
    enc = BiLstmEncoder(3, 4, generator=gen)
    seq = torch.randn((1, 5, 3), dtype=torch.float64, generator=gen)

    swapped = BiLstmEncoder(3, 4, generator=gen)
    swapped.fwd = enc.bwd
    swapped.bwd = enc.fwd

    out = enc(seq)
    rev = swapped(seq.flip(1)).flip(1)
    assert torch.equal(rev[:, :, :4], out[:, :, 4:])
    assert torch.equal(rev[:, :, 4:], out[:, :, :4])
    assert torch.equal(enc(seq), out)


def test_single_key_attention():
    q = torch.tensor([[0.3, -1.0]], dtype=torch.float64)
    k = torch.tensor([[[2.0, 5.0]]], dtype=torch.float64)
    context, weights = attention(q, k, k)
    assert weights.item() == 1.0
    assert torch.equal(context, k[:, 0])


def test_equal_scores_give_midpoint():
    q = torch.tensor([[1.0, 0.0]], dtype=torch.float64)
    k = torch.tensor([[[0.0, 1.0], [0.0, 3.0]]], dtype=torch.float64)
    context, weights = attention(q, k, k)
    assert weights.tolist() == [[0.5, 0.5]]
    assert context.tolist() == [[0.0, 2.0]]


def test_attention_permutation():
    gen = torch.Generator()
    gen.manual_seed(3)
    q = torch.randn((1, 4), dtype=torch.float64, generator=gen)
    k = torch.randn((1, 3, 4), dtype=torch.float64, generator=gen)
    W = torch.randn((4, 4), dtype=torch.float64, generator=gen)

    context, weights = attention(q, k, k, W)
    perm = torch.tensor([2, 0, 1])
    p_context, p_weights = attention(q, k[:, perm], k[:, perm], W)

    assert abs(weights.sum().item() - 1.0) <= 1e-9
    assert torch.all(weights >= 0.0)
    assert torch.allclose(p_weights, weights[:, perm], atol=1e-15)
    assert torch.allclose(p_context, context, atol=1e-12)


def test_attention_ignores_a_common_score_shift():
    gen = torch.Generator()
    gen.manual_seed(4)
    q = torch.randn((2, 3), dtype=torch.float64, generator=gen)
    k = torch.randn((2, 5, 3), dtype=torch.float64, generator=gen)
    k[:, :, 0] = 1.0

    # Every key has a unit first entry, so moving the query along it adds 7.5 to all scores
    shifted = q.clone()
    shifted[:, 0] += 7.5

    _, weights = attention(q, k, k)
    _, shifted_weights = attention(shifted, k, k)

    assert torch.allclose(shifted_weights, weights, rtol=0.0, atol=1e-12)
    assert torch.allclose(shifted_weights.sum(dim=-1), torch.ones(2, dtype=torch.float64), atol=1e-9)


def test_neda_bundle_mean():
    # Two scenarios share node 0 at stage 1, split into nodes 1 and 2 at stage 2
    states = torch.tensor([[[1.0, 3.0], [0.0, 0.0]], [[3.0, 5.0], [1.0, 1.0]]], dtype=torch.float64)
    paths = torch.tensor([[0, 1], [0, 2]])

    avg = neda_average(states, paths)
    assert avg[0].tolist() == [2.0, 4.0]
    assert torch.equal(avg[1], states[0, 1])
    assert torch.equal(avg[2], states[1, 1])

    back = to_scenarios(avg, paths)
    assert torch.equal(back[0, 0], back[1, 0])


def test_neda_identical_inputs_are_unchanged():
    row = torch.tensor([0.25, -1.5], dtype=torch.float64)
    states = row.repeat(3, 1, 1)
    paths = torch.tensor([[0], [0], [0]])
    assert torch.equal(neda_average(states, paths)[0], row)
