import numpy as np
import pytest

from utilities.constants import *
from utilities.errors import InvalidArgumentError
from utilities.screening import screen, check_feasible, candidate_fixes
from utilities.pipeline import PipelineConfig
from problems.instances import MsmkInstance
from solver.extensive_form import build_extensive_form, binary_block
from solver.branch_and_bound import branch_and_bound
from solver.mip_model import FixSet


def test_undecided_predictions_fix_nothing(tiny_mclsp):
    result = screen(np.full((1, 2), 0.5), tiny_mclsp, PipelineConfig(p_fix=0.9))
    assert len(result.fixset) == 0
    assert result.n_candidates == 0


def test_closing_every_setup_is_repaired(tiny_mclsp):
    # Both setups predicted closed; stage 1 demand cannot be met, so the least
    # confident 0-fix on the first violated path is released
    model = build_extensive_form(tiny_mclsp)
    idx = binary_block(model)
    result = screen(np.full((1, 2), 0.01), tiny_mclsp, PipelineConfig(p_fix=0.9), model=model)

    assert result.n_candidates == 2
    assert result.fixset.values == {int(idx[0, 1]): 0}
    assert result.repairs == 2
    assert not result.exhausted
    assert result.warm_start == {int(idx[0, 0]): 1, int(idx[0, 1]): 0}

    fixed = branch_and_bound(model, fixset=result.fixset)
    assert fixed.objective == pytest.approx(18.0)


def test_confident_optimum_is_kept(tiny_mclsp):
    model = build_extensive_form(tiny_mclsp)
    idx = binary_block(model)
    probs = np.array([[0.99, 0.01]])
    result = screen(probs, tiny_mclsp, PipelineConfig(p_fix=0.9), model=model)

    assert result.fixset.values == {int(idx[0, 0]): 1, int(idx[0, 1]): 0}
    assert result.repairs == 0
    assert branch_and_bound(model, fixset=result.fixset).objective == pytest.approx(18.0)


def test_overfull_knapsack_releases_one_fix(tiny_knapsack):
    # All three items fixed in: weight 6 > 5, lowest confidence (item 0) is released
    probs = np.array([[0.91], [0.99], [0.95]])
    model = build_extensive_form(tiny_knapsack)
    idx = binary_block(model)
    result = screen(probs, tiny_knapsack, PipelineConfig(p_fix=0.9), model=model)

    assert result.fixset.values == {int(idx[1, 0]): 1, int(idx[2, 0]): 1}
    assert branch_and_bound(model, fixset=result.fixset).objective == pytest.approx(-22.0)


def test_knapsack_items_used_once_per_path():
    inst = MsmkInstance(value=[[5.0, 5.0]], weight=[[1.0, 1.0]], capacity=[2.0, 2.0])
    violations = check_feasible({(0, 0): 1, (0, 1): 1}, inst)
    assert len(violations) == 1
    assert violations[0][0] == "once"
    assert check_feasible({(0, 0): 1}, inst) == []


def test_exhausted_budget_fixes_nothing(tiny_mclsp, capsys):
    config = PipelineConfig(p_fix=0.9, unfix_budget=0)
    result = screen(np.full((1, 2), 0.01), tiny_mclsp, config)

    assert result.exhausted
    assert len(result.fixset) == 0
    assert "repair budget exhausted" in capsys.readouterr().out


def test_screening_off_keeps_candidates(tiny_mclsp):
    result = screen(np.full((1, 2), 0.01), tiny_mclsp, PipelineConfig(p_fix=0.9, screening=False))
    assert len(result.fixset) == 2
    assert result.repairs == 0


def test_raising_the_threshold_never_fixes_more():
    rng = np.random.default_rng(0)
    probs = rng.random((3, 7))
    counts = [len(candidate_fixes(probs, p)) for p in (0.6, 0.7, 0.8, 0.9, 0.99)]
    assert counts == sorted(counts, reverse=True)


def test_bad_probabilities(tiny_mclsp):
    with pytest.raises(InvalidArgumentError):
        screen(np.full((1, 3), 0.5), tiny_mclsp, PipelineConfig())
    with pytest.raises(InvalidArgumentError):
        screen(np.full((1, 2), 1.5), tiny_mclsp, PipelineConfig())
