import math

import numpy as np
import pytest

from utilities.constants import *
from utilities.errors import InvalidArgumentError
from problems.instances import (
    MclspInstance, MsmkInstance, SolutionVector, as_stochastic, restrict_to_subset,
    save_instances, load_instances, export_instance_csv,
)
from problems.generators import generate_mclsp, generate_msmk, generate_stochastic, generate_family
from problems.evaluation import evaluate_solution
from solver.extensive_form import build_extensive_form, solution_from_assignment
from solver.branch_and_bound import branch_and_bound


def test_mclsp_generation_is_seeded():
    a = generate_mclsp(1, 1, 2)
    b = generate_mclsp(1, 1, 2)
    assert a.to_record().keys() == b.to_record().keys()
    for key in ("demand", "capacity", "setup_cost", "production_cost", "holding_cost"):
        assert np.array_equal(getattr(a, key), getattr(b, key))


def test_mclsp_capacity_covers_cumulative_demand():
    for seed in range(20):
        inst = generate_mclsp(seed, 3, 10)
        cum_cap = np.cumsum(inst.capacity)
        cum_net = np.cumsum(inst.net_demand().sum(axis=0))
        assert np.all(cum_cap >= cum_net - 1e-9)


def test_mclsp_costs_within_ranges():
    inst = generate_mclsp(4, 3, 10)
    for key, (lo, hi) in (("demand", MCLSP_DEMAND_DEF), ("setup_cost", MCLSP_SETUP_DEF),
            ("production_cost", MCLSP_PROD_DEF), ("holding_cost", MCLSP_HOLD_DEF)):
        values = getattr(inst, key)
        assert values.min() >= lo and values.max() <= hi


def test_msmk_tightness_rule():
    inst = generate_msmk(2, 10, 4, tightness=0.5)
    assert inst.value.shape == (10, 4)
    assert inst.weight.shape == (10, 4)
    assert np.allclose(inst.capacity, 0.5 * inst.weight.sum(axis=0))

    again = generate_msmk(2, 10, 4, tightness=0.5)
    assert np.array_equal(inst.weight, again.weight)


def test_msmk_capacity_from_weights():
    # Stage weights sum to 40, tightness 0.5
    inst = MsmkInstance(value=[[1.0], [1.0]], weight=[[15.0], [25.0]], capacity=[0.5 * 40.0])
    assert inst.capacity[0] == 20.0


def test_bad_generation_arguments():
    with pytest.raises(InvalidArgumentError):
        generate_msmk(0, 3, 2, tightness=1.5)
    with pytest.raises(InvalidArgumentError):
        generate_mclsp(0, 2, 4, ranges={"no_such_range": (0, 1)})


def test_restrict_mclsp_scales_capacity():
    # Total stage demand 100, subset demand 30, capacity 50 -> 15
    inst = MclspInstance(
        demand=[[30.0], [70.0]], capacity=[50.0], setup_cost=[[1.0], [1.0]],
        production_cost=[[1.0], [1.0]], holding_cost=[[1.0], [1.0]],
    )
    sub = restrict_to_subset(inst, [0])
    assert sub.n_items == 1
    assert sub.capacity[0] == pytest.approx(15.0)


def test_restrict_msmk_scales_capacity():
    # Stage weights total 80, subset weights 20, capacity 40 -> 10
    inst = MsmkInstance(value=[[5.0], [5.0]], weight=[[20.0], [60.0]], capacity=[40.0])
    assert restrict_to_subset(inst, [0]).capacity[0] == pytest.approx(10.0)


def test_restrict_full_set_is_identity():
    inst = generate_mclsp(3, 3, 4)
    full = restrict_to_subset(inst, [0, 1, 2])
    assert np.array_equal(full.demand, inst.demand)
    assert np.array_equal(full.capacity, inst.capacity)

    again = restrict_to_subset(full, [0, 1, 2])
    assert np.array_equal(again.capacity, full.capacity)


def test_restrict_keeps_order_and_rejects_bad_subsets():
    inst = generate_msmk(3, 4, 2)
    sub = restrict_to_subset(inst, [2, 0])
    assert np.array_equal(sub.value, inst.value[[2, 0]])

    with pytest.raises(InvalidArgumentError):
        restrict_to_subset(inst, [])
    with pytest.raises(InvalidArgumentError):
        restrict_to_subset(inst, [0, 0])
    with pytest.raises(InvalidArgumentError):
        restrict_to_subset(inst, [4])


def test_zero_decisions_leave_demand_unmet(tiny_mclsp):
    zeros = np.zeros((1, 2))
    result = evaluate_solution(tiny_mclsp, SolutionVector(zeros, zeros, zeros))
    assert not result.feasible
    assert result.residuals["demand_balance"].max() > 0


def test_solver_optimum_is_feasible():
    inst = generate_stochastic(generate_mclsp(5, 2, 3), [2, 2], seed=5)
    model = build_extensive_form(inst)
    result = branch_and_bound(model, time_limit=60)
    solution = solution_from_assignment(model, result.incumbent)

    check = evaluate_solution(inst, solution)
    assert check.feasible
    assert check.objective == pytest.approx(result.objective, abs=1e-6)


def test_single_scenario_expectation_equals_deterministic():
    inst = generate_msmk(6, 3, 3)
    chain = as_stochastic(inst)
    y = np.zeros((3, 3))
    y[0, 0] = 1.0
    y[1, 2] = 1.0
    solution = SolutionVector(y)

    assert evaluate_solution(chain, solution).objective == evaluate_solution(inst, solution).objective


def test_scenario_instance_realizes_path():
    inst = generate_stochastic(generate_mclsp(7, 2, 3), [2, 2], seed=7)
    scen = inst.scenario_instance(3)
    assert np.array_equal(scen.demand, inst.node_params[:, inst.tree.leaf_paths[3]])


def test_instance_file_round_trip(tmp_path):
    instances = generate_family(KIND_MCLSP, 2, 0, 2, 3) + generate_family(KIND_MSMK, 1, 0, 3, 2, branching=[2])
    path = str(tmp_path / "set.jsonl")
    save_instances(path, instances)
    loaded = load_instances(path)

    assert [i.kind for i in loaded] == [KIND_MCLSP, KIND_MCLSP, KIND_STOCH]
    assert np.array_equal(loaded[0].demand, instances[0].demand)
    assert np.array_equal(loaded[2].node_params, instances[2].node_params)

    table = str(tmp_path / "set.csv")
    export_instance_csv(table, instances)
    with open(table) as f:
        rows = f.read().strip().split("\n")
    assert len(rows) == 1 + 3 + 3 + 2


def test_restrict_zero_demand_subset_gets_zero_capacity():
    inst = MclspInstance(
        demand=[[0.0, 5.0], [5.0, 5.0]], capacity=[10.0, 10.0], setup_cost=[[1.0, 1.0], [1.0, 1.0]],
        production_cost=[[1.0, 1.0], [1.0, 1.0]], holding_cost=[[1.0, 1.0], [1.0, 1.0]],
    )
    sub = restrict_to_subset(inst, [0])
    assert sub.capacity.tolist() == [0.0, 5.0]


def test_restrict_zero_weight_subset_gets_zero_capacity():
    inst = MsmkInstance(value=[[1.0, 1.0], [2.0, 2.0]], weight=[[0.0, 3.0], [4.0, 1.0]], capacity=[2.0, 2.0])
    sub = restrict_to_subset(inst, [0])
    assert sub.capacity.tolist() == [0.0, 1.5]


def test_negative_capacity_is_rejected():
    with pytest.raises(InvalidArgumentError):
        MsmkInstance(value=[[1.0]], weight=[[1.0]], capacity=[-1.0])


def test_restrict_is_idempotent():
    cases = [
        generate_mclsp(7, 5, 3),
        generate_msmk(7, 5, 3),
        generate_stochastic(generate_mclsp(8, 4, 3), [2, 2], seed=8),
        generate_stochastic(generate_msmk(8, 4, 3), [2, 2], seed=8),
    ]
    for inst in cases:
        sub = restrict_to_subset(inst, [3, 1, 0])
        again = restrict_to_subset(sub, [0, 1, 2])
        _assert_same_arrays(again.to_record(), sub.to_record())


def _assert_same_arrays(record, expected):
    assert record.keys() == expected.keys()
    for key, value in expected.items():
        if(isinstance(value, np.ndarray)):
            assert np.array_equal(record[key], value), key
        elif(isinstance(value, dict)):
            _assert_same_arrays(record[key], value)


def test_mclsp_capacity_is_one_repaired_level():
    for seed in range(5):
        inst = generate_mclsp(seed, 3, 6)
        level = max(1.0, math.ceil(inst.demand.sum(axis=0).mean() / MCLSP_UTILIZATION_DEF))
        assert np.all(inst.capacity >= level)
        assert inst.capacity.min() == level
