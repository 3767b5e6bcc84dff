"""Grid snapping, price ladders, the 2-D near-optimal DP, and the
special-case bundle DP."""

from fractions import Fraction

import pytest

from geopricer import (
    CapExceededError,
    Consumer,
    InputError,
    Instance,
    brute_force_smp,
    brute_force_uudp,
    build_ladder,
    evaluate_revenue,
    grid_normalize,
    preprocess_smp,
    qptas_uudp2,
    smp_special_case_dp,
)

from conftest import rand_instance

F = Fraction


def test_grid_normalize_frozen():
    inst = Instance(
        2, "uudp-min",
        [(F(3), F(7)), (F(1), F(9))],
        [Consumer((F(2), F(8)), F(1))],
    )
    grid = grid_normalize(inst)
    assert grid.instance.items == [(F(3), F(1)), (F(1), F(3))]
    assert grid.instance.consumers[0].point == (F(2), F(2))


def test_grid_normalize_properties_random():
    for seed in range(50):
        inst = rand_instance(seed, n=5, m=6, d=2, hi=4)
        grid = grid_normalize(inst).instance  # internal checks run here
        xs = sorted(item[0] for item in grid.items)
        assert xs == [F(2 * r - 1) for r in range(1, 6)]


def test_grid_normalize_needs_2d():
    with pytest.raises(InputError):
        grid_normalize(rand_instance(0, n=3, m=3, d=3))


def test_ladder_frozen():
    inst = rand_instance(0, n=2, m=3, d=2, budgets=(1, 2))
    ladder = build_ladder(inst, F(1))
    assert ladder.q == 1
    assert ladder.levels == [F(0), F(1), F(2)]

    inst = rand_instance(1, n=2, m=3, d=2, budgets=(3,))
    ladder = build_ladder(inst, F(1, 2))
    assert ladder.q == 3
    assert ladder.levels == [F(0), F(1), F(3, 2), F(9, 4), F(27, 8)]


def test_ladder_cap_and_domain():
    inst = Instance(
        2, "uudp-min", [(F(0), F(0))],
        [Consumer((F(0), F(0)), F(10) ** 12)],
    )
    with pytest.raises(CapExceededError):
        build_ladder(inst, F(1, 100), cap=8)
    with pytest.raises(InputError):
        build_ladder(inst, F(0))


def test_qptas_matches_ladder_oracle():
    for seed in range(60):
        inst = rand_instance(seed, n=4, m=5, d=2, hi=4, budgets=(1, 2, 3))
        eps = F(1) if seed % 2 else F(1, 2)
        sol = qptas_uudp2(inst, eps)
        ladder = build_ladder(inst, eps)
        oracle = brute_force_uudp(inst, lattice=ladder.levels)
        assert sol.revenue == oracle.revenue, seed
        assert evaluate_revenue(inst, sol.prices) == sol.revenue
        assert sol.method == "qptas-2d"


def test_qptas_exact_when_ladder_covers_budgets():
    for seed in range(40):
        inst = rand_instance(seed, n=5, m=6, d=2, hi=4, budgets=(1, 2))
        sol = qptas_uudp2(inst, F(1))  # ladder {0, 1, 2} holds all budgets
        assert sol.revenue == brute_force_uudp(inst).revenue, seed


def test_qptas_near_optimality_factor():
    # the ladder rounds prices down by at most (1 + eps)
    for seed in range(30):
        inst = rand_instance(seed, n=4, m=5, d=2, hi=4)
        eps = F(1, 2)
        sol = qptas_uudp2(inst, eps)
        opt = brute_force_uudp(inst).revenue
        assert sol.revenue * (1 + eps) >= opt, seed


def test_smp_dp_matches_binary_lattice_oracle():
    for seed in range(60):
        inst = rand_instance(
            seed, n=4, m=5, d=2, hi=4, budgets=(1, 2), model="smp"
        )
        dp = smp_special_case_dp(inst)
        oracle = brute_force_smp(inst, lattice=[F(0), F(1)])
        assert dp.revenue == oracle.revenue, seed
        assert evaluate_revenue(inst, dp.prices) == dp.revenue
        assert all(p in (F(0), F(1)) for p in dp.prices)


def test_smp_dp_guards():
    bad_budget = rand_instance(0, n=3, m=3, d=2, budgets=(3,), model="smp")
    with pytest.raises(InputError):
        smp_special_case_dp(bad_budget)
    uudp = rand_instance(0, n=3, m=3, d=2, budgets=(1, 2))
    with pytest.raises(InputError):
        smp_special_case_dp(uudp)


def test_smp_dp_state_cap():
    inst = rand_instance(3, n=5, m=6, d=2, budgets=(1, 2), model="smp")
    with pytest.raises(CapExceededError):
        smp_special_case_dp(inst, state_cap=3)


def test_preprocess_smp_scales_into_band():
    for seed in range(40):
        inst = rand_instance(
            seed, n=4, m=5, d=2, budgets=(F(1, 3), F(2), F(7)), model="smp"
        )
        eps = F(1, 2)
        pre = preprocess_smp(inst, eps)
        assert not pre.degenerate
        n, m = inst.num_items, pre.instance.num_consumers
        if m:
            hi = F(inst.num_items * inst.num_consumers, 1) / eps
            for cons in pre.instance.consumers:
                assert 1 <= cons.budget <= hi
        # prices in scaled space divide back exactly
        scaled = [F(1)] * n
        back = pre.prices_back(scaled)
        assert all(p * pre.scale == F(1) for p in back)


def test_preprocess_smp_drops_tiny_budgets():
    inst = Instance(
        1, "smp", [(F(1),)],
        [Consumer((F(0),), F(1, 10**9)), Consumer((F(0),), F(5))],
    )
    pre = preprocess_smp(inst, F(1, 2))
    assert pre.kept == [1]


def test_preprocess_smp_degenerate():
    empty = Instance(1, "smp", [], [])
    pre = preprocess_smp(empty, F(1, 2))
    assert pre.degenerate and pre.scale == 1
    with pytest.raises(InputError):
        preprocess_smp(empty, F(1))  # epsilon must be inside (0, 1)
