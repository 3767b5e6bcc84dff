"""The recursive approximation driver and its trace."""

from fractions import Fraction

import pytest

from geopricer import (
    ApproxConfig,
    Consumer,
    InputError,
    Instance,
    brute_force_uudp,
    check_trace_coverage,
    consideration_set,
    evaluate_revenue,
    smp_approx,
    uudp_min_approx,
)
from geopricer.approx import TraceNode, epsilon_of

from conftest import rand_instance

F = Fraction


def test_epsilon_schedule():
    assert epsilon_of(1) == 1
    assert epsilon_of(2) == F(1, 4)
    assert epsilon_of(3) == F(1, 16)
    with pytest.raises(InputError):
        epsilon_of(0)


def test_approx_bounded_by_oracle_2d():
    worst = F(1)
    for seed in range(60):
        inst = rand_instance(seed, n=5, m=6, d=2, hi=5)
        sol, trace = uudp_min_approx(inst, ApproxConfig(seed=seed))
        opt = brute_force_uudp(inst).revenue
        assert sol.revenue <= opt, seed
        assert evaluate_revenue(inst, sol.prices) == sol.revenue
        assert check_trace_coverage(inst, trace) == []
        if sol.revenue > 0:
            worst = max(worst, opt / sol.revenue)
        else:
            assert opt == 0, seed
    assert worst < 10  # sanity; typical values stay near 1


def test_approx_3d_runs_and_is_sound():
    for seed in range(20):
        inst = rand_instance(seed, n=5, m=6, d=3, hi=4)
        sol, trace = uudp_min_approx(inst, ApproxConfig(seed=seed))
        assert sol.revenue <= brute_force_uudp(inst).revenue, seed
        assert check_trace_coverage(inst, trace) == []


def test_approx_one_dim_handles_duplicates():
    # the exact DP refuses duplicate coordinates; the driver dedups by
    # excluding all but the lowest-index copy, which costs nothing
    inst = Instance(
        1, "uudp-min",
        [(F(2),), (F(2),), (F(5),)],
        [Consumer((F(1),), F(3)), Consumer((F(4),), F(2))],
    )
    sol, _ = uudp_min_approx(inst, ApproxConfig())
    # the low consumer always sees the cheapest priced item, so its payment
    # is capped by what the high consumer needs item 2 to cost
    assert sol.revenue == brute_force_uudp(inst).revenue == 4


def test_approx_chain_items_exact():
    # all items on one chain: the chain branch solves the whole instance
    for seed in range(20):
        rng_offset = seed * 7
        items = []
        cur = (0, 0)
        for step in range(4):
            cur = (cur[0] + 1 + (rng_offset + step) % 3,
                   cur[1] + 1 + (rng_offset + 2 * step) % 2)
            items.append((F(cur[0]), F(cur[1])))
        consumers = [
            Consumer((F((seed + i) % 6), F((seed + 2 * i) % 5)), F(1 + i % 3))
            for i in range(5)
        ]
        inst = Instance(2, "uudp-min", items, consumers)
        sol, _ = uudp_min_approx(inst, ApproxConfig(seed=seed))
        assert sol.revenue == brute_force_uudp(inst).revenue, seed


def test_approx_empty_and_degenerate():
    empty = Instance(2, "uudp-min", [], [])
    sol, trace = uudp_min_approx(empty, ApproxConfig())
    assert sol.revenue == 0 and sol.prices == []
    assert trace.kind == "root"

    no_consumers = rand_instance(0, n=3, m=0, d=2)
    sol, _ = uudp_min_approx(no_consumers, ApproxConfig())
    assert sol.revenue == 0 and len(sol.prices) == 3


def test_approx_model_guards():
    smp = rand_instance(0, n=3, m=3, d=2, model="smp")
    with pytest.raises(InputError):
        uudp_min_approx(smp)
    uudp = rand_instance(0, n=3, m=3, d=2)
    with pytest.raises(InputError):
        smp_approx(uudp)


def test_approx_deterministic_per_seed():
    inst = rand_instance(9, n=5, m=6, d=2)
    a, _ = uudp_min_approx(inst, ApproxConfig(seed=4))
    b, _ = uudp_min_approx(inst, ApproxConfig(seed=4))
    assert a.revenue == b.revenue and a.prices == b.prices


def test_smp_approx_small_budgets_uses_exact_dp():
    for seed in range(20):
        inst = rand_instance(seed, n=4, m=5, d=2, budgets=(1, 2), model="smp")
        sol, trace = smp_approx(inst, ApproxConfig(seed=seed))
        assert evaluate_revenue(inst, sol.prices) == sol.revenue
        assert check_trace_coverage(inst, trace) == []
        assert sol.method == "approx-smp"


def test_smp_approx_general_budgets():
    for seed in range(10):
        inst = rand_instance(seed, n=4, m=4, d=2, budgets=(1, 3, 5), model="smp")
        sol, trace = smp_approx(inst, ApproxConfig(seed=seed))
        assert evaluate_revenue(inst, sol.prices) == sol.revenue
        assert check_trace_coverage(inst, trace) == []


def test_trace_json_shape():
    inst = rand_instance(2, n=4, m=5, d=2)
    _, trace = uudp_min_approx(inst, ApproxConfig(seed=1))
    data = trace.to_json()
    assert data["kind"] == "root"
    assert set(data) >= {
        "kind", "num_items", "num_consumers", "dimension",
        "method", "sub_revenue", "root_revenue", "children",
    }
    kinds = set()

    def walk(node):
        kinds.add(node["kind"])
        for child in node["children"]:
            walk(child)

    walk(data)
    allowed = {"root", "chain", "small-sets", "hitting-group", "coordinate-group"}
    assert kinds <= allowed


def test_trace_coverage_detects_gaps():
    inst = Instance(
        2, "uudp-min",
        [(F(1), F(1))],
        [Consumer((F(0), F(0)), F(2))],
    )
    assert consideration_set(inst, inst.consumers[0]) == [0]
    full = TraceNode("root", 1, 1, 2, "x", F(0), [0], [0])
    assert check_trace_coverage(inst, full) == []
    hollow = TraceNode("root", 1, 1, 2, "x", F(0), [0], [])
    problems = check_trace_coverage(inst, hollow)
    assert problems and "uncovered" in problems[0]
