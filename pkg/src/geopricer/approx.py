"""The recursive decomposition solver for both purchase models.

Each level splits the items into large antichains plus a few chains.
Chains embed into the line and are solved exactly.  Per antichain,
consumers interested in few of its items go to the sampling subroutine;
the rest are covered by a small hitting set, and for every hit item and
every coordinate the instance shrinks by one dimension and recurses.  The
returned assignment is the best extension among all branches, re-evaluated
exactly at every level on the way up.

Every random draw comes from a stream derived from (seed, branch path), so
a run is reproducible regardless of scheduling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .core import (
    SMP,
    UUDP_MIN,
    Consumer,
    Instance,
    Solution,
    consideration_set,
    evaluate_revenue,
    extend_prices,
    rat_to_json,
    restrict_instance,
)
from .errors import CapExceededError, InputError, InternalCheckError
from .exact import brute_force_smp, solve_one_dim_uudp
from .poset import decompose_chains_antichains
from .qptas import smp_special_case_dp
from .ratmath import ExactPow
from .rng import SeedStream
from .subroutines import (
    balcan_blum_trials,
    chain_embedding,
    coordinate_groups,
    drop_coordinate_embedding,
    epsilon_net_hitting_set,
    split_by_consideration_size,
)


def epsilon_of(d: int) -> Fraction:
    """The per-dimension decomposition parameter, 1/4^(d-1)."""
    if d < 1:
        raise InputError("dimension must be at least 1")
    return Fraction(1, 4 ** (d - 1))


@dataclass
class ApproxConfig:
    seed: int = 0
    balcan_blum_trials: int = 64
    epsilon_schedule: Callable[[int], Fraction] = epsilon_of
    net_constant: int = 8
    resample_cap: int = 32
    brute_cap: int = 10_000_000
    smp_lattice: list[Fraction] | None = None


@dataclass
class TraceNode:
    kind: str
    num_items: int
    num_consumers: int
    dimension: int
    method: str
    sub_revenue: Fraction
    items_root: list[int]
    consumers_root: list[int]
    prices: list | None = None
    root_revenue: Fraction | None = None
    children: list["TraceNode"] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "num_items": self.num_items,
            "num_consumers": self.num_consumers,
            "dimension": self.dimension,
            "method": self.method,
            "sub_revenue": rat_to_json(self.sub_revenue),
            "root_revenue": (
                None if self.root_revenue is None
                else rat_to_json(self.root_revenue)
            ),
            "children": [child.to_json() for child in self.children],
        }


def _fill_prices(n: int, model: str) -> list:
    return extend_prices([], [], n, model)


def _solve_one_dim(instance: Instance, cfg: ApproxConfig) -> Solution:
    """The d=1 leaf solver for either model."""
    n = instance.num_items
    if instance.model == UUDP_MIN:
        # equal coordinates tie the DP's level structure; keep the lowest
        # index per coordinate, withdraw the rest (payment-neutral: the
        # kept twin serves every consumer the dropped one could)
        seen: dict = {}
        for i, item in enumerate(instance.items):
            seen.setdefault(item[0], i)
        kept = sorted(seen.values())
        sub = restrict_instance(instance, kept)
        inner = solve_one_dim_uudp(sub)
        prices = extend_prices(inner.prices, kept, n, UUDP_MIN)
        revenue = evaluate_revenue(instance, prices)
        if revenue != inner.revenue:
            raise InternalCheckError(
                "withdrawing duplicate-coordinate items changed revenue"
            )
        return Solution(revenue, prices, "one-dim-dp")

    budgets = {c.budget for c in instance.consumers}
    if budgets <= {Fraction(1), Fraction(2)}:
        lifted = Instance(
            dimension=2,
            model=SMP,
            items=[(item[0], Fraction(1)) for item in instance.items],
            consumers=[
                Consumer((c.point[0], Fraction(0)), c.budget)
                for c in instance.consumers
            ],
        )
        inner = smp_special_case_dp(lifted)
        revenue = evaluate_revenue(instance, inner.prices)
        if revenue != inner.revenue:
            raise InternalCheckError("lifting to 2-D changed revenue")
        return Solution(revenue, inner.prices, "smp-dp")
    try:
        return brute_force_smp(
            instance, lattice=cfg.smp_lattice, cap=cfg.brute_cap
        )
    except CapExceededError:
        return Solution(Fraction(0), _fill_prices(n, SMP), "skipped")


def _recurse(
    instance: Instance,
    cfg: ApproxConfig,
    stream: SeedStream,
    items_root: list[int],
    consumers_root: list[int],
    kind: str,
) -> tuple[Solution, TraceNode]:
    n = instance.num_items
    m = instance.num_consumers
    d = instance.dimension

    def node(method: str, solution: Solution) -> TraceNode:
        return TraceNode(
            kind, n, m, d, method, solution.revenue,
            items_root, consumers_root, solution.prices,
        )

    if n == 0 or m == 0:
        sol = Solution(Fraction(0), _fill_prices(n, instance.model), "degenerate")
        return sol, node("degenerate", sol)

    if d == 1:
        sol = _solve_one_dim(instance, cfg)
        return sol, node(sol.method, sol)

    epsilon = cfg.epsilon_schedule(d)
    if not (0 < epsilon <= 1):
        raise InputError(f"epsilon schedule produced {epsilon} at dimension {d}")
    p, q = epsilon.numerator, epsilon.denominator
    decomposition = decompose_chains_antichains(instance.items, epsilon)

    children: list[TraceNode] = []
    best: tuple[Fraction, list, str] | None = None

    def consider(prices: list, method: str) -> Fraction:
        nonlocal best
        revenue = evaluate_revenue(instance, prices)
        if best is None or revenue > best[0]:
            best = (revenue, prices, method)
        return revenue

    for chain in decomposition.chains:
        sub = restrict_instance(instance, chain)
        target, _ = chain_embedding(sub, list(range(len(chain))))
        inner = _solve_one_dim(target, cfg)
        line_revenue = evaluate_revenue(sub, inner.prices)
        if line_revenue != inner.revenue:
            raise InternalCheckError("chain embedding changed revenue")
        prices = extend_prices(inner.prices, chain, n, instance.model)
        consider(prices, inner.method)
        children.append(TraceNode(
            "chain", len(chain), m, 1, inner.method, inner.revenue,
            [items_root[i] for i in chain], list(consumers_root),
            inner.prices,
        ))

    for ai, antichain in enumerate(decomposition.antichains):
        size_bound = ExactPow(n, 4 * q - 2 * p, 4 * q)
        small, large = split_by_consideration_size(
            instance, antichain, size_bound
        )
        # ceiling effects can leave a "large" consumer too light for the
        # hitting-set precondition; such consumers join the small side
        delta = ExactPow(n, -2 * p, 4 * q)
        heavy = []
        for c in large:
            inside = sum(
                1
                for i in consideration_set(instance, instance.consumers[c])
                if i in set(antichain)
            )
            if delta.ge_scaled(inside, len(antichain)) and inside > 0:
                heavy.append(c)
            else:
                small.append(c)
        small.sort()

        sub_small = restrict_instance(instance, antichain, small)
        bb = balcan_blum_trials(
            sub_small, cfg.balcan_blum_trials, stream.derive(2, ai)
        )
        prices = extend_prices(bb.prices, antichain, n, instance.model)
        consider(prices, bb.method)
        children.append(TraceNode(
            "small-sets", len(antichain), len(small), d, bb.method,
            bb.revenue,
            [items_root[i] for i in antichain],
            [consumers_root[c] for c in small],
            bb.prices,
        ))

        if not heavy:
            continue
        sub_large = restrict_instance(instance, antichain, heavy)
        hitting = epsilon_net_hitting_set(
            sub_large,
            list(range(len(heavy))),
            delta,
            stream.derive(3, ai),
            constant=cfg.net_constant,
            resample_cap=cfg.resample_cap,
        )
        for hstar in hitting.items:
            star_consumers = [
                c for c in range(len(heavy))
                if hstar in consideration_set(sub_large, sub_large.consumers[c])
            ]
            groups = coordinate_groups(
                sub_large, list(range(len(antichain))), hstar
            )
            group_children: list[TraceNode] = []
            group_best: Fraction | None = None
            for j, group in enumerate(groups):
                sub_group = restrict_instance(sub_large, group, star_consumers)
                guard_pos = group.index(hstar)
                target, _ = drop_coordinate_embedding(sub_group, j, guard_pos)
                inner_sol, inner_node = _recurse(
                    target,
                    cfg,
                    stream.derive(4, ai, hstar, j),
                    [items_root[antichain[g]] for g in group],
                    [consumers_root[heavy[c]] for c in star_consumers],
                    "coordinate-group",
                )
                prices = extend_prices(
                    inner_sol.prices,
                    [antichain[g] for g in group],
                    n,
                    instance.model,
                )
                revenue = consider(prices, inner_sol.method)
                group_best = revenue if group_best is None else max(
                    group_best, revenue
                )
                group_children.append(inner_node)
            children.append(TraceNode(
                "hitting-group", len(antichain), len(star_consumers), d,
                "hitting-set", group_best if group_best is not None else Fraction(0),
                [items_root[i] for i in antichain],
                [consumers_root[heavy[c]] for c in star_consumers],
                None,
                children=group_children,
            ))

    if best is None:
        raise InternalCheckError("decomposition produced no branches")
    revenue, prices, method = best
    sol = Solution(revenue, prices, method)
    trace = node(method, sol)
    trace.children = children
    return sol, trace


def _finalize(
    instance: Instance, solution: Solution, trace: TraceNode, label: str
) -> tuple[Solution, TraceNode]:
    n = instance.num_items
    for tnode in _walk(trace):
        if tnode.prices is None:
            continue
        extended = extend_prices(
            tnode.prices, tnode.items_root, n, instance.model
        )
        tnode.root_revenue = evaluate_revenue(instance, extended)
    problems = check_trace_coverage(instance, trace)
    if problems:
        raise InternalCheckError("; ".join(problems))
    return Solution(solution.revenue, solution.prices, label), trace


def _walk(node: TraceNode):
    yield node
    for child in node.children:
        yield from _walk(child)


def check_trace_coverage(instance: Instance, trace: TraceNode) -> list[str]:
    """Verify the trace's leaves jointly cover every consideration pair."""
    want = set()
    for c, cons in enumerate(instance.consumers):
        for i in consideration_set(instance, cons):
            want.add((c, i))
    got = set()
    for node in _walk(trace):
        if node.children:
            continue
        item_set = set(node.items_root)
        for c in node.consumers_root:
            for i in consideration_set(instance, instance.consumers[c]):
                if i in item_set:
                    got.add((c, i))
    problems = []
    missing = want - got
    extra = got - want
    if missing:
        problems.append(f"{len(missing)} consideration pairs uncovered")
    if extra:
        problems.append(f"{len(extra)} spurious consideration pairs")
    return problems


def uudp_min_approx(
    instance: Instance, cfg: ApproxConfig | None = None
) -> tuple[Solution, TraceNode]:
    """Approximate cheapest-item pricing by recursive decomposition."""
    if instance.model != UUDP_MIN:
        raise InputError("uudp_min_approx handles the uudp-min model only")
    if cfg is None:
        cfg = ApproxConfig()
    stream = SeedStream(cfg.seed)
    sol, trace = _recurse(
        instance, cfg, stream,
        list(range(instance.num_items)),
        list(range(instance.num_consumers)),
        "root",
    )
    return _finalize(instance, sol, trace, "approx-uudp")


def smp_approx(
    instance: Instance, cfg: ApproxConfig | None = None
) -> tuple[Solution, TraceNode]:
    """The same decomposition driver under the bundle model."""
    if instance.model != SMP:
        raise InputError("smp_approx handles the smp model only")
    if cfg is None:
        cfg = ApproxConfig()
    stream = SeedStream(cfg.seed)
    sol, trace = _recurse(
        instance, cfg, stream,
        list(range(instance.num_items)),
        list(range(instance.num_consumers)),
        "root",
    )
    return _finalize(instance, sol, trace, "approx-smp")
