"""Exact solvers: full enumeration oracles and the one-dimensional DP.

The oracles enumerate a finite candidate grid.  For the cheapest-item model
that grid is lossless: raising every price to the next budget value above
it never lowers any payment, and a withdrawn item can be priced at the
largest budget instead, so some optimum uses only budget values and 0.
The bundle model is searched over an explicit price lattice and the result
is optimal relative to that lattice.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from fractions import Fraction

from . import kernels
from .core import (
    SMP,
    UUDP_MIN,
    Instance,
    Solution,
    consideration_set,
    evaluate_revenue,
)
from .errors import CapExceededError, InputError, InternalCheckError

DEFAULT_CAP = 10_000_000


def level_of(coords_ascending: list[Fraction], x: Fraction) -> int:
    """How many of the coords are >= x."""
    return len(coords_ascending) - bisect_left(coords_ascending, x)


def solve_one_dim_uudp(instance: Instance) -> Solution:
    """Exact optimum for one-dimensional cheapest-item pricing.

    Requires distinct item coordinates.  There is always a monotone optimum
    (price non-increasing as the item coordinate drops), because replacing
    each price with the running minimum from the top changes no payment.
    The DP scans items from the top coordinate down; a consumer "at level
    j" considers exactly the top j items and pays the j-th price if it is
    within budget.
    """
    if instance.model != UUDP_MIN:
        raise InputError("one-dim solver handles the uudp-min model only")
    if instance.dimension != 1:
        raise InputError("one-dim solver needs dimension 1")
    n = instance.num_items
    if n == 0:
        return Solution(Fraction(0), [], "one-dim-dp")

    order = sorted(range(n), key=lambda i: instance.items[i][0], reverse=True)
    coords = [instance.items[i][0] for i in order]
    for a, b in zip(coords, coords[1:]):
        if a == b:
            raise InputError("one-dim solver needs distinct item coordinates")
    asc = coords[::-1]

    # level_budgets[j] = budgets of consumers considering exactly the top j items
    level_budgets: list[list[Fraction]] = [[] for _ in range(n + 1)]
    for c in instance.consumers:
        level_budgets[level_of(asc, c.point[0])].append(c.budget)

    candidates = sorted(
        {Fraction(0)} | {c.budget for c in instance.consumers}, reverse=True
    )
    k = len(candidates)

    def gain(level: int, price: Fraction) -> Fraction:
        return price * sum(1 for b in level_budgets[level] if b >= price)

    # T[idx] = best revenue from levels 1..j with the j-th price = candidates[idx],
    # prices non-increasing so far.  parent[j][idx] reconstructs the choice.
    prev = [Fraction(0)] * k
    parent: list[list[int]] = []
    for j in range(1, n + 1):
        best_prefix = prev[0]
        best_idx = 0
        cur = [Fraction(0)] * k
        par = [0] * k
        for idx in range(k):
            if prev[idx] > best_prefix:
                best_prefix = prev[idx]
                best_idx = idx
            cur[idx] = gain(j, candidates[idx]) + best_prefix
            par[idx] = best_idx
        parent.append(par)
        prev = cur

    best_idx = 0
    for idx in range(1, k):
        if prev[idx] > prev[best_idx]:
            best_idx = idx
    best_rev = prev[best_idx]

    prices_by_rank = [Fraction(0)] * n
    idx = best_idx
    for j in range(n, 0, -1):
        prices_by_rank[j - 1] = candidates[idx]
        idx = parent[j - 1][idx]
    prices = [Fraction(0)] * n
    for rank, orig in enumerate(order):
        prices[orig] = prices_by_rank[rank]

    check = evaluate_revenue(instance, prices)
    if check != best_rev:
        raise InternalCheckError(
            f"one-dim DP revenue {best_rev} does not re-evaluate ({check})"
        )
    return Solution(best_rev, prices, "one-dim-dp")


def _scaled(values: list[Fraction]) -> tuple[list[int], int]:
    denom = math.lcm(*(v.denominator for v in values)) if values else 1
    return [int(v * denom) for v in values], denom


def _enumerate_grid(
    instance: Instance,
    cand_lists: list[list[Fraction]],
    cap: int,
    method: str,
    backend: str | None,
) -> Solution:
    n = instance.num_items
    total = 1
    for cands in cand_lists:
        if not cands:
            raise InputError("empty candidate list")
        total *= len(cands)
        if total > cap:
            raise CapExceededError(
                f"{total}+ assignments exceed the enumeration cap {cap}"
            )

    flat: list[Fraction] = [p for cands in cand_lists for p in cands]
    budgets = [c.budget for c in instance.consumers]
    scaled_all, denom = _scaled(flat + budgets)
    scaled_prices = scaled_all[: len(flat)]
    scaled_budgets = scaled_all[len(flat):]
    masks = []
    for c in instance.consumers:
        mask = 0
        for i in consideration_set(instance, c):
            mask |= 1 << i
        masks.append(mask)

    model_flag = 0 if instance.model == UUDP_MIN else 1
    rev, choice = kernels.enumerate_best(
        n,
        [len(cands) for cands in cand_lists],
        scaled_prices,
        masks,
        scaled_budgets,
        model_flag,
        backend=backend,
    )
    prices = [cand_lists[i][choice[i]] for i in range(n)]
    revenue = Fraction(rev, denom)
    check = evaluate_revenue(instance, prices)
    if check != revenue:
        raise InternalCheckError(
            f"enumeration revenue {revenue} does not re-evaluate ({check})"
        )
    return Solution(revenue, prices, method)


def brute_force_uudp(
    instance: Instance,
    lattice: list[Fraction] | None = None,
    cap: int = DEFAULT_CAP,
    backend: str | None = None,
) -> Solution:
    """Exact optimum for the cheapest-item model.

    With the default candidate set (budgets and 0) the result is the true
    optimum; an explicit ``lattice`` restricts the search to those prices.
    """
    if instance.model != UUDP_MIN:
        raise InputError("brute_force_uudp handles the uudp-min model only")
    if lattice is None:
        cands = sorted({Fraction(0)} | {c.budget for c in instance.consumers})
    else:
        cands = sorted(set(lattice))
        if any(p < 0 for p in cands):
            raise InputError("lattice prices must be nonnegative")
    return _enumerate_grid(
        instance, [cands] * instance.num_items, cap, "oracle-uudp", backend
    )


def default_smp_lattice(instance: Instance) -> list[Fraction]:
    """0, every budget, and every positive pairwise budget difference."""
    budgets = {c.budget for c in instance.consumers}
    lattice = {Fraction(0)} | budgets
    for a in budgets:
        for b in budgets:
            if a > b:
                lattice.add(a - b)
    return sorted(lattice)


def brute_force_smp(
    instance: Instance,
    lattice: list[Fraction] | None = None,
    cap: int = DEFAULT_CAP,
    backend: str | None = None,
) -> Solution:
    """Best bundle-model assignment over a price lattice.

    Optimal relative to the lattice searched, not in general: the default
    lattice (budgets, their differences, and 0) is a useful reference grid.
    """
    if instance.model != SMP:
        raise InputError("brute_force_smp handles the smp model only")
    if lattice is None:
        cands = default_smp_lattice(instance)
    else:
        cands = sorted(set(lattice))
        if any(p < 0 for p in cands):
            raise InputError("lattice prices must be nonnegative")
    return _enumerate_grid(
        instance, [cands] * instance.num_items, cap, "oracle-smp", backend
    )
