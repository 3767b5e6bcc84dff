"""Independent brute-force oracles shared across the test suite.

Everything here is written from the problem definitions, not by calling
back into the package's own machinery, so agreement is meaningful.
"""

from fractions import Fraction
from itertools import combinations, product

import pytest

from geopricer import Consumer, Instance, SeedStream


def pairwise_below(points):
    """Strict order with the low-index-first convention for equal points."""
    n = len(points)
    below = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            le = all(a <= b for a, b in zip(points[i], points[j]))
            ge = all(a >= b for a, b in zip(points[i], points[j]))
            below[i][j] = le and (not ge or i < j)
    return below


def exhaustive_max_antichain_size(points) -> int:
    n = len(points)
    below = pairwise_below(points)
    best = 0
    for mask in range(1 << n):
        idx = [i for i in range(n) if mask >> i & 1]
        if len(idx) <= best:
            continue
        if all(
            not below[a][b] and not below[b][a]
            for a, b in combinations(idx, 2)
        ):
            best = len(idx)
    return best


def exhaustive_min_chain_cover_size(points) -> int:
    """Minimum chains partitioning the points, by set-cover DP over masks."""
    n = len(points)
    if n == 0:
        return 0
    below = pairwise_below(points)
    comparable = [
        [below[i][j] or below[j][i] for j in range(n)] for i in range(n)
    ]
    size = 1 << n
    is_chain = [True] * size
    for mask in range(size):
        idx = [i for i in range(n) if mask >> i & 1]
        is_chain[mask] = all(comparable[a][b] for a, b in combinations(idx, 2))
    best = [n + 1] * size
    best[0] = 0
    for mask in range(1, size):
        low = (mask & -mask).bit_length() - 1
        sub = mask
        while sub:
            if sub >> low & 1 and is_chain[sub] and best[mask ^ sub] + 1 < best[mask]:
                best[mask] = best[mask ^ sub] + 1
            sub = (sub - 1) & mask
    return best[size - 1]


def exhaustive_min_vertex_cover(vertices: int, edges) -> int:
    best = vertices
    for mask in range(1 << vertices):
        if all(mask >> i & 1 or mask >> j & 1 for i, j in edges):
            best = min(best, bin(mask).count("1"))
    return best


def set_system_opt(system) -> Fraction:
    """Cheapest-member pricing optimum over candidate prices {0} + budgets."""
    budgets = sorted({b for _, b in system.consumers})
    cands = [Fraction(0)] + [b for b in budgets if b > 0]
    best = Fraction(0)
    for assignment in product(cands, repeat=system.items):
        total = Fraction(0)
        for members, budget in system.consumers:
            if members:
                price = min(assignment[i] for i in members)
                if price <= budget:
                    total += price
        if total > best:
            best = total
    return best


def rand_point(rng: SeedStream, d: int, hi: int):
    return tuple(Fraction(rng.rand_int(0, hi)) for _ in range(d))


def rand_instance(
    seed: int, n: int, m: int, d: int, hi: int = 6,
    budgets=(1, 2, 3), model: str = "uudp-min",
) -> Instance:
    rng = SeedStream(seed)
    items = [rand_point(rng, d, hi) for _ in range(n)]
    consumers = [
        Consumer(
            rand_point(rng, d, hi),
            Fraction(budgets[rng.rand_below(len(budgets))]),
        )
        for _ in range(m)
    ]
    return Instance(d, model, items, consumers)


@pytest.fixture
def tiny_uudp() -> Instance:
    # two items on a line, one rich and one poor consumer
    return Instance(
        1,
        "uudp-min",
        [(Fraction(5),), (Fraction(3),)],
        [
            Consumer((Fraction(4),), Fraction(10)),
            Consumer((Fraction(1),), Fraction(2)),
        ],
    )
