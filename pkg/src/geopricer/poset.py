"""Dominance order machinery: antichains, chain covers, decomposition.

Points are ordered by coordinate-wise <=, with equal points tie-broken by
index (the lower index sits below).  The tie-break makes the order total on
each group of equal points, so an antichain never carries two copies of the
same point and a chain may.

Maximum antichains and minimum chain covers are both read off one maximum
bipartite matching on the split graph (left copy of i joined to right copy
of j when i sits strictly below j): matched edges link chain successors,
and the standard minimum-vertex-cover construction marks the antichain.
Both have size n minus the matching size, which is the duality the tests
lean on.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, InternalCheckError
from .ratmath import ceil_rat_pow


def dominance_matrix(points) -> list[list[bool]]:
    """matrix[i][j] is True when point i sits strictly below point j."""
    n = len(points)
    leq = [
        [all(a <= b for a, b in zip(points[i], points[j])) for j in range(n)]
        for i in range(n)
    ]
    return [
        [
            i != j and leq[i][j] and (not leq[j][i] or i < j)
            for j in range(n)
        ]
        for i in range(n)
    ]


def _hopcroft_karp(k: int, adj: list[list[int]]) -> tuple[list[int], list[int]]:
    """Maximum matching; adj[u] lists right neighbours in ascending order."""
    match_l = [-1] * k
    match_r = [-1] * k
    inf = k + 1
    while True:
        dist = [inf] * k
        queue = deque()
        for u in range(k):
            if match_l[u] == -1:
                dist[u] = 0
                queue.append(u)
        reachable_free = False
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                w = match_r[v]
                if w == -1:
                    reachable_free = True
                elif dist[w] == inf:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if not reachable_free:
            return match_l, match_r

        def augment(u: int) -> bool:
            for v in adj[u]:
                w = match_r[v]
                if w == -1 or (dist[w] == dist[u] + 1 and augment(w)):
                    match_l[u] = v
                    match_r[v] = u
                    return True
            dist[u] = inf
            return False

        for u in range(k):
            if match_l[u] == -1:
                augment(u)


def _split_adjacency(matrix, nodes: list[int]) -> list[list[int]]:
    k = len(nodes)
    return [
        [b for b in range(k) if matrix[nodes[a]][nodes[b]]]
        for a in range(k)
    ]


def _max_antichain_of(matrix, nodes: list[int]) -> list[int]:
    k = len(nodes)
    adj = _split_adjacency(matrix, nodes)
    match_l, match_r = _hopcroft_karp(k, adj)
    matched = sum(1 for v in match_l if v != -1)

    # Alternating-path reachability from free left vertices gives the
    # Koenig vertex cover; the antichain is its complement within pairs.
    in_zl = [False] * k
    in_zr = [False] * k
    queue = deque()
    for u in range(k):
        if match_l[u] == -1:
            in_zl[u] = True
            queue.append(("L", u))
    while queue:
        side, u = queue.popleft()
        if side == "L":
            for v in adj[u]:
                if match_l[u] != v and not in_zr[v]:
                    in_zr[v] = True
                    queue.append(("R", v))
        else:
            w = match_r[u]
            if w != -1 and not in_zl[w]:
                in_zl[w] = True
                queue.append(("L", w))

    antichain = [nodes[a] for a in range(k) if in_zl[a] and not in_zr[a]]
    if len(antichain) != k - matched:
        raise InternalCheckError(
            f"antichain size {len(antichain)} != {k} - matching {matched}"
        )
    return antichain


def _chain_cover_of(matrix, nodes: list[int]) -> list[list[int]]:
    k = len(nodes)
    adj = _split_adjacency(matrix, nodes)
    match_l, match_r = _hopcroft_karp(k, adj)
    matched = sum(1 for v in match_l if v != -1)

    chains = []
    for start in range(k):
        if match_r[start] != -1:
            continue
        chain = [nodes[start]]
        cur = start
        while match_l[cur] != -1:
            cur = match_l[cur]
            chain.append(nodes[cur])
        chains.append(chain)
    if len(chains) != k - matched:
        raise InternalCheckError(
            f"chain count {len(chains)} != {k} - matching {matched}"
        )
    return chains


def max_antichain(points) -> list[int]:
    """Indices of one maximum antichain, ascending."""
    matrix = dominance_matrix(points)
    return sorted(_max_antichain_of(matrix, list(range(len(points)))))


def min_chain_cover(points) -> list[list[int]]:
    """A minimum partition into chains, each ordered bottom to top."""
    matrix = dominance_matrix(points)
    return _chain_cover_of(matrix, list(range(len(points))))


@dataclass
class Decomposition:
    antichains: list[list[int]]
    chains: list[list[int]]
    threshold: int

    def to_json(self) -> dict:
        return {
            "antichains": self.antichains,
            "chains": self.chains,
            "threshold": self.threshold,
        }


def decompose_chains_antichains(points, epsilon: Fraction) -> Decomposition:
    """Split points into a few large antichains plus a few chains.

    While the remaining points hold an antichain of at least
    ceil(n^(1 - eps/4)) elements, one maximum antichain is peeled off;
    whatever is left is partitioned into chains.  That yields at most
    ceil(n^(eps/4)) antichains and fewer than ceil(n^(1 - eps/4)) chains,
    checked before returning.
    """
    if not (0 < epsilon <= 1):
        raise InputError("epsilon must be in (0, 1]")
    n = len(points)
    p, q = epsilon.numerator, epsilon.denominator
    threshold = ceil_rat_pow(n, 4 * q - p, 4 * q)
    matrix = dominance_matrix(points)

    alive = list(range(n))
    antichains: list[list[int]] = []
    while alive:
        antichain = sorted(_max_antichain_of(matrix, alive))
        if len(antichain) < threshold:
            break
        antichains.append(antichain)
        dropped = set(antichain)
        alive = [i for i in alive if i not in dropped]
    chains = _chain_cover_of(matrix, alive)

    result = Decomposition(antichains, chains, threshold)
    problems = decomposition_problems(points, antichains, chains, epsilon)
    if problems:
        raise InternalCheckError("; ".join(problems))
    return result


def decomposition_problems(
    points, antichains, chains, epsilon: Fraction | None = None
) -> list[str]:
    """Everything wrong with a claimed decomposition; empty when valid."""
    n = len(points)
    problems = []
    seen: set[int] = set()
    for group in list(antichains) + list(chains):
        for i in group:
            if not (isinstance(i, int) and 0 <= i < n):
                problems.append(f"index {i!r} out of range")
            elif i in seen:
                problems.append(f"index {i} appears twice")
            else:
                seen.add(i)
    if len(seen) != n:
        problems.append(f"{n - len(seen)} points are not covered")
    if problems:
        return problems

    matrix = dominance_matrix(points)
    for a, group in enumerate(antichains):
        for x in range(len(group)):
            for y in range(x + 1, len(group)):
                i, j = group[x], group[y]
                if matrix[i][j] or matrix[j][i]:
                    problems.append(
                        f"antichain {a} holds comparable points {i}, {j}"
                    )
    for c, group in enumerate(chains):
        for x in range(len(group)):
            for y in range(x + 1, len(group)):
                i, j = group[x], group[y]
                if not (matrix[i][j] or matrix[j][i]):
                    problems.append(
                        f"chain {c} holds incomparable points {i}, {j}"
                    )

    if epsilon is not None:
        p, q = epsilon.numerator, epsilon.denominator
        threshold = ceil_rat_pow(n, 4 * q - p, 4 * q)
        antichain_cap = ceil_rat_pow(n, p, 4 * q)
        if len(antichains) > antichain_cap:
            problems.append(
                f"{len(antichains)} antichains exceed the cap {antichain_cap}"
            )
        if len(chains) > threshold:
            problems.append(
                f"{len(chains)} chains exceed the cap {threshold}"
            )
        for a, group in enumerate(antichains):
            if len(group) < threshold:
                problems.append(
                    f"antichain {a} is smaller than the threshold {threshold}"
                )
    return problems
