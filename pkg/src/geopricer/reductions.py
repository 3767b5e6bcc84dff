"""Constructive mappings between pricing formulations.

Highway tollbooth pricing and bipartite graph-vertex pricing become
low-dimensional bundle-pricing instances; set-system pricing becomes
geometric via either the exact n-dimensional embedding or a randomized
low-dimensional one.  Each deterministic mapping is checked on the spot:
the image instance's consideration sets must equal the source's.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    SMP,
    UUDP_MIN,
    Consumer,
    Instance,
    consideration_set,
    rat_from_json,
    rat_to_json,
)
from .errors import InputError, InternalCheckError
from .rng import SeedStream


@dataclass
class HighwayInstance:
    edges: int
    consumers: list[tuple[int, int, Fraction]]

    def __post_init__(self):
        if self.edges < 0:
            raise InputError("edge count must be nonnegative")
        for s, t, budget in self.consumers:
            if not (0 <= s < t <= self.edges):
                raise InputError(f"subpath ({s}, {t}) is not valid")
            if budget < 0:
                raise InputError("budgets must be nonnegative")


@dataclass
class BipartiteGvpInstance:
    left: int
    right: int
    edges: list[tuple[int, int, Fraction]]

    def __post_init__(self):
        if self.left < 1 or self.right < 1:
            raise InputError("both vertex sides must be nonempty")
        for u, w, budget in self.edges:
            if not (1 <= u <= self.left and 1 <= w <= self.right):
                raise InputError(f"edge ({u}, {w}) leaves the vertex sides")
            if budget < 0:
                raise InputError("budgets must be nonnegative")


@dataclass
class SetSystemInstance:
    items: int
    consumers: list[tuple[list[int], Fraction]]

    def __post_init__(self):
        if self.items < 0:
            raise InputError("item count must be nonnegative")
        for members, budget in self.consumers:
            if len(set(members)) != len(members):
                raise InputError("consideration sets must not repeat items")
            for i in members:
                if not (0 <= i < self.items):
                    raise InputError(f"set member {i} out of range")
            if budget < 0:
                raise InputError("budgets must be nonnegative")


@dataclass
class Graph:
    vertices: int
    edges: list[tuple[int, int]]

    def __post_init__(self):
        if self.vertices < 0:
            raise InputError("vertex count must be nonnegative")
        seen = set()
        for i, j in self.edges:
            if i == j:
                raise InputError(f"loop at vertex {i}")
            if not (0 <= i < self.vertices and 0 <= j < self.vertices):
                raise InputError(f"edge ({i}, {j}) out of range")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise InputError(f"duplicate edge ({i}, {j})")
            seen.add(key)


def set_preservation_problems(
    source: SetSystemInstance, target: Instance
) -> list[str]:
    """Mismatches between declared sets and the image's consideration sets."""
    problems = []
    if target.num_items != source.items:
        return [f"item count {target.num_items} != {source.items}"]
    if target.num_consumers != len(source.consumers):
        return ["consumer counts differ"]
    for c, (members, budget) in enumerate(source.consumers):
        got = set(consideration_set(target, target.consumers[c]))
        if got != set(members):
            problems.append(
                f"consumer {c}: expected {sorted(members)}, got {sorted(got)}"
            )
        if target.consumers[c].budget != budget:
            problems.append(f"consumer {c}: budget changed")
    return problems


def highway_to_2smp(highway: HighwayInstance) -> tuple[Instance, dict]:
    """Subpath pricing on a line as 2-D bundle pricing.

    Edge i sits at (i, n+1-i); the consumer of subpath (s, t] sits at
    (s+1, n+1-t), so she dominates-considers exactly edges s+1..t.
    """
    n = highway.edges
    items = [
        (Fraction(i), Fraction(n + 1 - i))
        for i in range(1, n + 1)
    ]
    consumers = [
        Consumer((Fraction(s + 1), Fraction(n + 1 - t)), budget)
        for s, t, budget in highway.consumers
    ]
    instance = Instance(2, SMP, items, consumers)
    for c, (s, t, _) in enumerate(highway.consumers):
        got = set(consideration_set(instance, instance.consumers[c]))
        want = set(range(s, t))
        if got != want:
            raise InternalCheckError(
                f"consumer {c}: subpath edges {sorted(want)} became {sorted(got)}"
            )
    correspondence = {
        "items": [i + 1 for i in range(n)],
        "consumers": list(range(len(highway.consumers))),
    }
    return instance, correspondence


def bipartite_gvp_to_4smp(graph: BipartiteGvpInstance) -> tuple[Instance, dict]:
    """Bipartite graph-vertex pricing as 4-D bundle pricing.

    Left vertex i sits at (i, |U|+1-i, K, K), right vertex j at
    (K, K, j, |W|+1-j) with K above every finite coordinate; the consumer
    of edge (i, j) then considers exactly her two endpoints.
    """
    nu, nw = graph.left, graph.right
    big = Fraction(nu + nw + 2)
    items = [
        (Fraction(i), Fraction(nu + 1 - i), big, big)
        for i in range(1, nu + 1)
    ] + [
        (big, big, Fraction(j), Fraction(nw + 1 - j))
        for j in range(1, nw + 1)
    ]
    consumers = [
        Consumer(
            (Fraction(u), Fraction(nu + 1 - u),
             Fraction(w), Fraction(nw + 1 - w)),
            budget,
        )
        for u, w, budget in graph.edges
    ]
    instance = Instance(4, SMP, items, consumers)
    for c, (u, w, _) in enumerate(graph.edges):
        got = set(consideration_set(instance, instance.consumers[c]))
        want = {u - 1, nu + w - 1}
        if got != want:
            raise InternalCheckError(
                f"edge consumer {c}: endpoints {sorted(want)} became {sorted(got)}"
            )
    correspondence = {
        "items": [f"u{i}" for i in range(1, nu + 1)]
        + [f"w{j}" for j in range(1, nw + 1)],
        "consumers": list(range(len(graph.edges))),
    }
    return instance, correspondence


def vertex_cover_to_pricing(graph: Graph) -> SetSystemInstance:
    """Vertex cover as cheapest-item pricing over vertex items.

    Each edge contributes a budget-1 consumer wanting either endpoint;
    each vertex a budget-2 consumer wanting that vertex alone.  The
    optimal revenue works out to 2n - VC(G) + m.
    """
    consumers: list[tuple[list[int], Fraction]] = []
    for i, j in graph.edges:
        consumers.append(([min(i, j), max(i, j)], Fraction(1)))
    for v in range(graph.vertices):
        consumers.append(([v], Fraction(2)))
    return SetSystemInstance(graph.vertices, consumers)


def universal_embedding(system: SetSystemInstance) -> tuple[Instance, dict]:
    """Any set system as an n-dimensional cheapest-item instance.

    Item i is all-ones except a zero in coordinate i; a consumer zeroes
    exactly the coordinates of her set, so item i dominates her iff i is
    a member.
    """
    n = system.items
    if n == 0:
        instance = Instance(1, UUDP_MIN, [], [])
        return instance, {"items": [], "consumers": []}
    items = [
        tuple(Fraction(0) if j == i else Fraction(1) for j in range(n))
        for i in range(n)
    ]
    consumers = []
    for members, budget in system.consumers:
        inside = set(members)
        point = tuple(
            Fraction(0) if i in inside else Fraction(1) for i in range(n)
        )
        consumers.append(Consumer(point, budget))
    instance = Instance(n, UUDP_MIN, items, consumers)
    problems = set_preservation_problems(system, instance)
    if problems:
        raise InternalCheckError("; ".join(problems))
    correspondence = {
        "items": list(range(n)),
        "consumers": list(range(len(system.consumers))),
    }
    return instance, correspondence


def permutation_dimension(n: int, bound: int) -> int:
    """Smallest d with (1 - 1/(B+1))^d <= n^-(B+2), in exact integers."""
    if n < 2 or bound < 1:
        raise InputError("needs n >= 2 and B >= 1")
    target = n ** (bound + 2)
    d = 1
    while (bound + 1) ** d < (bound ** d) * target:
        d += 1
    return d


def random_permutation_embedding(
    system: SetSystemInstance, bound: int, rng: SeedStream
) -> tuple[Instance, int, dict]:
    """Randomized low-dimensional embedding for sets of size at most B.

    Every coordinate carries an independent uniform permutation of the
    items; an item's coordinate is its rank 1..n and a consumer sits at
    the coordinate-wise minimum of her members (n+1 for the empty set,
    so she considers nothing).  Members then always dominate-consider,
    while each outsider slips below the minimum in some coordinate
    except with probability about 1/n over all pairs once d meets the
    tail bound.  Callers must check preservation and may redraw.
    """
    n = system.items
    for c, (members, _) in enumerate(system.consumers):
        if len(members) > bound:
            raise InputError(
                f"consumer {c} has {len(members)} items, above the bound {bound}"
            )
    d = permutation_dimension(n, bound)
    perms = [rng.permutation(n) for _ in range(d)]
    items = [
        tuple(Fraction(perms[i][j] + 1) for i in range(d))
        for j in range(n)
    ]
    consumers = []
    for members, budget in system.consumers:
        point = []
        for i in range(d):
            if members:
                rank = min(perms[i][j] + 1 for j in members)
            else:
                rank = n + 1
            point.append(Fraction(rank))
        consumers.append(Consumer(tuple(point), budget))
    instance = Instance(d, UUDP_MIN, items, consumers)
    correspondence = {
        "items": list(range(n)),
        "consumers": list(range(len(system.consumers))),
        "dimension": d,
    }
    return instance, d, correspondence


def highway_from_json(data: dict) -> HighwayInstance:
    """``{"edges": n, "consumers": [{"s", "t", "budget"}, ...]}``"""
    try:
        consumers = [
            (int(entry["s"]), int(entry["t"]), rat_from_json(entry["budget"]))
            for entry in data["consumers"]
        ]
        return HighwayInstance(int(data["edges"]), consumers)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad highway JSON: {exc}") from exc


def bipartite_from_json(data: dict) -> BipartiteGvpInstance:
    """``{"left": a, "right": b, "edges": [{"u", "w", "budget"}, ...]}``"""
    try:
        edges = [
            (int(entry["u"]), int(entry["w"]), rat_from_json(entry["budget"]))
            for entry in data["edges"]
        ]
        return BipartiteGvpInstance(int(data["left"]), int(data["right"]), edges)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad bipartite JSON: {exc}") from exc


def set_system_from_json(data: dict) -> SetSystemInstance:
    """``{"items": n, "consumers": [{"set": [...], "budget"}, ...]}``"""
    try:
        consumers = [
            ([int(i) for i in entry["set"]], rat_from_json(entry["budget"]))
            for entry in data["consumers"]
        ]
        return SetSystemInstance(int(data["items"]), consumers)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad set-system JSON: {exc}") from exc


def set_system_to_json(system: SetSystemInstance) -> dict:
    return {
        "items": system.items,
        "consumers": [
            {"set": list(members), "budget": rat_to_json(budget)}
            for members, budget in system.consumers
        ],
    }


def graph_from_json(data: dict) -> Graph:
    """``{"vertices": n, "edges": [[i, j], ...]}``"""
    try:
        edges = [(int(i), int(j)) for i, j in data["edges"]]
        return Graph(int(data["vertices"]), edges)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad graph JSON: {exc}") from exc
