"""Seeded random instance generation for experiments and tests.

Every draw comes from a single splitmix stream in a fixed order (item
points, then each consumer's point and budget), so a spec plus a seed
pins the instance bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core import MODELS, UUDP_MIN, Consumer, Instance, rat_from_json
from .errors import InputError
from .rng import SeedStream

KINDS = ("random", "chain", "antichain", "grid", "clustered")


@dataclass
class GeneratorSpec:
    kind: str = "random"
    n: int = 4
    m: int = 4
    d: int = 2
    model: str = UUDP_MIN
    budgets: tuple[Fraction, ...] = (Fraction(1), Fraction(2), Fraction(3))
    budget_weights: tuple[int, ...] | None = None
    coord_lo: int = 0
    coord_hi: int = 9
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown generator kind {self.kind!r}")
        if self.model not in MODELS:
            raise InputError(f"unknown model {self.model!r}")
        if self.n < 0 or self.m < 0:
            raise InputError("counts must be nonnegative")
        if self.d < 1:
            raise InputError("dimension must be at least 1")
        if not self.budgets:
            raise InputError("budget support must be nonempty")
        if any(b < 0 for b in self.budgets):
            raise InputError("budgets must be nonnegative")
        if self.budget_weights is not None:
            if len(self.budget_weights) != len(self.budgets):
                raise InputError("one weight per budget value required")
            if any(w < 0 for w in self.budget_weights) or sum(self.budget_weights) == 0:
                raise InputError("weights must be nonnegative with positive total")
        if self.coord_lo > self.coord_hi:
            raise InputError("empty coordinate range")


def spec_from_json(data: dict) -> GeneratorSpec:
    fields = {}
    for key in ("kind", "model"):
        if key in data:
            fields[key] = str(data[key])
    for key in ("n", "m", "d", "coord_lo", "coord_hi", "seed"):
        if key in data:
            fields[key] = int(data[key])
    if "budgets" in data:
        fields["budgets"] = tuple(rat_from_json(b) for b in data["budgets"])
    if "budget_weights" in data:
        fields["budget_weights"] = tuple(int(w) for w in data["budget_weights"])
    return GeneratorSpec(**fields)


def _draw_budget(spec: GeneratorSpec, rng: SeedStream) -> Fraction:
    weights = spec.budget_weights or tuple(1 for _ in spec.budgets)
    total = sum(weights)
    roll = rng.rand_below(total)
    for value, weight in zip(spec.budgets, weights):
        if roll < weight:
            return value
        roll -= weight
    raise AssertionError("weighted draw fell off the end")


def _uniform_point(spec: GeneratorSpec, rng: SeedStream) -> tuple[Fraction, ...]:
    return tuple(
        Fraction(rng.rand_int(spec.coord_lo, spec.coord_hi))
        for _ in range(spec.d)
    )


def _chain_items(spec: GeneratorSpec, rng: SeedStream) -> list[tuple[Fraction, ...]]:
    # sorting each coordinate independently makes coordinates jointly
    # non-decreasing along the item order, hence a dominance chain
    columns = []
    for _ in range(spec.d):
        col = sorted(
            rng.rand_int(spec.coord_lo, spec.coord_hi) for _ in range(spec.n)
        )
        columns.append(col)
    return [
        tuple(Fraction(columns[j][k]) for j in range(spec.d))
        for k in range(spec.n)
    ]


def _comparable(p: tuple, q: tuple) -> bool:
    return all(a >= b for a, b in zip(p, q)) or all(a <= b for a, b in zip(p, q))


def _antichain_items(spec: GeneratorSpec, rng: SeedStream) -> list[tuple[Fraction, ...]]:
    if spec.n > 1 and spec.d < 2:
        raise InputError("a one-dimensional antichain holds at most one item")
    kept: list[tuple[Fraction, ...]] = []
    attempts = 0
    cap = 200 * max(spec.n, 1)
    while len(kept) < spec.n and attempts < cap:
        attempts += 1
        point = _uniform_point(spec, rng)
        if all(not _comparable(point, other) for other in kept):
            kept.append(point)
    if len(kept) == spec.n:
        return kept
    # deterministic fallback: points along the anti-diagonal
    width = spec.coord_hi - spec.coord_lo
    if spec.n > width + 1:
        raise InputError(
            f"coordinate range too narrow for an antichain of {spec.n} items"
        )
    items = []
    for k in range(spec.n):
        point = [Fraction(spec.coord_lo + k), Fraction(spec.coord_lo + width - k)]
        point += [Fraction(spec.coord_lo)] * (spec.d - 2)
        items.append(tuple(point))
    return items


def _grid_items(spec: GeneratorSpec) -> list[tuple[Fraction, ...]]:
    side = 1
    while side ** spec.d < spec.n:
        side += 1
    step = max(1, (spec.coord_hi - spec.coord_lo) // max(1, side - 1))
    items = []
    for k in range(spec.n):
        digits = []
        rest = k
        for _ in range(spec.d):
            digits.append(rest % side)
            rest //= side
        items.append(
            tuple(
                Fraction(min(spec.coord_lo + dig * step, spec.coord_hi))
                for dig in digits
            )
        )
    return items


def _clustered_point(
    spec: GeneratorSpec, centers: list[tuple[int, ...]], rng: SeedStream
) -> tuple[Fraction, ...]:
    center = centers[rng.rand_below(len(centers))]
    point = []
    for j in range(spec.d):
        value = center[j] + rng.rand_int(-1, 1)
        point.append(Fraction(min(max(value, spec.coord_lo), spec.coord_hi)))
    return tuple(point)


def generate(spec: GeneratorSpec) -> Instance:
    """Deterministically draw the instance described by ``spec``."""
    rng = SeedStream(spec.seed)
    if spec.kind == "random":
        items = [_uniform_point(spec, rng) for _ in range(spec.n)]
    elif spec.kind == "chain":
        items = _chain_items(spec, rng)
    elif spec.kind == "antichain":
        items = _antichain_items(spec, rng)
    elif spec.kind == "grid":
        items = _grid_items(spec)
    else:
        count = max(1, (spec.n + 3) // 4)
        centers = [
            tuple(rng.rand_int(spec.coord_lo, spec.coord_hi) for _ in range(spec.d))
            for _ in range(count)
        ]
        items = [_clustered_point(spec, centers, rng) for _ in range(spec.n)]

    consumers = []
    for _ in range(spec.m):
        if spec.kind == "clustered":
            point = _clustered_point(spec, centers, rng)
        else:
            point = _uniform_point(spec, rng)
        consumers.append(Consumer(point, _draw_budget(spec, rng)))
    return Instance(spec.d, spec.model, items, consumers)
