"""Instances, price assignments, and exact revenue evaluation.

An instance places n items and m consumers in d-dimensional nonnegative
rational space.  A consumer considers every item that weakly dominates its
point coordinate-wise.  Two purchase models share this geometry:

* ``uudp-min``: the consumer buys the cheapest considered item, if it is
  affordable (ties broken toward the lowest item index).
* ``smp``: the consumer buys every considered item, if the bundle total is
  affordable.

Prices are nonnegative rationals; an item may instead be Excluded, meaning
it cannot be bought at any price.  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError

UUDP_MIN = "uudp-min"
SMP = "smp"
MODELS = (UUDP_MIN, SMP)


class _Excluded:
    """Sentinel price: the item is withdrawn from sale."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Excluded"


EXCLUDED = _Excluded()


def rat_from_json(value) -> Fraction:
    """Parse an int or a "p/q" string into a Fraction."""
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational {value!r}") from exc
    raise InputError(f"not a rational: {value!r}")


def rat_to_json(value: Fraction):
    if value.denominator == 1:
        return int(value)
    return f"{value.numerator}/{value.denominator}"


def price_from_json(value):
    if value == "excluded":
        return EXCLUDED
    return rat_from_json(value)


def price_to_json(value):
    if value is EXCLUDED:
        return "excluded"
    return rat_to_json(value)


@dataclass(frozen=True)
class Consumer:
    point: tuple[Fraction, ...]
    budget: Fraction


@dataclass
class Instance:
    dimension: int
    model: str
    items: list[tuple[Fraction, ...]]
    consumers: list[Consumer]

    def __post_init__(self):
        if self.dimension < 1:
            raise InputError("dimension must be >= 1")
        if self.model not in MODELS:
            raise InputError(f"unknown model {self.model!r}")
        for pt in self.items:
            _check_point(pt, self.dimension)
        for c in self.consumers:
            _check_point(c.point, self.dimension)
            if c.budget < 0:
                raise InputError("budgets must be nonnegative")

    @property
    def num_items(self) -> int:
        return len(self.items)

    @property
    def num_consumers(self) -> int:
        return len(self.consumers)


def _check_point(pt, dimension: int) -> None:
    if len(pt) != dimension:
        raise InputError(f"point {pt} has wrong dimension")
    for x in pt:
        if not isinstance(x, Fraction):
            raise InputError(f"coordinate {x!r} is not a Fraction")
        if x < 0:
            raise InputError("coordinates must be nonnegative")


def dominates(p: tuple, q: tuple) -> bool:
    """p >= q in every coordinate."""
    return all(a >= b for a, b in zip(p, q))


def consideration_set(instance: Instance, consumer: Consumer) -> list[int]:
    """Indices of items the consumer considers, ascending."""
    return [
        i for i, item in enumerate(instance.items)
        if dominates(item, consumer.point)
    ]


def consumer_payment(instance: Instance, consumer: Consumer, prices) -> Fraction:
    """What one consumer pays under the instance's purchase model."""
    considered = consideration_set(instance, consumer)
    if instance.model == UUDP_MIN:
        best = None
        for i in considered:
            p = prices[i]
            if p is EXCLUDED:
                continue
            if best is None or p < best:
                best = p
        if best is None or best > consumer.budget:
            return Fraction(0)
        return best
    # smp: the whole considered bundle or nothing
    total = Fraction(0)
    for i in considered:
        p = prices[i]
        if p is EXCLUDED:
            return Fraction(0)
        total += p
    if not considered or total > consumer.budget:
        return Fraction(0)
    return total


def evaluate_revenue(instance: Instance, prices) -> Fraction:
    """Total revenue of a price assignment, exactly."""
    if len(prices) != instance.num_items:
        raise InputError("price vector length does not match item count")
    for p in prices:
        if p is EXCLUDED:
            continue
        if not isinstance(p, Fraction):
            raise InputError(f"price {p!r} is not a Fraction or Excluded")
        if p < 0:
            raise InputError("prices must be nonnegative")
    return sum(
        (consumer_payment(instance, c, prices) for c in instance.consumers),
        Fraction(0),
    )


@dataclass(frozen=True)
class RevenueReport:
    total: Fraction
    payments: list[tuple[Fraction, tuple[int, ...]]]


def revenue_report(instance: Instance, prices) -> RevenueReport:
    """Per-consumer payments and purchases alongside the total.

    A min-buying consumer purchases the single cheapest non-excluded
    considered item (lowest index on price ties) when it is affordable;
    a bundle consumer purchases her whole consideration set or nothing.
    """
    total = evaluate_revenue(instance, prices)
    payments = []
    for consumer in instance.consumers:
        paid = consumer_payment(instance, consumer, prices)
        considered = consideration_set(instance, consumer)
        bought: tuple[int, ...] = ()
        if instance.model == UUDP_MIN:
            priced = [i for i in considered if prices[i] is not EXCLUDED]
            if priced:
                cheapest = min(priced, key=lambda i: (prices[i], i))
                if prices[cheapest] <= consumer.budget:
                    bought = (cheapest,)
        elif considered and all(prices[i] is not EXCLUDED for i in considered):
            if sum((prices[i] for i in considered), Fraction(0)) <= consumer.budget:
                bought = tuple(considered)
        payments.append((paid, bought))
    return RevenueReport(total, payments)


def restrict_instance(
    instance: Instance,
    item_indices: list[int] | None = None,
    consumer_indices: list[int] | None = None,
) -> Instance:
    """Sub-instance over the given items and consumers (order preserved)."""
    if item_indices is None:
        item_indices = list(range(instance.num_items))
    if consumer_indices is None:
        consumer_indices = list(range(instance.num_consumers))
    _check_indices(item_indices, instance.num_items, "item")
    _check_indices(consumer_indices, instance.num_consumers, "consumer")
    return Instance(
        dimension=instance.dimension,
        model=instance.model,
        items=[instance.items[i] for i in item_indices],
        consumers=[instance.consumers[i] for i in consumer_indices],
    )


def _check_indices(indices, n: int, what: str) -> None:
    seen = set()
    for i in indices:
        if not (0 <= i < n):
            raise InputError(f"{what} index {i} out of range")
        if i in seen:
            raise InputError(f"duplicate {what} index {i}")
        seen.add(i)


def extend_prices(sub_prices, item_indices: list[int], num_items: int, model: str):
    """Lift prices on a subset of items to a full assignment.

    Items outside the subset are Excluded under uudp-min and priced 0 under
    smp, so in both models the extension never earns less than the
    sub-assignment did on its own items.
    """
    if model not in MODELS:
        raise InputError(f"unknown model {model!r}")
    if len(sub_prices) != len(item_indices):
        raise InputError("sub-price vector length does not match index list")
    _check_indices(item_indices, num_items, "item")
    fill = EXCLUDED if model == UUDP_MIN else Fraction(0)
    full = [fill] * num_items
    for p, i in zip(sub_prices, item_indices):
        full[i] = p
    return full


@dataclass
class Solution:
    revenue: Fraction
    prices: list
    method: str

    def to_json(self) -> dict:
        return {
            "revenue": rat_to_json(self.revenue),
            "prices": [price_to_json(p) for p in self.prices],
            "method": self.method,
        }


def instance_from_json(data: dict) -> Instance:
    """Parse the instance wire format.

    ``{"dimension": d, "model": "uudp-min"|"smp", "items": [[rat, ...], ...],
    "consumers": [{"point": [rat, ...], "budget": rat}, ...]}``
    """
    if not isinstance(data, dict):
        raise InputError("instance must be a JSON object")
    for key in ("dimension", "model", "items", "consumers"):
        if key not in data:
            raise InputError(f"instance is missing {key!r}")
    dimension = data["dimension"]
    if not isinstance(dimension, int) or isinstance(dimension, bool):
        raise InputError("dimension must be an integer")
    items = [
        tuple(rat_from_json(x) for x in _as_list(row, "item"))
        for row in _as_list(data["items"], "items")
    ]
    consumers = []
    for entry in _as_list(data["consumers"], "consumers"):
        if not isinstance(entry, dict) or "point" not in entry or "budget" not in entry:
            raise InputError(f"bad consumer entry {entry!r}")
        consumers.append(Consumer(
            point=tuple(rat_from_json(x) for x in _as_list(entry["point"], "point")),
            budget=rat_from_json(entry["budget"]),
        ))
    return Instance(dimension=dimension, model=data["model"],
                    items=items, consumers=consumers)


def _as_list(value, what: str) -> list:
    if not isinstance(value, list):
        raise InputError(f"{what} must be a JSON array")
    return value


def instance_to_json(instance: Instance) -> dict:
    return {
        "dimension": instance.dimension,
        "model": instance.model,
        "items": [[rat_to_json(x) for x in item] for item in instance.items],
        "consumers": [
            {"point": [rat_to_json(x) for x in c.point],
             "budget": rat_to_json(c.budget)}
            for c in instance.consumers
        ],
    }


def prices_from_json(data) -> list:
    if isinstance(data, dict) and "prices" in data:
        data = data["prices"]
    return [price_from_json(v) for v in _as_list(data, "prices")]


def prices_to_json(prices) -> dict:
    return {"prices": [price_to_json(p) for p in prices]}
