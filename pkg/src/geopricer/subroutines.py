"""Sampling and embedding subroutines backing the recursive solver.

Embeddings here rewrite geometry without touching who considers what: a
consumer dominates-relates to an item after the rewrite exactly as before.
That property is what verify_embedding checks pair by pair, and it is why
optimal revenue carries across unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    UUDP_MIN,
    Consumer,
    Instance,
    Solution,
    consideration_set,
    dominates,
    evaluate_revenue,
    extend_prices,
    rat_from_json,
    rat_to_json,
)
from .errors import InputError, InternalCheckError
from .poset import dominance_matrix
from .ratmath import ExactPow
from .rng import SeedStream


@dataclass
class Embedding:
    source_dimension: int
    target_dimension: int
    consumer_images: list[tuple[Fraction, ...]]
    item_images: list[tuple[Fraction, ...]]
    kind: str


def embedding_to_json(emb: Embedding) -> dict:
    return {
        "kind": emb.kind,
        "source_dimension": emb.source_dimension,
        "target_dimension": emb.target_dimension,
        "item_images": [[rat_to_json(x) for x in p] for p in emb.item_images],
        "consumer_images": [
            [rat_to_json(x) for x in p] for p in emb.consumer_images
        ],
    }


def embedding_from_json(data: dict) -> Embedding:
    try:
        return Embedding(
            int(data["source_dimension"]),
            int(data["target_dimension"]),
            [tuple(rat_from_json(x) for x in p) for p in data["consumer_images"]],
            [tuple(rat_from_json(x) for x in p) for p in data["item_images"]],
            str(data["kind"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad embedding JSON: {exc}") from exc


def verify_embedding(
    source: Instance, target: Instance, emb: Embedding
) -> tuple[bool, str | None]:
    """Check consideration preservation pair by pair.

    True iff the target realizes the embedding's stored images, budgets
    match, and every (consumer, item) pair has the same domination status
    on both sides.  On failure the second component names the first
    offender.
    """
    if source.num_items != target.num_items:
        return False, "item counts differ"
    if source.num_consumers != target.num_consumers:
        return False, "consumer counts differ"
    if emb.source_dimension != source.dimension:
        return False, "source dimension mismatch"
    if emb.target_dimension != target.dimension:
        return False, "target dimension mismatch"
    if len(emb.item_images) != source.num_items:
        return False, "item image count mismatch"
    if len(emb.consumer_images) != source.num_consumers:
        return False, "consumer image count mismatch"
    for i, item in enumerate(target.items):
        if tuple(item) != tuple(emb.item_images[i]):
            return False, f"target item {i} is not the stored image"
    for c, cons in enumerate(target.consumers):
        if tuple(cons.point) != tuple(emb.consumer_images[c]):
            return False, f"target consumer {c} is not the stored image"
        if cons.budget != source.consumers[c].budget:
            return False, f"consumer {c} budget changed"
    for c, cons in enumerate(source.consumers):
        for i, item in enumerate(source.items):
            before = dominates(item, cons.point)
            after = dominates(target.items[i], target.consumers[c].point)
            if before != after:
                return False, (
                    f"consumer {c} and item {i}: considered={before} "
                    f"became considered={after}"
                )
    return True, None


def chain_embedding(
    instance: Instance, chain: list[int]
) -> tuple[Instance, Embedding]:
    """Map a dominance chain onto the line.

    The chain must be listed bottom to top; the item at chain position t
    lands at coordinate t+1.  A consumer lands at the position of the
    least chain item dominating her, or above the whole chain if none
    does, so consideration sets within the chain survive exactly.
    """
    matrix = dominance_matrix(instance.items)
    for a, b in zip(chain, chain[1:]):
        if not matrix[a][b]:
            raise InputError(f"items {a} and {b} are not chain-ordered")
    k = len(chain)
    item_images = [(Fraction(t + 1),) for t in range(k)]
    consumer_images = []
    for cons in instance.consumers:
        coord = Fraction(k + 1)
        for t, i in enumerate(chain):
            if dominates(instance.items[i], cons.point):
                coord = Fraction(t + 1)
                break
        consumer_images.append((coord,))
    target = Instance(
        dimension=1,
        model=instance.model,
        items=item_images,
        consumers=[
            Consumer(pt, cons.budget)
            for pt, cons in zip(consumer_images, instance.consumers)
        ],
    )
    emb = Embedding(instance.dimension, 1, consumer_images, item_images, "chain")
    return target, emb


def drop_coordinate_embedding(
    instance: Instance, coord: int, guard_item: int
) -> tuple[Instance, Embedding]:
    """Delete one coordinate made vacuous by a guard item.

    Requires the guard to dominate every consumer and every item to match
    or exceed the guard on the dropped coordinate; then no consideration
    decision ever hinged on that coordinate.
    """
    d = instance.dimension
    if d < 2:
        raise InputError("cannot drop a coordinate of a 1-dimensional instance")
    if not (0 <= coord < d):
        raise InputError(f"coordinate {coord} out of range")
    if not (0 <= guard_item < instance.num_items):
        raise InputError(f"guard item {guard_item} out of range")
    guard = instance.items[guard_item]
    for c, cons in enumerate(instance.consumers):
        if not dominates(guard, cons.point):
            raise InputError(
                f"guard item {guard_item} does not dominate consumer {c}"
            )
    for i, item in enumerate(instance.items):
        if item[coord] < guard[coord]:
            raise InputError(
                f"item {i} is below the guard on coordinate {coord}"
            )

    def drop(pt):
        return tuple(x for j, x in enumerate(pt) if j != coord)

    item_images = [drop(item) for item in instance.items]
    consumer_images = [drop(cons.point) for cons in instance.consumers]
    target = Instance(
        dimension=d - 1,
        model=instance.model,
        items=item_images,
        consumers=[
            Consumer(pt, cons.budget)
            for pt, cons in zip(consumer_images, instance.consumers)
        ],
    )
    emb = Embedding(d, d - 1, consumer_images, item_images, "drop-coordinate")
    return target, emb


def split_by_consideration_size(
    instance: Instance, antichain: list[int], threshold
) -> tuple[list[int], list[int]]:
    """Partition consumers by |consideration set within the antichain|.

    Small means at most the threshold, which may be a Fraction or an
    ExactPow; either way the comparison is exact.
    """
    members = set(antichain)
    small, large = [], []
    for c, cons in enumerate(instance.consumers):
        count = sum(
            1 for i in consideration_set(instance, cons) if i in members
        )
        if _count_le(count, threshold):
            small.append(c)
        else:
            large.append(c)
    return small, large


def _count_le(count: int, threshold) -> bool:
    if isinstance(threshold, ExactPow):
        return threshold.ge_int(count)
    return count <= threshold


def coordinate_groups(
    instance: Instance, antichain: list[int], guard_item: int
) -> list[list[int]]:
    """Per coordinate j, the antichain items matching the guard on j.

    The guard belongs to every group and every antichain member beats the
    guard somewhere (they are incomparable), so the groups cover the
    antichain.
    """
    if guard_item not in antichain:
        raise InputError("guard item must belong to the antichain")
    matrix = dominance_matrix(instance.items)
    for x in range(len(antichain)):
        for y in range(x + 1, len(antichain)):
            i, j = antichain[x], antichain[y]
            if matrix[i][j] or matrix[j][i]:
                raise InputError(f"items {i} and {j} are comparable")
    guard = instance.items[guard_item]
    groups = [
        sorted(i for i in antichain if instance.items[i][j] >= guard[j])
        for j in range(instance.dimension)
    ]
    covered = set().union(*groups) if groups else set()
    if covered != set(antichain):
        raise InternalCheckError("coordinate groups fail to cover the antichain")
    return groups


@dataclass
class HittingSet:
    items: list[int]
    delta: object
    seed: int
    resamples: int
    method: str


def _heavy_enough(size: int, num_items: int, delta) -> bool:
    if isinstance(delta, ExactPow):
        return delta.ge_scaled(size, num_items)
    return size >= delta * num_items


def epsilon_net_hitting_set(
    instance: Instance,
    heavy_consumers: list[int],
    delta,
    rng: SeedStream,
    constant: int = 8,
    resample_cap: int = 32,
) -> HittingSet:
    """A small item set meeting every heavy consumer's consideration set.

    Samples uniformly with replacement and verifies; after ``resample_cap``
    failed attempts, falls back to greedy covering, which cannot fail once
    every target holds at least delta * n items.
    """
    n = instance.num_items
    targets = []
    offenders = []
    for c in heavy_consumers:
        s = frozenset(consideration_set(instance, instance.consumers[c]))
        if not s or not _heavy_enough(len(s), n, delta):
            offenders.append(c)
        targets.append(s)
    if offenders:
        raise InputError(
            f"consumers {offenders} are lighter than delta requires"
        )
    if not targets:
        return HittingSet([], delta, rng.seed, 0, "sample")

    ratio = instance.dimension / float(delta)
    size = math.ceil(constant * ratio * math.log(max(ratio, 2.0)))

    for attempt in range(resample_cap):
        stream = rng.derive(attempt)
        sample = {stream.rand_below(n) for _ in range(size)}
        if all(sample & t for t in targets):
            return HittingSet(sorted(sample), delta, stream.seed, attempt, "sample")

    hitting: set[int] = set()
    unhit = [t for t in targets]
    while unhit:
        best_item, best_count = -1, 0
        for i in range(n):
            count = sum(1 for t in unhit if i in t)
            if count > best_count:
                best_item, best_count = i, count
        if best_item < 0:
            raise InternalCheckError("greedy covering found no usable item")
        hitting.add(best_item)
        unhit = [t for t in unhit if best_item not in t]
    return HittingSet(sorted(hitting), delta, rng.seed, resample_cap, "greedy")


def balcan_blum_sample(
    instance: Instance, k: int, rng: SeedStream
) -> tuple[list[int], list[int]]:
    """Keep each item with probability 1/k; report singleton consumers.

    A singleton consumer has exactly one kept item in her consideration
    set, so pricing that item is a private negotiation.
    """
    if k < 1:
        raise InputError("k must be at least 1")
    kept = [i for i in range(instance.num_items) if rng.rand_below(k) == 0]
    kept_set = set(kept)
    singles = []
    for c, cons in enumerate(instance.consumers):
        inside = [
            i for i in consideration_set(instance, cons) if i in kept_set
        ]
        if len(inside) == 1:
            singles.append(c)
    return kept, singles


def _best_singleton_price(budgets: list[Fraction]) -> Fraction:
    # b * count is maximized scanning budgets descending; ties keep the
    # larger price.
    ordered = sorted(budgets, reverse=True)
    best_price = ordered[0]
    best_value = ordered[0]
    for count, b in enumerate(ordered[1:], start=2):
        value = b * count
        if value > best_value:
            best_value = value
            best_price = b
    return best_price


def balcan_blum_trials(
    instance: Instance, trials: int, rng: SeedStream
) -> Solution:
    """Best of independently seeded sample-and-price trials (either model)."""
    if trials < 1:
        raise InputError("trials must be at least 1")
    n = instance.num_items
    k = max(
        [len(consideration_set(instance, c)) for c in instance.consumers],
        default=0,
    )
    k = max(k, 1)

    best_rev = None
    best_prices = None
    for t in range(trials):
        stream = rng.derive(t)
        kept, singles = balcan_blum_sample(instance, k, stream)
        by_item: dict[int, list[Fraction]] = {}
        kept_set = set(kept)
        for c in singles:
            cons = instance.consumers[c]
            item = next(
                i for i in consideration_set(instance, cons) if i in kept_set
            )
            by_item.setdefault(item, []).append(cons.budget)
        priced = sorted(by_item)
        sub_prices = [_best_singleton_price(by_item[i]) for i in priced]
        prices = extend_prices(sub_prices, priced, n, instance.model)
        rev = evaluate_revenue(instance, prices)
        if best_rev is None or rev > best_rev:
            best_rev = rev
            best_prices = prices
    return Solution(best_rev, best_prices, "balcan-blum")


def balcan_blum_approx(
    instance: Instance, trials: int, rng: SeedStream
) -> Solution:
    """Sampling approximation for the cheapest-item model.

    With k the largest consideration-set size, a single trial earns at
    least OPT/(e*k) in expectation; taking the best of many trials makes
    that bound hold with high probability.
    """
    if instance.model != UUDP_MIN:
        raise InputError("balcan_blum_approx handles the uudp-min model only")
    return balcan_blum_trials(instance, trials, rng)
