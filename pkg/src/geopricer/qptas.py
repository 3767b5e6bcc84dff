"""Two-dimensional machinery: grid form, price ladders, and the 2-D DPs.

Everything here first snaps an instance onto an integer grid where items
occupy odd coordinates (one per odd row and odd column) and consumers even
ones.  The snap is purely order-based, so who considers what never
changes, which is checked pair by pair after the rewrite.

On the grid, cheapest-item pricing admits a profile DP over a geometric
price ladder (exact relative to the ladder), and bundle pricing with
budgets in {1, 2} admits an exact 0/1-price DP over a balanced partition
tree.
"""

from __future__ import annotations

import itertools
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    EXCLUDED,
    SMP,
    UUDP_MIN,
    Consumer,
    Instance,
    Solution,
    consideration_set,
    evaluate_revenue,
)
from .errors import CapExceededError, InputError, InternalCheckError

DEFAULT_PROFILE_CAP = 10 ** 6
DEFAULT_LADDER_CAP = 64
DEFAULT_TREE_CAP = 200_000


@dataclass
class GridInstance:
    instance: Instance
    # positions are preserved by the snap; the identity maps are stored so
    # callers can rely on an explicit back-map
    item_map: list[int]
    consumer_map: list[int]


def grid_normalize(instance: Instance) -> GridInstance:
    """Snap a 2-D instance onto the even/odd grid.

    Per axis, items are ranked by coordinate with equal coordinates broken
    toward the lower original index sitting higher; rank r lands at 2r-1.
    A consumer lands at twice the number of items strictly below her, so
    an item dominates her on the grid exactly when it did before.
    """
    if instance.dimension != 2:
        raise InputError("grid form needs dimension 2")
    n = instance.num_items
    m = instance.num_consumers
    new_items = [[Fraction(0), Fraction(0)] for _ in range(n)]
    new_points = [[Fraction(0), Fraction(0)] for _ in range(m)]
    for axis in (0, 1):
        order = sorted(range(n), key=lambda i: (instance.items[i][axis], -i))
        for rank, i in enumerate(order, start=1):
            new_items[i][axis] = Fraction(2 * rank - 1)
        coords = sorted(instance.items[i][axis] for i in range(n))
        for c in range(m):
            below = bisect_left(coords, instance.consumers[c].point[axis])
            new_points[c][axis] = Fraction(2 * below)

    target = Instance(
        dimension=2,
        model=instance.model,
        items=[tuple(pt) for pt in new_items],
        consumers=[
            Consumer(tuple(pt), cons.budget)
            for pt, cons in zip(new_points, instance.consumers)
        ],
    )
    for axis in (0, 1):
        seen = {item[axis] for item in target.items}
        if len(seen) != n or any(int(x) % 2 != 1 for x in seen):
            raise InternalCheckError("grid items are not one per odd line")
    for c, cons in enumerate(instance.consumers):
        old = set(consideration_set(instance, cons))
        new = set(consideration_set(target, target.consumers[c]))
        if old != new:
            raise InternalCheckError(
                f"grid form changed consumer {c}'s consideration set"
            )
    return GridInstance(target, list(range(n)), list(range(m)))


@dataclass
class PriceLadder:
    epsilon: Fraction
    levels: list[Fraction]
    q: int


def build_ladder(
    instance: Instance, epsilon: Fraction, cap: int = DEFAULT_LADDER_CAP
) -> PriceLadder:
    """Levels 0, 1, (1+eps), ..., up to the smallest power >= max budget."""
    if epsilon <= 0:
        raise InputError("epsilon must be positive")
    bmax = max((c.budget for c in instance.consumers), default=Fraction(0))
    base = 1 + epsilon
    q = 0
    power = Fraction(1)
    while power < bmax:
        power *= base
        q += 1
        if q + 2 > cap:
            raise CapExceededError(f"price ladder exceeds {cap} levels")
    levels = [Fraction(0)]
    power = Fraction(1)
    for _ in range(q + 1):
        levels.append(power)
        power *= base
    return PriceLadder(epsilon, levels, q)


def _profile_push(profile: tuple, x: int, t: int) -> tuple:
    # pricing the new item at level t moves every frontier from t up
    return tuple(
        entry if t > u else max(entry, x)
        for u, entry in enumerate(profile)
    )


def _check_profile(profile: tuple) -> None:
    last = None
    seen_real = False
    for entry in profile:
        if entry < 0:
            if seen_real:
                raise InternalCheckError("profile sentinels are not a prefix")
            continue
        seen_real = True
        if last is not None and entry < last:
            raise InternalCheckError("profile frontiers are not monotone")
        last = entry


def qptas_uudp2(
    instance: Instance,
    epsilon: Fraction,
    profile_cap: int = DEFAULT_PROFILE_CAP,
    ladder_cap: int = DEFAULT_LADDER_CAP,
) -> Solution:
    """Cheapest-item pricing, exact over a geometric price ladder.

    Items are swept by descending second coordinate; the DP state after j
    items is, per ladder level, the rightmost item priced at or under that
    level.  Those frontiers decide every later consumer's payment: she
    pays the lowest level whose frontier reaches her, if she can afford
    it.  The top level needs no tracking since every item is priced at or
    under it.  Result equals full enumeration restricted to ladder prices.
    """
    if instance.model != UUDP_MIN:
        raise InputError("qptas_uudp2 handles the uudp-min model only")
    if instance.dimension != 2:
        raise InputError("qptas_uudp2 needs dimension 2")
    grid = grid_normalize(instance)
    g = grid.instance
    ladder = build_ladder(instance, epsilon, cap=ladder_cap)
    levels = ladder.levels
    q = ladder.q
    n = g.num_items
    if n == 0:
        return Solution(Fraction(0), [], "qptas-2d")

    order = sorted(range(n), key=lambda i: g.items[i][1], reverse=True)
    xs = [int(g.items[i][0]) for i in order]
    ys = [g.items[i][1] for i in order]

    # consumer at level j considers exactly the first j items in y
    by_level: list[list[Consumer]] = [[] for _ in range(n + 1)]
    for cons in g.consumers:
        level = sum(1 for y in ys if y >= cons.point[1])
        by_level[level].append(cons)

    plen = q + 1
    start = tuple([-1] * plen)
    layers: list[dict] = [{start: (Fraction(0), None)}]
    prefix_max_x = 0
    for jj in range(n):
        xj = xs[jj]
        prefix_max_x = max(prefix_max_x, xj)
        merged: dict = {}
        for prof in sorted(layers[-1]):
            val = layers[-1][prof][0]
            for t in range(q + 2):
                new_prof = _profile_push(prof, xj, t)
                cur = merged.get(new_prof)
                if cur is None or val > cur[0]:
                    merged[new_prof] = (val, (prof, t))
        if len(merged) > profile_cap:
            raise CapExceededError(
                f"{len(merged)} profiles exceed the cap {profile_cap}"
            )
        layer: dict = {}
        for prof, (val, back) in merged.items():
            _check_profile(prof)
            gain = Fraction(0)
            for cons in by_level[jj + 1]:
                cx = int(cons.point[0])
                for u in range(q + 2):
                    frontier = prof[u] if u <= q else prefix_max_x
                    if frontier >= cx:
                        if levels[u] <= cons.budget:
                            gain += levels[u]
                        break
            layer[prof] = (val + gain, back)
        layers.append(layer)

    best_prof = None
    best_val = None
    for prof in sorted(layers[-1]):
        val = layers[-1][prof][0]
        if best_val is None or val > best_val:
            best_val = val
            best_prof = prof

    choices = [0] * n
    prof = best_prof
    for jj in range(n, 0, -1):
        prev_prof, t = layers[jj][prof][1]
        choices[jj - 1] = t
        prof = prev_prof

    prices = [Fraction(0)] * n
    for jj, pos in enumerate(order):
        prices[pos] = levels[choices[jj]]
    check = evaluate_revenue(instance, prices)
    if check != best_val:
        raise InternalCheckError(
            f"profile DP revenue {best_val} does not re-evaluate ({check})"
        )
    return Solution(best_val, prices, "qptas-2d")


@dataclass
class TreeNode:
    lo: int
    hi: int
    line: int | None
    consumers: list[int]
    left: "TreeNode | None"
    right: "TreeNode | None"
    item: int | None


@dataclass
class PartitionTree:
    root: TreeNode
    grid: GridInstance


def build_partition_tree(grid: GridInstance) -> PartitionTree:
    """Balanced binary split of the grid items by column.

    A node splits its item-rank interval in half along the even column
    between the halves; consumers sitting exactly on that column stay at
    the node, everyone else descends by side.  Consumers left or right of
    all items descend to the outermost leaves.
    """
    g = grid.instance
    n = g.num_items
    if n == 0:
        raise InputError("partition tree needs at least one item")
    rank_to_item = {(int(g.items[i][0]) + 1) // 2: i for i in range(n)}

    def build(lo: int, hi: int, consumers: list[int]) -> TreeNode:
        if lo == hi:
            return TreeNode(lo, hi, None, consumers, None, None,
                            rank_to_item[lo])
        mid = (lo + hi) // 2
        line = 2 * mid
        here, to_left, to_right = [], [], []
        for c in consumers:
            x = int(g.consumers[c].point[0])
            if x == line:
                here.append(c)
            elif x < line:
                to_left.append(c)
            else:
                to_right.append(c)
        return TreeNode(
            lo, hi, line, here,
            build(lo, mid, to_left),
            build(mid + 1, hi, to_right),
            None,
        )

    root = build(1, n, list(range(g.num_consumers)))
    return PartitionTree(root, grid)


def _tree_nodes(node: TreeNode):
    yield node
    if node.left is not None:
        yield from _tree_nodes(node.left)
    if node.right is not None:
        yield from _tree_nodes(node.right)


def smp_special_case_dp(
    instance: Instance, state_cap: int = DEFAULT_TREE_CAP
) -> Solution:
    """Exact bundle pricing with budgets in {1, 2} and prices in {0, 1}.

    A consumer pays the count of price-1 items she considers when that
    count fits her budget, so only the top three price-1 items by height
    in any column strip ever matter.  The DP walks the partition tree
    choosing those top-three sets per strip; a consumer on a split column
    sums her counts across her own node's strip and the strips of
    ancestors she sits left of, which tile everything to her right.
    """
    if instance.model != SMP:
        raise InputError("smp_special_case_dp handles the smp model only")
    if instance.dimension != 2:
        raise InputError("smp_special_case_dp needs dimension 2")
    for c, cons in enumerate(instance.consumers):
        if cons.budget not in (Fraction(1), Fraction(2)):
            raise InputError(f"consumer {c} budget must be 1 or 2")
    n = instance.num_items
    if n == 0:
        return Solution(Fraction(0), [], "smp-dp")

    grid = grid_normalize(instance)
    g = grid.instance
    tree = build_partition_tree(grid)
    item_x = [int(pt[0]) for pt in g.items]
    item_y = [int(pt[1]) for pt in g.items]
    rank_to_item = {(x + 1) // 2: i for i, x in enumerate(item_x)}

    strip_items: dict[int, list[int]] = {}
    for node in _tree_nodes(tree.root):
        if node.line is not None:
            mid = node.line // 2
            members = [rank_to_item[r] for r in range(mid + 1, node.hi + 1)]
            members.sort(key=lambda i: item_y[i], reverse=True)
            strip_items[id(node)] = members

    def gammas(members: list[int]):
        for size in range(0, 4):
            yield from itertools.combinations(members, size)

    def allows_one(gamma: tuple, item: int) -> bool:
        # may this strip item carry price 1 under the strip's top-3 choice?
        if item in gamma:
            return True
        return len(gamma) == 3 and item_y[item] < item_y[gamma[2]]

    def count_at_least(gamma: tuple, cy: int) -> int:
        return sum(1 for i in gamma if item_y[i] >= cy)

    def payment(total: int, budget: Fraction) -> Fraction:
        if total == 1:
            return Fraction(1)
        if total == 2 and budget == 2:
            return Fraction(2)
        return Fraction(0)

    calls = 0

    def solve(node: TreeNode, rcontext: list, lgammas: list):
        nonlocal calls
        calls += 1
        if calls > state_cap:
            raise CapExceededError(
                f"partition-tree DP exceeded {state_cap} states"
            )
        if node.item is not None:
            pos = node.item
            forced_one = any(pos in gm for gm, _ in rcontext)
            forced_zero = any(
                pos in st and not allows_one(gm, pos) for gm, st in rcontext
            )
            if forced_one and forced_zero:
                return None
            options = (1,) if forced_one else (0,) if forced_zero else (0, 1)
            best = None
            for p in options:
                val = Fraction(0)
                for c in node.consumers:
                    cons = g.consumers[c]
                    cx, cy = int(cons.point[0]), int(cons.point[1])
                    total = sum(count_at_least(gm, cy) for gm in lgammas)
                    if p == 1 and item_x[pos] >= cx and item_y[pos] >= cy:
                        total += 1
                    val += payment(total, cons.budget)
                if best is None or val > best[0]:
                    best = (val, {pos: p})
            return best

        members = strip_items[id(node)]
        member_set = frozenset(members)
        best = None
        for gamma in gammas(members):
            ok = True
            for up_gamma, up_strip in rcontext:
                for member in gamma:
                    if not allows_one(up_gamma, member):
                        ok = False
                        break
                if not ok:
                    break
                for member in up_gamma:
                    if member in member_set and not allows_one(gamma, member):
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            node_val = Fraction(0)
            for c in node.consumers:
                cons = g.consumers[c]
                cy = int(cons.point[1])
                total = count_at_least(gamma, cy)
                total += sum(count_at_least(gm, cy) for gm in lgammas)
                node_val += payment(total, cons.budget)
            left = solve(node.left, rcontext, lgammas + [gamma])
            if left is None:
                continue
            right = solve(node.right, rcontext + [(gamma, member_set)], lgammas)
            if right is None:
                continue
            total_val = node_val + left[0] + right[0]
            if best is None or total_val > best[0]:
                best = (total_val, {**left[1], **right[1]})
        return best

    result = solve(tree.root, [], [])
    if result is None:
        raise InternalCheckError("partition-tree DP found no feasible pricing")
    value, price_map = result
    prices = [Fraction(price_map[i]) for i in range(n)]
    check = evaluate_revenue(instance, prices)
    if check != value:
        raise InternalCheckError(
            f"partition-tree DP revenue {value} does not re-evaluate ({check})"
        )
    return Solution(value, prices, "smp-dp")


@dataclass
class SmpPreprocess:
    instance: Instance
    scale: Fraction
    kept: list[int]
    degenerate: bool

    def prices_back(self, prices) -> list:
        return [
            p if p is EXCLUDED else p / self.scale
            for p in prices
        ]


def preprocess_smp(instance: Instance, epsilon: Fraction) -> SmpPreprocess:
    """Drop negligible-budget consumers and rescale budgets upward.

    Consumers with budget under eps * B_max / (m * n) can contribute at
    most an eps fraction of the optimum in total; after dropping them,
    budgets are multiplied by m * n / (eps * B_max) so every kept budget
    lies in [1, m * n / eps].  Prices found on the scaled instance map
    back by dividing by the same factor.
    """
    if instance.model != SMP:
        raise InputError("preprocess_smp handles the smp model only")
    if not (0 < epsilon < 1):
        raise InputError("epsilon must be in (0, 1)")
    m = instance.num_consumers
    n = instance.num_items
    bmax = max((c.budget for c in instance.consumers), default=Fraction(0))
    if m == 0 or n == 0 or bmax == 0:
        return SmpPreprocess(instance, Fraction(1), list(range(m)), True)
    cutoff = epsilon * bmax / (m * n)
    kept = [
        c for c in range(m) if instance.consumers[c].budget >= cutoff
    ]
    scale = Fraction(m * n) / (epsilon * bmax)
    scaled = Instance(
        dimension=instance.dimension,
        model=instance.model,
        items=list(instance.items),
        consumers=[
            Consumer(instance.consumers[c].point,
                     instance.consumers[c].budget * scale)
            for c in kept
        ],
    )
    for cons in scaled.consumers:
        if not (1 <= cons.budget <= Fraction(m * n) / epsilon):
            raise InternalCheckError("scaled budget left the intended range")
    return SmpPreprocess(scaled, scale, kept, False)
