"""Pure-Python enumeration kernel.

Same contract as the compiled module: walk every assignment of candidate
price indices (item 0 slowest), score it on scaled-integer data, and keep
the first assignment reaching the maximum revenue, which is the
lexicographically smallest argmax.  Integers are unbounded here, so this
backend also serves oversized inputs the compiled kernel must refuse.
"""

from __future__ import annotations


def enumerate_best(
    num_items: int,
    cand_counts: list[int],
    cand_prices: list[int],
    consumer_masks: list[int],
    budgets: list[int],
    model_flag: int,
) -> tuple[int, list[int]]:
    """Best (revenue, candidate-index vector) over the full grid.

    ``cand_prices`` is item-major flat; ``model_flag`` 0 buys the cheapest
    considered item, 1 buys the whole considered bundle.  Every item needs
    at least one candidate.
    """
    n = num_items
    if len(cand_counts) != n:
        raise ValueError("cand_counts length mismatch")
    if any(c < 1 for c in cand_counts):
        raise ValueError("every item needs at least one candidate price")
    if len(consumer_masks) != len(budgets):
        raise ValueError("consumer_masks and budgets length mismatch")
    if n == 0:
        return 0, []

    offsets = [0] * n
    acc = 0
    for i in range(n):
        offsets[i] = acc
        acc += cand_counts[i]
    if acc != len(cand_prices):
        raise ValueError("cand_prices length mismatch")

    cons = [
        (tuple(i for i in range(n) if (mask >> i) & 1), b)
        for mask, b in zip(consumer_masks, budgets)
    ]

    choice = [0] * n
    cur = [cand_prices[offsets[i]] for i in range(n)]
    best_rev = -1
    best_choice = list(choice)
    min_model = model_flag == 0

    while True:
        rev = 0
        for idxs, budget in cons:
            if min_model:
                cheapest = -1
                for i in idxs:
                    p = cur[i]
                    if cheapest < 0 or p < cheapest:
                        cheapest = p
                if 0 <= cheapest <= budget:
                    rev += cheapest
            else:
                if not idxs:
                    continue
                total = 0
                for i in idxs:
                    total += cur[i]
                if total <= budget:
                    rev += total
        if rev > best_rev:
            best_rev = rev
            best_choice = list(choice)

        i = n - 1
        while i >= 0:
            choice[i] += 1
            if choice[i] < cand_counts[i]:
                cur[i] = cand_prices[offsets[i] + choice[i]]
                break
            choice[i] = 0
            cur[i] = cand_prices[offsets[i]]
            i -= 1
        else:
            break

    return best_rev, best_choice
