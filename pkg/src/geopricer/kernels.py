"""Kernel backend selection.

The compiled enumeration kernel is used when it imported successfully and
the scaled integers fit comfortably in int64; otherwise the pure-Python
twin runs the same contract with unbounded integers.  ``BACKEND`` names
what the import found; ``backend=`` forces a choice (for benchmarks and
crosschecks).
"""

from __future__ import annotations

from . import _enumeration_py

try:
    from . import _enumeration  # type: ignore[attr-defined]

    BACKEND = "compiled"
except ImportError:  # pragma: no cover - depends on the build environment
    _enumeration = None
    BACKEND = "python"

INT64_LIMIT = 2 ** 62


def fits_compiled(num_items: int, cand_prices, budgets) -> bool:
    """Whether the compiled kernel's int64 arithmetic is safe.

    Revenue is at most the sum of budgets in either model, so that sum
    (and every scaled price) must stay under 2**62.
    """
    if num_items > 64:
        return False
    if any(p >= INT64_LIMIT for p in cand_prices):
        return False
    if sum(budgets) >= INT64_LIMIT:
        return False
    return True


def enumerate_best(
    num_items: int,
    cand_counts: list[int],
    cand_prices: list[int],
    consumer_masks: list[int],
    budgets: list[int],
    model_flag: int,
    backend: str | None = None,
) -> tuple[int, list[int]]:
    if backend is None:
        use_compiled = (
            _enumeration is not None
            and fits_compiled(num_items, cand_prices, budgets)
        )
    elif backend == "compiled":
        if _enumeration is None:
            raise RuntimeError("compiled kernel is not available")
        use_compiled = True
    elif backend == "python":
        use_compiled = False
    else:
        raise ValueError(f"unknown backend {backend!r}")
    impl = _enumeration if use_compiled else _enumeration_py
    return impl.enumerate_best(
        num_items, cand_counts, cand_prices, consumer_masks, budgets, model_flag
    )
