"""Exact comparisons against rational powers of an integer base.

Thresholds of the form n^(p/q) show up in the decomposition and in the
sampling split.  Comparing an integer a against n^(p/q) is done without
floating point: a <= n^(p/q) iff a^q <= n^p.  ExactPow wraps one such value
and answers scaled comparisons exactly.
"""

from __future__ import annotations

from fractions import Fraction


def ceil_rat_pow(n: int, num: int, den: int) -> int:
    """Smallest integer k >= 0 with k^den >= n^num; i.e. ceil(n^(num/den)).

    Requires n >= 0, num >= 0, den >= 1.
    """
    if n < 0 or num < 0 or den < 1:
        raise ValueError("ceil_rat_pow needs n >= 0, num >= 0, den >= 1")
    if n == 0:
        return 0 if num > 0 else 1
    target = n ** num
    lo, hi = 0, 1
    while hi ** den < target:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** den >= target:
            hi = mid
        else:
            lo = mid + 1
    return lo


class ExactPow:
    """The value base^(num/den), compared exactly via integer powers."""

    __slots__ = ("base", "num", "den")

    def __init__(self, base: int, num: int, den: int):
        if base < 1 or den < 1:
            raise ValueError("ExactPow needs base >= 1, den >= 1")
        self.base = base
        self.num = num
        self.den = den

    def ge_scaled(self, a: int, b: int) -> bool:
        """a >= b * base^(num/den), exactly.  Requires a, b >= 0."""
        if a < 0 or b < 0:
            raise ValueError("ge_scaled compares nonnegative integers")
        if self.num >= 0:
            return a ** self.den >= (b ** self.den) * (self.base ** self.num)
        return (a ** self.den) * (self.base ** (-self.num)) >= b ** self.den

    def le_int(self, a: int) -> bool:
        """base^(num/den) <= a, exactly.  Requires a >= 0."""
        return self.ge_scaled(a, 1)

    def ge_int(self, a: int) -> bool:
        """base^(num/den) >= a, exactly.  Requires a >= 0."""
        if a < 0:
            raise ValueError("ge_int compares nonnegative integers")
        if self.num >= 0:
            return self.base ** self.num >= a ** self.den
        return 1 >= (a ** self.den) * (self.base ** (-self.num))

    def __float__(self) -> float:
        return float(self.base) ** (self.num / self.den)

    def __repr__(self) -> str:
        return f"ExactPow({self.base}^({self.num}/{self.den}))"


def int_le_pow(a: int, n: int, exp: Fraction) -> bool:
    """a <= n^exp for integer a, n >= 1 and nonnegative rational exp."""
    p, q = exp.numerator, exp.denominator
    if p < 0:
        raise ValueError("int_le_pow needs a nonnegative exponent")
    return a ** q <= n ** p
