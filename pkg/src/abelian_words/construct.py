"""Explicit abelian-square-avoiding words and the length bounds around them.

Everything is evaluated in exact integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .known import KNOWN_VALUES
from .words import BinaryWord


def _check_positive(name: str, value: int) -> None:
    if not isinstance(value, int) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")


@dataclass(frozen=True)
class QuadraticProfile:
    """The sequence a_i = floor(i^2 / (2q(q+1))).

    Consecutive differences stay in {0, 1} up to i = q(q+1), so they spell
    out a binary word whose lattice path hugs a parabola.
    """

    q: int

    def __post_init__(self):
        _check_positive("q", self.q)

    @property
    def denominator(self) -> int:
        return 2 * self.q * (self.q + 1)

    @property
    def length(self) -> int:
        return self.q * (self.q + 1)

    def value(self, i: int) -> int:
        return i * i // self.denominator

    def values(self, horizon: Optional[int] = None) -> list[int]:
        if horizon is None:
            horizon = self.length
        d = self.denominator
        return [i * i // d for i in range(horizon + 1)]

    def step(self, i: int) -> int:
        """a_i - a_{i-1}."""
        return self.value(i) - self.value(i - 1)

    def extension_end(self) -> int:
        """Largest n such that every step a_j - a_{j-1}, j <= n, is 0 or 1."""
        n = self.length
        while self.step(n + 1) <= 1:
            n += 1
        return n

    def extension_cap(self) -> int:
        """ceil(sqrt(2q(q+1))): the most letters the extension can add."""
        return ceil_sqrt(self.denominator)

    def word(self, n: Optional[int] = None) -> BinaryWord:
        if n is None:
            n = self.length
        a = self.values(n)
        steps = bytes(y - x for x, y in zip(a, a[1:]))
        return BinaryWord(steps)


def ceil_sqrt(n: int) -> int:
    root = math.isqrt(n)
    return root if root * root == n else root + 1


def quadratic_word(q: int) -> BinaryWord:
    """Word of length q(q+1) with no abelian square of order r, r^2 >= 2q(q+1)."""
    return QuadraticProfile(q).word()


def extend_quadratic_word(q: int) -> BinaryWord:
    """Continue :func:`quadratic_word` with the same formula until the
    profile first jumps by 2."""
    profile = QuadraticProfile(q)
    return profile.word(profile.extension_end())


def avoidance_threshold(q: int) -> int:
    """Least order r with r^2 >= 2q(q+1); the quadratic word has no square
    of this order or more."""
    _check_positive("q", q)
    return ceil_sqrt(2 * q * (q + 1))


def simple_word(k: int) -> BinaryWord:
    """0^(2k-2) 1^(2k-1) 0^(2k-1) 1^(2k-2), of length 8k - 6."""
    _check_positive("k", k)
    return BinaryWord(
        [0] * (2 * k - 2) + [1] * (2 * k - 1) + [0] * (2 * k - 1) + [1] * (2 * k - 2)
    )


def best_q_for(k: int) -> int:
    """Largest q >= 0 with 2q(q+1) <= k^2.

    2q^2 + 2q <= k^2 is equivalent to (2q+1)^2 <= 2k^2 + 1, so an integer
    square root settles it without rounding trouble.
    """
    _check_positive("k", k)
    return (math.isqrt(2 * k * k + 1) - 1) // 2


def best_q_closed_form(k: int) -> int:
    """Floating-point floor((sqrt(1 + 2k^2) - 1) / 2), kept for comparison."""
    return int(math.floor((math.sqrt(1 + 2 * k * k) - 1) / 2))


def corollary_lower_bound(k: int) -> float:
    """k^2/2 - sqrt(2) k, which the quadratic length strictly exceeds."""
    return k * k / 2 - math.sqrt(2) * k


@dataclass(frozen=True)
class BoundReport:
    k: int
    simple_length: int
    best_q: int
    quadratic_length: int
    extended_length: int
    ejs_upper: int
    known_l: Optional[int]

    def row(self) -> list:
        return [
            self.k,
            self.simple_length,
            self.best_q,
            self.quadratic_length,
            self.extended_length,
            self.ejs_upper,
            self.known_l,
        ]


def bound_report(k: int) -> BoundReport:
    q = best_q_for(k)
    if q >= 1:
        quadratic_length = q * (q + 1)
        extended_length = QuadraticProfile(q).extension_end()
    else:
        quadratic_length = extended_length = 0
    known = KNOWN_VALUES.get(k)
    return BoundReport(
        k=k,
        simple_length=8 * k - 6,
        best_q=q,
        quadratic_length=quadratic_length,
        extended_length=extended_length,
        ejs_upper=k * k + 6 * k,
        known_l=known.length if known is not None and known.exact else None,
    )
