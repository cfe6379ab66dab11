"""Abelian-square detection on binary words.

A window w[i+1..i+2r] is an abelian square exactly when the lattice points
(i, S_i), (i+r, S_{i+r}), (i+2r, S_{i+2r}) are collinear, i.e. when
S_i - 2 S_{i+r} + S_{i+2r} == 0.  Orders are always half-lengths r.
"""

from __future__ import annotations

from typing import Literal, NamedTuple, Union

import numpy as np

from .words import BinaryWord, as_word

WordLike = Union[BinaryWord, str]


class CheckerStateError(RuntimeError):
    pass


class Occurrence(NamedTuple):
    """An abelian square occupying w[start .. start + 2*order - 1] (1-based).

    Tuple ordering sorts occurrences by (start, order).
    """

    start: int
    order: int

    @property
    def end(self) -> int:
        return self.start + 2 * self.order - 1

    def lattice_points(self, sums) -> list[tuple[int, int]]:
        """The three equally spaced collinear points marking this square."""
        i, r = self.start - 1, self.order
        return [(j, int(sums[j])) for j in (i, i + r, i + 2 * r)]

    def to_json(self) -> dict:
        return {"start": self.start, "order": self.order}


def _check_min_order(min_order: int) -> None:
    if min_order < 1:
        raise ValueError(f"min_order must be >= 1, got {min_order}")


def is_abelian_square(w: WordLike) -> bool:
    w = as_word(w)
    n = len(w)
    if n == 0 or n % 2:
        return False
    half = n // 2
    return w.bits.count(1, 0, half) == w.bits.count(1, half)


def _sums_array(w: BinaryWord) -> np.ndarray:
    sums = np.zeros(len(w) + 1, dtype=np.int64)
    np.cumsum(np.frombuffer(w.bits, dtype=np.uint8), out=sums[1:])
    return sums


def find_occurrences(
    w: WordLike, min_order: int = 1, mode: Literal["first", "all"] = "all"
) -> list[Occurrence]:
    """Abelian squares of order >= ``min_order``, sorted by (start, order).

    With ``mode="first"`` at most one occurrence is returned: the one with
    the smallest start, ties broken by the smallest order.
    """
    _check_min_order(min_order)
    if mode not in ("first", "all"):
        raise ValueError(f"mode must be 'first' or 'all', got {mode!r}")
    w = as_word(w)
    n = len(w)
    if n < 2 * min_order:
        return []
    s = _sums_array(w)
    starts, orders = [], []
    for r in range(min_order, n // 2 + 1):
        m = n - 2 * r + 1
        hits = np.flatnonzero(s[:m] - 2 * s[r : r + m] + s[2 * r : 2 * r + m] == 0)
        if hits.size:
            if mode == "first":
                # hits ascend, so each order contributes only its first start
                hits = hits[:1]
            starts.append(hits + 1)
            orders.append(np.full(hits.size, r))
    if not starts:
        return []
    starts = np.concatenate(starts)
    orders = np.concatenate(orders)
    perm = np.lexsort((orders, starts))
    if mode == "first":
        perm = perm[:1]
    return list(map(Occurrence._make, zip(starts[perm].tolist(), orders[perm].tolist())))


def max_order(w: WordLike) -> int:
    """Largest order of an abelian square inside ``w``; 0 if there is none."""
    w = as_word(w)
    n = len(w)
    if n < 2:
        return 0
    s = _sums_array(w)
    for r in range(n // 2, 0, -1):
        m = n - 2 * r + 1
        if np.any(s[: m] - 2 * s[r : r + m] + s[2 * r : 2 * r + m] == 0):
            return r
    return 0


def naive_find_occurrences(w: WordLike, min_order: int = 1) -> list[Occurrence]:
    """Reference detector: recounts both halves of every window directly."""
    _check_min_order(min_order)
    bits = as_word(w).bits
    n = len(bits)
    out = []
    for i in range(n):
        for r in range(min_order, (n - i) // 2 + 1):
            if bits.count(1, i, i + r) == bits.count(1, i + r, i + 2 * r):
                out.append(Occurrence(i + 1, r))
    return out


class IncrementalChecker:
    """Push/pop checker that only looks at squares ending at the last letter.

    Each :meth:`push` appends a letter and reports whether the new word has
    an abelian square of order >= ``min_order`` ending at its final
    position.  A DFS that pops on every blocked push therefore only ever
    holds avoiders.
    """

    def __init__(self, min_order: int, word: WordLike = ""):
        _check_min_order(min_order)
        self.min_order = min_order
        self._letters: list[int] = []
        self._sums: list[int] = [0]
        for b in as_word(word):
            self.push(b)

    def push(self, b: int) -> bool:
        if b not in (0, 1):
            raise ValueError(f"letter must be 0 or 1, got {b!r}")
        sums = self._sums
        top = sums[-1] + b
        self._letters.append(b)
        sums.append(top)
        n = len(self._letters)
        for r in range(self.min_order, n // 2 + 1):
            if top - 2 * sums[n - r] + sums[n - 2 * r] == 0:
                return True
        return False

    def pop(self) -> int:
        if not self._letters:
            raise CheckerStateError("pop from an empty checker")
        self._sums.pop()
        return self._letters.pop()

    @property
    def word(self) -> BinaryWord:
        return BinaryWord(self._letters)

    @property
    def sums(self) -> tuple[int, ...]:
        return tuple(self._sums)

    def __len__(self) -> int:
        return len(self._letters)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IncrementalChecker):
            return NotImplemented
        return (
            self.min_order == other.min_order
            and self._letters == other._letters
            and self._sums == other._sums
        )

    def __repr__(self) -> str:
        return f"IncrementalChecker(min_order={self.min_order}, word={str(self.word)!r})"
