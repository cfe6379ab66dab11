"""Exact values of l(k), the length of the longest binary word with no
abelian square of order >= k, with the lexicographically least witness of
that length.  Rows 11..13 are lower bounds only and carry no witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .words import BinaryWord, parse_word


@dataclass(frozen=True)
class KnownValue:
    k: int
    length: int
    witness: Optional[BinaryWord]
    exact: bool = True


_EXACT = {
    1: "010",
    2: "0011100011",
    3: "000011111000001111",
    4: "00000011111110000000111111",
    5: "0000000011111111100000000011111111",
    6: "000000000011111111111000000000001111111111",
    7: "00000000000001000001100001111001111101111111111111",
    8: "00000000000000010000100100011001100111011011110111111111111111",
    9: """00000000000000000100000001100100001110100011110110011111110111
          11111111111111""",
    10: """00000000000000000001000000100100000110101000011110101001111101
           1011111101111111111111111111""",
}

_LOWER_BOUNDS = {11: 106, 12: 124, 13: 139}

EXACT_LENGTHS = {1: 3, 2: 10, 3: 18, 4: 26, 5: 34, 6: 42, 7: 50, 8: 62, 9: 76, 10: 90}


def _build() -> dict[int, KnownValue]:
    table = {}
    for k, text in _EXACT.items():
        w = parse_word(text)
        if len(w) != EXACT_LENGTHS[k]:
            raise AssertionError(f"witness for k={k} has length {len(w)}")
        table[k] = KnownValue(k, len(w), w)
    for k, bound in _LOWER_BOUNDS.items():
        table[k] = KnownValue(k, bound, None, exact=False)
    return table


KNOWN_VALUES: dict[int, KnownValue] = _build()


def known_exact(k: int) -> Optional[KnownValue]:
    row = KNOWN_VALUES.get(k)
    return row if row is not None and row.exact else None
