"""Binary words and their lattice-path (prefix-sum) representation."""

from __future__ import annotations

from itertools import accumulate
from typing import Iterable, Iterator, Union

_WHITESPACE = frozenset(" \t\r\n")


class WordParseError(ValueError):
    """Raised when text contains something other than '0', '1' or whitespace."""

    def __init__(self, position: int, char: str):
        self.position = position
        self.char = char
        super().__init__(f"invalid character {char!r} at position {position}")


class BinaryWord:
    """An immutable finite word over {0, 1}.

    Letters are stored as a ``bytes`` object holding the values 0 and 1, so
    indexing is O(1) and comparison is lexicographic with 0 < 1.  Python
    indexing (``w[0]``) is 0-based; :meth:`letter` gives the 1-based view
    used for every reported position.
    """

    __slots__ = ("_bits",)

    def __init__(self, letters: Iterable[int] = ()):
        bits = bytes(letters)
        if bits.translate(None, b"\x00\x01"):
            raise ValueError("letters must all be 0 or 1")
        self._bits = bits

    @classmethod
    def _trusted(cls, bits: bytes) -> "BinaryWord":
        w = cls.__new__(cls)
        w._bits = bits
        return w

    @property
    def bits(self) -> bytes:
        return self._bits

    def letter(self, i: int) -> int:
        """Return w[i] with 1-based ``i``."""
        if not 1 <= i <= len(self._bits):
            raise IndexError(f"position {i} outside 1..{len(self._bits)}")
        return self._bits[i - 1]

    def ones(self) -> int:
        return self._bits.count(1)

    def complement(self) -> "BinaryWord":
        return BinaryWord._trusted(self._bits.translate(_FLIP))

    def __len__(self) -> int:
        return len(self._bits)

    def __iter__(self) -> Iterator[int]:
        return iter(self._bits)

    def __getitem__(self, index: Union[int, slice]):
        if isinstance(index, slice):
            return BinaryWord._trusted(self._bits[index])
        return self._bits[index]

    def __add__(self, other: "BinaryWord") -> "BinaryWord":
        if not isinstance(other, BinaryWord):
            return NotImplemented
        return BinaryWord._trusted(self._bits + other._bits)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, BinaryWord):
            return self._bits == other._bits
        return NotImplemented

    def __lt__(self, other: "BinaryWord") -> bool:
        return self._bits < other._bits

    def __le__(self, other: "BinaryWord") -> bool:
        return self._bits <= other._bits

    def __hash__(self) -> int:
        return hash(self._bits)

    def __str__(self) -> str:
        return serialize_word(self)

    def __repr__(self) -> str:
        return f"BinaryWord({serialize_word(self)!r})"


_FLIP = bytes.maketrans(b"\x00\x01", b"\x01\x00")
_TO_TEXT = bytes.maketrans(b"\x00\x01", b"01")


class LatticePath:
    """Prefix sums S_0..S_t of a word, i.e. the points (i, S_i).

    A 0 is an east step and a 1 a northeast step, so S_i counts the ones
    among the first i letters.
    """

    __slots__ = ("_sums",)

    def __init__(self, sums: Iterable[int]):
        sums = tuple(sums)
        if not sums or sums[0] != 0:
            raise ValueError("a lattice path starts at S_0 = 0")
        if any(b - a not in (0, 1) for a, b in zip(sums, sums[1:])):
            raise ValueError("lattice path steps must be 0 or 1")
        self._sums = sums

    @classmethod
    def _trusted(cls, sums: Iterable[int]) -> "LatticePath":
        path = cls.__new__(cls)
        path._sums = tuple(sums)
        return path

    @property
    def sums(self) -> tuple[int, ...]:
        return self._sums

    @property
    def points(self) -> list[tuple[int, int]]:
        return list(enumerate(self._sums))

    def __len__(self) -> int:
        return len(self._sums)

    def __getitem__(self, i: int) -> int:
        return self._sums[i]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LatticePath):
            return self._sums == other._sums
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._sums)

    def __repr__(self) -> str:
        return f"LatticePath({self._sums!r})"

    def ones_between(self, m: int, n: int) -> int:
        """Number of ones in w[m..n] (1-based, inclusive)."""
        return self._sums[n] - self._sums[m - 1]

    def word(self) -> BinaryWord:
        return BinaryWord._trusted(bytes(b - a for a, b in zip(self._sums, self._sums[1:])))


def parse_word(text: str) -> BinaryWord:
    """Read a word from '0'/'1' characters, skipping ASCII whitespace.

    Error positions are 1-based character offsets into ``text``.
    """
    out = bytearray()
    for pos, ch in enumerate(text, start=1):
        if ch == "0":
            out.append(0)
        elif ch == "1":
            out.append(1)
        elif ch not in _WHITESPACE:
            raise WordParseError(pos, ch)
    return BinaryWord._trusted(bytes(out))


def serialize_word(w: BinaryWord) -> str:
    return w.bits.translate(_TO_TEXT).decode("ascii")


def prefix_sums(w: BinaryWord) -> LatticePath:
    return LatticePath._trusted(accumulate(w.bits, initial=0))


def as_word(w: Union[BinaryWord, str]) -> BinaryWord:
    """Accept either a BinaryWord or its '0'/'1' text."""
    if isinstance(w, BinaryWord):
        return w
    return parse_word(w)
