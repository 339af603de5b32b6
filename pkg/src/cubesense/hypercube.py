"""Vertex sets of the Boolean cube Q_n and exact induced-subgraph kernels.

Conventions used everywhere in the package:

- A vertex is an ``int`` in ``[0, 2**n)``. Coordinate ``x_i`` (1-based) lives
  at bit ``i - 1``, so ``x_1`` is the least significant bit.
- Vertices render as strings ``x_1 x_2 ... x_n`` read left to right, so the
  string ``"100"`` is the vertex with ``x_1 = 1`` (index 1).
- A vertex set is a membership bitmap stored in a Python ``int``: bit ``v`` is
  set iff vertex ``v`` belongs to the set.

Degree and sensitivity queries are computed bit-parallel over the whole
bitmap, so they stay fast up to ``MAX_N``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional

import numpy as np

MAX_N = 25


class DimensionError(ValueError):
    """Raised for out-of-range dimensions, coordinates or mismatched cubes."""


class EmptySetError(ValueError):
    """Raised when a quantity is undefined on the empty vertex set."""


def check_dim(n: int, max_n: int = MAX_N) -> int:
    if not isinstance(n, int) or isinstance(n, bool):
        raise DimensionError(f"dimension must be an int, got {n!r}")
    if not 0 <= n <= max_n:
        raise DimensionError(f"dimension n={n} outside [0, {max_n}]")
    return n


def _check_coord(i: int, n: int) -> None:
    if not 1 <= i <= n:
        raise DimensionError(f"coordinate {i} outside [1, {n}]")


# ---------------------------------------------------------------------------
# bitmap helpers
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def full_bits(n: int) -> int:
    return (1 << (1 << n)) - 1


@lru_cache(maxsize=None)
def half_bits(n: int, i: int, b: int) -> int:
    """Bitmap of ``{x in Q_n : x_i = b}``."""
    s = 1 << (i - 1)
    # Repunit in base 2**(2s) times a block of s ones marks indices with bit i-1 clear.
    low = full_bits(n) // ((1 << (2 * s)) - 1) * ((1 << s) - 1)
    return low if b == 0 else full_bits(n) ^ low


def neighbor_bits(bits: int, n: int, i: int) -> int:
    """Bitmap ``N`` with ``N[v] = bits[v ^ e_i]`` (coordinate ``i`` is 1-based)."""
    s = 1 << (i - 1)
    low = half_bits(n, i, 0)
    return ((bits >> s) & low) | ((bits & low) << s)


def sliced_counts(planes: Iterable[int]) -> list[int]:
    """Add 0/1 bitmaps vertically; returns binary digits of the per-vertex sums, LSB first."""
    digits: list[int] = []
    for plane in planes:
        carry = plane
        for j, digit in enumerate(digits):
            if not carry:
                break
            digits[j], carry = digit ^ carry, digit & carry
        if carry:
            digits.append(carry)
    return digits


def count_equal(digits: list[int], value: int, universe: int) -> int:
    """Bitmap of vertices in ``universe`` whose sliced count equals ``value``."""
    if value >> len(digits):
        return 0
    out = universe
    for j, digit in enumerate(digits):
        out &= digit if (value >> j) & 1 else ~digit
        if not out:
            break
    return out


def bits_to_array(bits: int, n: int) -> np.ndarray:
    nbytes = max(1, (1 << n) // 8)
    raw = np.frombuffer(bits.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[: 1 << n].astype(bool)


def array_to_bits(arr: np.ndarray) -> int:
    packed = np.packbits(np.asarray(arr, dtype=np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


# ---------------------------------------------------------------------------
# vertices
# ---------------------------------------------------------------------------


def flip(v: int, i: int, n: int) -> int:
    """Return ``x^{(i)}``: ``v`` with coordinate ``i`` (1-based) negated."""
    _check_coord(i, n)
    if not 0 <= v < (1 << n):
        raise DimensionError(f"vertex {v} outside Q_{n}")
    return v ^ (1 << (i - 1))


def vertex_to_string(v: int, n: int) -> str:
    return "".join("1" if (v >> j) & 1 else "0" for j in range(n))


def vertex_from_string(text: str) -> int:
    if any(ch not in "01" for ch in text):
        raise ValueError(f"not a binary vertex string: {text!r}")
    return sum(1 << j for j, ch in enumerate(text) if ch == "1")


# ---------------------------------------------------------------------------
# vertex sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VertexSet:
    """An immutable subset of ``Q_n`` stored as a ``2**n``-bit membership bitmap."""

    n: int
    bits: int = 0

    def __post_init__(self) -> None:
        check_dim(self.n)
        if not 0 <= self.bits <= full_bits(self.n):
            raise DimensionError(f"bitmap does not fit Q_{self.n}")

    @classmethod
    def from_vertices(cls, n: int, vertices: Iterable[int]) -> "VertexSet":
        check_dim(n)
        bits = 0
        for v in vertices:
            if not 0 <= v < (1 << n):
                raise DimensionError(f"vertex {v} outside Q_{n}")
            bits |= 1 << v
        return cls(n, bits)

    @classmethod
    def from_strings(cls, strings: Iterable[str], n: Optional[int] = None) -> "VertexSet":
        strings = list(strings)
        if n is None:
            if not strings:
                raise ValueError("cannot infer n from an empty list")
            n = len(strings[0])
        for s in strings:
            if len(s) != n:
                raise DimensionError(f"vertex string {s!r} does not have length {n}")
        return cls.from_vertices(n, (vertex_from_string(s) for s in strings))

    @classmethod
    def full(cls, n: int) -> "VertexSet":
        return cls(n, full_bits(check_dim(n)))

    @classmethod
    def empty(cls, n: int) -> "VertexSet":
        return cls(n, 0)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def __contains__(self, v: int) -> bool:
        return 0 <= v < (1 << self.n) and bool((self.bits >> v) & 1)

    def __iter__(self) -> Iterator[int]:
        if self.n <= 12:
            bits = self.bits
            while bits:
                low = bits & -bits
                yield low.bit_length() - 1
                bits ^= low
        else:
            yield from (int(v) for v in np.flatnonzero(bits_to_array(self.bits, self.n)))

    def __or__(self, other: "VertexSet") -> "VertexSet":
        return set_algebra(self, other, "union")

    def __and__(self, other: "VertexSet") -> "VertexSet":
        return set_algebra(self, other, "intersection")

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        return set_algebra(self, other, "difference")

    def complement(self) -> "VertexSet":
        return VertexSet(self.n, full_bits(self.n) ^ self.bits)

    def to_strings(self) -> list[str]:
        return [vertex_to_string(v, self.n) for v in self]

    def __repr__(self) -> str:
        if len(self) <= 16:
            return f"VertexSet(n={self.n}, {{{', '.join(self.to_strings())}}})"
        return f"VertexSet(n={self.n}, size={len(self)})"


def _same_dim(x: VertexSet, y: VertexSet) -> None:
    if x.n != y.n:
        raise DimensionError(f"dimension mismatch: Q_{x.n} vs Q_{y.n}")


def set_algebra(x: VertexSet, y: VertexSet, op: str) -> VertexSet:
    """Union, intersection or difference of two vertex sets of the same cube."""
    _same_dim(x, y)
    if op == "union":
        return VertexSet(x.n, x.bits | y.bits)
    if op == "intersection":
        return VertexSet(x.n, x.bits & y.bits)
    if op == "difference":
        return VertexSet(x.n, x.bits & ~y.bits)
    raise ValueError(f"unknown set operation {op!r}")


def degree(v: int, s: VertexSet) -> int:
    """Number of neighbours of ``v`` inside ``s``; ``v`` must belong to ``s``."""
    if v not in s:
        raise ValueError(f"vertex {vertex_to_string(v, s.n) if 0 <= v < (1 << s.n) else v} not in set")
    return sum((s.bits >> (v ^ (1 << j))) & 1 for j in range(s.n))


def inner_degree_counts(s: VertexSet) -> list[int]:
    """Sliced per-vertex counts of in-set neighbours (see :func:`sliced_counts`)."""
    return sliced_counts(s.bits & neighbor_bits(s.bits, s.n, i) for i in range(1, s.n + 1))


def min_degree_over(s: VertexSet, where: int) -> int:
    """Minimum degree in ``s`` over members of ``s`` that also lie in bitmap ``where``."""
    domain = s.bits & where
    if not domain:
        raise EmptySetError("delta undefined on empty graph")
    digits = inner_degree_counts(s)
    for value in range(s.n + 1):
        if count_equal(digits, value, domain):
            return value
    raise AssertionError("unreachable: every vertex has degree at most n")


def min_degree(s: VertexSet) -> int:
    """delta(G) of the graph induced by ``s``."""
    if not s:
        raise EmptySetError("delta undefined on empty graph")
    return min_degree_over(s, s.bits)


def set_sensitivity(s: VertexSet) -> int:
    """Maximum number of boundary edges at a member, ``n - delta``."""
    return s.n - min_degree(s)


def is_irreducible(s: VertexSet) -> bool:
    """True iff ``s`` meets both halves ``x_i = 0`` and ``x_i = 1`` for every ``i``."""
    if not s:
        return False
    return all(
        s.bits & half_bits(s.n, i, b) for i in range(1, s.n + 1) for b in (0, 1)
    )


def half_restrict(s: VertexSet, i: int, b: int) -> VertexSet:
    """Project ``s ∩ {x_i = b}`` onto the other coordinates, a subset of Q_{n-1}."""
    _check_coord(i, s.n)
    if b not in (0, 1):
        raise ValueError(f"bit must be 0 or 1, got {b!r}")
    arr = bits_to_array(s.bits, s.n).reshape(-1, 2, 1 << (i - 1))
    return VertexSet(s.n - 1, array_to_bits(arr[:, b, :].ravel()))


# ---------------------------------------------------------------------------
# subcubes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Subcube:
    """Vertices of ``Q_n`` agreeing with ``fixed_values`` on the positions in ``fixed_mask``.

    Both masks are n-bit vertex-style masks (bit ``i - 1`` is coordinate ``x_i``).
    """

    n: int
    fixed_mask: int = 0
    fixed_values: int = 0

    def __post_init__(self) -> None:
        check_dim(self.n)
        if not 0 <= self.fixed_mask < (1 << self.n):
            raise DimensionError(f"fixed mask does not fit Q_{self.n}")
        if self.fixed_values & ~self.fixed_mask:
            raise ValueError("fixed_values has bits outside fixed_mask")

    @classmethod
    def fixing(cls, n: int, assignment: dict[int, int]) -> "Subcube":
        """Build from a ``{coordinate: bit}`` map with 1-based coordinates."""
        mask = values = 0
        for i, b in assignment.items():
            _check_coord(i, n)
            mask |= 1 << (i - 1)
            if b:
                values |= 1 << (i - 1)
        return cls(n, mask, values)

    @property
    def dimension(self) -> int:
        return self.n - self.fixed_mask.bit_count()

    def vertices(self) -> VertexSet:
        return subcube_vertices(self)

    def __contains__(self, v: int) -> bool:
        return v & self.fixed_mask == self.fixed_values


def subcube_vertices(c: Subcube) -> VertexSet:
    bits = full_bits(c.n)
    for j in range(c.n):
        if (c.fixed_mask >> j) & 1:
            bits &= half_bits(c.n, j + 1, (c.fixed_values >> j) & 1)
    return VertexSet(c.n, bits)


def are_adjacent(c1: Subcube, c2: Subcube) -> bool:
    if c1.n != c2.n:
        raise DimensionError(f"dimension mismatch: Q_{c1.n} vs Q_{c2.n}")
    return c1.fixed_mask == c2.fixed_mask and (c1.fixed_values ^ c2.fixed_values).bit_count() == 1


def as_subcube(s: VertexSet) -> Optional[Subcube]:
    """The subcube whose vertex set is exactly ``s``, or ``None``."""
    if not s:
        return None
    mask = values = 0
    for j in range(s.n):
        if not s.bits & half_bits(s.n, j + 1, 1):
            mask |= 1 << j
        elif not s.bits & half_bits(s.n, j + 1, 0):
            mask |= 1 << j
            values |= 1 << j
    if len(s) != 1 << (s.n - mask.bit_count()):
        return None
    return Subcube(s.n, mask, values)
