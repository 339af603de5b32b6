"""The hyperoctahedral group acting on Q_n, and canonical orbit representatives."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Optional

import numpy as np

from .hypercube import DimensionError, VertexSet, check_dim

CANONICAL_MAX_N = 6


@dataclass(frozen=True)
class Automorphism:
    """``v -> P(v) XOR flips`` where coordinate ``j`` of ``v`` moves to position ``perm[j]``.

    ``perm`` is a 0-based permutation tuple of length n; ``flips`` an n-bit mask.
    """

    perm: tuple[int, ...]
    flips: int = 0

    def __post_init__(self) -> None:
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError(f"not a permutation: {self.perm}")
        if not 0 <= self.flips < (1 << len(self.perm)):
            raise ValueError("flip mask does not fit n bits")

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> "Automorphism":
        return cls(tuple(range(n)), 0)

    @classmethod
    def random(cls, n: int, rng: random.Random) -> "Automorphism":
        perm = list(range(n))
        rng.shuffle(perm)
        return cls(tuple(perm), rng.randrange(1 << n))

    def __call__(self, v: int) -> int:
        out = 0
        for j, target in enumerate(self.perm):
            out |= ((v >> j) & 1) << target
        return out ^ self.flips

    def compose(self, other: "Automorphism") -> "Automorphism":
        """``self ∘ other``: apply ``other`` first."""
        if other.n != self.n:
            raise DimensionError("automorphisms of different cubes")
        perm = tuple(self.perm[other.perm[j]] for j in range(self.n))
        return Automorphism(perm, self(other.flips))

    def inverse(self) -> "Automorphism":
        inv = [0] * self.n
        for j, target in enumerate(self.perm):
            inv[target] = j
        g = Automorphism(tuple(inv), 0)
        return Automorphism(g.perm, g(self.flips))


def apply_automorphism(g: Automorphism, s: VertexSet) -> VertexSet:
    if g.n != s.n:
        raise DimensionError(f"automorphism of Q_{g.n} applied to a subset of Q_{s.n}")
    return VertexSet.from_vertices(s.n, (g(v) for v in s))


def group_elements(n: int):
    """All ``2**n * n!`` automorphisms in a fixed order."""
    for perm in permutations(range(n)):
        for flips in range(1 << n):
            yield Automorphism(perm, flips)


@lru_cache(maxsize=None)
def vertex_permutation_table(n: int) -> np.ndarray:
    """Array ``T`` of shape ``(2**n * n!, 2**n)`` with ``T[g, v] = g(v)``."""
    if not 0 <= n <= CANONICAL_MAX_N:
        raise DimensionError(f"canonical forms are limited to n <= {CANONICAL_MAX_N}")
    verts = np.arange(1 << n, dtype=np.int64)
    rows = []
    for perm in permutations(range(n)):
        moved = np.zeros_like(verts)
        for j, target in enumerate(perm):
            moved |= ((verts >> j) & 1) << target
        rows.append(moved[None, :] ^ np.arange(1 << n, dtype=np.int64)[:, None])
    table = np.concatenate(rows, axis=0) if rows else verts[None, :]
    table.setflags(write=False)
    return table


def orbit_images(s: VertexSet, table: Optional[np.ndarray] = None) -> np.ndarray:
    """Bitmaps (as uint64) of ``g(s)`` for every group element, in table order."""
    if table is None:
        table = vertex_permutation_table(s.n)
    members = np.fromiter(iter(s), dtype=np.int64)
    if members.size == 0:
        return np.zeros(table.shape[0], dtype=np.uint64)
    images = np.left_shift(np.uint64(1), table[:, members].astype(np.uint64))
    return np.bitwise_or.reduce(images, axis=1)


def canonical_form(s: VertexSet) -> VertexSet:
    """Orbit representative with the smallest bitmap read as a ``2**n``-bit integer."""
    if s.n > CANONICAL_MAX_N:
        raise DimensionError(f"canonical forms are limited to n <= {CANONICAL_MAX_N}, got {s.n}")
    return VertexSet(s.n, int(orbit_images(s).min()))
