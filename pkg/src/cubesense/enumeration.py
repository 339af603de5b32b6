"""Vectorised statistics for every subset of Q_n, n <= 4.

Subsets are indexed by their bitmap, so row ``m`` of every column describes
``VertexSet(n, m)``. Work is split into fixed chunks; the worker count only
changes who computes a chunk, never the chunk boundaries, so results are
identical for any number of workers.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .hypercube import DimensionError, VertexSet, half_bits

EXHAUSTIVE_MAX_N = 4
CHUNK = 4096


@dataclass(frozen=True)
class SubsetTable:
    n: int
    size: np.ndarray
    min_degree: np.ndarray  # -1 on the empty set
    irreducible: np.ndarray
    subcube_dim: np.ndarray  # -1 unless the set is exactly a subcube
    g0_min_degree: np.ndarray  # min degree over members with x_1 = 0, -1 if none

    @property
    def count(self) -> int:
        return self.size.shape[0]

    def vertex_set(self, mask: int) -> VertexSet:
        return VertexSet(self.n, int(mask))


def _chunk_stats(n: int, start: int, stop: int) -> tuple[np.ndarray, ...]:
    nv = 1 << n
    masks = np.arange(start, stop, dtype=np.uint32)
    member = np.stack([(masks >> np.uint32(v)) & np.uint32(1) for v in range(nv)]).astype(np.int8)
    deg = np.zeros_like(member)
    for j in range(n):
        deg += member[np.arange(nv) ^ (1 << j)]
    inf = np.int8(n + 1)
    masked = np.where(member == 1, deg, inf)
    size = member.sum(axis=0, dtype=np.int16)

    min_deg = masked.min(axis=0).astype(np.int8)
    min_deg[size == 0] = -1
    g0 = masked[0::2].min(axis=0).astype(np.int8) if nv > 1 else np.full(masks.shape, inf, np.int8)
    g0[g0 == inf] = -1

    irreducible = size > 0
    agree = np.zeros(masks.shape, dtype=np.int8)
    for i in range(1, n + 1):
        zero_half = (masks & np.uint32(half_bits(n, i, 0))) != 0
        one_half = (masks & np.uint32(half_bits(n, i, 1))) != 0
        irreducible &= zero_half & one_half
        agree += (~zero_half | ~one_half).astype(np.int8)
    free = n - agree
    is_cube = (size > 0) & (size == (np.int16(1) << free.astype(np.int16)))
    subcube_dim = np.where(is_cube, free, -1).astype(np.int8)
    return size, min_deg, irreducible, subcube_dim, g0


def build_subset_table(
    n: int,
    workers: int = 1,
    min_degree_fn: Optional[Callable[[VertexSet], int]] = None,
) -> SubsetTable:
    """Statistics for all ``2**(2**n)`` subsets of Q_n.

    ``min_degree_fn`` swaps in a per-set degree kernel; it exists so tests can
    inject a faulty kernel and watch verifiers refute.
    """
    if not 0 <= n <= EXHAUSTIVE_MAX_N:
        raise DimensionError(f"exhaustive enumeration is limited to n <= {EXHAUSTIVE_MAX_N}, got {n}")
    total = 1 << (1 << n)
    bounds = [(a, min(a + CHUNK, total)) for a in range(0, total, CHUNK)]
    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: _chunk_stats(n, *b), bounds))
    else:
        parts = [_chunk_stats(n, *b) for b in bounds]
    cols = [np.concatenate(col) for col in zip(*parts)]
    for col in cols:
        col.setflags(write=False)
    size, min_deg, irreducible, subcube_dim, g0 = cols
    if min_degree_fn is not None:
        min_deg = np.array(
            [-1] + [min_degree_fn(VertexSet(n, m)) for m in range(1, total)], dtype=np.int8
        )
    return SubsetTable(n, size, min_deg, irreducible, subcube_dim, g0)
