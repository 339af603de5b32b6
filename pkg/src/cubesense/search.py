"""Minimum-size search over vertex sets with degree and irreducibility constraints.

Two strategies answer the same question:

``exhaustive``
    scans the precomputed statistics of all subsets (n <= 4).
``canonical_bnb``
    iterative deepening on the target size with a depth-first include/exclude
    search. Symmetry is broken by placing a minimum-degree vertex at the origin
    with its in-set neighbours on the first coordinate axes; every orbit of
    solutions keeps at least one representative under that normalisation.
    Solutions are deduplicated by canonical form.

Both return the smallest canonical bitmap among minimum-size solutions as the
witness, so their outputs are directly comparable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .enumeration import EXHAUSTIVE_MAX_N, SubsetTable, build_subset_table
from .hypercube import DimensionError, VertexSet, check_dim, half_bits
from .symmetry import CANONICAL_MAX_N, canonical_form

EXACT = "exact"
AT_LEAST = "at_least"
EXHAUSTIVE = "exhaustive"
CANONICAL_BNB = "canonical_bnb"


@dataclass(frozen=True)
class SearchConfig:
    n: int
    d: int
    degree_mode: str = EXACT
    require_irreducible: bool = False
    size_budget: Optional[int] = None  # search-node budget for canonical_bnb
    strategy: str = EXHAUSTIVE

    def __post_init__(self) -> None:
        check_dim(self.n)
        if not 0 <= self.d <= self.n:
            raise ValueError(f"degree d={self.d} outside [0, n={self.n}]")
        if self.degree_mode not in (EXACT, AT_LEAST):
            raise ValueError(f"unknown degree mode {self.degree_mode!r}")
        if self.strategy == EXHAUSTIVE and self.n > EXHAUSTIVE_MAX_N:
            raise DimensionError(f"exhaustive search needs n <= {EXHAUSTIVE_MAX_N}, got n={self.n}")
        if self.strategy == CANONICAL_BNB and self.n > CANONICAL_MAX_N:
            raise DimensionError(f"canonical search needs n <= {CANONICAL_MAX_N}, got n={self.n}")
        if self.strategy not in (EXHAUSTIVE, CANONICAL_BNB):
            raise ValueError(f"unknown strategy {self.strategy!r}")


FOUND = "found"
INFEASIBLE = "infeasible"
BUDGET_EXCEEDED = "budget_exceeded"


@dataclass(frozen=True)
class SearchResult:
    status: str
    size: Optional[int] = None
    witness: Optional[VertexSet] = None
    examined: int = 0
    # sizes proven to have no solution (canonical_bnb), useful after a budget stop
    excluded_sizes: tuple[int, ...] = field(default=())


class BudgetExceeded(Exception):
    pass


class _NodeBudget:
    def __init__(self, limit: Optional[int]):
        self.limit = limit
        self.used = 0

    def tick(self) -> None:
        if self.limit is not None and self.used >= self.limit:
            raise BudgetExceeded
        self.used += 1


def _qualifies(table: SubsetTable, cfg: SearchConfig) -> np.ndarray:
    deg = table.min_degree
    ok = deg == cfg.d if cfg.degree_mode == EXACT else deg >= cfg.d
    ok = ok & (table.size > 0)
    if cfg.require_irreducible:
        ok &= table.irreducible
    return ok


def exhaustive_search(cfg: SearchConfig, table: Optional[SubsetTable] = None, workers: int = 1) -> SearchResult:
    if table is None:
        table = build_subset_table(cfg.n, workers)
    ok = _qualifies(table, cfg)
    examined = table.count - 1
    if not ok.any():
        return SearchResult(INFEASIBLE, examined=examined)
    best = int(table.size[ok].min())
    candidates = np.flatnonzero(ok & (table.size == best))
    witness = min((canonical_form(VertexSet(cfg.n, int(m))) for m in candidates), key=lambda s: s.bits)
    return SearchResult(FOUND, best, witness, examined)


class _Dfs:
    """Enumerate all normalised sets of one size with minimum degree exactly ``m``."""

    def __init__(self, n: int, m: int, k: int, irreducible: bool, budget: _NodeBudget):
        self.n = n
        self.m = m
        self.k = k
        self.budget = budget
        nv = 1 << n
        self.nbr = [sum(1 << (v ^ (1 << j)) for j in range(n)) for v in range(nv)]
        self.halves = (
            [half_bits(n, i, b) for i in range(1, n + 1) for b in (0, 1)] if irreducible else []
        )
        axes = [1 << (1 << j) for j in range(n)]  # membership bits of e_1..e_n
        self.included = 1 | sum(axes[:m])
        self.excluded = sum(axes[m:])
        fixed = self.included | self.excluded
        self.order = [v for v in range(nv) if not (fixed >> v) & 1]
        self.found: list[int] = []

    def _degree_ok(self, v: int, avail: int) -> bool:
        return (self.nbr[v] & avail).bit_count() >= self.m

    def _halves_ok(self, avail: int) -> bool:
        return all(avail & h for h in self.halves)

    def run(self) -> list[int]:
        inc = self.included
        if inc.bit_count() > self.k:
            return []
        avail = inc | sum(1 << v for v in self.order)
        members = [v for v in range(1 << self.n) if (inc >> v) & 1]
        if not all(self._degree_ok(v, avail) for v in members) or not self._halves_ok(avail):
            return []
        self._step(0, inc, avail)
        return self.found

    def _step(self, pos: int, inc: int, avail: int) -> None:
        self.budget.tick()
        count = inc.bit_count()
        if count == self.k:
            # everything undecided is excluded
            final = inc
            if final != avail:
                if not self._halves_ok(final):
                    return
                v_list = inc
                while v_list:
                    low = v_list & -v_list
                    if not self._degree_ok(low.bit_length() - 1, final):
                        return
                    v_list ^= low
            self.found.append(final)
            return
        if pos == len(self.order) or count + len(self.order) - pos < self.k:
            return
        v = self.order[pos]
        bit = 1 << v
        if self._degree_ok(v, avail):
            self._step(pos + 1, inc | bit, avail)
        dropped = avail & ~bit
        if not self._halves_ok(dropped):
            return
        touched = self.nbr[v] & inc
        while touched:
            low = touched & -touched
            if not self._degree_ok(low.bit_length() - 1, dropped):
                return
            touched ^= low
        self._step(pos + 1, inc, dropped)


def bnb_search(cfg: SearchConfig) -> SearchResult:
    n, d = cfg.n, cfg.d
    budget = _NodeBudget(cfg.size_budget)
    degrees = [d] if cfg.degree_mode == EXACT else list(range(d, n + 1))
    excluded: list[int] = []

    # Simon's bound 2**d seeds the size loop.
    for k in range(1 << d, (1 << n) + 1):
        solutions: set[int] = set()
        try:
            for m in degrees:
                for bits in _Dfs(n, m, k, cfg.require_irreducible, budget).run():
                    solutions.add(canonical_form(VertexSet(n, bits)).bits)
        except BudgetExceeded:
            return SearchResult(BUDGET_EXCEEDED, examined=budget.used, excluded_sizes=tuple(excluded))
        if solutions:
            return SearchResult(FOUND, k, VertexSet(n, min(solutions)), budget.used, tuple(excluded))
        excluded.append(k)
    return SearchResult(INFEASIBLE, examined=budget.used, excluded_sizes=tuple(excluded))


def min_size_search(cfg: SearchConfig, workers: int = 1, table: Optional[SubsetTable] = None) -> SearchResult:
    """Smallest nonempty set meeting ``cfg``'s constraints, with a canonical witness."""
    if cfg.strategy == EXHAUSTIVE:
        return exhaustive_search(cfg, table, workers)
    return bnb_search(cfg)
