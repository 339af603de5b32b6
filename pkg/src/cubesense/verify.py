"""Exhaustive verifiers that emit machine-checkable certificates.

Every verifier walks the full subset space of Q_n (n <= 4) through the
vectorised statistics in :mod:`cubesense.enumeration`, so a certificate's
``subsets_examined`` is the number of nonempty subsets (or of valid pairs for
``lemma_fancy``). The first violation in bitmap order becomes the
counterexample, which can be re-checked with :mod:`cubesense.hypercube` alone.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, Callable, Optional

import numpy as np

from . import __version__
from .constructions import (
    extremal_irreducible,
    gap_threshold,
    irreducible_feasible,
    min_irreducible_size,
)
from .enumeration import EXHAUSTIVE_MAX_N, SubsetTable, build_subset_table
from .formats import parse_vertex_set
from .hypercube import (
    DimensionError,
    Subcube,
    VertexSet,
    is_irreducible,
    min_degree,
    subcube_vertices,
)
from .search import (
    BUDGET_EXCEEDED,
    CANONICAL_BNB,
    EXACT,
    EXHAUSTIVE,
    FOUND,
    INFEASIBLE,
    SearchConfig,
    SearchResult,
    min_size_search,
)

VERIFIED = "verified"
REFUTED = "refuted"
PARTIAL = "partial"

CLAIMS = ("simon", "main", "gap", "lemma_minsize", "lemma_extended", "lemma_fancy")
MAIN_MAX_N = 5
DEFAULT_FANCY_SAMPLES = 100_000
DEFAULT_SEED = 20150411

MinDegreeFn = Optional[Callable[[VertexSet], int]]


def _witness_lines(s: VertexSet) -> list[str]:
    return [f"n={s.n}", *s.to_strings()]


def _witness_from_lines(lines: list[str]) -> VertexSet:
    return parse_vertex_set("\n".join(lines))


@dataclass
class Certificate:
    claim_id: str
    params: dict[str, Any]
    verdict: str
    extremal_size: Optional[int] = None
    witnesses: list[VertexSet] = field(default_factory=list)
    counterexample: Optional[VertexSet] = None
    subsets_examined: int = 0
    seed: Optional[int] = None
    elapsed_ms: Optional[float] = None
    details: dict[str, Any] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    tool_version: str = __version__

    def to_dict(self, timing: bool = True) -> dict[str, Any]:
        return {
            "claim_id": self.claim_id,
            "params": self.params,
            "verdict": self.verdict,
            "extremal_size": self.extremal_size,
            "witnesses": [_witness_lines(w) for w in self.witnesses],
            "counterexample": None if self.counterexample is None else _witness_lines(self.counterexample),
            "subsets_examined": self.subsets_examined,
            "seed": self.seed,
            "elapsed_ms": round(self.elapsed_ms, 3) if timing and self.elapsed_ms is not None else None,
            "tool_version": self.tool_version,
            "details": self.details,
            "notes": self.notes,
        }

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Certificate":
        cx = data.get("counterexample")
        return cls(
            claim_id=data["claim_id"],
            params=data["params"],
            verdict=data["verdict"],
            extremal_size=data.get("extremal_size"),
            witnesses=[_witness_from_lines(w) for w in data.get("witnesses", [])],
            counterexample=None if cx is None else _witness_from_lines(cx),
            subsets_examined=data.get("subsets_examined", 0),
            seed=data.get("seed"),
            elapsed_ms=data.get("elapsed_ms"),
            details=data.get("details", {}),
            notes=data.get("notes", []),
            tool_version=data.get("tool_version", __version__),
        )

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        return cls.from_dict(json.loads(text))


def _params(n: int, degree_mode: str, irreducible: bool, strategy: str = EXHAUSTIVE, d=None) -> dict[str, Any]:
    return {"n": n, "d": d, "degree_mode": degree_mode, "irreducible": irreducible, "strategy": strategy}


def _table(n: int, workers: int, min_degree_fn: MinDegreeFn) -> SubsetTable:
    if n > EXHAUSTIVE_MAX_N:
        raise DimensionError(f"exhaustive verification needs n <= {EXHAUSTIVE_MAX_N}, got n={n}")
    return build_subset_table(n, workers, min_degree_fn)


def _first(bad: np.ndarray) -> Optional[int]:
    idx = np.flatnonzero(bad)
    return int(idx[0]) if idx.size else None


def _pow2(exponents: np.ndarray) -> np.ndarray:
    return np.left_shift(np.int64(1), np.maximum(exponents, 0).astype(np.int64))


def _finish(cert: Certificate, bad: np.ndarray, n: int, started: float) -> Certificate:
    first = _first(bad)
    cert.verdict = VERIFIED if first is None else REFUTED
    cert.details["violations"] = int(bad.sum())
    if first is not None:
        cert.counterexample = VertexSet(n, first)
    cert.elapsed_ms = (time.perf_counter() - started) * 1000
    return cert


def verify_simon(n: int, workers: int = 1, min_degree_fn: MinDegreeFn = None) -> Certificate:
    """Every nonempty S has |S| >= 2**delta(S); equality holds exactly on delta-subcubes."""
    started = time.perf_counter()
    t = _table(n, workers, min_degree_fn)
    nonempty = t.size > 0
    delta = t.min_degree.astype(np.int64)
    size = t.size.astype(np.int64)
    tight = nonempty & (size == _pow2(delta))
    cube = nonempty & (t.subcube_dim == t.min_degree)
    bad = nonempty & ((size < _pow2(delta)) | (tight != cube))
    per_d = [
        {
            "d": d,
            "sets": int((nonempty & (delta == d)).sum()),
            "min_size": int(size[nonempty & (delta == d)].min()) if (nonempty & (delta == d)).any() else None,
            "equality_cases": int((tight & (delta == d)).sum()),
            "subcubes": int((cube & (delta == d)).sum()),
        }
        for d in range(n + 1)
    ]
    cert = Certificate("simon", _params(n, "at_least", False), REFUTED, subsets_examined=int(nonempty.sum()))
    cert.details["per_d"] = per_d
    return _finish(cert, bad, n, started)


def verify_gap(n: int, workers: int = 1, min_degree_fn: MinDegreeFn = None) -> Certificate:
    """No nonempty S has size strictly between 2**d and 3 * 2**(d-1), d = delta(S)."""
    started = time.perf_counter()
    t = _table(n, workers, min_degree_fn)
    nonempty = t.size > 0
    delta = t.min_degree.astype(np.int64)
    size = t.size.astype(np.int64)
    base = _pow2(delta)
    tight = size == base
    cube = t.subcube_dim == t.min_degree
    ok = (tight & cube) | (2 * size >= 3 * base)
    bad = nonempty & ~ok
    histogram = {}
    thresholds = {}
    for d in range(n + 1):
        sel = nonempty & (delta == d)
        sizes, counts = np.unique(size[sel], return_counts=True)
        histogram[str(d)] = {str(int(s)): int(c) for s, c in zip(sizes, counts)}
        thresholds[str(d)] = str(gap_threshold(d))
    cert = Certificate("gap", _params(n, EXACT, False), REFUTED, subsets_examined=int(nonempty.sum()))
    cert.details["histogram"] = histogram
    cert.details["threshold"] = thresholds
    cert.notes.append("equality clause read as |V| = 2^d")
    return _finish(cert, bad, n, started)


def lemma_minsize_rhs(n: int, d: int) -> Optional[int]:
    """min over i in [d+1, n] of the irreducible minimum size; ``None`` when no i is feasible."""
    values = [min_irreducible_size(i, d) for i in range(d + 1, n + 1) if irreducible_feasible(i, d)]
    return min(values) if values else None


def verify_lemma_minsize(n: int, workers: int = 1, min_degree_fn: MinDegreeFn = None) -> Certificate:
    started = time.perf_counter()
    t = _table(n, workers, min_degree_fn)
    nonempty = t.size > 0
    delta = t.min_degree.astype(np.int64)
    size = t.size.astype(np.int64)
    rhs_by_d = [lemma_minsize_rhs(n, d) for d in range(n + 1)]
    big = np.int64(1 << 40)
    rhs = np.array([big if r is None else r for r in rhs_by_d], dtype=np.int64)[np.clip(delta, 0, n)]
    ok = (size == _pow2(delta)) | (size >= rhs)
    bad = nonempty & ~ok
    cert = Certificate("lemma_minsize", _params(n, EXACT, False), REFUTED, subsets_examined=int(nonempty.sum()))
    cert.details["rhs"] = {str(d): r for d, r in enumerate(rhs_by_d)}
    cert.details["gap_threshold"] = {str(d): str(gap_threshold(d)) for d in range(n + 1)}
    return _finish(cert, bad, n, started)


def verify_lemma_extended(n: int, workers: int = 1, min_degree_fn: MinDegreeFn = None) -> Certificate:
    """|S| >= 2**d' where d' is the minimum degree in S over members with x_1 = 0."""
    if n < 1:
        raise DimensionError("the half x_1 = 0 needs n >= 1")
    started = time.perf_counter()
    t = _table(n, workers, min_degree_fn)
    g0 = t.g0_min_degree.astype(np.int64)
    pre = g0 >= 0
    bad = pre & (t.size.astype(np.int64) < _pow2(g0))
    cert = Certificate("lemma_extended", _params(n, "at_least", False), REFUTED, subsets_examined=int(pre.sum()))
    cert.details["per_d"] = {
        str(d): {
            "sets": int((pre & (g0 == d)).sum()),
            "min_size": int(t.size[pre & (g0 == d)].min()) if (pre & (g0 == d)).any() else None,
        }
        for d in range(n + 1)
    }
    return _finish(cert, bad, n, started)


def cubes_in_upper_half(n: int) -> list[Subcube]:
    """Every subcube contained in the half x_1 = 1, in a fixed order."""
    out = []
    for choice in product((None, 0, 1), repeat=n - 1):
        assignment = {1: 1}
        assignment.update({i: b for i, b in enumerate(choice, start=2) if b is not None})
        out.append(Subcube.fixing(n, assignment))
    return out


def fancy_bound_holds(s_size: int, l: int, n: int, d_prime: int) -> bool:
    """``|S \\ G_l| >= 2**d' - 2**(d' - (n - l))`` scaled by ``2**(n - l)``."""
    return (s_size - (1 << l)) << (n - l) >= (1 << (d_prime + n - l)) - (1 << d_prime)


def verify_lemma_fancy(
    n: int,
    workers: int = 1,
    samples: Optional[int] = None,
    seed: int = DEFAULT_SEED,
    min_degree_fn: MinDegreeFn = None,
) -> Certificate:
    """Check the subcube-removal bound over pairs (S, G_l) with G_l inside x_1 = 1.

    Pairs need ``G_l ⊆ S`` and ``S`` meeting the half ``x_1 = 0``. With
    ``samples=None`` every pair is checked; otherwise that many valid pairs are
    drawn with a seeded generator.
    """
    if n < 1:
        raise DimensionError("the halves of Q_n need n >= 1")
    started = time.perf_counter()
    t = _table(n, workers, min_degree_fn)
    cubes = cubes_in_upper_half(n)
    cube_bits = np.array([subcube_vertices(c).bits for c in cubes], dtype=np.int64)
    dims = np.array([c.dimension for c in cubes], dtype=np.int64)
    g0 = t.g0_min_degree.astype(np.int64)
    size = t.size.astype(np.int64)

    if samples is None:
        masks = np.tile(np.arange(t.count, dtype=np.int64), len(cubes))
        which = np.repeat(np.arange(len(cubes)), t.count)
        valid = ((masks & cube_bits[which]) == cube_bits[which]) & (g0[masks] >= 0)
        masks, which = masks[valid], which[valid]
        order = np.lexsort((which, masks))
        masks, which = masks[order], which[order]
    else:
        rng = np.random.default_rng(seed)
        got_m, got_w, have = [], [], 0
        while have < samples:
            w = rng.integers(0, len(cubes), size=samples)
            m = rng.integers(0, t.count, size=samples, dtype=np.int64) | cube_bits[w]
            keep = g0[m] >= 0
            got_m.append(m[keep])
            got_w.append(w[keep])
            have += int(keep.sum())
        masks = np.concatenate(got_m)[:samples]
        which = np.concatenate(got_w)[:samples]

    l = dims[which]
    dp = g0[masks]
    lhs = (size[masks] - (np.int64(1) << l)) << (n - l)
    rhs = (np.int64(1) << (dp + n - l)) - (np.int64(1) << dp)
    bad = lhs < rhs

    cert = Certificate(
        "lemma_fancy",
        _params(n, "at_least", False),
        REFUTED,
        subsets_examined=int(masks.size),
        seed=None if samples is None else seed,
    )
    cert.details["mode"] = "exhaustive" if samples is None else "sample"
    cert.details["subcubes"] = len(cubes)
    cert.details["violations"] = int(bad.sum())
    first = _first(bad)
    if first is None:
        cert.verdict = VERIFIED
    else:
        cube = cubes[int(which[first])]
        cert.counterexample = VertexSet(n, int(masks[first]))
        cert.details["counterexample_pair"] = {
            "subcube_vertices": subcube_vertices(cube).to_strings(),
            "l": cube.dimension,
            "d_prime": int(dp[first]),
            "removed_size": int(size[masks[first]] - (1 << cube.dimension)),
            "bound": str(Fraction((1 << (int(dp[first]) + n - cube.dimension)) - (1 << int(dp[first])),
                                  1 << (n - cube.dimension))),
        }
    if samples is not None:
        cert.notes.append(f"randomized sample of {samples} pairs, not an exhaustive proof")
    cert.elapsed_ms = (time.perf_counter() - started) * 1000
    return cert


def _check_witness(w: VertexSet, d: int) -> bool:
    return min_degree(w) == d and is_irreducible(w)


def verify_main(
    n: int,
    strategy: Optional[str] = None,
    budget: Optional[int] = None,
    workers: int = 1,
    resume: Optional[Certificate] = None,
) -> Certificate:
    """Compare the searched minimum irreducible size against the closed form for every d.

    ``budget`` bounds search nodes per d (``canonical_bnb`` only). ``resume``
    carries forward the d values a previous partial certificate confirmed.
    """
    if not 1 <= n <= MAIN_MAX_N:
        raise DimensionError(f"main verification supports 1 <= n <= {MAIN_MAX_N}, got n={n}")
    if strategy is None:
        strategy = EXHAUSTIVE if n <= EXHAUSTIVE_MAX_N else CANONICAL_BNB
    started = time.perf_counter()
    table = build_subset_table(n, workers) if strategy == EXHAUSTIVE else None
    done = {}
    if resume is not None:
        if resume.claim_id != "main" or resume.params.get("n") != n:
            raise ValueError("resume certificate is not a main certificate for this n")
        for row, w in zip(resume.details.get("per_d", []), _row_witnesses(resume)):
            if row["status"] in ("confirmed", "infeasible_confirmed"):
                done[row["d"]] = (row, w)

    cert = Certificate("main", _params(n, EXACT, True, strategy), VERIFIED)
    rows = []
    examined = table.count - 1 if table is not None else 0
    for d in range(n + 1):
        expected = min_irreducible_size(n, d) if irreducible_feasible(n, d) else None
        if d in done:
            row, w = done[d]
            row = dict(row, resumed=True)
            if w is not None:
                row["witness"] = len(cert.witnesses)
                cert.witnesses.append(w)
            rows.append(row)
            continue
        cfg = SearchConfig(n, d, EXACT, True, budget if strategy == CANONICAL_BNB else None, strategy)
        res: SearchResult = min_size_search(cfg, workers, table)
        if strategy == CANONICAL_BNB:
            examined += res.examined
        row: dict[str, Any] = {"d": d, "expected": expected, "measured": res.size, "search": res.status}
        if res.status == BUDGET_EXCEEDED:
            row["status"] = "budget_exceeded"
            row["excluded_sizes"] = list(res.excluded_sizes)
        elif res.status == INFEASIBLE and expected is None:
            row["status"] = "infeasible_confirmed"
        elif res.status == FOUND and res.size == expected and _check_witness(res.witness, d):
            row["status"] = "confirmed"
            row["witness"] = len(cert.witnesses)
            cert.witnesses.append(res.witness)
        else:
            row["status"] = "mismatch"
            if cert.counterexample is None:
                if res.status == FOUND and (expected is None or res.size < expected):
                    cert.counterexample = res.witness
                elif expected is not None:
                    cert.counterexample = extremal_irreducible(n, d)
        rows.append(row)

    statuses = {r["status"] for r in rows}
    if "mismatch" in statuses:
        cert.verdict = REFUTED
    elif "budget_exceeded" in statuses:
        cert.verdict = PARTIAL
    cert.details["per_d"] = rows
    cert.details["completed_d"] = [r["d"] for r in rows if r["status"] in ("confirmed", "infeasible_confirmed")]
    cert.params["budget"] = budget
    cert.subsets_examined = examined
    cert.elapsed_ms = (time.perf_counter() - started) * 1000
    return cert


def _row_witnesses(cert: Certificate) -> list[Optional[VertexSet]]:
    out = []
    for row in cert.details.get("per_d", []):
        idx = row.get("witness")
        out.append(cert.witnesses[idx] if idx is not None else None)
    return out


def verify_search(cfg: SearchConfig, workers: int = 1) -> Certificate:
    """Wrap a single :func:`min_size_search` run as a certificate."""
    started = time.perf_counter()
    res = min_size_search(cfg, workers)
    verdict = {FOUND: VERIFIED, INFEASIBLE: INFEASIBLE, BUDGET_EXCEEDED: PARTIAL}[res.status]
    cert = Certificate(
        "search",
        _params(cfg.n, cfg.degree_mode, cfg.require_irreducible, cfg.strategy, cfg.d),
        verdict,
        extremal_size=res.size,
        witnesses=[res.witness] if res.witness is not None else [],
        subsets_examined=res.examined,
    )
    cert.params["budget"] = cfg.size_budget
    cert.details["search"] = res.status
    if res.excluded_sizes:
        cert.details["excluded_sizes"] = list(res.excluded_sizes)
    cert.elapsed_ms = (time.perf_counter() - started) * 1000
    return cert


def verify_claim(claim: str, n: int, workers: int = 1, **kwargs) -> Certificate:
    if claim == "simon":
        return verify_simon(n, workers)
    if claim == "main":
        return verify_main(n, workers=workers, **kwargs)
    if claim == "gap":
        return verify_gap(n, workers)
    if claim == "lemma_minsize":
        return verify_lemma_minsize(n, workers)
    if claim == "lemma_extended":
        return verify_lemma_extended(n, workers)
    if claim == "lemma_fancy":
        return verify_lemma_fancy(n, workers, **kwargs)
    raise ValueError(f"unknown claim {claim!r}")
