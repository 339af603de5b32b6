import json
from fractions import Fraction

import pytest

import oracles
from cubesense.hypercube import (
    DimensionError,
    Subcube,
    VertexSet,
    as_subcube,
    is_irreducible,
    min_degree,
    min_degree_over,
    half_bits,
    subcube_vertices,
)
from cubesense.search import CANONICAL_BNB, SearchConfig
from cubesense.verify import (
    PARTIAL,
    REFUTED,
    VERIFIED,
    Certificate,
    cubes_in_upper_half,
    fancy_bound_holds,
    lemma_minsize_rhs,
    verify_claim,
    verify_gap,
    verify_lemma_extended,
    verify_lemma_fancy,
    verify_lemma_minsize,
    verify_main,
    verify_search,
    verify_simon,
)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("fn", [verify_simon, verify_gap, verify_lemma_minsize, verify_lemma_extended])
def test_exhaustive_claims_verified(fn, n):
    cert = fn(n)
    assert cert.verdict == VERIFIED
    assert cert.counterexample is None
    assert cert.details["violations"] == 0


def test_simon_examined_count():
    assert verify_simon(4).subsets_examined == 65535
    assert verify_simon(1).subsets_examined == 3


def test_simon_equality_cases_are_subcubes():
    for row in verify_simon(4).details["per_d"]:
        assert row["equality_cases"] == row["subcubes"]
        assert row["min_size"] == 1 << row["d"]


def test_gap_histogram_frozen_n3():
    # frozen from a brute-force pass with tests/oracles.py
    hist = verify_gap(3).details["histogram"]
    assert hist == {
        "0": {"1": 8, "2": 16, "3": 32, "4": 26, "5": 8},
        "1": {"2": 12, "3": 24, "4": 38, "5": 48, "6": 12},
        "2": {"4": 6, "6": 16, "7": 8},
        "3": {"8": 1},
    }


def test_gap_histogram_against_oracle_n3():
    counts = {}
    for s in oracles.all_subsets(3):
        if s:
            key = (str(oracles.min_degree(s)), str(len(s)))
            counts[key] = counts.get(key, 0) + 1
    hist = verify_gap(3).details["histogram"]
    assert {(d, k): v for d, h in hist.items() for k, v in h.items()} == counts


def test_lemma_extended_precondition_counts():
    # number of nonempty sets meeting x_1 = 0
    assert [verify_lemma_extended(n).subsets_examined for n in (1, 2, 3, 4)] == [2, 12, 240, 65280]


def test_lemma_minsize_rhs():
    assert lemma_minsize_rhs(4, 0) == 2
    assert lemma_minsize_rhs(4, 2) == 6
    assert lemma_minsize_rhs(4, 4) is None


def faulty_min_degree(s):
    return min_degree(s) + 1


@pytest.mark.parametrize("fn", [verify_simon, verify_gap, verify_lemma_minsize])
def test_faulty_kernel_is_refuted(fn):
    cert = fn(3, min_degree_fn=faulty_min_degree)
    assert cert.verdict == REFUTED
    cx = cert.counterexample
    assert cx is not None
    # the true kernel still satisfies the bound on the counterexample
    assert len(cx) >= 1 << min_degree(cx)
    assert len(cx) < 1 << faulty_min_degree(cx) or cert.claim_id != "simon"


def test_constant_faulty_kernel_flags_singleton():
    cert = verify_simon(2, min_degree_fn=lambda s: 2)
    assert cert.verdict == REFUTED
    assert len(cert.counterexample) == 1


def test_cubes_in_upper_half():
    cubes = cubes_in_upper_half(3)
    assert len(cubes) == 9
    for c in cubes:
        assert all(v & 1 for v in subcube_vertices(c))


def test_fancy_bound_exact_arithmetic():
    # |S| - 2^l >= 2^d' - 2^(d' - (n - l))
    for n in range(1, 6):
        for l in range(n):
            for dp in range(n + 1):
                for size in range(1 << l, (1 << n) + 1):
                    expect = Fraction(size - (1 << l)) >= Fraction(1 << dp) - Fraction(1 << dp, 1 << (n - l))
                    assert fancy_bound_holds(size, l, n, dp) == expect


def fancy_violations_oracle(n):
    pairs = bad = 0
    for s in oracles.all_subsets(n):
        low = {x for x in s if x[0] == "0"}
        if not low:
            continue
        dp = min(oracles.degree(x, s) for x in low)
        for pattern in oracles.subcube_patterns(n):
            if pattern[0] != "1":
                continue
            cube = oracles.pattern_vertices(pattern)
            if not cube <= s:
                continue
            pairs += 1
            l = pattern.count("*")
            if Fraction(len(s) - len(cube)) < Fraction(1 << dp) - Fraction(1 << dp, 1 << (n - l)):
                bad += 1
    return pairs, bad


@pytest.mark.parametrize("n, pairs, bad", [(1, 1, 0), (2, 15, 2), (3, 735, 24)])
def test_lemma_fancy_exhaustive_counts(n, pairs, bad):
    assert fancy_violations_oracle(n) == (pairs, bad)
    cert = verify_lemma_fancy(n)
    assert (cert.subsets_examined, cert.details["violations"]) == (pairs, bad)
    assert cert.verdict == (VERIFIED if bad == 0 else REFUTED)


def test_lemma_fancy_counterexample_revalidates():
    cert = verify_lemma_fancy(2)
    # first violating S in bitmap order; {01, 11} is the same shape under a flip of x_2
    assert cert.counterexample.to_strings() == ["00", "10"]
    pair = cert.details["counterexample_pair"]
    s = cert.counterexample
    cube = VertexSet.from_strings(pair["subcube_vertices"])
    assert cube.bits & s.bits == cube.bits
    assert as_subcube(cube).dimension == pair["l"]
    g0 = half_bits(2, 1, 0)
    assert min_degree_over(s, g0) == pair["d_prime"]
    assert len(s - cube) == pair["removed_size"]
    assert Fraction(pair["bound"]) > pair["removed_size"]


def test_lemma_fancy_sampling_is_seeded():
    a = verify_lemma_fancy(4, samples=5000, seed=1)
    b = verify_lemma_fancy(4, samples=5000, seed=1)
    assert a.to_json(False) == b.to_json(False)
    assert a.seed == 1 and a.subsets_examined == 5000
    assert a.details["mode"] == "sample"


def test_main_small_n():
    for n, sizes in [(1, [None, 2]), (2, [2, 3, 4]), (3, [2, 4, 6, 8]), (4, [2, 4, 7, 12, 16])]:
        cert = verify_main(n)
        assert cert.verdict == VERIFIED
        measured = [row["measured"] for row in cert.details["per_d"]]
        assert measured == sizes
        assert len(cert.witnesses) == sum(s is not None for s in sizes)
        for row in cert.details["per_d"]:
            if row["measured"] is not None:
                w = cert.witnesses[row["witness"]]
                assert min_degree(w) == row["d"] and is_irreducible(w) and len(w) == row["measured"]


def test_main_partial_then_resume():
    part = verify_main(5, budget=2000)
    assert part.verdict == PARTIAL
    done = part.details["completed_d"]
    assert 0 in done
    full = verify_main(5, resume=Certificate.from_json(part.to_json()))
    assert full.verdict == VERIFIED
    assert [r["measured"] for r in full.details["per_d"]] == [2, 4, 8, 14, 24, 32]
    assert all(r.get("resumed") for r in full.details["per_d"] if r["d"] in done)


def test_main_caps():
    with pytest.raises(DimensionError):
        verify_main(6)
    with pytest.raises(DimensionError):
        verify_simon(5)


def test_certificate_round_trip():
    cert = verify_main(3)
    again = Certificate.from_json(cert.to_json())
    assert again.witnesses == cert.witnesses
    assert again.to_json() == cert.to_json()
    data = json.loads(cert.to_json(timing=False))
    assert data["elapsed_ms"] is None
    assert list(data)[:4] == ["claim_id", "params", "verdict", "extremal_size"]
    assert data["witnesses"][0][0] == "n=3"


def test_verify_search_certificate():
    cert = verify_search(SearchConfig(3, 2, "exact", True))
    assert cert.extremal_size == 6
    cert = verify_search(SearchConfig(5, 3, "exact", True, size_budget=50, strategy=CANONICAL_BNB))
    assert cert.verdict == PARTIAL


def test_verify_claim_dispatch():
    assert verify_claim("gap", 2).claim_id == "gap"
    with pytest.raises(ValueError):
        verify_claim("nope", 2)


def test_counterexample_is_recheckable_with_core_only():
    # the g0 minimum degree used by the extended lemma, from the core kernel
    s = VertexSet.from_strings(["000", "100", "110"])
    assert min_degree_over(s, half_bits(3, 1, 0)) == 1
    assert Subcube.fixing(3, {1: 1}).dimension == 2
