import random

import numpy as np
import pytest

from cubesense.enumeration import build_subset_table
from cubesense.hypercube import VertexSet, as_subcube, is_irreducible, min_degree, min_degree_over, half_bits


def expected_row(n, mask):
    s = VertexSet(n, mask)
    if not s:
        return (0, -1, False, -1, -1)
    cube = as_subcube(s)
    g0 = half_bits(n, 1, 0) if n else 1
    return (
        len(s),
        min_degree(s),
        is_irreducible(s),
        cube.dimension if cube else -1,
        min_degree_over(s, g0) if s.bits & g0 else -1,
    )


def row(t, mask):
    return (
        int(t.size[mask]),
        int(t.min_degree[mask]),
        bool(t.irreducible[mask]),
        int(t.subcube_dim[mask]),
        int(t.g0_min_degree[mask]),
    )


@pytest.mark.parametrize("n", [1, 2, 3])
def test_table_matches_core_kernels(n):
    t = build_subset_table(n)
    assert t.count == 1 << (1 << n)
    for mask in range(t.count):
        assert row(t, mask) == expected_row(n, mask)


def test_table_n4_sample():
    t = build_subset_table(4)
    rng = random.Random(11)
    for mask in [0, 1, 0xFFFF] + [rng.randrange(1 << 16) for _ in range(3000)]:
        assert row(t, mask) == expected_row(4, mask)


def test_table_independent_of_workers():
    a = build_subset_table(4, workers=1)
    b = build_subset_table(4, workers=8)
    for col in ("size", "min_degree", "irreducible", "subcube_dim", "g0_min_degree"):
        assert np.array_equal(getattr(a, col), getattr(b, col))


def test_degree_hook_replaces_kernel():
    t = build_subset_table(2, min_degree_fn=lambda s: 7)
    assert t.min_degree[0] == -1
    assert set(t.min_degree[1:].tolist()) == {7}
