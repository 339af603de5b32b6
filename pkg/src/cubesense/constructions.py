"""Closed-form minimum sizes and explicit extremal vertex sets."""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .hypercube import (
    VertexSet,
    check_dim,
    full_bits,
    half_bits,
    is_irreducible,
    min_degree,
)


class InfeasibleError(ValueError):
    """No irreducible set with the requested minimum degree exists."""


INFEASIBLE_REASON = "no irreducible subgraph of Q_1 has minimum degree 0 (n=1, d=0 is not possible)"


def _check_range(n: int, d: int) -> None:
    check_dim(n)
    if not 0 <= d <= n:
        raise ValueError(f"degree d={d} outside [0, n={n}]")


def irreducible_feasible(n: int, d: int) -> bool:
    return n >= 1 and 0 <= d <= n and (n, d) != (1, 0)


def _check_feasible(n: int, d: int) -> None:
    _check_range(n, d)
    if n == 0:
        raise InfeasibleError("irreducibility needs n >= 1")
    if (n, d) == (1, 0):
        raise InfeasibleError(INFEASIBLE_REASON)


def simon_min_size(n: int, d: int) -> int:
    _check_range(n, d)
    return 1 << d


def min_irreducible_size(n: int, d: int) -> int:
    """ceil(2**(d+1) - 2**(2d-n)) in integer arithmetic."""
    _check_feasible(n, d)
    if 2 * d >= n:
        return (1 << (d + 1)) - (1 << (2 * d - n))
    # 0 < 2**(2d-n) < 1 so the ceiling drops it
    return 1 << (d + 1)


def gap_threshold(d: int) -> Union[int, Fraction]:
    """Smallest size allowed above ``2**d``: ``3 * 2**(d-1)``, which is 3/2 at d=0."""
    if d < 0:
        raise ValueError(f"degree d={d} must be non-negative")
    if d == 0:
        return Fraction(3, 2)
    return 3 << (d - 1)


def _all_ones_on(n: int, coords: range) -> int:
    bits = full_bits(n)
    for i in coords:
        bits &= half_bits(n, i, 1)
    return bits


def simon_extremal(n: int, d: int) -> VertexSet:
    """The d-subcube with x_1 = ... = x_{n-d} = 0."""
    _check_range(n, d)
    bits = full_bits(n)
    for i in range(1, n - d + 1):
        bits &= half_bits(n, i, 0)
    return VertexSet(n, bits)


def extremal_irreducible(n: int, d: int) -> VertexSet:
    """An irreducible set of minimum degree exactly ``d`` and minimum possible size.

    - ``d == n`` (this covers n = 1, d = 1): the whole cube.
    - ``2d < n``: two antipodal d-subcubes fixing the first n-d coordinates to all
      zeros and all ones; they share no vertex and no edge.
    - ``2d >= n``: the union of the d-subcubes fixing coordinates 1..n-d to 1
      and n-d+1..2(n-d) to 1. They overlap in a (2d-n)-subcube.
    """
    _check_feasible(n, d)
    if d == n:
        out = VertexSet.full(n)
    elif 2 * d < n:
        zeros = full_bits(n)
        for i in range(1, n - d + 1):
            zeros &= half_bits(n, i, 0)
        out = VertexSet(n, zeros | _all_ones_on(n, range(1, n - d + 1)))
    else:
        left = _all_ones_on(n, range(1, n - d + 1))
        right = _all_ones_on(n, range(n - d + 1, 2 * (n - d) + 1))
        out = VertexSet(n, left | right)
    _check_extremal(out, d)
    return out


def _check_extremal(s: VertexSet, d: int) -> None:
    expected = min_irreducible_size(s.n, d)
    if min_degree(s) != d or not is_irreducible(s) or len(s) != expected:
        raise AssertionError(
            f"construction for (n={s.n}, d={d}) broke its postcondition: "
            f"delta={min_degree(s)}, irreducible={is_irreducible(s)}, size={len(s)} vs {expected}"
        )
