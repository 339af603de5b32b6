"""Sensitivity of Boolean functions and the bridge to vertex sets.

A function ``f`` of ``n`` variables is stored as its truth table, a ``2**n``-bit
integer whose bit ``v`` is ``f`` at vertex index ``v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .formats import ParseError, parse_truth_table_bits
from .hypercube import (
    VertexSet,
    check_dim,
    count_equal,
    full_bits,
    is_irreducible,
    min_degree,
    neighbor_bits,
    sliced_counts,
    as_subcube,
)


@dataclass(frozen=True)
class TruthTable:
    n: int
    outputs: int = 0

    def __post_init__(self) -> None:
        check_dim(self.n)
        if not 0 <= self.outputs <= full_bits(self.n):
            raise ValueError(f"truth table does not fit {self.n} variables")

    def __call__(self, x: int) -> int:
        return (self.outputs >> x) & 1

    @classmethod
    def from_function(cls, n: int, fn) -> "TruthTable":
        return cls(n, sum(1 << x for x in range(1 << n) if fn(x)))

    @classmethod
    def parse(cls, text: str) -> "TruthTable":
        return cls(*parse_truth_table_bits(text))

    def negate(self) -> "TruthTable":
        return TruthTable(self.n, full_bits(self.n) ^ self.outputs)


def catalog(name: str) -> TruthTable:
    """Named functions: ``or:<n>``, ``and:<n>``, ``parity:<n>``, ``const0:<n>``, ``const1:<n>``."""
    kind, sep, arg = name.partition(":")
    if not sep:
        raise ValueError(f"catalog name must look like 'kind:n', got {name!r}")
    try:
        n = check_dim(int(arg))
    except ValueError as exc:
        raise ValueError(f"bad dimension in {name!r}: {exc}") from None
    top = (1 << n) - 1
    if kind == "or":
        return TruthTable(n, full_bits(n) & ~1)
    if kind == "and":
        return TruthTable(n, 1 << top)
    if kind == "parity":
        return TruthTable.from_function(n, lambda x: x.bit_count() & 1)
    if kind == "const0":
        return TruthTable(n, 0)
    if kind == "const1":
        return TruthTable(n, full_bits(n))
    raise ValueError(f"unknown catalog function {kind!r}")


def local_sensitivity(f: TruthTable, x: int) -> int:
    """Number of coordinates whose flip changes ``f(x)``."""
    if not 0 <= x < (1 << f.n):
        raise ValueError(f"input {x} outside Q_{f.n}")
    fx = f(x)
    return sum(f(x ^ (1 << j)) != fx for j in range(f.n))


def _sensitivity_digits(f: TruthTable) -> list[int]:
    return sliced_counts(f.outputs ^ neighbor_bits(f.outputs, f.n, i) for i in range(1, f.n + 1))


def _max_over(digits: list[int], domain: int, n: int) -> Optional[int]:
    if not domain:
        return None
    for value in range(n, -1, -1):
        if count_equal(digits, value, domain):
            return value
    raise AssertionError("unreachable")


def c_sensitivity(f: TruthTable, c: int) -> Optional[int]:
    """``s_c(f)``, or ``None`` when ``f`` never takes the value ``c``."""
    domain = f.outputs if c else full_bits(f.n) ^ f.outputs
    return _max_over(_sensitivity_digits(f), domain, f.n)


def sensitivity(f: TruthTable) -> int:
    return _max_over(_sensitivity_digits(f), full_bits(f.n), f.n)


def one_set(f: TruthTable) -> VertexSet:
    return VertexSet(f.n, f.outputs)


def from_set(s: VertexSet) -> TruthTable:
    return TruthTable(s.n, s.bits)


@dataclass(frozen=True)
class MeasureReport:
    s: int
    s0: Optional[int]
    s1: Optional[int]
    ones_count: int
    delta_of_one_set: Optional[int]


def measure(f: TruthTable) -> MeasureReport:
    digits = _sensitivity_digits(f)
    zeros = full_bits(f.n) ^ f.outputs
    ones = one_set(f)
    return MeasureReport(
        s=_max_over(digits, full_bits(f.n), f.n),
        s0=_max_over(digits, zeros, f.n),
        s1=_max_over(digits, f.outputs, f.n),
        ones_count=len(ones),
        delta_of_one_set=min_degree(ones) if ones else None,
    )


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class SimonVerdict:
    s1: int
    bound: int
    actual: int
    equality: bool
    is_subcube: bool

    @property
    def holds(self) -> bool:
        return self.actual >= self.bound and self.equality == self.is_subcube


def check_simon_corollary(f: TruthTable) -> SimonVerdict:
    """Check ``|V(f)| >= 2**(n - s_1)`` and that equality happens exactly for subcubes."""
    if not f.outputs:
        raise PreconditionError("f is constant 0; the bound needs f(x) = 1 for some x")
    s1 = c_sensitivity(f, 1)
    ones = one_set(f)
    bound = 1 << (f.n - s1)
    actual = len(ones)
    return SimonVerdict(
        s1=s1,
        bound=bound,
        actual=actual,
        equality=actual == bound,
        is_subcube=as_subcube(ones) is not None,
    )


@dataclass(frozen=True)
class IrreducibleVerdict:
    condition_met: bool
    s1: Optional[int] = None
    bound: Optional[Fraction] = None
    actual: Optional[int] = None
    passed: Optional[bool] = None


def check_irreducible_corollary(f: TruthTable) -> IrreducibleVerdict:
    """Check ``|V(f)| >= 2**(n-s1+1) - 2**(n-2*s1)`` when every half-cube meets ``V(f)``.

    The right-hand side can be a proper dyadic fraction; the comparison is done
    on integers after scaling by ``2**(2*s1)``.
    """
    ones = one_set(f)
    if not is_irreducible(ones):
        return IrreducibleVerdict(condition_met=False)
    n = f.n
    s1 = c_sensitivity(f, 1)
    actual = len(ones)
    passed = actual << (2 * s1) >= (1 << (n + s1 + 1)) - (1 << n)
    bound = Fraction((1 << (n + s1 + 1)) - (1 << n), 1 << (2 * s1))
    return IrreducibleVerdict(True, s1, bound, actual, passed)


__all__ = [
    "IrreducibleVerdict",
    "MeasureReport",
    "ParseError",
    "PreconditionError",
    "SimonVerdict",
    "TruthTable",
    "c_sensitivity",
    "catalog",
    "check_irreducible_corollary",
    "check_simon_corollary",
    "from_set",
    "local_sensitivity",
    "measure",
    "one_set",
    "sensitivity",
]
