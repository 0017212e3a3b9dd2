"""Dimensions and generators of ``H^k_{f,p}`` read off the Milnor algebra.

No linear algebra happens here beyond what ``milnor_algebra`` already did.
Entries without a proven formula carry the ``SENTINEL`` status, and callers
are expected to hand those to the brute-force engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .forms import DifferentialForm, d_f_p, differential, omega, sigma
from .grading import WeightSystem, monomial_degree, monomials_of_degree, require_quasihomogeneous
from .milnor import MilnorAlgebra, count_vector, milnor_algebra
from .poly import Monomial, Polynomial, default_variables, power

FINITE = "finite"
INFINITE = "infinite"
SENTINEL = "sentinel"

_BASES = ("1", "df", "sigma", "omega")


@dataclass(frozen=True)
class Generator:
    """A class representative ``f^f_power * h * base``.

    ``h`` is the free coefficient (a Milnor basis monomial or a monomial of
    degree ``N - sum w``); ``f_power`` is the power of ``f`` forced on it.
    """

    h: Polynomial
    f_power: int
    base: str
    degree: int

    def __post_init__(self):
        if self.base not in _BASES:
            raise ValueError(f"unknown generator base {self.base!r}")

    def materialize(self, f: Polynomial, W: WeightSystem) -> DifferentialForm:
        coeff = self.h * power(f, self.f_power)
        if self.base == "1":
            return DifferentialForm.function(coeff)
        if self.base == "df":
            return differential(f) * coeff
        if self.base == "sigma":
            return sigma(W) * coeff
        return omega(W.n) * coeff

    def label(self, variables=None) -> str:
        variables = variables or default_variables(self.h.n)
        h = self.h.to_string(variables)
        parts = [] if h == "1" else [h if len(self.h) == 1 else f"({h})"]
        if self.f_power == 1:
            parts.append("f")
        elif self.f_power > 1:
            parts.append(f"f^{self.f_power}")
        if self.base != "1":
            parts.append(self.base)
        return "*".join(parts) or "1"

    def to_dict(self, variables=None) -> dict:
        variables = variables or default_variables(self.h.n)
        return {
            "h": self.h.to_string(variables),
            "f_power": self.f_power,
            "base": self.base,
            "degree": self.degree,
            "label": self.label(variables),
        }


@dataclass(frozen=True)
class ClosedFormEntry:
    k: int
    status: str
    dimension: int | None = None
    generators: tuple[Generator, ...] = ()
    e_dimension: int | None = None  # finite E-part of an infinite H^{n-1}
    note: str = ""

    @property
    def is_finite(self) -> bool:
        return self.status == FINITE

    @property
    def placement(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for g in self.generators:
            out[g.degree] = out.get(g.degree, 0) + 1
        return dict(sorted(out.items()))

    def dim_value(self):
        """The dimension in serialized form: an integer, ``"infinite"`` or ``None``."""
        if self.status == FINITE:
            return self.dimension
        if self.status == INFINITE:
            return INFINITE
        return None


@dataclass
class CohomologyReport:
    f: Polynomial
    weight_system: WeightSystem
    N: int
    p: int
    algebra: MilnorAlgebra
    entries: dict[int, ClosedFormEntry] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.weight_system.n

    def dimensions(self) -> tuple:
        return tuple(self.entries[k].dim_value() for k in range(self.n + 1))


def _sentinel(k: int, why: str) -> ClosedFormEntry:
    return ClosedFormEntry(k, SENTINEL, note=why)


def _mono(m: Monomial) -> Polynomial:
    return Polynomial.monomial(m)


def h0_dimension(f: Polynomial, W: WeightSystem, p: int) -> ClosedFormEntry:
    """Only ``f^{-p}`` survives, and only for ``p <= 0``."""
    if p > 0:
        return ClosedFormEntry(0, FINITE, 0)
    N = require_quasihomogeneous(f, W)
    g = Generator(Polynomial.one(f.n), -p, "1", -p * N)
    return ClosedFormEntry(0, FINITE, 1, (g,))


def h1_f(f: Polynomial, W: WeightSystem, p: int = 0) -> ClosedFormEntry:
    """``H^1_f`` is the line through ``df``; other twists have no formula."""
    if p != 0:
        return _sentinel(1, "H^1 is known only for p = 0")
    N = require_quasihomogeneous(f, W)
    return ClosedFormEntry(1, FINITE, 1, (Generator(Polynomial.one(f.n), 0, "df", N),))


def middle_dimension(n: int, k: int, p: int) -> ClosedFormEntry:
    if not 2 <= k <= n - 2:
        raise ValueError(f"middle degrees are 2..{n - 2}, got {k}")
    if p == 0 or p not in (k, k - 1):
        return ClosedFormEntry(k, FINITE, 0)
    return _sentinel(k, f"no formula for k = {k} with p in {{k, k-1}}")


def _family(A: MilnorAlgebra, q: int, top: int, base: str) -> list[Generator]:
    """The extra representatives ``f^{top-j} b`` (``deg b = jN - sum w``) and ``f^{top-1} u``."""
    W = A.weight_system
    N = A.f_degree
    S = W.weight_sum  # omega and sigma both have quasidegree sum w
    out = []
    for j in range(2, q):
        for b in A.basis_of_degree(j * N - S):
            out.append(Generator(_mono(b), top - j, base, monomial_degree(b, W) + (top - j) * N + S))
    for u in monomials_of_degree(W, N - S):
        out.append(Generator(_mono(u), top - 1, base, monomial_degree(u, W) + (top - 1) * N + S))
    return out


def hn_dimension(A: MilnorAlgebra, q: int) -> ClosedFormEntry:
    W = A.weight_system
    n = W.n
    S = W.weight_sum
    if q == 1:
        return ClosedFormEntry(n, INFINITE, note="H^n is infinite-dimensional for q = 1")
    gens = [Generator(_mono(b), 0, "omega", monomial_degree(b, W) + S) for b in A.basis]
    if q > 1:
        gens += _family(A, q, q, "omega")
    return ClosedFormEntry(n, FINITE, len(gens), tuple(gens))


def hn1_dimension(A: MilnorAlgebra, q: int) -> ClosedFormEntry:
    W = A.weight_system
    n = W.n
    N = A.f_degree
    if q <= 0:
        return ClosedFormEntry(n - 1, FINITE, 0)
    if q == 1:
        return _sentinel(n - 1, "no formula for H^{n-1} at q = 1")
    if q == 2:
        e = [
            Generator(_mono(u), 0, "sigma", N)
            for u in monomials_of_degree(W, N - W.weight_sum)
        ]
        return ClosedFormEntry(
            n - 1, INFINITE, generators=tuple(e), e_dimension=len(e),
            note="infinite F-part; E-part listed",
        )
    gens = _family(A, q, q - 1, "sigma")
    return ClosedFormEntry(n - 1, FINITE, len(gens), tuple(gens))


def full_report(f: Polynomial, W: WeightSystem, p: int, algebra: MilnorAlgebra | None = None) -> CohomologyReport:
    """Every ``H^k_{f,p}``, ``k = 0..n``, as far as the closed forms reach."""
    N = require_quasihomogeneous(f, W)
    A = algebra if algebra is not None else milnor_algebra(f, W)
    n = W.n
    q = n - p
    entries = {0: h0_dimension(f, W, p), 1: h1_f(f, W, p)}
    for k in range(2, n - 1):
        entries[k] = middle_dimension(n, k, p)
    entries[n - 1] = hn1_dimension(A, q)
    entries[n] = hn_dimension(A, q)
    return CohomologyReport(f, W, N, p, A, entries)


def generators_are_cocycles(report: CohomologyReport) -> bool:
    for e in report.entries.values():
        for g in e.generators:
            if not d_f_p(report.f, report.p, g.materialize(report.f, report.weight_system)).is_zero():
                return False
    return True


def counts(A: MilnorAlgebra, q: int):
    """``(r, s)`` for the twist ``p = n - q``."""
    return count_vector(A, q)
