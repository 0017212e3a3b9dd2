"""Jacobian ideal, Milnor algebra ``Q_f`` and its graded monomial basis.

Because ``f`` is quasihomogeneous, the Jacobian ideal is graded and every
question about ``Q_f`` reduces to linear algebra in one quasidegree at a
time: the degree-``d`` part of ``I_f`` is spanned by ``u * df/dx_i`` with
``u`` a monomial of degree ``d - (N - w_i)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InfiniteCodimensionError, NotQuasihomogeneousError
from .grading import (
    WeightSystem,
    monomial_degree,
    monomials_of_degree,
    require_quasihomogeneous,
)
from .linalg import Echelon, integer_vector
from .poly import Monomial, Polynomial


@dataclass(frozen=True)
class MilnorAlgebra:
    f: Polynomial
    weight_system: WeightSystem
    f_degree: int
    basis: tuple[Monomial, ...]
    degree_profile: dict[int, int] = field(hash=False)

    @property
    def codimension(self) -> int:
        return len(self.basis)

    @property
    def socle_bound(self) -> int:
        return socle_bound(self.weight_system, self.f_degree)

    def basis_of_degree(self, d: int) -> list[Monomial]:
        W = self.weight_system
        return [b for b in self.basis if monomial_degree(b, W) == d]

    def basis_polynomials(self) -> list[Polynomial]:
        return [Polynomial.monomial(b) for b in self.basis]


@dataclass(frozen=True)
class CountVector:
    r: dict[int, int]
    s: int

    def total(self) -> int:
        return sum(self.r.values()) + self.s


def socle_bound(W: WeightSystem, N: int) -> int:
    return sum(N - 2 * w for w in W.weights)


def jacobian_generators(f: Polynomial) -> list[Polynomial]:
    return [f.derivative(i) for i in range(f.n)]


def _ideal_echelon(gens: list[Polynomial], W: WeightSystem, N: int, d: int, index: dict):
    ech = Echelon()
    for i, g in enumerate(gens):
        if not g:
            continue
        for u in monomials_of_degree(W, d - (N - W.weights[i])):
            vec = {index[tuple(a + b for a, b in zip(m, u))]: c for m, c in g.items()}
            ech.insert(integer_vector(vec))
    return ech


def ideal_slice_dimension(f: Polynomial, W: WeightSystem, d: int) -> int:
    """Dimension of the degree-``d`` part of the Jacobian ideal."""
    N = require_quasihomogeneous(f, W)
    monos = monomials_of_degree(W, d)
    index = {m: j for j, m in enumerate(monos)}
    return _ideal_echelon(jacobian_generators(f), W, N, d, index).rank


def _quotient_basis(gens, W, N, d) -> list[Monomial]:
    # monomials are indexed in ascending lex order and pivots sit on the
    # largest index, so the complement collects the lex-smallest monomials
    monos = monomials_of_degree(W, d)
    index = {m: j for j, m in enumerate(monos)}
    ech = _ideal_echelon(gens, W, N, d, index)
    return [m for j, m in enumerate(monos) if j not in ech.pivots]


def milnor_algebra(f: Polynomial, W: WeightSystem) -> MilnorAlgebra:
    """Monomial basis of ``Q_f``, computed degree by degree up to the socle bound.

    Degrees ``socle+1 .. socle+N`` are checked to carry no quotient; any
    survivor there means ``f`` does not have an isolated singularity.
    """
    N = require_quasihomogeneous(f, W)
    if f.constant_term():
        raise NotQuasihomogeneousError("f must vanish at the origin")
    gens = jacobian_generators(f)
    singular = all(g.constant_term() == 0 for g in gens)
    if singular:
        for i in range(f.n):
            if not any(m[i] for g in gens for m, _ in g.items()):
                raise InfiniteCodimensionError(
                    f"variable x{i + 1} is absent from every partial derivative of {f}"
                )
    top = socle_bound(W, N)
    basis: list[Monomial] = []
    profile: dict[int, int] = {}
    for d in range(0, max(top, -1) + 1):
        chosen = _quotient_basis(gens, W, N, d)
        if chosen:
            basis.extend(chosen)
            profile[d] = len(chosen)
    for d in range(max(top + 1, 0), max(top, -1) + N + 1):
        if _quotient_basis(gens, W, N, d):
            raise InfiniteCodimensionError(
                f"Q_f has elements of degree {d} beyond the socle bound {top}"
            )
    return MilnorAlgebra(f, W, N, tuple(basis), profile)


def milnor_number_oracle(W: WeightSystem, N: int) -> Fraction:
    """``prod (N - w_i) / w_i``, the codimension of an isolated quasihomogeneous singularity."""
    out = Fraction(1)
    for w in W.weights:
        out *= Fraction(N - w, w)
    return out


def poincare_series(W: WeightSystem, N: int) -> dict[int, int]:
    """Coefficients of ``prod (t^(N-w_i) - 1) / (t^(w_i) - 1)`` by exact division."""

    def mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return out

    num = [1]
    den = [1]
    for w in W.weights:
        e = N - w
        if e < 0:
            raise ValueError("weights exceed the degree")
        top = [0] * (e + 1)
        top[e] += 1
        top[0] -= 1
        num = mul(num, top)
        bot = [0] * (w + 1)
        bot[w] += 1
        bot[0] -= 1
        den = mul(den, bot)
    while num and num[-1] == 0:
        num.pop()
    if not num:
        return {}
    # long division by a polynomial with leading coefficient 1
    q = [0] * (len(num) - len(den) + 1)
    rem = list(num)
    for i in range(len(q) - 1, -1, -1):
        c = rem[i + len(den) - 1]
        q[i] = c
        if c:
            for j, y in enumerate(den):
                rem[i + j] -= c * y
    if any(rem):
        raise ArithmeticError("Poincare quotient is not a polynomial")
    return {d: c for d, c in enumerate(q) if c}


def count_vector(A: MilnorAlgebra, q: int) -> CountVector:
    """``r_j`` (``2 <= j <= q-1``) and ``s`` for the twist ``p = n - q``."""
    W = A.weight_system
    N = A.f_degree
    r = {}
    for j in range(2, q):
        r[j] = A.degree_profile.get(j * N - W.weight_sum, 0)
    s = len(monomials_of_degree(W, N - W.weight_sum))
    return CountVector(r, s)
