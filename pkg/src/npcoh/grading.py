"""Weight systems, quasidegrees and the Euler field ``W = sum w_i x_i d/dx_i``."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .errors import NotQuasihomogeneousError, ResonanceError, VariableCountError
from .poly import Monomial, Polynomial


@dataclass(frozen=True)
class WeightSystem:
    weights: tuple[int, ...]
    weight_sum: int = field(init=False, compare=False)

    def __post_init__(self):
        weights = tuple(int(w) for w in self.weights)
        if len(weights) < 3:
            raise ValueError("the ambient dimension must be at least 3")
        if any(w < 1 for w in weights):
            raise ValueError(f"weights must be positive integers, got {weights}")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "weight_sum", sum(weights))

    @classmethod
    def uniform(cls, n: int) -> "WeightSystem":
        return cls((1,) * n)

    @property
    def n(self) -> int:
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __getitem__(self, i):
        return self.weights[i]

    def __str__(self):
        return ",".join(map(str, self.weights))


def _check(W: WeightSystem, n: int):
    if W.n != n:
        raise VariableCountError(f"weight system has {W.n} weights but data has {n} variables")


def monomial_degree(m: Monomial, W: WeightSystem) -> int:
    _check(W, len(m))
    return sum(a * w for a, w in zip(m, W.weights))


def quasihomogeneous_degree(p: Polynomial, W: WeightSystem) -> int | None:
    """Common quasidegree of all monomials of ``p``, or ``None`` if they differ.

    The zero polynomial has no degree and raises :class:`ValueError`.
    """
    _check(W, p.n)
    if p.is_zero():
        raise ValueError("the zero polynomial has no quasidegree")
    degrees = {monomial_degree(m, W) for m, _ in p.items()}
    if len(degrees) != 1:
        return None
    return degrees.pop()


def require_quasihomogeneous(f: Polynomial, W: WeightSystem) -> int:
    if f.is_zero():
        raise NotQuasihomogeneousError("the zero polynomial is not admissible")
    N = quasihomogeneous_degree(f, W)
    if N is None:
        raise NotQuasihomogeneousError(
            f"{f} is not quasihomogeneous for weights ({W})"
        )
    return N


@lru_cache(maxsize=8192)
def _monomials(weights: tuple[int, ...], d: int) -> tuple[Monomial, ...]:
    n = len(weights)
    out: list[Monomial] = []
    cur = [0] * n

    def rec(i, rem):
        w = weights[i]
        if i == n - 1:
            if rem % w == 0:
                cur[i] = rem // w
                out.append(tuple(cur))
            return
        for a in range(rem // w + 1):
            cur[i] = a
            rec(i + 1, rem - a * w)
        cur[i] = 0

    if d >= 0:
        rec(0, d)
    return tuple(out)


def monomials_of_degree(W: WeightSystem, d: int) -> list[Monomial]:
    """All monomials of quasidegree ``d``, in lex order (x1 most significant)."""
    return list(_monomials(W.weights, d))


def homogeneous_parts(p: Polynomial, W: WeightSystem) -> dict[int, Polynomial]:
    """Split ``p`` into its quasihomogeneous components, keyed by degree."""
    _check(W, p.n)
    parts: dict[int, dict] = {}
    for m, c in p.items():
        parts.setdefault(monomial_degree(m, W), {})[m] = c
    return {d: Polynomial._raw(t, p.n) for d, t in sorted(parts.items())}


def euler_apply(W: WeightSystem, p: Polynomial) -> Polynomial:
    """``W.p``: scale every monomial by its quasidegree."""
    _check(W, p.n)
    out = {}
    for m, c in p.items():
        d = monomial_degree(m, W)
        if d:
            out[m] = c * d
    return Polynomial._raw(out, p.n)


def homotopy_solve(W: WeightSystem, p: int, g: Polynomial) -> Polynomial:
    """Solve ``W.h - p*h = g`` for polynomial ``g`` without monomials of degree ``p``.

    The operator is diagonal on monomials, so ``h`` has the support of ``g``
    with each coefficient divided by ``deg - p``.
    """
    _check(W, g.n)
    out = {}
    for m, c in g.items():
        d = monomial_degree(m, W)
        if d == p:
            raise ResonanceError(m, d)
        out[m] = c / (d - p)
    return Polynomial._raw(out, g.n)


def infer_weights(f: Polynomial) -> tuple[WeightSystem, int]:
    """Smallest positive integer weights making ``f`` quasihomogeneous.

    Raises :class:`NotQuasihomogeneousError` when no positive weight system
    exists or when the weights are not determined by ``f`` alone.
    """
    n = f.n
    monos = [m for m, _ in f.items()]
    if not monos:
        raise NotQuasihomogeneousError("the zero polynomial has no weights")
    # unknowns w_1..w_n, N; equations sum a_i w_i - N = 0
    rows = [[Fraction(a) for a in m] + [Fraction(-1)] for m in monos]
    ncols = n + 1
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                fac = rows[i][c]
                rows[i] = [x - fac * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    if len(free) != 1:
        raise NotQuasihomogeneousError(
            f"weights of {f} are not determined uniquely ({len(free)} free parameters); pass them explicitly"
        )
    (fc,) = free
    sol = [Fraction(0)] * ncols
    sol[fc] = Fraction(1)
    for i, c in enumerate(pivots):
        sol[c] = -rows[i][fc]
    if sol[n] < 0:
        sol = [-x for x in sol]
    if any(x <= 0 for x in sol):
        raise NotQuasihomogeneousError(f"{f} admits no positive weight system")
    scale = lcm(*(x.denominator for x in sol))
    ints = [int(x * scale) for x in sol]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    return WeightSystem(tuple(ints[:n])), ints[n]
