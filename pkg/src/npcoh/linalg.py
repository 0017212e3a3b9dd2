"""Exact sparse linear algebra over the integers / rationals.

Vectors are ``dict[int, int]`` mapping a coordinate index to a non-zero
integer.  Elimination is fraction-free: a vector ``v`` is reduced against a
stored pivot vector ``u`` as ``b*v - a*u`` and then divided by the gcd of its
entries, so coefficients stay small and no rationals appear until a solution
is read off.  The pivot of a vector is its largest non-zero index, which makes
every result a deterministic function of the input order.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from fractions import Fraction
from math import gcd, lcm

Vector = dict[int, int]


def _content(*vecs: Vector) -> int:
    g = 0
    for v in vecs:
        for x in v.values():
            g = gcd(g, x)
            if g == 1:
                return 1
    return g


def _divide(v: Vector, g: int) -> Vector:
    return {k: x // g for k, x in v.items()}


def _combine(v: Vector, b: int, u: Vector, a: int) -> Vector:
    """``b*v - a*u`` with cancelled entries dropped."""
    out = {k: x * b for k, x in v.items()} if b != 1 else dict(v)
    for k, x in u.items():
        y = out.get(k, 0) - a * x
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def integer_vector(entries: dict[int, Fraction]) -> Vector:
    """Scale a rational vector to a primitive integer vector with the same span."""
    entries = {k: Fraction(x) for k, x in entries.items() if x}
    if not entries:
        return {}
    d = lcm(*(x.denominator for x in entries.values()))
    v = {k: int(x * d) for k, x in entries.items()}
    g = _content(v)
    return _divide(v, g) if g > 1 else v


class Echelon:
    """Incrementally built echelon basis of a subspace of Q^dim.

    With ``track=True`` every stored pivot vector carries the combination of
    inserted vectors it came from, which is what kernels and solves need.
    """

    def __init__(self, track: bool = False):
        self.pivots: dict[int, Vector] = {}
        self.combos: dict[int, Vector] = {}
        self.track = track

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, v: Vector, combo: Vector | None = None):
        pivots = self.pivots
        track = self.track and combo is not None
        while v:
            lead = max(v)
            u = pivots.get(lead)
            if u is None:
                break
            a = v[lead]
            b = u[lead]
            g = gcd(a, b)
            a //= g
            b //= g
            if b < 0:
                a, b = -a, -b
            v = _combine(v, b, u, a)
            if track:
                combo = _combine(combo, b, self.combos[lead], a)
                g = _content(v, combo)
                if g > 1:
                    v = _divide(v, g)
                    combo = _divide(combo, g)
            else:
                g = _content(v)
                if g > 1:
                    v = _divide(v, g)
        return v, combo

    def insert(self, v: Vector, combo: Vector | None = None) -> bool:
        """Insert ``v``; return ``True`` if it enlarged the span."""
        v, combo = self.reduce(v, combo)
        if not v:
            return False
        lead = max(v)
        self.pivots[lead] = v
        if self.track:
            self.combos[lead] = combo if combo is not None else {}
        return True

    def contains(self, v: Vector) -> bool:
        reduced, _ = self.reduce(dict(v))
        return not reduced


def rank(columns: Iterable[Vector]) -> int:
    ech = Echelon()
    for col in columns:
        ech.insert(dict(col))
    return ech.rank


def kernel(columns: Sequence[Vector]) -> list[Vector]:
    """Primitive integer basis of the kernel of the matrix with these columns.

    The ``j``-th returned vector has a non-zero entry at the index of the
    ``j``-th dependent column, so the basis is triangular and independent.
    """
    ech = Echelon(track=True)
    out = []
    for j, col in enumerate(columns):
        v, combo = ech.reduce(dict(col), {j: 1})
        if v:
            lead = max(v)
            ech.pivots[lead] = v
            ech.combos[lead] = combo
        else:
            g = _content(combo)
            if g > 1:
                combo = _divide(combo, g)
            if combo[max(combo)] < 0:
                combo = {k: -x for k, x in combo.items()}
            out.append(combo)
    return out


def solve(columns: Sequence[Vector], target: Vector) -> dict[int, Fraction] | None:
    """A rational ``x`` with ``sum_j x_j * columns[j] == target``, or ``None``."""
    ech = Echelon(track=True)
    for j, col in enumerate(columns):
        ech.insert(dict(col), {j: 1})
    # v = s*target - A*x, tracked through reductions as combo = {-1: s} + x
    v = dict(target)
    if not v:
        return {}
    scale = 1
    x: Vector = {}
    pivots = ech.pivots
    while v:
        lead = max(v)
        u = pivots.get(lead)
        if u is None:
            return None
        a = v[lead]
        b = u[lead]
        g = gcd(a, b)
        a //= g
        b //= g
        if b < 0:
            a, b = -a, -b
        v = _combine(v, b, u, a)
        scale *= b
        x = _combine(x, b, ech.combos[lead], -a)
        g = gcd(_content(v, x), scale)
        if g > 1:
            v = _divide(v, g)
            x = _divide(x, g)
            scale //= g
    return {j: Fraction(c, scale) for j, c in x.items() if c}


def matvec(columns: Sequence[Vector], x: dict[int, Fraction]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for j, c in x.items():
        for i, a in columns[j].items():
            y = out.get(i, 0) + a * c
            if y:
                out[i] = y
            else:
                out.pop(i, None)
    return out


def independent_modulo(base: Iterable[Vector], candidates: Sequence[Vector]) -> list[int]:
    """Indices of candidates that extend span(base), chosen greedily in order."""
    ech = Echelon()
    for v in base:
        ech.insert(dict(v))
    return [i for i, v in enumerate(candidates) if ech.insert(dict(v))]
