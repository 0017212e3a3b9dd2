"""Polynomial differential forms on K^n and the twisted differentials.

A k-form is stored as a map from sorted index tuples ``I = (i1 < ... < ik)``
(zero-based) to polynomial coefficients of ``dx_I``.  The volume form is
``omega = dx1^...^dxn`` and ``sigma = i_W omega``.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from fractions import Fraction
from itertools import combinations

from .errors import VariableCountError
from .grading import WeightSystem, euler_apply, homogeneous_parts, monomial_degree
from .poly import Polynomial, default_variables

Index = tuple[int, ...]


def merge_sign(i: int, I: Index) -> tuple[int, Index | None]:
    """``dx_i ^ dx_I = sign * dx_J``; returns ``(0, None)`` if ``i`` is in ``I``."""
    pos = 0
    for j in I:
        if j == i:
            return 0, None
        if j < i:
            pos += 1
    J = I[:pos] + (i,) + I[pos:]
    return (-1 if pos & 1 else 1), J


def shuffle_sign(I: Index, J: Index) -> tuple[int, Index | None]:
    """``dx_I ^ dx_J = sign * dx_K`` for sorted ``I``, ``J``."""
    if set(I) & set(J):
        return 0, None
    inversions = 0
    for a in I:
        for b in J:
            if a > b:
                inversions += 1
    return (-1 if inversions & 1 else 1), tuple(sorted(I + J))


class DifferentialForm:
    """Immutable polynomial k-form on K^n."""

    __slots__ = ("_n", "_k", "_comp", "_hash")

    def __init__(self, n: int, k: int, components: Mapping[Index, Polynomial] | None = None):
        if not 0 <= k <= n:
            raise ValueError(f"form degree {k} outside 0..{n}")
        comp: dict[Index, Polynomial] = {}
        for I, c in (components or {}).items():
            I = tuple(I)
            if len(I) != k or list(I) != sorted(set(I)) or (I and not 0 <= I[0] <= I[-1] < n):
                raise ValueError(f"bad index subset {I} for a {k}-form on K^{n}")
            if not isinstance(c, Polynomial):
                c = Polynomial.constant(c, n)
            if c.n != n:
                raise VariableCountError(f"coefficient in {c.n} variables on K^{n}")
            if c:
                comp[I] = comp[I] + c if I in comp else c
                if not comp[I]:
                    del comp[I]
        self._n = n
        self._k = k
        self._comp = comp
        self._hash = None

    @classmethod
    def _raw(cls, n, k, comp):
        obj = object.__new__(cls)
        obj._n = n
        obj._k = k
        obj._comp = comp
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, n: int, k: int) -> "DifferentialForm":
        return cls._raw(n, k, {})

    @classmethod
    def function(cls, g: Polynomial) -> "DifferentialForm":
        return cls._raw(g.n, 0, {(): g} if g else {})

    @property
    def n(self) -> int:
        return self._n

    @property
    def degree(self) -> int:
        return self._k

    @property
    def components(self) -> Mapping[Index, Polynomial]:
        return dict(self._comp)

    def __getitem__(self, I) -> Polynomial:
        return self._comp.get(tuple(I), Polynomial.zero(self._n))

    def items(self):
        return sorted(self._comp.items())

    def is_zero(self) -> bool:
        return not self._comp

    def __bool__(self):
        return bool(self._comp)

    def as_function(self) -> Polynomial:
        if self._k != 0:
            raise ValueError("only 0-forms are functions")
        return self[()]

    def __eq__(self, other):
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        return self._n == other._n and self._k == other._k and self._comp == other._comp

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._n, self._k, frozenset(self._comp.items())))
        return self._hash

    def _same_shape(self, other):
        if not isinstance(other, DifferentialForm):
            raise TypeError(f"expected a DifferentialForm, got {type(other).__name__}")
        if other._n != self._n:
            raise VariableCountError(f"forms on K^{self._n} and K^{other._n}")
        if other._k != self._k:
            raise ValueError(f"cannot add a {self._k}-form and a {other._k}-form")

    def __add__(self, other):
        self._same_shape(other)
        comp = dict(self._comp)
        for I, c in other._comp.items():
            v = comp[I] + c if I in comp else c
            if v:
                comp[I] = v
            else:
                comp.pop(I, None)
        return DifferentialForm._raw(self._n, self._k, comp)

    def __neg__(self):
        return DifferentialForm._raw(self._n, self._k, {I: -c for I, c in self._comp.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, g):
        """Multiply by a function (Polynomial) or a scalar."""
        if isinstance(g, (int, Fraction)):
            g = Polynomial.constant(g, self._n)
        if not isinstance(g, Polynomial):
            return NotImplemented
        comp = {}
        for I, c in self._comp.items():
            v = c * g
            if v:
                comp[I] = v
        return DifferentialForm._raw(self._n, self._k, comp)

    __rmul__ = __mul__

    def quasidegree(self, W: WeightSystem) -> int | None:
        """Common quasidegree, ``None`` if mixed; raises on the zero form."""
        degs = set()
        for I, c in self._comp.items():
            shift = sum(W.weights[i] for i in I)
            for m, _ in c.items():
                degs.add(monomial_degree(m, W) + shift)
        if not degs:
            raise ValueError("the zero form has no quasidegree")
        return degs.pop() if len(degs) == 1 else None

    def homogeneous_parts(self, W: WeightSystem) -> dict[int, "DifferentialForm"]:
        parts: dict[int, dict[Index, Polynomial]] = {}
        for I, c in self._comp.items():
            shift = sum(W.weights[i] for i in I)
            for d, piece in homogeneous_parts(c, W).items():
                parts.setdefault(d + shift, {})[I] = piece
        return {d: DifferentialForm._raw(self._n, self._k, comp) for d, comp in sorted(parts.items())}

    def to_string(self, variables: Sequence[str] | None = None) -> str:
        if not self._comp:
            return "0"
        variables = list(variables) if variables is not None else default_variables(self._n)
        parts = []
        for I, c in self.items():
            coeff = c.to_string(variables)
            if not I:
                parts.append(f"({coeff})")
            else:
                parts.append(f"({coeff}) " + "^".join(f"d{variables[i]}" for i in I))
        return " + ".join(parts)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"DifferentialForm({self.to_string()!r}, k={self._k})"


class PolyVectorField:
    """Vector field ``sum X_i d/dx_i`` with polynomial coefficients."""

    __slots__ = ("components",)

    def __init__(self, components: Sequence[Polynomial]):
        components = tuple(components)
        n = len(components)
        if any(c.n != n for c in components):
            raise VariableCountError("vector field components must live on K^n")
        self.components = components

    @property
    def n(self) -> int:
        return len(self.components)

    def apply(self, g: Polynomial) -> Polynomial:
        out = Polynomial.zero(self.n)
        for i, X in enumerate(self.components):
            if X:
                out = out + X * g.derivative(i)
        return out


def euler_field(W: WeightSystem) -> PolyVectorField:
    n = W.n
    return PolyVectorField(
        [Polynomial.variable(i, n).scale(w) for i, w in enumerate(W.weights)]
    )


# -- basic forms ----------------------------------------------------------------


def dx(i: int, n: int) -> DifferentialForm:
    return DifferentialForm._raw(n, 1, {(i,): Polynomial.one(n)})


def omega(n: int) -> DifferentialForm:
    return DifferentialForm._raw(n, n, {tuple(range(n)): Polynomial.one(n)})


def sigma(W: WeightSystem) -> DifferentialForm:
    """``i_W omega = sum (-1)^(i-1) w_i x_i dx1^..^(no dx_i)^..^dxn``."""
    return interior_product(euler_field(W), omega(W.n))


def basis_form(n: int, mono, I: Index, coeff=1) -> DifferentialForm:
    return DifferentialForm._raw(n, len(I), {tuple(I): Polynomial.monomial(mono, coeff)})


# -- exterior calculus ----------------------------------------------------------


def _as_form(a) -> DifferentialForm:
    if isinstance(a, Polynomial):
        return DifferentialForm.function(a)
    if not isinstance(a, DifferentialForm):
        raise TypeError(f"expected a form or polynomial, got {type(a).__name__}")
    return a


def wedge(a, b) -> DifferentialForm:
    a = _as_form(a)
    b = _as_form(b)
    if a.n != b.n:
        raise VariableCountError(f"forms on K^{a.n} and K^{b.n}")
    n = a.n
    k = a.degree + b.degree
    if k > n:
        return DifferentialForm.zero(n, n)  # degree overflow: nothing survives
    comp: dict[Index, Polynomial] = {}
    for I, c in a._comp.items():
        for J, e in b._comp.items():
            s, K = shuffle_sign(I, J)
            if not s:
                continue
            v = c * e
            if s < 0:
                v = -v
            comp[K] = comp[K] + v if K in comp else v
    return DifferentialForm._raw(n, k, {K: v for K, v in comp.items() if v})


def exterior_d(a) -> DifferentialForm:
    a = _as_form(a)
    n = a.n
    if a.degree == n:
        return DifferentialForm.zero(n, n)
    comp: dict[Index, Polynomial] = {}
    for I, c in a._comp.items():
        for i in range(n):
            s, J = merge_sign(i, I)
            if not s:
                continue
            v = c.derivative(i)
            if not v:
                continue
            if s < 0:
                v = -v
            comp[J] = comp[J] + v if J in comp else v
    return DifferentialForm._raw(n, a.degree + 1, {J: v for J, v in comp.items() if v})


def differential(g: Polynomial) -> DifferentialForm:
    return exterior_d(DifferentialForm.function(g))


def interior_product(X: PolyVectorField, a) -> DifferentialForm:
    a = _as_form(a)
    if a.degree == 0:
        raise ValueError("cannot contract a vector field into a 0-form")
    if X.n != a.n:
        raise VariableCountError(f"vector field on K^{X.n}, form on K^{a.n}")
    n = a.n
    comp: dict[Index, Polynomial] = {}
    for I, c in a._comp.items():
        for pos, i in enumerate(I):
            Xi = X.components[i]
            if not Xi:
                continue
            J = I[:pos] + I[pos + 1:]
            v = Xi * c
            if pos & 1:
                v = -v
            comp[J] = comp[J] + v if J in comp else v
    return DifferentialForm._raw(n, a.degree - 1, {J: v for J, v in comp.items() if v})


def lie_derivative_W(W: WeightSystem, a) -> DifferentialForm:
    """Cartan's formula ``L_W = i_W d + d i_W``."""
    a = _as_form(a)
    X = euler_field(W)
    if a.degree == 0:
        return DifferentialForm.function(euler_apply(W, a.as_function()))
    first = interior_product(X, exterior_d(a)) if a.degree < a.n else DifferentialForm.zero(a.n, a.degree)
    return first + exterior_d(interior_product(X, a))


def divergence(a: DifferentialForm) -> Polynomial:
    """The polynomial ``div(a)`` with ``d a = div(a) * omega`` for an (n-1)-form."""
    if a.degree != a.n - 1:
        raise ValueError(f"divergence needs an (n-1)-form, got a {a.degree}-form")
    return exterior_d(a)[tuple(range(a.n))]


def d_f_p(f: Polynomial, p: int, a) -> DifferentialForm:
    """``f da - (k - p) df ^ a`` on a k-form ``a``."""
    a = _as_form(a)
    k = a.degree
    out = exterior_d(a) * f
    if k - p:
        out = out - wedge(differential(f), a) * (k - p)
    return out


def d_f(f: Polynomial, a) -> DifferentialForm:
    return d_f_p(f, 0, a)


def all_index_sets(n: int, k: int) -> list[Index]:
    return list(combinations(range(n), k))
