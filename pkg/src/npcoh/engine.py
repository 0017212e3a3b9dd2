"""Brute-force cohomology of ``(Omega^*, d_f^(p))`` one graded slice at a time.

For quasihomogeneous ``f`` of degree ``N`` the operator
``d_f^(p)(a) = f da - (k - p) df ^ a`` maps the finite-dimensional slice
``Omega^k_m`` of k-forms of quasidegree ``m`` into ``Omega^{k+1}_{m+N}``, so

    dim H^k_m = dim Omega^k_m - rank(A_{k,m}) - rank(A_{k-1,m-N}).

Ranks are exact.  Before eliminating over Q, each slice is screened with a
rank modulo a prime: that rank is a lower bound for the rational one, so a
screened upper bound of zero on ``dim H^k_m`` is already exact, and a
modular rank equal to the matrix's smaller side is already the exact rank.
Only the remaining slices go through exact elimination.
"""

from __future__ import annotations

from collections import OrderedDict
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from . import _kernels, linalg
from .errors import NoSolutionError
from .forms import (
    DifferentialForm,
    Index,
    d_f_p,
    differential,
    exterior_d,
    wedge,
)
from .grading import WeightSystem, monomials_of_degree, require_quasihomogeneous
from .poly import Monomial, Polynomial


@dataclass(frozen=True)
class GradedSlice:
    """Monomial basis ``x^a dx_I`` of the k-forms of quasidegree ``m``."""

    n: int
    k: int
    m: int
    basis: tuple[tuple[Monomial, Index], ...]
    index: dict = field(compare=False, hash=False, repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def form(self, vec: dict[int, object]) -> DifferentialForm:
        comp: dict[Index, dict] = {}
        for j, c in vec.items():
            if c:
                mono, I = self.basis[j]
                comp.setdefault(I, {})[mono] = Fraction(c)
        return DifferentialForm(
            self.n, self.k, {I: Polynomial(t, self.n) for I, t in comp.items()}
        )

    def vector(self, a: DifferentialForm) -> dict[int, Fraction]:
        if a.degree != self.k or a.n != self.n:
            raise ValueError(f"a {a.degree}-form does not live in the slice Omega^{self.k}")
        out = {}
        for I, c in a.items():
            for mono, v in c.items():
                j = self.index.get((mono, I))
                if j is None:
                    raise ValueError(f"term {mono} dx{I} is not of quasidegree {self.m}")
                out[j] = v
        return out


@lru_cache(maxsize=4096)
def _slice(weights: tuple[int, ...], k: int, m: int) -> GradedSlice:
    n = len(weights)
    basis = []
    for I in combinations(range(n), k):
        for mono in monomials_of_degree(WeightSystem(weights), m - sum(weights[i] for i in I)):
            basis.append((mono, I))
    basis = tuple(basis)
    return GradedSlice(n, k, m, basis, {b: j for j, b in enumerate(basis)})


_BITS = 20  # bits per exponent in a packed monomial code


def _pack(mono: Monomial) -> int:
    code = 0
    for i, a in enumerate(mono):
        code |= a << (_BITS * i)
    return code


@lru_cache(maxsize=4096)
def _packed(weights: tuple[int, ...], k: int, m: int):
    """Slice basis as ``(monomial code, dx mask)`` pairs plus the key -> row map."""
    n = len(weights)
    pairs = []
    index = {}
    for j, (mono, I) in enumerate(_slice(weights, k, m).basis):
        mask = 0
        for i in I:
            mask |= 1 << i
        code = _pack(mono)
        pairs.append((mono, code, mask))
        index[(code << n) | mask] = j
    return pairs, index


def slice_basis(W: WeightSystem, k: int, m: int) -> GradedSlice:
    if not 0 <= k <= W.n:
        raise ValueError(f"form degree {k} outside 0..{W.n}")
    return _slice(W.weights, k, m)


@dataclass
class SliceMatrix:
    """Matrix of ``d_f^(p): Omega^k_m -> Omega^{k+1}_{m+N}``.

    ``columns`` hold integer entries of the operator built from the primitive
    integer multiple ``f / factor`` of ``f``; the true entries are
    ``factor * columns``.
    """

    source: GradedSlice
    target: GradedSlice | None
    columns: list[dict[int, int]]
    factor: Fraction

    @property
    def shape(self) -> tuple[int, int]:
        return (self.target.dim if self.target else 0, self.source.dim)

    def entry(self, i: int, j: int) -> Fraction:
        return self.factor * self.columns[j].get(i, 0)

    def dense(self) -> list[list[Fraction]]:
        rows, cols = self.shape
        out = [[Fraction(0)] * cols for _ in range(rows)]
        for j, col in enumerate(self.columns):
            for i, x in col.items():
                out[i][j] = self.factor * x
        return out


def _integer_primitive(f: Polynomial) -> tuple[dict, Fraction]:
    c = f.content()
    return {m: int(v / c) for m, v in f.items()}, c


class TwistedComplex:
    """Slice-level data of the complex ``(Omega^*, d_f^(p))`` with caching."""

    def __init__(self, f: Polynomial, W: WeightSystem, p: int):
        self.f = f
        self.W = W
        self.p = p
        self.n = W.n
        self.N = require_quasihomogeneous(f, W)
        self.F, self.factor = _integer_primitive(f)
        self.dF = []
        for i in range(self.n):
            terms = []
            for mono, c in self.F.items():
                if mono[i]:
                    mm = list(mono)
                    mm[i] -= 1
                    terms.append((tuple(mm), c * mono[i]))
            self.dF.append(terms)
        self.F_terms = list(self.F.items())
        self._F_codes = [(_pack(mono), c) for mono, c in self.F_terms]
        self._dF_codes = [[(_pack(mono), c) for mono, c in terms] for terms in self.dF]
        self._rank: dict[tuple[int, int], int] = {}
        self._mod_rank: dict[tuple[int, int], int] = {}
        self._columns: OrderedDict[tuple[int, int], list] = OrderedDict()

    _COLUMN_CACHE = 8

    # -- matrices -----------------------------------------------------------

    def columns(self, k: int, m: int) -> list[dict[int, int]]:
        """Sparse integer columns of ``A_{k,m}`` (for ``f / factor``); do not mutate."""
        key = (k, m)
        cache = self._columns
        if key in cache:
            cache.move_to_end(key)
            return cache[key]
        cols = self._build_columns(k, m)
        cache[key] = cols
        if len(cache) > self._COLUMN_CACHE:
            cache.popitem(last=False)
        return cols

    def _build_columns(self, k: int, m: int) -> list[dict[int, int]]:
        weights = self.W.weights
        n = self.n
        src, _ = _packed(weights, k, m)
        if k == n:
            return [{} for _ in src]
        _, idx = _packed(weights, k + 1, m + self.N)
        twist = k - self.p
        F = self._F_codes
        dF = self._dF_codes
        unit = [1 << (_BITS * i) for i in range(n)]
        cols = []
        for mono, code, mask in src:
            col: dict[int, int] = {}
            for i in range(n):
                bit = 1 << i
                if mask & bit:
                    continue
                s = -1 if bin(mask & (bit - 1)).count("1") & 1 else 1
                J = mask | bit
                a = mono[i]
                if a:
                    # f * d(x^a dx_I) contributes a_i x^(a - e_i) f dx_i ^ dx_I
                    base = code - unit[i]
                    sa = s * a
                    for fc, c in F:
                        key = idx[((base + fc) << n) | J]
                        col[key] = col.get(key, 0) + sa * c
                if twist:
                    st = twist * s
                    for gc, c in dF[i]:
                        key = idx[((code + gc) << n) | J]
                        col[key] = col.get(key, 0) - st * c
            cols.append({r: v for r, v in col.items() if v})
        return cols

    def matrix(self, k: int, m: int) -> SliceMatrix:
        src = slice_basis(self.W, k, m)
        tgt = slice_basis(self.W, k + 1, m + self.N) if k < self.n else None
        return SliceMatrix(src, tgt, self.columns(k, m), self.factor)

    # -- ranks --------------------------------------------------------------

    def _shape(self, k, m):
        if k < 0:
            return 0, 0
        rows = slice_basis(self.W, k + 1, m + self.N).dim if k < self.n else 0
        return rows, slice_basis(self.W, k, m).dim

    def mod_rank(self, k: int, m: int) -> int:
        key = (k, m)
        if key not in self._mod_rank:
            if key in self._rank:
                return self._rank[key]
            rows, cols = self._shape(k, m)
            if k < 0 or rows == 0 or cols == 0:
                self._mod_rank[key] = 0
            else:
                self._mod_rank[key] = _kernels.rank_mod(self.columns(k, m), rows)
        return self._mod_rank[key]

    def rank(self, k: int, m: int, screen: bool = True) -> int:
        """Exact rank of ``A_{k,m}`` over Q."""
        key = (k, m)
        if key in self._rank:
            return self._rank[key]
        rows, cols = self._shape(k, m) if k >= 0 else (0, 0)
        if k < 0 or rows == 0 or cols == 0:
            r = 0
        else:
            r = None
            if screen:
                lower = self.mod_rank(k, m)
                if lower == min(rows, cols):
                    r = lower
            if r is None:
                r = linalg.rank(self.columns(k, m))
        self._rank[key] = r
        return r

    def dimension(self, k: int, m: int, screen: bool = True) -> int:
        dim = slice_basis(self.W, k, m).dim
        if dim == 0:
            return 0
        if screen:
            upper = dim - self.mod_rank(k, m) - self.mod_rank(k - 1, m - self.N)
            if upper == 0:
                return 0
        return dim - self.rank(k, m, screen) - self.rank(k - 1, m - self.N, screen)

    # -- kernels and witnesses ---------------------------------------------

    def kernel(self, k: int, m: int) -> list[dict[int, int]]:
        return linalg.kernel(self.columns(k, m))

    def image_columns(self, k: int, m: int) -> list[dict[int, int]]:
        """Columns spanning the image inside ``Omega^k_m``."""
        if k == 0:
            return []
        return self.columns(k - 1, m - self.N)

    def witnesses(self, k: int, m: int) -> list[DifferentialForm]:
        src = slice_basis(self.W, k, m)
        ker = self.kernel(k, m)
        chosen = linalg.independent_modulo(self.image_columns(k, m), ker)
        return [src.form(ker[i]) for i in chosen]


@lru_cache(maxsize=64)
def twisted_complex(f: Polynomial, W: WeightSystem, p: int) -> TwistedComplex:
    return TwistedComplex(f, W, p)


# -- public operations -------------------------------------------------------


def operator_matrix(f: Polynomial, W: WeightSystem, p: int, k: int, m: int) -> SliceMatrix:
    return twisted_complex(f, W, p).matrix(k, m)


def cohomology_dimension(
    f: Polynomial, W: WeightSystem, p: int, k: int, m: int, screen: bool = True
) -> int:
    if not 0 <= k <= W.n:
        raise ValueError(f"form degree {k} outside 0..{W.n}")
    return twisted_complex(f, W, p).dimension(k, m, screen)


def default_window(f: Polynomial, W: WeightSystem, p: int) -> tuple[int, int]:
    """``[0, qN + sum max(N - 2w_i, 0) + 2N]`` with ``q = max(n, n - p)``."""
    N = require_quasihomogeneous(f, W)
    q = max(W.n, W.n - p)
    return 0, q * N + sum(max(N - 2 * w, 0) for w in W.weights) + 2 * N


@dataclass
class CohomologyProfile:
    k: int
    p: int
    per_degree: dict[int, int]
    window: tuple[int, int]
    margin: int

    @property
    def total(self) -> int:
        return sum(self.per_degree.values())

    @property
    def stabilized(self) -> bool:
        lo, hi = self.window
        return not any(d for m, d in self.per_degree.items() if m > hi - self.margin)

    def nonzero_degrees(self) -> list[int]:
        return sorted(m for m, d in self.per_degree.items() if d)

    def nonstabilizing_evidence(self, min_degrees: int = 3) -> bool:
        """Non-zero dimensions in at least ``min_degrees`` degrees beyond ``hi / 2``."""
        hi = self.window[1]
        return len([m for m in self.nonzero_degrees() if m > hi / 2]) >= min_degrees

    def to_dict(self) -> dict:
        return {
            "per_degree": {str(m): d for m, d in sorted(self.per_degree.items())},
            "window": list(self.window),
            "total": self.total,
            "stabilized": self.stabilized,
        }


def cohomology_profile(
    f: Polynomial,
    W: WeightSystem,
    p: int,
    k: int,
    window: tuple[int, int] | None = None,
    screen: bool = True,
) -> CohomologyProfile:
    cx = twisted_complex(f, W, p)
    lo, hi = window if window is not None else default_window(f, W, p)
    if lo > hi:
        raise ValueError(f"empty window [{lo}, {hi}]")
    per_degree = {}
    for m in range(max(lo, 0), hi + 1):
        d = cx.dimension(k, m, screen)
        if d:
            per_degree[m] = d
    return CohomologyProfile(k, p, per_degree, (lo, hi), cx.N)


def witness_cocycles(f: Polynomial, W: WeightSystem, p: int, k: int, m: int) -> list[DifferentialForm]:
    """Cocycles whose classes form a basis of the degree-``m`` cohomology."""
    return twisted_complex(f, W, p).witnesses(k, m)


def certify_witnesses(
    f: Polynomial, W: WeightSystem, p: int, k: int, m: int, forms: Sequence[DifferentialForm]
) -> bool:
    """Re-check witnesses through the forms module and an exact rank count."""
    cx = twisted_complex(f, W, p)
    src = slice_basis(W, k, m)
    for w in forms:
        if not d_f_p(f, p, w).is_zero():
            return False
    image = cx.image_columns(k, m)
    vecs = [linalg.integer_vector(src.vector(w)) for w in forms]
    return linalg.rank(image + vecs) == linalg.rank(image) + len(forms)


def _scaled(vec: dict[int, Fraction]) -> tuple[dict[int, int], Fraction]:
    """Primitive integer multiple of ``vec`` and the factor it was scaled by."""
    ints = linalg.integer_vector(vec)
    if not ints:
        return ints, Fraction(1)
    j = next(iter(ints))
    return ints, Fraction(ints[j]) / Fraction(vec[j])


def coboundary_preimage(f: Polynomial, W: WeightSystem, p: int, a: DifferentialForm):
    """A form ``b`` with ``d_f^(p) b = a``, or ``None`` if ``a`` is not a coboundary."""
    cx = twisted_complex(f, W, p)
    k = a.degree
    if k == 0:
        return DifferentialForm.zero(W.n, 0) if a.is_zero() else None
    total = DifferentialForm.zero(W.n, k - 1)
    for m, part in a.homogeneous_parts(W).items():
        tgt = slice_basis(W, k, m)
        src = slice_basis(W, k - 1, m - cx.N)
        target, ratio = _scaled(tgt.vector(part))
        sol = linalg.solve(cx.columns(k - 1, m - cx.N), target)
        if sol is None:
            return None
        # the columns are those of f / factor, the target was multiplied by ratio
        scale = 1 / (ratio * cx.factor)
        total = total + src.form({j: x * scale for j, x in sol.items()})
    return total


def is_coboundary(f: Polynomial, W: WeightSystem, p: int, a: DifferentialForm) -> bool:
    return coboundary_preimage(f, W, p, a) is not None


# -- division by df ----------------------------------------------------------


def divide_by_df(f: Polynomial, W: WeightSystem, a: DifferentialForm, mode: str = "wedge") -> DifferentialForm:
    """Solve ``a = df ^ b`` (``mode='wedge'``) or ``a = df ^ d c`` (``mode='wedge_d'``).

    The solve is exact and done one quasidegree at a time.  In ``wedge`` mode a
    top-degree ``a`` is accepted too; it is divisible exactly when its
    coefficient lies in the Jacobian ideal.
    """
    N = require_quasihomogeneous(f, W)
    n = W.n
    k = a.degree
    df = differential(f)
    if mode == "wedge":
        if not 1 <= k <= n:
            raise ValueError(f"division by df needs 1 <= k <= n, got k = {k}")
        if k < n and not wedge(df, a).is_zero():
            raise ValueError("df ^ a must vanish")
        shift = 1
    elif mode == "wedge_d":
        if not 2 <= k <= n - 1:
            raise ValueError(f"division by df ^ d needs 2 <= k <= n-1, got k = {k}")
        if not wedge(df, a).is_zero() or not exterior_d(a).is_zero():
            raise ValueError("a must be closed with df ^ a = 0")
        shift = 2
    else:
        raise ValueError(f"unknown mode {mode!r}")
    result = DifferentialForm.zero(n, k - shift)
    for m, part in a.homogeneous_parts(W).items():
        src = slice_basis(W, k - shift, m - N)
        tgt = slice_basis(W, k, m)
        cols, col_ratios = [], []
        for j in range(src.dim):
            b = src.form({j: 1})
            col, r = _scaled(tgt.vector(wedge(df, b if mode == "wedge" else exterior_d(b))))
            cols.append(col)
            col_ratios.append(r)
        target, ratio = _scaled(tgt.vector(part))
        sol = linalg.solve(cols, target)
        if sol is None:
            raise NoSolutionError(f"no polynomial solution in quasidegree {m - N}")
        result = result + src.form({j: x * col_ratios[j] / ratio for j, x in sol.items()})
    return result
