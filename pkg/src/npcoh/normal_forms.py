"""Normal forms of germs of n-vectors: the regular model and the simple ADE list.

Weights are not tabulated; they are solved from the degree equations of the
normal form and scaled to the smallest positive integers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .grading import WeightSystem, infer_weights
from .poly import Polynomial

FAMILIES = ("A", "D", "E", "regular", "quadratic")

_CLASS_RE = re.compile(r"^\s*([ADEade])\s*(\d+)\s*$")


@dataclass(frozen=True)
class SingularityClass:
    family: str
    k: int
    n: int
    signs: tuple[int, ...] = ()

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.n < 3:
            raise ValueError("the ambient dimension must be at least 3")
        lo, hi = _index_range(self.family)
        if not lo <= self.k <= hi:
            raise ValueError(f"{self.family}{self.k} is not in the normal-form list")
        signs = tuple(self.signs) or (1,) * tail_length(self.family, self.n)
        if len(signs) != tail_length(self.family, self.n):
            raise ValueError(
                f"{self.name} on K^{self.n} takes {tail_length(self.family, self.n)} signs, got {len(signs)}"
            )
        if any(s not in (1, -1) for s in signs):
            raise ValueError("signs must be +1 or -1")
        object.__setattr__(self, "signs", signs)

    @property
    def name(self) -> str:
        if self.family in ("regular", "quadratic"):
            return self.family
        return f"{self.family}{self.k}"

    def __str__(self):
        return f"{self.name} (n={self.n})"


def _index_range(family):
    return {
        "A": (1, 10**6),
        "D": (4, 10**6),
        "E": (6, 8),
        "regular": (0, 0),
        "quadratic": (1, 1),
    }[family]


def tail_length(family: str, n: int) -> int:
    """Number of sign choices in the normal form."""
    if family in ("A", "D", "quadratic"):
        return n - 1
    if family == "E":
        return n - 2
    return 0


def parse_class(text: str, n: int, signs=()) -> SingularityClass:
    """Parse CLI class names: ``A2``, ``D5``, ``E7``, ``regular``, ``quadratic``."""
    t = text.strip()
    if t.lower() == "regular":
        return SingularityClass("regular", 0, n)
    if t.lower() == "quadratic":
        return SingularityClass("quadratic", 1, n, tuple(signs))
    m = _CLASS_RE.match(t)
    if not m:
        raise ValueError(f"unrecognised singularity class {text!r}")
    return SingularityClass(m.group(1).upper(), int(m.group(2)), n, tuple(signs))


def _term(n, exps: dict[int, int], coeff=1) -> Polynomial:
    mono = [0] * n
    for i, a in exps.items():
        mono[i] = a
    return Polynomial.monomial(mono, coeff)


def standard_polynomial(c: SingularityClass) -> tuple[Polynomial, WeightSystem, int]:
    n = c.n
    if c.family == "regular":
        return Polynomial.variable(0, n), WeightSystem.uniform(n), 1
    fam, k = c.family, c.k
    if fam in ("A", "quadratic"):
        head = [_term(n, {0: k + 1})]
        tail_from = 1
        tail_signs = c.signs
    elif fam == "D":
        head = [_term(n, {0: 2, 1: 1}), _term(n, {1: k - 1}, c.signs[0])]
        tail_from = 2
        tail_signs = c.signs[1:]
    else:
        second = {6: {1: 4}, 7: {0: 1, 1: 3}, 8: {1: 5}}[k]
        head = [_term(n, {0: 3}), _term(n, second)]
        tail_from = 2
        tail_signs = c.signs
    f = Polynomial.zero(n)
    for t in head:
        f = f + t
    for i, s in zip(range(tail_from, n), tail_signs):
        f = f + _term(n, {i: 2}, s)
    W, N = infer_weights(f)
    return f, W, N


DEFAULT_MAX_INDEX = 6


def catalog_sweep(n_range, families, max_index: int | None = None) -> list[SingularityClass]:
    """Deterministic list of classes, ordered by ``n`` then family then index.

    Without ``max_index`` the sweep is A1..A6, D4..D6, E6..E8; an explicit
    ``max_index`` caps every family, E included.  ``quadratic`` coincides
    with ``A1`` and is only listed when asked for explicitly.
    """
    families = list(families)
    unknown = [f for f in families if f not in FAMILIES]
    if unknown:
        raise ValueError(f"unknown families {unknown}")
    out = []
    for n in n_range:
        for fam in FAMILIES:
            if fam not in families:
                continue
            if fam == "regular":
                out.append(SingularityClass("regular", 0, n))
            elif fam == "quadratic":
                out.append(SingularityClass("quadratic", 1, n))
            else:
                lo, hi = _index_range(fam)
                if max_index is not None:
                    hi = min(hi, max_index)
                elif fam != "E":
                    hi = min(hi, DEFAULT_MAX_INDEX)
                for k in range(lo, hi + 1):
                    out.append(SingularityClass(fam, k, n))
    return out


def classical_milnor_number(c: SingularityClass) -> int:
    """Classical Milnor number of the class (its index; 0 for the regular model)."""
    return 0 if c.family == "regular" else c.k
