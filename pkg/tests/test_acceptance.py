"""Acceptance criteria, one check per criterion, all in exact arithmetic.

Run under pytest for one pass/fail line per criterion in the terminal
summary, or directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import sys

import pytest

from npcoh import closed_form as cf
from npcoh import engine
from npcoh.cli import AnalysisRequest, analyze
from npcoh.engine import certify_witnesses, cohomology_profile, witness_cocycles
from npcoh.forms import (
    DifferentialForm,
    d_f_p,
    differential,
    dx,
    exterior_d,
    omega,
    sigma,
    wedge,
)
from npcoh.grading import WeightSystem, euler_apply, homogeneous_parts, homotopy_solve
from npcoh.milnor import count_vector, milnor_algebra, milnor_number_oracle, poincare_series
from npcoh.normal_forms import (
    catalog_sweep,
    classical_milnor_number,
    parse_class,
    standard_polynomial,
)
from npcoh.poly import Polynomial, default_variables, parse_polynomial, power

try:
    from conftest import ACCEPTANCE
except ImportError:  # pragma: no cover - direct script run
    ACCEPTANCE = {}

sys.path.insert(0, __file__.rsplit("/", 1)[0])
from _strategies import random_form, random_polynomial  # noqa: E402


def germ(name, n, signs=()):
    return standard_polynomial(parse_class(name, n, signs))


def P(text, n):
    return parse_polynomial(text, default_variables(n))


def _brute_totals(f, W, p, ks):
    return tuple(cohomology_profile(f, W, p, k).total for k in ks)


# -- criteria -------------------------------------------------------------------------


def criterion_1():
    f = P("x1^3+x2^2+x3^2", 3)
    res = analyze(AnalysisRequest(f, WeightSystem((2, 3, 3)), default_variables(3), [0], "verify"))
    (t,) = res.twists
    dims = tuple(e.dim for e in t.cohomology)
    checks = {
        "N=6": t.N == 6,
        "weights": t.weights == [2, 3, 3],
        "B={1,x1}": t.basis == ["1", "x1"],
        "c=2": t.codimension == 2,
        "dims=(1,1,0,0)": dims == (1, 1, 0, 0),
        "profiles agree with placement": all(v == "MATCH" for v in t.verdicts.values()),
    }
    failed = [k for k, ok in checks.items() if not ok]
    detail = f"dims={dims}; per-degree H^3 = {t.cohomology[3].profile['per_degree']}"
    if failed:
        detail += f"; failed: {', '.join(failed)}"
    return not failed, detail


def criterion_2():
    f, W, N = germ("D5", 4)
    A = milnor_algebra(f, W)
    cv = count_vector(A, 4)
    report = cf.full_report(f, W, 0, A)
    basis = {Polynomial.monomial(b).to_string() for b in A.basis}
    (g,) = report.entries[3].generators
    displayed = (
        DifferentialForm(4, 3, {(1, 2, 3): P("3*x1", 4)})
        + DifferentialForm(4, 3, {(0, 2, 3): P("-2*x2", 4)})
        + DifferentialForm(4, 3, {(0, 1, 3): P("4*x3", 4)})
        + DifferentialForm(4, 3, {(0, 1, 2): P("-4*x4", 4)})
    )
    rep = g.materialize(f, W)
    top = cohomology_profile(f, W, 0, 4)
    checks = {
        "N=8": N == 8,
        "weights": W.weights == (3, 2, 4, 4),
        "B": basis == {"1", "x1", "x2", "x2^2", "x2^3"},
        "c=5": A.codimension == 5,
        "s=0": cv.s == 0,
        "r2=1,r3=0": cv.r == {2: 1, 3: 0},
        "dims": report.dimensions() == (1, 1, 0, 1, 6),
        "H^3 generator on x1*sigma": g.h == P("x1", 4) and g.base == "sigma",
        "sigma expansion": sigma(W) == displayed,
        "generator certified": certify_witnesses(f, W, 0, 3, g.degree, [rep]),
        "H^3 brute total 1": cohomology_profile(f, W, 0, 3).total == 1,
        "H^4 brute total 6": top.total == 6 and top.stabilized,
    }
    failed = [k for k, ok in checks.items() if not ok]
    detail = (
        f"H^3 = K.[{g.label()}] at degree {g.degree} (x1*sigma alone has "
        f"d_f = {d_f_p(f, 0, sigma(W) * P('x1', 4)).to_string()}); H^4 total {top.total}"
    )
    if failed:
        detail += f"; failed: {', '.join(failed)}"
    return not failed, detail


def criterion_3():
    out = []
    ok = True
    for n, (e_top1, e_top) in ((3, (0, 1)), (4, (1, 2))):
        f, W, N = germ("quadratic", n)
        t1 = cohomology_profile(f, W, 0, n - 1).total
        t = cohomology_profile(f, W, 0, n).total
        ok &= (t1, t) == (e_top1, e_top)
        ok &= certify_witnesses(f, W, 0, n, n, [omega(n)])
        ok &= engine.slice_basis(W, n, n).dim == 1 and len(witness_cocycles(f, W, 0, n, n)) == 1
        if n == 4:
            m = 2 * N + n
            ok &= certify_witnesses(f, W, 0, n, m, [omega(n) * power(f, 2)])
            ok &= len(witness_cocycles(f, W, 0, n, m)) == 1
        out.append(f"n={n}: H^{n-1}={t1}, H^{n}={t}")
    return bool(ok), "; ".join(out) + "; witnesses omega and f^2*omega certified"


def criterion_4():
    ok = True
    parts = []
    for n in (3, 4):
        f, W, N = germ("regular", n)
        brute = _brute_totals(f, W, 0, range(n + 1))
        closed = cf.full_report(f, W, 0).dimensions()
        expect = (1, 1) + (0,) * (n - 1)
        (w,) = witness_cocycles(f, W, 0, 1, 1)
        gen = cf.h1_f(f, W).generators[0].materialize(f, W)
        ok &= brute == expect and closed == expect
        ok &= gen == dx(0, n) and w == dx(0, n) * w[(0,)].constant_term()
        parts.append(f"n={n}: {brute}")
    return bool(ok), "; ".join(parts) + "; H^1 = K.dx1"


def criterion_5():
    classes = catalog_sweep([3, 4], ["A", "D", "E", "regular"])
    bad = []
    for cls in classes:
        f, W, N = standard_polynomial(cls)
        for p in range(-2, 3):
            e = cf.h0_dimension(f, W, p)
            prof = cohomology_profile(f, W, p, 0)
            if prof.total != e.dimension:
                bad.append(f"{cls.name}/n={cls.n}/p={p}")
                continue
            if p <= 0:
                m = -p * N
                if prof.per_degree != {m: 1}:
                    bad.append(f"{cls.name}/n={cls.n}/p={p} placement")
                elif not certify_witnesses(f, W, p, 0, m, [DifferentialForm.function(power(f, -p))]):
                    bad.append(f"{cls.name}/n={cls.n}/p={p} witness")
    return not bad, f"{len(classes)} germs x 5 twists" + (f"; failed {bad}" if bad else "")


ORACLE_CLASSES = [
    c for c in catalog_sweep([3, 4], ["A", "D", "E"]) if not (c.family == "A" and c.k > 5)
]


def criterion_6():
    bad = []
    finite = infinite = 0
    for cls in ORACLE_CLASSES:
        f, W, N = standard_polynomial(cls)
        n = cls.n
        for p in (0, n - 2):
            report = cf.full_report(f, W, p)
            for k, e in report.entries.items():
                if e.status == cf.SENTINEL:
                    continue
                prof = cohomology_profile(f, W, p, k)
                if e.status == cf.FINITE:
                    finite += 1
                    if not (prof.total == e.dimension and prof.stabilized and prof.per_degree == e.placement):
                        bad.append(f"{cls.name}/n={n}/p={p}/k={k}")
                else:
                    infinite += 1
                    lo, hi = prof.window
                    if not prof.nonstabilizing_evidence(3):
                        bad.append(f"{cls.name}/n={n}/p={p}/k={k} (no growth past {hi / 2})")
    detail = f"{len(ORACLE_CLASSES)} germs, {finite} finite entries equal, {infinite} infinite entries non-stabilizing"
    return not bad, detail + (f"; failed {bad}" if bad else "")


def criterion_7():
    rng = random.Random(20240607)
    germs = [standard_polynomial(c) for c in catalog_sweep([3, 4], ["A", "D", "E"], 5)]
    failures = 0
    dd = 0
    while dd < 500:
        f, W, N = rng.choice(germs)
        n = W.n
        k = rng.randint(0, n)
        p = rng.randint(-3, n)
        a = random_form(rng, n, k)
        dd += 1
        failures += not d_f_p(f, p, d_f_p(f, p, a)).is_zero()
    for _ in range(200):
        f, W, N = rng.choice(germs)
        n = W.n
        k = rng.randint(0, n)
        p = rng.randint(-3, n)
        a = random_form(rng, n, k)
        failures += d_f_p(f, p, a) * f != d_f_p(f, p - 1, a * f)
    for _ in range(200):
        f, W, N = rng.choice(germs)
        g = random_polynomial(rng, W.n)
        failures += wedge(differential(g), sigma(W)) != omega(W.n) * euler_apply(W, g)
    for _ in range(200):
        f, W, N = rng.choice(germs)
        p = rng.randint(-4, 8)
        g = random_polynomial(rng, W.n)
        g = sum((q for d, q in homogeneous_parts(g, W).items() if d != p), Polynomial.zero(W.n))
        h = homotopy_solve(W, p, g)
        failures += euler_apply(W, h) - h * p != g
    euler = 0
    for cls in catalog_sweep([3, 4], ["A", "D", "E", "regular", "quadratic"], 8):
        f, W, N = standard_polynomial(cls)
        euler += 1
        failures += euler_apply(W, f) != f * N
    return failures == 0, (
        f"{dd} d^2 checks, 200 twist-shift, 200 dg^sigma, 200 homotopy, {euler} Euler; {failures} failures"
    )


def criterion_8():
    bad = []
    classes = catalog_sweep([3, 4], ["A", "D", "E", "regular"], 8)
    for cls in classes:
        f, W, N = standard_polynomial(cls)
        A = milnor_algebra(f, W)
        c = A.codimension
        if not (c == milnor_number_oracle(W, N) == sum(poincare_series(W, N).values()) == classical_milnor_number(cls)):
            bad.append(f"{cls.name}/n={cls.n}")
    return not bad, f"{len(classes)} germs" + (f"; failed {bad}" if bad else "")


def criterion_9():
    rng = random.Random(99)
    germs = [standard_polynomial(c) for c in catalog_sweep([3, 4], ["A", "D", "E"], 6)]
    counts = {"wedge": 0, "wedge_d": 0}
    failures = 0
    while counts["wedge"] < 100:
        f, W, N = rng.choice(germs)
        n = W.n
        beta = random_form(rng, n, rng.randint(0, n - 1), max_exp=2)
        a = wedge(differential(f), beta)
        if a.is_zero():
            continue
        counts["wedge"] += 1
        failures += wedge(differential(f), engine.divide_by_df(f, W, a, "wedge")) != a
    while counts["wedge_d"] < 100:
        f, W, N = rng.choice(germs)
        n = W.n
        gamma = random_form(rng, n, rng.randint(0, n - 3), max_exp=2)
        a = wedge(differential(f), exterior_d(gamma))
        if a.is_zero():
            continue
        counts["wedge_d"] += 1
        found = engine.divide_by_df(f, W, a, "wedge_d")
        failures += wedge(differential(f), exterior_d(found)) != a
    return failures == 0, f"{counts['wedge']} wedge + {counts['wedge_d']} wedge_d round trips; {failures} failures"


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    ok, detail = CRITERIA[number]()
    ACCEPTANCE[number] = (ok, detail)
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for number, fn in CRITERIA.items():
        ok, detail = fn()
        failed += not ok
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}", flush=True)
    sys.exit(1 if failed else 0)
