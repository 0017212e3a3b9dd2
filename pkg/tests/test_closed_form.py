import pytest

from npcoh import closed_form as cf
from npcoh.engine import certify_witnesses
from npcoh.forms import DifferentialForm, differential, dx, omega, sigma
from npcoh.milnor import milnor_algebra
from npcoh.normal_forms import catalog_sweep, parse_class, standard_polynomial
from npcoh.poly import Polynomial, default_variables, parse_polynomial, power


def germ(name, n):
    return standard_polynomial(parse_class(name, n))


def P(text, n):
    return parse_polynomial(text, default_variables(n))


@pytest.mark.parametrize("p, dim, power_of_f", [(0, 1, 0), (1, 0, None), (3, 0, None), (-2, 1, 2)])
def test_h0(p, dim, power_of_f):
    f, W, N = germ("D5", 4)
    e = cf.h0_dimension(f, W, p)
    assert e.dimension == dim
    if dim:
        (g,) = e.generators
        assert g.materialize(f, W) == DifferentialForm.function(power(f, power_of_f))
        assert g.degree == -p * N


def test_h1_is_df():
    f, W, N = germ("A2", 3)
    (g,) = cf.h1_f(f, W).generators
    assert g.materialize(f, W) == differential(f)
    assert differential(f)[(0,)] == P("3*x1^2", 3)
    assert g.degree == 6


def test_h1_regular_and_quadratic():
    f, W, _ = germ("regular", 4)
    assert cf.h1_f(f, W).generators[0].materialize(f, W) == dx(0, 4)
    f, W, _ = germ("quadratic", 3)
    euler = dx(0, 3) * P("x1", 3) + dx(1, 3) * P("x2", 3) + dx(2, 3) * P("x3", 3)
    assert cf.h1_f(f, W).generators[0].materialize(f, W) == euler * 2


def test_h1_d5_matches_printed_form():
    f, W, _ = germ("D5", 4)
    printed = (
        dx(0, 4) * P("2*x1*x2", 4)
        + dx(1, 4) * P("x1^2 + 4*x2^3", 4)
        + dx(2, 4) * P("2*x3", 4)
        + dx(3, 4) * P("2*x4", 4)
    )
    assert cf.h1_f(f, W).generators[0].materialize(f, W) == printed


def test_h1_other_twists_are_sentinels():
    f, W, _ = germ("A2", 3)
    assert cf.h1_f(f, W, 1).status == cf.SENTINEL


@pytest.mark.parametrize(
    "k, p, status",
    [(2, 0, cf.FINITE), (2, 5, cf.FINITE), (2, 2, cf.SENTINEL), (2, 1, cf.SENTINEL), (2, 3, cf.FINITE)],
)
def test_middle(k, p, status):
    e = cf.middle_dimension(4, k, p)
    assert e.status == status
    if status == cf.FINITE:
        assert e.dimension == 0


def test_middle_range():
    with pytest.raises(ValueError):
        cf.middle_dimension(4, 3, 0)


def test_top_degree_d5():
    f, W, N = germ("D5", 4)
    A = milnor_algebra(f, W)
    e = cf.hn_dimension(A, 4)
    assert e.dimension == 6
    assert [g.label() for g in e.generators][-1] == "x1*f^2*omega"
    assert e.placement == {13: 1, 15: 1, 16: 1, 17: 1, 19: 1, 32: 1}
    assert cf.hn_dimension(A, 2).dimension == 5
    assert cf.hn_dimension(A, 0).dimension == 5
    assert cf.hn_dimension(A, -3).dimension == 5
    assert cf.hn_dimension(A, 1).status == cf.INFINITE


def test_codimension_one_d5():
    f, W, N = germ("D5", 4)
    A = milnor_algebra(f, W)
    e = cf.hn1_dimension(A, 4)
    (g,) = e.generators
    assert e.dimension == 1
    assert g.h == P("x1", 4) and g.base == "sigma"
    assert g.materialize(f, W) == sigma(W) * (f * P("x1", 4))
    assert g.degree == 24
    assert cf.hn1_dimension(A, 0).dimension == 0
    assert cf.hn1_dimension(A, 1).status == cf.SENTINEL
    inf = cf.hn1_dimension(A, 2)
    assert inf.status == cf.INFINITE and inf.e_dimension == 0


def test_even_quadratic():
    for n in (4, 6):
        f, W, N = germ("quadratic", n)
        r = cf.full_report(f, W, 0)
        (g,) = r.entries[n - 1].generators
        assert g.materialize(f, W) == sigma(W) * power(f, n // 2 - 1)
        assert [h.materialize(f, W) for h in r.entries[n].generators] == [
            omega(n),
            omega(n) * power(f, n // 2),
        ]


def test_e_part_for_large_weight_sum_deficit():
    # x1^3 + x2^3 + x3^3: N - sum w = 0, so s = 1 and E is spanned by sigma
    f = P("x1^3+x2^3+x3^3", 3)
    from npcoh.grading import WeightSystem

    W = WeightSystem.uniform(3)
    e = cf.hn1_dimension(milnor_algebra(f, W), 2)
    assert e.e_dimension == 1
    assert e.generators[0].materialize(f, W) == sigma(W)


@pytest.mark.parametrize(
    "name, n, dims",
    [
        ("A2", 3, (1, 1, 0, 2)),
        ("regular", 4, (1, 1, 0, 0, 0)),
        ("quadratic", 3, (1, 1, 0, 1)),
        ("D5", 4, (1, 1, 0, 1, 6)),
    ],
)
def test_full_reports_at_p0(name, n, dims):
    f, W, _ = germ(name, n)
    assert cf.full_report(f, W, 0).dimensions() == dims


def test_full_report_lambda_twist():
    f, W, _ = germ("D5", 4)
    assert cf.full_report(f, W, 2).dimensions() == (0, None, None, "infinite", 5)


def test_generator_labels_and_dict():
    f, W, _ = germ("D5", 4)
    g = cf.full_report(f, W, 0).entries[3].generators[0]
    assert g.label() == "x1*f*sigma"
    assert g.to_dict()["degree"] == 24
    with pytest.raises(ValueError):
        cf.Generator(Polynomial.one(3), 0, "tau", 0)


CATALOG = catalog_sweep([3, 4], ["A", "D", "E", "regular"], 8)


@pytest.mark.parametrize("cls", CATALOG, ids=str)
@pytest.mark.parametrize("shift", [0, 2, -1])
def test_generators_are_independent_cocycles(cls, shift):
    f, W, _ = standard_polynomial(cls)
    p = cls.n - 2 if shift == 2 else shift
    report = cf.full_report(f, W, p)
    assert cf.generators_are_cocycles(report)
    for k, e in report.entries.items():
        by_degree = {}
        for g in e.generators:
            by_degree.setdefault(g.degree, []).append(g.materialize(f, W))
        for m, forms in by_degree.items():
            assert certify_witnesses(f, W, p, k, m, forms), (k, m)
