"""Hypothesis strategies and seeded generators shared by the test modules."""

from fractions import Fraction
from itertools import combinations

from hypothesis import strategies as st

from npcoh.forms import DifferentialForm
from npcoh.grading import WeightSystem
from npcoh.poly import Polynomial

coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polynomials(draw, n=3, max_terms=4, max_exp=3):
    terms = draw(
        st.dictionaries(
            st.tuples(*[st.integers(0, max_exp)] * n), coefficients, max_size=max_terms
        )
    )
    return Polynomial(terms, n)


@st.composite
def forms(draw, n=3, k=None, max_terms=3, max_exp=2):
    if k is None:
        k = draw(st.integers(0, n))
    index_sets = list(combinations(range(n), k))
    chosen = draw(st.lists(st.sampled_from(index_sets), max_size=3, unique=True))
    return DifferentialForm(
        n, k, {I: draw(polynomials(n, max_terms, max_exp)) for I in chosen}
    )


weight_systems = st.lists(st.integers(1, 5), min_size=3, max_size=4).map(
    lambda w: WeightSystem(tuple(w))
)


def random_polynomial(rng, n, max_terms=4, max_exp=3):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        mono = tuple(rng.randint(0, max_exp) for _ in range(n))
        terms[mono] = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
    return Polynomial(terms, n)


def random_form(rng, n, k, max_terms=3, max_exp=2):
    index_sets = list(combinations(range(n), k))
    comp = {}
    for I in rng.sample(index_sets, rng.randint(1, min(3, len(index_sets)))):
        comp[I] = random_polynomial(rng, n, max_terms, max_exp)
    return DifferentialForm(n, k, comp)
