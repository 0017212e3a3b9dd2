from fractions import Fraction

import sympy
from hypothesis import given
from hypothesis import strategies as st

from npcoh import linalg

small = st.integers(-4, 4)


@st.composite
def matrices(draw, max_rows=6, max_cols=6):
    rows = draw(st.integers(1, max_rows))
    cols = draw(st.integers(1, max_cols))
    dense = draw(st.lists(st.lists(small, min_size=rows, max_size=rows), min_size=cols, max_size=cols))
    if cols > 1 and draw(st.booleans()):
        # force a dependency
        dense[-1] = [a + 2 * b for a, b in zip(dense[0], dense[1 % cols])]
    return rows, [{i: x for i, x in enumerate(col) if x} for col in dense]


def to_sympy(rows, columns):
    return sympy.Matrix(rows, len(columns), lambda i, j: columns[j].get(i, 0))


@given(matrices())
def test_rank_matches_sympy(m):
    rows, cols = m
    assert linalg.rank(cols) == to_sympy(rows, cols).rank()


@given(matrices())
def test_kernel_is_a_basis_of_the_nullspace(m):
    rows, cols = m
    ker = linalg.kernel(cols)
    assert len(ker) == len(cols) - linalg.rank(cols)
    for v in ker:
        assert all(isinstance(x, int) for x in v.values())
        assert not linalg.matvec(cols, {j: Fraction(x) for j, x in v.items()})
    assert linalg.rank(ker) == len(ker)


@given(matrices(), st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_solve_consistent_systems(m, x):
    rows, cols = m
    x = {j: Fraction(c) for j, c in enumerate(x[: len(cols)]) if c}
    target = linalg.matvec(cols, x)
    sol = linalg.solve(cols, linalg.integer_vector(target))
    assert sol is not None
    scale = Fraction(1)
    ints = linalg.integer_vector(target)
    if ints:
        j = next(iter(ints))
        scale = target[j] / ints[j]
    assert linalg.matvec(cols, {j: v * scale for j, v in sol.items()}) == target


def test_solve_inconsistent():
    cols = [{0: 1, 1: 1}]
    assert linalg.solve(cols, {0: 1}) is None
    assert linalg.solve(cols, {}) == {}


def test_integer_vector_is_primitive():
    assert linalg.integer_vector({0: Fraction(1, 2), 3: Fraction(-3, 4)}) == {0: 2, 3: -3}
    assert linalg.integer_vector({0: 0}) == {}


def test_independent_modulo():
    base = [{0: 1}]
    cands = [{0: 5}, {1: 1}, {0: 1, 1: 1}, {2: 7}]
    assert linalg.independent_modulo(base, cands) == [1, 3]


def test_echelon_contains():
    ech = linalg.Echelon()
    ech.insert({0: 2, 1: 4})
    assert ech.contains({0: -1, 1: -2})
    assert not ech.contains({1: 1})
