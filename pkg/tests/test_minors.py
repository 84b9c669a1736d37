from itertools import permutations

from hypothesis import given, strategies as st

from boundary_manifold.laurent import LaurentPoly
from boundary_manifold.minors import determinant


def leibniz(m):
    k = len(m)
    total = LaurentPoly.zero(m[0][0].nvars)
    for perm in permutations(range(k)):
        sign = 1
        for i in range(k):
            for j in range(i + 1, k):
                if perm[i] > perm[j]:
                    sign = -sign
        term = LaurentPoly.constant(m[0][0].nvars, sign)
        for i, j in enumerate(perm):
            term = term * m[i][j]
        total = total + term
    return total


entry = st.dictionaries(
    st.tuples(st.integers(-2, 2), st.integers(-2, 2)), st.integers(-3, 3).filter(bool), max_size=3
).map(lambda d: LaurentPoly(2, d))


@st.composite
def square(draw):
    k = draw(st.integers(1, 4))
    return [[draw(entry) for _ in range(k)] for _ in range(k)]


@given(square())
def test_determinant_matches_leibniz(m):
    assert determinant(m) == leibniz(m)


def test_singular_and_identity():
    one, zero = LaurentPoly.constant(2, 1), LaurentPoly.zero(2)
    t = LaurentPoly.variable(2, 0)
    assert determinant([[one, zero], [zero, one]]) == one
    assert determinant([[t, t], [t - 1, t - 1]]).is_zero()
    assert determinant([[t, one], [one, t]]) == t * t - 1
