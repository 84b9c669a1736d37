import random
from fractions import Fraction

import pytest

from boundary_manifold.alexander import (
    RepresentationError,
    alexander_polynomial,
    characteristic_variety_v11,
    diagonal_representation,
    distinct_factor_count,
    factor_count_contract_applies,
    identity_representation,
    make_representation,
    parse_representation,
    pencil_note,
    predicted_factor_count,
    twisted_alexander,
    vertex_factor,
)
from boundary_manifold.arrangement import dense_edges
from boundary_manifold.corpus import falk_f1, falk_f2, general_position, near_pencil, pencil
from boundary_manifold.laurent import FactoredLaurent, LaurentPoly, unit_equivalent
from boundary_manifold.presentation import X, alexander_gcd_oracle, fox_jacobian, presentations_for, rank_at

from conftest import CORPUS


def tt(n):
    return [None] + [LaurentPoly.variable(n, i) for i in range(n)]


def prod(*ps):
    out = ps[0]
    for p in ps[1:]:
        out = out * p
    return out


def delta(arr):
    return alexander_polynomial(presentations_for(arr)[0])


def test_vertex_factor():
    t = tt(5)
    assert unit_equivalent(vertex_factor(4, (1, 0, 0, 0, 0)).expand(), (t[1] - 1) ** 2)
    assert unit_equivalent(vertex_factor(3, (0, 0, 1, 1, 1)).expand(), t[3] * t[4] * t[5] - 1)


def test_f1():
    t = tt(5)
    expected = prod(*(t[i] - 1 for i in range(1, 6)), prod(*t[1:]) - 1, t[3] * t[4] * t[5] - 1) ** 2
    d = delta(falk_f1())
    assert unit_equivalent(d.expand(), expected)
    assert all(m == 2 for _, m in d.factors)


def test_f2():
    t = tt(5)
    expected = (prod(*(t[i] - 1 for i in range(1, 5))) ** 2 * (t[5] - 1) ** 3 * (prod(*t[1:]) - 1)
                * (t[3] * t[4] * t[5] - 1) * (t[1] * t[2] * t[5] - 1))
    assert unit_equivalent(delta(falk_f2()).expand(), expected)


def test_general_position_4():
    t = tt(3)
    expected = (t[1] - 1) * (t[2] - 1) * (t[3] - 1) * (t[1] * t[2] * t[3] - 1)
    assert unit_equivalent(delta(general_position(4)).expand(), expected)


@pytest.mark.parametrize("n_lines", [4, 5, 6])
def test_near_pencil_exponent(n_lines):
    # the two vertices of multiplicity n give associate monomials, so the exponent doubles to 2(n - 2)
    n = n_lines - 1
    t = tt(n)
    d = delta(near_pencil(n_lines))
    assert len(d.factors) == 1
    assert unit_equivalent(d.expand(), (prod(*t[1:]) - 1) ** (2 * (n - 2)))


def test_near_pencil_4_oracle_value():
    _, _, pres = presentations_for(near_pencil(4))
    t = tt(3)
    assert unit_equivalent(alexander_gcd_oracle(pres).value, (t[1] * t[2] * t[3] - 1) ** 2)


@pytest.mark.parametrize("n_lines", [3, 4, 5])
def test_pencil_is_zero(n_lines):
    g = presentations_for(pencil(n_lines))[0]
    d = alexander_polynomial(g)
    assert d.is_zero
    assert f"F_{n_lines - 1}" in pencil_note(g)


@pytest.mark.parametrize("arr,count", [(falk_f1(), 7), (falk_f2(), 8), (general_position(5), 5)])
def test_factor_counts(arr, count):
    assert distinct_factor_count(delta(arr)) == count == predicted_factor_count(arr)


def test_factor_count_contract_on_corpus():
    for arr in CORPUS.values():
        if factor_count_contract_applies(arr):
            assert distinct_factor_count(delta(arr)) == predicted_factor_count(arr), arr.name
        assert predicted_factor_count(arr) <= len(dense_edges(arr))


def test_trivial_and_identity_twists():
    arr = falk_f1()
    g, _, pres = presentations_for(arr)
    d = alexander_polynomial(g)
    one = twisted_alexander(arr, g, pres, identity_representation(pres, 1))
    assert one.equivalent(d)
    three = twisted_alexander(arr, g, pres, identity_representation(pres, 3))
    # the identity rep gives (t_v - 1)^3 per vertex; match factor by factor, since d^3 expands to ~10^5 terms
    assert len(three.factors) == len(d.factors)
    cubes = {tuple(sorted((h ** 3).terms.items())): k for h, k in d.factors}
    for f, e in three.factors:
        assert cubes[tuple(sorted(f.terms.items()))] == e
    small = general_position(4)
    g4, _, pres4 = presentations_for(small)
    tw = twisted_alexander(small, g4, pres4, identity_representation(pres4, 3))
    assert unit_equivalent(tw.expand(), alexander_polynomial(g4).expand() ** 3)


def test_diagonal_twist_near_pencil():
    arr = near_pencil(4)
    g, _, pres = presentations_for(arr)
    lam = Fraction(2)
    tw = twisted_alexander(arr, g, pres, diagonal_representation(pres, lam, 2))
    s = prod(*tt(3)[1:])
    # both m = 3 vertices have meridian (x1 x2 x3)^{+-1}, so e_v = +-3
    expected = ((s - lam ** 3) * (s - lam ** -3)) ** 2
    assert unit_equivalent(tw.expand(), expected)


def test_twist_rejects_bad_representation():
    arr = near_pencil(4)
    g, _, pres = presentations_for(arr)
    mats = {gid: [[1, 0], [0, 1]] for gid in pres.generators}
    mats[X(1)] = [[1, 1], [0, 1]]
    mats[pres.generators[-1]] = [[1, 0], [1, 1]]
    with pytest.raises(RepresentationError):
        twisted_alexander(arr, g, pres, make_representation(mats))


def test_parse_representation_document():
    _, _, pres = presentations_for(near_pencil(4))
    doc = {"dimension": 2, "generators": {f"x{j}": [["3", "0"], ["0", "1/3"]] for j in (1, 2, 3)}}
    rep = parse_representation(doc, pres)
    assert rep.dimension == 2
    assert rep.matrices[X(2)][1][1] == Fraction(1, 3)
    # omitted gamma generators default to the identity
    assert rep.matrices[pres.generators[-1]] == [[1, 0], [0, 1]]
    with pytest.raises(RepresentationError):
        parse_representation({"generators": {"g2_3": [[1]]}}, pres)


def test_v11_examples():
    v = characteristic_variety_v11(presentations_for(falk_f2())[0])
    assert len(v.subtori) == 8
    v = characteristic_variety_v11(presentations_for(near_pencil(4))[0])
    assert v.subtori == ((1, 1, 1),)
    for n_lines in (4, 5, 6):
        n = n_lines - 1
        v = characteristic_variety_v11(presentations_for(general_position(n_lines))[0])
        unit = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        assert sorted(v.subtori) == sorted(unit + [(1,) * n])


def _rand_nonunit(rng):
    while True:
        x = Fraction(rng.randint(-9, 9), rng.randint(1, 7))
        if x not in (0, 1, -1):
            return x


def _point_on(rng, a):
    """A random point of the torus with t^a = 1 (solve for the last variable with exponent +-1)."""
    while True:
        p = [_rand_nonunit(rng) for _ in a]
        free = [i for i, e in enumerate(a) if abs(e) == 1]
        j = free[-1]
        rest = Fraction(1)
        for i, e in enumerate(a):
            if i != j:
                rest *= p[i] ** e
        p[j] = (1 / rest) ** a[j]
        if LaurentPoly.monomial(a).evaluate(p) == 1:
            return p


@pytest.mark.parametrize("name", ["near-pencil-4", "general-position-4", "F1", "seven-lines"])
def test_jump_loci_against_fox_matrix(name):
    arr = CORPUS[name]
    g, _, pres = presentations_for(arr)
    am = fox_jacobian(pres)
    mat = am.specialized()
    N = am.size
    v = characteristic_variety_v11(g)
    rng = random.Random(7)
    for a in v.subtori:
        for _ in range(2):
            p = _point_on(rng, a)
            assert v.contains(p)
            assert rank_at(mat, p) <= N - 2
    d = delta(arr).expand()
    for _ in range(3):
        p = [_rand_nonunit(rng) for _ in range(arr.n)]
        assert not v.contains(p) and d.evaluate(p) != 0
        assert rank_at(mat, p) == N - 1
