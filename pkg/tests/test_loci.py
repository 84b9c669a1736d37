import random
from fractions import Fraction

import pytest
import sympy

from boundary_manifold.arrangement import ArrangementClass, arrangement_class
from boundary_manifold.cohomology import double, os_algebra
from boundary_manifold.corpus import falk_f1, falk_f2, general_position, near_pencil, pencil
from boundary_manifold.loci import (
    beta,
    complement_h1_dimension,
    formality,
    h1_dimension,
    minor_generators,
    multiplication_rank,
    r11,
    random_point,
    resonance_checks,
    theta,
    theta_double,
)

from conftest import CORPUS, corpus_params


def table_h1(alg, point):
    """dim H^1(A-hat, a) from the multiplication table, ranked by sympy."""
    deg1, deg2 = alg.indices(1), alg.indices(2)
    m = sympy.Matrix([[sum(sympy.Rational(x.numerator, x.denominator) * int(alg.table[a, b, c])
                           for x, a in zip(point, deg1)) for c in deg2] for b in deg1])
    return len(deg1) - 1 - m.rank()


def test_theta_general_position():
    os_ = os_algebra(general_position(4))
    th = theta(os_)
    assert th.shape == (3, 3)
    # Theta_{j,(p,q)} = sum_i mu(e_i, e_j) = f_pq coefficient times x_i
    for j in range(3):
        for k, (p, q) in enumerate(os_.pairs):
            expect = [0, 0, 0]
            if j + 1 == q:
                expect[p - 1] = 1
            if j + 1 == p:
                expect[q - 1] = -1
            assert th.entries[j][k] == tuple(expect)
    assert th.to_text() == [["-x2", "-x3", "0"], ["x1", "0", "-x3"], ["0", "x1", "x2"]]


@pytest.mark.parametrize("arr", corpus_params())
def test_block_structure(arr):
    os_ = os_algebra(arr)
    blk = theta_double(os_)
    assert blk.blocks_ok() and blk.phi().is_skew()
    assert blk.shape == (arr.n + os_.b2, arr.n + os_.b2)
    alg = double(os_)
    rng = random.Random(5)
    for _ in range(2):
        p = random_point(rng, arr.n + os_.b2)
        assert blk.rank_at(p) == multiplication_rank(alg, p)
        assert h1_dimension(blk, p) == table_h1(alg, p)


@pytest.mark.parametrize("n_lines", [3, 4, 5, 6])
def test_r11_trichotomy(n_lines):
    n = n_lines - 1
    assert r11(pencil(n_lines)).to_text() == f"C^{n}"
    if n_lines >= 4:
        assert r11(near_pencil(n_lines)).dimension == 2 * (n - 1)


def test_r11_general():
    # b1 + b2 = 5 + 8 for F1
    assert r11(falk_f1()).to_text() == "C^13"
    assert r11(general_position(4)).to_text() == "C^6"


@pytest.mark.parametrize("n_lines", [4, 5, 6])
def test_near_pencil_resonance(n_lines):
    arr = near_pencil(n_lines)
    os_ = os_algebra(arr)
    alg = double(os_)
    blk = theta_double(os_)
    n = arr.n
    rng = random.Random(n_lines)
    for _ in range(3):
        p = random_point(rng, n + os_.b2)
        p[n - 1] = -sum(p[: n - 1])
        if not any(p):
            continue
        assert h1_dimension(blk, p) >= 1 and table_h1(alg, p) >= 1
        q = random_point(rng, n + os_.b2)
        if sum(q[:n]) != 0:
            assert h1_dimension(blk, q) == 0 == table_h1(alg, q)


def test_pencil_everything_resonant():
    arr = pencil(5)
    os_ = os_algebra(arr)
    blk = theta_double(os_)
    rng = random.Random(1)
    for _ in range(3):
        p = random_point(rng, arr.n)
        assert h1_dimension(blk, p) == arr.n - 1


def test_beta_bound_general():
    for arr in (general_position(5), falk_f1(), falk_f2()):
        os_ = os_algebra(arr)
        blk = theta_double(os_)
        b = beta(os_)
        rng = random.Random(9)
        for _ in range(3):
            p = random_point(rng, arr.n + os_.b2)
            assert h1_dimension(blk, p) >= max(b, 1)


def test_complement_resonance_local_component():
    arr = near_pencil(5)
    th = theta(os_algebra(arr))
    # the affine quadruple point {1,2,3,4}: sum x_i = 0 gives H^1 of dimension m - 2 = 2
    assert complement_h1_dimension(th, [1, 2, -4, 1]) == 2
    assert complement_h1_dimension(th, [1, 2, 3, 1]) == 0


def test_minor_generators():
    th = theta_double(os_algebra(general_position(4)))
    # generic rank is 4 on this 6x6 skew matrix, so every 5-minor vanishes: R^1_1 is everything
    gens, complete = minor_generators(th, 1)
    assert complete and gens == []
    gens, complete = minor_generators(th, 2, limit=None)
    assert complete and gens
    none, _ = minor_generators(th, th.shape[0])
    assert none == ["1"]
    capped, complete = minor_generators(th, 2, limit=3)
    assert len(capped) == 3 and not complete


@pytest.mark.parametrize("arr", corpus_params())
def test_resonance_checks_pass(arr):
    if arr.n < 2:
        pytest.skip("needs n >= 2")
    rc = resonance_checks(arr, samples=3, seed=13)
    assert rc.all_passed, rc.checks


def test_resonance_checks_reproducible():
    a = resonance_checks(falk_f2(), samples=4, seed=2)
    b = resonance_checks(falk_f2(), samples=4, seed=2)
    assert a == b


def test_formality_across_corpus():
    assert len(CORPUS) >= 10
    for name, arr in CORPUS.items():
        rep = formality(arr)
        special = arrangement_class(arr) in (ArrangementClass.PENCIL, ArrangementClass.NEAR_PENCIL)
        assert rep.formal == special, name
        if special:
            assert rep.witness is None
            continue
        # the witness is a resonant point off every tangent-cone hyperplane
        assert rep.reason == "tangent-cone-mismatch"
        w = list(rep.witness)
        assert all(sum(Fraction(a) * x for a, x in zip(h, w[: arr.n])) != 0 for h in rep.tc_hyperplanes)
        alg = double(os_algebra(arr))
        assert table_h1(alg, w) == rep.witness_h1 >= 1
        assert rep.r11.dimension == rep.r11.ambient


def test_formality_examples():
    assert formality(pencil(4)).verdict == "formal"
    assert formality(near_pencil(5)).verdict == "formal"
    assert formality(general_position(4)).verdict == "not_formal"
    assert formality(falk_f1()).subtorus_count == 7
