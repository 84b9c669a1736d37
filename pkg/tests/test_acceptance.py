"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run under pytest, or directly with ``python3 tests/test_acceptance.py`` for
just the eleven lines.
"""

import random
import sys
import time
from fractions import Fraction
from itertools import combinations
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from boundary_manifold.alexander import alexander_polynomial, characteristic_variety_v11, diagonal_representation, twisted_alexander
from boundary_manifold.arrangement import ArrangementClass, arrangement_class, nbc2
from boundary_manifold.cohomology import double, eta_form, generated_in_degree_one, os_algebra, pd_check
from boundary_manifold.corpus import (
    braid_arrangement,
    falk_f1,
    falk_f2,
    general_position,
    near_pencil,
    pencil,
    pencil_at_infinity_and_affine,
    product_arrangement,
    two_pencils_at_infinity,
)
from boundary_manifold.holonomy import LiePresentation, closure_oracle_agrees, free_lie, graded_ranks, holonomy_double
from boundary_manifold.laurent import LaurentPoly, unit_equivalent
from boundary_manifold.loci import formality
from boundary_manifold.polytope import ZMatrix, chambers_and_char_poly, twisted_ball_equivalent, z_matrix, zonotope_vertices
from boundary_manifold.presentation import alexander_gcd_oracle, fox_jacobian, presentations_for, rank_at

from conftest import CORPUS
from test_alexander import _point_on, _rand_nonunit
from test_cohomology import alternating, fbar_index
from test_holonomy import example_double
from test_loci import table_h1
from test_polytope import Z1_ROWS, Z2_ROWS, from_rows, hull_vertex_count


def verdict(k, text, check):
    """Run a criterion, print its PASS/FAIL line, then fail the test if needed."""
    t0 = time.perf_counter()
    try:
        failures = check()
    except Exception as exc:  # report, then re-raise for the pytest traceback
        _emit(f"FAIL criterion {k}: {text} ({type(exc).__name__}: {exc})", flush=True)
        raise
    elapsed = time.perf_counter() - t0
    status = "PASS" if not failures else "FAIL"
    detail = f"{elapsed:.1f}s" if not failures else "; ".join(failures)
    _emit(f"{status} criterion {k}: {text} [{detail}]", flush=True)
    assert not failures, failures


_emit = print


@pytest.fixture(autouse=True)
def _show(capsys):
    """Send the PASS/FAIL lines past pytest's capture."""
    global _emit

    def emit(line, **kw):
        with capsys.disabled():
            print("\n" + line, **kw)

    _emit = emit
    yield
    _emit = print


def tvars(n):
    return [None] + [LaurentPoly.variable(n, i) for i in range(n)]


def prod(ps):
    out = ps[0]
    for p in ps[1:]:
        out = out * p
    return out


def delta(arr):
    return alexander_polynomial(presentations_for(arr)[0])


def falk_closed_forms():
    t = tvars(5)
    d1 = prod([t[i] - 1 for i in range(1, 6)] + [prod(t[1:]) - 1, t[3] * t[4] * t[5] - 1]) ** 2
    d2 = (prod([t[i] - 1 for i in range(1, 5)]) ** 2 * (t[5] - 1) ** 3 * (prod(t[1:]) - 1)
          * (t[3] * t[4] * t[5] - 1) * (t[1] * t[2] * t[5] - 1))
    return d1, d2


def two_family_closed_forms(m, n):
    """Closed forms for the two families of m and n concurrent lines."""
    t = tvars(m + n)
    first = [t[i] - 1 for i in range(1, m + 1)]
    second = [t[i] - 1 for i in range(m + 1, m + n + 1)]
    t_m = prod([t[i] for i in range(1, m + 1)])
    t_j = prod([t[i] for i in range(m + 1, m + n + 1)])
    both_at_infinity = prod(first + [t_m - 1]) ** (n - 1) * prod(second + [t_j - 1]) ** (m - 1)
    one_affine = prod(first + [t_m * t_j - 1]) ** (n - 1) * prod(second) ** m * (t_j - 1) ** (m + n - 3)
    return both_at_infinity, one_affine


def test_criterion_1_falk_alexander_polynomials():
    def check():
        d1, d2 = falk_closed_forms()
        bad = []
        if not unit_equivalent(delta(falk_f1()).expand(), d1):
            bad.append("F1")
        if not unit_equivalent(delta(falk_f2()).expand(), d2):
            bad.append("F2")
        return bad

    verdict(1, "Alexander polynomials of F1 and F2 match the closed forms up to units", check)


def test_criterion_2_z_matrices():
    def check():
        bad = []
        if not z_matrix(delta(falk_f1())).same_up_to_order(from_rows(Z1_ROWS)):
            bad.append("Z1")
        if not z_matrix(delta(falk_f2())).same_up_to_order(from_rows(Z2_ROWS)):
            bad.append("Z2")
        return bad

    verdict(2, "z_matrix of both Falk polynomials equals Z1, Z2 up to column order", check)


def test_criterion_3_chamber_counts():
    def check():
        bad = []
        for rows, poly, count in ((Z1_ROWS, (1, 7, 21, 33, 27, 9), 98), (Z2_ROWS, (1, 8, 28, 51, 47, 17), 152)):
            res = chambers_and_char_poly(from_rows(rows))
            if res.poincare != poly or res.chambers != count:
                bad.append(f"got {res.poincare} / {res.chambers}, want {poly} / {count}")
        return bad

    verdict(3, "P(S1,t) and P(S2,t) with 98 and 152 chambers", check)


def random_z_matrices(count, seed=2024):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        dim = rng.randint(1, 4)
        cols = []
        for _ in range(rng.randint(1, 6)):
            c = tuple(rng.randint(-3, 3) for _ in range(dim))
            if any(c):
                cols.append(c)
        if cols:
            out.append(ZMatrix.from_columns(cols))
    return out


def test_criterion_4_vertices_equal_chambers():
    def check():
        bad = []
        for name, z in (("Z1", from_rows(Z1_ROWS)), ("Z2", from_rows(Z2_ROWS))):
            if len(zonotope_vertices(z)) != chambers_and_char_poly(z).chambers:
                bad.append(name)
        for k, z in enumerate(random_z_matrices(20)):
            v = len(zonotope_vertices(z))
            if not (v == chambers_and_char_poly(z).chambers == hull_vertex_count(z)):
                bad.append(f"random #{k}: {z.columns}")
        return bad

    verdict(4, "zonotope vertices = chambers on Z1, Z2 and 20 seeded random matrices (hull oracle)", check)


def test_criterion_5_oracle_equivalence():
    def check():
        bad = []
        d1, d2 = falk_closed_forms()
        closed_3, closed_4 = two_family_closed_forms(3, 3)
        t = tvars(3)
        cases = [
            (near_pencil(4), (t[1] * t[2] * t[3] - 1) ** 2),
            (general_position(4), (t[1] - 1) * (t[2] - 1) * (t[3] - 1) * (t[1] * t[2] * t[3] - 1)),
            (general_position(5), None),
            (falk_f1(), d1),
            (falk_f2(), d2),
            (two_pencils_at_infinity(3, 3), closed_3),
            (pencil_at_infinity_and_affine(3, 3), closed_4),
        ]
        for arr, closed in cases:
            g, _, pres = presentations_for(arr)
            graph_route = alexander_polynomial(g)
            oracle = alexander_gcd_oracle(pres)
            if not oracle.agrees_with(graph_route):
                bad.append(f"{arr.name}: oracle differs from graph formula")
            if closed is not None and not unit_equivalent(graph_route.expand(), closed):
                bad.append(f"{arr.name}: closed form differs")
        # near-pencil exponent 2(n - 2) for larger n as well
        for n_lines in (5, 6):
            n = n_lines - 1
            tn = tvars(n)
            if not unit_equivalent(delta(near_pencil(n_lines)).expand(), (prod(tn[1:]) - 1) ** (2 * (n - 2))):
                bad.append(f"near-pencil-{n_lines}: exponent")
        return bad

    verdict(5, "minor-gcd oracle agrees with the graph formula on 7 arrangements, closed forms exact", check)


def test_criterion_6_twisted_ball():
    def check():
        bad = []
        for arr in (near_pencil(4), falk_f1()):
            g, _, pres = presentations_for(arr)
            d = alexander_polynomial(g)
            tw = twisted_alexander(arr, g, pres, diagonal_representation(pres, 2, 2))
            if not twisted_ball_equivalent(d, tw, 2):
                bad.append(f"{arr.name}: ball")
            if not z_matrix(tw).merged().same_up_to_order(z_matrix(d).merged().scaled(2)):
                bad.append(f"{arr.name}: z_matrix")
        return bad

    verdict(6, "k = 2 diagonal twist scales the Z-matrix by 2 on near-pencil-4 and F1", check)


def test_criterion_7_characteristic_variety_sampling():
    def check():
        bad = []
        rng = random.Random(8)
        for arr in (falk_f2(), general_position(5)):
            g, _, pres = presentations_for(arr)
            am = fox_jacobian(pres)
            spec = am.specialized()
            N = am.size
            nfree = am.nvars - am.n_t
            v = characteristic_variety_v11(g)
            for a in v.subtori:
                for _ in range(3):
                    p = _point_on(rng, a)
                    # the specialized matrix, and the full one with random gamma images
                    full = p + [_rand_nonunit(rng) for _ in range(nfree)]
                    if rank_at(spec, p) > N - 2 or rank_at(am, full) > N - 2:
                        bad.append(f"{arr.name}: rank too large on subtorus {a}")
            d = alexander_polynomial(g).expand()
            generic = 0
            while generic < 5:
                p = [_rand_nonunit(rng) for _ in range(arr.n)]
                if v.contains(p) or d.evaluate(p) == 0:
                    continue
                generic += 1
                full = p + [_rand_nonunit(rng) for _ in range(nfree)]
                if rank_at(spec, p) != N - 1 or rank_at(am, full) != N - 1:
                    bad.append(f"{arr.name}: generic rank is not N-1")
        return bad

    verdict(7, "Fox matrix rank <= N-2 on every subtorus sample, N-1 at 5 generic points (F2, gp5)", check)


def _eta_expected(arr, kind):
    n = arr.n
    if kind == "near":
        terms = [(i - 1, j - 1, fbar_index(arr, (1, j)), 1) for i in range(1, n + 1) for j in range(2, n + 1)]
    else:
        terms = [(i - 1, j - 1, fbar_index(arr, (i, j)), 1) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    return alternating(terms)


def test_criterion_8_cohomology():
    def check():
        bad = []
        for arr in (product_arrangement(), braid_arrangement()):
            if double(os_algebra(arr)).poincare_text() != "(1+t)(1+10t+t^2)":
                bad.append(f"{arr.name}: Poincare polynomial")
        for n_lines in (3, 4, 5):
            if not eta_form(pencil(n_lines)).is_zero():
                bad.append(f"pencil-{n_lines}: eta")
        for n_lines in (4, 5, 6):
            if eta_form(near_pencil(n_lines)).coeffs != _eta_expected(near_pencil(n_lines), "near"):
                bad.append(f"near-pencil-{n_lines}: eta")
            if eta_form(general_position(n_lines)).coeffs != _eta_expected(general_position(n_lines), "generic"):
                bad.append(f"general-position-{n_lines}: eta")
        for arr in (pencil(4), near_pencil(4), near_pencil(5), general_position(4), general_position(5), falk_f1()):
            alg = double(os_algebra(arr))
            if not pd_check(alg):
                bad.append(f"{arr.name}: pd_check")
            expected = arrangement_class(arr) != ArrangementClass.PENCIL
            if generated_in_degree_one(alg) != expected:
                bad.append(f"{arr.name}: generated_in_degree_one")
        return bad

    verdict(8, "shared Poincare polynomial, three eta closed forms, duality and degree-1 generation", check)


def _closure_cases(seed=9):
    rng = random.Random(seed)
    out = []
    for m in (1, 2, 3):
        pairs = list(combinations(range(m), 2))
        for _ in range(4):
            rels = []
            for _ in range(rng.randint(0, max(len(pairs), 1))):
                rel = {p: rng.randint(-2, 2) for p in pairs}
                rel = {p: c for p, c in rel.items() if c}
                if rel:
                    rels.append(rel)
            out.append(LiePresentation(tuple(f"g{i + 1}" for i in range(m)), tuple(rels)))
    return out


def test_criterion_9_holonomy_ranks():
    def check():
        bad = []
        pres = holonomy_double(general_position(4))
        ref = example_double(3)
        if any(a != b and a != {k: -v for k, v in b.items()} for a, b in zip(pres.relations, ref)):
            bad.append("doubled presentation differs from the reference form")
        dims = graded_ranks(pres, 5).dims
        if dims != (6, 9, 36, 132, 534):
            bad.append(f"doubled ranks {dims}")
        if graded_ranks(free_lie(2), 4).dims != (2, 1, 2, 3):
            bad.append("free Lie algebra")
        for p in _closure_cases():
            for degree in (2, 3, 4):
                if not closure_oracle_agrees(p, degree):
                    bad.append(f"closure oracle on {p.relations} at degree {degree}")
        return bad

    verdict(9, "doubled ranks 6,9,36,132,534; Witt 2,1,2,3; closure oracle agrees for m <= 3, D <= 4", check)


def test_criterion_10_formality():
    def check():
        bad = []
        if len(CORPUS) < 10:
            bad.append("corpus too small")
        for name, arr in CORPUS.items():
            rep = formality(arr)
            special = arrangement_class(arr) in (ArrangementClass.PENCIL, ArrangementClass.NEAR_PENCIL)
            if rep.formal != special:
                bad.append(f"{name}: verdict {rep.verdict}")
                continue
            if special:
                continue
            w = list(rep.witness)
            off_cone = all(sum(Fraction(a) * x for a, x in zip(h, w[: arr.n])) != 0 for h in rep.tc_hyperplanes)
            if not off_cone or table_h1(double(os_algebra(arr)), w) != rep.witness_h1 or rep.witness_h1 < 1:
                bad.append(f"{name}: witness does not certify the mismatch")
        return bad

    verdict(10, f"formal exactly on pencils and near-pencils over {len(CORPUS)} arrangements, witnesses verified", check)


def test_criterion_11_presentation_structure():
    def check():
        bad = []
        for name, arr in CORPUS.items():
            g, _, pres = presentations_for(arr)
            N = arr.n + len(nbc2(arr).pairs)
            if not pres.is_commutator_relators():
                bad.append(f"{name}: relator with nonzero exponent sum")
            if pres.abelianization() != (N, []):
                bad.append(f"{name}: abelianization {pres.abelianization()}")
            if len(g.cycle_edges) != len(nbc2(arr).pairs):
                bad.append(f"{name}: cycle edges")
        return bad

    verdict(11, f"commutator relators, H1 = Z^(n+|nbc2|), cycle edges = nbc2 on {len(CORPUS)} arrangements", check)


if __name__ == "__main__":
    failed = 0
    for fn in [v for k, v in sorted(globals().items(), key=lambda kv: int(kv[0].split("_")[2]) if kv[0].startswith("test_criterion_") else 0)
               if k.startswith("test_criterion_")]:
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
