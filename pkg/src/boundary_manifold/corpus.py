"""Named arrangements used by the tests, the CLI and the documentation."""

from __future__ import annotations

from itertools import combinations

from .arrangement import Arrangement, from_lines, from_points


def pencil(n_lines: int) -> Arrangement:
    # x1 = c*x2 for distinct c, plus x2 = 0
    coeffs = [[0, 0, 1]] + [[0, 1, -c] for c in range(n_lines - 1)]
    return from_lines(coeffs, name=f"pencil-{n_lines}")


def near_pencil(n_lines: int) -> Arrangement:
    """Line at infinity plus n_lines - 1 lines through the origin."""
    coeffs = [[1, 0, 0], [0, 0, 1]] + [[0, 1, -c] for c in range(n_lines - 2)]
    return from_lines(coeffs, name=f"near-pencil-{n_lines}")


def general_position(n_lines: int) -> Arrangement:
    """Lines tangent to the moment curve; any three are non-concurrent."""
    coeffs = [[1, 0, 0]] + [[c * c, -2 * c, 1] for c in range(1, n_lines)]
    arr = from_lines(coeffs, name=f"general-position-{n_lines}")
    assert all(p.multiplicity == 2 for p in arr.points)
    return arr


def falk_f1() -> Arrangement:
    # x0 (x1+x0) (x1-x0) (x1+x2) x2 (x1-x2)
    return from_lines([[1, 0, 0], [1, 1, 0], [-1, 1, 0], [0, 1, 1], [0, 0, 1], [0, 1, -1]], name="F1")


def falk_f2() -> Arrangement:
    # x0 (x1+x0) (x1-x0) (x2+x0) (x2-x0) (x2+x1-x0)
    return from_lines([[1, 0, 0], [1, 1, 0], [-1, 1, 0], [1, 0, 1], [-1, 0, 1], [-1, 1, 1]], name="F2")


def product_arrangement() -> Arrangement:
    # x0 (x1+x0) (x1-x0) (x2+x0) x2 (x2-x0)
    return from_lines([[1, 0, 0], [1, 1, 0], [-1, 1, 0], [1, 0, 1], [0, 0, 1], [-1, 0, 1]], name="product-2x3")


def braid_arrangement() -> Arrangement:
    # x0 (x1+x0) (x1-x0) (x2+x0) (x2-x0) (x2-x1)
    return from_lines([[1, 0, 0], [1, 1, 0], [-1, 1, 0], [1, 0, 1], [-1, 0, 1], [0, -1, 1]], name="braid-like")


def two_pencils_at_infinity(m: int, k: int) -> Arrangement:
    """x0 (x0^m - x1^m)(x0^k - x2^k): two concurrent families meeting on x0.

    Built combinatorially, since the roots of unity are not rational.
    """
    fam1 = list(range(1, m + 1))
    fam2 = list(range(m + 1, m + k + 1))
    return from_points(1 + m + k, [[0] + fam1, [0] + fam2], name=f"two-families-{m}-{k}")


def pencil_at_infinity_and_affine(m: int, k: int) -> Arrangement:
    """x0 (x0^m - x2^m)(x1^k - x2^k): one family through a point of x0, one away from it."""
    fam1 = list(range(1, m + 1))
    fam2 = list(range(m + 1, m + k + 1))
    return from_points(1 + m + k, [[0] + fam1, fam2], name=f"family-and-pencil-{m}-{k}")


def triple_point_plus_generic() -> Arrangement:
    # x0 x1 x2 (x1 - x2) (x0 + x1 + 2 x2): one affine triple point, other pairs double
    return from_lines([[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 1, -1], [1, 1, 2]], name="triple-plus-generic")


def seven_lines() -> Arrangement:
    # x0 x1 x2 (x1-x0)(x2-x0)(x1-x2)(x1+x2-x0): four affine triple points
    return from_lines([[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, 1, 0], [-1, 0, 1], [0, 1, -1], [-1, 1, 1]],
                      name="seven-lines")


def corpus() -> dict[str, Arrangement]:
    arrs = [
        pencil(3), pencil(4), pencil(5),
        near_pencil(3), near_pencil(4), near_pencil(5), near_pencil(6),
        general_position(4), general_position(5), general_position(6),
        falk_f1(), falk_f2(), product_arrangement(), braid_arrangement(),
        two_pencils_at_infinity(3, 3), pencil_at_infinity_and_affine(3, 3),
        triple_point_plus_generic(), seven_lines(),
    ]
    return {a.name: a for a in arrs}


def all_pairs_covered(arr: Arrangement) -> bool:
    seen = {pair for p in arr.points for pair in combinations(p.incident, 2)}
    return len(seen) == arr.n_lines * (arr.n_lines - 1) // 2
