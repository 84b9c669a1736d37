"""Newton polytopes of factored Alexander polynomials.

Every factor of a product of binomial-like factors has a segment as Newton
polytope, so the polytope of the product is a zonotope.  Its vertices
correspond to the chambers of the central hyperplane arrangement whose
normals are the segment directions; both counts are computed here, together
with the Poincare polynomial of the intersection poset of that arrangement.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import linprog

from .laurent import FactoredLaurent, LaurentPoly
from .linalg import rank


class PolytopeError(ValueError):
    pass


def _orient(v: Sequence[int]) -> tuple[int, ...]:
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    raise PolytopeError("zero column")


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, abs(int(x)))
    return _orient([int(x) // g for x in v])


@dataclass(frozen=True)
class ZMatrix:
    """Zonotope generators, one column per factor of the polynomial."""

    rows: int
    columns: tuple[tuple[int, ...], ...]

    @classmethod
    def from_columns(cls, columns: Iterable[Sequence[int]], rows: int | None = None) -> "ZMatrix":
        cols = tuple(_orient([int(x) for x in c]) for c in columns)
        if rows is None:
            if not cols:
                raise PolytopeError("need the row count for an empty matrix")
            rows = len(cols[0])
        if any(len(c) != rows for c in cols):
            raise PolytopeError("ragged columns")
        return cls(rows, cols)

    def as_rows(self) -> list[list[int]]:
        return [[c[i] for c in self.columns] for i in range(self.rows)]

    def scaled(self, k: int) -> "ZMatrix":
        return ZMatrix(self.rows, tuple(tuple(k * x for x in c) for c in self.columns))

    def column_multiset(self) -> list[tuple[int, ...]]:
        return sorted(self.columns)

    def merged(self) -> "ZMatrix":
        """Parallel columns summed; the zonotope is unchanged."""
        acc: dict[tuple[int, ...], list[int]] = {}
        for c in self.columns:
            d = _primitive(c)
            cur = acc.setdefault(d, [0] * self.rows)
            for i, x in enumerate(c):
                cur[i] += x
        return ZMatrix(self.rows, tuple(sorted(tuple(v) for v in acc.values())))

    def same_up_to_order(self, other: "ZMatrix") -> bool:
        return self.rows == other.rows and self.column_multiset() == other.column_multiset()


def _segment(f: LaurentPoly) -> tuple[int, ...]:
    """Direction of the Newton polytope of f, which must be a segment."""
    pts = sorted(f.terms)
    lo, hi = pts[0], pts[-1]
    d = [b - a for a, b in zip(lo, hi)]
    if not any(d):
        raise PolytopeError("monomial factor")
    for p in pts[1:-1]:
        e = [b - a for a, b in zip(lo, p)]
        if rank([d, e]) != 1:
            raise PolytopeError("factor whose Newton polytope is not a segment")
    return tuple(d)


def z_matrix(delta: FactoredLaurent) -> ZMatrix:
    if delta.is_zero:
        raise PolytopeError("the zero polynomial has no Newton polytope")
    cols = []
    for f, d in delta.factors:
        cols.append([d * x for x in _segment(f)])
    return ZMatrix.from_columns(cols, rows=delta.nvars)


# ---------------------------------------------------------------------------
# the secondary arrangement


@dataclass(frozen=True)
class Flat:
    hyperplanes: frozenset[int]  # indices into the distinct normals
    rank: int
    mobius: int


@dataclass(frozen=True)
class IntersectionPoset:
    normals: tuple[tuple[int, ...], ...]  # distinct primitive normals
    flats: tuple[Flat, ...]  # bottom first, then by rank

    def poincare(self) -> list[int]:
        top = max(f.rank for f in self.flats)
        out = [0] * (top + 1)
        for f in self.flats:
            out[f.rank] += f.mobius * (-1) ** f.rank
        return out


def distinct_normals(z: ZMatrix) -> tuple[tuple[int, ...], ...]:
    seen: list[tuple[int, ...]] = []
    for c in z.columns:
        p = _primitive(c)
        if p not in seen:
            seen.append(p)
    return tuple(seen)


def intersection_poset(z: ZMatrix) -> IntersectionPoset:
    normals = distinct_normals(z)
    m = len(normals)

    def closure(idx: frozenset[int], r: int) -> frozenset[int]:
        base = [normals[i] for i in idx]
        return frozenset(i for i in range(m) if i in idx or rank(base + [normals[i]]) == r)

    levels: list[set[frozenset[int]]] = [{frozenset()}]
    while True:
        nxt: set[frozenset[int]] = set()
        r = len(levels)
        for f in levels[-1]:
            for h in range(m):
                if h in f:
                    continue
                nxt.add(closure(f | {h}, r))
        if not nxt:
            break
        levels.append(nxt)
    ordered = [(r, f) for r, lev in enumerate(levels) for f in sorted(lev, key=sorted)]
    mob: dict[frozenset[int], int] = {}
    flats = []
    for r, f in ordered:
        if r == 0:
            mu = 1
        else:
            mu = -sum(v for g, v in mob.items() if g < f)
        mob[f] = mu
        flats.append(Flat(f, r, mu))
    return IntersectionPoset(normals, tuple(flats))


@dataclass(frozen=True)
class ChamberCount:
    poset: IntersectionPoset
    poincare: tuple[int, ...]  # coefficients of P(S, t), constant term first
    chambers: int


def chambers_and_char_poly(z: ZMatrix) -> ChamberCount:
    poset = intersection_poset(z)
    p = poset.poincare()
    return ChamberCount(poset, tuple(p), sum(p))


def poincare_text(coeffs: Sequence[int]) -> str:
    parts = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        if k == 0:
            parts.append(str(c))
        else:
            mono = "t" if k == 1 else f"t^{k}"
            parts.append(mono if c == 1 else f"{c}{mono}")
    return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# exact feasibility and chamber search


def _feasible_point(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction] | None:
    """Some x with a x >= b (x free), by a phase-one simplex with Bland's rule; b > 0 assumed."""
    m, n = len(a), len(a[0])
    # columns: u (n), w (n), surplus (m), artificial (m); x = u - w
    ncol = 2 * n + 2 * m
    tab = []
    for i in range(m):
        row = [Fraction(x) for x in a[i]] + [-Fraction(x) for x in a[i]]
        row += [Fraction(-1 if k == i else 0) for k in range(m)]
        row += [Fraction(1 if k == i else 0) for k in range(m)]
        row.append(Fraction(b[i]))
        tab.append(row)
    basis = [2 * n + m + i for i in range(m)]
    # objective: minimize the sum of artificials; reduced costs
    cost = [Fraction(0)] * (ncol + 1)
    for i in range(m):
        for j in range(ncol + 1):
            cost[j] -= tab[i][j]
    for k in range(2 * n + m, 2 * n + 2 * m):
        cost[k] += 1
    while True:
        enter = next((j for j in range(ncol) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][-1] / tab[i][enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return None  # unbounded phase one cannot happen; be safe
        _, r = best
        piv = tab[r][enter]
        tab[r] = [x / piv for x in tab[r]]
        for i in range(m):
            if i != r and tab[i][enter]:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[r])]
        if cost[enter]:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, tab[r])]
        basis[r] = enter
    if cost[-1] != 0:
        return None
    sol = [Fraction(0)] * ncol
    for i, bi in enumerate(basis):
        sol[bi] = tab[i][-1]
    return [sol[j] - sol[n + j] for j in range(n)]


def _solve_exact(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction] | None:
    """One solution of rows * y = rhs (free variables set to 0), or None."""
    k = len(rows[0]) if rows else 0
    m = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if any(row[-1] for row in m[r:]):
        return None
    y = [Fraction(0)] * k
    for i, c in enumerate(pivots):
        y[c] = m[i][-1]
    return y


def _certified_by_float_lp(a: Sequence[Sequence[int]]) -> tuple[bool, list[Fraction] | None]:
    """Decide a x > 0 with a floating LP, then certify the answer exactly.

    Returns (True, answer) when a certificate was found: a rational interior
    point, or None backed by a nonnegative y with y^T a = 0, sum y = 1.
    """
    arr = np.array(a, dtype=float)
    m, n = arr.shape
    res = linprog(np.zeros(n), A_ub=-arr, b_ub=-np.ones(m), bounds=[(None, None)] * n, method="highs")
    if res.status == 0:
        for den in (1, 10 ** 3, 10 ** 6):
            x = [Fraction(v).limit_denominator(den) for v in res.x]
            if all(sum(c * v for c, v in zip(row, x)) > 0 for row in a):
                return True, x
        return False, None
    if res.status != 2:
        return False, None
    dual = linprog(np.zeros(m), A_eq=np.vstack([arr.T, np.ones(m)]), b_eq=np.r_[np.zeros(n), 1.0],
                   bounds=[(0, None)] * m, method="highs")
    if dual.status != 0:
        return False, None
    support = [i for i in range(m) if dual.x[i] > 1e-9]
    rows = [[Fraction(a[i][j]) for i in support] for j in range(n)] + [[Fraction(1)] * len(support)]
    y = _solve_exact(rows, [Fraction(0)] * n + [Fraction(1)])
    if y is None or any(v < 0 for v in y):
        return False, None
    return True, None


def chamber_point(normals: Sequence[Sequence[int]], signs: Sequence[int]) -> list[Fraction] | None:
    """A point of the open chamber with the given signs, or None if it is empty.

    A floating LP proposes the answer and exact arithmetic certifies it; the
    exact simplex decides whenever certification fails.
    """
    a = [[s * x for x in q] for q, s in zip(normals, signs)]
    ok, pt = _certified_by_float_lp(a)
    if ok:
        return pt
    return _feasible_point(a, [Fraction(1)] * len(normals))


def _generic_point(normals: Sequence[Sequence[int]], dim: int) -> list[int]:
    # points (1, b, b^2, ...) leave any finite set of hyperplanes for large b
    base = 2
    while True:
        x = [base ** i for i in range(dim)]
        if all(sum(a * b for a, b in zip(q, x)) for q in normals):
            return x
        base += 1


@dataclass(frozen=True)
class Chamber:
    signs: tuple[int, ...]
    witness: tuple[Fraction, ...]  # a point of the open chamber


def enumerate_chambers(z: ZMatrix) -> list[Chamber]:
    """Breadth-first search over sign vectors, flipping one hyperplane at a time."""
    normals = distinct_normals(z)
    x0 = _generic_point(normals, z.rows)
    s0 = tuple(1 if sum(a * b for a, b in zip(q, x0)) > 0 else -1 for q in normals)
    start = Chamber(s0, tuple(Fraction(v) for v in x0))
    seen = {s0: start}
    empty: set[tuple[int, ...]] = set()
    queue = deque([s0])
    while queue:
        s = queue.popleft()
        for i in range(len(normals)):
            t = s[:i] + (-s[i],) + s[i + 1:]
            if t in seen or t in empty:
                continue
            pt = chamber_point(normals, t)
            if pt is None:
                empty.add(t)
            else:
                seen[t] = Chamber(t, tuple(pt))
                queue.append(t)
    return sorted(seen.values(), key=lambda c: c.signs, reverse=True)


def _vertex_of(z: ZMatrix, normals, signs) -> tuple[int, ...]:
    idx = {q: i for i, q in enumerate(normals)}
    v = [0] * z.rows
    for c in z.columns:
        if signs[idx[_primitive(c)]] > 0:
            v = [a + b for a, b in zip(v, c)]
    return tuple(v)


def zonotope_vertices(z: ZMatrix) -> list[tuple[int, ...]]:
    normals = distinct_normals(z)
    out = {_vertex_of(z, normals, ch.signs) for ch in enumerate_chambers(z)}
    return sorted(out)


@dataclass(frozen=True)
class Face:
    vertex: tuple[int, ...]
    normal: tuple[Fraction, ...]  # a functional maximized exactly at the vertex


def face_report(z: ZMatrix) -> list[Face]:
    normals = distinct_normals(z)
    faces = [Face(_vertex_of(z, normals, ch.signs), ch.witness) for ch in enumerate_chambers(z)]
    return sorted(faces, key=lambda f: f.vertex)


# ---------------------------------------------------------------------------
# norms, twisted balls, BNS components


def alexander_norm(delta: FactoredLaurent, xi: Sequence) -> Fraction:
    z = z_matrix(delta)
    if len(xi) != z.rows:
        raise PolytopeError("class has the wrong dimension")
    vals = [sum(Fraction(a) * b for a, b in zip(xi, v)) for v in zonotope_vertices(z)]
    return max(vals) - min(vals)


def support_norm(poly: LaurentPoly, xi: Sequence) -> Fraction:
    """Same supremum over the full support of an expanded polynomial."""
    vals = [sum(Fraction(a) * b for a, b in zip(xi, e)) for e in poly.terms]
    return max(vals) - min(vals)


def twisted_ball_equivalent(delta: FactoredLaurent, twisted: FactoredLaurent, k: int) -> bool:
    if delta.is_zero or twisted.is_zero:
        raise PolytopeError("both polynomials must be nonzero")
    return z_matrix(twisted).merged().same_up_to_order(z_matrix(delta).merged().scaled(k))


def bns_component_count(delta: FactoredLaurent) -> int:
    if delta.is_zero:
        raise PolytopeError("the Alexander polynomial vanishes")
    if not delta.factors:
        return 1
    return chambers_and_char_poly(z_matrix(delta)).chambers


def newton_offset(delta: FactoredLaurent) -> tuple[int, ...]:
    """Translation taking the zonotope of z_matrix(delta) onto the Newton polytope of delta."""
    off = list(delta.unit_exps)
    for f, d in delta.factors:
        pts = sorted(f.terms)
        lo, hi = pts[0], pts[-1]
        seg = tuple(d * (b - a) for a, b in zip(lo, hi))
        start = lo if _orient(seg) == seg else hi
        off = [x + d * y for x, y in zip(off, start)]
    return tuple(off)


def vertex_coefficients(delta: FactoredLaurent) -> dict[tuple[int, ...], object]:
    """Coefficient of the expanded polynomial at each zonotope vertex."""
    poly = delta.expand()
    off = newton_offset(delta)
    return {v: poly.terms.get(tuple(a + b for a, b in zip(v, off)), 0) for v in zonotope_vertices(z_matrix(delta))}


def all_vertices_unit(delta: FactoredLaurent) -> bool:
    return all(c in (1, -1) for c in vertex_coefficients(delta).values())


def polytope_dump(vertices: Iterable[Sequence[int]]) -> str:
    return "\n".join(" ".join(str(x) for x in v) for v in vertices) + "\n"
