"""Orlik-Solomon algebra in degrees <= 2, its graded double and the 3-form.

Basis of the double (formal dimension 3), by index:

    0                  1
    1 .. n             e_1 .. e_n
    n+1 .. N           fbar_p  for p in nbc2 (N = n + b2)
    N+1 .. N+b2        f_p
    N+b2+1 .. 2N       ebar_1 .. ebar_n
    2N+1               omega
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from .arrangement import Arrangement, ArrangementClass, arrangement_class, betti_numbers_mobius, nbc2
from .linalg import rank, smith_diagonal


@dataclass(frozen=True)
class OSAlgebra:
    """Degree <= 2 part of the Orlik-Solomon algebra of the decone.

    ``mu[i, j, k]`` (0-based) is the coefficient of f_k in e_{i+1} e_{j+1}.
    """

    n: int
    pairs: tuple[tuple[int, int], ...]
    mu: np.ndarray = field(compare=False)

    @property
    def b1(self) -> int:
        return self.n

    @property
    def b2(self) -> int:
        return len(self.pairs)

    def e_labels(self) -> list[str]:
        return [f"e{i}" for i in range(1, self.n + 1)]

    def f_labels(self) -> list[str]:
        return [f"f{i},{k}" for i, k in self.pairs]

    def product(self, i: int, j: int) -> dict[tuple[int, int], int]:
        """e_i e_j (1-based) as {nbc pair: coefficient}."""
        row = self.mu[i - 1, j - 1]
        return {self.pairs[k]: int(c) for k, c in enumerate(row) if c}

    def is_antisymmetric(self) -> bool:
        return bool(np.array_equal(self.mu, -self.mu.transpose(1, 0, 2)))

    def mu_rank(self) -> int:
        rows = [[int(x) for x in self.mu[i, j]] for i, j in combinations(range(self.n), 2)]
        return rank(rows) if rows and self.b2 else 0

    def is_surjective(self) -> bool:
        """Products e_i e_j span A^2 over Z."""
        if self.b2 == 0:
            return True
        rows = [[int(x) for x in self.mu[i, j]] for i, j in combinations(range(self.n), 2)]
        rows = [r for r in rows if any(r)]
        d = smith_diagonal(rows)
        return len(d) == self.b2 and all(x == 1 for x in d)


def os_algebra(arr: Arrangement) -> OSAlgebra:
    n = arr.n
    nbc = nbc2(arr)
    index = {p: k for k, p in enumerate(nbc.pairs)}
    mu = np.zeros((n, n, len(nbc)), dtype=np.int64)
    for i, j in combinations(range(1, n + 1), 2):
        if (i, j) in index:
            mu[i - 1, j - 1, index[(i, j)]] = 1
        else:
            lines = arr.point_of(i, j).incident
            if 0 in lines:
                continue  # parallel in the decone
            k = lines[0]
            mu[i - 1, j - 1, index[(k, j)]] += 1
            mu[i - 1, j - 1, index[(k, i)]] -= 1
        mu[j - 1, i - 1] = -mu[i - 1, j - 1]
    alg = OSAlgebra(n, nbc.pairs, mu)
    if not alg.is_surjective():
        raise RuntimeError("multiplication A1 x A1 -> A2 is not surjective")
    return alg


# ---------------------------------------------------------------------------
# the double


@dataclass(frozen=True)
class DoubledAlgebra:
    base: OSAlgebra
    table: np.ndarray = field(compare=False)  # table[a, b, c]: coefficient of basis c in a*b

    @property
    def rank1(self) -> int:
        return self.base.n + self.base.b2

    @property
    def size(self) -> int:
        return 2 * self.rank1 + 2

    def degree(self, a: int) -> int:
        big = self.rank1
        if a == 0:
            return 0
        if a <= big:
            return 1
        if a <= 2 * big:
            return 2
        return 3

    def indices(self, k: int) -> list[int]:
        return [a for a in range(self.size) if self.degree(a) == k]

    def labels(self) -> list[str]:
        os_ = self.base
        return (["1"] + os_.e_labels() + [f"fbar{i},{k}" for i, k in os_.pairs]
                + os_.f_labels() + [f"ebar{i}" for i in range(1, os_.n + 1)] + ["omega"])

    def betti(self) -> tuple[int, int, int, int]:
        return (1, self.rank1, self.rank1, 1)

    def poincare_coefficients(self) -> list[int]:
        return list(self.betti())

    def poincare_text(self) -> str:
        """Factored form (1+t)(1+(N-1)t+t^2) of 1 + N t + N t^2 + t^3."""
        mid = self.rank1 - 1
        if mid == 0:
            return "(1+t)(1+t^2)"
        inner = "t" if mid == 1 else f"{mid}t"
        return f"(1+t)(1+{inner}+t^2)"

    def multiply(self, x: Sequence[int], y: Sequence[int]) -> np.ndarray:
        """Product of two elements given by coefficient vectors."""
        return np.einsum("a,b,abc->c", np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64), self.table)

    def export_table(self) -> list[tuple[str, str, dict[str, int]]]:
        labels = self.labels()
        out = []
        for a in range(1, self.size):
            for b in range(1, self.size):
                row = self.table[a, b]
                if row.any():
                    out.append((labels[a], labels[b], {labels[c]: int(v) for c, v in enumerate(row) if v}))
        return out


def _table_from_mu(n: int, b2: int, mu: np.ndarray) -> np.ndarray:
    big = n + b2
    size = 2 * big + 2
    e = lambda i: 1 + i
    fbar = lambda k: 1 + n + k
    f = lambda k: 1 + big + k
    ebar = lambda i: 1 + big + b2 + i
    omega = size - 1
    t = np.zeros((size, size, size), dtype=np.int64)
    for a in range(size):
        t[0, a, a] = 1
        t[a, 0, a] = 1
    for i in range(n):
        for j in range(n):
            for k in range(b2):
                c = mu[i, j, k]
                if c:
                    t[e(i), e(j), f(k)] += c
                    # e_j fbar_k = sum_i mu_ijk ebar_i, and fbar_k e_j = -e_j fbar_k
                    t[e(j), fbar(k), ebar(i)] += c
                    t[fbar(k), e(j), ebar(i)] -= c
    for i in range(n):
        t[e(i), ebar(i), omega] = 1
        t[ebar(i), e(i), omega] = 1
    for k in range(b2):
        t[fbar(k), f(k), omega] = 1
        t[f(k), fbar(k), omega] = 1
    return t


def double(os_: OSAlgebra) -> DoubledAlgebra:
    return DoubledAlgebra(os_, _table_from_mu(os_.n, os_.b2, os_.mu))


def pairing_matrix(alg: DoubledAlgebra, k: int) -> list[list[int]]:
    top = alg.size - 1
    rows = alg.indices(k)
    cols = alg.indices(3 - k)
    return [[int(alg.table[a, b, top]) for b in cols] for a in rows]


def is_associative(alg: DoubledAlgebra) -> bool:
    t = alg.table
    left = np.einsum("abm,mcd->abcd", t, t)
    right = np.einsum("bcm,amd->abcd", t, t)
    return bool(np.array_equal(left, right))


def is_graded_commutative(alg: DoubledAlgebra) -> bool:
    deg = np.array([alg.degree(a) for a in range(alg.size)])
    sign = np.where(np.outer(deg, deg) % 2 == 1, -1, 1)
    return bool(np.array_equal(alg.table, sign[:, :, None] * alg.table.transpose(1, 0, 2)))


def respects_grading(alg: DoubledAlgebra) -> bool:
    deg = [alg.degree(a) for a in range(alg.size)]
    for a, b, c in zip(*np.nonzero(alg.table)):
        if deg[a] + deg[b] != deg[c]:
            return False
    return True


def pd_check(alg: DoubledAlgebra) -> bool:
    """Poincare duality over Z for a consistent graded-commutative algebra.

    The duality pairings never involve the structure constants, so the
    table is also required to be associative and graded commutative; a
    corrupted entry then makes the check fail.
    """
    if not (respects_grading(alg) and is_graded_commutative(alg) and is_associative(alg)):
        return False
    for k in (0, 1):
        m = pairing_matrix(alg, k)
        if any(len(row) != len(m) for row in m):
            return False
        d = smith_diagonal(m)
        if len(d) != len(m) or any(x != 1 for x in d):
            return False
    return True


def generated_in_degree_one(alg: DoubledAlgebra) -> bool:
    """Products of degree-1 classes span the degree-2 piece over Z."""
    deg1, deg2 = alg.indices(1), alg.indices(2)
    if not deg2:
        return True
    rows = []
    seen = set()
    for a in deg1:
        for b in deg1:
            r = tuple(int(alg.table[a, b, c]) for c in deg2)
            if any(r) and r not in seen:
                seen.add(r)
                rows.append(list(r))
    if not rows:
        return False
    d = smith_diagonal(rows)
    return len(d) == len(deg2) and all(x == 1 for x in d)


def betti_check(arr: Arrangement, alg: DoubledAlgebra) -> bool:
    """b_k(M) = b_k(X) + b_{3-k}(X)."""
    bx = betti_numbers_mobius(arr) + (0,)
    return all(alg.betti()[k] == bx[k] + bx[3 - k] for k in range(4))


# ---------------------------------------------------------------------------
# the 3-form


@dataclass(frozen=True)
class ThreeForm:
    """Alternating form on the degree-1 piece, stored on increasing triples.

    Indices are positions in the degree-1 basis: 0..n-1 for e, n.. for fbar.
    """

    n: int
    pairs: tuple[tuple[int, int], ...]
    coeffs: dict[tuple[int, int, int], int]

    def value(self, a: int, b: int, c: int) -> int:
        if len({a, b, c}) < 3:
            return 0
        items = [a, b, c]
        sign = 1
        for i in range(3):
            for j in range(2 - i):
                if items[j] > items[j + 1]:
                    items[j], items[j + 1] = items[j + 1], items[j]
                    sign = -sign
        return sign * self.coeffs.get(tuple(items), 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def shapes_ok(self) -> bool:
        """Only (e, e, fbar) triples carry coefficients."""
        return all(a < self.n and b < self.n and c >= self.n for a, b, c in self.coeffs)

    def records(self) -> list[tuple[int, int, str, int]]:
        out = []
        for (a, b, c), v in sorted(self.coeffs.items()):
            i, k = self.pairs[c - self.n]
            out.append((a + 1, b + 1, f"fbar{i},{k}", v))
        return out

    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, j, lab, v in self.records():
            mono = f"e{i} e{j} {lab}"
            if v == 1:
                parts.append(f"+ {mono}")
            elif v == -1:
                parts.append(f"- {mono}")
            else:
                parts.append(f"{'+' if v > 0 else '-'} {abs(v)} {mono}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[1:]


def _wedge_add(coeffs: dict, triple: Sequence[int], v: int) -> None:
    items = list(triple)
    if len(set(items)) < 3:
        return
    sign = 1
    for i in range(3):
        for j in range(2 - i):
            if items[j] > items[j + 1]:
                items[j], items[j + 1] = items[j + 1], items[j]
                sign = -sign
    key = tuple(items)
    coeffs[key] = coeffs.get(key, 0) + sign * v
    if coeffs[key] == 0:
        del coeffs[key]


def eta_form(arr: Arrangement) -> ThreeForm:
    """Sum over nbc pairs (i, k) of e_{I(i,k)} ^ e_k ^ fbar_{i,k}."""
    n = arr.n
    nbc = nbc2(arr)
    coeffs: dict = {}
    for p, (i, k) in enumerate(nbc.pairs):
        for j in nbc.witness[(i, k)]:
            _wedge_add(coeffs, (j - 1, k - 1, n + p), 1)
    return ThreeForm(n, nbc.pairs, coeffs)


def eta_from_mu(os_: OSAlgebra) -> ThreeForm:
    """Sum over i < j and k of mu_ijk e_i ^ e_j ^ fbar_k."""
    coeffs: dict = {}
    for i, j in combinations(range(os_.n), 2):
        for k in range(os_.b2):
            v = int(os_.mu[i, j, k])
            if v:
                _wedge_add(coeffs, (i, j, os_.n + k), v)
    return ThreeForm(os_.n, os_.pairs, coeffs)


def eta_from_table(alg: DoubledAlgebra) -> ThreeForm:
    """omega-coefficient of (a b) c for increasing degree-1 triples."""
    deg1 = alg.indices(1)
    top = alg.size - 1
    t = alg.table
    coeffs = {}
    for a, b, c in combinations(deg1, 3):
        v = int(t[a, b] @ t[:, c, top])
        if v:
            coeffs[(a - 1, b - 1, c - 1)] = v
    return ThreeForm(alg.base.n, alg.base.pairs, coeffs)


def eta_consistent(arr: Arrangement) -> bool:
    os_ = os_algebra(arr)
    a, b, c = eta_form(arr), eta_from_mu(os_), eta_from_table(double(os_))
    return a.coeffs == b.coeffs == c.coeffs


@dataclass(frozen=True)
class CohomologyReport:
    betti: tuple[int, int, int, int]
    poincare: str
    eta: ThreeForm
    pd: bool
    generated_in_degree_one: bool
    eta_routes_agree: bool
    betti_matches_complement: bool


def cohomology_report(arr: Arrangement) -> CohomologyReport:
    os_ = os_algebra(arr)
    alg = double(os_)
    eta = eta_form(arr)
    agree = eta.coeffs == eta_from_mu(os_).coeffs == eta_from_table(alg).coeffs
    gen1 = generated_in_degree_one(alg)
    if gen1 != (arrangement_class(arr) is not ArrangementClass.PENCIL):
        raise RuntimeError("degree-one generation disagrees with the pencil test")
    return CohomologyReport(alg.betti(), alg.poincare_text(), eta, pd_check(alg), gen1, agree,
                            betti_check(arr, alg))
