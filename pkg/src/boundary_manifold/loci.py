"""Resonance matrices, pointwise resonance tests and the formality verdict."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .alexander import characteristic_variety_v11
from .arrangement import Arrangement, ArrangementClass, arrangement_class
from .cohomology import DoubledAlgebra, OSAlgebra, double, os_algebra
from .graph import build_graph
from .laurent import LaurentPoly
from .linalg import rank
from .minors import determinant

DEFAULT_SEED = 20061


# ---------------------------------------------------------------------------
# matrices of linear forms


@dataclass(frozen=True)
class LinearMatrix:
    """Matrix whose entries are integer linear forms in ``variables``."""

    variables: tuple[str, ...]
    entries: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), (len(self.entries[0]) if self.entries else 0)

    def evaluate(self, point: Sequence) -> list[list[Fraction]]:
        if len(point) != len(self.variables):
            raise ValueError(f"point has {len(point)} coordinates, expected {len(self.variables)}")
        pt = [Fraction(x) for x in point]
        return [[sum((c * x for c, x in zip(form, pt) if c), Fraction(0)) for form in row] for row in self.entries]

    def rank_at(self, point: Sequence) -> int:
        m = self.evaluate(point)
        return rank(m) if m and m[0] else 0

    def transpose_negated(self) -> "LinearMatrix":
        rows, cols = self.shape
        return LinearMatrix(self.variables, tuple(
            tuple(tuple(-c for c in self.entries[i][j]) for i in range(rows)) for j in range(cols)))

    def is_skew(self) -> bool:
        rows, cols = self.shape
        return rows == cols and all(
            self.entries[i][j] == tuple(-c for c in self.entries[j][i]) for i in range(rows) for j in range(cols))

    def form_text(self, form: Sequence[int]) -> str:
        return LaurentPoly(len(self.variables), {tuple(int(i == v) for i in range(len(form))): c
                                                 for v, c in enumerate(form) if c}).to_text(self.variables)

    def to_text(self) -> list[list[str]]:
        return [[self.form_text(f) for f in row] for row in self.entries]


def _zero_form(k: int) -> tuple[int, ...]:
    return (0,) * k


@dataclass(frozen=True)
class ThetaMatrix(LinearMatrix):
    pass


@dataclass(frozen=True)
class BlockTheta(LinearMatrix):
    b1: int = 0
    b2: int = 0

    def phi(self) -> LinearMatrix:
        return LinearMatrix(self.variables, tuple(row[: self.b1] for row in self.entries[: self.b1]))

    def blocks_ok(self) -> bool:
        n, b = self.b1, self.b2
        rows = self.entries
        upper_right = [row[n:] for row in rows[:n]]
        lower_left = [row[:n] for row in rows[n:]]
        lower_right = [row[n:] for row in rows[n:]]
        z = _zero_form(n + b)
        return (self.phi().is_skew()
                and all(lower_left[k][j] == tuple(-c for c in upper_right[j][k]) for j in range(n) for k in range(b))
                and all(e == z for row in lower_right for e in row))


def theta(os_: OSAlgebra) -> ThetaMatrix:
    """Theta_{j,k} = sum_i mu_ijk x_i, rows j = 1..b1, columns k in nbc2 order."""
    n, b2 = os_.n, os_.b2
    entries = tuple(tuple(tuple(int(os_.mu[i, j, k]) for i in range(n)) for k in range(b2)) for j in range(n))
    return ThetaMatrix(tuple(f"x{i}" for i in range(1, n + 1)), entries)


def _y_names(os_: OSAlgebra) -> list[str]:
    return [f"y{i}_{k}" for i, k in os_.pairs]


def theta_double(os_: OSAlgebra) -> BlockTheta:
    """[[Phi, Theta], [-Theta^T, 0]] in variables x_1..x_n, y_p."""
    n, b2 = os_.n, os_.b2
    width = n + b2
    rows = []
    for i in range(n):
        phi = [tuple([0] * n + [int(os_.mu[i, j, k]) for k in range(b2)]) for j in range(n)]
        th = [tuple([int(os_.mu[a, i, k]) for a in range(n)] + [0] * b2) for k in range(b2)]
        rows.append(tuple(phi + th))
    for k in range(b2):
        low = [tuple([-int(os_.mu[a, j, k]) for a in range(n)] + [0] * b2) for j in range(n)]
        rows.append(tuple(low + [_zero_form(width)] * b2))
    names = tuple([f"x{i}" for i in range(1, n + 1)] + _y_names(os_))
    return BlockTheta(names, tuple(rows), n, b2)


def minor_generators(matrix: LinearMatrix, d: int, limit: int | None = 200) -> tuple[list[str], bool]:
    """Nonzero codimension-d minors as polynomial text; flag says whether all were produced."""
    rows, cols = matrix.shape
    size = rows - d
    if size <= 0:
        return ["1"], True
    if size > cols:
        return [], True
    nv = len(matrix.variables)

    def poly(form):
        return LaurentPoly(nv, {tuple(int(i == v) for i in range(nv)): c for v, c in enumerate(form) if c})

    out = []
    complete = True
    seen = set()
    for rs in combinations(range(rows), size):
        for cs in combinations(range(cols), size):
            if limit is not None and len(out) >= limit:
                return out, False
            det = determinant([[poly(matrix.entries[r][c]) for c in cs] for r in rs])
            if det.is_zero():
                continue
            text = det.to_text(matrix.variables)
            if text not in seen:
                seen.add(text)
                out.append(text)
    return out, complete


# ---------------------------------------------------------------------------
# pointwise resonance


def h1_dimension(block: LinearMatrix, point: Sequence) -> int:
    """dim H^1 of the complex given by multiplication with a nonzero class."""
    if not any(Fraction(x) for x in point):
        raise ValueError("resonance is tested at nonzero points only")
    return len(block.variables) - 1 - block.rank_at(point)


def resonance_membership(block: LinearMatrix, point: Sequence, d: int) -> bool:
    return h1_dimension(block, point) >= d


def complement_h1_dimension(th: ThetaMatrix, point: Sequence) -> int:
    if not any(Fraction(x) for x in point):
        raise ValueError("resonance is tested at nonzero points only")
    return len(th.variables) - 1 - th.rank_at(point)


def multiplication_rank(alg: DoubledAlgebra, point: Sequence) -> int:
    """Rank of a* : A^1 -> A^2 read off the multiplication table directly."""
    deg1, deg2 = alg.indices(1), alg.indices(2)
    vec = [Fraction(x) for x in point]
    m = [[sum((vec[p] * int(alg.table[a, b, c]) for p, a in enumerate(deg1) if alg.table[a, b, c]), Fraction(0))
          for c in deg2] for b in deg1]
    return rank(m)


def random_point(rng: random.Random, k: int) -> list[Fraction]:
    while True:
        pt = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(k)]
        if any(pt):
            return pt


def beta(os_: OSAlgebra) -> int:
    return 1 - os_.b1 + os_.b2


@dataclass(frozen=True)
class R11:
    dimension: int
    ambient: int
    reason: str

    def to_text(self) -> str:
        return f"C^{self.dimension}"


def r11(arr: Arrangement) -> R11:
    n = arr.n
    if n < 2:
        raise ValueError("the resonance trichotomy needs n >= 2")
    os_ = os_algebra(arr)
    cls = arrangement_class(arr)
    ambient = n + os_.b2
    if cls is ArrangementClass.PENCIL:
        return R11(n, ambient, "pencil")
    if cls is ArrangementClass.NEAR_PENCIL:
        return R11(2 * (n - 1), ambient, "near-pencil")
    return R11(ambient, ambient, "general")


def local_resonance_points(arr: Arrangement, rng: random.Random) -> list[tuple[list[Fraction], int]]:
    """Points of the local components of R^1(A), with the H^1 dimension they force.

    An affine point of multiplicity m >= 3 gives {sum_I x_i = 0, x_j = 0 off I}
    and a parallel family of size m - 1 >= 2 gives the span of its e_i;
    either way dim H^1 = m - 2.
    """
    n = arr.n
    out = []
    for p in arr.points:
        if p.multiplicity < 3:
            continue
        lines = [i for i in p.incident if i != 0]
        pt = [Fraction(0)] * n
        while not any(pt):
            for i in lines:
                pt[i - 1] = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
            if 0 not in p.incident:
                pt[lines[-1] - 1] = -sum(pt[i - 1] for i in lines[:-1])
        out.append((pt, p.multiplicity - 2))
    return out


@dataclass
class ResonanceChecks:
    seed: int
    samples: int
    checks: dict = field(default_factory=dict)

    def record(self, name: str, ok: bool) -> None:
        passed, total = self.checks.get(name, (0, 0))
        self.checks[name] = (passed + int(ok), total + 1)

    @property
    def all_passed(self) -> bool:
        return all(p == t for p, t in self.checks.values())


def resonance_checks(arr: Arrangement, samples: int = 5, seed: int = DEFAULT_SEED) -> ResonanceChecks:
    """Sampled containment tests for the resonance of the double."""
    rng = random.Random(seed)
    os_ = os_algebra(arr)
    alg = double(os_)
    block = theta_double(os_)
    th = theta(os_)
    n, b2 = os_.n, os_.b2
    b = beta(os_)
    cls = arrangement_class(arr)
    out = ResonanceChecks(seed, samples)
    out.record("block structure", block.blocks_ok())
    for _ in range(samples):
        pt = random_point(rng, n + b2)
        h1 = h1_dimension(block, pt)
        out.record("matrix rank equals multiplication rank", block.rank_at(pt) == multiplication_rank(alg, pt))
        if cls is not ArrangementClass.NEAR_PENCIL:
            out.record("generic point in R^1_1", h1 >= 1)
        if b >= 1:
            out.record("generic point in R^1_d for d <= beta", h1 >= b)
        y = random_point(rng, b2) if b2 else []
        if b2:
            zy = [Fraction(0)] * n + y
            r = block.rank_at(zy)
            out.record("rank at (0, y) is even", r % 2 == 0)
            drop = n - 1 - block.phi().rank_at(zy)
            if drop >= 1:
                out.record("R_d(Phi) x 0 inside R^1_(d+b2)", resonance_membership(block, zy, drop + b2))
    for a, d in local_resonance_points(arr, rng):
        if b2 == 0:
            continue
        out.record("local component has the expected H^1", complement_h1_dimension(th, a) >= d)
        pt = a + random_point(rng, b2)
        out.record("R^1_d(A) x A2bar inside R^1_(d+beta)", resonance_membership(block, pt, d + b))
    return out


# ---------------------------------------------------------------------------
# formality


@dataclass(frozen=True)
class FormalityReport:
    verdict: str
    reason: str
    tc_hyperplanes: tuple[tuple[int, ...], ...]
    hyperplane_text: tuple[str, ...]
    r11: R11
    subtorus_count: int
    witness: tuple[Fraction, ...] | None
    witness_h1: int | None

    @property
    def formal(self) -> bool:
        return self.verdict == "formal"


def _hyperplane_text(a: Sequence[int]) -> str:
    names = [f"l{i}" for i in range(1, len(a) + 1)]
    return LaurentPoly(len(a), {tuple(int(i == v) for i in range(len(a))): c
                                for v, c in enumerate(a) if c}).to_text(names) + " = 0"


def formality(arr: Arrangement, seed: int = DEFAULT_SEED) -> FormalityReport:
    """Verdict by class, with tangent-cone evidence.

    Each subtorus {t^a = 1} of the first characteristic variety has tangent
    cone {sum a_i l_i = 0}.  For a General arrangement a seeded point off all
    of these hyperplanes is shown to lie in R^1_1, which is everything.
    """
    cls = arrangement_class(arr)
    res = r11(arr)
    graph = build_graph(arr)
    cv = characteristic_variety_v11(graph)
    hyper = tuple(cv.subtori)
    texts = tuple(_hyperplane_text(a) for a in hyper)
    witness = witness_h1 = None
    if cls is ArrangementClass.PENCIL:
        verdict, reason = "formal", "pencil"
    elif cls is ArrangementClass.NEAR_PENCIL:
        verdict, reason = "formal", "near-pencil"
    else:
        verdict, reason = "not_formal", "tangent-cone-mismatch"
        os_ = os_algebra(arr)
        block = theta_double(os_)
        rng = random.Random(seed)
        n = arr.n
        for _ in range(100):
            pt = random_point(rng, n + os_.b2)
            off = all(sum(c * x for c, x in zip(a, pt[:n])) != 0 for a in hyper)
            if off:
                h1 = h1_dimension(block, pt)
                if h1 >= 1:
                    witness, witness_h1 = tuple(pt), h1
                    break
        if witness is None:
            raise RuntimeError("no tangent-cone mismatch witness found for a General arrangement")
    return FormalityReport(verdict, reason, hyper, texts, res, len(cv.subtori), witness, witness_h1)
