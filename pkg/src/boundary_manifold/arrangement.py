"""Line arrangements in the complex projective plane.

Lines are stored as exact rational linear forms.  All combinatorial data
(multiple points, the partition induced by the line at infinity, nbc pairs)
is computed once at construction time and kept on the immutable
:class:`Arrangement` value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence


class ArrangementError(ValueError):
    """Raised for malformed or degenerate arrangement input."""


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ArrangementError(f"not a rational number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ArrangementError(f"not a rational number: {value!r}") from exc
    raise ArrangementError(f"not a rational number: {value!r}")


def _normalize_triple(values: Sequence[Fraction]) -> tuple[Fraction, Fraction, Fraction]:
    for v in values:
        if v != 0:
            return tuple(x / v for x in values)  # type: ignore[return-value]
    raise ArrangementError("zero triple does not define a line or point")


@dataclass(frozen=True, order=True)
class ProjLine:
    """The line a0*x0 + a1*x1 + a2*x2 = 0, scaled so the first nonzero entry is 1."""

    coefficients: tuple[Fraction, Fraction, Fraction]

    @classmethod
    def from_coefficients(cls, coeffs: Iterable) -> "ProjLine":
        vals = [_to_fraction(c) for c in coeffs]
        if len(vals) != 3:
            raise ArrangementError(f"a line needs 3 coefficients, got {len(vals)}")
        return cls(_normalize_triple(vals))

    def contains(self, point: Sequence[Fraction]) -> bool:
        return sum(a * p for a, p in zip(self.coefficients, point)) == 0

    def meet(self, other: "ProjLine") -> tuple[Fraction, Fraction, Fraction]:
        a, b = self.coefficients, other.coefficients
        cross = (
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        )
        return _normalize_triple(cross)

    def to_strings(self) -> list[str]:
        return [str(c) for c in self.coefficients]


@dataclass(frozen=True)
class MultiplePoint:
    point: tuple[Fraction, Fraction, Fraction] | None
    incident: tuple[int, ...]

    @property
    def multiplicity(self) -> int:
        return len(self.incident)


@dataclass(frozen=True)
class DenseEdgeSet:
    lines: tuple[int, ...]
    points: tuple[MultiplePoint, ...]

    @property
    def r(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.lines) + len(self.points)


@dataclass(frozen=True)
class DeconeInfo:
    """Blocks of {1..n} by common point on the line at infinity.

    ``permutation[new]`` is the input index of the line now labelled ``new``.
    """

    partition: tuple[tuple[int, ...], ...]
    permutation: tuple[int, ...]


@dataclass(frozen=True)
class NbcPairs:
    pairs: tuple[tuple[int, int], ...]
    witness: Mapping[tuple[int, int], tuple[int, ...]] = field(compare=False)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def index(self, pair: tuple[int, int]) -> int:
        return self.pairs.index(pair)


class ArrangementClass(str, Enum):
    PENCIL = "Pencil"
    NEAR_PENCIL = "NearPencil"
    GENERAL = "General"


@dataclass(frozen=True)
class Arrangement:
    """Ordered lines 0..n; line 0 is the line at infinity.

    ``lines`` is ``None`` for arrangements given only by their combinatorics.
    ``permutation`` maps current labels to the labels used in the input.
    """

    n_lines: int
    points: tuple[MultiplePoint, ...]
    lines: tuple[ProjLine, ...] | None = None
    permutation: tuple[int, ...] = ()
    name: str | None = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return self.n_lines - 1

    @property
    def is_combinatorial(self) -> bool:
        return self.lines is None

    def point_of(self, i: int, j: int) -> MultiplePoint:
        return self._pair_index[(min(i, j), max(i, j))]

    @property
    def _pair_index(self) -> dict[tuple[int, int], MultiplePoint]:
        cache = self.__dict__.get("_pair_cache")
        if cache is None:
            cache = {}
            for p in self.points:
                for a, b in combinations(p.incident, 2):
                    cache[(a, b)] = p
            object.__setattr__(self, "_pair_cache", cache)
        return cache

    def points_on(self, i: int) -> list[MultiplePoint]:
        return [p for p in self.points if i in p.incident]

    def to_document(self) -> dict:
        doc: dict = {"infinity_index": 0}
        if self.lines is not None:
            doc["lines"] = [ln.to_strings() for ln in self.lines]
        else:
            doc["combinatorial"] = {
                "n_lines": self.n_lines,
                "multiple_points": [list(p.incident) for p in self.points if p.multiplicity >= 3],
            }
        return doc


# ---------------------------------------------------------------------------
# construction


def _points_from_lines(lines: Sequence[ProjLine]) -> list[MultiplePoint]:
    found: dict[tuple[Fraction, ...], set[int]] = {}
    for i, j in combinations(range(len(lines)), 2):
        pt = lines[i].meet(lines[j])
        found.setdefault(pt, set()).update((i, j))
    return [MultiplePoint(pt, tuple(sorted(inc))) for pt, inc in found.items()]


def _points_from_sets(n_lines: int, sets: Iterable[Iterable[int]]) -> list[MultiplePoint]:
    seen: set[tuple[int, int]] = set()
    out: list[MultiplePoint] = []
    for s in sets:
        inc = tuple(sorted(set(int(i) for i in s)))
        if len(inc) < 2:
            raise ArrangementError(f"multiple point {list(inc)} has fewer than 2 lines")
        if inc[0] < 0 or inc[-1] >= n_lines:
            raise ArrangementError(f"multiple point {list(inc)} uses a line index out of range")
        for pair in combinations(inc, 2):
            if pair in seen:
                raise ArrangementError(f"lines {pair} meet in more than one listed point")
            seen.add(pair)
        out.append(MultiplePoint(None, inc))
    for pair in combinations(range(n_lines), 2):
        if pair not in seen:
            out.append(MultiplePoint(None, pair))
    return out


def _relabel(points: Iterable[MultiplePoint], new_of_old: Mapping[int, int]) -> tuple[MultiplePoint, ...]:
    pts = [MultiplePoint(p.point, tuple(sorted(new_of_old[i] for i in p.incident))) for p in points]
    return tuple(sorted(pts, key=lambda p: p.incident))


def _normal_order(n_lines: int, points: Sequence[MultiplePoint]) -> list[int]:
    """Current labels listed in normalized order (0 first, families, then transverse)."""
    blocks = []
    for p in points:
        if 0 in p.incident:
            blocks.append(tuple(i for i in p.incident if i != 0))
    families = sorted((b for b in blocks if len(b) >= 2), key=min)
    singles = sorted(b[0] for b in blocks if len(b) == 1)
    return [0] + [i for b in families for i in b] + singles


def _assemble(n_lines, points, lines, permutation, name, normalize=True) -> Arrangement:
    if n_lines < 2:
        raise ArrangementError("an arrangement needs at least 2 lines")
    if normalize:
        order = _normal_order(n_lines, points)
        new_of_old = {old: new for new, old in enumerate(order)}
        points = _relabel(points, new_of_old)
        if lines is not None:
            lines = tuple(lines[old] for old in order)
        permutation = tuple(permutation[old] for old in order)
    else:
        points = tuple(sorted(points, key=lambda p: p.incident))
    return Arrangement(n_lines, points, None if lines is None else tuple(lines), tuple(permutation), name)


def _move_infinity_first(n_lines: int, infinity_index: int) -> list[int]:
    if not 0 <= infinity_index < n_lines:
        raise ArrangementError(f"infinity_index {infinity_index} out of range")
    return [infinity_index] + [i for i in range(n_lines) if i != infinity_index]


def from_lines(coeffs: Sequence[Iterable], infinity_index: int = 0, name: str | None = None,
               normalize: bool = True) -> Arrangement:
    lines = [ProjLine.from_coefficients(c) for c in coeffs]
    if len(lines) < 2:
        raise ArrangementError("an arrangement needs at least 2 lines")
    if len(set(lines)) != len(lines):
        dup = [i for i, ln in enumerate(lines) if lines.index(ln) != i]
        raise ArrangementError(f"duplicate line at input index {dup[0]}")
    order = _move_infinity_first(len(lines), infinity_index)
    lines = [lines[i] for i in order]
    return _assemble(len(lines), _points_from_lines(lines), lines, order, name, normalize)


def from_points(n_lines: int, multiple_points: Iterable[Iterable[int]], infinity_index: int = 0,
                name: str | None = None, normalize: bool = True) -> Arrangement:
    if n_lines < 2:
        raise ArrangementError("an arrangement needs at least 2 lines")
    pts = _points_from_sets(n_lines, multiple_points)
    order = _move_infinity_first(n_lines, infinity_index)
    new_of_old = {old: new for new, old in enumerate(order)}
    return _assemble(n_lines, _relabel(pts, new_of_old), None, order, name, normalize)


def parse_arrangement(doc) -> Arrangement:
    """Build an arrangement from a JSON-style document.

    Two shapes are accepted::

        {"lines": [["1", "0", "0"], ["1", "1", "0"], ...], "infinity_index": 0}
        {"combinatorial": {"n_lines": 6, "multiple_points": [[0, 1, 2], [3, 4, 5]]}}
    """
    if not isinstance(doc, Mapping):
        raise ArrangementError("arrangement document must be an object")
    inf = doc.get("infinity_index", 0)
    if not isinstance(inf, int) or isinstance(inf, bool):
        raise ArrangementError("infinity_index must be an integer")
    name = doc.get("name")
    if "lines" in doc:
        raw = doc["lines"]
        if not isinstance(raw, list) or not all(isinstance(r, (list, tuple)) for r in raw):
            raise ArrangementError("'lines' must be a list of coefficient triples")
        return from_lines(raw, inf, name)
    if "combinatorial" in doc:
        comb = doc["combinatorial"]
        if not isinstance(comb, Mapping) or "n_lines" not in comb:
            raise ArrangementError("'combinatorial' needs 'n_lines' and 'multiple_points'")
        n_lines = comb["n_lines"]
        if not isinstance(n_lines, int) or isinstance(n_lines, bool):
            raise ArrangementError("n_lines must be an integer")
        return from_points(n_lines, comb.get("multiple_points", []), inf, name)
    raise ArrangementError("document needs a 'lines' or 'combinatorial' entry")


# ---------------------------------------------------------------------------
# combinatorial queries


def intersection_data(arr: Arrangement) -> list[MultiplePoint]:
    return list(arr.points)


def dense_edges(arr: Arrangement) -> DenseEdgeSet:
    pts = tuple(p for p in arr.points if p.multiplicity >= 3)
    return DenseEdgeSet(tuple(range(arr.n_lines)), pts)


def decone_partition(arr: Arrangement) -> tuple[tuple[int, ...], ...]:
    blocks = [tuple(i for i in p.incident if i != 0) for p in arr.points if 0 in p.incident]
    return tuple(sorted(blocks, key=lambda b: (len(b) == 1, b[0])))


def normalize_ordering(arr: Arrangement) -> tuple[Arrangement, DeconeInfo]:
    """Relabel so parallel families are consecutive and transverse lines come last.

    The returned permutation composes with any earlier relabelling, so it
    always refers back to the original input indices.
    """
    out = _assemble(arr.n_lines, arr.points, arr.lines, arr.permutation or tuple(range(arr.n_lines)),
                    arr.name, normalize=True)
    return out, DeconeInfo(decone_partition(out), out.permutation)


def is_normalized(arr: Arrangement) -> bool:
    return _normal_order(arr.n_lines, arr.points) == list(range(arr.n_lines))


def nbc2(arr: Arrangement) -> NbcPairs:
    pairs = []
    witness = {}
    for p in arr.points:
        if 0 in p.incident:
            continue
        lo = p.incident[0]
        for k in p.incident[1:]:
            pairs.append((lo, k))
            witness[(lo, k)] = p.incident
    pairs.sort()
    return NbcPairs(tuple(pairs), witness)


def nbc2_bruteforce(arr: Arrangement) -> list[tuple[int, int]]:
    """Broken-circuit test pair by pair, straight from the definition."""
    out = []
    for i, k in combinations(range(1, arr.n_lines), 2):
        p = arr.point_of(i, k)
        if 0 in p.incident:
            continue
        if any(j < i for j in p.incident):
            continue
        out.append((i, k))
    return out


def _poly_div_linear(coeffs: list[int]) -> list[int]:
    """Divide sum c_k t^k by (1 + t); coefficients lowest degree first."""
    out = []
    carry = 0
    for c in coeffs[:-1]:
        q = c - carry
        out.append(q)
        carry = q
    if coeffs[-1] != carry:
        raise ArithmeticError("Poincare polynomial of the cone is not divisible by 1 + t")
    return out


def betti_numbers_mobius(arr: Arrangement) -> tuple[int, int, int]:
    """Betti numbers of the complement from the Moebius function of the lattice.

    Works on the cone in C^3: flats are recorded as the set of planes
    containing them; the Poincare polynomial of the cone is divided by 1 + t.
    """
    everything = frozenset(range(arr.n_lines))
    flats: dict[frozenset, int] = {frozenset(): 0}
    for i in range(arr.n_lines):
        flats[frozenset([i])] = 1
    for p in arr.points:
        flats.setdefault(frozenset(p.incident), 2)
    if everything not in flats:
        flats[everything] = 3
    order = sorted(flats, key=lambda f: (flats[f], sorted(f)))
    mu: dict[frozenset, int] = {}
    for x in order:
        if not x:
            mu[x] = 1
            continue
        mu[x] = -sum(mu[y] for y in mu if y < x)
    top = max(flats.values())
    poin = [0] * (top + 1)
    for x, rk in flats.items():
        poin[rk] += mu[x] * (-1) ** rk
    dec = _poly_div_linear(poin)
    dec += [0] * (3 - len(dec))
    return dec[0], dec[1], dec[2]


def arrangement_class(arr: Arrangement) -> ArrangementClass:
    big = max(p.multiplicity for p in arr.points)
    if big == arr.n_lines:
        return ArrangementClass.PENCIL
    if big == arr.n_lines - 1:
        return ArrangementClass.NEAR_PENCIL
    return ArrangementClass.GENERAL


def is_aspherical(arr: Arrangement) -> bool:
    return arrangement_class(arr) is not ArrangementClass.PENCIL


def covering_pair_predicate(arr: Arrangement) -> bool:
    """True iff two points of multiplicity >= 3 together contain every line."""
    big = [set(p.incident) for p in arr.points if p.multiplicity >= 3]
    return any(len(a | b) == arr.n_lines for a, b in combinations(big, 2))
