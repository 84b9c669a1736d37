"""Alexander polynomials read off the weighted graph.

Each vertex v of the graph contributes (t_v - 1)^(m_v - 2), where t_v is the
image of a meridian of the corresponding dense edge and m_v the vertex
degree.  The twisted version replaces t_v - 1 by the characteristic
polynomial of the image of that meridian.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .arrangement import Arrangement, ArrangementClass, arrangement_class, covering_pair_predicate, dense_edges
from .graph import GraphVertex, WeightedGraph
from .laurent import QI, FactoredLaurent, GaussianRational, LaurentPoly, Q, canonical_binomial, char_poly_in_monomial, matrix_field
from .presentation import GenId, GroupPresentation, evaluate_word, gen, meridian_product, parse_generator, verify_representation, z_word, X


class RepresentationError(ValueError):
    pass


def vertex_monomial(vertex: GraphVertex, n: int) -> tuple[int, ...]:
    """Exponent vector of t_v in t_1..t_n, with t_0 = (t_1...t_n)^-1."""
    e = [0] * n
    for i in vertex.lines:
        if i == 0:
            e = [x - 1 for x in e]
        else:
            e[i - 1] += 1
    return tuple(e)


def vertex_factor(m: int, exps: Sequence[int], field: str = Q) -> FactoredLaurent:
    if m < 2:
        raise ValueError(f"vertex multiplicity {m} is below 2")
    n = len(exps)
    if m == 2:
        return FactoredLaurent.one(n, field)
    return FactoredLaurent(n, [(LaurentPoly.binomial(exps, field), m - 2)], field=field)


def _n_of(graph: WeightedGraph) -> int:
    return sum(1 for v in graph.vertices if not v.is_point) - 1


def is_pencil_graph(graph: WeightedGraph) -> bool:
    n_lines = _n_of(graph) + 1
    if n_lines == 2:
        return True
    return any(v.is_point and len(v.lines) == n_lines for v in graph.vertices)


def pencil_note(graph: WeightedGraph) -> str | None:
    if not is_pencil_graph(graph):
        return None
    n = _n_of(graph)
    if n == 1:
        return "pencil of 2 lines: the group is Z and the Alexander polynomial is 1"
    return f"pencil: the group is the free group F_{n}, so the Alexander polynomial is 0"


def _check_degrees(graph: WeightedGraph) -> None:
    low = [v.label for v, m in zip(graph.vertices, graph.multiplicities) if m < 2]
    if low:
        raise RuntimeError(f"vertices of degree below 2 in an essential arrangement: {', '.join(low)}")


def alexander_polynomial(graph: WeightedGraph) -> FactoredLaurent:
    n = _n_of(graph)
    if is_pencil_graph(graph):
        return FactoredLaurent.one(n) if n == 1 else FactoredLaurent.zero(n)
    _check_degrees(graph)
    out = FactoredLaurent.one(n)
    for v, m in zip(graph.vertices, graph.multiplicities):
        out = out * vertex_factor(m, vertex_monomial(v, n))
    return out


# ---------------------------------------------------------------------------
# twisted polynomials


@dataclass(frozen=True)
class Representation:
    matrices: Mapping[GenId, list]
    dimension: int
    field: str


def make_representation(matrices: Mapping[GenId, list]) -> Representation:
    if not matrices:
        raise RepresentationError("empty representation")
    sizes = {len(m) for m in matrices.values()}
    if len(sizes) != 1:
        raise RepresentationError("matrices of different sizes")
    k = sizes.pop()
    fields = {matrix_field(m) for m in matrices.values()}
    field = QI if QI in fields else Q
    return Representation(dict(matrices), k, field)


def _parse_scalar(x):
    if isinstance(x, dict):
        return GaussianRational(Fraction(str(x.get("re", 0))), Fraction(str(x.get("im", 0))))
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return GaussianRational(Fraction(str(x[0])), Fraction(str(x[1])))
    return Fraction(str(x))


def parse_representation(doc: Mapping, pres: GroupPresentation) -> Representation:
    """Document: {"dimension": k, "generators": {"x1": [[...]], ...}}; omitted generators map to 1."""
    gens = doc.get("generators", doc)
    mats = {}
    for label, m in gens.items():
        if label == "dimension":
            continue
        mats[parse_generator(label)] = [[_parse_scalar(x) for x in row] for row in m]
    if not mats:
        raise RepresentationError("representation assigns no generator")
    k = doc.get("dimension", len(next(iter(mats.values()))))
    for g in pres.generators:
        if g not in mats:
            mats[g] = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    unknown = [g for g in mats if g not in pres.generators]
    if unknown:
        raise RepresentationError(f"generator {unknown[0].label} is not in the presentation")
    return make_representation(mats)


def diagonal_representation(pres: GroupPresentation, lam=2, k: int = 2) -> Representation:
    """x_j -> diag(lam, lam^-1, lam, ...), gamma -> identity.  Abelian image, so always a representation."""
    lam = Fraction(lam)
    diag = [lam if i % 2 == 0 else 1 / lam for i in range(k)]
    mats = {}
    for g in pres.generators:
        if g.kind == "x":
            mats[g] = [[diag[i] if i == j else Fraction(0) for j in range(k)] for i in range(k)]
        else:
            mats[g] = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    return make_representation(mats)


def identity_representation(pres: GroupPresentation, k: int = 1) -> Representation:
    one = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    return make_representation({g: one for g in pres.generators})


def meridian_word(arr: Arrangement, vertex: GraphVertex):
    if vertex.is_point:
        return z_word(arr, vertex.lines)
    j = vertex.lines[0]
    return meridian_product(arr.n).inverse() if j == 0 else gen(X(j))


def twisted_alexander(arr: Arrangement, graph: WeightedGraph, pres: GroupPresentation,
                      rep: Representation) -> FactoredLaurent:
    if not verify_representation(pres, rep.matrices):
        raise RepresentationError("the matrices do not satisfy the relators")
    n = arr.n
    if is_pencil_graph(graph):
        if n == 1:
            return FactoredLaurent.one(n, rep.field)
        return FactoredLaurent.zero(n, rep.field)
    _check_degrees(graph)
    factors = []
    for v, m in zip(graph.vertices, graph.multiplicities):
        if m == 2:
            continue
        a = evaluate_word(meridian_word(arr, v), rep.matrices)
        p = char_poly_in_monomial(a, vertex_monomial(v, n))
        if p.field != rep.field:
            p = LaurentPoly(p.nvars, p.terms, rep.field)
        factors.append((p, m - 2))
    return FactoredLaurent(n, factors, field=rep.field)


# ---------------------------------------------------------------------------
# factor counting and the first characteristic variety


def distinct_factor_count(delta: FactoredLaurent) -> int:
    return len(delta.factors)


def predicted_factor_count(arr: Arrangement) -> int:
    size = len(dense_edges(arr))
    return size - 1 if covering_pair_predicate(arr) else size


def factor_count_contract_applies(arr: Arrangement) -> bool:
    return arrangement_class(arr) is ArrangementClass.GENERAL


@dataclass(frozen=True)
class CharacteristicVariety:
    """Union of the subtori {t^a = 1}; exponents canonically oriented."""

    nvars: int
    subtori: tuple[tuple[int, ...], ...]
    vertices: tuple[tuple[str, ...], ...]  # vertex labels giving each subtorus

    def equations(self) -> list[str]:
        out = []
        for a in self.subtori:
            out.append(LaurentPoly.binomial(a).to_text() + " = 0")
        return out

    def contains(self, point: Sequence) -> bool:
        return any(LaurentPoly.monomial(a).evaluate(point[: self.nvars]) == 1 for a in self.subtori)


def characteristic_variety_v11(graph: WeightedGraph) -> CharacteristicVariety:
    n = _n_of(graph)
    seen: dict[tuple[int, ...], list[str]] = {}
    for v, m in zip(graph.vertices, graph.multiplicities):
        if m < 3:
            continue
        e = vertex_monomial(v, n)
        if not any(e):
            continue
        seen.setdefault(canonical_binomial(e), []).append(v.label)
    keys = sorted(seen)
    return CharacteristicVariety(n, tuple(keys), tuple(tuple(seen[k]) for k in keys))
