"""Presentations of the fundamental group and their Fox calculus.

Two presentations are built: the one read off the weighted graph (one
generator per vertex and per cycle edge) and the minimal commutator-relators
presentation on x_1..x_n and one generator per nbc pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .arrangement import Arrangement, nbc2
from .graph import GraphVertex, WeightedGraph, build_graph
from .laurent import LaurentPoly, canonicalize, divide_exact, gcd, unit_equivalent
from .linalg import identity, inverse, mat_mul, rank, smith_diagonal
from .minors import determinant


@dataclass(frozen=True, order=True)
class GenId:
    kind: str  # "x", "g", "x0", "xp"
    index: tuple[int, ...]

    @property
    def label(self) -> str:
        if self.kind == "x":
            return f"x{self.index[0]}"
        if self.kind == "g":
            return f"g{self.index[0]}_{self.index[1]}"
        if self.kind == "x0":
            return "x0"
        return "xp" + "_".join(str(i) for i in self.index)


def X(j: int) -> GenId:
    return GenId("x", (j,))


def Gamma(i: int, k: int) -> GenId:
    return GenId("g", (i, k))


X0 = GenId("x0", ())


def XP(points: Sequence[int]) -> GenId:
    return GenId("xp", tuple(points))


Letter = tuple[GenId, int]


class Word(tuple):
    """Freely reduced word; letters are (generator, +1 or -1)."""

    def __new__(cls, letters: Iterable[Letter] = ()):
        out: list[Letter] = []
        for g, e in letters:
            if e not in (1, -1):
                raise ValueError("letter exponents must be +1 or -1")
            if out and out[-1][0] == g and out[-1][1] == -e:
                out.pop()
            else:
                out.append((g, e))
        return super().__new__(cls, out)

    def __mul__(self, other: "Word") -> "Word":
        return Word(tuple(self) + tuple(other))

    def inverse(self) -> "Word":
        return Word((g, -e) for g, e in reversed(self))

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        out = Word()
        for _ in range(abs(k)):
            out = out * base
        return out

    def exponent_sums(self) -> dict[GenId, int]:
        out: dict[GenId, int] = {}
        for g, e in self:
            out[g] = out.get(g, 0) + e
        return {g: v for g, v in out.items() if v}

    def to_text(self) -> str:
        if not self:
            return "1"
        return "*".join(g.label if e > 0 else g.label.upper() for g, e in self)


def gen(g: GenId) -> Word:
    return Word([(g, 1)])


def conj(a: Word, b: Word) -> Word:
    """a^b = b^-1 a b."""
    return b.inverse() * a * b


def comm(a: Word, b: Word) -> Word:
    """[a, b] = a b a^-1 b^-1."""
    return a * b * a.inverse() * b.inverse()


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[GenId, ...]
    relators: tuple[tuple[str, Word], ...]

    def words(self) -> list[Word]:
        return [w for _, w in self.relators]

    def to_text(self) -> str:
        lines = ["generators: " + " ".join(g.label for g in self.generators)]
        for label, w in self.relators:
            lines.append(f"{label}: {w.to_text()}")
        return "\n".join(lines) + "\n"

    def exponent_matrix(self) -> list[list[int]]:
        pos = {g: k for k, g in enumerate(self.generators)}
        mat = []
        for _, w in self.relators:
            row = [0] * len(self.generators)
            for g, v in w.exponent_sums().items():
                row[pos[g]] = v
            mat.append(row)
        return mat

    def is_commutator_relators(self) -> bool:
        return all(not w.exponent_sums() for _, w in self.relators)

    def abelianization(self) -> tuple[int, list[int]]:
        """(free rank, torsion coefficients > 1) of the abelianized group."""
        diag = smith_diagonal(self.exponent_matrix())
        return len(self.generators) - len(diag), [d for d in diag if d > 1]


# ---------------------------------------------------------------------------
# the presentation read off the graph


def _vertex_gen(v: GraphVertex) -> GenId:
    if v.is_point:
        return XP(v.lines)
    return X0 if v.lines[0] == 0 else X(v.lines[0])


def raw_presentation(graph: WeightedGraph) -> GroupPresentation:
    vgens = [_vertex_gen(v) for v in graph.vertices]
    cycle_gen = {k: Gamma(*graph.edges[k].nbc) for k in graph.cycle_edges}
    # u[(i, j)] is the conjugating word, for i != j adjacent
    u: dict[tuple[int, int], Word] = {}
    for k, e in enumerate(graph.edges):
        if e.in_tree:
            u[(e.source, e.target)] = Word()
            u[(e.target, e.source)] = Word()
        else:
            g = gen(cycle_gen[k])
            u[(e.source, e.target)] = g
            u[(e.target, e.source)] = g.inverse()
    rels: list[tuple[str, Word]] = []
    for e in graph.edges:
        a, b = e.source, e.target
        w = comm(gen(vgens[a]), conj(gen(vgens[b]), u[(a, b)]))
        rels.append((f"C[{graph.vertices[a].label},{graph.vertices[b].label}]", w))
    for i, v in enumerate(graph.vertices):
        w = Word()
        for j in range(len(graph.vertices)):
            if j == i:
                w = w * gen(vgens[i]) ** graph.weights[i]
            elif (i, j) in u:
                w = w * conj(gen(vgens[j]), u[(i, j)])
        rels.append((f"R[{v.label}]", w))
    gens = tuple(vgens) + tuple(cycle_gen[k] for k in graph.cycle_edges)
    return GroupPresentation(gens, tuple(rels))


# ---------------------------------------------------------------------------
# the minimal presentation


def meridian_product(n: int) -> Word:
    return Word((X(j), 1) for j in range(1, n + 1))


def z_word(arr: Arrangement, incident: Sequence[int]) -> Word:
    """Meridian word of a multiple point with the given incident lines."""
    inc = sorted(incident)
    if inc[0] == 0:
        w = meridian_product(arr.n).inverse()
        for j in inc[1:]:
            w = w * gen(X(j))
        return w
    i = inc[0]
    w = gen(X(i))
    for j in inc[1:]:
        w = w * conj(gen(X(j)), gen(Gamma(i, j)))
    return w


def zeta_word(arr: Arrangement, j: int) -> Word:
    p = arr.point_of(0, j)
    return Word((X(i), 1) for i in p.incident if i != 0)


def minimal_presentation(arr: Arrangement, graph: WeightedGraph | None = None) -> GroupPresentation:
    n = arr.n
    pairs = nbc2(arr)
    dense = [p for p in arr.points if p.multiplicity >= 3 and 0 not in p.incident]
    rels: list[tuple[str, Word]] = []
    for j in range(1, n + 1):
        xj = gen(X(j))
        w = zeta_word(arr, j)
        for p in dense:
            if j in p.incident and j != p.incident[0]:
                g = gen(Gamma(p.incident[0], j))
                w = w * g * z_word(arr, p.incident) * g.inverse() * xj.inverse()
        for p in dense:
            if j == p.incident[0]:
                w = w * xj.inverse() * z_word(arr, p.incident)
        for i in range(1, j):
            if arr.point_of(i, j).multiplicity == 2:
                w = w * conj(gen(X(i)), gen(Gamma(i, j)).inverse())
        for k in range(j + 1, n + 1):
            if arr.point_of(j, k).multiplicity == 2:
                w = w * conj(gen(X(k)), gen(Gamma(j, k)))
        w = w * meridian_product(n).inverse()
        rels.append((f"R{j}", w))
    for i, k in pairs:
        z = z_word(arr, pairs.witness[(i, k)])
        rels.append((f"R{i}_{k}", comm(z, conj(gen(X(k)), gen(Gamma(i, k))))))
    gens = tuple(X(j) for j in range(1, n + 1)) + tuple(Gamma(i, k) for i, k in pairs)
    return GroupPresentation(gens, tuple(rels))


# ---------------------------------------------------------------------------
# Fox calculus


@dataclass(frozen=True)
class AlexanderMatrix:
    """Abelianized Fox Jacobian; variables t_1..t_n then s for each gamma."""

    entries: tuple[tuple[LaurentPoly, ...], ...]
    row_labels: tuple[str, ...]
    generators: tuple[GenId, ...]
    images: tuple[tuple[int, ...], ...]  # exponent vector of each generator
    n_t: int

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def nvars(self) -> int:
        return len(self.images[0]) if self.images else 0

    def variable_names(self) -> list[str]:
        names = [f"t{i + 1}" for i in range(self.n_t)]
        names += ["s" + g.label[1:] for g in self.generators if g.kind == "g"]
        return names

    def specialized(self) -> list[list[LaurentPoly]]:
        """Entries with every gamma image set to 1."""
        keep = list(range(self.n_t))
        return [[e.project(keep) for e in row] for row in self.entries]

    def fox_identity_holds(self) -> bool:
        col = [LaurentPoly.monomial(img) - 1 for img in self.images]
        for row in self.entries:
            total = LaurentPoly.zero(self.nvars)
            for e, c in zip(row, col):
                total = total + e * c
            if not total.is_zero():
                return False
        return True


def abelianization_images(generators: Sequence[GenId], n: int) -> dict[GenId, tuple[int, ...]]:
    nv = n + sum(1 for g in generators if g.kind == "g")
    out = {}
    s = n
    for g in generators:
        e = [0] * nv
        if g.kind == "x":
            e[g.index[0] - 1] = 1
        elif g.kind == "g":
            e[s] = 1
            s += 1
        else:
            raise ValueError("only minimal presentations are abelianized here")
        out[g] = tuple(e)
    return out


def fox_row(word: Word, generators: Sequence[GenId], images: Mapping[GenId, tuple[int, ...]]) -> list[LaurentPoly]:
    nv = len(next(iter(images.values())))
    acc = {g: {} for g in generators}
    prefix = [0] * nv
    for g, e in word:
        img = images[g]
        if e > 0:
            key = tuple(prefix)
            acc[g][key] = acc[g].get(key, 0) + 1
            prefix = [a + b for a, b in zip(prefix, img)]
        else:
            prefix = [a - b for a, b in zip(prefix, img)]
            key = tuple(prefix)
            acc[g][key] = acc[g].get(key, 0) - 1
    return [LaurentPoly(nv, acc[g]) for g in generators]


def fox_jacobian(pres: GroupPresentation) -> AlexanderMatrix:
    n = sum(1 for g in pres.generators if g.kind == "x")
    images = abelianization_images(pres.generators, n)
    rows = tuple(tuple(fox_row(w, pres.generators, images)) for _, w in pres.relators)
    return AlexanderMatrix(rows, tuple(lbl for lbl, _ in pres.relators), pres.generators,
                           tuple(images[g] for g in pres.generators), n)


def rank_at(matrix: AlexanderMatrix | Sequence[Sequence[LaurentPoly]], point: Sequence) -> int:
    """Exact rank of the matrix evaluated at a point of the torus."""
    if any(x == 0 for x in point):
        raise ValueError("characters of the torus have nonzero coordinates")
    entries = matrix.entries if isinstance(matrix, AlexanderMatrix) else matrix
    return rank([[e.evaluate(point) for e in row] for row in entries])


# ---------------------------------------------------------------------------
# gcd of codimension-one minors


@dataclass(frozen=True)
class OracleResult:
    """gcd of the (N-1)-minors of the specialized Alexander matrix."""

    value: LaurentPoly  # canonical form; the zero polynomial if every minor vanishes
    method: str  # "exhaustive" or "adjugate"
    minors: int  # number of determinants evaluated
    diagnostic: str | None = None

    @property
    def is_zero(self) -> bool:
        return self.value.is_zero()

    def agrees_with(self, expected) -> bool:
        other = expected.expand() if hasattr(expected, "expand") else expected
        return unit_equivalent(self.value, other)


def _delete(matrix, row: int, col: int):
    return [[e for c, e in enumerate(r) if c != col] for k, r in enumerate(matrix) if k != row]


def _accumulate(g: LaurentPoly | None, p: LaurentPoly) -> LaurentPoly | None:
    if p.is_zero():
        return g
    if g is None:
        return canonicalize(p)[1]
    if divide_exact(p, g) is not None:
        return g
    return gcd(g, p)


def alexander_gcd_oracle(pres: GroupPresentation, exhaustive: bool | None = None) -> OracleResult:
    """gcd of all codimension-one minors of the Fox matrix with gamma images set to 1.

    The default route uses the identity J v = 0 with v_j = t_j - 1 on the x
    columns and 0 on the gamma columns.  It forces every cofactor in column j
    to equal c_i (t_j - 1) up to sign, so the gcd over all minors is
    gcd(c_i) * gcd_j(t_j - 1) and only one column of cofactors is needed.
    ``exhaustive=True`` evaluates all N^2 minors instead; by default that
    happens for N <= 6.
    """
    am = fox_jacobian(pres)
    mat = am.specialized()
    size = am.size
    nt = am.n_t
    if size == 1:
        return OracleResult(LaurentPoly.constant(nt, 1), "exhaustive", 0)
    if exhaustive is None:
        exhaustive = size <= 6
    g = None
    count = 0
    if exhaustive:
        for i in range(size):
            for j in range(size):
                g = _accumulate(g, determinant(_delete(mat, i, j)))
                count += 1
        method = "exhaustive"
    else:
        v = [LaurentPoly.monomial(img[:nt]) - 1 for img in am.images]
        for row in mat:
            total = LaurentPoly.zero(nt)
            for e, c in zip(row, v):
                total = total + e * c
            if not total.is_zero():
                raise RuntimeError("Fox identity fails on the specialized matrix")
        xcols = [c for c, gid in enumerate(am.generators) if gid.kind == "x"]
        # the x column whose deletion leaves the sparsest matrix
        col = max(xcols, key=lambda c: (sum(not r[c].is_zero() for r in mat), -c))
        for i in range(size):
            d = determinant(_delete(mat, i, col))
            count += 1
            if d.is_zero():
                continue
            q = divide_exact(d, v[col])
            if q is None:
                raise RuntimeError("cofactor is not divisible by its column weight")
            g = _accumulate(g, q)
        if g is not None:
            tg = None
            for c in xcols:
                tg = _accumulate(tg, v[c])
            g = canonicalize(g * tg)[1]
        method = "adjugate"
    if g is None:
        return OracleResult(LaurentPoly.zero(nt), method, count, "all codimension-one minors vanish")
    return OracleResult(g, method, count)


# ---------------------------------------------------------------------------
# representations


def evaluate_word(word: Word, rep: Mapping[GenId, list], inverses: Mapping[GenId, list] | None = None):
    k = len(next(iter(rep.values())))
    inverses = inverses or {g: inverse(m) for g, m in rep.items()}
    out = identity(k)
    for g, e in word:
        out = mat_mul(out, rep[g] if e > 0 else inverses[g])
    return out


def verify_representation(pres: GroupPresentation, rep: Mapping[GenId, list]) -> bool:
    missing = [g for g in pres.generators if g not in rep]
    if missing:
        raise ValueError(f"representation does not assign {missing[0].label}")
    sizes = {len(m) for m in rep.values()}
    if len(sizes) != 1 or any(len(row) != len(m) for m in rep.values() for row in m):
        raise ValueError("representation matrices must be square of a common size")
    k = sizes.pop()
    for g in pres.generators:
        if rank(rep[g]) != k:
            raise ValueError(f"matrix for {g.label} is not invertible")
    inverses = {g: inverse(m) for g, m in rep.items()}
    one = identity(k)
    return all(evaluate_word(w, rep, inverses) == one for _, w in pres.relators)


def parse_generator(label: str) -> GenId:
    label = label.strip()
    if label.startswith("g") and "_" in label:
        i, k = label[1:].split("_")
        return Gamma(int(i), int(k))
    if label.startswith("xp"):
        return XP([int(x) for x in label[2:].split("_")])
    if label == "x0":
        return X0
    if label.startswith("x"):
        return X(int(label[1:]))
    raise ValueError(f"unknown generator label {label!r}")


def presentations_for(arr: Arrangement):
    graph = build_graph(arr)
    return graph, raw_presentation(graph), minimal_presentation(arr, graph)
