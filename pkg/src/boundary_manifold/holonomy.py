"""Holonomy Lie algebras and their graded ranks.

Lie elements are stored inside the free associative algebra as
{word: integer coefficient}, words being tuples of generator indices.  The
standard bracketing P_w of a Lyndon word w expands as w plus strictly larger
words, which gives a triangular rewriting into the Lyndon basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import gcd
from typing import Iterable, Mapping, Sequence

from .arrangement import Arrangement, nbc2
from .cohomology import OSAlgebra, os_algebra

Element = dict  # word tuple -> int

DEFAULT_CAP = 10 ** 9



# ---------------------------------------------------------------------------
# free Lie algebra plumbing


def mobius(k: int) -> int:
    result, d, m = 1, 2, k
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                return 0
            result = -result
        d += 1
    if m > 1:
        result = -result
    return result


def witt(m: int, k: int) -> int:
    """Dimension of the degree-k piece of the free Lie algebra on m generators."""
    if k < 1:
        raise ValueError("degree must be positive")
    total = sum(mobius(d) * m ** (k // d) for d in range(1, k + 1) if k % d == 0)
    return total // k


def lyndon_words(m: int, k: int) -> list[tuple[int, ...]]:
    """Lyndon words of length exactly k on letters 0..m-1, in lex order (Duval)."""
    out = []
    if m == 0:
        return out
    w = [-1]
    while w:
        w[-1] += 1
        if len(w) == k:
            out.append(tuple(w))
        n = len(w)
        while len(w) < k:
            w.append(w[len(w) - n])
        while w and w[-1] == m - 1:
            w.pop()
    return out


def _is_lyndon(w: Sequence[int]) -> bool:
    return all(tuple(w[i:]) + tuple(w[:i]) > tuple(w) for i in range(1, len(w)))


def standard_factorization(w: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """w = uv with v the longest proper Lyndon suffix."""
    for i in range(1, len(w)):
        if _is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ValueError("a single letter has no factorization")


def _add(acc: Element, other: Mapping, scale: int = 1) -> None:
    for w, c in other.items():
        v = acc.get(w, 0) + scale * c
        if v:
            acc[w] = v
        else:
            acc.pop(w, None)


def bracket(a: Mapping, b: Mapping) -> Element:
    out: Element = {}
    for u, x in a.items():
        for v, y in b.items():
            for w, s in ((u + v, 1), (v + u, -1)):
                c = out.get(w, 0) + s * x * y
                if c:
                    out[w] = c
                else:
                    out.pop(w, None)
    return out


@lru_cache(maxsize=None)
def _lyndon_bracket_cached(w: tuple[int, ...]) -> tuple:
    if len(w) == 1:
        return ((w, 1),)
    u, v = standard_factorization(w)
    return tuple(sorted(bracket(dict(_lyndon_bracket_cached(u)), dict(_lyndon_bracket_cached(v))).items()))


def lyndon_bracket(w: tuple[int, ...]) -> Element:
    """Tensor expansion of the standard bracketing of a Lyndon word."""
    return dict(_lyndon_bracket_cached(tuple(w)))


def to_lyndon(p: Mapping) -> dict[tuple[int, ...], int]:
    """Coordinates of a Lie element in the Lyndon basis.

    Raises ValueError if the input is not a Lie element.
    """
    rest = dict(p)
    out = {}
    while rest:
        w = min(rest)
        if not _is_lyndon(w):
            raise ValueError(f"word {w} is not Lyndon: the input is not a Lie element")
        c = rest[w]
        out[w] = c
        _add(rest, lyndon_bracket(w), -c)
    return out


def from_lyndon(coords: Mapping) -> Element:
    out: Element = {}
    for w, c in coords.items():
        _add(out, lyndon_bracket(w), c)
    return out


@dataclass(frozen=True)
class LyndonBasis:
    m: int
    words: dict[int, list[tuple[int, ...]]]

    def dimension(self, k: int) -> int:
        return len(self.words[k])

    def bracketing(self, w: tuple[int, ...]) -> str:
        if len(w) == 1:
            return f"g{w[0] + 1}"
        u, v = standard_factorization(w)
        return f"[{self.bracketing(u)},{self.bracketing(v)}]"


def lyndon_basis(m: int, degree: int) -> LyndonBasis:
    return LyndonBasis(m, {k: lyndon_words(m, k) for k in range(1, degree + 1)})


# ---------------------------------------------------------------------------
# exact incremental echelon form over Z


class Echelon:
    """Row echelon form of integer sparse vectors, kept primitive."""

    def __init__(self):
        self.pivots: dict = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: Mapping) -> dict:
        row = {k: v for k, v in vec.items() if v}
        done: dict = {}
        while row:
            c = min(row)
            piv = self.pivots.get(c)
            if piv is None:
                done[c] = row.pop(c)
                # remaining entries still need reducing only if they hit pivots
                continue
            a, b = piv[c], row[c]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            if fa != 1:
                for k in row:
                    row[k] *= fa
                for k in done:
                    done[k] *= fa
            for k, v in piv.items():
                nv = row.get(k, 0) - fb * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return done

    def add(self, vec: Mapping) -> bool:
        """Insert a vector; True if it was independent of the rows so far."""
        row = self.reduce(vec)
        if not row:
            return False
        g = 0
        for v in row.values():
            g = gcd(g, v)
        if g > 1:
            row = {k: v // g for k, v in row.items()}
        self.pivots[min(row)] = row
        return True


def span_rank(vectors: Iterable[Mapping]) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return len(e)


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class LiePresentation:
    """Degree-2 relations as {(a, b): coefficient} with a < b (0-based)."""

    labels: tuple[str, ...]
    relations: tuple[dict, ...] = field(compare=False)

    @property
    def m(self) -> int:
        return len(self.labels)

    def relation_elements(self) -> list[Element]:
        out = []
        for rel in self.relations:
            el: Element = {}
            for (a, b), c in rel.items():
                _add(el, {(a, b): c, (b, a): -c})
            out.append(el)
        return out

    def relation_rank(self) -> int:
        return span_rank(self.relations)

    def relabeled(self, perm: Sequence[int]) -> "LiePresentation":
        """Generator a becomes perm[a]."""
        labels = [""] * self.m
        for a, lab in enumerate(self.labels):
            labels[perm[a]] = lab
        rels = []
        for rel in self.relations:
            new = {}
            for (a, b), c in rel.items():
                x, y = perm[a], perm[b]
                key, s = ((x, y), 1) if x < y else ((y, x), -1)
                new[key] = new.get(key, 0) + s * c
            rels.append({k: v for k, v in new.items() if v})
        return LiePresentation(tuple(labels), tuple(rels))

    def to_text(self) -> str:
        lines = ["generators: " + " ".join(self.labels), "relations:"]
        for rel in self.relations:
            terms = []
            for (a, b), c in sorted(rel.items()):
                br = f"[{self.labels[a]},{self.labels[b]}]"
                terms.append(("+ " if c > 0 else "- ") + (br if abs(c) == 1 else f"{abs(c)}{br}"))
            text = " ".join(terms) if terms else "0"
            lines.append("  " + (text[2:] if text.startswith("+ ") else text))
        return "\n".join(lines)


def _relation(pairs: Iterable[tuple[int, int, int]]) -> dict:
    rel: dict = {}
    for a, b, c in pairs:
        if a == b:
            continue
        key, s = ((a, b), 1) if a < b else ((b, a), -1)
        rel[key] = rel.get(key, 0) + s * c
    return {k: v for k, v in rel.items() if v}


def holonomy_complement(arr: Arrangement) -> LiePresentation:
    """One relation sum_{j in I(i,k)} [x_j, x_k] per nbc pair (i, k)."""
    nbc = nbc2(arr)
    rels = []
    for i, k in nbc.pairs:
        rels.append(_relation((j - 1, k - 1, 1) for j in nbc.witness[(i, k)] if j != 0))
    return LiePresentation(tuple(f"x{i}" for i in range(1, arr.n + 1)), tuple(rels))


def holonomy_from_mu(os_: OSAlgebra) -> LiePresentation:
    rels = []
    for k in range(os_.b2):
        rels.append(_relation((i, j, int(os_.mu[i, j, k])) for i, j in combinations(range(os_.n), 2)))
    return LiePresentation(tuple(f"x{i}" for i in range(1, os_.n + 1)), tuple(rels))


def holonomy_double(arr: Arrangement) -> LiePresentation:
    """Holonomy of the doubled algebra: generators x_1..x_n, then y_p for p in nbc2.

    Relations: sum_{i<j} mu_ijk [x_i, x_j] for each k, then
    sum_{j,k} mu_ijk [x_j, y_k] for each i.
    """
    os_ = os_algebra(arr)
    n, b2 = os_.n, os_.b2
    labels = tuple([f"x{i}" for i in range(1, n + 1)] + [f"y{i},{k}" for i, k in os_.pairs])
    rels = list(holonomy_from_mu(os_).relations)
    for i in range(n):
        rels.append(_relation((j, n + k, int(os_.mu[i, j, k])) for j in range(n) for k in range(b2)))
    return LiePresentation(labels, tuple(rels))


# ---------------------------------------------------------------------------
# graded ranks


@dataclass(frozen=True)
class GradedRanks:
    dims: tuple[int, ...]
    requested: int
    ideal_dims: tuple[int, ...] = ()

    @property
    def depth(self) -> int:
        return len(self.dims)

    @property
    def complete(self) -> bool:
        return self.depth >= self.requested

    def series_text(self) -> str:
        terms = []
        for k, d in enumerate(self.dims):
            if d == 0:
                continue
            terms.append(str(d) if k == 0 else (f"{d}t" if k == 1 else f"{d}t^{k}"))
        text = " + ".join(terms) if terms else "0"
        return text + (" + ..." if self.complete else " + (truncated)")


def workspace_estimate(m: int, degree: int) -> int:
    return witt(m, degree) ** 2


def graded_ranks(pres: LiePresentation, degree: int, cap: int = DEFAULT_CAP) -> GradedRanks:
    """dim h_k = Witt(m, k) - dim J_k, with J_k spanned by [g_a, J_{k-1}].

    Vectors are rewritten into Lyndon coordinates before elimination.  When
    the workspace estimate for a degree exceeds ``cap`` the result stops at
    the previous degree.
    """
    if degree < 1:
        raise ValueError("degree must be at least 1")
    m = pres.m
    dims = [m]
    ideal = [0]
    gens = [{(a,): 1} for a in range(m)]
    basis: list[Element] = []  # spanning ad-words of J_{k-1} that were independent
    for k in range(2, degree + 1):
        if workspace_estimate(m, k) > cap:
            break
        e = Echelon()
        new_basis = []
        candidates = pres.relation_elements() if k == 2 else (bracket(g, v) for v in basis for g in gens)
        for vec in candidates:
            if vec and e.add(to_lyndon(vec)):
                new_basis.append(vec)
        basis = new_basis
        ideal.append(len(e))
        dims.append(witt(m, k) - len(e))
    return GradedRanks(tuple(dims), degree, tuple(ideal))


def ideal_by_closure(pres: LiePresentation, degree: int) -> dict[int, list[Element]]:
    """Spanning sets of J_k from J_k = sum_j [J_{k-j}, L_j], in tensor coordinates."""
    m = pres.m
    lie = {k: [lyndon_bracket(w) for w in lyndon_words(m, k)] for k in range(1, degree + 1)}
    spans: dict[int, list[Element]] = {2: [r for r in pres.relation_elements() if r]}
    for k in range(3, degree + 1):
        vecs = []
        for j in range(1, k - 1):
            for u in spans[k - j]:
                for v in lie[j]:
                    b = bracket(u, v)
                    if b:
                        vecs.append(b)
        e = Echelon()
        spans[k] = [v for v in vecs if e.add(v)]
    return spans


def ideal_by_ad_words(pres: LiePresentation, degree: int) -> dict[int, list[Element]]:
    """All left-normed ad-words ad(g_a1)...ad(g_a(k-2))(r), tensor coordinates."""
    m = pres.m
    gens = [{(a,): 1} for a in range(m)]
    spans = {2: [r for r in pres.relation_elements() if r]}
    for k in range(3, degree + 1):
        spans[k] = [b for v in spans[k - 1] for g in gens for b in [bracket(g, v)] if b]
    return spans


def closure_oracle_agrees(pres: LiePresentation, degree: int) -> bool:
    """Both spanning procedures give the same subspace in every degree."""
    a = ideal_by_ad_words(pres, degree)
    b = ideal_by_closure(pres, degree)
    for k in range(2, degree + 1):
        ra, rb = span_rank(a[k]), span_rank(b[k])
        if ra != rb or span_rank(a[k] + b[k]) != ra:
            return False
    return True


def free_lie(m: int) -> LiePresentation:
    return LiePresentation(tuple(f"g{i}" for i in range(1, m + 1)), ())


def abelian_lie(m: int) -> LiePresentation:
    return LiePresentation(tuple(f"g{i}" for i in range(1, m + 1)),
                           tuple({(a, b): 1} for a, b in combinations(range(m), 2)))
