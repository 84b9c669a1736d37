"""The weighted graph of an arrangement: one vertex per dense edge.

Vertices are ordered points first (lexicographically by incident set), then
lines 1..n, then line 0.  Edges join two lines meeting in a double point
(low index to high) and a point of multiplicity >= 3 to each line through it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .arrangement import Arrangement, nbc2


@dataclass(frozen=True)
class GraphVertex:
    kind: str  # "point" or "line"
    lines: tuple[int, ...]  # incident set for a point, (i,) for line i

    @property
    def is_point(self) -> bool:
        return self.kind == "point"

    @property
    def label(self) -> str:
        return "v" + "".join(str(i) for i in self.lines) if self.is_point else f"v{self.lines[0]}"


@dataclass(frozen=True)
class GraphEdge:
    source: int  # vertex positions
    target: int
    in_tree: bool
    nbc: tuple[int, int] | None  # label of the matching nbc pair for cycle edges


@dataclass(frozen=True)
class WeightedGraph:
    vertices: tuple[GraphVertex, ...]
    edges: tuple[GraphEdge, ...]
    weights: tuple[int, ...]
    multiplicities: tuple[int, ...]
    cycle_edges: tuple[int, ...]  # edge positions ordered by nbc label

    def vertex_index(self, v: GraphVertex) -> int:
        return self.vertices.index(v)

    def line_vertex(self, i: int) -> int:
        return self.vertices.index(GraphVertex("line", (i,)))

    @property
    def tree_edges(self) -> tuple[int, ...]:
        return tuple(k for k, e in enumerate(self.edges) if e.in_tree)

    @property
    def first_betti(self) -> int:
        return len(self.edges) - len(self.vertices) + 1

    def to_document(self) -> dict:
        return {
            "vertices": [
                {"label": v.label, "kind": v.kind, "lines": list(v.lines), "weight": w, "multiplicity": m}
                for v, w, m in zip(self.vertices, self.weights, self.multiplicities)
            ],
            "edges": [
                {
                    "source": self.vertices[e.source].label,
                    "target": self.vertices[e.target].label,
                    "tree": e.in_tree,
                    "cycle_label": None if e.nbc is None else list(e.nbc),
                }
                for e in self.edges
            ],
        }


def _vertices(arr: Arrangement) -> list[GraphVertex]:
    pts = sorted(p.incident for p in arr.points if p.multiplicity >= 3)
    out = [GraphVertex("point", inc) for inc in pts]
    out += [GraphVertex("line", (i,)) for i in range(1, arr.n_lines)]
    out.append(GraphVertex("line", (0,)))
    return out


def vertex_weights(arr: Arrangement, vertices: Sequence[GraphVertex]) -> list[int]:
    out = []
    for v in vertices:
        if v.is_point:
            out.append(-1)
        else:
            p = sum(1 for q in arr.points_on(v.lines[0]) if q.multiplicity >= 3)
            out.append(1 - p)
    return out


def _tree_and_label(arr: Arrangement, u: GraphVertex, v: GraphVertex) -> tuple[bool, tuple[int, int] | None]:
    if not u.is_point:
        i, j = u.lines[0], v.lines[0]
        if i == 0:
            return True, None
        return False, (i, j)
    big, i = u.lines, v.lines[0]
    if 0 in big:
        return True, None
    if i == big[0]:
        return True, None
    return False, (big[0], i)


def maximal_tree(arr: Arrangement, graph: WeightedGraph) -> tuple[tuple[bool, ...], tuple[int, ...]]:
    return tuple(e.in_tree for e in graph.edges), graph.cycle_edges


def _check_spanning_tree(n_vertices: int, edges: Sequence[tuple[int, int]]) -> None:
    parent = list(range(n_vertices))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            raise RuntimeError("tree edges contain a cycle")
        parent[ra] = rb
    if len(edges) != n_vertices - 1:
        raise RuntimeError("tree edges do not span the graph")


def build_graph(arr: Arrangement) -> WeightedGraph:
    verts = _vertices(arr)
    pos = {v: k for k, v in enumerate(verts)}
    edges = []
    for p in arr.points:
        if p.multiplicity == 2:
            i, j = p.incident
            u, v = GraphVertex("line", (i,)), GraphVertex("line", (j,))
        else:
            continue
        tree, label = _tree_and_label(arr, u, v)
        edges.append(GraphEdge(pos[u], pos[v], tree, label))
    for p in arr.points:
        if p.multiplicity < 3:
            continue
        u = GraphVertex("point", p.incident)
        for i in p.incident:
            v = GraphVertex("line", (i,))
            tree, label = _tree_and_label(arr, u, v)
            edges.append(GraphEdge(pos[u], pos[v], tree, label))
    edges.sort(key=lambda e: (e.source, e.target))
    _check_spanning_tree(len(verts), [(e.source, e.target) for e in edges if e.in_tree])

    degree = [0] * len(verts)
    for e in edges:
        degree[e.source] += 1
        degree[e.target] += 1
    cycle = sorted((k for k, e in enumerate(edges) if not e.in_tree), key=lambda k: edges[k].nbc)
    labels = [edges[k].nbc for k in cycle]
    if labels != list(nbc2(arr).pairs):
        raise RuntimeError("cycle edges do not match the nbc pairs")
    return WeightedGraph(tuple(verts), tuple(edges), tuple(vertex_weights(arr, verts)), tuple(degree), tuple(cycle))
