"""PNG figures for the CLI's --figures option (Agg backend, no display)."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from scipy.spatial import ConvexHull, QhullError  # noqa: E402

from .graph import WeightedGraph  # noqa: E402
from .polytope import ZMatrix  # noqa: E402

_DPI = 110


def _save(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=_DPI, metadata={"Software": None})
    plt.close(fig)
    return path


def _graph_layout(graph: WeightedGraph) -> list[tuple[float, float]]:
    lines = [k for k, v in enumerate(graph.vertices) if not v.is_point]
    points = [k for k, v in enumerate(graph.vertices) if v.is_point]
    pos = [(0.0, 0.0)] * len(graph.vertices)
    for r, k in enumerate(lines):
        a = 2 * math.pi * r / max(len(lines), 1)
        pos[k] = (math.cos(a), math.sin(a))
    for r, k in enumerate(points):
        # point vertices sit near the mean of their lines, pulled inward
        members = [graph.line_vertex(i) for i in graph.vertices[k].lines]
        x = sum(pos[m][0] for m in members) / len(members)
        y = sum(pos[m][1] for m in members) / len(members)
        jitter = 0.08 * (r + 1) / (len(points) + 1)
        pos[k] = (0.5 * x + jitter, 0.5 * y - jitter)
    return pos


def plot_graph(graph: WeightedGraph, path: Path, title: str = "") -> Path:
    pos = _graph_layout(graph)
    fig, ax = plt.subplots(figsize=(5, 5))
    for e in graph.edges:
        (x0, y0), (x1, y1) = pos[e.source], pos[e.target]
        style = "-" if e.in_tree else "--"
        ax.plot([x0, x1], [y0, y1], style, color="0.35" if e.in_tree else "tab:red", lw=1.2, zorder=1)
    for k, v in enumerate(graph.vertices):
        x, y = pos[k]
        color = "tab:blue" if v.is_point else "white"
        ax.scatter([x], [y], s=260, c=color, edgecolors="black", zorder=2)
        ax.annotate(v.label, (x, y), ha="center", va="center", fontsize=7, zorder=3,
                    color="white" if v.is_point else "black")
    ax.set_aspect("equal")
    ax.axis("off")
    ax.set_title(title or "graph (dashed: cycle edges)", fontsize=9)
    return _save(fig, path)


def plot_zonotope(z: ZMatrix, vertices: Sequence[Sequence[int]], path: Path, axes: tuple[int, int] = (0, 1),
                  title: str = "") -> Path:
    """Projection of the zonotope's vertices to two coordinates, with the hull drawn."""
    i, j = axes
    pts = sorted({(v[i], v[j] if j < z.rows else 0) for v in vertices})
    fig, ax = plt.subplots(figsize=(5, 5))
    if len(pts) >= 3:
        try:
            hull = ConvexHull(pts)
            cyc = list(hull.vertices) + [hull.vertices[0]]
            ax.fill([pts[k][0] for k in cyc], [pts[k][1] for k in cyc], color="tab:green", alpha=0.2)
            ax.plot([pts[k][0] for k in cyc], [pts[k][1] for k in cyc], color="tab:green")
        except QhullError:
            ax.plot([p[0] for p in pts], [p[1] for p in pts], color="tab:green")
    elif len(pts) == 2:
        ax.plot([p[0] for p in pts], [p[1] for p in pts], color="tab:green")
    ax.scatter([p[0] for p in pts], [p[1] for p in pts], s=12, c="black", zorder=3)
    ax.set_xlabel(f"coordinate {i + 1}")
    ax.set_ylabel(f"coordinate {j + 1}")
    ax.set_aspect("equal", adjustable="datalim")
    ax.set_title(title or f"Newton polytope projected to coordinates {i + 1},{j + 1}", fontsize=9)
    return _save(fig, path)


def plot_coefficients(coeffs: Sequence[int], path: Path, title: str = "") -> Path:
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.bar(range(len(coeffs)), coeffs, color="tab:purple")
    for k, c in enumerate(coeffs):
        ax.annotate(str(c), (k, c), ha="center", va="bottom", fontsize=8)
    ax.set_xlabel("degree")
    ax.set_ylabel("coefficient")
    ax.set_xticks(range(len(coeffs)))
    ax.set_title(title or f"P(S,t), P(S,1) = {sum(coeffs)}", fontsize=9)
    return _save(fig, path)


def plot_ranks(dims: Sequence[int], path: Path, title: str = "") -> Path:
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ks = list(range(1, len(dims) + 1))
    ax.bar(ks, dims, color="tab:orange")
    for k, d in zip(ks, dims):
        ax.annotate(str(d), (k, d), ha="center", va="bottom", fontsize=8)
    if any(dims) and max(dims) > 50 * max(1, min(d for d in dims if d > 0)):
        ax.set_yscale("log")
    ax.set_xlabel("degree k")
    ax.set_ylabel("dim h_k")
    ax.set_xticks(ks)
    ax.set_title(title or "holonomy Lie algebra ranks", fontsize=9)
    return _save(fig, path)
