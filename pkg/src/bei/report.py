"""Figure rendering for run summaries and family graphs.

Everything draws through the Agg backend and lands in files next to the
delimited output, so headless runs work unchanged.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .graphs import Graph, bits


def render_run_summary(summary, path: str | Path) -> Path:
    """Bar chart of the per-stage counts of one pipeline run."""
    path = Path(path)
    stages = list(summary.counts)
    values = [summary.counts[s] for s in stages]
    fig, ax = plt.subplots(figsize=(6, 3.2))
    bars = ax.bar(range(len(stages)), values, color="#4878a8")
    ax.set_xticks(range(len(stages)))
    ax.set_xticklabels([s.replace("_", "\n") for s in stages], fontsize=8)
    ax.set_ylabel("graphs")
    ax.set_title(f"classification stages, n = {summary.n}")
    for bar, v in zip(bars, values):
        ax.text(bar.get_x() + bar.get_width() / 2, bar.get_height(), str(v),
                ha="center", va="bottom", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def _layout(g: Graph) -> dict[int, tuple[float, float]]:
    """Circular layout for the 2-core, pendant vertices pushed outward."""
    pendant = {v for v in range(g.n) if g.degree(v) == 1}
    core = [v for v in range(g.n) if v not in pendant] or list(range(g.n))
    pos: dict[int, tuple[float, float]] = {}
    for i, v in enumerate(core):
        a = 2 * math.pi * i / len(core)
        pos[v] = (math.cos(a), math.sin(a))
    for v in pendant:
        owner = next(bits(g.adj[v]))
        ox, oy = pos.get(owner, (0.0, 0.0))
        r = math.hypot(ox, oy) or 1.0
        pos[v] = (ox * (1 + 0.55 / r), oy * (1 + 0.55 / r))
    return pos


def draw_graph(g: Graph, path: str | Path, title: str | None = None) -> Path:
    path = Path(path)
    fig, ax = plt.subplots(figsize=(3.4, 3.4))
    _draw_on(ax, g, title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def _draw_on(ax, g: Graph, title: str | None) -> None:
    pos = _layout(g)
    for u, v in g.edges():
        (x1, y1), (x2, y2) = pos[u], pos[v]
        ax.plot([x1, x2], [y1, y2], color="#555555", lw=1.1, zorder=1)
    xs = [pos[v][0] for v in range(g.n)]
    ys = [pos[v][1] for v in range(g.n)]
    ax.scatter(xs, ys, s=110, color="#f0b060", edgecolors="#333333", zorder=2)
    for v in range(g.n):
        ax.text(pos[v][0], pos[v][1], str(v), ha="center", va="center", fontsize=7, zorder=3)
    if title:
        ax.set_title(title, fontsize=9)
    ax.set_aspect("equal")
    ax.axis("off")


def draw_graph_grid(graphs, path: str | Path, titles=None, cols: int = 3) -> Path:
    path = Path(path)
    rows = (len(graphs) + cols - 1) // cols
    fig, axes = plt.subplots(rows, cols, figsize=(3.0 * cols, 3.0 * rows))
    axes = [ax for row in (axes if rows > 1 else [axes]) for ax in (row if cols > 1 else [row])]
    for i, ax in enumerate(axes):
        if i < len(graphs):
            _draw_on(ax, graphs[i], titles[i] if titles else None)
        else:
            ax.axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
