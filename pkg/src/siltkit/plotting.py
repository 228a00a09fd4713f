"""Report figures: Hom vanishing tables and mutation graphs (Agg backend, PNG output)."""

from __future__ import annotations

import os
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def vanishing_table_figure(table: dict, path: str, title: str = "dim Hom(T, T[m])") -> str:
    shifts = sorted(int(m) for m in table)
    dims = [int(table.get(m, table.get(str(m), 0))) for m in shifts]
    colors = ["#2e7d32" if m == 0 else ("#c62828" if d else "#9e9e9e") for m, d in zip(shifts, dims)]
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.bar(shifts, dims, color=colors, edgecolor="black", linewidth=0.5)
    for m, d in zip(shifts, dims):
        if d:
            ax.annotate(str(d), (m, d), ha="center", va="bottom", fontsize=9)
    ax.set_xticks(shifts)
    ax.set_xlabel("shift m")
    ax.set_ylabel("dimension")
    ax.set_title(title)
    ax.spines[["top", "right"]].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def _layered_positions(depths: list[int]) -> list[tuple[float, float]]:
    rows = defaultdict(list)
    for k, d in enumerate(depths):
        rows[d].append(k)
    pos = [(0.0, 0.0)] * len(depths)
    for d, members in rows.items():
        w = len(members)
        for j, k in enumerate(members):
            pos[k] = ((j - (w - 1) / 2) / max(w, 1), -float(d))
    return pos


def exchange_graph_figure(graph, path: str, title: str = "mutation graph") -> str:
    """Nodes by BFS depth; tilting nodes filled green, the rest grey."""
    pos = _layered_positions([v.depth for v in graph.nodes])
    fig, ax = plt.subplots(figsize=(7, 5))
    for u, v, _ in graph.edges:
        if u == v:
            continue
        (x0, y0), (x1, y1) = pos[u], pos[v]
        ax.plot([x0, x1], [y0, y1], color="#bdbdbd", linewidth=0.6, zorder=1)
    xs = [x for x, _ in pos]
    ys = [y for _, y in pos]
    colors = ["#43a047" if v.tilting else "#eeeeee" for v in graph.nodes]
    size = 60 if len(graph.nodes) < 80 else 18
    ax.scatter(xs, ys, c=colors, s=size, edgecolors="black", linewidths=0.5, zorder=2)
    if len(graph.nodes) <= 12:
        for k, v in enumerate(graph.nodes):
            ax.annotate(str(k + 1), pos[k], xytext=(4, 4), textcoords="offset points", fontsize=8)
    ax.set_title(f"{title} ({len(graph.nodes)} nodes, {graph.tilting_count()} tilting)")
    depths = sorted({v.depth for v in graph.nodes})
    ax.set_yticks([-float(d) for d in depths], [str(d) for d in depths])
    ax.set_ylabel("depth")
    ax.set_xticks([])
    ax.spines[["top", "right", "bottom"]].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def write_figures(outdir: str, table: dict | None = None, graph=None, prefix: str = "") -> list[str]:
    os.makedirs(outdir, exist_ok=True)
    written = []
    if table is not None:
        written.append(vanishing_table_figure(table, os.path.join(outdir, f"{prefix}vanishing.png")))
    if graph is not None:
        written.append(exchange_graph_figure(graph, os.path.join(outdir, f"{prefix}graph.png")))
    return written
