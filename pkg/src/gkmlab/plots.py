"""Matplotlib rendering of graphs, realizations and x-rays to image files.

Figures are a reporting surface only; all exact data stays in the text and
JSON outputs.  The Agg backend is forced so rendering works headless.
"""

import math

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
from matplotlib.patches import FancyArrowPatch

# fixed generic projection directions, one pair per ambient rank
_ANGLES = [0.35, 1.85, 3.05, 4.25, 5.15, 0.95]


def _project(point, rank):
    u = sum(float(c) * math.cos(_ANGLES[k % len(_ANGLES)]) for k, c in enumerate(point))
    w = sum(float(c) * math.sin(_ANGLES[k % len(_ANGLES)]) for k, c in enumerate(point))
    if rank == 1:
        return float(point[0]), 0.0
    if rank == 2:
        return float(point[0]), float(point[1])
    return u, w


def graph_figure(g, title=None):
    """Circular layout with curved parallel edges and label annotations."""
    fig, ax = plt.subplots(figsize=(6.4, 5.6))
    n = len(g.vertices)
    pos = {}
    for k, v in enumerate(g.vertices):
        theta = 2 * math.pi * k / n + math.pi / 2
        pos[v] = (math.cos(theta), math.sin(theta))
    groups = {}
    for i, e in enumerate(g.edges):
        groups.setdefault((min(e.u, e.v), max(e.u, e.v)), []).append(i)
    for (u, v), idxs in sorted(groups.items()):
        for slot, i in enumerate(idxs):
            rad = 0.0 if len(idxs) == 1 else -0.35 + 0.7 * slot / (len(idxs) - 1)
            patch = FancyArrowPatch(pos[u], pos[v], arrowstyle="-",
                                    connectionstyle="arc3,rad=%.3f" % rad,
                                    linewidth=1.4, color="#36618e")
            ax.add_patch(patch)
            mx = (pos[u][0] + pos[v][0]) / 2 - rad * (pos[v][1] - pos[u][1])
            my = (pos[u][1] + pos[v][1]) / 2 + rad * (pos[v][0] - pos[u][0])
            ax.annotate("(%s)" % ",".join(map(str, g.edges[i].label)),
                        (mx, my), fontsize=8, ha="center", va="center",
                        color="#53391f")
    for v, (x, y) in pos.items():
        ax.plot([x], [y], "o", markersize=9, color="#1d2f43")
        ax.annotate(v, (x * 1.14, y * 1.14), fontsize=11,
                    ha="center", va="center")
    ax.set_xlim(-1.45, 1.45)
    ax.set_ylim(-1.45, 1.45)
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return fig


def realization_figure(g, m, title=None):
    """Projected momentum image: segments per edge, dots per fixed point."""
    fig, ax = plt.subplots(figsize=(6.4, 5.6))
    proj = {v: _project(p, g.rank) for v, p in m.positions.items()}
    for e in g.edges:
        (x0, y0), (x1, y1) = proj[e.u], proj[e.v]
        ax.plot([x0, x1], [y0, y1], "-", color="#36618e", linewidth=1.4)
    for v, (x, y) in proj.items():
        ax.plot([x], [y], "o", color="#1d2f43", markersize=7)
        ax.annotate(v, (x, y), textcoords="offset points",
                    xytext=(5, 5), fontsize=10)
    ax.set_aspect("equal")
    ax.grid(True, linewidth=0.3, alpha=0.5)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return fig


def xray_figure(x, rank, title=None):
    """Strata polytope vertex sets over the projected momentum image."""
    fig, ax = plt.subplots(figsize=(6.4, 5.6))
    for idx, pts in sorted(x.polytopes.items()):
        projected = [_project(p, rank) for p in pts]
        if len(projected) == 1:
            ax.plot([projected[0][0]], [projected[0][1]], "o",
                    color="#1d2f43", markersize=7)
        elif len(projected) == 2:
            (x0, y0), (x1, y1) = projected
            ax.plot([x0, x1], [y0, y1], "-", color="#8e4f36", linewidth=1.2)
        else:
            xs = [p[0] for p in projected]
            ys = [p[1] for p in projected]
            ax.fill(xs, ys, alpha=0.08, color="#36618e")
    ax.set_aspect("equal")
    ax.grid(True, linewidth=0.3, alpha=0.5)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return fig


def save_figure(fig, path):
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
