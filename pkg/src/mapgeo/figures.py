"""Matplotlib figure rendering for the CLI report paths.

PNG companions to the delimited/SVG outputs: map drawings, traced lines and
pseudo-plane phase portraits. Uses the Agg backend so it works headless.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .map_core import PlanarMap, classify_edge, classify_vertex
from .mline import TraceResult
from .pseudo_plane import Orbit
from .svg import EDGE_COLORS, POINT_COLORS


def save_map_figure(
    pmap: PlanarMap,
    path: str,
    traces: list[TraceResult] = (),
    title: str | None = None,
) -> None:
    fig, ax = plt.subplots(figsize=(6, 6))
    for e in pmap.edges:
        a, b = pmap.edge_points(e.endpoints)
        color = EDGE_COLORS[classify_edge(pmap, e.endpoints)]
        ax.plot([a[0], b[0]], [a[1], b[1]], color=color, linewidth=1.5)
    for v in pmap.vertices.values():
        color = POINT_COLORS[classify_vertex(pmap, v.id)]
        ax.plot(v.position[0], v.position[1], "o", color=color, markersize=6)
    for tr in traces:
        for a, b in tr.segments:
            ax.plot([a[0], b[0]], [a[1], b[1]], color="#111111", linewidth=1.0)
        for ev in tr.crossings:
            ax.plot(ev.point[0], ev.point[1], ".", color="#111111", markersize=4)
    ax.set_aspect("equal")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_orbit_figure(orbits: list[Orbit], path: str, title: str | None = None) -> None:
    fig, ax = plt.subplots(figsize=(6, 6))
    for orbit in orbits:
        xs = [p[0] for p in orbit.points]
        ys = [p[1] for p in orbit.points]
        ax.plot(xs, ys, linewidth=1.0)
        ax.plot(xs[0], ys[0], "o", markersize=4)
    ax.set_aspect("equal")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
