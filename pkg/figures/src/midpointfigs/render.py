"""Figure rendering for the toolkit's exports.

Three kinds: graph layouts (spring layout with a fixed seed, or exact
simplex positions when a coordinate CSV is supplied), density trend lines,
and separation-certificate distance histograms.  Every render returns a
report with the counts actually drawn so callers can reconcile them against
the input data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "midpointfigs"  # content-stable SVG ids
import matplotlib.pyplot as plt
import networkx as nx

from .inputs import InputError, read_delta_csv, read_dot, read_ratio_csv, read_separation_json

KINDS = ("graph-layout", "ratio-trend", "separation-histogram")


@dataclass
class FigureSpec:
    kind: str
    out_path: str
    dot_path: str | None = None
    delta_csv: str | None = None
    ratio_csv: str | None = None
    certificate: str | None = None
    seed: int = 0
    title: str | None = None
    node_size: float = 120.0
    with_labels: bool | None = None  # default: label when small

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown figure kind {self.kind!r}")
        if self.kind == "graph-layout" and not self.dot_path:
            raise InputError("graph-layout needs a DOT input")
        if self.kind == "ratio-trend" and not self.ratio_csv:
            raise InputError("ratio-trend needs a ratio CSV input")
        if self.kind == "separation-histogram" and not self.certificate:
            raise InputError("separation-histogram needs a certificate JSON input")


def simplex_corners(dim: int) -> list[tuple[float, float]]:
    """Plane positions for up to four simplex corners (regular shapes)."""
    if dim == 1:
        return [(0.0, 0.0)]
    if dim == 2:
        return [(0.0, 0.0), (1.0, 0.0)]
    if dim == 3:
        return [(0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3) / 2)]
    return [
        (math.cos(2 * math.pi * i / dim), math.sin(2 * math.pi * i / dim))
        for i in range(dim)
    ]


def _positions_from_delta(graph, coords):
    dims = {len(c) for c in coords.values()}
    if len(dims) != 1:
        raise InputError("coordinate CSV has inconsistent dimensions")
    corners = simplex_corners(dims.pop())
    pos = {}
    for node, label in graph.labels.items():
        if label not in coords:
            raise InputError(f"coordinate CSV lacks vertex {label!r}")
        cs = coords[label]
        x = sum(float(c) * cx for c, (cx, _) in zip(cs, corners))
        y = sum(float(c) * cy for c, (_, cy) in zip(cs, corners))
        pos[node] = (x, y)
    return pos


def render(spec: FigureSpec) -> dict:
    """Render the figure and return a report of what was drawn."""
    if spec.kind == "graph-layout":
        return _render_graph(spec)
    if spec.kind == "ratio-trend":
        return _render_trend(spec)
    return _render_histogram(spec)


def _save(fig, spec: FigureSpec):
    out = Path(spec.out_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    kwargs = {}
    if out.suffix == ".svg":
        kwargs["metadata"] = {"Date": None}  # keep output byte-stable
    fig.savefig(out, **kwargs)
    plt.close(fig)


def _render_graph(spec: FigureSpec) -> dict:
    graph = read_dot(spec.dot_path)
    g = nx.Graph()
    g.add_nodes_from(sorted(graph.labels))
    g.add_edges_from(graph.edges)

    positioning = "spring"
    if spec.delta_csv:
        pos = _positions_from_delta(graph, read_delta_csv(spec.delta_csv))
        positioning = "simplex"
    else:
        raw = nx.spring_layout(g, seed=spec.seed)
        pos = {node: (float(xy[0]), float(xy[1])) for node, xy in raw.items()}

    fig, ax = plt.subplots(figsize=(6, 6))
    nx.draw_networkx_edges(g, pos, ax=ax, width=0.8, edge_color="#46627f", alpha=0.7)
    nx.draw_networkx_nodes(g, pos, ax=ax, node_size=spec.node_size, node_color="#c3553a")
    labelled = spec.with_labels if spec.with_labels is not None else graph.vcount <= 40
    if labelled:
        nx.draw_networkx_labels(
            g, pos, labels=graph.labels, ax=ax, font_size=7,
            verticalalignment="bottom",
        )
    ax.set_title(spec.title or graph.name)
    ax.set_axis_off()
    _save(fig, spec)
    return {
        "kind": spec.kind,
        "out": str(spec.out_path),
        "vcount": graph.vcount,
        "ecount": graph.ecount,
        "positioning": positioning,
        "positions": pos,
        "labels": graph.labels,
    }


def _render_trend(spec: FigureSpec) -> dict:
    rows = read_ratio_csv(spec.ratio_csv)
    fig, ax = plt.subplots(figsize=(6, 4))
    ns = [r["n"] for r in rows]
    ratios = [r["ratio"] for r in rows]
    ax.plot(ns, ratios, marker="o", color="#2a6f4e")
    for r in rows:
        ax.annotate(f"m={r['m']}", (r["n"], r["ratio"]), textcoords="offset points",
                    xytext=(4, 4), fontsize=8)
    ax.set_xlabel("level n")
    ax.set_ylabel("power edge count / vertex count^2")
    ax.set_title(spec.title or "density of the scaled power graph")
    ax.grid(True, alpha=0.3)
    _save(fig, spec)
    return {"kind": spec.kind, "out": str(spec.out_path), "rows": len(rows),
            "ns": ns, "ratios": ratios}


def _render_histogram(spec: FigureSpec) -> dict:
    cert = read_separation_json(spec.certificate)
    dists = cert["pairwise_distances"]
    fig, ax = plt.subplots(figsize=(6, 4))
    lo, hi = min(dists), max(dists)
    ax.hist(dists, bins=range(lo, hi + 2), color="#46627f", edgecolor="white", align="left")
    ax.axvline(cert["m"] + 1, color="#c3553a", linestyle="--",
               label=f"required minimum {cert['m'] + 1}")
    ax.set_xlabel("pairwise hop distance")
    ax.set_ylabel("pairs")
    ax.set_title(spec.title or
                 f"separated set at level {cert['n']} (bound {cert['rho_lower']})")
    ax.legend()
    _save(fig, spec)
    return {"kind": spec.kind, "out": str(spec.out_path),
            "cardinality": cert["cardinality"], "pairs": len(dists)}
