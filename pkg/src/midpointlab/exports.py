"""Serialization: DOT and CSV writers, canonical JSON, certificate schemas,
and the on-disk level cache.

All writers are deterministic: fixed orderings, sorted JSON keys, no
timestamps.  Fractions serialize as "p/q" strings so nothing is rounded.
"""

from __future__ import annotations

import csv
import hashlib
import json
import struct
from fractions import Fraction
from pathlib import Path

from .graphs import GraphLevel, build_levels, BuildBudget, DEFAULT_BUDGET
from .vertex import Vertex, encode, decode

FORMAT_VERSION = 1
_MAGIC = b"MPLV"

__all__ = [
    "fraction_str",
    "to_jsonable",
    "write_json",
    "write_dot",
    "write_counts_csv",
    "write_manifest",
    "write_distance_csv",
    "write_delta_csv",
    "separation_to_dict",
    "bound_certificate_to_dict",
    "save_level",
    "load_level",
    "load_or_build",
]


def fraction_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def to_jsonable(obj):
    """Recursively convert package values into JSON-safe structures."""
    if isinstance(obj, Fraction):
        return fraction_str(obj)
    if isinstance(obj, Vertex):
        return encode(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = list(obj)
        if isinstance(obj, (set, frozenset)):
            items = sorted(items, key=str)
        return [to_jsonable(v) for v in items]
    if hasattr(obj, "__dataclass_fields__"):
        return {k: to_jsonable(getattr(obj, k)) for k in obj.__dataclass_fields__ if not k.startswith("_")}
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    return str(obj)


def write_json(obj, path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(to_jsonable(obj), sort_keys=True, indent=2, separators=(",", ": "))
    path.write_text(text + "\n", encoding="utf-8")


def write_dot(level: GraphLevel, path) -> None:
    """Undirected DOT, node ids are level indices, labels canonical encodings."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"graph level_{level.n} {{"]
    for i, v in enumerate(level.vertices):
        lines.append(f'  {i} [label="{encode(v)}"];')
    for i, j in level.edges():
        lines.append(f"  {i} -- {j};")
    lines.append("}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_counts_csv(levels, path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "vcount", "ecount"])
        for lvl in levels:
            w.writerow([lvl.n, lvl.vcount, lvl.ecount])


def write_manifest(levels, params: dict, path) -> None:
    manifest = {
        "format_version": FORMAT_VERSION,
        "n0": levels[0].n0 if levels else None,
        "levels": [
            {"n": lvl.n, "vcount": lvl.vcount, "ecount": lvl.ecount} for lvl in levels
        ],
        "params": params,
    }
    write_json(manifest, path)


def write_distance_csv(level: GraphLevel, table, path) -> None:
    """Matrix rows per source; header row carries the canonical encodings."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["source"] + [encode(v) for v in level.vertices])
        for pos, src in enumerate(table.sources):
            w.writerow([encode(level.vertices[src])] + [int(x) for x in table.dist[pos]])


def write_delta_csv(level: GraphLevel, coords, path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    n0 = level.n0
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["vertex"] + [f"c{i}" for i in range(n0)])
        for v in level.vertices:
            w.writerow([encode(v)] + [fraction_str(c) for c in coords[v]])


def separation_to_dict(cert) -> dict:
    return {
        "schema": "separation-certificate/1",
        "n": cert.n,
        "m": cert.m,
        "cardinality": cert.cardinality,
        "vertices": [encode(v) for v in cert.vertices],
        "rho_lower": fraction_str(cert.rho_lower),
        "rho_lower_refined": fraction_str(cert.rho_lower_refined),
        "min_pairwise_distance": cert.min_pairwise_distance,
        "pairwise_distances": cert.pairwise_distances,
        "mode": cert.mode,
        "exact_maximum": cert.exact_maximum,
        "verified": cert.verified,
    }


def bound_certificate_to_dict(cert) -> dict:
    return {
        "schema": "edge-bound-certificate/1",
        "n": cert.n,
        "k": cert.k,
        "m": cert.m,
        "K": cert.K,
        "parts": cert.parts,
        "k_exponents": cert.k_exponents,
        "scalar_product": cert.scalar_product,
        "base_counts": cert.base_counts,
        "vcounts": cert.vcounts,
        "exact_value": cert.exact_value,
        "closed_value": cert.closed_value,
        "sum_of_exponents_ok": cert.sum_of_exponents_ok(),
        "structurally_ok": cert.structurally_ok(),
    }


# ---------------------------------------------------------------------------
# level cache


def _level_blob(level: GraphLevel) -> bytes:
    vertex_block = "\n".join(encode(v) for v in level.vertices).encode("utf-8")
    head = _MAGIC + struct.pack(
        "<IIIQQQ", FORMAT_VERSION, level.n0, level.n, level.vcount, level.ecount,
        len(vertex_block),
    )
    edges = b"".join(struct.pack("<II", i, j) for i, j in level.edges())
    return head + vertex_block + edges


def save_level(level: GraphLevel, directory) -> Path:
    """Write the binary blob plus a JSON sidecar with counts and hash."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    blob = _level_blob(level)
    stem = f"level-n0_{level.n0}-n{level.n}"
    bin_path = directory / f"{stem}.bin"
    bin_path.write_bytes(blob)
    write_json(
        {
            "format_version": FORMAT_VERSION,
            "n0": level.n0,
            "n": level.n,
            "vcount": level.vcount,
            "ecount": level.ecount,
            "sha256": hashlib.sha256(blob).hexdigest(),
        },
        directory / f"{stem}.json",
    )
    return bin_path


def load_level(directory, n0: int, n: int) -> GraphLevel | None:
    """Load a cached level; returns None when absent, raises on corruption."""
    directory = Path(directory)
    stem = f"level-n0_{n0}-n{n}"
    bin_path = directory / f"{stem}.bin"
    side_path = directory / f"{stem}.json"
    if not bin_path.exists() or not side_path.exists():
        return None
    blob = bin_path.read_bytes()
    sidecar = json.loads(side_path.read_text())
    if sidecar.get("sha256") != hashlib.sha256(blob).hexdigest():
        raise OSError(f"cache hash mismatch for {bin_path}")
    if blob[:4] != _MAGIC:
        raise OSError(f"bad magic in {bin_path}")
    version, rn0, rn, vcount, ecount, vblock_len = struct.unpack("<IIIQQQ", blob[4:40])
    if version != FORMAT_VERSION or rn0 != n0 or rn != n:
        raise OSError(f"cache metadata mismatch for {bin_path}")
    vb_end = 40 + vblock_len
    encodings = blob[40:vb_end].decode("utf-8").split("\n") if vblock_len else []
    vertices = [decode(s) for s in encodings]
    if len(vertices) != vcount:
        raise OSError(f"vertex count mismatch in {bin_path}")
    adjacency = [[] for _ in range(vcount)]
    for off in range(vb_end, len(blob), 8):
        i, j = struct.unpack("<II", blob[off : off + 8])
        adjacency[i].append(j)
        adjacency[j].append(i)
    for nbrs in adjacency:
        nbrs.sort()
    level = GraphLevel(
        n=n, n0=n0, vertices=vertices,
        index={v: i for i, v in enumerate(vertices)},
        adjacency=adjacency, vcount=vcount, ecount=ecount,
    )
    if sum(len(a) for a in adjacency) != 2 * ecount:
        raise OSError(f"edge count mismatch in {bin_path}")
    return level


def load_or_build(n0: int, n_max: int, budget: BuildBudget = DEFAULT_BUDGET, cache_dir=None):
    """Rebuild levels, reusing a cache directory when given (write-through)."""
    if cache_dir is None:
        return build_levels(n0, n_max, budget)
    cached = []
    for n in range(n_max + 1):
        lvl = load_level(cache_dir, n0, n)
        if lvl is None:
            break
        cached.append(lvl)
    if len(cached) == n_max + 1:
        return cached
    levels = build_levels(n0, n_max, budget)
    for lvl in levels[len(cached) :]:
        save_level(lvl, cache_dir)
    return levels
