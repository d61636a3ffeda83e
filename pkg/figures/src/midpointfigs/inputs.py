"""Parsers for the exports the main toolkit writes.

The DOT subset: ``graph <name> { i [label="..."]; i -- j; }`` with integer
node ids and quoted labels.  CSVs carry a mandatory header row; fractions
appear as "p/q" strings.
"""

from __future__ import annotations

import csv
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path


class InputError(ValueError):
    """The input file is missing, garbled, or empty where data is required."""


_NODE_RE = re.compile(r'^\s*(\d+)\s*\[label="(.*)"\]\s*;\s*$')
_EDGE_RE = re.compile(r"^\s*(\d+)\s*--\s*(\d+)\s*;\s*$")
_HEAD_RE = re.compile(r"^\s*graph\s+(\S+)\s*\{\s*$")


@dataclass
class DotGraph:
    name: str
    labels: dict[int, str]
    edges: list[tuple[int, int]]

    @property
    def vcount(self) -> int:
        return len(self.labels)

    @property
    def ecount(self) -> int:
        return len(self.edges)


def read_dot(path) -> DotGraph:
    path = Path(path)
    if not path.exists():
        raise InputError(f"no such DOT file: {path}")
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines or _HEAD_RE.match(lines[0]) is None:
        raise InputError(f"not a graph DOT file: {path}")
    name = _HEAD_RE.match(lines[0]).group(1)
    labels: dict[int, str] = {}
    edges: list[tuple[int, int]] = []
    for ln, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line or line == "}":
            continue
        m = _NODE_RE.match(raw)
        if m:
            labels[int(m.group(1))] = m.group(2)
            continue
        m = _EDGE_RE.match(raw)
        if m:
            i, j = int(m.group(1)), int(m.group(2))
            edges.append((i, j))
            continue
        raise InputError(f"{path}:{ln}: unrecognized DOT line: {raw!r}")
    for i, j in edges:
        if i not in labels or j not in labels:
            raise InputError(f"{path}: edge ({i},{j}) references an undeclared node")
    return DotGraph(name, labels, edges)


def read_delta_csv(path) -> dict[str, tuple[Fraction, ...]]:
    """Vertex label -> exact simplex coordinates."""
    path = Path(path)
    if not path.exists():
        raise InputError(f"no such coordinate CSV: {path}")
    out: dict[str, tuple[Fraction, ...]] = {}
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header or header[0] != "vertex":
            raise InputError(f"{path}: expected a 'vertex' header column")
        for row in reader:
            out[row[0]] = tuple(Fraction(c) for c in row[1:])
    if not out:
        raise InputError(f"{path}: no coordinate rows")
    return out


def read_ratio_csv(path) -> list[dict]:
    path = Path(path)
    if not path.exists():
        raise InputError(f"no such ratio CSV: {path}")
    with path.open(newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    for need in ("n", "m", "ratio"):
        if rows and need not in rows[0]:
            raise InputError(f"{path}: missing column {need!r}")
    if not rows:
        raise InputError(f"{path}: no data rows")
    return [
        {"n": int(r["n"]), "m": int(r["m"]), "ratio": float(r["ratio"])}
        for r in rows
    ]


def read_separation_json(path) -> dict:
    path = Path(path)
    if not path.exists():
        raise InputError(f"no such certificate: {path}")
    data = json.loads(path.read_text(encoding="utf-8"))
    if data.get("schema") != "separation-certificate/1":
        raise InputError(f"{path}: not a separation certificate")
    if not data.get("pairwise_distances"):
        raise InputError(f"{path}: certificate has no pairwise distances to plot")
    return data
