"""Hereditary midpoint vertices.

A vertex is either a leaf (a small integer label) or an unordered pair of two
distinct, previously constructed vertices.  Terms are interned: structurally
equal terms are the very same object, so equality and hashing are identity
based and O(1) even for deeply nested terms.  Interned vertices are immutable
and safe to share across threads; the intern tables are guarded by a lock.

The canonical total order puts leaves first (by label), then pairs by
(level, lexicographic on the ordered children).  A pair always stores its
smaller child first, which makes the string encoding unique.
"""

from __future__ import annotations

import re
import threading

from .errors import DecodeError

__all__ = ["Vertex", "leaf", "midpoint", "level", "encode", "decode", "vertex_key"]


class Vertex:
    """Interned midpoint term.  Use :func:`leaf` and :func:`midpoint` to build."""

    __slots__ = ("label", "lo", "hi", "level", "_key")

    _lock = threading.Lock()
    _leaves: dict[int, "Vertex"] = {}
    _pairs: dict[tuple["Vertex", "Vertex"], "Vertex"] = {}

    def __init__(self, label, lo, hi, lvl):
        self.label = label
        self.lo = lo
        self.hi = hi
        self.level = lvl
        self._key = None

    @property
    def is_leaf(self):
        return self.label is not None

    def key(self):
        """Memoized sort key realizing the canonical total order.

        Keys are nested tuples whose first entry is the level, so vertices of
        different levels never compare past the first entry and leaf/pair
        shapes never mix in a comparison.
        """
        k = self._key
        if k is None:
            if self.is_leaf:
                k = (1, self.label)
            else:
                k = (self.level, self.lo.key(), self.hi.key())
            self._key = k
        return k

    def __lt__(self, other):
        return self.key() < other.key()

    def __le__(self, other):
        return self is other or self.key() < other.key()

    def __repr__(self):
        return f"Vertex({encode(self)})"

    def __str__(self):
        return encode(self)

    def __reduce__(self):
        # re-intern on unpickle so identity semantics survive serialization
        return (decode, (encode(self),))


def leaf(label: int) -> Vertex:
    """The leaf vertex with the given non-negative label."""
    if not isinstance(label, int) or label < 0:
        raise ValueError(f"leaf label must be a non-negative integer, got {label!r}")
    table = Vertex._leaves
    v = table.get(label)
    if v is None:
        with Vertex._lock:
            v = table.get(label)
            if v is None:
                v = Vertex(label, None, None, 1)
                table[label] = v
    return v


def midpoint(a: Vertex, b: Vertex) -> Vertex:
    """m(a, b): the vertex itself when a = b, else the canonical pair {a, b}."""
    if a is b:
        return a
    if b.key() < a.key():
        a, b = b, a
    table = Vertex._pairs
    v = table.get((a, b))
    if v is None:
        with Vertex._lock:
            v = table.get((a, b))
            if v is None:
                v = Vertex(None, a, b, max(a.level, b.level) + 1)
                table[(a, b)] = v
    return v


def level(v: Vertex) -> int:
    """Nesting depth: 1 for leaves, max of children plus one for pairs."""
    return v.level


def encode(v: Vertex) -> str:
    """Canonical string form: leaves as decimals, pairs as "{lo,hi}"."""
    if v.is_leaf:
        return str(v.label)
    return "{" + encode(v.lo) + "," + encode(v.hi) + "}"


_LEAF_RE = re.compile(r"(0|[1-9][0-9]*)")


def decode(s: str) -> Vertex:
    """Parse a canonical encoding; rejects anything :func:`encode` cannot emit."""
    v, pos = _parse(s, 0)
    if pos != len(s):
        raise DecodeError(f"trailing characters at position {pos} in {s!r}")
    return v


def _parse(s: str, pos: int) -> tuple[Vertex, int]:
    if pos >= len(s):
        raise DecodeError(f"unexpected end of input in {s!r}")
    if s[pos] == "{":
        lo, pos = _parse(s, pos + 1)
        if pos >= len(s) or s[pos] != ",":
            raise DecodeError(f"expected ',' at position {pos} in {s!r}")
        hi, pos = _parse(s, pos + 1)
        if pos >= len(s) or s[pos] != "}":
            raise DecodeError(f"expected '}}' at position {pos} in {s!r}")
        if lo is hi:
            raise DecodeError(f"pair with equal children in {s!r}")
        if not (lo.key() < hi.key()):
            raise DecodeError(f"pair children out of canonical order in {s!r}")
        return midpoint(lo, hi), pos + 1
    m = _LEAF_RE.match(s, pos)
    if m is None:
        raise DecodeError(f"expected a leaf label at position {pos} in {s!r}")
    return leaf(int(m.group())), m.end()


def vertex_key(v: Vertex):
    """Sort key for the canonical order (exposed for external sorting)."""
    return v.key()
