"""Path/star forests and the ``2P5+3S4`` text grammar.

``P n`` is the path on n vertices.  ``S t`` is the star with t LEAVES, so
``S4`` has five vertices; the path-star forest F(k1, k2; l) is therefore
``k1 P l + k2 S (l-1)``.  Mind the off-by-one: it follows the usual
extremal-graph subscripts, not "star on t vertices".
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

PATH = "P"
STAR = "S"


class ForestSpecError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(message + where)


@dataclass(frozen=True, order=True)
class Component:
    kind: str  # PATH or STAR
    size: int  # vertices for a path, leaves for a star

    def __post_init__(self):
        if self.kind == PATH and self.size < 2:
            raise ForestSpecError(f"path needs at least 2 vertices, got {self.size}")
        if self.kind == STAR and self.size < 1:
            raise ForestSpecError(f"star needs at least 1 leaf, got {self.size}")
        if self.kind not in (PATH, STAR):
            raise ForestSpecError(f"unknown component kind {self.kind!r}")

    @property
    def vertices(self) -> int:
        return self.size if self.kind == PATH else self.size + 1

    @property
    def edges(self) -> int:
        return self.vertices - 1

    def sort_key(self):
        return (-self.vertices, 0 if self.kind == PATH else 1)

    def __str__(self) -> str:
        return f"{self.kind}{self.size}"


@dataclass(frozen=True)
class ForestSpec:
    components: tuple[Component, ...]

    def __init__(self, components: Iterable[Component]):
        comps = tuple(sorted(components, key=Component.sort_key))
        if not comps:
            raise ForestSpecError("a forest needs at least one component")
        object.__setattr__(self, "components", comps)

    @property
    def total_vertices(self) -> int:
        return sum(c.vertices for c in self.components)

    @property
    def total_edges(self) -> int:
        return sum(c.edges for c in self.components)

    @property
    def paths(self) -> tuple[Component, ...]:
        return tuple(c for c in self.components if c.kind == PATH)

    @property
    def stars(self) -> tuple[Component, ...]:
        return tuple(c for c in self.components if c.kind == STAR)

    def grouped(self) -> list[tuple[int, Component]]:
        out: list[tuple[int, Component]] = []
        for c in self.components:
            if out and out[-1][1] == c:
                out[-1] = (out[-1][0] + 1, c)
            else:
                out.append((1, c))
        return out

    def edge_list(self) -> tuple[int, list[tuple[int, int]]]:
        """The forest itself as (vertex count, edges), components in order."""
        edges, at = [], 0
        for c in self.components:
            if c.kind == PATH:
                edges += [(at + i, at + i + 1) for i in range(c.size - 1)]
            else:
                edges += [(at, at + 1 + i) for i in range(c.size)]
            at += c.vertices
        return at, edges

    def __str__(self) -> str:
        return "+".join(f"{k if k > 1 else ''}{c}" for k, c in self.grouped())


_TERM = re.compile(r"\s*(\d*)\s*([A-Za-z])\s*(\d*)\s*")


def parse_spec(text: str) -> ForestSpec:
    """Parse ``term ('+' term)*`` with ``term := [count] ('P'|'S') size``."""
    if not text or not text.strip():
        raise ForestSpecError("empty forest spec", 0)
    comps: list[Component] = []
    pos = 0
    while True:
        m = _TERM.match(text, pos)
        if not m or not m.group(2):
            raise ForestSpecError("expected a term like '2P5' or 'S3'", pos)
        count_txt, kind, size_txt = m.groups()
        kind_pos = m.start(2)
        if kind.upper() not in (PATH, STAR):
            raise ForestSpecError(f"unknown component kind {kind!r}; use P or S", kind_pos)
        kind = kind.upper()
        if not size_txt:
            raise ForestSpecError("missing component size", m.end(2))
        count = int(count_txt) if count_txt else 1
        size = int(size_txt)
        if count == 0:
            raise ForestSpecError("component count must be positive", m.start(1))
        if kind == PATH and size < 2:
            raise ForestSpecError(f"path needs at least 2 vertices, got P{size}", m.start(3))
        if kind == STAR and size < 1:
            raise ForestSpecError(f"star needs at least 1 leaf, got S{size}", m.start(3))
        comps += [Component(kind, size)] * count
        pos = m.end()
        if pos == len(text):
            break
        if text[pos] != "+":
            raise ForestSpecError(f"unexpected character {text[pos]!r}", pos)
        pos += 1
    return ForestSpec(comps)


def canonical_family(k1: int, k2: int, l: int) -> ForestSpec:
    """F(k1, k2; l): k1 paths on l vertices and k2 stars on l vertices."""
    if k1 < 0 or k2 < 0 or k1 + k2 < 1:
        raise ForestSpecError(f"need k1, k2 >= 0 and k1 + k2 >= 1, got ({k1}, {k2})")
    if l < 2:
        raise ForestSpecError(f"need l >= 2, got {l}")
    return ForestSpec([Component(PATH, l)] * k1 + [Component(STAR, l - 1)] * k2)


def as_spec(spec: ForestSpec | str) -> ForestSpec:
    return parse_spec(spec) if isinstance(spec, str) else spec
