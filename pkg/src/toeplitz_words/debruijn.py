"""de Bruijn (Rauzy) graphs G_L of a subshift language.

Vertices are the words of length L, edges the words of length L+1, going
from the length-L prefix to the length-L suffix and labelled by the last
letter.  Everything is kept in sorted order so exports are reproducible.
"""

from __future__ import annotations

import json
import os
import tempfile
from collections import Counter
from dataclasses import dataclass

from .errors import RangeError, VerificationError
from .language_oracle import LanguageIndex

Word = bytes


@dataclass(frozen=True)
class Edge:
    source: int
    target: int
    word: Word

    @property
    def label(self) -> int:
        return self.word[-1]


@dataclass(frozen=True)
class DeBruijnGraph:
    L: int
    vertices: tuple[Word, ...]
    edges: tuple[Edge, ...]
    alphabet: object = None

    def vertex_id(self, w: Word) -> int:
        return self._ids[w]

    @property
    def _ids(self) -> dict[Word, int]:
        cache = self.__dict__.get("_id_cache")
        if cache is None:
            cache = {w: i for i, w in enumerate(self.vertices)}
            object.__setattr__(self, "_id_cache", cache)
        return cache

    def out_edges(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.vertices]
        for idx, e in enumerate(self.edges):
            out[e.source].append(idx)
        return out

    def in_edges(self) -> list[list[int]]:
        inc: list[list[int]] = [[] for _ in self.vertices]
        for idx, e in enumerate(self.edges):
            inc[e.target].append(idx)
        return inc

    def render(self, w: Word) -> str:
        if self.alphabet is None:
            return ".".join(str(c) for c in w) if w else "ε"
        return self.alphabet.render(w) if w else "ε"


def build_graph(index: LanguageIndex, L: int) -> DeBruijnGraph:
    if L < 0 or L + 1 > index.max_valid_L:
        raise RangeError(f"G_{L} needs words of length {L + 1}; index is valid up to {index.max_valid_L}")
    vertices = tuple(index.words(L))
    ids = {w: i for i, w in enumerate(vertices)}
    edges = []
    for w in index.words(L + 1):
        edges.append(Edge(ids[w[:-1]], ids[w[1:]], w))
    return DeBruijnGraph(L, vertices, tuple(edges), index.alphabet)


# ---------------------------------------------------------------------------
# structure


@dataclass(frozen=True)
class Arc:
    """Maximal path whose interior vertices have in- and out-degree one."""

    edges: tuple[int, ...]
    start: int
    end: int

    @property
    def length(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class GraphStats:
    branch_vertices: tuple[int, ...]
    left_branch_vertices: tuple[int, ...]
    arcs: tuple[Arc, ...]
    loops: int
    strongly_connected: bool
    arc_lengths: tuple[int, ...]

    def as_dict(self, g: DeBruijnGraph) -> dict:
        return {
            "L": g.L,
            "vertices": len(g.vertices),
            "edges": len(g.edges),
            "branch_vertices": [g.render(g.vertices[v]) for v in self.branch_vertices],
            "left_branch_vertices": [g.render(g.vertices[v]) for v in self.left_branch_vertices],
            "arc_lengths": list(self.arc_lengths),
            "loops": self.loops,
            "strongly_connected": self.strongly_connected,
        }


def _strongly_connected(g: DeBruijnGraph) -> bool:
    if not g.vertices:
        return True
    out = [[g.edges[i].target for i in lst] for lst in g.out_edges()]
    inc = [[g.edges[i].source for i in lst] for lst in g.in_edges()]

    def reach(adj) -> int:
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen)

    n = len(g.vertices)
    return reach(out) == n and reach(inc) == n


def graph_stats(g: DeBruijnGraph) -> GraphStats:
    out = g.out_edges()
    inc = g.in_edges()
    special = [len(out[v]) != 1 or len(inc[v]) != 1 for v in range(len(g.vertices))]
    arcs = []
    for v in range(len(g.vertices)):
        if not special[v]:
            continue
        for e in out[v]:
            path = [e]
            w = g.edges[e].target
            while not special[w]:
                nxt = out[w][0]
                path.append(nxt)
                w = g.edges[nxt].target
            arcs.append(Arc(tuple(path), v, w))
    loops = 0
    covered = {e for a in arcs for e in a.edges}
    # cycles made only of degree-(1,1) vertices (periodic components)
    for v in range(len(g.vertices)):
        if special[v] or out[v][0] in covered:
            continue
        loops += 1
        e = out[v][0]
        while e not in covered:
            covered.add(e)
            e = out[g.edges[e].target][0]
    branch = tuple(v for v in range(len(g.vertices)) if len(out[v]) >= 2)
    left = tuple(v for v in range(len(g.vertices)) if len(inc[v]) >= 2)
    return GraphStats(
        branch, left, tuple(arcs), loops, _strongly_connected(g), tuple(sorted(a.length for a in arcs))
    )


def reversal_is_isomorphism(g: DeBruijnGraph) -> bool:
    """u -> reverse(u) on vertices, with every edge reversed, maps G_L onto itself."""
    vset = set(g.vertices)
    if any(v[::-1] not in vset for v in g.vertices):
        return False
    eset = {e.word for e in g.edges}
    ids = g._ids
    for e in g.edges:
        rw = e.word[::-1]
        if rw not in eset:
            return False
        # reversed edge runs from reverse(target) to reverse(source)
        if ids[rw[:-1]] != ids[g.vertices[e.target][::-1]] or ids[rw[1:]] != ids[g.vertices[e.source][::-1]]:
            return False
    return True


def _arc_reflection(g: DeBruijnGraph, arc: Arc) -> tuple[int, ...]:
    ids = {e.word: i for i, e in enumerate(g.edges)}
    return tuple(ids[g.edges[i].word[::-1]] for i in reversed(arc.edges))


def even_arc_count(stats: GraphStats) -> int:
    """Arcs with an even number of edges, counted over the plain contraction."""
    return sum(1 for a in stats.arcs if a.length % 2 == 0)


def self_reflected_arcs(g: DeBruijnGraph, stats: GraphStats | None = None) -> tuple[Arc, ...]:
    stats = stats or graph_stats(g)
    return tuple(a for a in stats.arcs if _arc_reflection(g, a) == a.edges)


def palindrome_count_from_graph(g: DeBruijnGraph, stats: GraphStats | None = None) -> int:
    """Palindromes read off the reflection: a palindromic vertex is either a
    special vertex or the midpoint of a self-reflected arc with an even
    number of edges."""
    stats = stats or graph_stats(g)
    count = sum(1 for a in self_reflected_arcs(g, stats) if a.length % 2 == 0)
    out = g.out_edges()
    inc = g.in_edges()
    for v, w in enumerate(g.vertices):
        if (len(out[v]) != 1 or len(inc[v]) != 1) and w == w[::-1]:
            count += 1
    return count


# ---------------------------------------------------------------------------
# export


def graph_to_json(g: DeBruijnGraph) -> dict:
    return {
        "L": g.L,
        "vertices": [g.render(v) for v in g.vertices],
        "vertex_ids": [list(v) for v in g.vertices],
        "edges": [
            {"source": e.source, "target": e.target, "label": g.render(e.word[-1:]), "word": list(e.word)}
            for e in g.edges
        ],
    }


def graph_from_json(data: dict, alphabet=None) -> DeBruijnGraph:
    vertices = tuple(bytes(v) for v in data["vertex_ids"])
    edges = tuple(Edge(int(e["source"]), int(e["target"]), bytes(e["word"])) for e in data["edges"])
    return DeBruijnGraph(int(data["L"]), vertices, edges, alphabet)


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def graph_to_dot(g: DeBruijnGraph) -> str:
    lines = [f"digraph G_{g.L} {{"]
    for i, v in enumerate(g.vertices):
        lines.append(f"  v{i} [label={_quote(g.render(v))}];")
    for e in g.edges:
        lines.append(f"  v{e.source} -> v{e.target} [label={_quote(g.render(e.word[-1:]))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def export_dot(g: DeBruijnGraph, path: str) -> None:
    if not g.edges:
        raise VerificationError("refusing to export a graph without edges")
    _atomic_write(path, graph_to_dot(g))


def export_json(g: DeBruijnGraph, path: str) -> None:
    if not g.edges:
        raise VerificationError("refusing to export a graph without edges")
    _atomic_write(path, json.dumps(graph_to_json(g), indent=2, sort_keys=True) + "\n")


def degree_profile(g: DeBruijnGraph) -> Counter:
    out = g.out_edges()
    inc = g.in_edges()
    return Counter((len(inc[v]), len(out[v])) for v in range(len(g.vertices)))
