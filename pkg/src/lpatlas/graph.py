"""Finite directed graphs without parallel edges, stored as 0/1 adjacency matrices.

Vertices are numbered ``1..n`` in every public function; ``rows[i - 1][j - 1]``
is the number of edges from ``i`` to ``j``.  Serialized forms (text, JSON,
wire strings) carry only the matrix, so the offset never leaks into files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import FrozenSet, Iterable, Iterator, List, Sequence, Tuple

from .errors import (
    EmptyGraphError,
    InputError,
    NonSquareError,
    NotHereditaryError,
    NotSingError,
)

VertexSet = FrozenSet[int]
Matrix = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True, order=True)
class Graph:
    n: int
    rows: Matrix

    def __post_init__(self):
        if len(self.rows) != self.n or any(len(r) != self.n for r in self.rows):
            raise NonSquareError(f"adjacency matrix is not {self.n}x{self.n}")
        for r in self.rows:
            for a in r:
                if a not in (0, 1):
                    raise NotSingError(f"entry {a} is not 0/1")

    @property
    def vertices(self) -> VertexSet:
        return frozenset(range(1, self.n + 1))

    def edge(self, i: int, j: int) -> bool:
        return self.rows[i - 1][j - 1] == 1

    def successors(self, v: int) -> List[int]:
        return [j + 1 for j, a in enumerate(self.rows[v - 1]) if a]

    def predecessors(self, v: int) -> List[int]:
        return [i + 1 for i in range(self.n) if self.rows[i][v - 1]]

    def out_degree(self, v: int) -> int:
        return sum(self.rows[v - 1])

    def edges(self) -> Iterator[Tuple[int, int]]:
        for i in range(1, self.n + 1):
            for j in self.successors(i):
                yield i, j

    def num_edges(self) -> int:
        return sum(map(sum, self.rows))

    def to_lists(self) -> List[List[int]]:
        return [list(r) for r in self.rows]

    def wire(self) -> str:
        """Compact form ``"1,1;1,0"`` (rows joined by ';', entries by ',')."""
        return ";".join(",".join(str(a) for a in r) for r in self.rows)

    def to_text(self) -> str:
        lines = [str(self.n)] + [" ".join(str(a) for a in r) for r in self.rows]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"n": self.n, "adjacency": self.to_lists()}

    def __str__(self) -> str:
        return self.wire() if self.n else "<empty>"


EMPTY = Graph(0, ())


def from_matrix(rows: Sequence[Sequence[int]]) -> Graph:
    rows = [list(r) for r in rows]
    n = len(rows)
    if n == 0:
        raise EmptyGraphError("graph needs at least one vertex")
    if any(len(r) != n for r in rows):
        raise NonSquareError(f"expected {n} entries in every row")
    for r in rows:
        for a in r:
            if not isinstance(a, int) or isinstance(a, bool) or a < 0:
                raise InputError(f"entry {a!r} is not a non-negative integer")
            if a > 1:
                raise NotSingError(f"entry {a} > 1: parallel edges are not allowed")
    return Graph(n, tuple(tuple(r) for r in rows))


def from_wire(s: str) -> Graph:
    s = s.strip()
    if not s:
        raise EmptyGraphError("empty matrix string")
    try:
        rows = [[int(x) for x in r.split(",")] for r in s.split(";")]
    except ValueError as exc:
        raise InputError(f"bad matrix string {s!r}") from exc
    return from_matrix(rows)


def from_text(text: str) -> Graph:
    lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise EmptyGraphError("empty graph file")
    try:
        n = int(lines[0][0])
        rows = [[int(x) for x in ln] for ln in lines[1:]]
    except ValueError as exc:
        raise InputError("graph text must contain integers only") from exc
    if len(lines[0]) != 1:
        raise InputError("first line must hold the vertex count only")
    if n == 0:
        raise EmptyGraphError("graph needs at least one vertex")
    if len(rows) != n:
        raise NonSquareError(f"declared n={n} but found {len(rows)} rows")
    return from_matrix(rows)


def from_json(obj) -> Graph:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        n = obj["n"]
        rows = obj["adjacency"]
    except (KeyError, TypeError) as exc:
        raise InputError("JSON graph needs fields 'n' and 'adjacency'") from exc
    g = from_matrix(rows)
    if g.n != n:
        raise NonSquareError(f"declared n={n} but adjacency is {g.n}x{g.n}")
    return g


def parse_graph(text: str) -> Graph:
    """Accept the text format, the JSON object form or a wire string."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return from_json(stripped)
    if ";" in stripped or "," in stripped:
        return from_wire(stripped)
    return from_text(stripped)


# -- basic predicates ----------------------------------------------------------


def sinks(g: Graph) -> VertexSet:
    return frozenset(v for v in g.vertices if not any(g.rows[v - 1]))


def tree(g: Graph, x: Iterable[int]) -> VertexSet:
    """Forward-reachability closure of ``x`` (the smallest hereditary superset)."""
    seen = set(x)
    stack = list(seen)
    while stack:
        v = stack.pop()
        for w in g.successors(v):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return frozenset(seen)


def is_hereditary(g: Graph, h: Iterable[int]) -> bool:
    h = set(h)
    return all(w in h for v in h for w in g.successors(v))


def is_saturated(g: Graph, h: Iterable[int]) -> bool:
    h = set(h)
    for v in g.vertices - h:
        out = g.successors(v)
        if out and all(w in h for w in out):
            return False
    return True


def saturated_closure(g: Graph, x: Iterable[int]) -> VertexSet:
    """Hereditary saturated closure: grow ``tree(g, x)`` by saturation to a fixpoint."""
    h = set(tree(g, x))
    changed = True
    while changed:
        changed = False
        for v in sorted(g.vertices - h):
            out = g.successors(v)
            if out and all(w in h for w in out):
                h.add(v)
                changed = True
    return frozenset(h)


def all_subsets(n: int) -> Iterator[VertexSet]:
    verts = range(1, n + 1)
    for k in range(n + 1):
        for c in combinations(verts, k):
            yield frozenset(c)


def hereditary_saturated_subsets(g: Graph) -> List[VertexSet]:
    """All members of H_E, ordered by size and then lexicographically."""
    return [h for h in all_subsets(g.n) if saturated_closure(g, h) == h]


def quotient_graph(g: Graph, h: Iterable[int]) -> Graph:
    h = frozenset(h)
    if not is_hereditary(g, h):
        raise NotHereditaryError(f"{sorted(h)} is not hereditary")
    keep = [v for v in range(1, g.n + 1) if v not in h]
    if not keep:
        return EMPTY
    return Graph(len(keep), tuple(tuple(g.rows[i - 1][j - 1] for j in keep) for i in keep))


def induced_subgraph(g: Graph, vs: Iterable[int]) -> Graph:
    keep = sorted(vs)
    if not keep:
        return EMPTY
    return Graph(len(keep), tuple(tuple(g.rows[i - 1][j - 1] for j in keep) for i in keep))


def connected_components(g: Graph) -> List[VertexSet]:
    """Weakly connected components, ordered by their smallest vertex."""
    left = set(g.vertices)
    comps = []
    while left:
        start = min(left)
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in g.successors(v) + g.predecessors(v):
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        left -= comp
        comps.append(frozenset(comp))
    return comps


# -- cycle structure -----------------------------------------------------------


def on_cycle(g: Graph, v: int) -> bool:
    return v in tree(g, g.successors(v))


def cycle_vertices(g: Graph) -> VertexSet:
    return frozenset(v for v in g.vertices if on_cycle(g, v))


def is_acyclic(g: Graph) -> bool:
    return not cycle_vertices(g)


def no_bifurcation_graph(g: Graph) -> Graph:
    """Delete every vertex emitting more than one edge (with its incident edges)."""
    keep = [v for v in g.vertices if g.out_degree(v) <= 1]
    return induced_subgraph(g, keep)


def condition_L(g: Graph) -> bool:
    """Every cycle has an exit.

    A cycle without exit runs through vertices of out-degree one only, so it
    survives deletion of all bifurcation vertices.
    """
    return is_acyclic(no_bifurcation_graph(g))


def simple_cycles(g: Graph) -> List[Tuple[int, ...]]:
    """Every simple cycle once, as a vertex tuple starting at its smallest vertex."""
    found = []

    def extend(path):
        for w in g.successors(path[-1]):
            if w == path[0]:
                found.append(tuple(path))
            elif w > path[0] and w not in path:
                extend(path + [w])

    for v in range(1, g.n + 1):
        extend([v])
    return found


def condition_NE(g: Graph) -> bool:
    """No cycle has an exit."""
    return all(g.out_degree(v) == 1 for v in cycle_vertices(g))


def condition_MT3(g: Graph) -> bool:
    trees = [tree(g, [v]) for v in range(1, g.n + 1)]
    return all(a & b for a in trees for b in trees)


def cofinal(g: Graph) -> bool:
    return all(saturated_closure(g, [v]) == g.vertices for v in g.vertices)


def connects_to_cycle(g: Graph, v: int) -> bool:
    return bool(tree(g, [v]) & cycle_vertices(g))


def line_points(g: Graph) -> VertexSet:
    """Vertices whose tree has neither bifurcations nor cycle vertices."""
    cyc = cycle_vertices(g)
    return frozenset(
        v for v in g.vertices
        if all(g.out_degree(w) <= 1 and w not in cyc for w in tree(g, [v]))
    )
