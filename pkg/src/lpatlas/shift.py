"""Shift moves on adjacency matrices and the shift reduction of orbit lists.

``shift(i, j, m)`` replaces row ``j`` by ``row_j - row_i + e_i``.  It is
defined when row ``i`` is non-zero and dominated entrywise by row ``j``; with
0/1 rows this is the same as an injection from the edges of ``i`` into the
edges of ``j`` preserving ranges.  Inapplicable moves return ``None``.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from .errors import SizeMismatchError
from .graph import Graph
from .orbits import canonical_form


def _replace_row(m: Graph, j: int, row: Sequence[int]) -> Optional[Graph]:
    if any(a not in (0, 1) for a in row):
        return None
    rows = list(m.rows)
    rows[j - 1] = tuple(row)
    return Graph(m.n, tuple(rows))


def _check_pair(m: Graph, i: int, j: int) -> None:
    if i == j or not (1 <= i <= m.n and 1 <= j <= m.n):
        raise SizeMismatchError(f"need distinct vertices in 1..{m.n}, got {i}, {j}")


def shift(i: int, j: int, m: Graph) -> Optional[Graph]:
    _check_pair(m, i, j)
    ri, rj = m.rows[i - 1], m.rows[j - 1]
    if not any(ri) or any(a > b for a, b in zip(ri, rj)):
        return None
    new = [b - a for a, b in zip(ri, rj)]
    new[i - 1] += 1
    return _replace_row(m, j, new)


def inverse_shift(i: int, j: int, m: Graph) -> Optional[Graph]:
    """The graph ``x`` with ``shift(i, j, x) == m``, if there is one."""
    _check_pair(m, i, j)
    ri, rj = m.rows[i - 1], m.rows[j - 1]
    if rj[i - 1] < 1 or not any(ri):
        return None
    new = [a + b for a, b in zip(ri, rj)]
    new[i - 1] -= 1
    return _replace_row(m, j, new)


def moves(m: Graph) -> Iterator[Tuple[str, int, int, Graph]]:
    """Every applicable one-step move, skipping those that return ``m`` itself."""
    for kind, fn in (("shift", shift), ("inverse_shift", inverse_shift)):
        for i in range(1, m.n + 1):
            for j in range(1, m.n + 1):
                if i == j:
                    continue
                out = fn(i, j, m)
                if out is not None and out != m:
                    yield kind, i, j, out


@lru_cache(maxsize=None)
def neighbor_forms(m: Graph) -> frozenset:
    """Canonical forms of all one-step shifts and inverse shifts of ``m``."""
    return frozenset(canonical_form(out) for _, _, _, out in moves(m))


def shift_equivalent(x: Graph, y: Graph) -> bool:
    """One-step relation: a move of one graph lands in the isomorphism class of the other."""
    if x.n != y.n:
        raise SizeMismatchError(f"sizes differ: {x.n} vs {y.n}")
    cx, cy = canonical_form(x), canonical_form(y)
    return cy in neighbor_forms(x) or cx in neighbor_forms(y)


def reduce(reps: Iterable[Graph]) -> List[Graph]:
    """Drop each representative that is shift equivalent to a later one.

    The sweep runs over the list in the order given; only the output size and
    the absence of related pairs are order independent.
    """
    pending = list(reps)
    kept = []
    for k, x in enumerate(pending):
        if not any(shift_equivalent(x, y) for y in pending[k + 1:]):
            kept.append(x)
    return kept


def preferred_order(reps: Iterable[Graph], preferred: Iterable[Graph]) -> List[Graph]:
    """Order ``reps`` so that a :func:`reduce` sweep tends to keep ``preferred``.

    Non-preferred graphs come first, farthest (in moves) from the preferred set
    first, then lexicographically; preferred graphs close the list.  When the
    preferred graphs are pairwise unrelated and every other graph is connected
    to one of them by moves, the sweep returns exactly the preferred graphs.
    """
    reps = [canonical_form(g) for g in reps]
    pref = {canonical_form(g) for g in preferred} & set(reps)
    dist = {p: 0 for p in pref}
    queue = deque(sorted(pref))
    while queue:
        cur = queue.popleft()
        for nb in sorted(neighbor_forms(cur)):
            if nb not in dist:
                dist[nb] = dist[cur] + 1
                queue.append(nb)
    unreachable = len(reps) + 1
    rest = sorted((g for g in reps if g not in pref),
                  key=lambda g: (-dist.get(g, unreachable), g))
    return rest + sorted(pref)


def shift_components(universe: Iterable[Graph]) -> List[List[Graph]]:
    """Classes of the transitive closure of the move relation on canonical forms.

    Moves leaving ``universe`` are followed as well, so components are the full
    connected components of the move graph restricted to same-size graphs.
    """
    universe = [canonical_form(g) for g in universe]
    seen: Set[Graph] = set()
    comps = []
    for g in universe:
        if g in seen:
            continue
        comp = explore(g)
        seen |= comp.keys()
        comps.append(sorted(comp))
    return comps


def explore(g: Graph) -> Dict[Graph, Tuple[Tuple[str, int, int], ...]]:
    """Breadth-first search over moves from ``canonical_form(g)``.

    Returns each reached canonical form with one shortest move path.  Paths
    record moves applied to canonical forms (relabel, then move).
    """
    start = canonical_form(g)
    paths = {start: ()}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for kind, i, j, out in moves(cur):
            c = canonical_form(out)
            if c not in paths:
                paths[c] = paths[cur] + ((kind, i, j),)
                queue.append(c)
    return paths
