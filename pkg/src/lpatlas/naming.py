"""Symbolic algebra descriptors and the naming cascade.

A descriptor is a direct sum of matrix algebras ``M_k(atom)`` over the atoms
K, K[x,x^-1], the Toeplitz algebra T, the Leavitt algebras L(1,n), a
reference to an atlas class, or an unknown algebra.  Names are rendered in
ASCII: ``K + M_2(K[x,x^-1])^2``, ``M_inf(K)``, ``L_K(n2:1,0;1,1)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from .errors import InputError
from .graph import (
    Graph,
    condition_NE,
    connected_components,
    induced_subgraph,
    is_acyclic,
    simple_cycles,
    sinks,
)
from .invariants import (
    INF,
    canonical_unit,
    count_paths_to,
    det_diagnostic,
    k0_matrix_from_adjacency,
    purely_infinite_simple,
)

_KIND_RANK = {"K": 0, "laurent": 1, "toeplitz": 2, "leavitt": 3, "classref": 4, "unknown": 5}


@dataclass(frozen=True)
class Atom:
    kind: str
    param: object = None

    def __post_init__(self):
        if self.kind not in _KIND_RANK:
            raise InputError(f"unknown atom kind {self.kind!r}")

    def __str__(self) -> str:
        if self.kind == "K":
            return "K"
        if self.kind == "laurent":
            return "K[x,x^-1]"
        if self.kind == "toeplitz":
            return "T"
        if self.kind == "leavitt":
            return f"L(1,{self.param})"
        if self.kind == "classref":
            return f"L_K({self.param})"
        return "?"


K = Atom("K")
LAURENT = Atom("laurent")
TOEPLITZ = Atom("toeplitz")
UNKNOWN = Atom("unknown")


def leavitt(n: int) -> Atom:
    return Atom("leavitt", n)


def classref(class_id: str) -> Atom:
    return Atom("classref", class_id)


@dataclass(frozen=True)
class Summand:
    size: float  # matrix size, INF allowed; 1 means the atom itself
    atom: Atom

    def sort_key(self):
        return (_KIND_RANK[self.atom.kind], str(self.atom.param), self.size)

    def __str__(self) -> str:
        if self.size == 1:
            return str(self.atom)
        size = "inf" if self.size == INF else str(int(self.size))
        return f"M_{size}({self.atom})"


@dataclass(frozen=True)
class AlgebraDescriptor:
    """Direct sum of summands, kept sorted so equal algebras compare equal."""

    summands: Tuple[Summand, ...] = ()

    def __post_init__(self):
        ordered = tuple(sorted(self.summands, key=Summand.sort_key))
        object.__setattr__(self, "summands", ordered)

    def __add__(self, other: "AlgebraDescriptor") -> "AlgebraDescriptor":
        return AlgebraDescriptor(self.summands + other.summands)

    @property
    def is_named(self) -> bool:
        return all(s.atom.kind not in ("classref", "unknown") for s in self.summands)

    def __str__(self) -> str:
        if not self.summands:
            return "0"
        parts = []
        k = 0
        while k < len(self.summands):
            s = self.summands[k]
            run = 1
            while k + run < len(self.summands) and self.summands[k + run] == s:
                run += 1
            parts.append(str(s) if run == 1 else f"{s}^{run}")
            k += run
        return " + ".join(parts)

    def cell(self) -> str:
        """Table rendering: the name, or '---' when any part is not known."""
        return str(self) if self.is_named else "---"

    def to_json(self):
        return str(self)


def single(atom: Atom, size: float = 1) -> AlgebraDescriptor:
    return AlgebraDescriptor((Summand(size, atom),))


ZERO = AlgebraDescriptor()

# -- parsing -------------------------------------------------------------------

def _parse_atom(text: str) -> Atom:
    text = text.strip()
    if text == "K":
        return K
    if text == "K[x,x^-1]":
        return LAURENT
    if text == "T":
        return TOEPLITZ
    if text == "?":
        return UNKNOWN
    m = re.fullmatch(r"L\(1,(\d+)\)", text)
    if m:
        return leavitt(int(m.group(1)))
    m = re.fullmatch(r"L_K\((.+)\)", text)
    if m:
        return classref(m.group(1))
    raise InputError(f"cannot parse algebra atom {text!r}")


def parse_name(text: str) -> AlgebraDescriptor:
    """Inverse of ``str(descriptor)``."""
    text = text.strip()
    if text == "0":
        return ZERO
    out: List[Summand] = []
    for term in text.split(" + "):
        term = term.strip()
        # "K[x,x^-1]" ends in "]", so a trailing "^digits" is always a power
        m = re.search(r"\^(\d+)$", term)
        power = int(m.group(1)) if m else 1
        body = term[:m.start()] if m else term
        mm = re.fullmatch(r"M_(\d+|inf)\((.*)\)", body)
        if mm:
            size = INF if mm.group(1) == "inf" else int(mm.group(1))
            atom = _parse_atom(mm.group(2))
        else:
            size, atom = 1, _parse_atom(body)
        out.extend([Summand(size, atom)] * power)
    return AlgebraDescriptor(tuple(out))


# -- the cascade ---------------------------------------------------------------

PisKey = Tuple[Tuple[int, Tuple[int, ...]], object, int]


def pis_key_from_adjacency(adj) -> PisKey:
    """(K0, canonical [1], sign of det(I - A^t)) for a sink-free (multi)graph."""
    m = k0_matrix_from_adjacency(adj)
    cu = canonical_unit(m, [1] * len(adj))
    det = det_diagnostic(adj)
    sign = 0 if not det else (1 if det > 0 else -1)
    return (cu.group.key, (cu.quotient.key, cu.free_gcd, cu.orbit_min), sign)


def _no_exit_cycle_size(h: Graph, cycle: Tuple[int, ...]) -> int:
    """Paths ending at the cycle's base vertex that do not run through the whole cycle."""
    base = min(cycle)
    rows = [list(r) for r in h.rows]
    rows[base - 1] = [0] * h.n  # cut the cycle at its base
    return int(count_paths_to(Graph(h.n, tuple(map(tuple, rows))), base))


class Namer:
    """Applies the cascade, with optional hooks into an atlas.

    ``class_of`` maps a graph to its class id; ``class_name`` maps a class id
    to a known descriptor (or ``None``).  ``pis_table`` maps
    :func:`pis_key_from_adjacency` keys to names.
    """

    def __init__(self, pis_table: Dict[PisKey, AlgebraDescriptor],
                 class_of: Optional[Callable[[Graph], Optional[str]]] = None,
                 class_name: Optional[Callable[[str], Optional[AlgebraDescriptor]]] = None):
        self.pis_table = pis_table
        self.class_of = class_of
        self.class_name = class_name

    def component(self, h: Graph) -> AlgebraDescriptor:
        if is_acyclic(h):
            return AlgebraDescriptor(tuple(Summand(count_paths_to(h, u), K)
                                           for u in sorted(sinks(h))))
        if condition_NE(h):
            parts = [Summand(count_paths_to(h, u), K) for u in sorted(sinks(h))]
            parts += [Summand(_no_exit_cycle_size(h, c), LAURENT) for c in simple_cycles(h)]
            return AlgebraDescriptor(tuple(parts))
        if purely_infinite_simple(h):
            name = self.pis_table.get(pis_key_from_adjacency(h.rows))
            if name is not None:
                return name
        cid = self.class_of(h) if self.class_of else None
        if cid is None:
            return single(UNKNOWN)
        known = self.class_name(cid) if self.class_name else None
        return known if known is not None else single(classref(cid))

    def __call__(self, g: Graph) -> AlgebraDescriptor:
        out = ZERO
        for comp in connected_components(g):
            out = out + self.component(induced_subgraph(g, comp))
        return out


def build_pis_table(entries: Iterable[Tuple[List[List[int]], str]]) -> Dict[PisKey, AlgebraDescriptor]:
    table: Dict[PisKey, AlgebraDescriptor] = {}
    for adj, name in entries:
        key = pis_key_from_adjacency(adj)
        desc = parse_name(name)
        if table.setdefault(key, desc) != desc:
            raise InputError(f"conflicting names for the same K0 data: {name}")
    return table
