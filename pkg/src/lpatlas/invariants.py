"""Graph invariants of Leavitt path algebras: K0, unit class, socle and friends.

Everything here is computed from the adjacency matrix alone.  Sub-quotients
(the quotient by the socle, the quotient by the unique graded ideal) are
returned as graphs; :func:`signature` turns them into class references when
given a resolver, which is how the atlas names them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import gcd
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .errors import NotASinkError
from .graph import (
    Graph,
    cofinal,
    condition_L,
    condition_MT3,
    condition_NE,
    connected_components,
    cycle_vertices,
    hereditary_saturated_subsets,
    quotient_graph,
    saturated_closure,
    sinks,
    tree,
)
from .intlinalg import AbelianGroup, IntMatrix, PointedElement, determinant, pointed_cokernel, cokernel
from .orbits import canonical_form

INF = math.inf

SELF = "self"
EMPTY_REF = "empty"

# largest finite group whose automorphisms are enumerated outright
MAX_AUT_ORDER = 64


# -- K0 ------------------------------------------------------------------------


def k0_matrix_from_adjacency(adj: Sequence[Sequence[int]]) -> IntMatrix:
    """``A^t - D`` with ``D`` the indicator of non-sink vertices on the diagonal.

    Accepts any non-negative integer matrix, so multigraphs can be fed in.
    """
    n = len(adj)
    out = [[adj[j][i] for j in range(n)] for i in range(n)]
    for i in range(n):
        if any(adj[i]):
            out[i][i] -= 1
    return out


def k0_matrix(g: Graph) -> IntMatrix:
    return k0_matrix_from_adjacency(g.rows)


def k0(g: Graph) -> AbelianGroup:
    return cokernel(k0_matrix(g))


def det_diagnostic(adj: Sequence[Sequence[int]]) -> Optional[int]:
    """``det(I - A^t)`` for graphs without sinks; ``None`` otherwise."""
    n = len(adj)
    if n == 0 or any(not any(r) for r in adj):
        return None
    return determinant([[int(i == j) - adj[j][i] for j in range(n)] for i in range(n)])


# -- unit class ----------------------------------------------------------------


def _automorphisms(moduli: Tuple[int, ...]):
    """All automorphisms of Z_{m1} x ... as tuples of generator images."""
    elements = list(product(*(range(m) for m in moduli)))
    candidates = []
    for mi in moduli:
        candidates.append([x for x in elements
                           if all((mi * xk) % mk == 0 for xk, mk in zip(x, moduli))])
    for imgs in product(*candidates):
        image = {_apply(imgs, a, moduli) for a in elements}
        if len(image) == len(elements):
            yield imgs


def _apply(imgs, a, moduli) -> Tuple[int, ...]:
    return tuple(sum(ai * img[k] for ai, img in zip(a, imgs)) % mk
                 for k, mk in enumerate(moduli))


@lru_cache(maxsize=None)
def _aut_list(moduli: Tuple[int, ...]):
    return tuple(_automorphisms(moduli))


def aut_orbit_min(coords: Tuple[int, ...], moduli: Tuple[int, ...]) -> Optional[Tuple[int, ...]]:
    order = 1
    for m in moduli:
        order *= m
    if order > MAX_AUT_ORDER:
        return None
    if not moduli:
        return ()
    return min(_apply(imgs, coords, moduli) for imgs in _aut_list(moduli))


def _bar(r: int, m: int) -> str:
    return f"{r} mod {m}"


@dataclass(frozen=True)
class CanonicalUnit:
    """Basis-independent part of the pointed group ``(K0, [1])``.

    ``free_gcd`` is the gcd of the free coordinates (``None`` for finite
    groups); ``orbit_min`` the least point of the automorphism orbit (finite
    groups only).
    """

    group: AbelianGroup
    quotient: AbelianGroup
    free_gcd: Optional[int]
    orbit_min: Optional[Tuple[int, ...]]

    def __str__(self) -> str:
        g = self.group
        if g.is_trivial:
            return "0"
        if g.free_rank == 1 and not g.torsion:
            return str(self.free_gcd)
        if g.is_finite and self.orbit_min is not None:
            parts = [_bar(r, m) for r, m in zip(self.orbit_min, g.torsion)]
            return parts[0] if len(parts) == 1 else "(" + ", ".join(parts) + ")"
        return f"gcd {self.free_gcd}, coker {self.quotient}"

    def to_json(self) -> dict:
        return {
            "group": self.group.to_json(),
            "quotient": self.quotient.to_json(),
            "free_gcd": self.free_gcd,
            "orbit_min": None if self.orbit_min is None else list(self.orbit_min),
            "text": str(self),
        }

    @classmethod
    def from_json(cls, obj) -> "CanonicalUnit":
        om = obj["orbit_min"]
        return cls(AbelianGroup.from_json(obj["group"]), AbelianGroup.from_json(obj["quotient"]),
                   obj["free_gcd"], None if om is None else tuple(om))


def canonical_unit(m: Sequence[Sequence[int]], v: Sequence[int]) -> CanonicalUnit:
    pe = pointed_cokernel(m, v)
    return _canonical_from(pe)


def _canonical_from(pe: PointedElement) -> CanonicalUnit:
    if pe.group.is_finite:
        return CanonicalUnit(pe.group, pe.quotient, None,
                             aut_orbit_min(pe.torsion_coords, pe.group.torsion))
    g = 0
    for x in pe.free_coords:
        g = gcd(g, x)
    return CanonicalUnit(pe.group, pe.quotient, g, None)


def render_raw(pe: PointedElement) -> str:
    parts = [str(c) if m == 0 else _bar(c, m) for c, m in zip(pe.coords, pe.moduli)]
    if not parts:
        return "0"
    return parts[0] if len(parts) == 1 else "(" + ", ".join(parts) + ")"


@dataclass(frozen=True)
class UnitClass:
    raw: PointedElement
    canonical: CanonicalUnit

    def __str__(self) -> str:
        return str(self.canonical)


def unit_class(g: Graph) -> UnitClass:
    pe = pointed_cokernel(k0_matrix(g), [1] * g.n)
    return UnitClass(pe, _canonical_from(pe))


# -- socle ---------------------------------------------------------------------


def count_paths_to(g: Graph, u: int) -> float:
    """Number of paths ending at sink ``u`` (trivial path included), or ``inf``."""
    if u not in sinks(g):
        raise NotASinkError(f"vertex {u} is not a sink")
    reach = {v for v in g.vertices if u in tree(g, [v])}
    if reach & cycle_vertices(g):
        return INF
    memo: Dict[int, int] = {u: 1}

    def from_v(v: int) -> int:  # paths v -> u
        if v not in memo:
            memo[v] = sum(from_v(w) for w in g.successors(v) if w in reach)
        return memo[v]

    return sum(from_v(v) for v in reach)


def _size_str(s: float) -> str:
    return "inf" if s == INF else str(int(s))


@dataclass(frozen=True, order=True)
class SocleDescriptor:
    sizes: Tuple[float, ...] = ()

    def __str__(self) -> str:
        if not self.sizes:
            return "0"
        out = []
        for s in sorted(set(self.sizes)):
            mult = self.sizes.count(s)
            term = "K" if s == 1 else f"M_{_size_str(s)}(K)"
            out.append(term if mult == 1 else f"{term}^{mult}")
        return " + ".join(out)

    def to_json(self) -> list:
        return [_size_str(s) for s in self.sizes]

    @classmethod
    def from_json(cls, obj) -> "SocleDescriptor":
        return cls(tuple(INF if s == "inf" else int(s) for s in obj))


def socle(g: Graph) -> SocleDescriptor:
    return SocleDescriptor(tuple(sorted(count_paths_to(g, u) for u in sorted(sinks(g)))))


def quotient_mod_socle(g: Graph) -> Graph:
    return quotient_graph(g, saturated_closure(g, sinks(g)))


# -- ideal lattice data --------------------------------------------------------


def iln(g: Graph) -> int:
    return sum(1 for c in connected_components(g)
               if len(c) == 1 and g.edge(min(c), min(c)))


def hs(g: Graph) -> int:
    if g.n == 0:
        return 0
    return len(hereditary_saturated_subsets(g)) - 2


def l_mod_i(g: Graph) -> Optional[Graph]:
    if g.n == 0:
        return None
    hsets = hereditary_saturated_subsets(g)
    if len(hsets) != 3:
        return None
    (h,) = [x for x in hsets if x and x != g.vertices]
    return quotient_graph(g, h)


def mt3_plus_l(g: Graph) -> bool:
    return condition_MT3(g) and condition_L(g)


def purely_infinite_simple(g: Graph) -> bool:
    """Graph test: HS = 0, Condition (L), every vertex reaches a cycle."""
    cyc = cycle_vertices(g)
    return (g.n > 0 and hs(g) == 0 and condition_L(g)
            and all(tree(g, [v]) & cyc for v in g.vertices))


# -- the full tuple ------------------------------------------------------------

Resolver = Callable[[Graph], str]


def default_resolver(g: Graph) -> str:
    if g.n == 0:
        return EMPTY_REF
    return "graph:" + canonical_form(g).wire()


@dataclass(frozen=True)
class InvariantTuple:
    k0: AbelianGroup
    soc: SocleDescriptor
    l_mod_soc: str
    unit: UnitClass
    iln: int
    hs: int
    l_mod_i: Optional[str]
    mt3_plus_l: bool
    diagnostics: Dict[str, object] = field(default_factory=dict, compare=False, hash=False)

    def canonical_key(self) -> tuple:
        """Fields compared in canonical mode (independent of Smith transforms)."""
        c = self.unit.canonical
        return (self.k0.key, self.soc.sizes, self.l_mod_soc,
                (c.quotient.key, c.free_gcd, c.orbit_min),
                self.iln, self.hs, self.l_mod_i, self.mt3_plus_l)

    def raw_key(self) -> tuple:
        """Canonical key plus the raw unit coordinates."""
        return self.canonical_key() + (self.unit.raw.coords,)

    def to_json(self) -> dict:
        out = {
            "k0": self.k0.to_json(),
            "soc": self.soc.to_json(),
            "l_mod_soc": self.l_mod_soc,
            "unit_raw": self.unit.raw.to_json(),
            "unit_canonical": self.unit.canonical.to_json(),
            "iln": self.iln,
            "hs": self.hs,
            "l_mod_i": self.l_mod_i,
            "mt3_plus_l": self.mt3_plus_l,
        }
        out.update(self.diagnostics)
        return out

    @classmethod
    def from_json(cls, obj) -> "InvariantTuple":
        diag = {k: obj[k] for k in DIAGNOSTIC_FIELDS if k in obj}
        return cls(
            AbelianGroup.from_json(obj["k0"]),
            SocleDescriptor.from_json(obj["soc"]),
            obj["l_mod_soc"],
            UnitClass(PointedElement.from_json(obj["unit_raw"]),
                      CanonicalUnit.from_json(obj["unit_canonical"])),
            obj["iln"], obj["hs"], obj["l_mod_i"], obj["mt3_plus_l"], diag,
        )


DIAGNOSTIC_FIELDS = ("condition_L", "condition_MT3", "cofinal", "condition_NE", "det")

FIELD_ORDER = ("k0", "soc", "l_mod_soc", "unit", "iln", "hs", "l_mod_i", "mt3_plus_l")


def field_values(t: InvariantTuple) -> List[Tuple[str, object]]:
    """Canonical-mode value per field, in the order the invariants are applied."""
    key = t.canonical_key()
    return list(zip(FIELD_ORDER, key))


def signature(g: Graph, resolver: Optional[Resolver] = None) -> InvariantTuple:
    resolve = resolver or default_resolver
    closure = saturated_closure(g, sinks(g))
    if not closure:
        lms = SELF
    else:
        lms = resolve(quotient_graph(g, closure))
    li = l_mod_i(g)
    diag = {
        "condition_L": condition_L(g),
        "condition_MT3": condition_MT3(g),
        "cofinal": cofinal(g),
        "condition_NE": condition_NE(g),
        "det": det_diagnostic(g.rows),
    }
    return InvariantTuple(
        k0=k0(g),
        soc=socle(g),
        l_mod_soc=lms,
        unit=unit_class(g),
        iln=iln(g),
        hs=hs(g),
        l_mod_i=None if li is None else resolve(li),
        mt3_plus_l=mt3_plus_l(g),
        diagnostics=diag,
    )

