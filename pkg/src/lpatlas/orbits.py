"""Binary matrices up to simultaneous row/column permutation.

A matrix is packed into an integer in row-major order with entry (1, 1) as
the most significant bit, so integer order is lexicographic order of the
row-major entry sequence.  The orbit representative is the minimum.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Dict, List, Sequence, Tuple

from .errors import SizeLimitError, SizeMismatchError
from .graph import Graph

Permutation = Tuple[int, ...]  # p[i - 1] is the image of vertex i

MAX_N = 4
OVERRIDE_MAX_N = 5


def identity(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def compose(q: Permutation, p: Permutation) -> Permutation:
    """``q ∘ p``: apply ``p`` first."""
    return tuple(q[p[i] - 1] for i in range(len(p)))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for i, pi in enumerate(p, start=1):
        inv[pi - 1] = i
    return tuple(inv)


def transposition(n: int, i: int, j: int) -> Permutation:
    p = list(range(1, n + 1))
    p[i - 1], p[j - 1] = j, i
    return tuple(p)


def act(m: Graph, p: Sequence[int]) -> Graph:
    """Relabel vertex ``i`` as ``p(i)``.

    ``act(act(m, p), q) == act(m, compose(q, p))``.
    """
    p = tuple(p)
    if len(p) != m.n or sorted(p) != list(range(1, m.n + 1)):
        raise SizeMismatchError(f"{p} is not a permutation of 1..{m.n}")
    new = [[0] * m.n for _ in range(m.n)]
    for i in range(m.n):
        for j in range(m.n):
            new[p[i] - 1][p[j] - 1] = m.rows[i][j]
    return Graph(m.n, tuple(map(tuple, new)))


# -- integer packing -----------------------------------------------------------


def encode(m: Graph) -> int:
    code = 0
    for r in m.rows:
        for a in r:
            code = (code << 1) | a
    return code


def decode(code: int, n: int) -> Graph:
    bits = [(code >> (n * n - 1 - k)) & 1 for k in range(n * n)]
    return Graph(n, tuple(tuple(bits[i * n:(i + 1) * n]) for i in range(n)))


@lru_cache(maxsize=None)
def _position_maps(n: int) -> Tuple[Tuple[int, ...], ...]:
    """For each permutation, the bit shift each source bit moves to."""
    maps = []
    for p in permutations(range(n)):
        target = [0] * (n * n)
        for i in range(n):
            for j in range(n):
                src = n * n - 1 - (i * n + j)
                dst = n * n - 1 - (p[i] * n + p[j])
                target[src] = dst
        maps.append(tuple(target))
    return tuple(maps)


def _permute_code(code: int, target: Tuple[int, ...]) -> int:
    out = 0
    while code:
        low = code & -code
        out |= 1 << target[low.bit_length() - 1]
        code ^= low
    return out


def orbit_codes(code: int, n: int) -> set:
    return {_permute_code(code, t) for t in _position_maps(n)}


def canonical_code(code: int, n: int) -> int:
    return min(_permute_code(code, t) for t in _position_maps(n))


def canonical_form(m: Graph) -> Graph:
    """Lexicographically least conjugate of ``m``."""
    if m.n == 0:
        return m
    return decode(canonical_code(encode(m), m.n), m.n)


def isomorphic(a: Graph, b: Graph) -> bool:
    return a.n == b.n and canonical_form(a) == canonical_form(b)


def _check_n(n: int, allow_large: bool) -> None:
    limit = OVERRIDE_MAX_N if allow_large else MAX_N
    if not 1 <= n <= limit:
        raise SizeLimitError(f"n={n} outside 1..{limit}")


@dataclass(frozen=True)
class Orbit:
    representative: Graph
    size: int

    @property
    def stabilizer_order(self) -> int:
        return math.factorial(self.representative.n) // self.size


@lru_cache(maxsize=None)
def _orbits(n: int) -> Tuple[Tuple[int, int], ...]:
    total = 1 << (n * n)
    seen = bytearray(total)
    found = []
    for code in range(total):
        if seen[code]:
            continue
        orb = orbit_codes(code, n)
        for c in orb:
            seen[c] = 1
        # ascending scan: the first unseen code is the orbit minimum
        found.append((code, len(orb)))
    return tuple(found)


def orbits(n: int, allow_large: bool = False) -> List[Orbit]:
    _check_n(n, allow_large)
    return [Orbit(decode(c, n), size) for c, size in _orbits(n)]


def orbit_representatives(n: int, allow_large: bool = False) -> List[Graph]:
    """One canonical matrix per isomorphism class of n-vertex graphs, sorted."""
    return [o.representative for o in orbits(n, allow_large)]


# -- Burnside ------------------------------------------------------------------


def cycle_type(p: Sequence[int]) -> Tuple[int, ...]:
    seen = set()
    lengths = []
    for start in range(1, len(p) + 1):
        if start in seen:
            continue
        k, v = 0, start
        while v not in seen:
            seen.add(v)
            v = p[v - 1]
            k += 1
        lengths.append(k)
    return tuple(sorted(lengths, reverse=True))


def cycle_type_label(ct: Tuple[int, ...]) -> str:
    """Label of the standard representative, e.g. (2, 2) -> '(12)(34)'."""
    parts, v = [], 1
    for length in ct:
        if length > 1:
            parts.append("(" + "".join(str(v + k) for k in range(length)) + ")")
        v += length
    return "".join(parts) or "1"


def fixed_matrix_count(p: Sequence[int]) -> int:
    """|X_g|: a matrix is fixed iff it is constant on the cycles of g on positions."""
    n = len(p)
    seen = set()
    cycles = 0
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if (i, j) in seen:
                continue
            cycles += 1
            a, b = i, j
            while (a, b) not in seen:
                seen.add((a, b))
                a, b = p[a - 1], p[b - 1]
    return 2 ** cycles


@dataclass(frozen=True)
class ConjugacyClassTerm:
    cycle_type: Tuple[int, ...]
    label: str
    size: int
    fixed: int


@dataclass(frozen=True)
class BurnsideCount:
    n: int
    group_order: int
    classes: Tuple[ConjugacyClassTerm, ...]

    @property
    def total_fixed(self) -> int:
        return sum(c.size * c.fixed for c in self.classes)

    @property
    def count(self) -> int:
        q, r = divmod(self.total_fixed, self.group_order)
        assert r == 0
        return q

    def formula(self) -> str:
        terms = " + ".join(
            f"{c.size}*{c.fixed}" if c.size > 1 else str(c.fixed) for c in self.classes
        )
        return f"({terms})/{self.group_order} = {self.count}"


def burnside_breakdown(n: int, allow_large: bool = False) -> BurnsideCount:
    _check_n(n, allow_large)
    sizes: Counter = Counter()
    fixed: Dict[Tuple[int, ...], int] = {}
    for p in permutations(range(1, n + 1)):
        ct = cycle_type(p)
        sizes[ct] += 1
        f = fixed_matrix_count(p)
        # all members of a conjugacy class fix the same number of matrices
        assert fixed.setdefault(ct, f) == f
    # by number of moved points, then longest cycle: 1, (12), (123), (12)(34), (1234)
    order = sorted(sizes, key=lambda c: (sum(x for x in c if x > 1), max(c)))
    terms = tuple(ConjugacyClassTerm(ct, cycle_type_label(ct), sizes[ct], fixed[ct])
                  for ct in order)
    return BurnsideCount(n, math.factorial(n), terms)


def burnside_count(n: int, allow_large: bool = False) -> int:
    return burnside_breakdown(n, allow_large).count
