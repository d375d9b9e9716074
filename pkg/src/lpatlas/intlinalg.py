"""Exact integer linear algebra: Smith normal form, cokernels, pointed cokernels.

Matrices are plain lists of lists of Python ints.  The Smith form is computed
by elimination with a pinned pivot rule (smallest non-zero absolute value,
ties broken by row then column) so that the transforms, and therefore the
unit coordinates derived from them, are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import List, Sequence, Tuple

from .errors import DimensionMismatchError, InputError

IntMatrix = List[List[int]]


def identity_matrix(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    if not a:
        return []
    inner = len(b)
    if any(len(r) != inner for r in a):
        raise DimensionMismatchError("inner dimensions differ")
    cols = len(b[0]) if b else 0
    return [[sum(r[k] * b[k][j] for k in range(inner)) for j in range(cols)] for r in a]


def matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> List[int]:
    return [sum(x * y for x, y in zip(r, v)) for r in a]


def transpose(a: Sequence[Sequence[int]]) -> IntMatrix:
    return [list(c) for c in zip(*a)]


def determinant(a: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free elimination; exact for integer input."""
    n = len(a)
    if any(len(r) != n for r in a):
        raise DimensionMismatchError("determinant of a non-square matrix")
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def minors_gcd(a: Sequence[Sequence[int]], k: int) -> int:
    """gcd of all k x k minors (0 if there are none or all vanish)."""
    rows, cols = len(a), len(a[0]) if a else 0
    g = 0
    for rs in combinations(range(rows), k):
        for cs in combinations(range(cols), k):
            g = gcd(g, determinant([[a[i][j] for j in cs] for i in rs]))
    return g


# -- Smith normal form ---------------------------------------------------------


@dataclass(frozen=True)
class SmithDecomposition:
    d: Tuple[int, ...]
    p: Tuple[Tuple[int, ...], ...]
    q: Tuple[Tuple[int, ...], ...]
    rows: int
    cols: int

    def diagonal_matrix(self) -> IntMatrix:
        out = [[0] * self.cols for _ in range(self.rows)]
        for k, x in enumerate(self.d):
            out[k][k] = x
        return out


def _check_rect(m: Sequence[Sequence[int]]) -> Tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if any(len(r) != cols for r in m):
        raise InputError("matrix rows have different lengths")
    return rows, cols


def smith_normal_form(m: Sequence[Sequence[int]]) -> SmithDecomposition:
    rows, cols = _check_rect(m)
    a = [[int(x) for x in r] for r in m]
    p = identity_matrix(rows)
    q = identity_matrix(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        p[i], p[j] = p[j], p[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in q:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, c):  # row dst += c * row src
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        p[dst] = [x + c * y for x, y in zip(p[dst], p[src])]

    def add_col(src, dst, c):  # col dst += c * col src
        for r in a:
            r[dst] += c * r[src]
        for r in q:
            r[dst] += c * r[src]

    diag = []
    for t in range(min(rows, cols)):
        while True:
            entries = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols)
                       if a[i][j] != 0]
            if not entries:
                break
            _, pi, pj = min(entries)
            swap_rows(t, pi)
            swap_cols(t, pj)
            piv = a[t][t]
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // piv))
                    done = done and a[i][t] == 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // piv))
                    done = done and a[t][j] == 0
            if not done:
                continue
            # divisibility bump: pull an offending row into the pivot row
            bad = next((i for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % piv), None)
            if bad is None:
                break
            add_row(bad, t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            p[t] = [-x for x in p[t]]
        diag.append(a[t][t])
    return SmithDecomposition(tuple(diag), tuple(map(tuple, p)), tuple(map(tuple, q)),
                              rows, cols)


# -- abelian groups ------------------------------------------------------------


@dataclass(frozen=True, order=True)
class AbelianGroup:
    free_rank: int
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise InputError("negative free rank")
        for k, t in enumerate(self.torsion):
            if t < 2:
                raise InputError(f"torsion coefficient {t} < 2")
            if k and t % self.torsion[k - 1]:
                raise InputError(f"torsion {self.torsion} is not a divisibility chain")

    @property
    def key(self) -> Tuple[int, Tuple[int, ...]]:
        return self.free_rank, self.torsion

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> float:
        if self.free_rank:
            return float("inf")
        out = 1
        for t in self.torsion:
            out *= t
        return out

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        k = 0
        while k < len(self.torsion):
            t = self.torsion[k]
            run = 1
            while k + run < len(self.torsion) and self.torsion[k + run] == t:
                run += 1
            parts.append(f"Z_{t}" if run == 1 else f"Z_{t}^{run}")
            k += run
        return " x ".join(parts) or "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion), "text": str(self)}

    @classmethod
    def from_json(cls, obj) -> "AbelianGroup":
        return cls(obj["free_rank"], tuple(obj["torsion"]))


def _group_from_diagonal(d: Sequence[int], rows: int) -> AbelianGroup:
    free = sum(1 for x in d if x == 0) + (rows - len(d))
    return AbelianGroup(free, tuple(x for x in d if x > 1))


def cokernel(m: Sequence[Sequence[int]]) -> AbelianGroup:
    """``Z^rows / image(m)``."""
    snf = smith_normal_form(m)
    return _group_from_diagonal(snf.d, snf.rows)


@dataclass(frozen=True)
class PointedElement:
    """An element of a cokernel in Smith coordinates.

    ``moduli`` lists the retained slots: ``0`` for a free slot, ``d > 1`` for a
    torsion slot.  Free slots come first, as in the group's printed form.
    """

    coords: Tuple[int, ...]
    moduli: Tuple[int, ...]
    group: AbelianGroup
    quotient: AbelianGroup

    @property
    def free_coords(self) -> Tuple[int, ...]:
        return tuple(c for c, d in zip(self.coords, self.moduli) if d == 0)

    @property
    def torsion_coords(self) -> Tuple[int, ...]:
        return tuple(c for c, d in zip(self.coords, self.moduli) if d)

    def __str__(self) -> str:
        parts = [str(c) if d == 0 else f"{c}~" for c, d in zip(self.coords, self.moduli)]
        return "(" + ", ".join(parts) + ")"

    def to_json(self) -> dict:
        return {"coords": list(self.coords), "moduli": list(self.moduli),
                "group": self.group.to_json(), "quotient": self.quotient.to_json()}

    @classmethod
    def from_json(cls, obj) -> "PointedElement":
        return cls(tuple(obj["coords"]), tuple(obj["moduli"]),
                   AbelianGroup.from_json(obj["group"]), AbelianGroup.from_json(obj["quotient"]))


def pointed_cokernel(m: Sequence[Sequence[int]], v: Sequence[int]) -> PointedElement:
    rows, cols = _check_rect(m)
    if len(v) != rows:
        raise DimensionMismatchError(f"vector has length {len(v)}, matrix has {rows} rows")
    snf = smith_normal_form(m)
    w = matvec(snf.p, v)
    free, tors = [], []
    for k in range(rows):
        dk = snf.d[k] if k < len(snf.d) else 0
        if dk == 0:
            free.append(w[k])
        elif dk > 1:
            tors.append((w[k] % dk, dk))
    # p is only determined up to unimodular factors; fix the sign of the free part
    first = next((x for x in free if x), 0)
    if first < 0:
        free = [-x for x in free]
    coords = tuple(free) + tuple(c for c, _ in tors)
    moduli = (0,) * len(free) + tuple(d for _, d in tors)
    augmented = [list(r) + [x] for r, x in zip(m, v)]
    return PointedElement(coords, moduli, _group_from_diagonal(snf.d, rows), cokernel(augmented))
