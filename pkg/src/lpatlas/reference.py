"""Reference classification tables: one representative graph per printed row.

Each table lists its graphs in printed order.  Matrices were transcribed from
the drawn graphs; for triangle drawings vertex 1 is bottom-left, 2 the top and
3 bottom-right, for rows of three vertex numbering runs left to right.

``COLUMNS`` holds the invariant columns each table prints; the emitted tables
reproduce those columns (filled for every row).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .graph import Graph, from_matrix


@dataclass(frozen=True)
class ReferenceRow:
    table: str
    row: int
    graph: Graph

    @property
    def anchor(self) -> str:
        return f"table-{self.table}/row-{self.row}"


def _g(*rows: str) -> Graph:
    return from_matrix([[int(c) for c in r] for r in rows])


_TABLES: Dict[str, List[Graph]] = {
    "1": [
        _g("0"),
        _g("1"),
    ],
    "2": [
        _g("00", "00"),
        _g("01", "00"),
        _g("10", "00"),
        _g("10", "10"),
        _g("11", "00"),
        _g("10", "01"),
        _g("10", "11"),
        _g("11", "11"),
    ],
    # nonzero socle, K0 = Z
    "3.1": [
        _g("010", "000", "010"),
        _g("011", "000", "010"),
        _g("110", "000", "010"),
        _g("110", "000", "110"),
        _g("110", "110", "000"),
        _g("111", "000", "110"),
        _g("110", "000", "111"),
        _g("110", "111", "000"),
        _g("111", "000", "111"),
    ],
    # nonzero socle, K0 = Z^2
    "3.2": [
        _g("000", "001", "000"),
        _g("000", "101", "000"),
        _g("000", "010", "010"),
        _g("000", "011", "000"),
        _g("100", "000", "010"),
        _g("100", "101", "000"),
        _g("000", "111", "000"),
        _g("000", "011", "001"),
        _g("100", "011", "000"),
        _g("100", "111", "000"),
        _g("110", "000", "011"),
    ],
    # nonzero socle, K0 = Z^3
    "3.3": [
        _g("000", "000", "000"),
        _g("000", "000", "001"),
        _g("000", "010", "001"),
    ],
    # nonzero socle, K0 = Z x Z_2
    "3.4": [
        _g("011", "000", "110"),
        _g("111", "000", "010"),
    ],
    # zero socle, K0 = 0
    "3.5": [
        _g("110", "101", "101"),
        _g("101", "101", "101"),
        _g("111", "111", "101"),
    ],
    # zero socle, K0 = Z
    "3.6": [
        _g("010", "010", "010"),
        _g("100", "101", "100"),
        _g("110", "010", "010"),
        _g("100", "101", "101"),
        _g("110", "110", "001"),
        _g("100", "101", "111"),
        _g("100", "111", "101"),
        _g("110", "111", "001"),
        _g("101", "111", "101"),
        _g("100", "111", "111"),
        _g("110", "111", "011"),
    ],
    # zero socle, K0 = Z^2
    "3.7": [
        _g("100", "010", "010"),
        _g("100", "101", "001"),
        _g("100", "010", "011"),
        _g("110", "010", "011"),
        _g("100", "111", "001"),
    ],
    # zero socle, K0 = Z^3
    "3.8": [
        _g("100", "010", "001"),
    ],
    # zero socle, K0 = Z_2
    "3.9": [
        _g("101", "101", "111"),
        _g("111", "111", "111"),
    ],
    # zero socle, K0 = Z x Z_2
    "3.10": [
        _g("100", "101", "110"),
        _g("100", "100", "111"),
    ],
    # zero socle, K0 = Z_2^2
    "3.11": [
        _g("011", "101", "110"),
    ],
    # zero socle, K0 = Z_3
    "3.12": [
        _g("111", "101", "111"),
    ],
    # zero socle, K0 = Z_4
    "3.13": [
        _g("111", "101", "110"),
    ],
}

TABLE_IDS: Tuple[str, ...] = tuple(_TABLES)

COLUMNS: Dict[str, Tuple[str, ...]] = {
    "1": ("algebra",),
    "2": ("k0", "soc", "hs", "algebra"),
    "3.1": ("soc", "l_mod_soc", "unit", "algebra"),
    "3.2": ("soc", "l_mod_soc", "iln", "algebra"),
    "3.3": ("soc", "algebra"),
    "3.4": ("l_mod_soc", "algebra"),
    "3.5": ("algebra",),
    "3.6": ("unit", "iln", "hs", "l_mod_i", "mt3_plus_l", "algebra"),
    "3.7": ("unit", "iln", "algebra"),
    "3.8": ("algebra",),
    "3.9": ("unit", "algebra"),
    "3.10": ("unit", "algebra"),
    "3.11": ("algebra",),
    "3.12": ("algebra",),
    "3.13": ("algebra",),
}

# order-three buckets: (socle non-zero, K0 as (free rank, torsion))
BUCKETS: Dict[str, Tuple[bool, Tuple[int, Tuple[int, ...]]]] = {
    "3.1": (True, (1, ())),
    "3.2": (True, (2, ())),
    "3.3": (True, (3, ())),
    "3.4": (True, (1, (2,))),
    "3.5": (False, (0, ())),
    "3.6": (False, (1, ())),
    "3.7": (False, (2, ())),
    "3.8": (False, (3, ())),
    "3.9": (False, (0, (2,))),
    "3.10": (False, (1, (2,))),
    "3.11": (False, (0, (2, 2))),
    "3.12": (False, (0, (3,))),
    "3.13": (False, (0, (4,))),
}


def table(table_id: str) -> List[ReferenceRow]:
    return [ReferenceRow(table_id, k, g) for k, g in enumerate(_TABLES[table_id], start=1)]


def all_rows() -> List[ReferenceRow]:
    return [r for t in TABLE_IDS for r in table(t)]


def row(table_id: str, k: int) -> ReferenceRow:
    return table(table_id)[k - 1]


def bucket_of(has_socle: bool, k0_key) -> Optional[str]:
    for t, key in BUCKETS.items():
        if key == (has_socle, k0_key):
            return t
    return None
