"""Render the atlas as one document per reference table (markdown, csv or json).

Rows are the atlas representatives anchored to the table, in row order; the
columns are the invariants the table prints, every cell filled.  Output is a
pure function of the atlas, so repeated runs are byte identical.
"""

from __future__ import annotations

import csv
import io
import json
import os
from typing import Dict, List, Optional

from . import reference
from .atlas import Atlas
from .errors import UnsupportedFormatError
from .invariants import EMPTY_REF, SELF, render_raw, unit_class

FORMATS = ("md", "csv", "json")

HEADERS = {
    "matrix": "E",
    "k0": "K0",
    "soc": "Soc",
    "l_mod_soc": "L/Soc",
    "unit": "[1] raw",
    "unit_canonical": "[1] canonical",
    "iln": "ILN",
    "hs": "HS",
    "l_mod_i": "L/I",
    "mt3_plus_l": "MT3+L",
    "algebra": "L_K(E)",
    "class": "class",
}


def _caption(table_id: str) -> str:
    if table_id == "1":
        return "n = 1"
    if table_id == "2":
        return "n = 2"
    has_soc, (free, torsion) = reference.BUCKETS[table_id]
    parts = []
    if free:
        parts.append("Z" if free == 1 else f"Z^{free}")
    parts += [f"Z_{t}" for t in torsion]
    k0 = " x ".join(parts) or "0"
    return f"n = 3, {'nonzero' if has_soc else 'zero'} socle, K0 = {k0}"


def columns(table_id: str) -> List[str]:
    cols = ["matrix"] + list(reference.COLUMNS[table_id])
    if "unit" in cols:
        cols.insert(cols.index("unit") + 1, "unit_canonical")
    return cols + ["class"]


def quotient_cell(atlas: Atlas, ref: Optional[str]) -> str:
    if ref is None:
        return ""
    if ref == SELF:
        return "L"
    if ref == EMPTY_REF:
        return "0"
    name = atlas.class_name(ref)
    if name is not None and name.is_named:
        return str(name)
    return f"L_K({ref})"


def table_rows(atlas: Atlas, table_id: str) -> List[Dict[str, str]]:
    prefix = f"table-{table_id}/row-"
    found = []
    for cls in atlas.classes:
        for g, anchor in zip(cls.representatives, cls.anchors):
            if anchor and anchor.startswith(prefix):
                found.append((int(anchor[len(prefix):]), g, cls))
    rows = []
    for _, g, cls in sorted(found, key=lambda t: t[0]):
        inv = cls.invariants
        cells = {
            "matrix": g.wire(),
            "k0": str(inv.k0),
            "soc": str(inv.soc),
            "l_mod_soc": quotient_cell(atlas, inv.l_mod_soc),
            "unit": render_raw(_own_unit(atlas, g, cls)),
            "unit_canonical": str(inv.unit.canonical),
            "iln": str(inv.iln),
            "hs": str(inv.hs),
            "l_mod_i": quotient_cell(atlas, inv.l_mod_i),
            "mt3_plus_l": "T" if inv.mt3_plus_l else "F",
            "algebra": "---" if cls.algebra_name is None else cls.algebra_name.cell(),
            "class": cls.id,
        }
        rows.append({c: cells[c] for c in columns(table_id)})
    return rows


def _own_unit(atlas: Atlas, g, cls):
    # raw coordinates belong to the matrix, not the class
    if g == cls.representatives[0]:
        return cls.invariants.unit.raw
    return unit_class(g).raw


def render(atlas: Atlas, table_id: str, fmt: str) -> str:
    cols = columns(table_id)
    rows = table_rows(atlas, table_id)
    if fmt == "md":
        lines = [f"# Table {table_id}: {_caption(table_id)}", "",
                 "| " + " | ".join(HEADERS[c] for c in cols) + " |",
                 "|" + "|".join("---" for _ in cols) + "|"]
        for r in rows:
            lines.append("| " + " | ".join(r[c] or " " for c in cols) + " |")
        return "\n".join(lines) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()
    if fmt == "json":
        doc = {"table": table_id, "caption": _caption(table_id), "columns": cols, "rows": rows}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    raise UnsupportedFormatError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")


def emit_tables(atlas: Atlas, fmt: str = "md") -> Dict[str, str]:
    """File name -> document text, for every table the atlas covers."""
    if fmt not in FORMATS:
        raise UnsupportedFormatError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
    docs = {}
    for t in reference.TABLE_IDS:
        if t == "2" and atlas.max_n < 2 or t.startswith("3") and atlas.max_n < 3:
            continue
        docs[f"table-{t}.{fmt}"] = render(atlas, t, fmt)
    if fmt == "json":
        docs["atlas.json"] = atlas.dumps()
    return docs


def write_tables(atlas: Atlas, fmt: str, out_dir: str) -> List[str]:
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    for name, text in emit_tables(atlas, fmt).items():
        path = os.path.join(out_dir, name)
        with open(path, "w", newline="") as fh:
            fh.write(text)
        paths.append(path)
    return paths
