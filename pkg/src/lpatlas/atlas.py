"""The atlas: one class per isomorphism class of algebras for graphs with n <= 3.

Classes are anchored by graph moves.  For each size the orbit
representatives are swept by the shift reduction, every kept representative
opens a class, and the curated merge records join classes across sizes.
Invariants are computed for every representative and used as a check: merged
representatives must agree on them, distinct classes must differ in at least
one of them (or in a curated raw-coordinate discriminator).
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from typing import Dict, List, Optional, Sequence, Tuple

from . import reference
from .errors import (
    EmptyGraphError,
    InputError,
    InternalInconsistency,
    NoMatchError,
    SizeLimitError,
    TooLargeError,
)
from .graph import Graph, from_matrix, from_wire
from .invariants import (
    EMPTY_REF,
    InvariantTuple,
    default_resolver,
    field_values,
    purely_infinite_simple,
    render_raw,
    signature,
    unit_class,
)
from .naming import AlgebraDescriptor, Namer, build_pis_table, parse_name
from .orbits import canonical_form, orbit_representatives
from .shift import explore, preferred_order, reduce, shift_components

VERSION = 1
MAX_ATLAS_N = 3


# -- curated data --------------------------------------------------------------


@dataclass(frozen=True)
class MergeRecord:
    id: str
    members: Tuple[Graph, ...]
    anchor: str
    basis: str

    def to_json(self) -> dict:
        return {"id": self.id, "members": [g.wire() for g in self.members],
                "anchor": self.anchor, "basis": self.basis}


@dataclass(frozen=True)
class SeparationRecord:
    members: Tuple[Graph, Graph]
    anchor: str
    field: str
    printed: Tuple[str, str]
    basis: str

    def to_json(self) -> dict:
        return {"members": [g.wire() for g in self.members], "anchor": self.anchor,
                "field": self.field, "printed": list(self.printed), "basis": self.basis}


@dataclass
class Curated:
    merges: List[MergeRecord]
    class_names: Dict[Graph, AlgebraDescriptor]
    pis_entries: List[Tuple[List[List[int]], str]]
    separations: List[SeparationRecord]

    def __post_init__(self):
        self.pis_table = build_pis_table(self.pis_entries)


def _canon(wire: str) -> Graph:
    return canonical_form(from_wire(wire))


def curated_from_json(obj) -> Curated:
    merges = [MergeRecord(m["id"], tuple(_canon(w) for w in m["members"]), m["anchor"], m["basis"])
              for m in obj["merges"]]
    names = {_canon(c["member"]): parse_name(c["name"]) for c in obj["class_names"]}
    pis = [(e["adjacency"], e["name"]) for e in obj["purely_infinite_names"]]
    seps = [SeparationRecord(tuple(_canon(w) for w in s["members"]), s["anchor"], s["field"],
                             tuple(s["printed"]), s["basis"])
            for s in obj["separations"]]
    return Curated(merges, names, pis, seps)


def load_curated() -> Curated:
    text = resources.files("lpatlas").joinpath("data/curated.json").read_text()
    return curated_from_json(json.loads(text))


# -- classes -------------------------------------------------------------------


def _anchor_sort_key(anchor: Optional[str]):
    if anchor is None:
        return (len(reference.TABLE_IDS), 0)
    table, row = anchor[len("table-"):].split("/row-")
    return (reference.TABLE_IDS.index(table), int(row))


@dataclass
class AtlasClass:
    id: str
    representatives: List[Graph]
    anchors: List[Optional[str]]
    invariants: InvariantTuple
    algebra_name: Optional[AlgebraDescriptor] = None
    discriminators: List[dict] = field(default_factory=list)

    @property
    def table_anchor(self) -> Optional[str]:
        return next((a for a in self.anchors if a), None)

    @property
    def n(self) -> int:
        return min(g.n for g in self.representatives)

    def bucket(self) -> tuple:
        return (bool(self.invariants.soc.sizes), self.invariants.k0.key)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "representatives": [g.to_lists() for g in self.representatives],
            "anchors": list(self.anchors),
            "invariants": self.invariants.to_json(),
            "algebra_name": None if self.algebra_name is None else str(self.algebra_name),
            "table_anchor": self.table_anchor,
            "discriminators": list(self.discriminators),
        }

    @classmethod
    def from_json(cls, obj) -> "AtlasClass":
        name = obj["algebra_name"]
        return cls(obj["id"], [from_matrix(r) for r in obj["representatives"]], list(obj["anchors"]),
                   InvariantTuple.from_json(obj["invariants"]),
                   None if name is None else parse_name(name), list(obj["discriminators"]))


@dataclass
class Classification:
    class_id: str
    graph: Graph
    canonical: Graph
    representative: Graph
    path: Tuple[Tuple[str, int, int], ...]
    invariants: InvariantTuple

    def to_json(self) -> dict:
        return {
            "class_id": self.class_id,
            "input": self.graph.wire(),
            "canonical": self.canonical.wire(),
            "representative": self.representative.wire(),
            "moves": [list(m) for m in self.path],
            "invariants": self.invariants.to_json(),
        }


class Atlas:
    def __init__(self, max_n: int, curated: Curated):
        self.max_n = max_n
        self.curated = curated
        self.classes: List[AtlasClass] = []
        self.by_id: Dict[str, AtlasClass] = {}
        self.rep_class: Dict[Graph, str] = {}
        self.index: Dict[Graph, str] = {}
        self.report: dict = {}
        self._near: Dict[Graph, Tuple[Graph, tuple]] = {}

    # lookups

    def class_of(self, g: Graph) -> Optional[str]:
        if g.n == 0:
            return EMPTY_REF
        return self.index.get(canonical_form(g))

    def resolver(self, g: Graph) -> str:
        return self.class_of(g) or default_resolver(g)

    def class_name(self, cid: str) -> Optional[AlgebraDescriptor]:
        cls = self.by_id.get(cid)
        if cls is None:
            return None
        for g in cls.representatives:
            if g in self.curated.class_names:
                return self.curated.class_names[g]
        return cls.algebra_name

    @property
    def namer(self) -> Namer:
        return Namer(self.curated.pis_table, self.class_of, self.class_name)

    def named_algebra(self, g: Graph) -> AlgebraDescriptor:
        return self.namer(g)

    # construction helpers

    def _add_representative(self, g: Graph, anchor: Optional[str]) -> str:
        sig = signature(g, self.resolver)
        targets = {self.rep_class[m] for rec in self.curated.merges if g in rec.members
                   for m in rec.members if m in self.rep_class}
        if len(targets) > 1:
            raise InternalInconsistency(f"{g} merges into several classes: {sorted(targets)}")
        if targets:
            cls = self.by_id[targets.pop()]
            if cls.invariants.canonical_key() != sig.canonical_key():
                raise InternalInconsistency(f"merge of {g} into {cls.id} changes the invariants")
            cls.representatives.append(g)
            cls.anchors.append(anchor)
        else:
            cls = AtlasClass(f"n{g.n}:{g.wire()}", [g], [anchor], sig)
            self.classes.append(cls)
            self.by_id[cls.id] = cls
        self.rep_class[g] = cls.id
        return cls.id

    def _index_component(self, comp: Sequence[Graph]) -> None:
        ids = {self.rep_class[g] for g in comp if g in self.rep_class}
        if len(ids) != 1:
            raise InternalInconsistency(f"move component of {comp[0]} meets classes {sorted(ids)}")
        cid = ids.pop()
        for g in comp:
            self.index[g] = cid

    # classification

    def _nearest(self, c: Graph) -> Tuple[Graph, tuple]:
        if c not in self._near:
            paths = explore(c)
            reached = [g for g in paths if g in self.rep_class]
            if not reached:
                raise NoMatchError(f"no representative reachable from {c}")
            ids = {self.rep_class[g] for g in reached}
            if len(ids) != 1:
                raise NoMatchError(f"{c} reaches several classes: {sorted(ids)}")
            best = min(reached, key=lambda g: (len(paths[g]), g))
            self._near[c] = (best, paths[best])
        return self._near[c]

    def classify(self, g: Graph) -> Classification:
        if g.n == 0:
            raise EmptyGraphError("cannot classify the empty graph")
        if g.n > self.max_n:
            raise TooLargeError(f"n={g.n} exceeds the atlas bound {self.max_n}")
        c = canonical_form(g)
        rep, path = self._nearest(c)
        cid = self.rep_class[rep]
        sig = signature(g, self.resolver)
        if sig.canonical_key() != self.by_id[cid].invariants.canonical_key():
            raise InternalInconsistency(f"invariants of {g} disagree with class {cid}")
        return Classification(cid, g, c, rep, path, sig)

    # serialization

    def to_json(self) -> dict:
        return {
            "version": VERSION,
            "max_n": self.max_n,
            "classes": [c.to_json() for c in self.classes],
            "merge_records": [m.to_json() for m in self.curated.merges],
            "separation_records": [s.to_json() for s in self.curated.separations],
            "report": self.report,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"


def atlas_from_json(obj) -> Atlas:
    if obj.get("version") != VERSION:
        raise InputError(f"unsupported atlas version {obj.get('version')!r}")
    atlas = Atlas(obj["max_n"], load_curated())
    for c in obj["classes"]:
        cls = AtlasClass.from_json(c)
        atlas.classes.append(cls)
        atlas.by_id[cls.id] = cls
        for g in cls.representatives:
            atlas.rep_class[canonical_form(g)] = cls.id
    for n in range(1, atlas.max_n + 1):
        for comp in shift_components(orbit_representatives(n)):
            atlas._index_component(comp)
    atlas.report = obj.get("report", {})
    return atlas


def load_atlas(path) -> Atlas:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: not a JSON atlas") from exc
    return atlas_from_json(obj)


# -- building ------------------------------------------------------------------


def _bucket_sizes(graphs) -> Dict[str, int]:
    out: Counter = Counter()
    for g in graphs:
        sig = signature(g)
        out[reference.bucket_of(bool(sig.soc.sizes), sig.k0.key) or "?"] += 1
    return {t: out[t] for t in reference.TABLE_IDS if out[t]}


def discriminate(a: AtlasClass, b: AtlasClass, curated: Curated) -> Optional[dict]:
    """First field (in application order) telling two classes apart."""
    for (name, va), (_, vb) in zip(field_values(a.invariants), field_values(b.invariants)):
        if va != vb:
            return {"field": name, "mode": "canonical"}
    for sep in curated.separations:
        x, y = sep.members
        if ((x in a.representatives and y in b.representatives)
                or (y in a.representatives and x in b.representatives)):
            return {"field": sep.field, "mode": "raw", "anchor": sep.anchor}
    return None


def build_atlas(max_n: int = MAX_ATLAS_N, curated: Optional[Curated] = None) -> Atlas:
    if max_n not in range(1, MAX_ATLAS_N + 1):
        raise SizeLimitError(f"max_n must be 1, 2 or 3, got {max_n}")
    atlas = Atlas(max_n, curated or load_curated())
    levels = []
    for n in range(1, max_n + 1):
        reps = orbit_representatives(n)
        published = {canonical_form(r.graph): r.anchor
                     for r in reference.all_rows() if r.graph.n == n}
        lex_kept = reduce(reps)
        kept = reduce(preferred_order(reps, published))
        comps = shift_components(reps)
        for comp in comps:
            if not any(g in comp for g in kept):
                raise InternalInconsistency(f"component of {comp[0]} has no kept representative")
        kept.sort(key=lambda g: (_anchor_sort_key(published.get(g)), g))
        before = len(atlas.classes)
        for g in kept:
            atlas._add_representative(g, published.get(g))
        for comp in comps:
            atlas._index_component(comp)
        level = {
            "n": n,
            "orbits": len(reps),
            "kept": len(kept),
            "new_classes": len(atlas.classes) - before,
            "move_components": len(comps),
            "kept_equals_published": set(kept) == set(published),
            "lex_sweep_kept": len(lex_kept),
            "lex_sweep_extra": sorted(g.wire() for g in set(lex_kept) - set(published)),
            "lex_sweep_missing": sorted(g.wire() for g in set(published) - set(lex_kept)),
            "all_orbits_reach_a_class": all(canonical_form(g) in atlas.index for g in reps),
        }
        if n == 3:
            level["bucket_sizes"] = _bucket_sizes(kept)
            level["lex_sweep_bucket_sizes"] = _bucket_sizes(lex_kept)
        levels.append(level)

    for cls in sorted(atlas.classes, key=lambda c: c.n):
        names = {atlas.named_algebra(g) for g in cls.representatives}
        named = {d for d in names if d.is_named}
        if len(named) > 1:
            raise InternalInconsistency(f"class {cls.id} gets several names: {sorted(map(str, named))}")
        cls.algebra_name = named.pop() if named else None

    atlas.report = {
        "levels": levels,
        "class_count": len(atlas.classes),
        "merges": [m.id for m in atlas.curated.merges],
        **_separation_report(atlas),
        "purely_infinite_simple": _pis_report(atlas),
        "unit_modes": _unit_mode_report(atlas),
    }
    return atlas


def _separation_report(atlas: Atlas) -> dict:
    buckets: Dict[tuple, List[AtlasClass]] = {}
    for cls in atlas.classes:
        buckets.setdefault(cls.bucket(), []).append(cls)
    for members in buckets.values():
        for a, b in zip(members, members[1:]):
            d = discriminate(a, b, atlas.curated)
            if d is None:
                raise InternalInconsistency(f"no discriminator between {a.id} and {b.id}")
            b.discriminators.append({"against": a.id, **d})
    raw_only = []
    pairs = 0
    for i, a in enumerate(atlas.classes):
        for b in atlas.classes[i + 1:]:
            pairs += 1
            d = discriminate(a, b, atlas.curated)
            if d is None:
                raise InternalInconsistency(f"no discriminator between {a.id} and {b.id}")
            if d["mode"] == "raw":
                labeled = [_table_labeling(a.table_anchor), _table_labeling(b.table_anchor)]
                raw_only.append({
                    "classes": [a.id, b.id],
                    "anchors": [a.table_anchor, b.table_anchor],
                    "unit_raw": [render_raw(a.invariants.unit.raw), render_raw(b.invariants.unit.raw)],
                    "unit_raw_table_labeling": [None if g is None else render_raw(unit_class(g).raw)
                                                for g in labeled],
                    "unit_canonical": [str(a.invariants.unit.canonical),
                                       str(b.invariants.unit.canonical)],
                    "field": d["field"],
                    "note": "canonical-mode data coincide; raw coordinates depend on labeling "
                            "and Smith transforms",
                })
    return {"class_pairs_checked": pairs, "separated_only_by_raw_units": raw_only}


def _pis_report(atlas: Atlas) -> dict:
    rows = []
    for cls in atlas.classes:
        for g, anchor in zip(cls.representatives, cls.anchors):
            if g.n == 3 and purely_infinite_simple(g):
                rows.append({"representative": g.wire(), "anchor": anchor, "class": cls.id})
    return {"representatives": rows, "classes": sorted({r["class"] for r in rows})}


def _table_labeling(anchor: Optional[str]) -> Optional[Graph]:
    if anchor is None:
        return None
    table, row = anchor[len("table-"):].split("/row-")
    return reference.row(table, int(row)).graph


def _unit_mode_report(atlas: Atlas) -> List[dict]:
    """Both unit modes for every representative whose K0 is not cyclic.

    Raw coordinates depend on the vertex labeling as well as on the Smith
    transforms, so they are given for the canonical matrix and for the
    labeling of the reference table.
    """
    out = []
    for cls in atlas.classes:
        k0 = cls.invariants.k0
        if k0.free_rank >= 2 or (k0.free_rank and k0.torsion):
            for g, anchor in zip(cls.representatives, cls.anchors):
                sig = signature(g, atlas.resolver)
                table_g = _table_labeling(anchor)
                out.append({
                    "class": cls.id, "anchor": anchor, "k0": str(k0),
                    "unit_raw": render_raw(sig.unit.raw),
                    "unit_raw_table_labeling": None if table_g is None else
                    render_raw(unit_class(table_g).raw),
                    "unit_canonical": str(sig.unit.canonical),
                })
    return out
