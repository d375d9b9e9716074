"""Acceptance criteria 1-11.

Each ``check_*`` returns ``(ok, detail)``.  Under pytest the results are
collected and printed as one PASS/FAIL line per criterion in the terminal
summary; ``python tests/test_acceptance.py`` prints the same lines directly.

Expected cell values below are transcribed from the reference tables, in the
ASCII notation the package emits (``M_inf(K)``, ``K[x,x^-1]``, ``T``).
``II2`` stands for the class of the loop-into-loop graph of order two.
"""

from __future__ import annotations

import random
import sys
import time
from functools import reduce as fold
from itertools import combinations
from math import gcd

import pytest

from lpatlas.atlas import build_atlas
from lpatlas.graph import (
    connected_components,
    hereditary_saturated_subsets,
    is_hereditary,
    is_saturated,
    line_points,
    saturated_closure,
    sinks,
)
from lpatlas.intlinalg import matmul, smith_normal_form
from lpatlas.invariants import INF, aut_orbit_min, count_paths_to, purely_infinite_simple, signature
from lpatlas.naming import parse_name
from lpatlas.orbits import act, burnside_breakdown, burnside_count, canonical_form, orbit_representatives, orbits
from lpatlas.reference import TABLE_IDS, bucket_of, row, table
from lpatlas.shift import preferred_order, reduce

RESULTS = {}

# -- transcribed cells ---------------------------------------------------------

TABLE_2 = {
    "k0": ["Z^2", "Z", "Z^2", "Z", "Z", "Z^2", "Z", "0"],
    "soc": ["K^2", "M_2(K)", "K", "0", "M_inf(K)", "0", "0", "0"],
    "hs": {4: 0, 7: 1},
}

# table -> row -> {column: printed value}; blank cells are left out
CELLS = {
    "3.1": {
        1: {"soc": "M_3(K)"},
        2: {"soc": "M_4(K)"},
        3: {"soc": "M_inf(K)", "l_mod_soc": "K[x,x^-1]"},
        4: {"soc": "M_inf(K)", "l_mod_soc": "M_2(K[x,x^-1])"},
        5: {"soc": "K"},
        6: {"soc": "M_inf(K)", "l_mod_soc": "L(1,2)", "unit": 2},
        7: {"soc": "M_inf(K)", "l_mod_soc": "II2"},
        8: {"soc": "M_inf(K)", "l_mod_soc": "L(1,2)", "unit": 0},
        9: {"soc": "M_inf(K)", "l_mod_soc": "L(1,2)", "unit": 1},
    },
    "3.2": {
        1: {"soc": "K + M_2(K)"},
        2: {"soc": "M_2(K)^2"},
        3: {"soc": "K", "l_mod_soc": "M_2(K[x,x^-1])"},
        4: {"soc": "K + M_inf(K)"},
        5: {"soc": "M_2(K)", "l_mod_soc": "K[x,x^-1]"},
        6: {"soc": "M_2(K)", "l_mod_soc": "M_2(K[x,x^-1])"},
        7: {"soc": "M_inf(K)^2"},
        8: {"soc": "K", "l_mod_soc": "II2"},
        9: {"soc": "M_inf(K)", "l_mod_soc": "K[x,x^-1]^2", "iln": 1},
        10: {"soc": "M_inf(K)", "l_mod_soc": "II2"},
        11: {"soc": "M_inf(K)", "l_mod_soc": "K[x,x^-1]^2", "iln": 0},
    },
    "3.3": {1: {"soc": "K^3"}, 2: {"soc": "K^2"}, 3: {"soc": "K"}},
    "3.4": {1: {"l_mod_soc": "M_2(K[x,x^-1])"}, 2: {"l_mod_soc": "K[x,x^-1]"}},
    "3.6": {
        1: {"unit": 3},
        2: {"unit": 4},
        3: {"unit": 1, "iln": 0, "hs": 1, "l_mod_i": "K[x,x^-1]", "mt3_plus_l": "F"},
        4: {"unit": 2, "iln": 0, "hs": 1, "l_mod_i": "M_2(K[x,x^-1])"},
        5: {"unit": 1, "iln": 1},
        6: {"unit": 2, "iln": 0, "hs": 1, "l_mod_i": "L(1,2)"},
        7: {"unit": 1, "iln": 0, "hs": 2},
        8: {"unit": 0, "iln": 0, "hs": 1},
        9: {"unit": 1, "iln": 0, "hs": 1, "l_mod_i": "K[x,x^-1]", "mt3_plus_l": "T"},
        10: {"unit": 1, "iln": 0, "hs": 1, "l_mod_i": "L(1,2)"},
        11: {"unit": 0, "iln": 0, "hs": 0},
    },
    "3.7": {
        1: {"unit": (2, 1)},
        2: {"unit": (2, 2)},
        3: {"unit": (1, 1), "iln": 1},
        4: {"unit": (1, 1), "iln": 0},
        5: {"unit": (1, 0)},
    },
    "3.9": {1: {"unit": 0}, 2: {"unit": 1}},
    "3.10": {1: {"unit": (2, 0)}, 2: {"unit": (1, 0)}},
}

NAMES = {
    "1": ["K", "K[x,x^-1]"],
    "2": ["K^2", "M_2(K)", "K + K[x,x^-1]", "M_2(K[x,x^-1])", "T", "K[x,x^-1]^2", "---", "L(1,2)"],
    "3.1": ["M_3(K)", "M_4(K)", "T", "---", "K + L(1,2)", "---", "---", "---", "---"],
    "3.2": ["K + M_2(K)", "M_2(K)^2", "K + M_2(K[x,x^-1])", "K + T", "K[x,x^-1] + M_2(K)",
            "M_2(K) + M_2(K[x,x^-1])", "---", "---", "K[x,x^-1] + T", "---", "---"],
    "3.3": ["K^3", "K^2 + K[x,x^-1]", "K + K[x,x^-1]^2"],
    "3.4": ["---", "---"],
    "3.5": ["L(1,2)", "L(1,2)", "L(1,2)"],
    "3.6": ["M_3(K[x,x^-1])", "M_4(K[x,x^-1])", "---", "---", "L(1,2) + K[x,x^-1]",
            "---", "---", "---", "---", "---", "---"],
    "3.7": ["K[x,x^-1] + M_2(K[x,x^-1])", "M_2(K[x,x^-1])^2", "---", "---", "---"],
    "3.8": ["K[x,x^-1]^3"],
    "3.9": ["M_2(L(1,3))", "L(1,3)"],
    "3.10": ["---", "---"],
    "3.11": ["---"],
    "3.12": ["L(1,4)"],
    "3.13": ["M_2(L(1,5))"],
}

BUCKET_SIZES = [9, 11, 3, 2, 3, 11, 5, 1, 2, 2, 1, 1, 1]

PIS_ANCHORS = {"table-3.5/row-1", "table-3.5/row-2", "table-3.5/row-3", "table-3.6/row-11",
               "table-3.9/row-1", "table-3.9/row-2", "table-3.11/row-1", "table-3.12/row-1",
               "table-3.13/row-1"}

_ATLAS = []


def get_atlas():
    if not _ATLAS:
        _ATLAS.append(build_atlas(3))
    return _ATLAS[0]


def all_reps():
    return [g for n in (1, 2, 3) for g in orbit_representatives(n)]


# -- criteria ------------------------------------------------------------------


def check_1():
    bad = []
    for n, want in [(1, 2), (2, 10), (3, 104), (4, 3044)]:
        t = time.perf_counter()
        direct = len(orbits(n))
        elapsed = time.perf_counter() - t
        if burnside_count(n) != want or direct != want:
            bad.append(f"n={n}: {burnside_count(n)}/{direct}")
        if n == 4 and elapsed >= 10:
            bad.append(f"n=4 enumeration took {elapsed:.1f}s")
    if [c.fixed for c in burnside_breakdown(3).classes] != [2 ** 9, 2 ** 5, 2 ** 3]:
        bad.append("n=3 fixed counts")
    if sorted(c.fixed for c in burnside_breakdown(4).classes) != sorted([2 ** 16, 2 ** 10, 2 ** 6, 2 ** 8, 2 ** 4]):
        bad.append("n=4 fixed counts")
    return not bad, "; ".join(bad) or "2, 10, 104, 3044 by Burnside and by enumeration"


def check_2():
    lex = reduce(orbit_representatives(3))
    published3 = [r.graph for t in TABLE_IDS if t.startswith("3.") for r in table(t)]
    steered = reduce(preferred_order(orbit_representatives(3), published3))
    connected = [g for g in orbit_representatives(2) if len(connected_components(g)) == 1]
    five = {canonical_form(r.graph) for r in table("2") if len(connected_components(r.graph)) == 1}
    kept2 = reduce(preferred_order(connected, five))
    kept2_lex = reduce(connected)
    ok = (len(orbit_representatives(3)) == 104 and len(lex) == 52 and len(steered) == 52
          and len(connected) == 7 and len(kept2) == 5 and set(kept2) == five and len(kept2_lex) == 5)
    return ok, (f"104 -> {len(lex)} (lex sweep), {len(steered)} (published order); "
                f"{len(connected)} connected n=2 -> {len(kept2)}, "
                f"{'equal to' if set(kept2) == five else 'differs from'} the five printed matrices")


def check_3():
    atlas = get_atlas()
    per_n = {n: sum(1 for c in atlas.classes if any(g.n == n for g in c.representatives))
             for n in (1, 2, 3)}
    triple = {atlas.classify(row("3.5", k).graph).class_id for k in (1, 2, 3)}
    cross = [(("2", 5), ("3.1", 3)), (("2", 8), ("3.5", 1)), (("2", 7), ("3.6", 3))]
    cross_ok = all(atlas.classify(row(*a).graph).class_id == atlas.classify(row(*b).graph).class_id
                   for a, b in cross)
    ok = per_n == {1: 2, 2: 8, 3: 50} and len(atlas.classes) == 57 and len(triple) == 1 and cross_ok
    return ok, f"classes per size {per_n}, total {len(atlas.classes)}, triple merged: {len(triple) == 1}"


def check_4():
    bad = []
    for k, r in enumerate(table("2"), start=1):
        sig = signature(r.graph)
        if str(sig.k0) != TABLE_2["k0"][k - 1]:
            bad.append(f"row {k} K0 {sig.k0}")
        if str(sig.soc) != TABLE_2["soc"][k - 1]:
            bad.append(f"row {k} Soc {sig.soc}")
        if k in TABLE_2["hs"] and sig.hs != TABLE_2["hs"][k]:
            bad.append(f"row {k} HS {sig.hs}")
    return not bad, "; ".join(bad) or "K0, Soc and HS match on all 8 rows"


def _name_matches(atlas, ref, expected):
    if expected == "II2":
        return ref == atlas.classify(row("2", 7).graph).class_id
    got = atlas.class_name(ref) if ref not in ("self", "empty") else None
    return got is not None and got == parse_name(expected)


def _unit_matches(sig, expected):
    g = sig.k0
    if g.free_rank == 1 and not g.torsion:
        return sig.unit.canonical.free_gcd == abs(expected)
    if g.is_finite:
        (m,) = g.torsion
        return sig.unit.canonical.orbit_min == aut_orbit_min((expected % m,), (m,))
    if g.free_rank == 1 and g.torsion == (2,):
        # one free and one Z_2 slot: compare raw coordinates in the printed labeling
        return sig.unit.raw.coords == (expected[0], expected[1] % 2)
    # free rank 2: canonical mode only (raw coordinates depend on the basis)
    return sig.unit.canonical.free_gcd == fold(gcd, expected, 0)


def check_5():
    atlas = get_atlas()
    bad = []
    sizes = atlas.report["levels"][2]["bucket_sizes"]
    if [sizes.get(t, 0) for t in TABLE_IDS if t.startswith("3.")] != BUCKET_SIZES:
        bad.append(f"bucket sizes {sizes}")
    cells = 0
    for t in TABLE_IDS:
        for r in table(t):
            sig = signature(r.graph, atlas.resolver)
            if t.startswith("3.") and bucket_of(bool(sig.soc.sizes), sig.k0.key) != t:
                bad.append(f"{r.anchor} K0/Soc outside caption")
            for col, want in CELLS.get(t, {}).get(r.row, {}).items():
                cells += 1
                if col == "soc":
                    ok = str(sig.soc) == want
                elif col in ("l_mod_soc", "l_mod_i"):
                    ok = _name_matches(atlas, getattr(sig, col), want)
                elif col == "unit":
                    ok = _unit_matches(sig, want)
                elif col == "mt3_plus_l":
                    ok = ("T" if sig.mt3_plus_l else "F") == want
                else:
                    ok = getattr(sig, col) == want
                if not ok:
                    bad.append(f"{r.anchor} {col}")
            cls = atlas.by_id[atlas.classify(r.graph).class_id]
            want = NAMES[t][r.row - 1]
            cells += 1
            got = cls.algebra_name.cell() if cls.algebra_name else "---"
            if (got == "---") != (want == "---") or (want != "---" and cls.algebra_name != parse_name(want)):
                bad.append(f"{r.anchor} name {got}")
    modes = atlas.report["unit_modes"]
    flagged = atlas.report["separated_only_by_raw_units"]
    rows_37 = {m["anchor"] for m in modes if m["anchor"] and m["anchor"].startswith("table-3.7/")}
    if len(rows_37) != 5 or not flagged:
        bad.append("Table 3.7 unit modes not reported")
    raw_37 = sum(1 for r in table("3.7")
                 if signature(r.graph).unit.raw.coords == CELLS["3.7"][r.row]["unit"])
    return not bad, "; ".join(bad) or (f"{cells} printed cells reproduced; bucket sizes {BUCKET_SIZES}; "
                                       f"Table 3.7 raw [1] equal as printed on {raw_37}/5 rows "
                                       f"(gcd agrees on all 5; ambiguity flagged in report)")


def check_6():
    atlas = get_atlas()
    reps = [(g, a) for c in atlas.classes for g, a in zip(c.representatives, c.anchors) if g.n == 3]
    passing = [(g, a) for g, a in reps if purely_infinite_simple(g)]
    classes = {atlas.classify(g).class_id for g, _ in passing}
    data = {(atlas.by_id[c].invariants.k0.key, atlas.by_id[c].invariants.unit.canonical) for c in classes}
    ok = (len(reps) == 52 and {a for _, a in passing} == PIS_ANCHORS
          and len(classes) == 7 and len(data) == 7)
    return ok, (f"{len(passing)} of {len(reps)} representatives pass the gate; the three of Table 3.5 "
                f"share one algebra, leaving {len(classes)} graphs up to that identification; "
                f"{len(data)} distinct (K0, [1])")


def _laplace(a):
    if len(a) == 1:
        return a[0][0]
    return sum((-1) ** j * x * _laplace([r[:j] + r[j + 1:] for r in a[1:]])
               for j, x in enumerate(a[0]) if x)


def _minor_gcd(a, k):
    return fold(gcd, (_laplace([[a[i][j] for j in cs] for i in rs])
                      for rs in combinations(range(len(a)), k)
                      for cs in combinations(range(len(a[0])), k)), 0)


def check_7(cases=500, seed=2024):
    rng = random.Random(seed)
    for _ in range(cases):
        r, c = rng.randint(1, 3), rng.randint(1, 3)
        m = [[rng.randint(-4, 4) for _ in range(c)] for _ in range(r)]
        s = smith_normal_form(m)
        if matmul(matmul(s.p, m), s.q) != s.diagonal_matrix():
            return False, f"p M q != diag for {m}"
        if abs(_laplace([list(x) for x in s.p])) != 1 or abs(_laplace([list(x) for x in s.q])) != 1:
            return False, f"non-unimodular transform for {m}"
        for a, b in zip(s.d, s.d[1:]):
            if (a == 0 and b != 0) or (a and b % a):
                return False, f"divisibility fails for {m}"
        prod = 1
        for k, dk in enumerate(s.d, start=1):
            prod *= dk
            if prod != _minor_gcd(m, k):
                return False, f"minor gcd mismatch for {m}"
    return True, f"{cases} random matrices"


def check_8():
    reps = orbit_representatives(3) + orbit_representatives(2)
    for g in reps:
        subsets = [frozenset(cs) for k in range(g.n + 1)
                   for cs in combinations(range(1, g.n + 1), k)]
        brute = [h for h in subsets if is_hereditary(g, h) and is_saturated(g, h)]
        if sorted(map(sorted, brute)) != sorted(map(sorted, hereditary_saturated_subsets(g))):
            return False, f"H_E mismatch on {g}"
        for x in subsets:
            c = saturated_closure(g, x)
            if not (is_hereditary(g, c) and is_saturated(g, c) and x <= c):
                return False, f"closure of {set(x)} on {g}"
    return True, f"{len(reps)} representatives"


def _paths_brute(g, u):
    count, frontier = 0, [u]
    for _ in range(g.n + 1):
        count += len(frontier)
        frontier = [v for w in frontier for v in g.predecessors(w)]
    return count, bool(frontier)


def _cycle_reaches(g, u):
    n = g.n
    reach = [[bool(g.rows[i][j]) for j in range(n)] for i in range(n)]
    for k in range(n):
        for i in range(n):
            for j in range(n):
                reach[i][j] = reach[i][j] or (reach[i][k] and reach[k][j])
    return any(reach[c][c] and reach[c][u - 1] for c in range(n))


def check_9():
    checked = 0
    for g in all_reps():
        for u in sinks(g):
            checked += 1
            got = count_paths_to(g, u)
            if (got == INF) != _cycle_reaches(g, u):
                return False, f"infinity test on {g}, sink {u}"
            if got != INF:
                count, longer = _paths_brute(g, u)
                if longer or count != got:
                    return False, f"count mismatch on {g}, sink {u}"
    return True, f"{checked} (graph, sink) pairs"


def check_10():
    for g in all_reps():
        if saturated_closure(g, line_points(g)) != saturated_closure(g, sinks(g)):
            return False, f"{g}"
    return True, f"{len(all_reps())} representatives"


def check_11(pairs=1000, seed=11):
    atlas = get_atlas()
    rng = random.Random(seed)
    reps = all_reps()
    for _ in range(pairs):
        g = rng.choice(reps)
        p = tuple(rng.sample(range(1, g.n + 1), g.n))
        if atlas.classify(act(g, p)).class_id != atlas.classify(g).class_id:
            return False, f"{g} under {p}"
    cross = [(("2", 5), ("3.1", 3)), (("2", 8), ("3.5", 1)), (("2", 8), ("3.5", 2)),
             (("2", 8), ("3.5", 3)), (("2", 7), ("3.6", 3))]
    for a, b in cross:
        if atlas.classify(row(*a).graph).class_id != atlas.classify(row(*b).graph).class_id:
            return False, f"{a} vs {b}"
    return True, f"{pairs} relabelings and {len(cross)} cross-table pairs"


CHECKS = [check_1, check_2, check_3, check_4, check_5, check_6,
          check_7, check_8, check_9, check_10, check_11]


@pytest.mark.parametrize("k", range(1, 12))
def test_criterion(k):
    ok, detail = CHECKS[k - 1]()
    RESULTS[k] = (ok, detail)
    assert ok, detail


def main():
    failed = 0
    for k, check in enumerate(CHECKS, start=1):
        ok, detail = check()
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
