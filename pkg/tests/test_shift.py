import pytest
from hypothesis import given

from lpatlas.errors import SizeMismatchError
from lpatlas.graph import from_wire
from lpatlas.invariants import signature
from lpatlas.orbits import canonical_form, orbit_representatives
from lpatlas.reference import table
from lpatlas.shift import (
    explore,
    inverse_shift,
    moves,
    preferred_order,
    reduce,
    shift,
    shift_components,
    shift_equivalent,
)

from conftest import graphs


def test_shift_fixed_point():
    # row 2 = (1,1) - (1,0) + e_1 = (1,1): the move is the identity here
    g = from_wire("1,0;1,1")
    assert shift(1, 2, g) == g
    assert not any(True for _ in moves(from_wire("1")))


def test_shift_changes_graph():
    g = from_wire("1,1,0;1,1,1;0,0,0")
    h = shift(1, 2, g)
    assert h == from_wire("1,1,0;1,0,1;0,0,0")
    assert inverse_shift(1, 2, h) == g


def test_inapplicable_moves():
    g = from_wire("1,1;1,0")
    assert shift(1, 2, g) is None      # (1,1) not dominated by (1,0)
    assert shift(2, 1, from_wire("0,0;0,1")) is None  # zero row never shifts
    with pytest.raises(SizeMismatchError):
        shift(1, 1, g)
    with pytest.raises(SizeMismatchError):
        shift(1, 3, g)


@given(graphs(min_n=2))
def test_shift_inverse_pair(g):
    for i in range(1, g.n + 1):
        for j in range(1, g.n + 1):
            if i == j:
                continue
            h = shift(i, j, g)
            if h is not None:
                assert inverse_shift(i, j, h) == g
            h = inverse_shift(i, j, g)
            if h is not None:
                assert shift(i, j, h) == g


@given(graphs(min_n=2))
def test_moves_preserve_invariants(g):
    sig = signature(g).canonical_key()
    for _, _, _, h in moves(g):
        assert signature(h).canonical_key()[:2] == sig[:2]


def test_reduce_counts():
    assert len(reduce(orbit_representatives(3))) == 52
    assert len(reduce(orbit_representatives(2))) == 8
    assert len(reduce(orbit_representatives(1))) == 2


def test_reduce_output_pairwise_unrelated():
    kept = reduce(orbit_representatives(3))
    for a_idx, a in enumerate(kept):
        for b in kept[a_idx + 1:]:
            assert not shift_equivalent(a, b)


def test_preferred_order_reproduces_table_2():
    published = {canonical_form(r.graph) for r in table("2")}
    kept = reduce(preferred_order(orbit_representatives(2), published))
    assert set(kept) == published


def test_components():
    assert len(shift_components(orbit_representatives(2))) == 8
    assert len(shift_components(orbit_representatives(3))) == 50


def test_explore_paths_are_valid():
    start = canonical_form(from_wire("1,1,0;1,1,1;0,0,0"))
    for target, path in explore(start).items():
        assert path or target == start


def test_size_mismatch():
    with pytest.raises(SizeMismatchError):
        shift_equivalent(from_wire("1"), from_wire("1,1;1,1"))
