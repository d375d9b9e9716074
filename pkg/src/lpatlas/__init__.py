"""Invariants and an isomorphism atlas for Leavitt path algebras of graphs with at most three vertices."""

from .atlas import Atlas, AtlasClass, build_atlas, load_atlas
from .errors import InputError, InternalInconsistency, LpAtlasError
from .graph import EMPTY, Graph, from_matrix, from_wire, parse_graph
from .invariants import InvariantTuple, signature
from .orbits import burnside_count, canonical_form, orbit_representatives
from .shift import reduce, shift, inverse_shift

__version__ = "0.1.0"
