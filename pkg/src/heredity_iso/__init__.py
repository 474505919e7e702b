"""Graph isomorphism on hereditary classes defined by two forbidden induced subgraphs."""

from .classify import ClassificationStatus, ForbiddenPair, bothsplit_iso, classify, iso_in_class
from .cograph import Cotree, NotCograph, build_cotree, canonical_code, cograph_iso
from .expr import enumerate_path_union_complements, exception_set, is_basic, parse_expr, realize, to_text
from .formats import decode_graph6, encode_graph6
from .graph import Graph, complement, degree_sequence, disjoint_union, induced_subgraph
from .induced import ClassSpec, find_induced, is_member
from .oracle import IsoResult, brute_force_iso, canonical_form_small, color_refinement
from .reductions import split_incidence_reduce, verify_reduction

__version__ = "0.1.0"
