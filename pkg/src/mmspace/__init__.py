"""Hypertrees, partial conjugations and McCullough-Miller space, with the
corner-angle LP showing Out(W_n) admits no equivariant CAT(0) metric there."""

from .hypertree import Hypertree, enumerate_hypertrees, leq, parse_tree_name
from .pc import CommutingProduct, PartialConjugation, commutes, generators, parse_pc
from .carrying import build_carrier, carried_group, carries
from .complex import MMVertex, act, link, vertex_equal, vertex_leq
from .curvature import build_system, feasible, symmetrize, verify_certificate

__all__ = [
    "CommutingProduct",
    "Hypertree",
    "MMVertex",
    "PartialConjugation",
    "act",
    "build_carrier",
    "build_system",
    "carried_group",
    "carries",
    "commutes",
    "enumerate_hypertrees",
    "feasible",
    "generators",
    "leq",
    "link",
    "parse_pc",
    "parse_tree_name",
    "symmetrize",
    "verify_certificate",
    "vertex_equal",
    "vertex_leq",
]
