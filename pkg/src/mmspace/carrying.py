"""Which partial conjugations a hypertree carries, and building common carriers."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .hypertree import Hypertree, HypertreeError, components_without, enumerate_hypertrees, leq
from .pc import (
    CommutingProduct,
    PartialConjugation,
    PCError,
    _min_other,
    commutes,
    multiply,
)


def _check_rank(tree: Hypertree, x: PartialConjugation) -> None:
    if tree.rank != x.n:
        raise PCError(f"rank mismatch: tree on [{tree.rank}] vs x at rank {x.n}")


def _incidence_path(tree: Hypertree, start: int, end: int) -> list[int]:
    """Vertices on the unique simple walk from ``start`` to ``end``.

    Works on the vertex/hyperedge incidence tree, where the path is unique.
    """
    nodes = {("v", v): [("e", k) for k, e in enumerate(tree.edges) if v in e] for v in tree.vertices}
    for k, e in enumerate(tree.edges):
        nodes[("e", k)] = [("v", v) for v in e]
    parent = {("v", start): None}
    stack = [("v", start)]
    while stack:
        cur = stack.pop()
        for nxt in nodes[cur]:
            if nxt not in parent:
                parent[nxt] = cur
                stack.append(nxt)
    path = []
    node = ("v", end)
    while node is not None:
        if node[0] == "v":
            path.append(node[1])
        node = parent[node]
    return path[::-1]


def carries_by_walks(tree: Hypertree, x: PartialConjugation) -> bool:
    """Every walk from D to [n] - D~ passes through the acting letter."""
    _check_rank(tree, x)
    outside = set(tree.vertices) - x.extended
    return all(x.i in _incidence_path(tree, d, j) for d in x.domain for j in outside)


def carries_by_components(tree: Hypertree, x: PartialConjugation) -> bool:
    """D is a union of connected components of the tree with x.i deleted."""
    _check_rank(tree, x)
    return all(c <= x.domain or not (c & x.domain) for c in components_without(tree, x.i))


def carries(tree: Hypertree, x: PartialConjugation | CommutingProduct) -> bool:
    if isinstance(x, CommutingProduct):
        return all(carries(tree, y) for y in x.pcs())
    return carries_by_components(tree, x)


@lru_cache(maxsize=None)
def carried_basis(tree: Hypertree) -> tuple[PartialConjugation, ...]:
    """One generator per component of tree - {i} not holding min([n] - {i}).

    The result has exactly ``tree.height`` elements.
    """
    basis = []
    for i in tree.vertices:
        low = _min_other(tree.rank, i)
        for comp in components_without(tree, i):
            if low not in comp:
                basis.append(PartialConjugation(tree.rank, i, comp))
    return tuple(basis)


@lru_cache(maxsize=None)
def carried_group(tree: Hypertree) -> frozenset[CommutingProduct]:
    """All 2^height products of subsets of the carried basis."""
    elems = {CommutingProduct.identity(tree.rank)}
    for b in carried_basis(tree):
        elems |= {multiply(g, b) for g in elems}
    return frozenset(elems)


def carried_sorted(tree: Hypertree) -> list[CommutingProduct]:
    return sorted(carried_group(tree), key=CommutingProduct.sort_key)


def _prepare(xs: Iterable[PartialConjugation]) -> list[PartialConjugation]:
    xs = list(xs)
    if not xs:
        raise PCError("need at least one partial conjugation")
    n = xs[0].n
    if any(x.n != n for x in xs):
        raise PCError("partial conjugations of different ranks")
    out: list[PartialConjugation] = []
    for x in xs:
        x = x.canonical()
        if not x.is_full and x not in out:
            out.append(x)
    return out


def build_carrier(xs: Sequence[PartialConjugation]) -> Hypertree | None:
    """A hypertree carrying every input, or None when some pair fails to commute.

    Start from the two-edge hypertree {D~, D~^c} of the first input, then split
    every hyperedge along D~_k / D~^c_k for each further input.  A piece equal
    to {i_k} is dropped: it only arises when the whole edge lies on one side.
    """
    n = xs[0].n if xs else 0
    todo = _prepare(xs)
    if any(not commutes(a, b) for a, b in combinations(todo, 2)):
        return None
    if not todo:
        return Hypertree.of(n, range(1, n + 1))
    first = todo[0]
    edges = {first.extended, first.extended_complement}
    for x in todo[1:]:
        split = set()
        for e in edges:
            for side in (x.extended, x.extended_complement):
                piece = e & side
                if len(piece) >= 2:
                    split.add(piece)
        edges = split
    tree = Hypertree(n, tuple(edges))
    if not all(carries(tree, x) for x in todo):  # pragma: no cover - theorem guard
        raise HypertreeError(f"constructed {tree} fails to carry {todo}")
    return tree


def has_common_carrier(xs: Sequence[PartialConjugation], trees: Sequence[Hypertree] | None = None) -> bool:
    """Exhaustive scan: does any hypertree carry all of ``xs``?"""
    if trees is None:
        trees = enumerate_hypertrees(xs[0].n)
    return any(all(carries(t, x) for x in xs) for t in trees)


def can_unfold_to_carry(tree: Hypertree, x: PartialConjugation) -> bool:
    """Whether some unfolding of ``tree`` carries ``x``.

    Decided by commutation with the carried basis (hence with everything the
    tree carries).
    """
    _check_rank(tree, x)
    return all(commutes(x, b) for b in carried_basis(tree))


def can_unfold_to_carry_search(tree: Hypertree, x: PartialConjugation) -> bool:
    """Same question answered by scanning every hypertree above ``tree``."""
    _check_rank(tree, x)
    return any(leq(tree, lam) and carries(lam, x) for lam in enumerate_hypertrees(tree.rank))
