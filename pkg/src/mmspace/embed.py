"""Reduction from rank n >= 5 to rank 4.

F = {5, ..., n}.  ``phi5plus`` forgets the letters and domain points in F,
``psi5plus`` reads a rank-4 partial conjugation at rank n, and ``tilde``
hangs every f in F off vertex 1 by a two-element hyperedge.  The group
G = <x_{1,{f}} : f in F> fixes exactly the classes [psi(alpha), tilde(Theta)].
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .carrying import carried_group
from .complex import MMVertex, RepresentationError, coset_members, is_fixed_by
from .hypertree import Hypertree, enumerate_hypertrees
from .pc import (
    CommutingProduct,
    PartialConjugation,
    PCError,
    abelian_sum,
    commutes,
    generators,
    product_mul,
    relation_instances,
)


def _check_n(n: int) -> None:
    if n < 5:
        raise PCError(f"the reduction needs n >= 5, got {n}")


def phi5plus(x: PartialConjugation) -> PartialConjugation | None:
    """Image at rank 4, or None for the identity."""
    n = x.n
    _check_n(n)
    tail = set(range(5, n + 1))
    if x.i in tail or x.domain <= tail or x.complement <= tail:
        return None
    return PartialConjugation(4, x.i, x.domain - tail).canonical()


def psi5plus(y: PartialConjugation, n: int) -> PartialConjugation:
    _check_n(n)
    if y.n != 4:
        raise PCError("psi5plus takes a rank-4 partial conjugation")
    return PartialConjugation(n, y.i, y.domain).canonical()


def psi_product(p: CommutingProduct, n: int) -> CommutingProduct:
    return CommutingProduct.of(n, *(psi5plus(y, n) for y in p.pcs()))


def tilde(tree: Hypertree, n: int) -> Hypertree:
    _check_n(n)
    if tree.rank != 4:
        raise PCError("tilde takes a rank-4 hypertree")
    extra = [frozenset({1, f}) for f in range(5, n + 1)]
    return Hypertree(n, tuple(tree.edges) + tuple(extra))


def tail_generators(n: int) -> list[PartialConjugation]:
    """The generators x_{1,{f}} of G."""
    _check_n(n)
    return [PartialConjugation(n, 1, frozenset({f})) for f in range(5, n + 1)]


def tilde_carried_group(tree: Hypertree, n: int) -> frozenset[CommutingProduct]:
    """psi(carried_group(tree)) times every product of tail generators."""
    tails = tail_generators(n)
    out = set()
    for g in carried_group(tree):
        base = psi_product(g, n)
        for k in range(len(tails) + 1):
            for sub in combinations(tails, k):
                out.add(product_mul(base, CommutingProduct.of(n, *sub)))
    return frozenset(out)


def relation_image_ok(word: Sequence[PartialConjugation], kind: str) -> bool:
    """The phi5plus image of a relation is again a rank-4 relation consequence.

    R1/R2 images have trivial abelianised sum within a single letter; an R3
    image either loses a factor or is a commuting pair at rank 4.
    """
    images = [phi5plus(x) for x in word]
    if kind in ("R1", "R2"):
        kept = [y for y in images if y is not None]
        return len({y.i for y in kept}) <= 1 and not abelian_sum(*kept)
    if kind == "R3":
        x, y = images[0], images[1]
        return x is None or y is None or commutes(x, y)
    raise ValueError(f"unknown relation kind {kind!r}")


def relation_images(n: int) -> list[tuple[tuple[PartialConjugation, ...], str, bool]]:
    return [(w, kind, relation_image_ok(w, kind)) for w, kind in relation_instances(n)]


@lru_cache(maxsize=4)
def identity_patch(n: int, pairs: bool = False) -> frozenset[MMVertex]:
    """[g, Lambda] for every hypertree Lambda and g in {id} + generators.

    With ``pairs`` also products of commuting generator pairs.  Labels whose
    class has no commuting-product representative are skipped.
    """
    gens = generators(n)
    labels = [CommutingProduct.identity(n)] + [CommutingProduct.of(n, g) for g in gens]
    if pairs:
        labels += [CommutingProduct.of(n, a, b) for a, b in combinations(gens, 2) if commutes(a, b)]
    patch = set()
    for tree in enumerate_hypertrees(n):
        for lab in labels:
            try:
                patch.add(MMVertex(lab, tree))
            except RepresentationError:  # pragma: no cover - labels are commuting
                continue
    return frozenset(patch)


def is_fixed(v: MMVertex) -> bool:
    return all(is_fixed_by(x, v) for x in tail_generators(v.tree.rank))


def fixed_vertices(patch: Iterable[MMVertex], n: int) -> set[MMVertex]:
    """Vertices of ``patch`` fixed by every x_{1,{f}}."""
    _check_n(n)
    return {v for v in patch if v.tree.rank == n and is_fixed(v)}


def _rank4_supported(p: CommutingProduct) -> bool:
    return all(x.i <= 4 and max(x.domain) <= 4 for x in p.pcs())


def in_tilde_image(v: MMVertex) -> bool:
    """v = [psi(alpha), tilde(Theta)] for some rank-4 alpha and Theta."""
    n = v.tree.rank
    tails = {frozenset({1, f}) for f in range(5, n + 1)}
    if not tails <= set(v.tree.edges):
        return False
    core = [e for e in v.tree.edges if e not in tails]
    if any(e & set(range(5, n + 1)) for e in core):
        return False
    return any(_rank4_supported(p) for p in coset_members(v.label, v.tree))


def expected_fixed(patch: Iterable[MMVertex]) -> set[MMVertex]:
    return {v for v in patch if in_tilde_image(v)}
