"""Labeled hypertrees on [n], folding, and the hypertree poset."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable, Mapping, Sequence

MAX_RANK = 6


class HypertreeError(ValueError):
    """Malformed hypertree input (bad vertex, short edge, not a hypertree)."""


class FoldError(ValueError):
    """Requested fold is not defined on the given hyperedges."""


def _edge_key(edge: frozenset[int]) -> tuple[int, ...]:
    return tuple(sorted(edge))


def _check_edges(rank: int, edges: Iterable[Iterable[int]]) -> list[frozenset[int]]:
    if rank < 1:
        raise HypertreeError(f"rank must be positive, got {rank}")
    out = []
    for e in edges:
        e = frozenset(e)
        if len(e) < 2:
            raise HypertreeError(f"hyperedge {sorted(e)} has fewer than 2 vertices")
        if not all(isinstance(v, int) and 1 <= v <= rank for v in e):
            raise HypertreeError(f"hyperedge {sorted(e)} not contained in [1..{rank}]")
        out.append(e)
    if not out:
        raise HypertreeError("a hypergraph needs at least one hyperedge")
    return out


def is_hypertree(rank: int, edges: Iterable[Iterable[int]]) -> bool:
    """Decide whether ``edges`` form a hypertree on [rank].

    A hypergraph is a hypertree exactly when its vertex/hyperedge incidence
    graph is a tree; coverage and the pairwise-intersection bound are checked
    first because they are cheap and give the common failures.
    """
    es = _check_edges(rank, edges)
    if len(set(es)) != len(es):
        return False
    if set().union(*es) != set(range(1, rank + 1)):
        return False
    for e, f in combinations(es, 2):
        if len(e & f) > 1:
            return False
    # incidence graph: rank vertex nodes + len(es) edge nodes
    n_links = sum(len(e) for e in es)
    if n_links != rank + len(es) - 1:
        return False
    seen = {1}
    frontier = [1]
    while frontier:
        v = frontier.pop()
        for e in es:
            if v in e:
                for w in e:
                    if w not in seen:
                        seen.add(w)
                        frontier.append(w)
    return len(seen) == rank


@dataclass(frozen=True)
class Hypertree:
    """A hypertree on [rank]; edges are kept in canonical sorted order."""

    rank: int
    edges: tuple[frozenset[int], ...]

    def __post_init__(self):
        es = _check_edges(self.rank, self.edges)
        if not is_hypertree(self.rank, es):
            raise HypertreeError(
                f"not a hypertree on [{self.rank}]: {[sorted(e) for e in es]}"
            )
        object.__setattr__(self, "edges", tuple(sorted(es, key=_edge_key)))

    @classmethod
    def of(cls, rank: int, *edges: Iterable[int]) -> "Hypertree":
        return cls(rank, tuple(frozenset(e) for e in edges))

    @property
    def height(self) -> int:
        return len(self.edges) - 1

    @property
    def vertices(self) -> range:
        return range(1, self.rank + 1)

    def edge_lists(self) -> list[list[int]]:
        return [sorted(e) for e in self.edges]

    def to_json(self) -> dict:
        return {"rank": self.rank, "edges": self.edge_lists()}

    @classmethod
    def from_json(cls, data: Mapping) -> "Hypertree":
        return cls(int(data["rank"]), tuple(frozenset(e) for e in data["edges"]))

    def __str__(self) -> str:
        return "{" + ",".join("{" + ",".join(map(str, e)) + "}" for e in self.edge_lists()) + "}"

    def sort_key(self) -> tuple:
        return (self.rank, len(self.edges), tuple(_edge_key(e) for e in self.edges))


def height(tree: Hypertree) -> int:
    return tree.height


def nuclear(rank: int) -> Hypertree:
    """The unique height-zero hypertree (one hyperedge holding everything)."""
    return Hypertree.of(rank, range(1, rank + 1))


def fold(tree: Hypertree, e: Iterable[int], f: Iterable[int]) -> Hypertree:
    """Replace two intersecting hyperedges of ``tree`` by their union."""
    e, f = frozenset(e), frozenset(f)
    if e == f:
        raise FoldError("fold needs two distinct hyperedges")
    if e not in tree.edges or f not in tree.edges:
        raise FoldError(f"{sorted(e)} and {sorted(f)} must both be hyperedges of {tree}")
    if not e & f:
        raise FoldError(f"hyperedges {sorted(e)} and {sorted(f)} are disjoint")
    rest = [g for g in tree.edges if g != e and g != f]
    return Hypertree(tree.rank, tuple(rest + [e | f]))


def single_folds(tree: Hypertree) -> list[Hypertree]:
    return [fold(tree, e, f) for e, f in combinations(tree.edges, 2) if e & f]


def fold_closure(tree: Hypertree) -> set[Hypertree]:
    """Everything reachable from ``tree`` by a (possibly empty) sequence of folds.

    Breadth-first over explicit folds; kept independent of :func:`leq`.
    """
    seen = {tree}
    queue = deque([tree])
    while queue:
        cur = queue.popleft()
        for nxt in single_folds(cur):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def leq(theta: Hypertree, lam: Hypertree) -> bool:
    """True iff ``theta`` is obtained by folding ``lam`` (theta <= lam)."""
    if theta.rank != lam.rank:
        raise HypertreeError(f"rank mismatch: {theta.rank} vs {lam.rank}")
    return all(any(e <= f for f in theta.edges) for e in lam.edges)


def _check_rank_range(n: int) -> None:
    if n < 2:
        raise HypertreeError(f"hypertrees need rank >= 2, got {n}")
    if n > MAX_RANK:
        raise HypertreeError(f"rank {n} exceeds the supported cap {MAX_RANK}")


@lru_cache(maxsize=None)
def _enumerate(n: int) -> tuple[Hypertree, ...]:
    found: set[frozenset[frozenset[int]]] = set()
    visited: set[frozenset[frozenset[int]]] = set()
    everything = frozenset(range(1, n + 1))

    def grow(edges: frozenset[frozenset[int]], support: frozenset[int]) -> None:
        if edges in visited:
            return
        visited.add(edges)
        if support == everything:
            found.add(edges)
            return
        # the next hyperedge meets the support in exactly one vertex
        uncovered = sorted(everything - support)
        for anchor in sorted(support):
            for k in range(1, len(uncovered) + 1):
                for extra in combinations(uncovered, k):
                    e = frozenset((anchor,) + extra)
                    grow(edges | {e}, support | e)

    for k in range(1, n):
        for rest in combinations(range(2, n + 1), k):
            first = frozenset((1,) + rest)
            grow(frozenset({first}), first)
    trees = [Hypertree(n, es) for es in found]
    return tuple(sorted(trees, key=Hypertree.sort_key))


def enumerate_hypertrees(n: int) -> list[Hypertree]:
    """All hypertrees on [n] in a deterministic order (by height, then edges)."""
    _check_rank_range(n)
    return list(_enumerate(n))


def brute_force_hypertrees(n: int) -> list[Hypertree]:
    """Filter every set of at most n-1 candidate hyperedges through is_hypertree.

    Exponential; meant as a cross-check for small n only.
    """
    _check_rank_range(n)
    candidates = [
        frozenset(c)
        for k in range(2, n + 1)
        for c in combinations(range(1, n + 1), k)
    ]
    out = []
    for m in range(1, n):
        for es in combinations(candidates, m):
            if is_hypertree(n, es):
                out.append(Hypertree(n, es))
    return sorted(out, key=Hypertree.sort_key)


def _as_perm(n: int, sigma: Mapping[int, int] | Sequence[int]) -> dict[int, int]:
    if isinstance(sigma, Mapping):
        perm = {v: sigma.get(v, v) for v in range(1, n + 1)}
    else:
        if len(sigma) != n:
            raise HypertreeError(f"permutation of [{n}] needs {n} images, got {len(sigma)}")
        perm = {v: sigma[v - 1] for v in range(1, n + 1)}
    if sorted(perm.values()) != list(range(1, n + 1)):
        raise HypertreeError(f"not a bijection of [{n}]: {perm}")
    return perm


def transposition(n: int, a: int, b: int) -> dict[int, int]:
    perm = {v: v for v in range(1, n + 1)}
    perm[a], perm[b] = b, a
    return perm


def all_permutations(n: int) -> list[dict[int, int]]:
    return [dict(zip(range(1, n + 1), p)) for p in permutations(range(1, n + 1))]


def relabel(tree: Hypertree, sigma: Mapping[int, int] | Sequence[int]) -> Hypertree:
    perm = _as_perm(tree.rank, sigma)
    return Hypertree(tree.rank, tuple(frozenset(perm[v] for v in e) for e in tree.edges))


def components_without(tree: Hypertree, i: int) -> list[frozenset[int]]:
    """Connected components of the hypergraph left after deleting vertex ``i``."""
    if not 1 <= i <= tree.rank:
        raise HypertreeError(f"vertex {i} not in [1..{tree.rank}]")
    pieces = [e - {i} for e in tree.edges]
    remaining = set(tree.vertices) - {i}
    comps = []
    while remaining:
        start = min(remaining)
        comp = {start}
        grew = True
        while grew:
            grew = False
            for p in pieces:
                if p & comp and not p <= comp:
                    comp |= p
                    grew = True
        remaining -= comp
        comps.append(frozenset(comp))
    return sorted(comps, key=_edge_key)


def hasse_edges(trees: Sequence[Hypertree]) -> list[tuple[Hypertree, Hypertree]]:
    """Covering pairs (lower, upper) of the fold order restricted to ``trees``."""
    out = []
    for lo in trees:
        for hi in trees:
            if lo != hi and lo.height + 1 == hi.height and leq(lo, hi):
                out.append((lo, hi))
    return out


def longest_chain(trees: Sequence[Hypertree]) -> list[Hypertree]:
    """A longest strictly increasing chain, found by DP over heights."""
    ordered = sorted(trees, key=Hypertree.sort_key)
    best: dict[Hypertree, list[Hypertree]] = {}
    for t in ordered:
        below = [best[s] for s in ordered if s in best and s != t and leq(s, t)]
        best[t] = max(below, key=len, default=[]) + [t]
    return max(best.values(), key=len)


# -- the four labeled classes at rank 4 -------------------------------------


@dataclass(frozen=True)
class HypertreeClass4:
    """Class tag of a rank-4 hypertree.

    ``kind`` is one of ``nuclear``, ``star``, ``line``, ``omega``.  Indices:
    star ``(i,)`` is the centre; line ``(i, j, k, l)`` is the path j-i-k-l
    written with i < k; omega ``(i, j)`` has hyperedges {i,j} and [4]-{j}.
    """

    kind: str
    indices: tuple[int, ...] = ()

    @property
    def name(self) -> str:
        if self.kind == "nuclear":
            return "Theta0"
        if self.kind == "star":
            return f"S{self.indices[0]}"
        if self.kind == "omega":
            i, j = self.indices
            return f"O{i}{j}"
        i, j, k, l = self.indices
        return f"L{i}{j}_{k}{l}"


def omega_tree(i: int, j: int, n: int = 4) -> Hypertree:
    return Hypertree.of(n, (i, j), set(range(1, n + 1)) - {j})


def star_tree(i: int, n: int = 4) -> Hypertree:
    return Hypertree.of(n, *[(i, j) for j in range(1, n + 1) if j != i])


def line_tree(i: int, j: int, k: int, l: int) -> Hypertree:
    """The rank-4 line tree with hyperedges {j,i}, {i,k}, {k,l}."""
    return Hypertree.of(4, (j, i), (i, k), (k, l))


def classify4(tree: Hypertree) -> HypertreeClass4:
    if tree.rank != 4:
        raise HypertreeError(f"classify4 needs rank 4, got {tree.rank}")
    if tree.height == 0:
        return HypertreeClass4("nuclear")
    if tree.height == 1:
        small = min(tree.edges, key=len)
        big = max(tree.edges, key=len)
        (i,) = small & big
        (j,) = small - {i}
        return HypertreeClass4("omega", (i, j))
    degree = {v: sum(v in e for e in tree.edges) for v in tree.vertices}
    if max(degree.values()) == 3:
        centre = max(degree, key=degree.get)
        return HypertreeClass4("star", (centre,))
    inner = sorted(v for v, d in degree.items() if d == 2)
    i, k = inner
    (j,) = [v for e in tree.edges if i in e and k not in e for v in e if v != i]
    (l,) = [v for e in tree.edges if k in e and i not in e for v in e if v != k]
    return HypertreeClass4("line", (i, j, k, l))


def tree_from_class(tag: HypertreeClass4) -> Hypertree:
    if tag.kind == "nuclear":
        return nuclear(4)
    if tag.kind == "star":
        return star_tree(tag.indices[0])
    if tag.kind == "omega":
        return omega_tree(*tag.indices)
    return line_tree(*tag.indices)


def parse_tree_name(name: str) -> Hypertree:
    """Parse ``Theta0``, ``S1``, ``O13`` or ``L13_24`` into a rank-4 hypertree."""
    s = name.strip()
    try:
        if s in ("Theta0", "T0", "N"):
            return nuclear(4)
        if s[0] == "S" and len(s) == 2:
            return star_tree(int(s[1]))
        if s[0] in "OΩ" and len(s) == 3:
            return omega_tree(int(s[1]), int(s[2]))
        if s[0] == "L" and len(s) == 6 and s[3] == "_":
            return line_tree(int(s[1]), int(s[2]), int(s[4]), int(s[5]))
    except (ValueError, HypertreeError) as exc:
        raise HypertreeError(f"bad tree name {name!r}: {exc}") from None
    raise HypertreeError(f"unrecognised tree name {name!r}")
