"""Local patches of McCullough-Miller space K_n: vertices, order, action, links.

Vertices are classes [alpha, Theta] with alpha restricted to commuting
products.  The complex is infinite, so only identity-centred neighbourhoods
are ever built; links are computed at rank 4, where K_4 is 2-dimensional.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Mapping, Sequence

from .carrying import carried_group, carried_sorted
from .hypertree import (
    Hypertree,
    HypertreeError,
    classify4,
    enumerate_hypertrees,
    leq,
    line_tree,
    nuclear,
    omega_tree,
    relabel,
    star_tree,
)
from .pc import (
    AlgebraError,
    CommutingProduct,
    PartialConjugation,
    abelian_sum,
    conjugate_product,
    product_from_coords,
    product_mul,
    word_outer_equal,
)

OUT = "out"
OUT0 = "out0"
MODES = (OUT, OUT0)


class RepresentationError(ValueError):
    """The class needs a label that is not a commuting product."""


def _try_product(n: int, word: Sequence[PartialConjugation]) -> CommutingProduct | None:
    try:
        return CommutingProduct.of(n, *word)
    except AlgebraError:
        return None


@lru_cache(maxsize=None)
def _coset_members(word: tuple[PartialConjugation, ...], tree: Hypertree) -> tuple[CommutingProduct, ...]:
    n = tree.rank
    base = _try_product(n, word)
    members = set()
    for g in carried_group(tree):
        if base is not None:
            try:
                members.add(product_mul(base, g))
                continue
            except AlgebraError:
                pass
        cand = product_from_coords(n, abelian_sum(*word, g))
        if cand is not None and word_outer_equal(list(word) + g.pcs(), cand.pcs(), n):
            members.add(cand)
    return tuple(sorted(members, key=CommutingProduct.sort_key))


def _clean(word: Sequence[PartialConjugation] | CommutingProduct) -> tuple[PartialConjugation, ...]:
    if isinstance(word, CommutingProduct):
        return tuple(word.pcs())
    return tuple(x.canonical() for x in word if not x.canonical().is_full)


def coset_members(word: Sequence[PartialConjugation] | CommutingProduct, tree: Hypertree) -> tuple[CommutingProduct, ...]:
    """Every commuting product in the coset word * carried_group(tree), sorted."""
    return _coset_members(_clean(word), tree)


def coset_label(word: Sequence[PartialConjugation] | CommutingProduct, tree: Hypertree) -> CommutingProduct:
    """Least commuting product in the coset word * carried_group(tree).

    Any commuting product in the coset has the abelianised coordinates of
    word * g for some carried g, so those are the only candidates; each is
    confirmed either by commuting-product arithmetic or by the word oracle.
    """
    members = coset_members(word, tree)
    if not members:
        shown = "".join(map(str, _clean(word))) or "id"
        raise RepresentationError(f"[{shown}, {tree}] has no commuting-product label")
    return members[0]


@dataclass(frozen=True)
class MMVertex:
    """A vertex [label, tree] of K_n, stored with its canonical label."""

    label: CommutingProduct
    tree: Hypertree

    def __post_init__(self):
        if self.label.n != self.tree.rank:
            raise HypertreeError(f"label rank {self.label.n} vs tree rank {self.tree.rank}")
        object.__setattr__(self, "label", coset_label(self.label, self.tree))

    @classmethod
    def identity(cls, tree: Hypertree) -> "MMVertex":
        return cls(CommutingProduct.identity(tree.rank), tree)

    @classmethod
    def from_word(cls, word: Sequence[PartialConjugation], tree: Hypertree) -> "MMVertex":
        return cls(coset_label(word, tree), tree)

    def sort_key(self) -> tuple:
        return (self.tree.height, self.tree.sort_key(), self.label.sort_key())

    def to_json(self) -> dict:
        out = {"label": self.label.to_json(), "tree": self.tree.to_json()}
        if self.tree.rank == 4:
            out["class"] = classify4(self.tree).name
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "MMVertex":
        return cls(CommutingProduct.from_json(data["label"]), Hypertree.from_json(data["tree"]))

    def __str__(self) -> str:
        name = classify4(self.tree).name if self.tree.rank == 4 else str(self.tree)
        return f"[{self.label}, {name}]"


def vertex_equal(a: MMVertex, b: MMVertex) -> bool:
    return a == b


def vertex_equal_oracle(a: MMVertex, b: MMVertex) -> bool:
    """Same tree and a.label^-1 b.label carried, checked with the word oracle."""
    if a.tree != b.tree:
        return False
    n = a.tree.rank
    return any(
        word_outer_equal(a.label.pcs() + g.pcs(), b.label.pcs(), n) for g in carried_group(a.tree)
    )


def vertex_leq(a: MMVertex, b: MMVertex) -> bool:
    """[alpha, Theta] <= [beta, Lambda]: Theta <= Lambda and [alpha, Lambda] = [beta, Lambda]."""
    if a.tree.rank != b.tree.rank:
        raise HypertreeError("rank mismatch")
    if not leq(a.tree, b.tree):
        return False
    try:
        return MMVertex(a.label, b.tree) == b
    except RepresentationError:  # pragma: no cover - labels are already commuting
        return False


def act(
    phi: CommutingProduct | PartialConjugation | None,
    sigma: Mapping[int, int] | None,
    v: MMVertex,
) -> MMVertex:
    """(phi sigma) . [alpha, Theta] = [phi (sigma alpha sigma^-1), sigma Theta]."""
    n = v.tree.rank
    if sigma is None:
        sigma = {k: k for k in range(1, n + 1)}
    moved = conjugate_product(v.label, sigma)
    tree = relabel(v.tree, sigma)
    if phi is None:
        front: list[PartialConjugation] = []
    elif isinstance(phi, PartialConjugation):
        front = [phi]
    else:
        front = phi.pcs()
    return MMVertex(coset_label(front + moved.pcs(), tree), tree)


def is_fixed_by(x: CommutingProduct | PartialConjugation, v: MMVertex) -> bool:
    """x . v == v, i.e. v.label^-1 x v.label is carried by v.tree.

    Decided without needing x * label to be a commuting product.
    """
    xs = [x] if isinstance(x, PartialConjugation) else x.pcs()
    n = v.tree.rank
    lab = v.label.pcs()
    try:
        moved = product_mul(v.label, CommutingProduct.of(n, *xs))
    except AlgebraError:
        moved = None
    if moved is not None:
        return MMVertex(moved, v.tree) == v
    return any(
        word_outer_equal(xs + lab, lab + g.pcs(), n) for g in carried_group(v.tree)
    )


# -- simplex orbits and corner variables -------------------------------------

ROLES = ("alpha", "beta", "gamma")


@dataclass(frozen=True)
class MMSimplexOrbit:
    """Orbit of a 2-simplex of K_4 under Out (shape only) or Out0 (marked).

    ``marking`` for an L orbit is (i, j, k, l): the line tree L^{i,j}_{k,l}
    together with the vertex Omega^{i,j}.  For an S orbit it is (i, j): the
    star S^i with Omega^{i,j}.  In Out mode the marking is empty.
    """

    shape: str
    marking: tuple[int, ...] = ()
    mode: str = OUT0

    @property
    def name(self) -> str:
        if not self.marking:
            return self.shape
        if self.shape == "L":
            i, j, k, l = self.marking
            return f"L({i},{j}|{k},{l})"
        return f"S({self.marking[0]},{self.marking[1]})"

    def trees(self) -> tuple[Hypertree, Hypertree, Hypertree]:
        """(nuclear, omega, top) trees of a representative simplex."""
        if self.shape == "L":
            i, j, k, l = self.marking or (1, 3, 2, 4)
            return nuclear(4), omega_tree(i, j), line_tree(i, j, k, l)
        i, j = self.marking or (1, 3)
        return nuclear(4), omega_tree(i, j), star_tree(i)

    def relabel(self, sigma: Mapping[int, int]) -> "MMSimplexOrbit":
        return MMSimplexOrbit(self.shape, tuple(sigma[v] for v in self.marking), self.mode)

    def collapse(self) -> "MMSimplexOrbit":
        return MMSimplexOrbit(self.shape, (), OUT)

    def sort_key(self) -> tuple:
        return (self.shape != "L", self.marking)


@dataclass(frozen=True)
class CornerVar:
    """Angle at one corner (alpha: nuclear, beta: omega, gamma: top) of an orbit."""

    orbit: MMSimplexOrbit
    role: str

    @property
    def name(self) -> str:
        return f"{self.role}_{self.orbit.name}"

    def relabel(self, sigma: Mapping[int, int]) -> "CornerVar":
        return CornerVar(self.orbit.relabel(sigma), self.role)

    def collapse(self) -> "CornerVar":
        return CornerVar(self.orbit.collapse(), self.role)

    def sort_key(self) -> tuple:
        return (self.orbit.shape != "L", ROLES.index(self.role), self.orbit.marking)

    def __str__(self) -> str:
        return self.name


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


def all_orbits(mode: str = OUT0) -> list[MMSimplexOrbit]:
    """The 36 (Out0) or 2 (Out) orbits of 2-simplices of K_4."""
    _check_mode(mode)
    if mode == OUT:
        return [MMSimplexOrbit("L", (), OUT), MMSimplexOrbit("S", (), OUT)]
    orbits = set()
    for t in enumerate_hypertrees(4):
        tag = classify4(t)
        if tag.kind == "line":
            i, j, k, l = tag.indices
            orbits.add(MMSimplexOrbit("L", (i, j, k, l)))
            orbits.add(MMSimplexOrbit("L", (k, l, i, j)))
        elif tag.kind == "star":
            i = tag.indices[0]
            orbits |= {MMSimplexOrbit("S", (i, j)) for j in range(1, 5) if j != i}
    return sorted(orbits, key=MMSimplexOrbit.sort_key)


def _tree_orbit(omega: Hypertree, top: Hypertree, mode: str) -> MMSimplexOrbit:
    om, tp = classify4(omega), classify4(top)
    if om.kind != "omega" or tp.kind not in ("line", "star") or not leq(omega, top):
        raise HypertreeError(f"{omega} < {top} is not an omega-top pair")
    shape = "L" if tp.kind == "line" else "S"
    if mode == OUT:
        return MMSimplexOrbit(shape, (), OUT)
    i, j = om.indices
    if shape == "S":
        return MMSimplexOrbit("S", (i, j))
    a, b, c, d = tp.indices
    marking = (a, b, c, d) if (a, b) == (i, j) else (c, d, a, b)
    return MMSimplexOrbit("L", marking)


def simplex_orbit(simplex: Sequence[MMVertex], mode: str = OUT0) -> MMSimplexOrbit:
    """Orbit of a 2-simplex (any three pairwise comparable vertices of K_4)."""
    _check_mode(mode)
    vs = sorted(simplex, key=lambda v: v.tree.height)
    if len(vs) != 3 or [v.tree.height for v in vs] != [0, 1, 2] or vs[0].tree.rank != 4:
        raise HypertreeError("a 2-simplex of K_4 has vertices of heights 0, 1, 2")
    if not all(vertex_leq(a, b) for a, b in combinations(vs, 2)):
        raise HypertreeError("vertices do not form a chain")
    return _tree_orbit(vs[1].tree, vs[2].tree, mode)


def fundamental_domain() -> tuple[tuple[MMVertex, ...], tuple[MMVertex, ...]]:
    """The L- and S-simplices spanning a fundamental domain for Out(W_4)."""
    t0 = MMVertex.identity(nuclear(4))
    om = MMVertex.identity(omega_tree(1, 3))
    return (
        (t0, om, MMVertex.identity(line_tree(1, 3, 2, 4))),
        (t0, om, MMVertex.identity(star_tree(1))),
    )


# -- links ---------------------------------------------------------------------


@dataclass(frozen=True)
class LinkGraph:
    """Link of a vertex of K_4: a graph whose edges carry corner variables."""

    center: MMVertex
    vertices: tuple[MMVertex, ...]
    edges: tuple[tuple[int, int, CornerVar], ...]

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {k: [] for k in range(len(self.vertices))}
        for a, b, _ in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def corner(self, a: int, b: int) -> CornerVar:
        for u, v, c in self.edges:
            if {u, v} == {a, b}:
                return c
        raise KeyError((a, b))

    def degrees(self) -> list[int]:
        adj = self.adjacency()
        return [len(adj[k]) for k in range(len(self.vertices))]

    def to_json(self) -> dict:
        return {
            "center": self.center.to_json(),
            "vertices": [v.to_json() for v in self.vertices],
            "edges": [
                {"source": a, "target": b, "corner_var": c.name} for a, b, c in self.edges
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping, mode: str = OUT0) -> "LinkGraph":
        center = MMVertex.from_json(data["center"])
        rebuilt = link(center, mode)
        if rebuilt.to_json() != data:
            raise ValueError("link JSON does not match the link of its center")
        return rebuilt


def link(center: Hypertree | MMVertex, mode: str = OUT0) -> LinkGraph:
    """The link of ``center`` (a tree means [id, tree]) in K_4."""
    _check_mode(mode)
    if isinstance(center, Hypertree):
        center = MMVertex.identity(center)
    theta = center.tree
    if theta.rank != 4:
        raise NotImplementedError("links are only built for rank 4")
    alpha = center.label.pcs()
    found: set[MMVertex] = set()
    for lam in enumerate_hypertrees(4):
        if lam == theta:
            continue
        if leq(theta, lam):
            found.add(MMVertex(center.label, lam))
        elif leq(lam, theta):
            for g in carried_sorted(theta):
                found.add(MMVertex.from_word(alpha + g.pcs(), lam))
    verts = tuple(sorted(found, key=MMVertex.sort_key))
    role = ROLES[theta.height]
    edges = []
    for a, b in combinations(range(len(verts)), 2):
        u, v = verts[a], verts[b]
        if vertex_leq(u, v) or vertex_leq(v, u):
            trees = sorted([theta, u.tree, v.tree], key=lambda t: t.height)
            orbit = _tree_orbit(trees[1], trees[2], mode)
            edges.append((a, b, CornerVar(orbit, role)))
    return LinkGraph(center, verts, tuple(edges))


def representative_trees(mode: str = OUT0) -> list[Hypertree]:
    """One tree per vertex orbit: all 29 under Out0, four under Out."""
    _check_mode(mode)
    if mode == OUT0:
        return enumerate_hypertrees(4)
    return [nuclear(4), omega_tree(1, 3), line_tree(1, 3, 2, 4), star_tree(1)]
