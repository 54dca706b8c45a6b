"""Partial conjugations of W_n = Z2 * ... * Z2 and a free-product word oracle.

Group elements appear in two guises.  ``CommutingProduct`` is the compact
label used throughout the complex: a product of pairwise commuting partial
conjugations, at most one per acting letter.  ``AutMap`` is an explicit
automorphism (images of the generators as reduced words); it is slow but
decides equality in Out0(W_n) for arbitrary products, and is the independent
check for everything the combinatorial shortcuts claim.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence


class AlgebraError(ValueError):
    """Operation leaves the commuting-product representation."""


class PCError(ValueError):
    """Malformed partial conjugation or word."""


# -- partial conjugations ---------------------------------------------------


def _min_other(n: int, i: int) -> int:
    return 1 if i != 1 else 2


@dataclass(frozen=True)
class PartialConjugation:
    """x_{i,D}: conjugate a_j by a_i for j in D, fix the other generators.

    The stored domain is whatever was passed; :meth:`canonical` picks the
    representative of the outer class that avoids min([n] - {i}).
    """

    n: int
    i: int
    domain: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "domain", frozenset(self.domain))
        if self.n < 2:
            raise PCError(f"rank must be at least 2, got {self.n}")
        if not 1 <= self.i <= self.n:
            raise PCError(f"acting letter {self.i} not in [1..{self.n}]")
        if not self.domain:
            raise PCError("domain must be nonempty")
        if self.i in self.domain or not all(1 <= d <= self.n for d in self.domain):
            raise PCError(f"domain {sorted(self.domain)} must lie in [{self.n}] - {{{self.i}}}")

    @property
    def complement(self) -> frozenset[int]:
        return frozenset(range(1, self.n + 1)) - self.domain - {self.i}

    @property
    def extended(self) -> frozenset[int]:
        """D ∪ {i}."""
        return self.domain | {self.i}

    @property
    def extended_complement(self) -> frozenset[int]:
        """D^c ∪ {i}."""
        return self.complement | {self.i}

    @property
    def is_full(self) -> bool:
        """Conjugation of every other generator, i.e. an inner automorphism."""
        return not self.complement

    def canonical(self) -> "PartialConjugation":
        if self.is_full or _min_other(self.n, self.i) not in self.domain:
            return self
        return PartialConjugation(self.n, self.i, self.complement)

    @property
    def is_canonical(self) -> bool:
        return self.canonical() == self

    def sort_key(self) -> tuple:
        return (self.i, tuple(sorted(self.domain)))

    def __str__(self) -> str:
        return f"x[{self.i},{{{','.join(map(str, sorted(self.domain)))}}}]"


def pc(n: int, i: int, *domain: int) -> PartialConjugation:
    """Shorthand: ``pc(4, 1, 3)`` is x_{1,{3}} at rank 4 (not canonicalised)."""
    return PartialConjugation(n, i, frozenset(domain))


def canonical_pc(n: int, i: int, domain: Iterable[int]) -> PartialConjugation:
    return PartialConjugation(n, i, frozenset(domain)).canonical()


_PC_RE = re.compile(r"^\s*[xy]\[\s*(\d+)\s*,\s*\{([\d\s,]*)\}\s*\]\s*$")


def parse_pc(text: str, n: int) -> PartialConjugation:
    """Parse the textual notation ``x[i,{d1,d2,...}]``."""
    m = _PC_RE.match(text)
    if not m:
        raise PCError(f"cannot parse partial conjugation {text!r}; expected x[i,{{...}}]")
    i = int(m.group(1))
    dom = [int(t) for t in m.group(2).replace(" ", "").split(",") if t]
    return PartialConjugation(n, i, frozenset(dom))


def commutes(x: PartialConjugation, y: PartialConjugation) -> bool:
    """Commuting criterion for two partial conjugations (in Out0 or Aut0)."""
    if x.n != y.n:
        raise PCError(f"rank mismatch: {x.n} vs {y.n}")
    if x.i == y.i:
        return True
    return (
        not (x.extended & y.extended_complement)
        or not (x.extended_complement & y.extended)
        or not (x.extended & y.extended)
    )


def generators(n: int) -> list[PartialConjugation]:
    """The canonical generating set P0 of Out0(W_n), in a fixed order."""
    out = []
    for i in range(1, n + 1):
        rest = [v for v in range(1, n + 1) if v not in (i, _min_other(n, i))]
        for k in range(1, len(rest) + 1):
            for dom in combinations(rest, k):
                out.append(PartialConjugation(n, i, frozenset(dom)))
    return out


def conjugate_pc(x: PartialConjugation, sigma: Mapping[int, int]) -> PartialConjugation:
    """sigma x_{i,D} sigma^-1 = x_{sigma(i), sigma(D)}."""
    return PartialConjugation(x.n, sigma[x.i], frozenset(sigma[d] for d in x.domain))


# -- commuting products -----------------------------------------------------


@dataclass(frozen=True)
class CommutingProduct:
    """Product of pairwise commuting canonical partial conjugations.

    ``factors`` maps acting letter -> canonical domain, stored as a sorted
    tuple of pairs.  Identity is the empty product.  Every element is an
    involution, so the product is its own inverse.
    """

    n: int
    factors: tuple[tuple[int, frozenset[int]], ...] = ()

    def __post_init__(self):
        facs = tuple(sorted(((i, frozenset(d)) for i, d in self.factors), key=lambda p: p[0]))
        letters = [i for i, _ in facs]
        if len(set(letters)) != len(letters):
            raise AlgebraError(f"repeated acting letter in {facs}")
        for i, d in facs:
            x = PartialConjugation(self.n, i, d)
            if not x.is_canonical or x.is_full:
                raise AlgebraError(f"factor {x} is not a canonical non-inner partial conjugation")
        xs = [PartialConjugation(self.n, i, d) for i, d in facs]
        for a, b in combinations(xs, 2):
            if not commutes(a, b):
                raise AlgebraError(f"factors {a} and {b} do not commute")
        object.__setattr__(self, "factors", facs)

    @classmethod
    def identity(cls, n: int) -> "CommutingProduct":
        return cls(n, ())

    @classmethod
    def of(cls, n: int, *xs: PartialConjugation) -> "CommutingProduct":
        p = cls.identity(n)
        for x in xs:
            p = multiply(p, x)
        return p

    @property
    def is_identity(self) -> bool:
        return not self.factors

    def pcs(self) -> list[PartialConjugation]:
        return [PartialConjugation(self.n, i, d) for i, d in self.factors]

    def coords(self) -> dict[int, frozenset[int]]:
        """Abelianised coordinates: letter -> canonical domain."""
        return dict(self.factors)

    def sort_key(self) -> tuple:
        return (len(self.factors), tuple((i, tuple(sorted(d))) for i, d in self.factors))

    def to_json(self) -> dict:
        return {"n": self.n, "factors": {str(i): sorted(d) for i, d in self.factors}}

    @classmethod
    def from_json(cls, data: Mapping) -> "CommutingProduct":
        n = int(data["n"])
        return cls.of(n, *(canonical_pc(n, int(i), d) for i, d in data["factors"].items()))

    def __str__(self) -> str:
        return "id" if self.is_identity else "".join(str(x) for x in self.pcs())


def multiply(p: CommutingProduct, x: PartialConjugation) -> CommutingProduct:
    """p * x, staying inside commuting products (same-letter factors merge)."""
    if p.n != x.n:
        raise PCError(f"rank mismatch: {p.n} vs {x.n}")
    x = x.canonical()
    if x.is_full:
        return p
    coords = p.coords()
    for y in p.pcs():
        if y.i != x.i and not commutes(x, y):
            raise AlgebraError(f"{x} does not commute with factor {y} of {p}")
    if x.i in coords:
        merged = coords[x.i] ^ x.domain
        if merged:
            coords[x.i] = merged
        else:
            del coords[x.i]
    else:
        coords[x.i] = x.domain
    return CommutingProduct(p.n, tuple(coords.items()))


def product_mul(p: CommutingProduct, q: CommutingProduct) -> CommutingProduct:
    for x in q.pcs():
        p = multiply(p, x)
    return p


def abelian_sum(*items: CommutingProduct | PartialConjugation) -> dict[int, frozenset[int]]:
    """Image in the abelianisation: letterwise symmetric difference of canonical domains."""
    coords: dict[int, frozenset[int]] = {}
    for it in items:
        xs = it.pcs() if isinstance(it, CommutingProduct) else [it.canonical()]
        for x in xs:
            x = x.canonical()
            if x.is_full:
                continue
            coords[x.i] = coords.get(x.i, frozenset()) ^ x.domain
    return {i: d for i, d in coords.items() if d}


def product_from_coords(n: int, coords: Mapping[int, frozenset[int]]) -> CommutingProduct | None:
    """The commuting product with these coordinates, or None if the factors clash."""
    try:
        return CommutingProduct(n, tuple(coords.items()))
    except AlgebraError:
        return None


def conjugate_product(p: CommutingProduct, sigma: Mapping[int, int]) -> CommutingProduct:
    return CommutingProduct.of(p.n, *(conjugate_pc(x, sigma) for x in p.pcs()))


# -- words in W_n -----------------------------------------------------------


def reduce_letters(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for a in letters:
        if out and out[-1] == a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


@dataclass(frozen=True)
class GroupWord:
    """Reduced word over the involutions a_1..a_n (no equal neighbours)."""

    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", reduce_letters(self.letters))

    @classmethod
    def of(cls, *letters: int) -> "GroupWord":
        return cls(tuple(letters))

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord(self.letters[::-1])

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return "".join(f"a{a}" for a in self.letters) or "e"


@dataclass(frozen=True)
class AutMap:
    """Automorphism of W_n given by the images of a_1..a_n.

    ``factors`` records the partial conjugations (applied right to left as
    functions) this map was built from; it is what makes :func:`invert`
    possible and is ignored by equality.
    """

    n: int
    images: tuple[GroupWord, ...]
    factors: tuple[PartialConjugation, ...] | None = field(default=None, compare=False)

    @classmethod
    def identity(cls, n: int) -> "AutMap":
        return cls(n, tuple(GroupWord.of(k) for k in range(1, n + 1)), ())

    def image(self, k: int) -> GroupWord:
        return self.images[k - 1]


def as_automorphism(x: PartialConjugation | CommutingProduct) -> AutMap:
    if isinstance(x, CommutingProduct):
        return product_automorphism(x.pcs(), x.n)
    ims = []
    for k in range(1, x.n + 1):
        ims.append(GroupWord.of(x.i, k, x.i) if k in x.domain else GroupWord.of(k))
    return AutMap(x.n, tuple(ims), (x,))


def apply(f: AutMap, w: GroupWord) -> GroupWord:
    out: list[int] = []
    for a in w.letters:
        out.extend(f.images[a - 1].letters)
    return GroupWord(tuple(out))


def compose(f: AutMap, g: AutMap) -> AutMap:
    """f ∘ g: apply g first, then f."""
    if f.n != g.n:
        raise PCError(f"rank mismatch: {f.n} vs {g.n}")
    facs = None if f.factors is None or g.factors is None else f.factors + g.factors
    return AutMap(f.n, tuple(apply(f, im) for im in g.images), facs)


def product_automorphism(xs: Sequence[PartialConjugation], n: int) -> AutMap:
    """x_1 x_2 ... x_k as a function composition (x_k acts first)."""
    f = AutMap.identity(n)
    for x in xs:
        f = compose(f, as_automorphism(x))
    return f


def invert(f: AutMap) -> AutMap:
    """Inverse of a product of partial conjugations: the reversed product."""
    if f.factors is None:
        raise PCError("cannot invert an AutMap without its factor history")
    return product_automorphism(list(reversed(f.factors)), f.n)


def _conjugator(w: GroupWord, k: int) -> GroupWord:
    """Split a reduced word u a_k u^-1 into u (u not ending in a_k)."""
    ls = w.letters
    m, odd = divmod(len(ls), 2)
    if not odd or ls[m] != k or ls[:m] != tuple(reversed(ls[m + 1:])):
        raise PCError(f"image {w} is not a conjugate of a{k}")
    return GroupWord(ls[:m])


def is_inner(f: AutMap) -> GroupWord | None:
    """The conjugator w with f(a) = w a w^-1 for all a, or None if f is outer.

    The centraliser of a_k in W_n (n >= 3) is {1, a_k}, so the only
    candidates from generator k are u_k and u_k a_k.
    """
    candidates: set[GroupWord] | None = None
    for k in range(1, f.n + 1):
        u = _conjugator(f.image(k), k)
        here = {u, u * GroupWord.of(k)}
        candidates = here if candidates is None else candidates & here
        if not candidates:
            return None
    assert candidates is not None
    for w in sorted(candidates, key=len):
        if all(
            w * GroupWord.of(k) * w.inverse() == f.image(k) for k in range(1, f.n + 1)
        ):
            return w
    return None


def outer_equal(f: AutMap, g: AutMap) -> bool:
    return is_inner(compose(invert(f), g)) is not None


def word_outer_equal(
    left: Sequence[PartialConjugation], right: Sequence[PartialConjugation], n: int
) -> bool:
    """Equality in Out0(W_n) of two products of partial conjugations."""
    return outer_equal(product_automorphism(left, n), product_automorphism(right, n))


def oracle_commutes(x: PartialConjugation, y: PartialConjugation) -> bool:
    """Commutation in Out0 decided by the word oracle alone."""
    return word_outer_equal([x, y], [y, x], x.n)


# -- the finite presentation ------------------------------------------------


def relation_instances(n: int) -> list[tuple[tuple[PartialConjugation, ...], str]]:
    """Every instance of the relation families over P0, as words equal to 1.

    R1: x x.  R2: x_{i,D} x_{i,D'} x_{i,D△D'} for D != D'.  R3: the
    commutator x y x y for distinct letters satisfying the commuting
    criterion.
    """
    if n < 3:
        raise PCError(f"presentation needs n >= 3, got {n}")
    gens = generators(n)
    out: list[tuple[tuple[PartialConjugation, ...], str]] = [((x, x), "R1") for x in gens]
    for x, y in combinations(gens, 2):
        if x.i == y.i:
            z = PartialConjugation(n, x.i, x.domain ^ y.domain)
            out.append(((x, y, z), "R2"))
    for x, y in combinations(gens, 2):
        if x.i != y.i and commutes(x, y):
            out.append(((x, y, x, y), "R3"))
    return out
