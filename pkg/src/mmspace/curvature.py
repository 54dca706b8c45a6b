"""Corner-angle inequalities forced by the link condition on K_4, and their LP.

Angles are measured in units of pi, so a triangle row reads ``sum <= 1`` and
a cycle row reads ``sum >= 2``.  Variables live in the closed box [0, 1]; the
open box (0, 1] of genuine angles can only make the region smaller.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Callable, Iterable, Mapping, Sequence

from .complex import (
    OUT,
    OUT0,
    ROLES,
    CornerVar,
    MMSimplexOrbit,
    all_orbits,
    link,
    representative_trees,
    _check_mode,
)
from .cycles import simple_cycles
from .lp import maximise, solve_feasibility

LE = "<="
GE = ">="
EUCLIDEAN = "euclidean"
HYPERBOLIC = "hyperbolic"


class AngleSystemError(ValueError):
    """Malformed angle system or certificate."""


class InvarianceError(ValueError):
    """A row set that should be closed under the S_4 relabelling is not."""


def fmt(q: Fraction | int) -> str:
    return str(Fraction(q))


_VAR_RE = re.compile(r"^(alpha|beta|gamma)_([LS])(?:\(([\d,|]+)\))?$")


def parse_corner_var(name: str) -> CornerVar:
    """Inverse of ``CornerVar.name``: 'beta_L', 'alpha_L(1,3|2,4)', 'gamma_S(1,3)'."""
    m = _VAR_RE.match(name.strip())
    if not m:
        raise AngleSystemError(f"not a corner variable: {name!r}")
    role, shape, marks = m.groups()
    if marks is None:
        return CornerVar(MMSimplexOrbit(shape, (), OUT), role)
    marking = tuple(int(t) for t in re.split(r"[,|]", marks))
    if len(marking) != (4 if shape == "L" else 2):
        raise AngleSystemError(f"bad marking in {name!r}")
    return CornerVar(MMSimplexOrbit(shape, marking, OUT0), role)


@dataclass(frozen=True)
class Constraint:
    """sum coeffs[v] * v  (sense)  rhs, with coefficients sorted by variable."""

    coeffs: tuple[tuple[CornerVar, Fraction], ...]
    sense: str
    rhs: Fraction

    @classmethod
    def of(cls, coeffs: Mapping[CornerVar, Fraction | int] | Iterable[CornerVar], sense: str, rhs) -> "Constraint":
        if sense not in (LE, GE):
            raise AngleSystemError(f"sense must be '<=' or '>=', got {sense!r}")
        acc: dict[CornerVar, Fraction] = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else ((v, 1) for v in coeffs)
        for v, c in items:
            acc[v] = acc.get(v, Fraction(0)) + Fraction(c)
        terms = tuple(sorted(((v, c) for v, c in acc.items() if c), key=lambda t: t[0].sort_key()))
        return cls(terms, sense, Fraction(rhs))

    def as_dict(self) -> dict[CornerVar, Fraction]:
        return dict(self.coeffs)

    def lhs(self, point: Mapping[CornerVar, Fraction]) -> Fraction:
        return sum((c * Fraction(point[v]) for v, c in self.coeffs), Fraction(0))

    def holds(self, point: Mapping[CornerVar, Fraction]) -> bool:
        value = self.lhs(point)
        return value <= self.rhs if self.sense == LE else value >= self.rhs

    def as_le(self) -> tuple[dict[CornerVar, Fraction], Fraction]:
        if self.sense == LE:
            return self.as_dict(), self.rhs
        return {v: -c for v, c in self.coeffs}, -self.rhs

    def relabel(self, sigma: Mapping[int, int]) -> "Constraint":
        return Constraint.of({v.relabel(sigma): c for v, c in self.coeffs}, self.sense, self.rhs)

    def collapse(self) -> "Constraint":
        acc: dict[CornerVar, Fraction] = {}
        for v, c in self.coeffs:
            key = v.collapse()
            acc[key] = acc.get(key, Fraction(0)) + c
        return Constraint.of(acc, self.sense, self.rhs)

    def to_json(self) -> dict:
        return {
            "coeffs": {v.name: fmt(c) for v, c in self.coeffs},
            "sense": self.sense,
            "rhs": fmt(self.rhs),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Constraint":
        coeffs = {parse_corner_var(k): Fraction(c) for k, c in data["coeffs"].items()}
        return cls.of(coeffs, data["sense"], Fraction(data["rhs"]))

    def __str__(self) -> str:
        parts = []
        for v, c in self.coeffs:
            parts.append(v.name if c == 1 else f"{fmt(c)}*{v.name}")
        return f"{' + '.join(parts) or '0'} {self.sense} {fmt(self.rhs)}"


def _dedupe(rows: Iterable[Constraint]) -> tuple[Constraint, ...]:
    seen: dict[Constraint, None] = {}
    for r in rows:
        seen.setdefault(r, None)
    return tuple(seen)


@dataclass(frozen=True)
class AngleSystem:
    mode: str
    variables: tuple[CornerVar, ...]
    rows: tuple[Constraint, ...]
    geometry: str = EUCLIDEAN

    def __post_init__(self):
        _check_mode(self.mode)
        if self.geometry not in (EUCLIDEAN, HYPERBOLIC):
            raise AngleSystemError(f"unknown geometry {self.geometry!r}")
        declared = set(self.variables)
        if len(declared) != len(self.variables):
            raise AngleSystemError("duplicate variables")
        for r in self.rows:
            missing = {v for v, _ in r.coeffs} - declared
            if missing:
                raise AngleSystemError(f"row {r} uses undeclared {sorted(v.name for v in missing)}")
        object.__setattr__(self, "rows", _dedupe(self.rows))

    @property
    def strict_triangles(self) -> bool:
        """Hyperbolic triangles have angle sum strictly below pi; rows are unchanged."""
        return self.geometry == HYPERBOLIC

    def row_set(self) -> frozenset[Constraint]:
        return frozenset(self.rows)

    def without(self, drop: Callable[[Constraint], bool]) -> "AngleSystem":
        return AngleSystem(self.mode, self.variables, tuple(r for r in self.rows if not drop(r)), self.geometry)

    def relabel(self, sigma: Mapping[int, int]) -> "AngleSystem":
        return AngleSystem(self.mode, self.variables, tuple(r.relabel(sigma) for r in self.rows), self.geometry)

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "geometry": self.geometry,
            "variables": [v.name for v in self.variables],
            "rows": [r.to_json() for r in self.rows],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "AngleSystem":
        try:
            variables = tuple(parse_corner_var(n) for n in data["variables"])
            rows = tuple(Constraint.from_json(r) for r in data["rows"])
            return cls(data.get("mode", OUT0), variables, rows, data.get("geometry", EUCLIDEAN))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise AngleSystemError(f"malformed system JSON: {exc}") from exc


# -- generation ----------------------------------------------------------------


def corner_variables(mode: str = OUT0) -> list[CornerVar]:
    """6 variables in Out mode, 108 in Out0 mode, ordered L before S, then role."""
    return sorted((CornerVar(o, r) for o in all_orbits(mode) for r in ROLES), key=CornerVar.sort_key)


def triangle_constraints(mode: str = OUT0) -> list[Constraint]:
    return [Constraint.of([CornerVar(o, r) for r in ROLES], LE, 1) for o in all_orbits(mode)]


def link_cycle_constraints(mode: str = OUT0) -> list[Constraint]:
    """One row per simple cycle of each representative link: corner sum >= 2."""
    rows = []
    for tree in representative_trees(mode):
        g = link(tree, mode)
        for cyc in simple_cycles(g.adjacency()):
            steps = zip(cyc, cyc[1:] + cyc[:1])
            rows.append(Constraint.of([g.corner(a, b) for a, b in steps], GE, 2))
    return list(_dedupe(rows))


def build_system(mode: str = OUT0, geometry: str = EUCLIDEAN) -> AngleSystem:
    rows = triangle_constraints(mode) + link_cycle_constraints(mode)
    return AngleSystem(mode, tuple(corner_variables(mode)), tuple(rows), geometry)


def _var(role: str, shape: str, *marking: int) -> CornerVar:
    mode = OUT0 if marking else OUT
    return CornerVar(MMSimplexOrbit(shape, tuple(marking), mode), role)


def _row(terms: Iterable[tuple[CornerVar, int]], sense: str, rhs: int) -> Constraint:
    acc: dict[CornerVar, Fraction] = {}
    for v, c in terms:
        acc[v] = acc.get(v, Fraction(0)) + c
    return Constraint.of(acc, sense, rhs)


def hand_derived_families(mode: str = OUT0) -> dict[str, list[Constraint]]:
    """The hand-derived inequality families, keyed by where they come from.

    triangle_L / triangle_S: angle sums of the two simplex shapes.
    omega_LL / omega_LS: 4-cycles in the link of an Omega vertex.
    line: the 8-cycle link of a line vertex.  star: 6-cycles at a star vertex.
    nuclear_L / nuclear_LS: two kinds of 8-cycles at the nuclear vertex.
    """
    _check_mode(mode)
    if mode == OUT:
        L = {r: _var(r, "L") for r in ROLES}
        S = {r: _var(r, "S") for r in ROLES}
        return {
            "triangle_L": [_row(((v, 1) for v in L.values()), LE, 1)],
            "triangle_S": [_row(((v, 1) for v in S.values()), LE, 1)],
            "omega_LL": [_row([(L["beta"], 4)], GE, 2)],
            "omega_LS": [_row([(L["beta"], 2), (S["beta"], 2)], GE, 2)],
            "line": [_row([(L["gamma"], 8)], GE, 2)],
            "star": [_row([(S["gamma"], 6)], GE, 2)],
            "nuclear_L": [_row([(L["alpha"], 8)], GE, 2)],
            "nuclear_LS": [_row([(L["alpha"], 4), (S["alpha"], 4)], GE, 2)],
        }
    fam: dict[str, list[Constraint]] = {k: [] for k in (
        "triangle_L", "triangle_S", "omega_LL", "omega_LS", "line", "star", "nuclear_L", "nuclear_LS")}
    for o in all_orbits(OUT0):
        key = "triangle_L" if o.shape == "L" else "triangle_S"
        fam[key].append(_row(((CornerVar(o, r), 1) for r in ROLES), LE, 1))
    for i, j, k, l in permutations(range(1, 5)):
        a, b, g = "alpha", "beta", "gamma"
        fam["omega_LL"].append(_row([(_var(b, "L", i, j, k, l), 2), (_var(b, "L", i, j, l, k), 2)], GE, 2))
        fam["omega_LS"].append(_row([(_var(b, "L", i, j, k, l), 2), (_var(b, "S", i, j), 2)], GE, 2))
        fam["line"].append(_row([(_var(g, "L", i, j, k, l), 4), (_var(g, "L", k, l, i, j), 4)], GE, 2))
        fam["star"].append(_row([(_var(g, "S", i, j), 2), (_var(g, "S", i, k), 2), (_var(g, "S", i, l), 2)], GE, 2))
        fam["nuclear_L"].append(_row([(_var(a, "L", *m), 1) for m in (
            (i, j, k, l), (k, l, i, j), (k, l, j, i), (j, i, k, l),
            (j, i, l, k), (l, k, j, i), (l, k, i, j), (i, j, l, k))], GE, 2))
        fam["nuclear_LS"].append(_row([
            (_var(a, "L", i, j, k, l), 1), (_var(a, "L", k, l, i, j), 1),
            (_var(a, "S", k, l), 1), (_var(a, "S", k, j), 1),
            (_var(a, "L", k, j, i, l), 1), (_var(a, "L", i, l, k, j), 1),
            (_var(a, "S", i, l), 1), (_var(a, "S", i, j), 1)], GE, 2))
    return {k: list(_dedupe(v)) for k, v in fam.items()}


def hand_derived_system(mode: str = OUT0) -> AngleSystem:
    """Only the hand-derived families, without the other cycle rows."""
    rows = [r for rs in hand_derived_families(mode).values() for r in rs]
    return AngleSystem(mode, tuple(corner_variables(mode)), tuple(rows))


# -- feasibility -----------------------------------------------------------------


@dataclass(frozen=True)
class FarkasCertificate:
    """Nonnegative multipliers for every row of the system in <= form.

    ``multipliers`` align with ``system.rows``; ``upper`` with the bounds
    v <= 1 and ``lower`` with -v <= 0, both in variable order.
    """

    multipliers: tuple[Fraction, ...]
    upper: tuple[Fraction, ...]
    lower: tuple[Fraction, ...]

    def to_json(self) -> dict:
        return {
            "multipliers": [fmt(q) for q in self.multipliers],
            "upper_bound_multipliers": [fmt(q) for q in self.upper],
            "lower_bound_multipliers": [fmt(q) for q in self.lower],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "FarkasCertificate":
        return cls(
            tuple(Fraction(q) for q in data["multipliers"]),
            tuple(Fraction(q) for q in data["upper_bound_multipliers"]),
            tuple(Fraction(q) for q in data["lower_bound_multipliers"]),
        )

    def support(self, system: AngleSystem) -> list[tuple[Fraction, Constraint]]:
        return [(m, r) for m, r in zip(self.multipliers, system.rows) if m]


@dataclass(frozen=True)
class Feasible:
    point: dict[CornerVar, Fraction]
    # True when some variable is 0: fine for the closed box, not a real angle.
    caveat: bool = False

    @property
    def verdict(self) -> str:
        return "FEASIBLE"


@dataclass(frozen=True)
class Infeasible:
    certificate: FarkasCertificate

    @property
    def verdict(self) -> str:
        return "INFEASIBLE"


def _matrix(system: AngleSystem, rows: Sequence[Constraint]) -> tuple[list[dict[int, Fraction]], list[Fraction]]:
    """<= form of ``rows`` followed by the upper bounds v <= 1."""
    index = {v: k for k, v in enumerate(system.variables)}
    a_rows, b = [], []
    for r in rows:
        coeffs, rhs = r.as_le()
        a_rows.append({index[v]: c for v, c in coeffs.items()})
        b.append(rhs)
    for k in range(len(system.variables)):
        a_rows.append({k: Fraction(1)})
        b.append(Fraction(1))
    return a_rows, b


# Cycle rows with total weight above this wait until a candidate point
# violates them (row generation).  Any value keeps the answer exact.
INITIAL_WEIGHT = 8


def _initial_rows(system: AngleSystem) -> list[int]:
    return [
        k for k, r in enumerate(system.rows)
        if r.sense == LE or sum(abs(c) for _, c in r.coeffs) <= INITIAL_WEIGHT
    ]


def _centre(system: AngleSystem, rows: Sequence[Constraint]) -> dict[CornerVar, Fraction] | None:
    """Point of the sub-system maximising min(v, 1 - v); None if empty."""
    a_rows, b = _matrix(system, rows)
    nv = len(system.variables)
    t = nv
    for k in range(nv):
        a_rows.append({t: Fraction(1), k: Fraction(-1)})
        b.append(Fraction(0))
        a_rows.append({t: Fraction(1), k: Fraction(1)})
        b.append(Fraction(1))
    best = maximise(a_rows, b, nv + 1, t)
    if best is None:
        return None
    return {v: best[1][k] for k, v in enumerate(system.variables)}


def _certificate(system: AngleSystem, active: list[int], farkas: list[Fraction]) -> FarkasCertificate:
    a_rows, _ = _matrix(system, [system.rows[k] for k in active])
    nv = len(system.variables)
    mult = [Fraction(0)] * len(system.rows)
    for pos, k in enumerate(active):
        mult[k] = farkas[pos]
    upper = tuple(farkas[len(active):])
    lower = [Fraction(0)] * nv
    for lam, row in zip(farkas, a_rows):
        if lam:
            for k, c in row.items():
                lower[k] += lam * c
    return FarkasCertificate(tuple(mult), upper, tuple(lower))


def feasible(system: AngleSystem) -> Feasible | Infeasible:
    """Exact decision over the closed box [0, 1]^variables.

    Rows are brought in lazily: solve a sub-system, then add every row the
    candidate point violates.  An infeasible sub-system already certifies the
    full one.  A feasible answer maximises min(v, 1 - v) over all variables.
    """
    if not isinstance(system, AngleSystem):
        raise AngleSystemError("expected an AngleSystem")
    active = _initial_rows(system)
    nv = len(system.variables)
    while True:
        rows = [system.rows[k] for k in active]
        res = solve_feasibility(*_matrix(system, rows), nv)
        if not res.feasible:
            return Infeasible(_certificate(system, active, res.farkas))
        point = _centre(system, rows)
        chosen = set(active)
        violated = [k for k, r in enumerate(system.rows) if k not in chosen and not r.holds(point)]
        if not violated:
            return Feasible(point, caveat=any(q == 0 for q in point.values()))
        active = sorted(chosen | set(violated))


def check_point(system: AngleSystem, point: Mapping[CornerVar, Fraction]) -> bool:
    """Exact substitution into every row and the box bounds."""
    if set(point) != set(system.variables):
        raise AngleSystemError("point does not assign exactly the system variables")
    return all(0 <= point[v] <= 1 for v in system.variables) and all(r.holds(point) for r in system.rows)


def certificate_combination(cert: FarkasCertificate, system: AngleSystem) -> tuple[dict[CornerVar, Fraction], Fraction]:
    """The combined row sum(coeffs) <= rhs produced by the multipliers."""
    nv = len(system.variables)
    if len(cert.multipliers) != len(system.rows) or len(cert.upper) != nv or len(cert.lower) != nv:
        raise AngleSystemError("certificate dimension does not match the system")
    total = {v: Fraction(0) for v in system.variables}
    rhs = Fraction(0)
    for m, r in zip(cert.multipliers, system.rows):
        coeffs, b = r.as_le()
        for v, c in coeffs.items():
            total[v] += m * c
        rhs += m * b
    for k, v in enumerate(system.variables):
        total[v] += cert.upper[k] - cert.lower[k]
        rhs += cert.upper[k]
    return total, rhs


def verify_certificate(cert: FarkasCertificate, system: AngleSystem) -> bool:
    """Nonnegative multipliers whose combination reads 0 <= (negative)."""
    total, rhs = certificate_combination(cert, system)
    nonneg = all(q >= 0 for q in (*cert.multipliers, *cert.upper, *cert.lower))
    return nonneg and all(c == 0 for c in total.values()) and rhs < 0


# -- symmetry --------------------------------------------------------------------


def sigma4() -> list[dict[int, int]]:
    return [dict(zip(range(1, 5), p)) for p in permutations(range(1, 5))]


def is_sigma4_invariant(system: AngleSystem) -> bool:
    rows = system.row_set()
    return all(frozenset(r.relabel(s) for r in rows) == rows for s in sigma4())


def symmetrize(system: AngleSystem) -> AngleSystem:
    """Average the Out0 system over S_4, giving rows in the six shape angles.

    Summing a row over all 24 relabellings and dividing by 24 replaces each
    variable by the average over its orbit, which is the shape variable.
    """
    if system.mode != OUT0:
        raise AngleSystemError("symmetrize expects an Out0 system")
    if not is_sigma4_invariant(system):
        raise InvarianceError("row set is not closed under relabelling by S_4")
    rows = tuple(r.collapse() for r in system.rows)
    return AngleSystem(OUT, tuple(corner_variables(OUT)), rows, system.geometry)


# -- negative control --------------------------------------------------------------

STAR_ROW = Constraint.of({_var("gamma", "S"): 6}, GE, 2)
CONTROL_POINT = {
    _var("alpha", "L"): Fraction(1, 4),
    _var("beta", "L"): Fraction(1, 2),
    _var("gamma", "L"): Fraction(1, 4),
    _var("alpha", "S"): Fraction(1, 4),
    _var("beta", "S"): Fraction(1, 2),
    _var("gamma", "S"): Fraction(1, 4),
}


def negative_control() -> AngleSystem:
    """The Out-mode system with the 6 gamma_S >= 2 row removed."""
    return build_system(OUT).without(lambda r: r == STAR_ROW)
