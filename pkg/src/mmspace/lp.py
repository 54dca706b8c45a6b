"""Exact rational LP feasibility for systems A x <= b, x >= 0.

A single-auxiliary phase 1 (minimise x0 subject to A x - x0 <= b) is solved
with a dictionary simplex over Fractions.  When the optimum has x0 > 0, the
final dictionary's slack coefficients are a Farkas witness y >= 0 with
y A >= 0 and y b < 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Row = dict[int, Fraction]

# Consecutive degenerate pivots tolerated before switching to Bland's rule.
DEGENERATE_LIMIT = 50


@dataclass
class LPResult:
    feasible: bool
    point: list[Fraction] | None = None
    farkas: list[Fraction] | None = None
    pivots: int = 0


class _Dictionary:
    """basic var -> (constant, {nonbasic var: coefficient}) with basic = const + sum."""

    def __init__(self, rows: dict[int, tuple[Fraction, Row]], objective: tuple[Fraction, Row]):
        self.rows = rows
        self.obj = objective
        self.pivots = 0

    def pivot(self, enter: int, leave: int) -> None:
        const, coeffs = self.rows.pop(leave)
        a = coeffs.pop(enter)
        # leave = const + a*enter + rest  =>  enter = (leave - const - rest) / a
        new_coeffs = {v: -c / a for v, c in coeffs.items()}
        new_coeffs[leave] = 1 / a
        new_const = -const / a
        for var, (c0, cs) in list(self.rows.items()):
            if enter in cs:
                self.rows[var] = _substitute(c0, cs, enter, new_const, new_coeffs)
        self.obj = _substitute(*self.obj, enter, new_const, new_coeffs)
        self.rows[enter] = (new_const, new_coeffs)
        self.pivots += 1

    def maximise(self) -> None:
        degenerate = 0
        while True:
            const, coeffs = self.obj
            positive = [v for v, c in coeffs.items() if c > 0]
            if not positive:
                return
            if degenerate >= DEGENERATE_LIMIT:
                enter = min(positive)
            else:
                enter = max(positive, key=lambda v: (coeffs[v], -v))
            leave, best = None, None
            for var, (c0, cs) in self.rows.items():
                a = cs.get(enter, 0)
                if a < 0:
                    ratio = c0 / -a
                    if best is None or ratio < best or (ratio == best and var < leave):
                        leave, best = var, ratio
            if leave is None:
                raise ArithmeticError("objective is unbounded on the feasible region")
            degenerate = degenerate + 1 if best == 0 else 0
            self.pivot(enter, leave)


def _substitute(c0: Fraction, cs: Row, var: int, vconst: Fraction, vcoeffs: Row) -> tuple[Fraction, Row]:
    k = cs[var]
    out = {v: c for v, c in cs.items() if v != var}
    for v, c in vcoeffs.items():
        s = out.get(v, 0) + k * c
        if s:
            out[v] = s
        else:
            out.pop(v, None)
    return c0 + k * vconst, out


def _phase_one(a_rows: Sequence[Row], b: Sequence[Fraction], nvars: int) -> tuple[_Dictionary, list[int]]:
    if len(a_rows) != len(b):
        raise ValueError("row/rhs length mismatch")
    aux = nvars
    slack = [nvars + 1 + r for r in range(len(a_rows))]
    rows: dict[int, tuple[Fraction, Row]] = {}
    for r, (row, rhs) in enumerate(zip(a_rows, b)):
        # s_r = b_r - sum a_rj x_j + x0
        cs = {j: -Fraction(c) for j, c in row.items() if c}
        cs[aux] = Fraction(1)
        rows[slack[r]] = (Fraction(rhs), cs)
    d = _Dictionary(rows, (Fraction(0), {aux: Fraction(-1)}))
    if b:
        worst = min(range(len(b)), key=lambda r: (b[r], r))
        if b[worst] < 0:
            d.pivot(aux, slack[worst])
    d.maximise()
    return d, slack


def _point(d: _Dictionary, nvars: int) -> list[Fraction]:
    point = [Fraction(0)] * nvars
    for var, (c0, _) in d.rows.items():
        if var < nvars:
            point[var] = c0
    return point


def solve_feasibility(a_rows: Sequence[Row], b: Sequence[Fraction], nvars: int) -> LPResult:
    """Decide whether {x >= 0 : a_rows x <= b} is nonempty, exactly.

    Variables are 0..nvars-1; the auxiliary is nvars; slacks follow.
    """
    d, slack = _phase_one(a_rows, b, nvars)
    value, obj = d.obj
    if value == 0:
        return LPResult(True, point=_point(d, nvars), pivots=d.pivots)
    farkas = [-obj.get(s, Fraction(0)) for s in slack]
    return LPResult(False, farkas=farkas, pivots=d.pivots)


def maximise(a_rows: Sequence[Row], b: Sequence[Fraction], nvars: int, target: int) -> tuple[Fraction, list[Fraction]] | None:
    """Maximise x_target over {x >= 0 : a_rows x <= b}; None if empty.

    The objective must be bounded on the region.
    """
    d, _ = _phase_one(a_rows, b, nvars)
    if d.obj[0] != 0:
        return None
    aux = nvars
    if aux in d.rows:
        _, cs = d.rows[aux]
        if cs:
            d.pivot(min(cs), aux)
        else:
            del d.rows[aux]
    for _, cs in d.rows.values():
        cs.pop(aux, None)
    if target in d.rows:
        c0, cs = d.rows[target]
        d.obj = (c0, dict(cs))
    else:
        d.obj = (Fraction(0), {target: Fraction(1)})
    d.maximise()
    return d.obj[0], _point(d, nvars)
