import json
from fractions import Fraction as F

import pytest

from mmspace import curvature as cv
from mmspace.complex import OUT, OUT0, CornerVar, MMSimplexOrbit


def var(name):
    return cv.parse_corner_var(name)


def test_variable_counts_and_closure():
    assert [v.name for v in cv.corner_variables(OUT)] == [
        "alpha_L", "beta_L", "gamma_L", "alpha_S", "beta_S", "gamma_S"]
    vs = cv.corner_variables(OUT0)
    assert len(vs) == 108 and len(set(vs)) == 108
    for s in cv.sigma4():
        assert {v.relabel(s) for v in vs} == set(vs)


def test_corner_var_names_round_trip():
    for v in cv.corner_variables(OUT0) + cv.corner_variables(OUT):
        assert cv.parse_corner_var(v.name) == v
    with pytest.raises(ValueError):
        cv.parse_corner_var("delta_L")


def test_triangle_rows():
    rows = cv.triangle_constraints(OUT)
    assert {str(r) for r in rows} == {"alpha_L + beta_L + gamma_L <= 1", "alpha_S + beta_S + gamma_S <= 1"}
    rows0 = cv.triangle_constraints(OUT0)
    assert len(rows0) == 36 and all(sorted(c for _, c in r.coeffs) == [1, 1, 1] for r in rows0)


def test_out_cycle_rows_contain_hand_derived_ones(out_system):
    text = {str(r) for r in out_system.rows}
    for row in ["4*beta_L >= 2", "2*beta_L + 2*beta_S >= 2", "8*gamma_L >= 2", "6*gamma_S >= 2",
                "8*alpha_L >= 2", "4*alpha_L + 4*alpha_S >= 2"]:
        assert row in text


def test_out0_families_present_and_invariant(out0_system):
    rows = out0_system.row_set()
    for name, fam in cv.hand_derived_families(OUT0).items():
        assert fam and set(fam) <= rows, name
    assert cv.is_sigma4_invariant(out0_system)


def test_out_verdict_and_certificate(out_system, out_result):
    assert isinstance(out_result, cv.Infeasible)
    cert = out_result.certificate
    assert cv.verify_certificate(cert, out_system)
    zero = cv.FarkasCertificate(*(tuple(F(0) for _ in part) for part in (cert.multipliers, cert.upper, cert.lower)))
    assert not cv.verify_certificate(zero, out_system)
    control = cv.negative_control()
    padded = cv.FarkasCertificate(
        tuple(m for m, r in zip(cert.multipliers, out_system.rows) if r != cv.STAR_ROW), cert.upper, cert.lower)
    assert not cv.verify_certificate(padded, control)
    with pytest.raises(ValueError):
        cv.verify_certificate(cv.FarkasCertificate((F(1),), (), ()), out_system)


def test_out0_verdict(out0_system, out0_result):
    assert isinstance(out0_result, cv.Infeasible)
    assert cv.verify_certificate(out0_result.certificate, out0_system)


@pytest.mark.parametrize("mode", [OUT, OUT0])
def test_hand_derived_subset_alone_is_infeasible(mode):
    sub = cv.hand_derived_system(mode)
    res = cv.feasible(sub)
    assert isinstance(res, cv.Infeasible) and cv.verify_certificate(res.certificate, sub)


def test_negative_control():
    control = cv.negative_control()
    assert cv.check_point(control, cv.CONTROL_POINT)
    res = cv.feasible(control)
    assert isinstance(res, cv.Feasible) and not res.caveat
    assert res.point == cv.CONTROL_POINT


def test_single_row_feasible_at_half():
    a = var("alpha_L")
    sys_ = cv.AngleSystem(OUT, (a,), (cv.Constraint.of({a: 1}, cv.LE, 1),))
    res = cv.feasible(sys_)
    assert isinstance(res, cv.Feasible) and res.point == {a: F(1, 2)}


def test_caveat_when_a_variable_is_forced_to_zero():
    a, b = var("alpha_L"), var("beta_L")
    sys_ = cv.AngleSystem(OUT, (a, b), (cv.Constraint.of({a: 1, b: 1}, cv.LE, 1),
                                         cv.Constraint.of({b: 1}, cv.GE, 1)))
    res = cv.feasible(sys_)
    assert isinstance(res, cv.Feasible) and res.caveat and res.point[a] == 0


def test_symmetrize(out_system, out0_system):
    sym = cv.symmetrize(out0_system)
    assert sym.row_set() == out_system.row_set()
    assert isinstance(cv.feasible(sym), cv.Infeasible)
    tri_l = [r for r in cv.triangle_constraints(OUT0) if r.coeffs[0][0].orbit.shape == "L"]
    assert len(tri_l) == 24 and {r.collapse() for r in tri_l} == {cv.triangle_constraints(OUT)[0]}
    everything = cv.AngleSystem(OUT0, out0_system.variables,
                                (cv.Constraint.of(out0_system.variables, cv.LE, 36),))
    assert len(cv.symmetrize(everything).rows) == 1
    lopsided = cv.AngleSystem(OUT0, out0_system.variables, (out0_system.rows[0],))
    with pytest.raises(cv.InvarianceError):
        cv.symmetrize(lopsided)


def test_system_json_round_trip(out0_system):
    data = json.loads(json.dumps(out0_system.to_json()))
    assert cv.AngleSystem.from_json(data) == out0_system
    with pytest.raises(ValueError):
        cv.AngleSystem.from_json({"variables": ["alpha_L"], "rows": [{"coeffs": {"beta_L": "1"}}]})


def test_undeclared_variable_rejected():
    a, b = var("alpha_L"), var("beta_L")
    with pytest.raises(ValueError):
        cv.AngleSystem(OUT, (a,), (cv.Constraint.of({b: 1}, cv.LE, 1),))


def test_hyperbolic_flag_changes_metadata_only(out_system):
    hyp = cv.build_system(OUT, cv.HYPERBOLIC)
    assert hyp.strict_triangles and not out_system.strict_triangles
    assert hyp.row_set() == out_system.row_set()
    assert isinstance(cv.feasible(hyp), cv.Infeasible)


def test_out_mode_orbit_collapse():
    v = CornerVar(MMSimplexOrbit("L", (1, 3, 2, 4)), "beta")
    assert v.collapse().name == "beta_L"
