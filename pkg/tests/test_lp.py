from fractions import Fraction as F

from hypothesis import given, settings, strategies as st

from mmspace.lp import maximise, solve_feasibility


def _feasible_point(rows, b, x):
    return all(v >= 0 for v in x) and all(
        sum(c * x[j] for j, c in r.items()) <= rhs for r, rhs in zip(rows, b)
    )


def _farkas_ok(rows, b, y, nvars):
    comb = [sum((y[r] * rows[r].get(j, 0) for r in range(len(rows))), F(0)) for j in range(nvars)]
    return all(q >= 0 for q in y) and all(c >= 0 for c in comb) and sum(yr * br for yr, br in zip(y, b)) < 0


def test_small_cases():
    assert solve_feasibility([{0: F(1)}], [F(1)], 1).feasible
    res = solve_feasibility([{0: F(-1)}, {0: F(1)}], [F(-2), F(1)], 1)
    assert not res.feasible and _farkas_ok([{0: F(-1)}, {0: F(1)}], [F(-2), F(1)], res.farkas, 1)


def test_maximise():
    # max t: t <= a, t <= 1 - a, a <= 1  ->  a = t = 1/2
    best, x = maximise([{0: F(1)}, {1: F(1), 0: F(-1)}, {1: F(1), 0: F(1)}], [F(1), F(0), F(1)], 2, 1)
    assert best == F(1, 2) and x == [F(1, 2), F(1, 2)]
    assert maximise([{0: F(1)}, {0: F(-1)}], [F(0), F(-1)], 1, 0) is None


def test_unbounded_objective_raises():
    import pytest

    with pytest.raises(ArithmeticError):
        maximise([{0: F(-1)}], [F(-1)], 1, 0)


def test_degenerate_system_terminates():
    # many redundant copies of the same tight constraints
    rows = [{0: F(1), 1: F(1)}] * 20 + [{0: F(-1)}] * 20 + [{1: F(-1)}] * 5
    b = [F(1)] * 20 + [F(-1, 2)] * 20 + [F(-1, 2)] * 5
    res = solve_feasibility(rows, b, 2)
    assert res.feasible and _feasible_point(rows, b, res.point)


coef = st.integers(-3, 3).map(F)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4).flatmap(lambda nv: st.tuples(
    st.just(nv),
    st.lists(st.tuples(st.lists(coef, min_size=nv, max_size=nv), st.integers(-4, 4).map(F)), min_size=1, max_size=6),
)))
def test_random_systems_are_certified_either_way(data):
    nv, raw = data
    rows = [{j: c for j, c in enumerate(cs) if c} for cs, _ in raw]
    b = [rhs for _, rhs in raw]
    res = solve_feasibility(rows, b, nv)
    if res.feasible:
        assert _feasible_point(rows, b, res.point)
    else:
        assert _farkas_ok(rows, b, res.farkas, nv)
