from fractions import Fraction as F

from blowup_stability.simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, solve_lp


def test_basic_optimum():
    # min -x - y  s.t.  x + y + s = 4, x + 3y + t = 6
    a = [
        [F(1), F(1), F(1), F(0)],
        [F(1), F(3), F(0), F(1)],
    ]
    status, x, value = solve_lp(a, [F(4), F(6)], [F(-1), F(-1), F(0), F(0)])
    assert status == OPTIMAL
    assert value == F(-4)
    assert x[0] + x[1] == F(4)


def test_exact_fractional_answer():
    # min -2x - 3y  s.t.  3x + y + s = 2, x + 2y + t = 1
    # unique optimum at the vertex (3/5, 1/5), value -9/5
    a = [
        [F(3), F(1), F(1), F(0)],
        [F(1), F(2), F(0), F(1)],
    ]
    status, x, value = solve_lp(a, [F(2), F(1)], [F(-2), F(-3), F(0), F(0)])
    assert status == OPTIMAL
    assert value == F(-9, 5)
    assert x[0] == F(3, 5) and x[1] == F(1, 5)


def test_infeasible_detected():
    # x + y = 1 and x + y = 2 cannot both hold with x, y >= 0
    a = [[F(1), F(1)], [F(1), F(1)]]
    status, x, _ = solve_lp(a, [F(1), F(2)], [F(1), F(1)])
    assert status == INFEASIBLE
    assert x is None


def test_unbounded_detected():
    # min -x with only x - y = 0
    a = [[F(1), F(-1)]]
    status, _, _ = solve_lp(a, [F(0)], [F(-1), F(0)])
    assert status == UNBOUNDED


def test_redundant_row_dropped():
    # duplicated constraint row must not break phase 2
    a = [
        [F(1), F(1), F(1)],
        [F(2), F(2), F(2)],
    ]
    status, x, value = solve_lp(a, [F(1), F(2)], [F(1), F(2), F(3)])
    assert status == OPTIMAL
    assert value == F(1)


def test_negative_rhs_handled():
    # -x = -3  =>  x = 3
    a = [[F(-1)]]
    status, x, value = solve_lp(a, [F(-3)], [F(1)])
    assert status == OPTIMAL
    assert x == [F(3)]
