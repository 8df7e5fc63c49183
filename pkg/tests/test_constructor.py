import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from egr.constructor import (
    ConstructionError, NormEquationError, build_curve, construct_witness, integralize,
    iter_norm_solutions, norm_equation_solvable, rho, solve_norm_equation, solve_ternary,
    ternary_solvable, u_candidates,
)
from egr.quadfield import QuadraticField
from egr.setzer import GoodDRecord

from oracles import conic_brute, is_squarefree_ref


def test_norm_equation_examples():
    for m, c, a, b in ((6, -2, 2, 1), (77, -7, 35, 4), (165, -11, 77, 6)):
        sol = solve_norm_equation(m, c)
        assert sol.check() and sol.alpha == QuadraticField(m)(a, b)
    with pytest.raises(NormEquationError):
        solve_norm_equation(-77, -7)
    with pytest.raises(ValueError):
        solve_norm_equation(6, 0)


def test_ternary():
    assert not ternary_solvable(1, 1, 1)
    assert ternary_solvable(1, 1, -2)
    assert not ternary_solvable(1, 1, -3)
    x, y, z = solve_ternary(3, -5, 2)
    assert 3 * x * x - 5 * y * y + 2 * z * z == 0 and (x, y, z) != (0, 0, 0)
    x, y, z = solve_ternary(12, -75, 8)  # non-square-free, non-coprime input
    assert 12 * x * x - 75 * y * y + 8 * z * z == 0 and (x, y, z) != (0, 0, 0)
    with pytest.raises(NormEquationError):
        solve_ternary(1, 1, -3)


@given(st.integers(-40, 40), st.integers(-40, 40), st.integers(-40, 40))
def test_ternary_solutions_satisfy_equation(a, b, c):
    if 0 in (a, b, c):
        return
    if ternary_solvable(a, b, c):
        x, y, z = solve_ternary(a, b, c)
        assert a * x * x + b * y * y + c * z * z == 0 and (x, y, z) != (0, 0, 0)


def test_solvability_matches_brute_force_small():
    for m, c in itertools.product(range(-12, 13), range(-12, 13)):
        if m in (0, 1) or c == 0 or not is_squarefree_ref(m):
            continue
        assert norm_equation_solvable(m, c) == conic_brute(m, c, 60), (m, c)


def test_iter_norm_solutions_order_and_uniqueness():
    sols = list(itertools.islice(iter_norm_solutions(6, -2), 10))
    keys = [(s.x, s.y, s.z) for s in sols]
    assert len(set(keys)) == len(keys)
    assert all(s.check() and s.x >= 0 and s.y >= 0 and s.z > 0 for s in sols)
    assert keys[0] == (2, 1, 1)


def test_integralize():
    K6, K77 = QuadraticField(6), QuadraticField(77)
    assert integralize(K6(2, 1)) == (K6(2, 1), 1)
    assert integralize(K77(Fraction(35, 3), Fraction(4, 3))) == (K77(35, 4), 3)
    # (7 + sqrt(77))/2 is already an algebraic integer
    assert integralize(K77(Fraction(7, 2), Fraction(1, 2)))[1] == 1
    with pytest.raises(ValueError):
        integralize(K6(Fraction(1, 2), Fraction(1, 2)))
    with pytest.raises(ValueError):
        integralize(K6(0))


def test_u_candidates_examples():
    assert QuadraticField(6)(-84, -42) in u_candidates(QuadraticField(6)(2, 1), 42, 6)
    assert QuadraticField(165)(3234, 252) in u_candidates(QuadraticField(165)(77, 6), 42, 165)
    K = QuadraticField(395)
    us = u_candidates(K(79, 4), 1, 395)
    assert K(17222, 871) in us and K(-17222, -871) in us
    assert len(u_candidates(QuadraticField(6)(2, 1), 42, 6)) == 2
    assert rho(395) == K(198, 1)


def test_build_curve_examples():
    E = build_curve(20, QuadraticField(6)(-84, -42))
    assert E.j == 8000
    E = build_curve(16, QuadraticField(-259)(222, 36))
    assert E.j == 4096
    for A in (20, 16, -15, 39, 1, 4, 255):
        assert build_curve(A, QuadraticField(6)(1)).j == A**3
    with pytest.raises(ValueError):
        build_curve(2, QuadraticField(6)(1))
    with pytest.raises(ValueError):
        build_curve(20, QuadraticField(6)(0))


@given(st.sampled_from([20, 16, -15, -32, 39, 4, 1, 255]), st.sampled_from([6, -259, 33, 29]),
       st.integers(-50, 50), st.integers(-50, 50))
def test_curve_family_invariants(A, m, a, b):
    if a == b == 0:
        return
    u = QuadraticField(m)(a, b)
    E = build_curve(A, u)
    B = A**3 - 1728
    assert E.discriminant == 12**6 * B**3 * u**6
    assert E.j == A**3


@pytest.mark.parametrize("m,A,q,j", [(6, 20, 3, 8000), (-259, 16, -7, 4096), (33, -32, -3, (-32) ** 3)])
def test_construct_witness(m, A, q, j):
    w = construct_witness(m, GoodDRecord.from_A(A), q)
    assert w.curve.j == j
    assert all(r.is_good for r in w.reports)
    assert w.n % 2 == 1 and w.beta.is_integral()
    assert w.alpha.norm() == w.record.epsilon * w.record.D


def test_construct_witness_rejects_bad_input():
    with pytest.raises(ValueError):
        construct_witness(6, GoodDRecord.from_A(20), 5)
    with pytest.raises(ConstructionError):
        construct_witness(-6, GoodDRecord.from_A(20), -3)  # -2 is not a norm from Q(sqrt(-6))
