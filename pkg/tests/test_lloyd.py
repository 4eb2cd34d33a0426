from fractions import Fraction

import pytest
import sympy

from perfcodes.lloyd import (
    check_two_integer_roots,
    gen_binomial,
    lloyd2_coefficients,
    lloyd_eval,
    quadratic_root_verdict,
)

TABLE2_ROWS = [(15, 11), (21, 52), (46, 93)]


def symbolic_coefficients(q, n):
    x = sympy.Symbol("x")
    l2 = (
        sympy.Integer(q - 1) ** 2 * (n - x) * (n - x - 1) / 2
        - (q - 1) * (x - 1) * (n - x)
        + (x - 1) * (x - 2) / 2
    )
    poly = sympy.Poly(sympy.expand(2 * l2), x)
    return tuple(int(poly.coeff_monomial(x**k)) for k in (2, 1, 0))


def test_gen_binomial_negative_arguments():
    assert gen_binomial(-1, 2) == 1
    assert gen_binomial(-3, 2) == 6
    assert gen_binomial(5, 2) == 10
    assert gen_binomial(2, 5) == 0
    assert gen_binomial(7, 0) == 1


@pytest.mark.parametrize("q, n, e, x, value", [(3, 11, 2, 6, 0), (15, 11, 2, 9, 0), (7, 9, 0, 4, 1)])
def test_lloyd_eval_examples(q, n, e, x, value):
    assert lloyd_eval(q, n, e, x) == Fraction(value)


@pytest.mark.parametrize("q, n, abc", [(15, 11, (225, -4455, 21870)), (3, 11, (9, -135, 486))])
def test_coefficient_examples(q, n, abc):
    assert lloyd2_coefficients(q, n) == abc


def test_coefficients_match_symbolic_expansion():
    for q in (2, 3, 6, 15, 46, 94):
        for n in (5, 11, 52, 93):
            assert lloyd2_coefficients(q, n) == symbolic_coefficients(q, n)
            assert lloyd2_coefficients(q, n)[0] == q * q


def test_coefficients_agree_with_evaluator_on_grid():
    for q in range(2, 51):
        for n in range(5, 101):
            a, b, c = lloyd2_coefficients(q, n)
            for x in (-3, 0, 1, n // 2, n + 4):
                assert 2 * lloyd_eval(q, n, 2, x) == a * x * x + b * x + c


def test_q15_verdict():
    v = check_two_integer_roots(15, 11)
    assert not v.passes
    assert v.roots == (Fraction(9), Fraction(54, 5))
    assert v.discriminant == 164025 == 405**2


def test_golay_positive_control():
    v = check_two_integer_roots(3, 11)
    assert v.passes and v.integer_roots == (6, 9)


def test_binary_repetition_positive_control():
    v = check_two_integer_roots(2, 5)
    assert v.passes and v.integer_roots == (2, 4)


@pytest.mark.parametrize("q, n", TABLE2_ROWS)
def test_table2_rows_fail(q, n):
    v = check_two_integer_roots(q, n)
    assert not v.passes


def test_verdict_invariants_on_grid():
    for q in range(2, 40):
        for n in range(5, 120):
            a, b, c = lloyd2_coefficients(q, n)
            v = check_two_integer_roots(q, n)
            assert v.discriminant == b * b - 4 * a * c
            ints = [r for r in v.integer_roots if 1 <= r <= n]
            assert v.passes == (len(set(ints)) == 2)
            if v.passes:
                for r in v.integer_roots:
                    assert lloyd_eval(q, n, 2, r) == 0
            if len(v.roots) == 2:
                assert sum(v.roots) == Fraction(-b, a)
                assert v.roots[0] * v.roots[1] == Fraction(c, a)


def test_double_root_does_not_pass():
    v = quadratic_root_verdict(1, -4, 4, 10)
    assert v.discriminant == 0 and v.roots == (Fraction(2),) and not v.passes
    assert quadratic_root_verdict(1, -5, 6, 10).passes
    assert not quadratic_root_verdict(1, -5, 6, 2).passes
    assert not quadratic_root_verdict(1, 0, 1, 10).passes


def test_gcd_reduction_preserves_roots():
    assert quadratic_root_verdict(6, -30, 36, 10).roots == quadratic_root_verdict(1, -5, 6, 10).roots
