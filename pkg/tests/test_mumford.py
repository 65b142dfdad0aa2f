from fractions import Fraction
from math import factorial

import pytest

from floerkit.graded import GeneratorTable, parse_poly
from floerkit.mumford import (
    XI_TABLE,
    MumfordError,
    alpha_reduction,
    closed_form_F,
    closed_form_oracle,
    mumford_relation,
    ode_residual,
    xi,
)

a, b, c = XI_TABLE.var("alpha"), XI_TABLE.var("beta"), XI_TABLE.var("gamma")


def test_first_xis_n3():
    assert xi(0, 3) == XI_TABLE.one()
    assert xi(1, 3) == a
    assert xi(2, 3) == (a * a).scale(Fraction(1, 2))
    assert xi(3, 3) == (a ** 3 - 2 * a * b - c).scale(Fraction(1, 6))


def test_recursion_by_hand_n5():
    # m = 2, k = 1: 2 xi_2 = alpha^2 + (m - 1) beta
    assert xi(2, 5) == (a * a + b).scale(Fraction(1, 2))


@pytest.mark.parametrize("g,n,text", [
    (0, 3, "alpha"),
    (1, 3, "alpha^2"),
    (2, 3, "alpha^3 - 2 * alpha * beta - gamma"),
    (0, 5, "alpha^2 + beta"),
])
def test_relation_examples(g, n, text):
    assert mumford_relation(g, n) == parse_poly(text, XI_TABLE)


def test_relation_is_monic_of_right_degree():
    for g in range(4):
        for n in (3, 5, 7):
            f = mumford_relation(g, n)
            m = (n - 1) // 2
            assert f.homogeneous_degree() == 2 * (g + m)
            assert f.leading_alpha_coeff(g + m) == 1


def test_raw_relation_and_table_embedding():
    raw = mumford_relation(2, 3, normalized=False)
    assert raw == xi(3, 3)
    t = GeneratorTable(2, 3)
    f = mumford_relation(2, 3, table=t, expand_gamma=True)
    assert f.table == t
    assert f.has_odd


def test_invalid_parameters():
    with pytest.raises(MumfordError):
        mumford_relation(0, 1)
    with pytest.raises(MumfordError):
        mumford_relation(1, 4)
    with pytest.raises(MumfordError):
        xi(-1, 3)


def test_alpha_reduction():
    # beta = 2, gamma = 0: alpha^3 - 4 alpha
    assert alpha_reduction(mumford_relation(2, 3)) == [0, -4, 0, 1]


def test_structure_up_to_40():
    for n in (3, 5, 7):
        for k in range(41):
            p = xi(k, n)
            assert p.homogeneous_degree() == 2 * k
            assert p.leading_alpha_coeff(k) == Fraction(1, factorial(k))


@pytest.mark.parametrize("n", [3, 5, 7])
def test_ode(n):
    rep = ode_residual(25, n)
    assert rep.passed
    assert rep.to_json()["n"] == n


def test_closed_form_at_zero():
    assert closed_form_F(1.0, -2.0, 1.0, 0.0, 1) == pytest.approx(1.0)


@pytest.mark.parametrize("g,n", [(0, 3), (1, 5), (2, 3)])
def test_oracle(g, n):
    rep = closed_form_oracle(30, n, samples=10, seed=g)
    assert rep.passed
    assert rep.max_residual < 1e-8
