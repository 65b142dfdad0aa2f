import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from floerkit.graded import (
    AlgebraError,
    GeneratorMismatchError,
    GeneratorTable,
    MissingAssignmentError,
    OddEvaluationError,
    eval_numeric,
    flip,
    mul,
    parse_poly,
)
from floerkit.scalars import GaussianRational

from conftest import TABLE, polys

T = GeneratorTable(1, 3)
a, b, c = T.var("alpha"), T.var("beta"), T.var("gamma")
psi1, psi2 = T.var("psi1"), T.var("psi2")
d1, d2, d3 = (T.var(f"delta{i}") for i in (1, 2, 3))
eps = T.var("eps")


def test_generator_order_and_degrees():
    assert T.names == ("alpha", "beta", "gamma", "delta1", "delta2", "delta3", "psi1", "psi2", "eps")
    assert T.degrees[:3] == (2, 4, 6)
    assert T.odd_positions == (6, 7)


def test_odd_generators_anticommute_and_square_to_zero():
    assert psi1 * psi2 == -(psi2 * psi1)
    assert not psi1 * psi1
    assert (psi1 * psi2).homogeneous_degree() == 6


def test_eps_squares_to_one_and_is_degree_neutral():
    assert eps * eps == T.one()
    assert (eps * a).homogeneous_degree() == 2


def test_cubic_relation_text():
    p = a**3 - 2 * a * b - c
    assert p.pretty() == "α³ − 2αβ − γ"
    assert p.homogeneous_degree() == 6
    assert parse_poly(p.to_text(), T) == p
    assert parse_poly("alpha^3 - 2 * alpha * beta - gamma", T) == p


def test_gamma_expansion():
    assert c.expand_gamma() == psi1 * psi2
    assert (c * c).expand_gamma() == T.zero()  # (psi1 psi2)^2 = 0 for g = 1


def test_flip_examples():
    assert flip({1}, a) == a + d1
    assert flip({1}, d1) == -d1
    assert flip({1, 3}, a * d2) == (a + d1 + d3) * d2
    assert flip(set(), a) == a
    with pytest.raises(AlgebraError):
        flip({4}, a)


def test_mismatched_tables_rejected():
    other = GeneratorTable(2, 3)
    with pytest.raises(GeneratorMismatchError):
        mul(a, other.var("alpha"))


def test_eval_numeric():
    p = a**2 - 2 * b
    assert eval_numeric(p, {"alpha": 1j, "beta": 2}) == pytest.approx(-5)
    with pytest.raises(MissingAssignmentError):
        eval_numeric(p, {"alpha": 1})
    with pytest.raises(OddEvaluationError):
        eval_numeric(psi1 * psi2, {})


def test_gaussian_coefficients():
    p = a.scale(GaussianRational(Fraction(1, 2), Fraction(-1)))
    assert eval_numeric(p, {"alpha": 2}) == pytest.approx(1 - 2j)
    assert parse_poly(p.to_text(), T) == p


@given(polys(), polys(), polys())
@settings(max_examples=150, deadline=None)
def test_associativity_and_distributivity(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


@given(polys(parity=0), polys(parity=1), polys(parity=1))
@settings(max_examples=150, deadline=None)
def test_graded_commutativity(even, odd1, odd2):
    assert even * odd1 == odd1 * even
    assert odd1 * odd2 == -(odd2 * odd1)
    assert not odd1 * odd1


@given(polys(), polys(), st.sets(st.integers(1, 2)))
@settings(max_examples=150, deadline=None)
def test_flip_is_involutive_ring_homomorphism(x, y, subset):
    assert flip(subset, flip(subset, x)) == x
    assert flip(subset, x * y) == flip(subset, x) * flip(subset, y)
    assert flip(subset, x + y) == flip(subset, x) + flip(subset, y)


@given(polys())
@settings(max_examples=100, deadline=None)
def test_text_round_trip(x):
    assert parse_poly(x.to_text(), TABLE) == x


def test_random_pairs_commute_up_to_sign():
    rng = random.Random(3)
    from conftest import random_poly

    for _ in range(200):
        p, q = rng.randint(0, 1), rng.randint(0, 1)
        x = random_poly(TABLE, rng, 3, p)
        y = random_poly(TABLE, rng, 3, q)
        assert x * y == (y * x).scale(-1 if p * q else 1)
