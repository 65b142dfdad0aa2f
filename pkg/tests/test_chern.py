import math
import random
from fractions import Fraction

import pytest

from floerkit.chern import (
    BASE,
    FiberAlgebraElement,
    FiberSeries,
    SeriesError,
    default_order,
    grr_pushforward,
    hom_chern_series,
    r1_closed_form,
    r1_closed_form_check,
    r1_rank,
    r1_series,
    series_exp,
    series_log,
    slant_corollary_sides,
    slant_jacobian,
    slant_monomial,
    x_twist,
)
from floerkit.mumford import xi

A, B = BASE.var("A"), BASE.var("B")
alpha, beta, gamma = BASE.var("alpha"), BASE.var("beta"), BASE.var("gamma")
D, Psi, sigma = FiberAlgebraElement.D(), FiberAlgebraElement.Psi(), FiberAlgebraElement.sigma()


def test_fiber_products():
    assert D * D == sigma.scale(1) * FiberAlgebraElement.base(-2 * A)
    assert Psi * Psi == FiberAlgebraElement(w=-2 * gamma)
    assert D * Psi == Psi * D == FiberAlgebraElement(w=B)
    assert not sigma * sigma
    assert not sigma * D


def test_square_of_linear_combination():
    # (aD + bPsi)^2 = (-2A a^2 + 2ab B - 2 gamma b^2) sigma, the cross term included
    for a, b in [(1, 0), (0, 1), (2, 3), (Fraction(1, 2), -5)]:
        x = D.scale(a) + Psi.scale(b)
        expected = A.scale(-2 * a * a) + B.scale(2 * a * b) + gamma.scale(-2 * b * b)
        assert x * x == FiberAlgebraElement(w=expected)


def _random_fiber(rng):
    def c():
        return BASE.const(Fraction(rng.randint(-3, 3), rng.randint(1, 3)))

    return FiberAlgebraElement(u=c() * alpha, d=c(), p=c() * beta, w=c() * A)


def test_log_exp_round_trip():
    rng = random.Random(1)
    for _ in range(5):
        coeffs = [1] + [_random_fiber(rng) for _ in range(5)]
        s = FiberSeries(coeffs, 5)
        assert series_exp(series_log(s)) == s
        z = FiberSeries([0] + [_random_fiber(rng) for _ in range(5)], 5)
        assert series_log(series_exp(z)) == z


def test_log_of_product_is_sum():
    s = FiberSeries([1, D, Psi], 6)
    r = FiberSeries([1, FiberAlgebraElement.base(alpha), sigma], 6)
    assert series_log(s * r) == series_log(s) + series_log(r)


def test_log_requires_unit_constant():
    with pytest.raises(SeriesError):
        series_log(FiberSeries([2, D], 3))
    with pytest.raises(SeriesError):
        series_exp(FiberSeries([1, D], 3))


def test_grr_pushforward_coefficients():
    # u = t, w = t^2: k=1 gives -(g-1) - 1, the rest vanish
    s = FiberSeries([0, 1, sigma], 3)
    out = grr_pushforward(s, 2)
    assert out.order == 2
    assert [c.u for c in out.coeffs] == [BASE.zero(), BASE.const(-2), BASE.zero()]


def test_slant_monomials():
    assert slant_monomial(1, 0, 1) == (1, 0)
    assert slant_monomial(0, 2, 1) == (-2, 1)
    assert slant_monomial(1, 2, 2) == (-2, 1)
    assert slant_monomial(0, 4, 2) == (12, 2)
    assert slant_monomial(1, 1, 2)[0] == 0


def test_slant_requires_base_coefficients():
    with pytest.raises(SeriesError):
        slant_jacobian(FiberSeries([1, D], 2), 1)


@pytest.mark.parametrize("g", range(0, 4))
def test_slant_corollary_exact(g):
    lhs, rhs = slant_corollary_sides(g, 12)
    assert lhs == rhs


@pytest.mark.parametrize("g,m", [(0, 1), (1, 1), (2, 1), (0, 3), (3, 2)])
def test_rank(g, m):
    assert r1_rank(g, m) == 2 * g + m - 1


def test_hom_series_first_terms():
    s = hom_chern_series(2, 3)
    assert s.coeffs[1] == FiberAlgebraElement(d=1, w=-3)
    assert s.coeffs[3] == FiberAlgebraElement()


def test_r1_series_top_degree_matches_xi():
    # the coefficient of t^{g+k} is 2^{-g} xi_{k,n} modulo gamma^{g+1}
    for g, m in [(0, 1), (1, 1), (1, 2), (2, 1)]:
        n = 2 * m + 1
        coeffs = r1_series(g, m, order=g + m + 3)
        for k in range(0, m + 3):
            if g + k < len(coeffs):
                ours = coeffs[g + k].scale(2 ** g)
                ref = xi(k, n)
                trunc = {mono: c for mono, c in ref.terms.items() if mono[2] <= g}
                mapped = {tuple(mono[:3]) + (0, 0, 0): c for mono, c in trunc.items()}
                assert ours.terms == mapped, (g, m, k)


def test_closed_form_value_at_zero():
    assert r1_closed_form(1.0, -1.0, 0.5, 0.0, 0, 1) == pytest.approx(1.0)
    assert r1_closed_form(1.0, -1.0, 0.5, 0.0, 1, 1) == pytest.approx(0.0)


@pytest.mark.parametrize("g,m,T", [(0, 1, 10), (1, 1, 12), (0, 2, 10), (1, 2, 10)])
def test_closed_form_check(g, m, T):
    rep = r1_closed_form_check(g, m, T, samples=8, seed=1)
    assert rep.max_residual < 1e-9
    assert rep.rank == 2 * g + m - 1
    assert rep.to_json()["T"] == T


def test_check_rejects_short_truncation():
    with pytest.raises(SeriesError):
        r1_closed_form_check(1, 1, 3)


def test_default_order():
    assert default_order(1, 2) == 10


def test_x_twist_involution():
    coeffs = [BASE.one(), alpha, beta, gamma]
    x = alpha.scale(Fraction(1, 3))
    once = x_twist(coeffs, x, 3)
    back = x_twist(once, -x, 3)
    assert back == coeffs
    # rank 3 polynomial of degree 3 stays degree 3
    assert len(once) == 4


def test_x_twist_negative_exponent():
    # rank 0, c = 1 + t: (1 + t/(1 - t x)) = 1 + t + t^2 x + t^3 x^2 + ...
    out = x_twist([BASE.one(), BASE.one()], alpha, 0, order=3)
    assert out == [BASE.zero() + 1, BASE.one(), alpha, alpha * alpha]
