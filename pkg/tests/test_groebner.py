import random
from fractions import Fraction

import pytest
import sympy

from floerkit.graded import GradedPoly
from floerkit.groebner import (
    CommIdeal,
    GroebnerError,
    InfiniteQuotientError,
    SpectralPolynomials,
    alpha_spectrum,
    groebner,
    ideal_member,
    lambdas,
    mult_operator,
    normal_form,
    parse_ideal_file,
    q_model_ideal,
    ring_table,
    top_eigenspace_ideal,
)
from floerkit.linalg import matmul


def to_sympy(p: GradedPoly, symbols):
    expr = 0
    for mono, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(symbols, mono[:-1]):
            term *= s ** e
        expr += term
    return sympy.expand(expr)


def sympy_basis(ideal: CommIdeal, symbols):
    # our variable ranking: beta > gamma > delta_1 > ... > alpha
    ranked = symbols[1:] + symbols[:1]
    polys = [to_sympy(p, symbols) for p in ideal.generators]
    G = sympy.groebner(polys, *ranked, order=ideal.order, domain=sympy.QQ)
    return {sympy.expand(e) for e in G.exprs}


def random_ideal(rng, n_gens=3):
    t = ring_table(0)
    gens = []
    for _ in range(n_gens):
        terms = {}
        for _ in range(rng.randint(1, 3)):
            mono = (rng.randint(0, 2), rng.randint(0, 1), rng.randint(0, 1), 0)
            terms[mono] = Fraction(rng.randint(-3, 3)) or Fraction(1)
        p = GradedPoly(t, terms)
        if p:
            gens.append(p)
    return CommIdeal(tuple(gens) or (t.one(),))


@pytest.mark.parametrize("order", ["grevlex", "lex"])
def test_against_sympy(order):
    rng = random.Random(7)
    symbols = sympy.symbols("alpha beta gamma")
    for _ in range(25):
        ideal = random_ideal(rng).with_order(order)
        ours = {to_sympy(p, symbols) for p in groebner(ideal).basis}
        assert ours == sympy_basis(ideal, symbols)


def test_against_sympy_model_ideal():
    ideal = q_model_ideal(1, 3)
    symbols = sympy.symbols("alpha beta gamma delta1 delta2 delta3")
    ours = {to_sympy(p, symbols) for p in groebner(ideal).basis}
    assert ours == sympy_basis(ideal, symbols)


def test_orders_agree_on_dimension():
    for g, n in [(0, 3), (1, 3), (2, 5)]:
        ideal = q_model_ideal(g, n)
        assert groebner(ideal).dimension == groebner(ideal.with_order("lex")).dimension == g + (n - 1) // 2


@pytest.mark.parametrize("n", [3, 5, 7])
def test_top_eigenspace_dimension_one(n):
    qb = groebner(top_eigenspace_ideal(1, n))
    assert qb.dimension == 1
    assert qb.standard_monomials == [(0,) * (n + 4)] or len(qb.standard_monomials) == 1


def test_q_model_spectrum():
    rep = alpha_spectrum(q_model_ideal(2, 5))
    assert sorted(rep.values) == sorted(lambdas(4))
    assert all(e.alg_mult == 1 and e.geo_mult == 1 and e.exact for e in rep.entries)


def test_companion_matrix():
    ideal = q_model_ideal(1, 3)
    t = ideal.table
    mat = mult_operator(ideal, t.var("alpha"))
    assert mat == [[0, 3], [1, -2]]


def test_mult_operator_is_multiplicative():
    ideal = q_model_ideal(2, 3)
    t = ideal.table
    a = t.var("alpha")
    f, g = a * a + 1, a - 3
    assert mult_operator(ideal, f * g) == matmul(mult_operator(ideal, f), mult_operator(ideal, g))


def test_nilpotent_spectrum():
    t = ring_table(1)
    ideal = CommIdeal((t.var("alpha") ** 2, t.var("beta"), t.var("gamma"), t.var("delta1")))
    rep = alpha_spectrum(ideal)
    assert [(e.value, e.alg_mult, e.geo_mult) for e in rep.entries] == [(0, 2, 1)]


def test_ideal_membership_and_normal_form():
    ideal = q_model_ideal(1, 3)
    t = ideal.table
    a, b = t.var("alpha"), t.var("beta")
    assert ideal_member(a * a + 2 * a - 3, ideal)
    assert ideal_member(b * a - 2 * a, ideal)
    assert not ideal_member(a, ideal)
    assert normal_form(a * a, ideal) == -2 * a + 3


def test_infinite_quotient():
    t = ring_table(0)
    ideal = CommIdeal((t.var("beta"), t.var("gamma")))
    qb = groebner(ideal)
    assert not qb.finite and qb.dimension is None
    with pytest.raises(InfiniteQuotientError):
        alpha_spectrum(ideal)


def test_lambdas_and_spectral_polynomials():
    assert lambdas(3) == [1, -3, 5]
    assert lambdas(2, "negative") == [-1, -3]
    assert lambdas(2, [-1, 1]) == [-1, 3]
    with pytest.raises(GroebnerError):
        lambdas(2, [1])
    sp = SpectralPolynomials(-1, 3)
    assert sp.Q == sp.table.one() and sp.P == sp.table.one()
    sp = SpectralPolynomials(0, 3, N=3)
    assert sp.P == sp.Q ** 3


def test_invalid_ideals():
    t = ring_table(0)
    with pytest.raises(GroebnerError):
        CommIdeal(())
    with pytest.raises(GroebnerError):
        CommIdeal((t.var("alpha"),), order="weird")
    with pytest.raises(GroebnerError):
        q_model_ideal(1, 4)


def test_parse_ideal_file():
    text = "# model\nalpha - 1\nbeta - 2\ngamma\ndelta1\ndelta2\ndelta3\n"
    ideal = parse_ideal_file(text)
    assert ideal.table.n == 3
    assert groebner(ideal).dimension == 1
    with pytest.raises(GroebnerError):
        parse_ideal_file("# nothing\n")
