import random
from fractions import Fraction
from math import comb

import pytest

from floerkit.lefschetz import (
    WedgeElement,
    contract,
    decompose,
    gamma_omega,
    primitive_basis,
    primitive_dimension,
    random_element,
)


def test_gamma_omega_g2():
    w = gamma_omega(2)
    assert w == WedgeElement.basis(2, 1, 3) + WedgeElement.basis(2, 2, 4)
    assert w ** 2 == WedgeElement.basis(2, 1, 3, 2, 4).scale(2)
    assert not w ** 3


def test_wedge_signs():
    e1, e2 = WedgeElement.basis(2, 1), WedgeElement.basis(2, 2)
    assert e1 * e2 == -(e2 * e1)
    assert not e1 * e1
    assert WedgeElement.basis(2, 2, 1) == -WedgeElement.basis(2, 1, 2)


def test_contract_of_symplectic_form():
    # contraction of omega with itself counts the g symplectic pairs
    for g in range(1, 5):
        assert contract(gamma_omega(g)) == WedgeElement.scalar_unit(g, g)
    assert not contract(WedgeElement.basis(2, 1, 2))


@pytest.mark.parametrize("g", range(0, 7))
def test_dimensions_and_weighted_identity(g):
    dims = [primitive_dimension(g, k) for k in range(g + 1)]
    assert dims == [comb(2 * g, k) - (comb(2 * g, k - 2) if k >= 2 else 0) for k in range(g + 1)]
    assert sum((g - k + 1) * d for k, d in enumerate(dims)) == 4 ** g


@pytest.mark.parametrize("g", range(1, 4))
def test_primitive_vectors_are_killed(g):
    w = gamma_omega(g)
    for k in range(g + 1):
        basis = primitive_basis(g, k)
        assert len(basis) == primitive_dimension(g, k)
        for p in basis:
            assert not contract(p)
            assert not (w ** (g - k + 1)) * p
            if g - k >= 1:
                assert (w ** (g - k)) * p


def test_decompose_example():
    g = 2
    x = WedgeElement.basis(g, 1, 3)
    dec = decompose(x)
    parts = {(k, j): p for k, j, p in dec.nonzero()}
    assert parts[(0, 1)] == WedgeElement.scalar_unit(g, Fraction(1, 2))
    assert parts[(2, 0)] == (WedgeElement.basis(g, 1, 3) - WedgeElement.basis(g, 2, 4)).scale(Fraction(1, 2))
    assert dec.reconstruct() == x


@pytest.mark.parametrize("g", [1, 2, 3])
def test_random_round_trip(g):
    rng = random.Random(g)
    for _ in range(15):
        x = random_element(g, rng)
        dec = decompose(x)
        assert dec.reconstruct() == x
        for k, j, p in dec.nonzero():
            assert p.degrees() <= {k}
            assert not contract(p)


def test_mismatched_genus():
    with pytest.raises(ValueError):
        WedgeElement.basis(1, 1) + WedgeElement.basis(2, 1)
    with pytest.raises(ValueError):
        WedgeElement.basis(1, 3)
