"""Exact and numerical tools for moduli-space cohomology and instanton Floer spectra.

Modules
-------
graded
    Graded-commutative polynomials in alpha, beta, gamma, delta_i, psi_j, eps.
lefschetz
    Symplectic exterior algebra and its primitive decomposition.
chern
    Chern-class power series over the Kunneth fiber algebra (pushforward,
    Jacobian slant, the R^1 closed form).
mumford
    The polynomials xi_{k,n} and the Mumford relation.
groebner
    Gröbner bases, quotient rings, multiplication operators and spectra.
repvariety
    Numerical SU(2) representation varieties.
tables
    Closed-form spectrum, AHI and genus-bound tables.
cli
    ``floerkit`` command line.
"""
from .graded import GeneratorTable, GradedPoly, eval_numeric, flip, mul, parse_poly
from .lefschetz import WedgeElement, contract, decompose, gamma_omega, primitive_basis
from .mumford import closed_form_oracle, mumford_relation, ode_residual, xi

__version__ = "0.1.0"

__all__ = [
    "GeneratorTable",
    "GradedPoly",
    "mul",
    "flip",
    "eval_numeric",
    "parse_poly",
    "WedgeElement",
    "contract",
    "decompose",
    "gamma_omega",
    "primitive_basis",
    "xi",
    "mumford_relation",
    "ode_residual",
    "closed_form_oracle",
]
