"""Mumford relations: the polynomials xi_k and their generating function.

With ``m = (n - 1) / 2`` the sequence is defined by ``xi_0 = 1``,
``xi_1 = alpha`` and

    (k+1) xi_{k+1} = alpha xi_k + (m - k) beta xi_{k-1} - (gamma / 2) xi_{k-2},

which is the coefficient form of the ODE

    (1 + beta t^2) F'(t) / F(t) = alpha + (m - 1) beta t - (gamma / 2) t^2

for ``F(t) = sum_k xi_k t^k``.  Its closed form is

    F(t) = (1 + beta t^2)^{(m-1)/2} R^{(2 alpha beta + gamma) / (4 s^3)} exp(-t gamma / (2 beta)),

``s = sqrt(-beta)``, ``R = (1 - t s)/(1 + t s)``.  The relation in degree
``2(g+m)`` is ``f = (g+m)! xi_{g+m}``, monic in ``alpha``.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .graded import GeneratorTable, GradedPoly

__all__ = [
    "XI_TABLE",
    "MumfordError",
    "XiSequence",
    "xi",
    "xi_sequence",
    "mumford_relation",
    "embed",
    "ode_residual",
    "OdeReport",
    "closed_form_F",
    "closed_form_oracle",
    "OracleReport",
    "alpha_reduction",
]

#: Commutative ring C[alpha, beta, gamma] the xi's live in.
XI_TABLE = GeneratorTable(0, 0)


class MumfordError(ValueError):
    """Invalid parameters for the Mumford relations."""


def _m_of(n: int) -> int:
    if not isinstance(n, int) or n < 1 or n % 2 == 0:
        raise MumfordError(f"n must be a positive odd integer, got {n!r}")
    return (n - 1) // 2


@dataclass
class XiSequence:
    """Memoised ``xi_0, xi_1, ...`` for one ``n``.  Extends on demand."""

    n: int
    m: int
    terms: list[GradedPoly] = field(default_factory=list)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def __post_init__(self):
        if not self.terms:
            a = XI_TABLE.var("alpha")
            self.terms.extend([XI_TABLE.one(), a])

    def get(self, k: int) -> GradedPoly:
        if k < 0:
            raise MumfordError("k must be nonnegative")
        if k >= len(self.terms):
            with self._lock:
                self._extend(k)
        return self.terms[k]

    def _extend(self, k: int) -> None:
        t = XI_TABLE
        a, b, c = t.var("alpha"), t.var("beta"), t.var("gamma")
        xs = self.terms
        while len(xs) <= k:
            j = len(xs) - 1  # computing xi_{j+1}
            nxt = a * xs[j]
            if j >= 1 and self.m - j:
                nxt = nxt + (b * xs[j - 1]).scale(self.m - j)
            if j >= 2:
                nxt = nxt - (c * xs[j - 2]).scale(Fraction(1, 2))
            xs.append(nxt.scale(Fraction(1, j + 1)))


_SEQUENCES: dict[int, XiSequence] = {}
_SEQ_LOCK = threading.Lock()


def xi_sequence(n: int) -> XiSequence:
    m = _m_of(n)
    with _SEQ_LOCK:
        seq = _SEQUENCES.get(n)
        if seq is None:
            seq = _SEQUENCES[n] = XiSequence(n, m)
    return seq


def xi(k: int, n: int) -> GradedPoly:
    """``xi_{k,n}`` in ``C[alpha, beta, gamma]`` (gamma an independent generator).

    Examples
    --------
    >>> xi(2, 3).pretty()
    '(1/2)α²'
    >>> xi(3, 3).pretty()
    '(1/6)α³ − (1/3)αβ − (1/6)γ'
    """
    return xi_sequence(n).get(k)


def embed(p: GradedPoly, table: GeneratorTable) -> GradedPoly:
    """Copy a polynomial in alpha, beta, gamma into a larger generator table."""
    src = p.table
    idx = [table.resolve(name) for name in src.names[:-1]]
    terms = {}
    for mono, c in p.terms.items():
        new = [0] * table.nvars
        for i, e in zip(idx, mono[:-1]):
            new[i] += e
        new[-1] = mono[-1]
        terms[tuple(new)] = c
    return GradedPoly(table, terms)


def mumford_relation(g: int, n: int, normalized: bool = True, table: GeneratorTable | None = None,
                     expand_gamma: bool = False) -> GradedPoly:
    """The degree-``2(g+m)`` relation ``f = (g+m)! xi_{g+m,n}``.

    Parameters
    ----------
    g, n : int
        Genus and (odd) number of marked points; ``(0, 1)`` is excluded.
    normalized : bool
        Return ``(g+m)! xi`` (monic in alpha) rather than ``xi`` itself.
    table : GeneratorTable, optional
        Target table; defaults to ``C[alpha, beta, gamma]``.
    expand_gamma : bool
        Rewrite gamma as ``sum psi_j psi_{j+g}``; uses ``GeneratorTable(g, n)``
        if no table is given.

    Examples
    --------
    >>> mumford_relation(1, 3).pretty()
    'α³ − 2αβ − γ'
    """
    m = _m_of(n)
    if g < 0:
        raise MumfordError("g must be nonnegative")
    if (g, n) == (0, 1):
        raise MumfordError("(g, n) = (0, 1) is excluded")
    k = g + m
    f = xi(k, n)
    if normalized:
        f = f.scale(math.factorial(k))
    if expand_gamma and table is None:
        table = GeneratorTable(g, n)
    if table is not None:
        f = embed(f, table)
    if expand_gamma:
        f = f.expand_gamma()
    return f


def alpha_reduction(f: GradedPoly, beta_value=2) -> list[Fraction]:
    """Coefficients (low to high) of ``f(alpha, beta_value, 0)`` as a polynomial in alpha."""
    coeffs: dict[int, Fraction] = {}
    t = f.table
    ia, ib, ig = t.index["alpha"], t.index["beta"], t.index["gamma"]
    bv = Fraction(beta_value)
    for mono, c in f.terms.items():
        if mono[ig] or any(e for i, e in enumerate(mono[:-1]) if i not in (ia, ib)):
            continue
        coeffs[mono[ia]] = coeffs.get(mono[ia], 0) + c * bv ** mono[ib]
    top = max((d for d, c in coeffs.items() if c), default=0)
    return [coeffs.get(d, Fraction(0)) for d in range(top + 1)]


# ---------------------------------------------------------------------------
# checks


@dataclass(frozen=True)
class OdeReport:
    """Exact ODE residual: ``nonzero`` lists orders whose coefficient is not 0."""

    K: int
    n: int
    nonzero: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return not self.nonzero

    def to_json(self) -> dict:
        return {"K": self.K, "n": self.n, "nonzero_orders": list(self.nonzero), "passed": self.passed}


def ode_residual(K: int, n: int) -> OdeReport:
    """Substitute ``sum_{k<=K} xi_k t^k`` into ``(1+beta t^2) F' - rhs F``.

    All coefficients through order ``K-1`` must vanish identically.
    """
    if K < 3:
        raise MumfordError("K must be at least 3")
    m = _m_of(n)
    t = XI_TABLE
    a, b, c = t.var("alpha"), t.var("beta"), t.var("gamma")
    F = [xi(k, n) for k in range(K + 1)]
    dF = [F[k + 1].scale(k + 1) for k in range(K)]
    nonzero = []
    for j in range(K):
        lhs = dF[j] + (b * dF[j - 2] if j >= 2 else t.zero())
        rhs = a * F[j]
        if j >= 1:
            rhs = rhs + (b * F[j - 1]).scale(m - 1)
        if j >= 2:
            rhs = rhs - (c * F[j - 2]).scale(Fraction(1, 2))
        if lhs - rhs:
            nonzero.append(j)
    return OdeReport(K, n, tuple(nonzero))


def closed_form_F(alpha: float, beta: float, gamma: float, t: float, m: int) -> float:
    """Numeric value of the closed-form generating function at real ``beta < 0``."""
    if beta >= 0:
        raise MumfordError("closed form is evaluated only at beta < 0")
    s = math.sqrt(-beta)
    if abs(t * s) >= 1:
        raise MumfordError("sample outside the convergence domain |t sqrt(-beta)| < 1")
    log_r = math.log((1 - t * s) / (1 + t * s))
    return ((1 + beta * t * t) ** ((m - 1) / 2)
            * math.exp((2 * alpha * beta + gamma) * log_r / (4 * s ** 3))
            * math.exp(-t * gamma / (2 * beta)))


def _poly_eval(p: GradedPoly, a: float, b: float, c: float) -> float:
    total = 0.0
    for mono, coef in p.terms.items():
        total += float(coef) * a ** mono[0] * b ** mono[1] * c ** mono[2]
    return total


@dataclass(frozen=True)
class OracleReport:
    """Partial sums of xi against the closed form at sample points."""

    k: int
    n: int
    t: float
    max_residual: float
    truncation_bound: float
    tolerance: float
    samples: int

    @property
    def passed(self) -> bool:
        return self.max_residual < self.tolerance + self.truncation_bound

    def to_json(self) -> dict:
        return {"k": self.k, "n": self.n, "t": self.t, "max_residual": self.max_residual,
                "truncation_bound": self.truncation_bound, "tolerance": self.tolerance,
                "samples": self.samples, "passed": self.passed}


def closed_form_oracle(
    k: int,
    n: int,
    samples: int = 20,
    t: float = 0.05,
    seed: int = 0,
    tolerance: float = 1e-8,
    points: Sequence[tuple[float, float, float]] | None = None,
) -> OracleReport:
    """Compare ``sum_{j<=k} xi_j t^j`` with the closed form numerically.

    Points ``(alpha, beta, gamma)`` are drawn with ``alpha, gamma`` in
    ``[-2, 2]`` and ``beta`` in ``[-4, -1]`` unless given.  The truncation
    bound is twice the largest first omitted term ``|xi_{k+1} t^{k+1}|``.
    """
    m = _m_of(n)
    if points is None:
        rng = np.random.default_rng(seed)
        points = [(float(rng.uniform(-2, 2)), float(rng.uniform(-4, -1)), float(rng.uniform(-2, 2)))
                  for _ in range(samples)]
    polys = [xi(j, n) for j in range(k + 2)]
    worst = 0.0
    tail = 0.0
    for a, b, c in points:
        exact = closed_form_F(a, b, c, t, m)
        partial = sum(_poly_eval(p, a, b, c) * t ** j for j, p in enumerate(polys[: k + 1]))
        worst = max(worst, abs(partial - exact))
        tail = max(tail, abs(_poly_eval(polys[k + 1], a, b, c)) * t ** (k + 1))
    return OracleReport(k, n, t, worst, 2 * tail, tolerance, len(points))
