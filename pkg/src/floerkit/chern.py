"""Chern-class power-series calculus over the Kunneth fiber algebra.

A class on ``X x Sigma`` is written ``u + a D + b Psi + w sigma`` where
``u, a, b, w`` live in a commutative base ring (here polynomials in
``alpha, beta, gamma, A, B``) and the fiber symbols multiply by::

    D^2 = -2 A sigma,   Psi^2 = -2 gamma sigma,   D Psi = Psi D = B sigma,
    sigma D = sigma Psi = sigma^2 = 0.

D and Psi are both sums of products of two odd classes, so they are even and
commute; their product ``B sigma`` is what produces the ``2 B sigma t^3``
term in the square of ``D t + Psi t^2``.

:class:`FiberSeries` is a power series in ``t`` truncated at order ``T`` with
fiber-algebra coefficients.  On top of it this module implements

* :func:`series_log` / :func:`series_exp`,
* :func:`grr_pushforward` -- ``ln c_t`` of the derived pushforward along the
  surface, from ``u`` and ``w``,
* :func:`slant_jacobian` -- integration of ``A^r B^s`` over the Jacobian,
* :func:`r1_series` / :func:`r1_closed_form_check` -- the full pipeline for
  ``c_t(R^1)``, compared against its closed form,
* :func:`x_twist` -- the change of normalisation ``c_x -> c_0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .graded import AlgebraError, GeneratorTable, GradedPoly

__all__ = [
    "BASE",
    "FiberAlgebraElement",
    "FiberSeries",
    "SeriesError",
    "series_log",
    "series_exp",
    "grr_pushforward",
    "slant_jacobian",
    "slant_monomial",
    "hom_chern_series",
    "r1_series",
    "r1_rank",
    "slant_corollary_sides",
    "r1_closed_form",
    "R1CheckReport",
    "r1_closed_form_check",
    "x_twist",
    "default_order",
]

#: Base ring: alpha, beta, gamma (even, gamma independent) and the Jacobian
#: classes A (degree 2) and B (degree 4).
BASE = GeneratorTable(0, 0, extras=(("A", 2), ("B", 4)))


class SeriesError(ValueError):
    """Raised when a series operation's precondition fails."""


def default_order(g: int, m: int) -> int:
    """Default truncation ``2(g+m)+4``."""
    return 2 * (g + m) + 4


# ---------------------------------------------------------------------------
# fiber algebra


class FiberAlgebraElement:
    """``u*1 + d*D + p*Psi + w*sigma`` with base-ring components.

    Parameters
    ----------
    u, d, p, w : GradedPoly or scalar
        Components on ``1, D, Psi, sigma``.  Scalars are promoted into
        ``table``.
    table : GeneratorTable
        Base ring.  Must have even generators ``A``, ``B`` and ``gamma``.
    """

    __slots__ = ("table", "u", "d", "p", "w")

    def __init__(self, u=0, d=0, p=0, w=0, table: GeneratorTable = BASE):
        object.__setattr__(self, "table", table)
        for name, val in zip(("u", "d", "p", "w"), (u, d, p, w)):
            if not isinstance(val, GradedPoly):
                val = table.const(val)
            elif val.table != table:
                raise AlgebraError("fiber components must share the base table")
            if val.has_odd:
                raise AlgebraError("fiber components must be even")
            object.__setattr__(self, name, val)

    def __setattr__(self, key, value):
        raise AttributeError("FiberAlgebraElement is immutable")

    @classmethod
    def _raw(cls, table, u, d, p, w):
        self = object.__new__(cls)
        for name, val in (("table", table), ("u", u), ("d", d), ("p", p), ("w", w)):
            object.__setattr__(self, name, val)
        return self

    # generators -----------------------------------------------------------

    @classmethod
    def D(cls, table: GeneratorTable = BASE) -> "FiberAlgebraElement":
        return cls(d=1, table=table)

    @classmethod
    def Psi(cls, table: GeneratorTable = BASE) -> "FiberAlgebraElement":
        return cls(p=1, table=table)

    @classmethod
    def sigma(cls, table: GeneratorTable = BASE) -> "FiberAlgebraElement":
        return cls(w=1, table=table)

    @classmethod
    def base(cls, value, table: GeneratorTable = BASE) -> "FiberAlgebraElement":
        return cls(u=value, table=table)

    # arithmetic -----------------------------------------------------------

    def components(self) -> tuple[GradedPoly, GradedPoly, GradedPoly, GradedPoly]:
        return self.u, self.d, self.p, self.w

    def _coerce(self, other) -> "FiberAlgebraElement":
        if isinstance(other, FiberAlgebraElement):
            if other.table != self.table:
                raise AlgebraError("fiber elements over different base tables")
            return other
        return FiberAlgebraElement(u=other, table=self.table)

    def __add__(self, other):
        o = self._coerce(other)
        return FiberAlgebraElement._raw(self.table, self.u + o.u, self.d + o.d, self.p + o.p, self.w + o.w)

    __radd__ = __add__

    def __neg__(self):
        return FiberAlgebraElement._raw(self.table, -self.u, -self.d, -self.p, -self.w)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "FiberAlgebraElement":
        return FiberAlgebraElement._raw(self.table, self.u.scale(c), self.d.scale(c), self.p.scale(c), self.w.scale(c))

    def map(self, fn: Callable[[GradedPoly], GradedPoly]) -> "FiberAlgebraElement":
        """Apply ``fn`` to every component."""
        return FiberAlgebraElement._raw(self.table, fn(self.u), fn(self.d), fn(self.p), fn(self.w))

    def __mul__(self, other):
        o = self._coerce(other)
        t = self.table
        u1, a1, b1, w1 = self.components()
        u2, a2, b2, w2 = o.components()
        u = u1 * u2
        d = u1 * a2 + a1 * u2
        p = u1 * b2 + b1 * u2
        w = u1 * w2 + w1 * u2
        if a1 and a2:
            w = w - (a1 * a2 * t.var("A")).scale(2)
        if b1 and b2:
            w = w - (b1 * b2 * t.var("gamma")).scale(2)
        cross = a1 * b2 + b1 * a2
        if cross:
            w = w + cross * t.var("B")
        return FiberAlgebraElement._raw(t, u, d, p, w)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FiberAlgebraElement):
            if isinstance(other, (int, Fraction)):
                other = FiberAlgebraElement(u=other, table=self.table)
            else:
                return NotImplemented
        return self.components() == other.components()

    def __hash__(self):
        return hash(self.components())

    def __bool__(self):
        return any(self.components())

    def is_base(self) -> bool:
        """True when only the ``1`` component is populated."""
        return not (self.d or self.p or self.w)

    def __repr__(self):
        parts = []
        for label, c in zip(("", "D", "Psi", "sigma"), self.components()):
            if c:
                parts.append(f"({c.to_text()})" + (f"*{label}" if label else ""))
        return "FiberAlgebraElement(" + (" + ".join(parts) or "0") + ")"


# ---------------------------------------------------------------------------
# truncated series


class FiberSeries:
    """Power series ``c_0 + c_1 t + ... + c_T t^T`` with fiber coefficients.

    Coefficients beyond the truncation order ``T`` are unknown, never zero:
    binary operations return the smaller of the two orders.
    """

    __slots__ = ("order", "coeffs", "table")

    def __init__(self, coeffs: Sequence, order: int | None = None, table: GeneratorTable = BASE):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise SeriesError("truncation order must be nonnegative")
        out = []
        for k in range(order + 1):
            c = coeffs[k] if k < len(coeffs) else 0
            if not isinstance(c, FiberAlgebraElement):
                c = FiberAlgebraElement(u=c, table=table)
            out.append(c)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(out))
        object.__setattr__(self, "table", table)

    def __setattr__(self, key, value):
        raise AttributeError("FiberSeries is immutable")

    @classmethod
    def zero(cls, order: int, table: GeneratorTable = BASE) -> "FiberSeries":
        return cls([], order, table)

    @classmethod
    def one(cls, order: int, table: GeneratorTable = BASE) -> "FiberSeries":
        return cls([1], order, table)

    @classmethod
    def from_base(cls, coeffs: Sequence, order: int | None = None, table: GeneratorTable = BASE) -> "FiberSeries":
        """Series whose coefficients are base-ring polynomials or scalars."""
        return cls([FiberAlgebraElement(u=c, table=table) for c in coeffs], order, table)

    def component(self, name: str) -> list[GradedPoly]:
        """Coefficient list of one component: ``"u"``, ``"d"``, ``"p"`` or ``"w"``."""
        return [getattr(c, name) for c in self.coeffs]

    def truncate(self, order: int) -> "FiberSeries":
        return FiberSeries(self.coeffs[: order + 1], min(order, self.order), self.table)

    def map(self, fn: Callable[[GradedPoly], GradedPoly]) -> "FiberSeries":
        return FiberSeries([c.map(fn) for c in self.coeffs], self.order, self.table)

    def _coerce(self, other) -> "FiberSeries":
        if isinstance(other, FiberSeries):
            return other
        return FiberSeries([other], self.order, self.table)

    def __add__(self, other):
        o = self._coerce(other)
        order = min(self.order, o.order)
        return FiberSeries([a + b for a, b in zip(self.coeffs[: order + 1], o.coeffs)], order, self.table)

    __radd__ = __add__

    def __neg__(self):
        return FiberSeries([-c for c in self.coeffs], self.order, self.table)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def scale(self, c) -> "FiberSeries":
        return FiberSeries([x.scale(c) for x in self.coeffs], self.order, self.table)

    def mul(self, other, prune: Callable | None = None) -> "FiberSeries":
        if not isinstance(other, FiberSeries):
            if isinstance(other, FiberAlgebraElement):
                return FiberSeries([c * other for c in self.coeffs], self.order, self.table)
            return self.scale(other)
        order = min(self.order, other.order)
        zero = FiberAlgebraElement(table=self.table)
        nz_a = [i for i in range(order + 1) if self.coeffs[i]]
        nz_b = [j for j in range(order + 1) if other.coeffs[j]]
        out = [zero] * (order + 1)
        for i in nz_a:
            for j in nz_b:
                if i + j > order:
                    break
                out[i + j] = out[i + j] + self.coeffs[i] * other.coeffs[j]
        if prune is not None:
            out = [c.map(prune) for c in out]
        return FiberSeries(out, order, self.table)

    def __mul__(self, other):
        return self.mul(other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "FiberSeries":
        out = FiberSeries.one(self.order, self.table)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, FiberSeries):
            return NotImplemented
        order = min(self.order, other.order)
        return self.coeffs[: order + 1] == other.coeffs[: order + 1]

    def __hash__(self):
        return hash(self.coeffs)

    def is_base(self) -> bool:
        return all(c.is_base() for c in self.coeffs)

    def to_text(self) -> list[dict[str, str]]:
        """Serialisable form: one ``{component: polynomial text}`` dict per power of t."""
        out = []
        for c in self.coeffs:
            out.append({k: v.to_text() for k, v in zip("udpw", c.components()) if v})
        return out

    def __repr__(self):
        return f"FiberSeries(order={self.order}, {self.to_text()})"


def series_log(s: FiberSeries, prune: Callable | None = None) -> FiberSeries:
    """Formal logarithm of a series with constant term 1.

    Uses ``s' = s * (ln s)'``, i.e. ``k L_k = k s_k - sum_{j<k} j L_j s_{k-j}``,
    valid because the fiber algebra is commutative.

    Raises
    ------
    SeriesError
        If the constant term is not 1.
    """
    if s.coeffs[0] != FiberAlgebraElement(u=1, table=s.table):
        raise SeriesError("series_log needs constant term 1")
    zero = FiberAlgebraElement(table=s.table)
    logs = [zero]
    for k in range(1, s.order + 1):
        acc = s.coeffs[k].scale(k)
        for j in range(1, k):
            if logs[j] and s.coeffs[k - j]:
                acc = acc - (logs[j] * s.coeffs[k - j]).scale(j)
        term = acc.scale(Fraction(1, k))
        logs.append(term.map(prune) if prune else term)
    return FiberSeries(logs, s.order, s.table)


def series_exp(s: FiberSeries, prune: Callable | None = None) -> FiberSeries:
    """Formal exponential of a series with constant term 0.

    ``k E_k = sum_{j=1..k} j L_j E_{k-j}``.  ``prune`` (optional) is applied
    to every component of every coefficient as it is produced; it must be the
    quotient map by a monomial ideal for the result to stay meaningful.
    """
    if s.coeffs[0]:
        raise SeriesError("series_exp needs constant term 0")
    one = FiberAlgebraElement(u=1, table=s.table)
    out = [one]
    for k in range(1, s.order + 1):
        acc = FiberAlgebraElement(table=s.table)
        for j in range(1, k + 1):
            if s.coeffs[j] and out[k - j]:
                acc = acc + (s.coeffs[j] * out[k - j]).scale(j)
        term = acc.scale(Fraction(1, k))
        out.append(term.map(prune) if prune else term)
    return FiberSeries(out, s.order, s.table)


def grr_pushforward(s: FiberSeries, g: int) -> FiberSeries:
    """``ln c_t`` of the derived pushforward along a genus-``g`` surface.

    With ``s = u + sum v_j e_j + w sigma`` (the D and Psi parts play no role)
    the result is ``-(g-1) u(t) - integral_0^t (w(x) - w'(0) x) / x^2 dx``,
    i.e. coefficientwise ``-(g-1) u_k - w_{k+1} / k``.  The output carries one
    order less than the input because ``w_{T+1}`` is unknown.

    Raises
    ------
    SeriesError
        If ``s`` has a nonzero constant term.
    """
    if s.coeffs[0]:
        raise SeriesError("grr_pushforward expects a logarithm (zero constant term)")
    order = s.order - 1
    if order < 0:
        raise SeriesError("series too short to push forward")
    u = s.component("u")
    w = s.component("w")
    out = [s.table.zero()]
    for k in range(1, order + 1):
        out.append(u[k].scale(-(g - 1)) - w[k + 1].scale(Fraction(1, k)))
    return FiberSeries.from_base(out, order, s.table)


def slant_monomial(r: int, s: int, g: int) -> tuple[Fraction, int]:
    """``A^r B^s / [J_g]`` as ``(coefficient, power of gamma)``.

    Equals ``r! s! (-gamma)^p / p!`` with ``p = s/2`` when ``2r+s = 2g``, else 0.
    """
    if 2 * r + s != 2 * g:
        return Fraction(0), 0
    p = s // 2
    c = Fraction(math.factorial(r) * math.factorial(s), math.factorial(p))
    return (-c if p & 1 else c), p


def _slant_poly(poly: GradedPoly, g: int) -> GradedPoly:
    table = poly.table
    ia, ib, ig = table.index["A"], table.index["B"], table.index["gamma"]
    out: dict = {}
    for mono, c in poly.terms.items():
        coef, p = slant_monomial(mono[ia], mono[ib], g)
        if not coef:
            continue
        new = list(mono)
        new[ia] = new[ib] = 0
        new[ig] += p
        key = tuple(new)
        nv = out.get(key, 0) + c * coef
        if nv:
            out[key] = nv
        else:
            out.pop(key, None)
    return GradedPoly._raw(table, out)


def slant_jacobian(s: FiberSeries, g: int) -> FiberSeries:
    """Replace every ``A^r B^s`` by its integral over the Jacobian.

    Raises
    ------
    SeriesError
        If any coefficient has a D, Psi or sigma component.
    """
    if not s.is_base():
        raise SeriesError("slant_jacobian needs base-ring coefficients (no D, Psi, sigma parts)")
    return FiberSeries.from_base([_slant_poly(c.u, g) for c in s.coeffs], s.order, s.table)


# ---------------------------------------------------------------------------
# the R^1 pipeline


def _pruner(g: int, gamma_cap: bool) -> Callable[[GradedPoly], GradedPoly]:
    """Quotient by ``(A^r B^s : 2r+s > 2g)`` and optionally ``gamma^{g+1}``.

    Monomials in the first ideal integrate to zero over the Jacobian and the
    ideal is preserved by every step of the pipeline, so dropping them early
    does not change the slanted result.
    """
    ia, ib, ig = BASE.index["A"], BASE.index["B"], BASE.index["gamma"]

    def prune(poly: GradedPoly) -> GradedPoly:
        terms = {m: c for m, c in poly.terms.items()
                 if 2 * m[ia] + m[ib] <= 2 * g and (not gamma_cap or m[ig] <= g)}
        if len(terms) == len(poly.terms):
            return poly
        return GradedPoly._raw(poly.table, terms)

    return prune


def hom_chern_series(m: int, order: int) -> FiberSeries:
    """``c_t = 1 + (-(m+1) sigma + D) t + (alpha sigma + Psi + beta - A sigma / 2) t^2``."""
    t = BASE
    c1 = FiberAlgebraElement(d=1, w=-(m + 1), table=t)
    c2 = FiberAlgebraElement(u=t.var("beta"), p=1, w=t.var("alpha") - t.var("A").scale(Fraction(1, 2)), table=t)
    return FiberSeries([1, c1, c2], order, t)


def r1_rank(g: int, m: int) -> int:
    """Rank of ``R^1`` read off the pipeline: ``-(ch_0 of the pushforward)``.

    The pushforward has ``ch_0 = -rank(V)(g-1) + w_1`` with ``rank V = 2`` and
    ``w_1`` the linear sigma-coefficient of ``ln c_t``; ``R^0`` vanishes.
    """
    logs = series_log(hom_chern_series(m, 2))
    w1 = logs.coeffs[1].w.coeff(())
    rank = -(-2 * (g - 1) + w1)
    if rank.denominator != 1:
        raise SeriesError("non-integral rank")
    return int(rank)


@lru_cache(maxsize=64)
def _r1_series_cached(g: int, m: int, order: int, gamma_cap: bool) -> tuple[GradedPoly, ...]:
    prune = _pruner(g, gamma_cap)
    c_hom = hom_chern_series(m, order + 1)
    logs = series_log(c_hom, prune=prune)
    pushed = grr_pushforward(logs, g)
    c_r1 = series_exp(-pushed, prune=prune)
    slanted = slant_jacobian(c_r1, g)
    if gamma_cap:
        slanted = slanted.map(prune)
    return tuple(slanted.component("u"))


def r1_series(g: int, m: int, order: int | None = None, gamma_cap: bool = True) -> list[GradedPoly]:
    """Coefficients of ``c_t(R^1) / [J_g]`` in ``alpha, beta, gamma``.

    Pipeline: ``ln`` of the Chern series of the Hom bundle, pushforward,
    ``c_t(R^1) = exp(-ln c_t(R pi_*))``, then the Jacobian slant.

    Parameters
    ----------
    g, m : int
        Genus and ``m = (n-1)/2``.
    order : int, optional
        Truncation; default ``2(g+m)+4``.
    gamma_cap : bool
        Work modulo ``gamma^{g+1}`` (which vanishes in the cohomology of the
        moduli space).  The exponential form of the slant corollary relies on
        this, so comparisons with the closed form must use it.
    """
    if g < 0 or m < 0:
        raise SeriesError("g and m must be nonnegative")
    if order is None:
        order = default_order(g, m)
    return list(_r1_series_cached(g, m, order, gamma_cap))


def slant_corollary_sides(g: int, order: int) -> tuple[list[GradedPoly], list[GradedPoly]]:
    """Both sides of ``e^{k(-A+Bt)} / [J_g] = (-1)^g k^g e^{k gamma t^2}``.

    ``k = -t / (2(1 + beta t^2))``.  The left side is computed by
    :func:`series_exp` and :func:`slant_jacobian`; the right side directly,
    with the exponential summed up to ``gamma^g`` (higher powers vanish).
    """
    t = BASE
    beta = t.var("beta")
    kappa = [t.zero()] * (order + 1)
    # -t/2 * sum_i (-beta)^i t^{2i}
    for i in range((order - 1) // 2 + 1):
        if 2 * i + 1 <= order:
            kappa[2 * i + 1] = ((-beta) ** i).scale(Fraction(-1, 2))
    kappa_s = FiberSeries.from_base(kappa, order, t)
    lin = FiberSeries.from_base([-t.var("A"), t.var("B")], order, t)
    lhs = slant_jacobian(series_exp(kappa_s * lin, prune=_pruner(g, False)), g)
    gam_t2 = FiberSeries.from_base([0, 0, t.var("gamma")], order, t)
    x = kappa_s * gam_t2
    expo = FiberSeries.one(order, t)
    term = FiberSeries.one(order, t)
    for p in range(1, g + 1):
        term = (term * x).scale(Fraction(1, p))
        expo = expo + term
    rhs = (kappa_s ** g).scale((-1) ** g) * expo
    return lhs.component("u"), rhs.component("u")


def r1_closed_form(alpha: float, beta: float, gamma: float, t: float, g: int, m: int, gamma_cap: bool = True) -> float:
    """Closed form of ``c_t(R^1) / [J_g]`` evaluated at real ``beta < 0``.

    ``(1+beta t^2)^{(m-1)/2} (t/2)^g R^{(2 alpha beta + gamma)/(4 s^3)}
    exp(-t gamma / (2 beta))`` with ``s = sqrt(-beta)`` and
    ``R = (1 - t s)/(1 + t s)``.  With ``gamma_cap`` the factor
    ``exp(gamma L)`` is replaced by its Taylor polynomial of degree ``g`` in
    ``gamma``, matching computation modulo ``gamma^{g+1}``.

    Raises
    ------
    SeriesError
        If ``beta >= 0`` or ``|t sqrt(-beta)| >= 1``.
    """
    if beta >= 0:
        raise SeriesError("closed form is evaluated only at beta < 0")
    s = math.sqrt(-beta)
    if abs(t * s) >= 1:
        raise SeriesError("sample outside the convergence domain |t sqrt(-beta)| < 1")
    log_r = math.log((1 - t * s) / (1 + t * s))
    base = (1 + beta * t * t) ** ((m - 1) / 2) * (t / 2) ** g * math.exp(2 * alpha * beta * log_r / (4 * s ** 3))
    big_l = log_r / (4 * s ** 3) - t / (2 * beta)
    if gamma_cap:
        factor = sum((gamma * big_l) ** p / math.factorial(p) for p in range(g + 1))
    else:
        factor = math.exp(gamma * big_l)
    return base * factor


@dataclass(frozen=True)
class R1CheckReport:
    """Result of :func:`r1_closed_form_check`."""

    g: int
    m: int
    T: int
    t: float
    max_residual: float
    samples: int
    rank: int
    points: list[tuple[float, float, float]] = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        return {"g": self.g, "m": self.m, "T": self.T, "t": self.t, "max_residual": self.max_residual,
                "samples": self.samples, "rank": self.rank}


def _eval_series(coeffs: Sequence[GradedPoly], assignment: dict, t: float) -> float:
    total = 0.0
    for k, c in enumerate(coeffs):
        if c:
            total += c.eval_numeric(assignment).real * t ** k
    return total


def r1_closed_form_check(
    g: int,
    m: int,
    T: int | None = None,
    samples: int = 20,
    t: float = 0.05,
    seed: int = 0,
    points: Sequence[tuple[float, float, float]] | None = None,
) -> R1CheckReport:
    """Compare the R^1 pipeline with its closed form at random real points.

    Samples ``alpha, gamma`` uniformly in ``[-2, 2]`` and ``beta`` in
    ``[-4, -1]`` (or uses ``points``), sums the pipeline series to order ``T``
    at ``t`` and returns the largest relative residual.  Both sides are taken
    modulo ``gamma^{g+1}``.

    Raises
    ------
    SeriesError
        If ``T < 2(g+m)+2`` or a sample leaves ``|t sqrt(-beta)| < 1``.
    """
    if T is None:
        T = default_order(g, m)
    if T < 2 * (g + m) + 2:
        raise SeriesError(f"truncation T={T} below 2(g+m)+2={2 * (g + m) + 2}")
    rank = r1_rank(g, m)
    if rank != 2 * g + m - 1:
        raise SeriesError(f"pipeline rank {rank} differs from 2g+m-1")
    if points is None:
        rng = np.random.default_rng(seed)
        points = [(float(rng.uniform(-2, 2)), float(rng.uniform(-4, -1)), float(rng.uniform(-2, 2)))
                  for _ in range(samples)]
    points = [tuple(map(float, p)) for p in points]
    coeffs = r1_series(g, m, T)
    worst = 0.0
    for a, b, c in points:
        oracle = r1_closed_form(a, b, c, t, g, m)
        value = _eval_series(coeffs, {"alpha": a, "beta": b, "gamma": c}, t)
        diff = abs(value - oracle)
        worst = max(worst, diff / abs(oracle) if oracle else diff)
    return R1CheckReport(g, m, T, t, worst, len(points), rank, list(points))


# ---------------------------------------------------------------------------
# x-twist


def x_twist(coeffs: Sequence[GradedPoly], x: GradedPoly, rank: int, order: int | None = None) -> list[GradedPoly]:
    """``(1 - t x)^rank c(t / (1 - t x))`` truncated at ``order``.

    Expands ``sum_k c_k t^k (1 - t x)^{rank - k}``, using the binomial series
    when ``rank - k`` is negative.  Twisting by ``x`` and then by ``-x`` is
    the identity; a polynomial of degree ``<= rank`` stays one.
    """
    if order is None:
        order = len(coeffs) - 1
    table = x.table
    out = [table.zero() for _ in range(order + 1)]
    x_pows = [table.one()]
    for _ in range(order):
        x_pows.append(x_pows[-1] * x)
    for k, c in enumerate(coeffs[: order + 1]):
        if not c:
            continue
        e = rank - k
        for i in range(order - k + 1):
            # coefficient of (t x)^i in (1 - t x)^e
            if e >= 0:
                b = math.comb(e, i) if i <= e else 0
                b = -b if i & 1 else b
            else:
                b = math.comb(-e + i - 1, i)
            if not b:
                continue
            out[k + i] = out[k + i] + (c * x_pows[i]).scale(b)
    return out
