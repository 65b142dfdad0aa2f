"""Commutative ideals in C[alpha, beta, gamma, delta_1..delta_n] and their quotients.

Gröbner bases are computed by Buchberger's algorithm with exact coefficients.
The default order is degree-reverse-lexicographic with variables ranked::

    beta > gamma > delta_1 > ... > delta_n > alpha

so alpha is the smallest variable and an ideal that is "univariate in alpha"
after eliminating the others has standard monomials ``1, alpha, alpha^2, ...``
and multiplication by alpha becomes a companion matrix.

Also provided: multiplication operators on finite quotients, the alpha
spectrum with algebraic and geometric multiplicities, ideal membership, the
spectral polynomials ``Q = prod (alpha - lambda_i)``, ``P = Q^N``, ``H = Q^M``
and the two model ideals used in the top-eigenspace argument.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .graded import AlgebraError, GeneratorTable, GradedPoly, parse_poly
from .linalg import charpoly, identity, rank
from .reports import SpectrumEntry, SpectrumReport
from .scalars import GaussianRational, scalar, to_complex

__all__ = [
    "GroebnerError",
    "InfiniteQuotientError",
    "ring_table",
    "CommIdeal",
    "QuotientBasis",
    "groebner",
    "normal_form",
    "mult_operator",
    "alpha_spectrum",
    "ideal_member",
    "lambdas",
    "SpectralPolynomials",
    "top_eigenspace_ideal",
    "q_model_ideal",
    "parse_ideal_file",
    "MAX_VARIABLES",
]

MAX_VARIABLES = 12
NUMERIC_TOL = 1e-10


class GroebnerError(ValueError):
    """Invalid ideal or unsupported request."""


class InfiniteQuotientError(GroebnerError):
    """The quotient ring is not finite-dimensional."""


def ring_table(n: int) -> GeneratorTable:
    """Generator table of ``C[alpha, beta, gamma, delta_1..delta_n]``."""
    return GeneratorTable(0, n)


# ---------------------------------------------------------------------------
# sparse polynomials: dict exponent-tuple -> scalar, exponents in table order


def _mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


class _Order:
    """Monomial order on exponent tuples (table order: alpha, beta, gamma, deltas)."""

    def __init__(self, name: str, nvars: int):
        if name not in ("grevlex", "lex"):
            raise GroebnerError(f"unknown monomial order {name!r}")
        self.name = name
        # ranking: beta, gamma, delta_1..delta_n, alpha  (largest first)
        self.rank = list(range(1, nvars)) + [0]

    def key(self, mono):
        ranked = [mono[i] for i in self.rank]
        if self.name == "lex":
            return tuple(ranked)
        return (sum(ranked), tuple(-e for e in reversed(ranked)))


def _lead(poly: dict, order: _Order):
    return max(poly, key=order.key)


def _monic(poly: dict, order: _Order) -> dict:
    lm = _lead(poly, order)
    inv = scalar(Fraction(1) / poly[lm])
    return {m: scalar(c * inv) for m, c in poly.items()}


def _reduce(poly: dict, basis: Sequence[tuple[tuple, dict]], order: _Order) -> dict:
    """Full normal form of ``poly`` modulo monic polynomials with leading monomials."""
    f = dict(poly)
    rem: dict = {}
    key = order.key
    while f:
        m = max(f, key=key)
        c = f[m]
        for lm, g in basis:
            if _divides(lm, m):
                q = _mono_div(m, lm)
                for gm, gc in g.items():
                    t = _mono_mul(gm, q)
                    nv = f.get(t, 0) - c * gc
                    if nv:
                        f[t] = nv
                    else:
                        f.pop(t, None)
                break
        else:
            rem[m] = c
            del f[m]
    return rem


def _spoly(f: dict, lf, g: dict, lg) -> dict:
    lcm = _lcm(lf, lg)
    qf, qg = _mono_div(lcm, lf), _mono_div(lcm, lg)
    out: dict = {}
    for m, c in f.items():
        t = _mono_mul(m, qf)
        out[t] = out.get(t, 0) + c
    for m, c in g.items():
        t = _mono_mul(m, qg)
        nv = out.get(t, 0) - c
        if nv:
            out[t] = nv
        else:
            out.pop(t, None)
    return {m: c for m, c in out.items() if c}


def _buchberger(polys: list[dict], order: _Order) -> list[dict]:
    basis: list[tuple[tuple, dict]] = []
    for p in polys:
        p = _reduce(p, basis, order)
        if p:
            p = _monic(p, order)
            basis.append((_lead(p, order), p))
    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    while pairs:
        # normal selection strategy: smallest lcm first; ties by index for determinism
        pairs.sort(key=lambda ij: (order.key(_lcm(basis[ij[0]][0], basis[ij[1]][0])), ij))
        i, j = pairs.pop(0)
        li, lj = basis[i][0], basis[j][0]
        if all(not (x and y) for x, y in zip(li, lj)):
            continue  # coprime leading monomials: S-polynomial reduces to 0
        s = _reduce(_spoly(basis[i][1], li, basis[j][1], lj), basis, order)
        if s:
            s = _monic(s, order)
            basis.append((_lead(s, order), s))
            k = len(basis) - 1
            pairs.extend((a, k) for a in range(k))
    # minimise and interreduce
    lms = [lm for lm, _ in basis]
    keep = []
    for idx, lm in enumerate(lms):
        dominated = any(
            _divides(other, lm) and (other != lm or jdx < idx)
            for jdx, other in enumerate(lms) if jdx != idx
        )
        if not dominated:
            keep.append(basis[idx])
    reduced = []
    for idx, (lm, p) in enumerate(keep):
        others = [b for jdx, b in enumerate(keep) if jdx != idx]
        tail = _reduce({m: c for m, c in p.items() if m != lm}, others, order)
        tail[lm] = Fraction(1)
        reduced.append(tail)
    reduced.sort(key=lambda p: order.key(_lead(p, order)), reverse=True)
    return reduced


# ---------------------------------------------------------------------------
# public types


@dataclass(frozen=True)
class CommIdeal:
    """Ideal generated by even polynomials in alpha, beta, gamma, deltas.

    Parameters
    ----------
    generators : sequence of GradedPoly
        Nonzero generators over a common table without odd generators; the
        ``eps`` generator may not appear.
    order : {"grevlex", "lex"}
        Monomial order; alpha is always the smallest variable.
    """

    generators: tuple[GradedPoly, ...]
    order: str = "grevlex"

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise GroebnerError("an ideal needs at least one generator")
        table = gens[0].table
        for p in gens:
            if not isinstance(p, GradedPoly):
                raise GroebnerError("generators must be GradedPoly values")
            if p.table != table:
                raise GroebnerError("generators over different tables")
            if not p:
                raise GroebnerError("zero generator")
            if p.has_odd:
                raise GroebnerError("generators must not contain odd generators")
            if any(m[-1] for m in p.terms):
                raise GroebnerError("eps may not appear in a commutative ideal")
        if table.g or table.extras:
            raise GroebnerError("ideals live in C[alpha, beta, gamma, delta_i] (use ring_table(n))")
        if table.nvars - 1 > MAX_VARIABLES:
            raise GroebnerError(f"more than {MAX_VARIABLES} variables")
        _Order(self.order, table.nvars - 1)
        object.__setattr__(self, "generators", gens)

    @property
    def table(self) -> GeneratorTable:
        return self.generators[0].table

    @property
    def nvars(self) -> int:
        return self.table.nvars - 1

    def with_order(self, order: str) -> "CommIdeal":
        return CommIdeal(self.generators, order)

    def extend(self, *polys: GradedPoly) -> "CommIdeal":
        return CommIdeal(self.generators + tuple(polys), self.order)

    def _to_dict(self, p: GradedPoly) -> dict:
        return _poly_to_dict(p, self.table)

    @cached_property
    def _order(self) -> _Order:
        return _Order(self.order, self.nvars)


def _poly_to_dict(p: GradedPoly, table: GeneratorTable) -> dict:
    if p.has_odd:
        raise GroebnerError("polynomial contains odd generators")
    if p.table == table:
        if any(m[-1] for m in p.terms):
            _eps_error()
        return {m[:-1]: c for m, c in p.terms.items()}
    out: dict = {}
    for m, c in p.terms.items():
        if m[-1]:
            _eps_error()
        new = [0] * (table.nvars - 1)
        for i, e in enumerate(m[:-1]):
            if e:
                name = p.table.names[i]
                if name not in table.index or table.index[name] == table.eps_index:
                    raise GroebnerError(f"generator {name} is not in the ideal's ring")
                new[table.index[name]] += e
        key = tuple(new)
        out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v}


def _eps_error():
    raise GroebnerError("eps may not appear in a commutative ideal")


def _dict_to_poly(d: dict, table: GeneratorTable) -> GradedPoly:
    return GradedPoly(table, {m + (0,): c for m, c in d.items()})


@dataclass(frozen=True)
class QuotientBasis:
    """Reduced Gröbner basis and the standard monomials of the quotient.

    ``standard_monomials`` is sorted increasingly in the monomial order and is
    ``None`` when the quotient is infinite-dimensional (``dimension`` is then
    ``None`` too and ``finite`` is False).
    """

    ideal: CommIdeal
    basis: tuple[GradedPoly, ...]
    leading_monomials: tuple[tuple[int, ...], ...]
    standard_monomials: tuple[tuple[int, ...], ...] | None
    _dicts: tuple = field(repr=False, compare=False, default=())

    @property
    def finite(self) -> bool:
        return self.standard_monomials is not None

    @property
    def dimension(self) -> int | None:
        return None if self.standard_monomials is None else len(self.standard_monomials)

    def monomial_text(self, mono: tuple[int, ...]) -> str:
        names = self.ideal.table.names
        parts = [names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(mono) if e]
        return " * ".join(parts) if parts else "1"

    def normal_form(self, f: GradedPoly) -> GradedPoly:
        d = _reduce(_poly_to_dict(f, self.ideal.table), self._pairs, self.ideal._order)
        return _dict_to_poly(d, self.ideal.table)

    @cached_property
    def _pairs(self):
        return tuple(zip(self.leading_monomials, self._dicts))

    @cached_property
    def _std_index(self) -> dict:
        return {m: i for i, m in enumerate(self.standard_monomials or ())}

    def coordinates(self, f: GradedPoly) -> list:
        """Coordinates of the normal form of ``f`` in the standard-monomial basis."""
        if not self.finite:
            raise InfiniteQuotientError("quotient is infinite-dimensional")
        d = _reduce(_poly_to_dict(f, self.ideal.table), self._pairs, self.ideal._order)
        vec = [Fraction(0)] * self.dimension
        for m, c in d.items():
            vec[self._std_index[m]] = c
        return vec


_QUOTIENT_CACHE: dict = {}


def groebner(ideal: CommIdeal) -> QuotientBasis:
    """Reduced Gröbner basis and quotient basis of ``ideal`` (deterministic)."""
    cache_key = (ideal.generators, ideal.order)
    hit = _QUOTIENT_CACHE.get(cache_key)
    if hit is not None:
        return hit
    order = ideal._order
    polys = [ideal._to_dict(p) for p in ideal.generators]
    gb = _buchberger(polys, order)
    lms = tuple(_lead(p, order) for p in gb)
    std = _standard_monomials(lms, ideal.nvars, order)
    out = QuotientBasis(
        ideal,
        tuple(_dict_to_poly(p, ideal.table) for p in gb),
        lms,
        std,
        tuple(gb),
    )
    _QUOTIENT_CACHE[cache_key] = out
    return out


def _standard_monomials(lms, nvars, order: _Order):
    if any(not any(lm) for lm in lms):
        return ()  # unit ideal
    for v in range(nvars):
        if not any(lm[v] and sum(lm) == lm[v] for lm in lms):
            return None
    start = (0,) * nvars
    seen = {start}
    queue = deque([start])
    while queue:
        m = queue.popleft()
        for v in range(nvars):
            nxt = m[:v] + (m[v] + 1,) + m[v + 1:]
            if nxt in seen or any(_divides(lm, nxt) for lm in lms):
                continue
            seen.add(nxt)
            queue.append(nxt)
    return tuple(sorted(seen, key=order.key))


def normal_form(f: GradedPoly, ideal: CommIdeal) -> GradedPoly:
    return groebner(ideal).normal_form(f)


def ideal_member(f: GradedPoly, ideal: CommIdeal) -> bool:
    """True iff ``f`` reduces to zero modulo the Gröbner basis of ``ideal``."""
    return not normal_form(f, ideal)


def mult_operator(ideal: CommIdeal, f: GradedPoly) -> list[list]:
    """Matrix of multiplication by ``f`` in the standard-monomial basis.

    Column ``j`` holds the coordinates of ``NF(f * b_j)``.

    Raises
    ------
    InfiniteQuotientError
        If the quotient is infinite-dimensional.
    """
    qb = groebner(ideal)
    if not qb.finite:
        raise InfiniteQuotientError("multiplication operator needs a finite quotient")
    table = ideal.table
    cols = []
    f = _dict_to_poly(_poly_to_dict(f, table), table)
    for b in qb.standard_monomials:
        cols.append(qb.coordinates(f * GradedPoly._raw(table, {b + (0,): Fraction(1)})))
    d = qb.dimension
    return [[cols[j][i] for j in range(d)] for i in range(d)]


# ---------------------------------------------------------------------------
# spectra


def _horner(coeffs: Sequence, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _deflate(coeffs: list, root) -> list:
    """Divide a polynomial (low-to-high coefficients) by ``x - root``."""
    n = len(coeffs) - 1
    out = [0] * n
    acc = 0
    for k in range(n, 0, -1):
        acc = acc * root + coeffs[k]
        out[k - 1] = acc
    return out


def _rational_candidates(coeffs: list) -> list[Fraction]:
    if len(coeffs) <= 1:
        return []
    roots = np.roots([float(c) for c in reversed(coeffs)])
    cands: list[Fraction] = []
    for r in sorted(roots, key=lambda z: (round(z.real, 6), round(z.imag, 6))):
        if abs(r.imag) > 1e-3 * max(1.0, abs(r)):
            continue
        for c in (Fraction(round(r.real)), Fraction(float(r.real)).limit_denominator(1000)):
            if c not in cands:
                cands.append(c)
    return cands


def _exact_roots(coeffs: list[Fraction]) -> tuple[dict[Fraction, int], list]:
    """Rational roots with multiplicity, and the remaining cofactor."""
    found: dict[Fraction, int] = {}
    progress = True
    while progress and len(coeffs) > 1:
        progress = False
        for c in _rational_candidates(coeffs):
            while len(coeffs) > 1 and _horner(coeffs, c) == 0:
                coeffs = _deflate(coeffs, c)
                found[c] = found.get(c, 0) + 1
                progress = True
    return found, coeffs


def _is_rational_matrix(mat) -> bool:
    return all(not isinstance(x, GaussianRational) for row in mat for x in row)


def alpha_spectrum(ideal: CommIdeal, f: GradedPoly | None = None) -> SpectrumReport:
    """Eigenvalues of multiplication by alpha (or ``f``) on the quotient.

    Rational eigenvalues are found exactly from the characteristic polynomial
    (with exact algebraic and geometric multiplicities); any remaining factor
    is solved numerically and its roots reported as floats, clustered with
    tolerance ``1e-10`` relative to the root scale.
    """
    table = ideal.table
    if f is None:
        f = table.var("alpha")
    mat = mult_operator(ideal, f)
    d = len(mat)
    entries: list[SpectrumEntry] = []
    cofactor: list = [1]
    if d and _is_rational_matrix(mat):
        cp = charpoly(mat)
        found, cofactor = _exact_roots(cp)
        eye = identity(d)
        for lam in sorted(found):
            shifted = [[mat[i][j] - lam * eye[i][j] for j in range(d)] for i in range(d)]
            entries.append(SpectrumEntry(lam, found[lam], d - rank(shifted), True))
    elif d:
        cofactor = None
    if d and (cofactor is None or len(cofactor) > 1):
        entries.extend(_numeric_entries(mat, cofactor))
    return SpectrumReport(
        "quotient",
        {"dimension": d},
        tuple(entries),
        "eigenvalues of multiplication by alpha on the quotient ring",
    )


def _numeric_entries(mat, cofactor) -> list[SpectrumEntry]:
    a = np.array([[to_complex(x) for x in row] for row in mat])
    if cofactor is None:
        roots = np.linalg.eigvals(a)
    else:
        roots = np.roots([to_complex(c) for c in reversed(cofactor)])
    scale = max(1.0, float(np.max(np.abs(roots)))) if len(roots) else 1.0
    clusters: list[list[complex]] = []
    for r in sorted(roots, key=lambda z: (z.real, z.imag)):
        for cl in clusters:
            if abs(cl[0] - r) <= max(NUMERIC_TOL * scale, 1e-6 * scale):
                cl.append(r)
                break
        else:
            clusters.append([r])
    out = []
    for cl in clusters:
        val = complex(np.mean(cl))
        sv = np.linalg.svd(a - val * np.eye(len(a)), compute_uv=False)
        geo = int(np.sum(sv <= 1e-8 * max(1.0, sv[0])))
        out.append(SpectrumEntry(val.real if abs(val.imag) < NUMERIC_TOL else val, len(cl), max(geo, 1), False))
    return out


# ---------------------------------------------------------------------------
# spectral polynomials and model ideals


def lambdas(count: int, signs: Sequence[int] | str | None = None) -> list[int]:
    """``lambda_1 .. lambda_count`` with ``|lambda_i| = 2i - 1``.

    ``signs`` is ``None``/``"alternating"`` for ``(-1)^{i+1}``, ``"positive"``,
    ``"negative"``, or an explicit sequence of +1/-1 of length ``count``.
    """
    if signs is None or signs == "alternating":
        sg = [1 if i % 2 == 1 else -1 for i in range(1, count + 1)]
    elif signs == "positive":
        sg = [1] * count
    elif signs == "negative":
        sg = [-1] * count
    elif isinstance(signs, str):
        raise GroebnerError(f"unknown sign convention {signs!r}")
    else:
        sg = [int(s) for s in signs]
        if len(sg) < count or any(s not in (1, -1) for s in sg):
            raise GroebnerError("explicit signs must be +1/-1 and cover every lambda")
        sg = sg[:count]
    return [s * (2 * i - 1) for i, s in zip(range(1, count + 1), sg)]


def _m_of(n: int) -> int:
    if n < 1 or n % 2 == 0:
        raise GroebnerError(f"n must be a positive odd integer, got {n}")
    return (n - 1) // 2


@dataclass(frozen=True)
class SpectralPolynomials:
    """``Q = prod_{i<=g+m} (alpha - lambda_i)``, ``P = Q^N``, ``H = Q^M``.

    ``N`` and ``M`` are free positive integers (default 2); ``g = -1`` gives
    ``P = Q = H = 1``.
    """

    g: int
    n: int
    signs: Sequence[int] | str | None = None
    N: int = 2
    M: int = 2
    table: GeneratorTable | None = None

    def __post_init__(self):
        _m_of(self.n)
        if self.g < -1:
            raise GroebnerError("g must be at least -1")
        if self.N < 1 or self.M < 1:
            raise GroebnerError("N and M must be positive")
        if self.table is None:
            object.__setattr__(self, "table", ring_table(self.n))

    @property
    def degree(self) -> int:
        return 0 if self.g < 0 else self.g + _m_of(self.n)

    @property
    def lambdas(self) -> list[int]:
        return lambdas(self.degree, self.signs)

    @cached_property
    def Q(self) -> GradedPoly:
        a = self.table.var("alpha")
        out = self.table.one()
        for lam in self.lambdas:
            out = out * (a - lam)
        return out

    @cached_property
    def P(self) -> GradedPoly:
        return self.Q ** self.N

    @cached_property
    def H(self) -> GradedPoly:
        return self.Q ** self.M


def _base_generators(table: GeneratorTable) -> list[GradedPoly]:
    gens = [table.var("beta") - 2]
    gens += [table.var(f"delta{i}") for i in range(1, table.n + 1)]
    gens.append(table.var("gamma"))
    return gens


def top_eigenspace_ideal(g: int, n: int, signs=None, lam=None) -> CommIdeal:
    """``(alpha - lambda_{g+m}, beta - 2, delta_1..delta_n, gamma)``."""
    table = ring_table(n)
    if lam is None:
        lam = SpectralPolynomials(g, n, signs).lambdas[-1]
    return CommIdeal(tuple([table.var("alpha") - lam] + _base_generators(table)))


def q_model_ideal(g: int, n: int, signs=None) -> CommIdeal:
    """``(beta - 2, gamma, delta_1..delta_n, Q_{g,n}(alpha))``."""
    sp = SpectralPolynomials(g, n, signs)
    return CommIdeal(tuple(_base_generators(sp.table) + [sp.Q]))


_DELTA_RE = re.compile(r"(?:delta|δ)\s*([0-9₀-₉]+)")
_SUBSCRIPT = str.maketrans("₀₁₂₃₄₅₆₇₈₉", "0123456789")


def parse_ideal_file(text: str, n: int | None = None, order: str = "grevlex") -> CommIdeal:
    """Ideal from text: one generator per line, ``#`` starts a comment.

    ``n`` defaults to the largest delta index mentioned.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise GroebnerError("ideal file has no generators")
    if n is None:
        idx = [int(m.translate(_SUBSCRIPT)) for line in lines for m in _DELTA_RE.findall(line)]
        n = max(idx, default=0)
    table = ring_table(n)
    try:
        gens = tuple(parse_poly(line, table) for line in lines)
    except AlgebraError as exc:
        raise GroebnerError(str(exc)) from None
    return CommIdeal(tuple(g for g in gens if g) or gens, order)
