"""Graded-commutative polynomials over alpha, beta, gamma, delta_i, psi_j, eps.

A :class:`GradedPoly` is a sparse map from exponent tuples to exact scalars.
Generators are ordered::

    alpha < beta < gamma < delta_1 < ... < delta_n < (extras) < psi_1 < ... < psi_2g < eps

The psi's are odd (exponent 0 or 1, anticommuting); every other generator is
even.  ``eps`` is stored with a mod-2 exponent (``eps**2 == 1``) and carries a
nominal degree 2 that is ignored by :meth:`GradedPoly.homogeneous_degree`.

``gamma`` is an independent even generator.  Callers that want the full
algebra, where gamma is the sum of ``psi_j psi_{j+g}``, call
:meth:`GradedPoly.expand_gamma` explicitly.

Text format: terms joined by ``" + "``, each ``"c * gen^e * ..."``::

    >>> t = GeneratorTable(1, 3)
    >>> p = t.var("alpha") ** 3 - 2 * t.var("alpha") * t.var("beta") - t.var("gamma")
    >>> p.to_text()
    '1 * alpha^3 + -2 * alpha * beta + -1 * gamma'
    >>> parse_poly(p.to_text(), t) == p
    True
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping

from .scalars import format_scalar, parse_scalar, scalar, to_complex

__all__ = [
    "AlgebraError",
    "GeneratorMismatchError",
    "OddEvaluationError",
    "MissingAssignmentError",
    "GeneratorTable",
    "GradedPoly",
    "mul",
    "flip",
    "eval_numeric",
    "parse_poly",
]


class AlgebraError(ValueError):
    pass


class GeneratorMismatchError(AlgebraError):
    pass


class OddEvaluationError(AlgebraError):
    pass


class MissingAssignmentError(AlgebraError):
    pass


_GREEK = {"α": "alpha", "β": "beta", "γ": "gamma", "δ": "delta", "ψ": "psi", "ε": "eps"}
_SUB = str.maketrans("₀₁₂₃₄₅₆₇₈₉", "0123456789")
_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
_SUBW = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


@dataclass(frozen=True)
class GeneratorTable:
    """Generators of the algebra for genus ``g`` and ``n`` marked points.

    ``extras`` adds further even generators as ``(name, degree)`` pairs; the
    Chern-class calculus uses this for the Jacobian classes ``A`` and ``B``.
    """

    g: int
    n: int
    extras: tuple[tuple[str, int], ...] = field(default=())

    def __post_init__(self):
        if self.g < 0 or self.n < 0:
            raise ValueError("g and n must be nonnegative")
        object.__setattr__(self, "extras", tuple((str(a), int(b)) for a, b in self.extras))

    @cached_property
    def names(self) -> tuple[str, ...]:
        out = ["alpha", "beta", "gamma"]
        out += [f"delta{i}" for i in range(1, self.n + 1)]
        out += [name for name, _ in self.extras]
        out += [f"psi{j}" for j in range(1, 2 * self.g + 1)]
        out.append("eps")
        return tuple(out)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        out = [2, 4, 6] + [2] * self.n + [d for _, d in self.extras]
        out += [3] * (2 * self.g) + [2]
        return tuple(out)

    @cached_property
    def index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    @cached_property
    def odd_positions(self) -> tuple[int, ...]:
        start = 3 + self.n + len(self.extras)
        return tuple(range(start, start + 2 * self.g))

    @cached_property
    def eps_index(self) -> int:
        return len(self.names) - 1

    @property
    def nvars(self) -> int:
        return len(self.names)

    def is_odd(self, i: int) -> bool:
        return i in self.odd_positions

    def resolve(self, name) -> int:
        """Index of a generator given as an index, ascii name or Greek name."""
        if isinstance(name, int):
            if not 0 <= name < self.nvars:
                raise AlgebraError(f"generator index {name} out of range")
            return name
        key = name.strip().translate(_SUB)
        if key and key[0] in _GREEK:
            key = _GREEK[key[0]] + key[1:]
        if key not in self.index:
            raise AlgebraError(f"unknown generator {name!r} for g={self.g}, n={self.n}")
        return self.index[key]

    def zero_mono(self) -> tuple[int, ...]:
        return (0,) * self.nvars

    def var(self, name) -> "GradedPoly":
        i = self.resolve(name)
        mono = [0] * self.nvars
        mono[i] = 1
        return GradedPoly._raw(self, {tuple(mono): Fraction(1)})

    def const(self, c) -> "GradedPoly":
        c = scalar(c)
        return GradedPoly._raw(self, {self.zero_mono(): c} if c else {})

    def zero(self) -> "GradedPoly":
        return GradedPoly._raw(self, {})

    def one(self) -> "GradedPoly":
        return self.const(1)

    def gamma_expanded(self) -> "GradedPoly":
        """``sum_j psi_j psi_{j+g}`` as an element of the full algebra."""
        out = self.zero()
        for j in range(1, self.g + 1):
            out = out + self.var(f"psi{j}") * self.var(f"psi{j + self.g}")
        return out


def _mono_product(a, b, odd, eps):
    """Product of two canonical monomials: (sign, monomial) or (0, None)."""
    sign = 1
    if odd:
        count = 0
        for p in odd:
            if b[p]:
                if a[p]:
                    return 0, None
                for q in odd:
                    if q > p and a[q]:
                        count += 1
        if count & 1:
            sign = -1
    mono = [x + y for x, y in zip(a, b)]
    mono[eps] &= 1
    return sign, tuple(mono)


class GradedPoly:
    """Immutable element of the graded-commutative algebra of a table."""

    __slots__ = ("table", "terms", "_hash")

    def __init__(self, table: GeneratorTable, terms: Mapping[tuple[int, ...], object] | None = None):
        clean = {}
        odd = table.odd_positions
        for mono, c in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != table.nvars:
                raise AlgebraError("monomial length does not match generator table")
            if any(e < 0 for e in mono) or any(mono[p] > 1 for p in odd):
                raise AlgebraError(f"invalid exponents {mono}")
            mono = mono[:-1] + (mono[-1] & 1,)
            c = scalar(c)
            if c:
                clean[mono] = clean.get(mono, 0) + c
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "terms", {m: c for m, c in clean.items() if c})
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, table, terms):
        self = object.__new__(cls)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_hash", None)
        return self

    def __setattr__(self, key, value):
        raise AttributeError("GradedPoly is immutable")

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "GradedPoly":
        if isinstance(other, GradedPoly):
            if other.table != self.table:
                raise GeneratorMismatchError("polynomials live over different generator tables")
            return other
        return self.table.const(other)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return GradedPoly._raw(self.table, out)

    __radd__ = __add__

    def __neg__(self):
        return GradedPoly._raw(self.table, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "GradedPoly":
        c = scalar(c)
        if not c:
            return self.table.zero()
        return GradedPoly._raw(self.table, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, GradedPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        if other.table != self.table:
            raise GeneratorMismatchError("polynomials live over different generator tables")
        table = self.table
        odd = table.odd_positions if (self.has_odd and other.has_odd) else ()
        eps = table.eps_index
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                sign, mono = _mono_product(m1, m2, odd, eps)
                if not sign:
                    continue
                v = out.get(mono, 0) + (c1 * c2 if sign > 0 else -(c1 * c2))
                if v:
                    out[mono] = v
                else:
                    del out[mono]
        return GradedPoly._raw(table, out)

    def __rmul__(self, other):
        if isinstance(other, GradedPoly):
            return other.__mul__(self)
        return self.scale(other)

    def __truediv__(self, other):
        if isinstance(other, GradedPoly):
            return NotImplemented
        return self.scale(1 / scalar(other))

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise AlgebraError("only nonnegative integer powers are supported")
        out = self.table.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, GradedPoly):
            return self.table == other.table and self.terms == other.terms
        try:
            return self.terms == self.table.const(other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.table, frozenset(self.terms.items()))))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- structure --------------------------------------------------------

    @property
    def has_odd(self) -> bool:
        odd = self.table.odd_positions
        return bool(odd) and any(m[p] for m in self.terms for p in odd)

    def mono_degree(self, mono) -> int:
        d = self.table.degrees
        return sum(e * d[i] for i, e in enumerate(mono[:-1]))

    def mono_parity(self, mono) -> int:
        return sum(mono[p] for p in self.table.odd_positions) & 1

    def homogeneous_degree(self) -> int | None:
        """Common degree of all terms (eps excluded); None if mixed or zero."""
        degs = {self.mono_degree(m) for m in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def parity(self) -> int | None:
        pars = {self.mono_parity(m) for m in self.terms}
        if not pars:
            return 0
        return pars.pop() if len(pars) == 1 else None

    def coeff(self, exponents: Mapping | tuple = ()):
        """Coefficient of a monomial given as ``{"alpha": 3}`` or a tuple."""
        if isinstance(exponents, tuple) and len(exponents) == self.table.nvars:
            mono = exponents
        else:
            mono = [0] * self.table.nvars
            for name, e in dict(exponents).items():
                mono[self.table.resolve(name)] = int(e)
            mono = tuple(mono)
        return self.terms.get(mono, Fraction(0))

    def variables(self) -> set[str]:
        names = self.table.names
        return {names[i] for m in self.terms for i, e in enumerate(m) if e}

    def sorted_terms(self):
        deg = self.mono_degree
        return sorted(self.terms.items(), key=lambda mc: (-deg(mc[0]), tuple(-e for e in mc[0])))

    def leading_alpha_coeff(self, power: int):
        mono = [0] * self.table.nvars
        mono[0] = power
        return self.terms.get(tuple(mono), Fraction(0))

    # -- substitutions ----------------------------------------------------

    def substitute(self, mapping: Mapping) -> "GradedPoly":
        """Ring endomorphism sending even generators to even polynomials.

        Generators missing from ``mapping`` are fixed.  Odd generators may not
        be substituted.
        """
        table = self.table
        images: dict[int, GradedPoly] = {}
        for key, img in mapping.items():
            i = table.resolve(key)
            if table.is_odd(i) or i == table.eps_index:
                raise AlgebraError("only even non-eps generators can be substituted")
            img = self._coerce(img)
            if img.parity() != 0:
                raise AlgebraError("substitution images must be even")
            images[i] = img
        powers: dict[tuple[int, int], GradedPoly] = {}

        def power(i, e):
            key = (i, e)
            if key not in powers:
                powers[key] = images[i] ** e
            return powers[key]

        out = table.zero()
        for mono, c in self.terms.items():
            rest = list(mono)
            factor = None
            for i in sorted(images):
                e = mono[i]
                if e:
                    rest[i] = 0
                    factor = power(i, e) if factor is None else factor * power(i, e)
            term = GradedPoly._raw(table, {tuple(rest): c})
            out = out + (term if factor is None else factor * term)
        return out

    def expand_gamma(self) -> "GradedPoly":
        """Replace the gamma generator by ``sum_j psi_j psi_{j+g}``."""
        return self.substitute({"gamma": self.table.gamma_expanded()})

    def flip(self, subset: Iterable[int]) -> "GradedPoly":
        return flip(subset, self)

    def eval_numeric(self, assignment: Mapping) -> complex:
        return eval_numeric(self, assignment)

    # -- text -------------------------------------------------------------

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        names = self.table.names
        parts = []
        for mono, c in self.sorted_terms():
            factors = [format_scalar(c)]
            for i, e in enumerate(mono):
                if e:
                    factors.append(names[i] if e == 1 else f"{names[i]}^{e}")
            parts.append(" * ".join(factors))
        return " + ".join(parts)

    def pretty(self) -> str:
        """Unicode rendering, e.g. ``α³ − 2αβ − γ``."""
        if not self.terms:
            return "0"
        out = []
        for k, (mono, c) in enumerate(self.sorted_terms()):
            body = "".join(_pretty_gen(self.table.names[i], e) for i, e in enumerate(mono) if e)
            neg = isinstance(c, Fraction) and c < 0
            mag = -c if neg else c
            if mag == 1 and body:
                coef = ""
            elif isinstance(mag, Fraction) and mag.denominator == 1:
                coef = str(mag)
            else:
                coef = f"({format_scalar(mag)})"
            text = coef + body if (coef or body) else "1"
            if k == 0:
                out.append(("−" if neg else "") + text)
            else:
                out.append((" − " if neg else " + ") + text)
        return "".join(out)

    def __repr__(self):
        return f"GradedPoly({self.to_text()!r})"

    def __str__(self):
        return self.pretty()


def _pretty_gen(name: str, e: int) -> str:
    for ascii_name, greek in (("alpha", "α"), ("beta", "β"), ("gamma", "γ"), ("delta", "δ"),
                              ("psi", "ψ"), ("eps", "ε")):
        if name.startswith(ascii_name):
            name = greek + name[len(ascii_name):].translate(_SUBW)
            break
    return name + (str(e).translate(_SUP) if e > 1 else "")


def mul(a: GradedPoly, b: GradedPoly) -> GradedPoly:
    """Graded-commutative product (Koszul signs, psi^2 = 0, eps^2 = 1)."""
    if not isinstance(a, GradedPoly) or not isinstance(b, GradedPoly):
        raise TypeError("mul expects two GradedPoly values")
    return a * b


def flip(subset: Iterable[int], p: GradedPoly) -> GradedPoly:
    """Flip symmetry: delta_i -> -delta_i for i in S, alpha -> alpha + sum delta_i."""
    table = p.table
    subset = sorted(set(subset))
    for i in subset:
        if not 1 <= i <= table.n:
            raise AlgebraError(f"flip index {i} out of range 1..{table.n}")
    if not subset:
        return p
    mapping = {f"delta{i}": -table.var(f"delta{i}") for i in subset}
    mapping["alpha"] = table.var("alpha") + sum((table.var(f"delta{i}") for i in subset), table.zero())
    return p.substitute(mapping)


def eval_numeric(p: GradedPoly, assignment: Mapping) -> complex:
    """Evaluate an even polynomial at complex values of its generators."""
    table = p.table
    values: dict[int, complex] = {}
    for key, v in assignment.items():
        values[table.resolve(key)] = complex(v)
    total = 0j
    for mono, c in p.terms.items():
        term = to_complex(c)
        for i, e in enumerate(mono):
            if not e:
                continue
            if table.is_odd(i):
                raise OddEvaluationError(f"cannot evaluate odd generator {table.names[i]}")
            if i not in values:
                raise MissingAssignmentError(f"no value assigned to {table.names[i]}")
            term *= values[i] ** e
        total += term
    return total


_FACTOR_RE = re.compile(r"^([A-Za-zαβγδψε][A-Za-z0-9₀-₉]*)(?:\^(\d+))?$")


def parse_poly(text: str, table: GeneratorTable) -> GradedPoly:
    """Parse the text format; also accepts ``-`` separators and Greek names."""
    text = text.strip()
    if not text:
        raise AlgebraError("empty polynomial text")
    text = re.sub(r"\s+-\s+", " + -", text)
    out = table.zero()
    for raw in text.split(" + "):
        raw = raw.strip()
        if not raw:
            raise AlgebraError(f"malformed polynomial text: {text!r}")
        term = table.one()
        factors = [f.strip() for f in raw.split("*")]
        if factors[0].startswith("-") and not _is_scalar(factors[0]):
            term = -term
            factors[0] = factors[0][1:].strip()
        for f in factors:
            if not f:
                raise AlgebraError(f"malformed term {raw!r}")
            if _is_scalar(f):
                term = term.scale(parse_scalar(f))
                continue
            m = _FACTOR_RE.match(f)
            if not m:
                raise AlgebraError(f"cannot parse factor {f!r}")
            e = int(m.group(2)) if m.group(2) else 1
            term = term * table.var(m.group(1)) ** e
        out = out + term
    return out


def _is_scalar(text: str) -> bool:
    try:
        parse_scalar(text)
    except ValueError:
        return False
    return True
