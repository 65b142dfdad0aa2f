"""Exact Gaussian-rational scalars.

Coefficients are kept as :class:`fractions.Fraction` whenever the imaginary
part vanishes; :class:`GaussianRational` only appears for genuinely complex
values.  Use :func:`scalar` to normalise any supported input.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["GaussianRational", "scalar", "to_complex", "format_scalar", "parse_scalar"]


class GaussianRational:
    """``re + im*i`` with rational parts.  Immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, key, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def _parts(other):
        if isinstance(other, GaussianRational):
            return other.re, other.im
        if isinstance(other, (int, Rational)):
            return Fraction(other), Fraction(0)
        return None

    def __add__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return scalar(GaussianRational(self.re + p[0], self.im + p[1]))

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return scalar(GaussianRational(self.re - p[0], self.im - p[1]))

    def __rsub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return scalar(GaussianRational(p[0] - self.re, p[1] - self.im))

    def __mul__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        a, b = self.re, self.im
        c, d = p
        return scalar(GaussianRational(a * c - b * d, a * d + b * c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        c, d = p
        den = c * c + d * d
        if den == 0:
            raise ZeroDivisionError("division by zero")
        a, b = self.re, self.im
        return scalar(GaussianRational((a * c + b * d) / den, (b * c - a * d) / den))

    def __rtruediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return GaussianRational(*p) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return 1 / (self ** (-k))
        out = Fraction(1)
        base = self
        while k:
            if k & 1:
                out = base * out
            base = base * base
            k >>= 1
        return out

    def conjugate(self):
        return scalar(GaussianRational(self.re, -self.im))

    def __eq__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return self.re == p[0] and self.im == p[1]

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        return format_scalar(self)


def scalar(value):
    """Normalise ``value`` to a Fraction, or a GaussianRational if complex."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, GaussianRational):
        return value.re if value.im == 0 else value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, complex):
        re_, im_ = Fraction(value.real), Fraction(value.imag)
        return re_ if im_ == 0 else GaussianRational(re_, im_)
    if isinstance(value, str):
        return parse_scalar(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def to_complex(value) -> complex:
    if isinstance(value, GaussianRational):
        return complex(value)
    return complex(float(value), 0.0)


def format_scalar(value) -> str:
    value = scalar(value)
    if isinstance(value, Fraction):
        return str(value)
    re_, im_ = value.re, value.im
    im_txt = "i" if im_ == 1 else "-i" if im_ == -1 else f"{im_}i"
    if re_ == 0:
        return im_txt
    sign = "" if im_txt.startswith("-") else "+"
    return f"{re_}{sign}{im_txt}"


def parse_scalar(text: str):
    """Inverse of :func:`format_scalar`: ``"3/2"``, ``"-2i"``, ``"1/2+3i"``."""
    text = text.strip()
    try:
        if not text.endswith("i"):
            return Fraction(text)
        body = text[:-1]
        cut = max(body.rfind("+"), body.rfind("-"))
        if cut > 0:
            re_txt, im_txt = body[:cut], body[cut:]
        else:
            re_txt, im_txt = "0", body
        if im_txt in ("", "+"):
            im_ = Fraction(1)
        elif im_txt == "-":
            im_ = Fraction(-1)
        else:
            im_ = Fraction(im_txt)
        return scalar(GaussianRational(Fraction(re_txt), im_))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not an exact scalar: {text!r}") from None
