"""Eigenvalue reports shared by the quotient-ring and table modules."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .scalars import GaussianRational, format_scalar

__all__ = ["SpectrumEntry", "SpectrumReport", "UNKNOWN"]

#: Marker for multiplicities that are not determined.
UNKNOWN = "unknown"


def _json_value(value):
    if isinstance(value, (Fraction, GaussianRational, int)):
        return format_scalar(value)
    if isinstance(value, complex):
        if value.imag == 0:
            return float(value.real)
        return [float(value.real), float(value.imag)]
    return float(value)


@dataclass(frozen=True)
class SpectrumEntry:
    """One eigenvalue.

    ``alg_mult`` / ``geo_mult`` are integers or :data:`UNKNOWN`; ``exact``
    says whether ``value`` is an exact scalar or a floating approximation.
    """

    value: object
    alg_mult: int | str = UNKNOWN
    geo_mult: int | str = UNKNOWN
    exact: bool = True

    def to_json(self) -> dict:
        return {"value": _json_value(self.value), "alg_mult": self.alg_mult,
                "geo_mult": self.geo_mult, "exact": self.exact}


@dataclass(frozen=True)
class SpectrumReport:
    """Eigenvalue multiset with multiplicities and a justification string.

    Parameters
    ----------
    space : str
        ``"V"``, ``"U"``, ``"W2"``, ``"AHI"`` for the Floer tables or
        ``"quotient"`` for a computed multiplication operator.
    params : dict
        Parameters such as ``{"g": 1, "n": 3}``.
    entries : tuple of SpectrumEntry
        Sorted by value where values are real.
    citation : str
        Statement the entries rest on.
    """

    space: str
    params: dict
    entries: tuple[SpectrumEntry, ...]
    citation: str = ""
    notes: dict = field(default_factory=dict)

    @property
    def values(self) -> list:
        return [e.value for e in self.entries]

    def multiplicity(self, value) -> int | str | None:
        for e in self.entries:
            if e.value == value:
                return e.alg_mult
        return None

    def to_json(self) -> dict:
        out = {"space": self.space, **self.params,
               "spectrum": [e.to_json() for e in self.entries],
               "paper_ref": self.citation}
        out.update(self.notes)
        return out
