"""Closed-form tables: surface-operator spectra, AHI dimensions, genus bounds.

Nothing here is computed from a chain complex; each function evaluates a
closed formula and labels its rows with the statement they come from.  Only
what the formulas determine is reported: interior eigenvalue multiplicities
are :data:`~floerkit.reports.UNKNOWN`.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .reports import UNKNOWN, SpectrumEntry, SpectrumReport

__all__ = [
    "TableError",
    "SPACES",
    "spectrum",
    "ahi_product",
    "convolve",
    "MeridionalSurface",
    "BoundReport",
    "thurston_bound",
    "dim_r",
    "mb_bound",
    "b2_data_point",
]

SPACES = ("V", "U", "W2")

_CITE = {
    "V": "eigenvalues of the flip-invariant surface operator on V_{g,n} (mu(pt)=2 part) are "
         "-(2g+n-2), ..., 2g+n-2 in steps of 2, half from V+ and half from V-; "
         "extreme generalized eigenspaces are 1-dimensional when n >= 3",
    "U": "eigenvalues of the flip-invariant surface operator on U_{g,n} (n >= 2) are "
         "-(2g+n-2), ..., 2g+n-2 in steps of 2; extreme generalized eigenspaces are 1-dimensional",
    "W2": "eigenvalues of the flip-invariant surface operator on the mu(pt)=2 part of W_{g,n} (g >= 1) are "
          "-(2g+n-2), ..., 2g+n-2 in steps of 2; extreme generalized eigenspaces are 1-dimensional",
    "AHI": "AHI of the n-strand product link is the n-th tensor power of the 1-strand case, "
           "which is 1-dimensional in f-degrees +-1 and zero elsewhere",
    "bound": "for a meridional surface minimising 2g+n: AHI(L, i) = 0 for |i| > 2g+n and "
             "AHI(L, +-(2g+n)) != 0",
    "dim_r": "dim R_{g,n} = 6g + 2n - 6",
    "mb": "Morse-Bott bound: dim V_{g,n} <= 2 dim H_*(R_{g,n}; C)",
    "b2": "b_2(R_{g,n+2}) = n + 3 unless (g, n) = (0, 1)",
}


class TableError(ValueError):
    """Parameters outside the range where a table entry is defined."""


def _check_space(space: str, g: int, n: int) -> None:
    if g < 0 or n < 0:
        raise TableError("g and n must be nonnegative")
    if space == "V":
        if n % 2 == 0:
            raise TableError("V_{g,n} needs n odd")
        if (g, n) == (0, 1):
            raise TableError("(g,n)=(0,1) is excluded: V_{0,1} = V'_{0,1} = 0")
    elif space == "U":
        if n < 2:
            raise TableError("U_{g,n} needs n >= 2")
    elif space == "W2":
        if g < 1:
            raise TableError("W_{g,n} needs g >= 1")
    else:
        raise TableError(f"unknown space {space!r}; expected one of {', '.join(SPACES)}")


def spectrum(space: str, g: int, n: int) -> SpectrumReport:
    """Eigenvalues of the flip-invariant surface operator on a Floer group.

    Parameters
    ----------
    space : {"V", "U", "W2"}
    g, n : int
        Genus and number of marked points.

    Returns
    -------
    SpectrumReport
        The progression ``-(2g+n-2), ..., 2g+n-2`` (step 2).  The two
        extremes have multiplicity 1 (for V only when ``n >= 3``); all other
        multiplicities are unknown.

    Raises
    ------
    TableError
        If ``(space, g, n)`` is outside the stated range.

    Examples
    --------
    >>> [e.value for e in spectrum("U", 1, 3).entries]
    [-3, -1, 1, 3]
    """
    _check_space(space, g, n)
    top = 2 * g + n - 2
    values = list(range(-top, top + 1, 2))
    pinned = space != "V" or n >= 3
    entries = []
    for v in values:
        mult = 1 if (pinned and abs(v) == top) else UNKNOWN
        entries.append(SpectrumEntry(v, mult, mult, True))
    notes = {"top": top, "size": len(values)}
    if space == "V":
        notes["split"] = "half of the eigenvalues from V+, half from V-"
    return SpectrumReport(space, {"g": g, "n": n}, tuple(entries), _CITE[space], notes)


def convolve(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    """Graded dimension of a tensor product: ``(a * b)[i] = sum_{j+k=i} a[j] b[k]``."""
    out: dict[int, int] = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in sorted(out.items()) if v}


def ahi_product(n: int) -> dict[int, int]:
    """Graded dimensions of AHI of the n-strand product link over f-degrees.

    ``C(n, (n+i)/2)`` at degree ``i`` when ``n + i`` is even, zero otherwise
    (zero entries omitted).

    Examples
    --------
    >>> ahi_product(2)
    {-2: 1, 0: 2, 2: 1}
    """
    if n < 1:
        raise TableError("n must be at least 1")
    return {i: comb(n, (n + i) // 2) for i in range(-n, n + 1) if (n + i) % 2 == 0}


@dataclass(frozen=True)
class MeridionalSurface:
    """Meridional surface of genus ``g`` meeting the link in ``n`` points."""

    g: int
    n: int

    def __post_init__(self):
        if self.g < 0 or self.n < 0:
            raise TableError("g and n must be nonnegative")

    @property
    def complexity(self) -> int:
        return 2 * self.g + self.n


@dataclass(frozen=True)
class BoundReport:
    """Minimal ``2g+n`` and what it implies for AHI."""

    bound: int
    minimizer: MeridionalSurface
    citation: str = _CITE["bound"]

    def vanishes(self, i: int) -> bool:
        """``True`` when AHI is guaranteed to vanish at f-degree ``i``."""
        return abs(i) > self.bound

    def to_json(self) -> dict:
        return {
            "bound": self.bound,
            "minimizer": {"g": self.minimizer.g, "n": self.minimizer.n},
            "vanishing": f"|i| > {self.bound}",
            "nonvanishing": [-self.bound, self.bound] if self.bound else [0],
            "paper_ref": self.citation,
        }


def thurston_bound(surfaces: Iterable[MeridionalSurface | Sequence[int]]) -> BoundReport:
    """Minimum of ``2g+n`` over a nonempty list of meridional surfaces."""
    items = [s if isinstance(s, MeridionalSurface) else MeridionalSurface(*s) for s in surfaces]
    if not items:
        raise TableError("need at least one surface")
    best = min(items, key=lambda s: s.complexity)
    return BoundReport(best.complexity, best)


def dim_r(g: int, n: int) -> int:
    """Dimension ``6g + 2n - 6`` of the representation variety (``n >= 1``)."""
    if n < 1 or g < 0:
        raise TableError("dim_r needs g >= 0 and n >= 1")
    return 6 * g + 2 * n - 6


def mb_bound(g: int, n: int, betti_total: int) -> int:
    """Upper bound ``2 * betti_total`` on ``dim V_{g,n}``; the Betti sum is caller-supplied."""
    if n < 1 or g < 0:
        raise TableError("mb_bound needs g >= 0 and n >= 1")
    if betti_total < 0:
        raise TableError("betti_total must be nonnegative")
    return 2 * betti_total


def b2_data_point(g: int, n: int) -> int | None:
    """Recorded value ``b_2(R_{g,n+2}) = n + 3``; ``None`` for the exception ``(0, 1)``."""
    if (g, n) == (0, 1):
        return None
    return n + 3


def citation(key: str) -> str:
    return _CITE[key]
