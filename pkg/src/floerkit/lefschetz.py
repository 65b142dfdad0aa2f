"""Symplectic exterior algebra of W = C^{2g} and its primitive decomposition.

Basis vectors are ``e_1 .. e_{2g}`` with ``omega(e_j, e_{j+g}) = 1``.  An
element is a map from strictly increasing index tuples to exact scalars.
``gamma_omega = sum_j e_j ^ e_{j+g}`` is the dual bivector of ``omega``.

Every element splits uniquely as ``sum_{k,j} gamma_omega^j ^ p_{k,j}`` with
``p_{k,j}`` primitive of degree ``k <= g`` and ``j <= g - k``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Mapping

from .linalg import inverse, matvec, nullspace
from .scalars import scalar

__all__ = [
    "WedgeElement",
    "PrimitiveDecomposition",
    "contract",
    "gamma_omega",
    "primitive_basis",
    "primitive_dimension",
    "decompose",
    "random_element",
]


def _merge_sign(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    inversions = sum(1 for x in a for y in b if x > y)
    return -1 if inversions & 1 else 1


class WedgeElement:
    """Immutable element of the exterior algebra of C^{2g}."""

    __slots__ = ("g", "coeffs")

    def __init__(self, g: int, coeffs: Mapping[tuple[int, ...], object] | None = None):
        clean = {}
        for idx, c in (coeffs or {}).items():
            idx = tuple(idx)
            if any(b <= a for a, b in zip(idx, idx[1:])):
                raise ValueError(f"indices must be strictly increasing: {idx}")
            if idx and not (1 <= idx[0] and idx[-1] <= 2 * g):
                raise ValueError(f"index out of range 1..{2 * g}: {idx}")
            c = scalar(c)
            if c:
                clean[idx] = clean.get(idx, 0) + c
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "coeffs", {k: v for k, v in clean.items() if v})

    @classmethod
    def _raw(cls, g, coeffs):
        self = object.__new__(cls)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "coeffs", coeffs)
        return self

    def __setattr__(self, key, value):
        raise AttributeError("WedgeElement is immutable")

    @classmethod
    def basis(cls, g: int, *indices: int) -> "WedgeElement":
        """``e_{i1} ^ e_{i2} ^ ...`` for arbitrary (not necessarily sorted) indices."""
        if len(set(indices)) < len(indices):
            return cls(g)
        order = sorted(range(len(indices)), key=lambda i: indices[i])
        inversions = sum(1 for i in range(len(order)) for j in range(i + 1, len(order)) if order[i] > order[j])
        return cls(g, {tuple(sorted(indices)): -1 if inversions & 1 else 1})

    @classmethod
    def scalar_unit(cls, g: int, c=1) -> "WedgeElement":
        return cls(g, {(): c})

    def _check(self, other):
        if not isinstance(other, WedgeElement):
            raise TypeError("expected a WedgeElement")
        if other.g != self.g:
            raise ValueError("wedge elements of different genus")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            nv = out.get(k, 0) + v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        return WedgeElement._raw(self.g, out)

    def __neg__(self):
        return WedgeElement._raw(self.g, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "WedgeElement":
        c = scalar(c)
        if not c:
            return WedgeElement(self.g)
        return WedgeElement._raw(self.g, {k: v * c for k, v in self.coeffs.items()})

    def wedge(self, other: "WedgeElement") -> "WedgeElement":
        self._check(other)
        out: dict = {}
        for a, ca in self.coeffs.items():
            sa = set(a)
            for b, cb in other.coeffs.items():
                if sa.intersection(b):
                    continue
                key = tuple(sorted(a + b))
                v = ca * cb if _merge_sign(a, b) > 0 else -(ca * cb)
                nv = out.get(key, 0) + v
                if nv:
                    out[key] = nv
                else:
                    out.pop(key, None)
        return WedgeElement._raw(self.g, out)

    def __mul__(self, other):
        if isinstance(other, WedgeElement):
            return self.wedge(other)
        return self.scale(other)

    __rmul__ = scale

    def __pow__(self, k: int) -> "WedgeElement":
        out = WedgeElement.scalar_unit(self.g)
        for _ in range(k):
            out = out.wedge(self)
        return out

    def __eq__(self, other):
        if not isinstance(other, WedgeElement):
            return NotImplemented
        return self.g == other.g and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.g, frozenset(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def degrees(self) -> set[int]:
        return {len(k) for k in self.coeffs}

    def part(self, degree: int) -> "WedgeElement":
        return WedgeElement._raw(self.g, {k: v for k, v in self.coeffs.items() if len(k) == degree})

    def to_lists(self) -> list[tuple[list[int], str]]:
        """Serialisable form: ``[(index list, coefficient text), ...]``."""
        return [(list(k), str(v)) for k, v in sorted(self.coeffs.items(), key=lambda kv: (len(kv[0]), kv[0]))]

    def __repr__(self):
        if not self.coeffs:
            return f"WedgeElement(g={self.g}, 0)"
        body = " + ".join(
            f"{v}*e{'^e'.join(map(str, k))}" if k else str(v)
            for k, v in sorted(self.coeffs.items(), key=lambda kv: (len(kv[0]), kv[0]))
        )
        return f"WedgeElement(g={self.g}, {body})"


def gamma_omega(g: int) -> WedgeElement:
    return WedgeElement(g, {(j, j + g): 1 for j in range(1, g + 1)})


def _contract_basis(idx: tuple[int, ...], g: int):
    """Yield (sign, remaining indices) for contraction of one basis monomial."""
    pos = {v: p for p, v in enumerate(idx)}
    for a, i in enumerate(idx):
        if i > g:
            break
        b = pos.get(i + g)
        if b is None:
            continue
        rest = idx[:a] + idx[a + 1:b] + idx[b + 1:]
        # move e_i to the front (a swaps), then e_{i+g} next to it (b - 1 swaps)
        yield (-1 if (a + b - 1) & 1 else 1), rest


def contract(x: WedgeElement) -> WedgeElement:
    """Contraction with omega; lowers degree by two, kills degrees 0 and 1."""
    out: dict = {}
    for idx, c in x.coeffs.items():
        for sign, rest in _contract_basis(idx, x.g):
            nv = out.get(rest, 0) + (c if sign > 0 else -c)
            if nv:
                out[rest] = nv
            else:
                out.pop(rest, None)
    return WedgeElement._raw(x.g, out)


@lru_cache(maxsize=None)
def _basis(g: int, k: int) -> tuple[tuple[int, ...], ...]:
    return tuple(combinations(range(1, 2 * g + 1), k))


@lru_cache(maxsize=None)
def _primitive_vectors(g: int, k: int) -> tuple[tuple[tuple[tuple[int, ...], Fraction], ...], ...]:
    cols = _basis(g, k)
    if k < 2:
        return tuple(((idx, Fraction(1)),) for idx in cols)
    row_index = {idx: r for r, idx in enumerate(_basis(g, k - 2))}
    rows: list[dict[int, Fraction]] = [dict() for _ in row_index]
    for col, idx in enumerate(cols):
        for sign, rest in _contract_basis(idx, g):
            r = rows[row_index[rest]]
            r[col] = r.get(col, Fraction(0)) + sign
    vectors = nullspace(rows, len(cols))
    return tuple(tuple((cols[j], v) for j, v in sorted(vec.items())) for vec in vectors)


def primitive_basis(g: int, k: int) -> list[WedgeElement]:
    """Basis of the kernel of contraction on degree-``k`` elements, ``0 <= k <= g``."""
    if not 0 <= k <= g:
        raise ValueError(f"primitive degree k={k} outside 0..{g}")
    return [WedgeElement._raw(g, dict(vec)) for vec in _primitive_vectors(g, k)]


def primitive_dimension(g: int, k: int) -> int:
    """``C(2g, k) - C(2g, k-2)``, the expected size of :func:`primitive_basis`."""
    return comb(2 * g, k) - (comb(2 * g, k - 2) if k >= 2 else 0)


@dataclass(frozen=True)
class PrimitiveDecomposition:
    """``components[k][j]`` is the primitive degree-k part multiplying gamma^j."""

    g: int
    components: dict[int, list[WedgeElement]]

    def reconstruct(self) -> WedgeElement:
        gam = gamma_omega(self.g)
        out = WedgeElement(self.g)
        for k, parts in self.components.items():
            for j, p in enumerate(parts):
                if p:
                    out = out + (gam ** j).wedge(p)
        return out

    def nonzero(self) -> list[tuple[int, int, WedgeElement]]:
        return [(k, j, p) for k, parts in sorted(self.components.items()) for j, p in enumerate(parts) if p]


@lru_cache(maxsize=None)
def _degree_system(g: int, d: int):
    """Column layout and inverse of the map (coefficients on primitive bases) -> degree d."""
    targets = _basis(g, d)
    t_index = {idx: i for i, idx in enumerate(targets)}
    gam = gamma_omega(g)
    layout = []
    columns = []
    for k in range(d % 2, min(d, g) + 1, 2):
        j = (d - k) // 2
        if j > g - k:
            continue
        lifted = gam ** j
        for b, p in enumerate(primitive_basis(g, k)):
            image = lifted.wedge(p)
            col = [Fraction(0)] * len(targets)
            for idx, v in image.coeffs.items():
                col[t_index[idx]] = v
            columns.append(col)
            layout.append((k, j, b))
    if len(columns) != len(targets):
        raise AssertionError("primitive pieces do not span the degree")
    square = [list(row) for row in zip(*columns)] if columns else []
    return targets, layout, inverse(square) if square else []


def decompose(x: WedgeElement) -> PrimitiveDecomposition:
    """Unique primitive decomposition of ``x`` by exact linear solve per degree."""
    g = x.g
    comps = {k: [WedgeElement(g) for _ in range(g - k + 1)] for k in range(g + 1)}
    for d in sorted(x.degrees()):
        targets, layout, inv = _degree_system(g, d)
        part = x.part(d)
        vec = [part.coeffs.get(idx, Fraction(0)) for idx in targets]
        sol = matvec(inv, vec)
        for (k, j, b), c in zip(layout, sol):
            if c:
                comps[k][j] = comps[k][j] + primitive_basis(g, k)[b].scale(c)
    return PrimitiveDecomposition(g, comps)


def random_element(g: int, rng: random.Random, density: float = 0.3, max_num: int = 5) -> WedgeElement:
    """Random element with small integer coefficients, for property checks."""
    coeffs = {}
    for k in range(2 * g + 1):
        for idx in _basis(g, k):
            if rng.random() < density:
                coeffs[idx] = Fraction(rng.randint(-max_num, max_num), rng.randint(1, 3))
    return WedgeElement(g, coeffs)
