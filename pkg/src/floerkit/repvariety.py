"""Numerical solutions of the SU(2) relator equations with traceless punctures.

A point is a tuple ``(B_1..B_{2g}, C_1..C_n)`` of unit quaternions with

    [B_1, B_{g+1}] ... [B_g, B_{2g}] C_1 ... C_n = eps,   Re C_i = 0,

``[a, b] = a b a^{-1} b^{-1}`` and ``eps = +1`` or ``-1``.  Quaternions are
numpy arrays ``[w, x, y, z]`` meaning ``w + x i + y j + z k``; the unit
quaternions are SU(2) and ``tr = 2 w``.

:func:`solve` finds a solution from a seeded random start by damped
Gauss-Newton (Levenberg-Marquardt) steps in the tangent space of the product
of 3-spheres, rejecting steps that do not decrease the residual, with
retraction by normalisation.  :func:`local_dimension` counts the kernel
of a finite-difference Jacobian at a solution and, for odd ``n`` (where all
solutions are irreducible), subtracts the 3-dimensional conjugation orbit.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

import numpy as np

__all__ = [
    "qmul",
    "qconj",
    "qexp",
    "Su2Tuple",
    "SolveReport",
    "RepVarietyError",
    "PreconditionError",
    "IndeterminateRankError",
    "NonConvergenceError",
    "relator",
    "residual",
    "defining_map",
    "tangent_jacobian",
    "solve",
    "local_dimension",
    "flip_map",
    "on_diagonal",
    "trace_fingerprint",
    "expected_dimension",
]

UNIT_TOL = 1e-12
CONVERGED = 1e-10
GAP_RATIO = 1e4
FD_STEP = 1e-6
DIAGONAL_TOL = 1e-8


class RepVarietyError(ValueError):
    pass


class PreconditionError(RepVarietyError):
    """An operation was called on a point that violates its precondition."""


class IndeterminateRankError(RepVarietyError):
    """No clear singular-value gap: the Jacobian rank cannot be decided."""


class NonConvergenceError(RuntimeError):
    """The solver exhausted its restarts without reaching the tolerance."""


# ---------------------------------------------------------------------------
# quaternions


def qmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Hamilton product, broadcasting over leading axes."""
    aw, ax, ay, az = np.moveaxis(np.asarray(a, dtype=float), -1, 0)
    bw, bx, by, bz = np.moveaxis(np.asarray(b, dtype=float), -1, 0)
    return np.stack([
        aw * bw - ax * bx - ay * by - az * bz,
        aw * bx + ax * bw + ay * bz - az * by,
        aw * by - ax * bz + ay * bw + az * bx,
        aw * bz + ax * by - ay * bx + az * bw,
    ], axis=-1)


def qconj(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    return a * np.array([1.0, -1.0, -1.0, -1.0])


def qexp(v: np.ndarray) -> np.ndarray:
    """``exp(v)`` for pure-imaginary ``v`` given by its 3 components."""
    v = np.asarray(v, dtype=float)
    theta = np.linalg.norm(v, axis=-1, keepdims=True)
    sinc = np.where(theta > 1e-300, np.sin(theta) / np.where(theta > 1e-300, theta, 1.0), 1.0)
    return np.concatenate([np.cos(theta), sinc * v], axis=-1)


ONE = np.array([1.0, 0.0, 0.0, 0.0])


# ---------------------------------------------------------------------------
# points


@dataclass(frozen=True)
class Su2Tuple:
    """A point of ``SU(2)^{2g+n}`` together with the target sign ``eps``.

    Parameters
    ----------
    B : array, shape (2g, 4)
    C : array, shape (n, 4)
    eps : {+1, -1}
    """

    B: np.ndarray
    C: np.ndarray
    eps: int = 1

    def __post_init__(self):
        B = np.array(self.B, dtype=float).reshape(-1, 4)
        C = np.array(self.C, dtype=float).reshape(-1, 4)
        if len(B) % 2:
            raise RepVarietyError("B must contain an even number (2g) of quaternions")
        if self.eps not in (1, -1):
            raise RepVarietyError("eps must be +1 or -1")
        for q in np.concatenate([B, C]):
            if abs(np.linalg.norm(q) - 1.0) > UNIT_TOL:
                raise RepVarietyError("every entry must be a unit quaternion")
        B.setflags(write=False)
        C.setflags(write=False)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "C", C)

    @property
    def g(self) -> int:
        return len(self.B) // 2

    @property
    def n(self) -> int:
        return len(self.C)

    @classmethod
    def from_flat(cls, x: np.ndarray, g: int, eps: int) -> "Su2Tuple":
        q = np.asarray(x, dtype=float).reshape(-1, 4)
        q = q / np.linalg.norm(q, axis=1, keepdims=True)
        return cls(q[: 2 * g], q[2 * g:], eps)

    def flat(self) -> np.ndarray:
        return np.concatenate([self.B, self.C]).copy()

    @classmethod
    def random(cls, g: int, n: int, eps: int, rng: np.random.Generator) -> "Su2Tuple":
        q = rng.normal(size=(2 * g + n, 4))
        return cls.from_flat(q, g, eps)

    def conjugate_by(self, q: np.ndarray) -> "Su2Tuple":
        q = np.asarray(q, dtype=float) / np.linalg.norm(q)
        qi = qconj(q)
        return Su2Tuple(qmul(qmul(q, self.B), qi) if len(self.B) else self.B,
                        qmul(qmul(q, self.C), qi) if len(self.C) else self.C, self.eps)


def expected_dimension(g: int, n: int) -> int:
    """``3(2g+n) - 3 - n - 3 = 6g + 2n - 6``."""
    return 3 * (2 * g + n) - 3 - n - 3


def _relator_flat(q: np.ndarray, g: int) -> np.ndarray:
    out = ONE
    for j in range(g):
        a, b = q[j], q[j + g]
        out = qmul(out, qmul(qmul(a, b), qmul(qconj(a), qconj(b))))
    for c in q[2 * g:]:
        out = qmul(out, c)
    return out


def relator(x: Su2Tuple) -> np.ndarray:
    """``prod_j [B_j, B_{j+g}] * prod_i C_i`` as a quaternion."""
    return _relator_flat(np.concatenate([x.B, x.C]), x.g)


def residual(x: Su2Tuple) -> float:
    """``|relator - eps|^2 + sum_i (Re C_i)^2`` (4-vector Euclidean norm)."""
    r = relator(x) - x.eps * ONE
    return float(r @ r + np.sum(x.C[:, 0] ** 2))


def _residual_vector(q: np.ndarray, g: int, eps: int) -> np.ndarray:
    r = _relator_flat(q, g) - eps * ONE
    return np.concatenate([r, q[2 * g:, 0]])


def defining_map(q: np.ndarray, g: int, eps: int) -> np.ndarray:
    """Imaginary part of ``eps * relator`` followed by ``Re C_i``; zero on solutions."""
    r = eps * _relator_flat(q, g)
    return np.concatenate([r[1:], q[2 * g:, 0]])


def _perturb(q: np.ndarray, k: int, a: int, h: float) -> np.ndarray:
    v = np.zeros(3)
    v[a] = h
    out = q.copy()
    out[k] = qmul(q[k], qexp(v))
    return out


def tangent_jacobian(fn, q: np.ndarray, step: float = FD_STEP) -> np.ndarray:
    """Central-difference Jacobian of ``fn`` in the right-invariant tangent basis.

    Column ``3k + a`` differentiates along ``q_k -> q_k exp(h e_a)`` with
    ``e_a`` the imaginary units i, j, k.
    """
    cols = []
    for k in range(len(q)):
        for a in range(3):
            plus = fn(_perturb(q, k, a, step))
            minus = fn(_perturb(q, k, a, -step))
            cols.append((plus - minus) / (2 * step))
    return np.stack(cols, axis=1)


def _retract(q: np.ndarray, delta: np.ndarray) -> np.ndarray:
    out = qmul(q, qexp(delta.reshape(-1, 3)))
    return out / np.linalg.norm(out, axis=1, keepdims=True)


# ---------------------------------------------------------------------------
# solving


@dataclass(frozen=True)
class SolveReport:
    """Residual, Jacobian rank data and trace invariants of a point."""

    g: int
    n: int
    epsilon: int
    residual: float
    rank: int | None = None
    raw_nullity: int | None = None
    quotient_dim: int | None = None
    singular_values: tuple[float, ...] = field(default=(), repr=False)
    traces: dict = field(default_factory=dict)
    seed: int | None = None
    restarts: int | None = None
    iterations: int | None = None

    def to_json(self) -> dict:
        return {
            "g": self.g, "n": self.n, "epsilon": self.epsilon, "seed": self.seed,
            "residual": self.residual, "raw_nullity": self.raw_nullity,
            "quotient_dim": self.quotient_dim, "rank": self.rank,
            "expected_dim": expected_dimension(self.g, self.n),
            "restarts": self.restarts,
            "traces": {k: round(v, 10) + 0.0 for k, v in sorted(self.traces.items())},
        }


def _levenberg_marquardt(q: np.ndarray, g: int, eps: int, max_iter: int, tol: float):
    """Damped Gauss-Newton steps on the product of spheres.

    Solves ``(J^T J + mu I) d = -J^T f`` in the tangent space, retracts, and
    accepts the step only if the residual decreases; ``mu`` shrinks after
    accepted steps and grows after rejected ones.
    """
    fn = lambda z: _residual_vector(z, g, eps)  # noqa: E731
    f = fn(q)
    val = float(f @ f)
    mu = 1e-2
    it = 0
    for it in range(max_iter):
        if val < tol:
            return q, val, it
        jac = tangent_jacobian(fn, q)
        jtj = jac.T @ jac
        rhs = -jac.T @ f
        accepted = False
        for _ in range(30):
            d = np.linalg.solve(jtj + mu * np.eye(len(jtj)), rhs)
            cand = _retract(q, d)
            fc = fn(cand)
            vc = float(fc @ fc)
            if vc < val:
                q, f, val = cand, fc, vc
                mu = max(mu / 3.0, 1e-12)
                accepted = True
                break
            mu *= 4.0
        if not accepted:
            break
    return q, val, it


def solve(g: int, n: int, eps: int = 1, seed: int = 0, max_restarts: int = 100,
          max_iter: int = 200, target: float = 1e-24) -> tuple[Su2Tuple, SolveReport]:
    """Find a solution tuple and its :func:`local_dimension` report.

    Deterministic for a given seed.  Each restart draws a fresh Gaussian
    start from the seeded generator.

    Raises
    ------
    PreconditionError
        If ``n < 1`` or ``eps`` is not +-1.
    NonConvergenceError
        If no restart reaches residual ``< 1e-10``.
    """
    if n < 1 or g < 0:
        raise PreconditionError("need g >= 0 and n >= 1")
    if eps not in (1, -1):
        raise PreconditionError("eps must be +1 or -1")
    rng = np.random.default_rng(seed)
    best = np.inf
    for restart in range(1, max_restarts + 1):
        start = Su2Tuple.random(g, n, eps, rng)
        q, val, iters = _levenberg_marquardt(start.flat(), g, eps, max_iter, target)
        best = min(best, val)
        if val < CONVERGED:
            x = Su2Tuple.from_flat(q, g, eps)
            rep = local_dimension(x)
            return x, SolveReport(**{**rep.__dict__, "seed": seed, "restarts": restart, "iterations": iters})
    raise NonConvergenceError(
        f"no solution for (g, n, eps) = ({g}, {n}, {eps}) after {max_restarts} restarts; best residual {best:.3e}")


def _rank_from_singular_values(sv: np.ndarray, ncols: int) -> int:
    """Rank from a singular-value gap of ratio >= 1e4.

    The list is padded with zeros up to ``ncols``; values below ``1e-13``
    relative to the largest count as zero.
    """
    sv = np.sort(np.asarray(sv, dtype=float))[::-1]
    if not len(sv) or sv[0] == 0:
        return 0
    scale = sv[0]
    vals = np.concatenate([sv, np.zeros(max(0, ncols - len(sv)))])
    vals = np.where(vals < 1e-13 * scale, 0.0, vals)
    gaps = []
    for k in range(len(vals) - 1):
        hi, lo = vals[k], vals[k + 1]
        if hi > 0 and (lo == 0 or hi / lo >= GAP_RATIO):
            gaps.append(k + 1)
    if not gaps:
        if vals[-1] > 0:
            return len(vals)
        raise IndeterminateRankError("no singular-value gap")
    rank = gaps[0]
    # every value past the gap must be negligible relative to the ones before it
    if np.any(vals[rank:] * GAP_RATIO > vals[rank - 1]):
        raise IndeterminateRankError("singular values do not separate cleanly")
    return rank


def trace_fingerprint(x: Su2Tuple) -> dict[str, float]:
    """``tr(C_i C_j) = 2 Re(C_i C_j)`` for ``i < j`` (1-based keys ``"C1C2"``)."""
    out = {}
    for i, j in combinations(range(x.n), 2):
        out[f"C{i + 1}C{j + 1}"] = float(2 * qmul(x.C[i], x.C[j])[0])
    return out


def local_dimension(x: Su2Tuple, step: float = FD_STEP) -> SolveReport:
    """Jacobian rank, raw nullity and quotient dimension at a solution.

    The quotient dimension (nullity minus the 3-dimensional conjugation
    orbit) is reported only for odd ``n``; otherwise it is ``None``.

    Raises
    ------
    PreconditionError
        If ``residual(x) >= 1e-8``.
    IndeterminateRankError
        If the singular values show no clear gap.
    """
    res = residual(x)
    if not res < 1e-8:
        raise PreconditionError(f"residual {res:.3e} is not below 1e-8; not a solution")
    q = x.flat()
    jac = tangent_jacobian(lambda z: defining_map(z, x.g, x.eps), q, step)
    sv = np.linalg.svd(jac, compute_uv=False)
    ncols = jac.shape[1]
    rank = _rank_from_singular_values(sv, ncols)
    nullity = ncols - rank
    quotient = nullity - 3 if x.n % 2 == 1 else None
    return SolveReport(x.g, x.n, x.eps, res, rank, nullity, quotient,
                       tuple(float(s) for s in sv), trace_fingerprint(x))


# ---------------------------------------------------------------------------
# symmetries


def flip_map(x: Su2Tuple, subset: Iterable[int]) -> Su2Tuple:
    """``C_i -> -C_i`` for ``i`` in the (1-based) subset; eps picks up ``(-1)^|S|``."""
    subset = sorted(set(subset))
    for i in subset:
        if not 1 <= i <= x.n:
            raise RepVarietyError(f"flip index {i} out of range 1..{x.n}")
    C = x.C.copy()
    for i in subset:
        C[i - 1] = -C[i - 1]
    return Su2Tuple(x.B, C, x.eps * (-1) ** len(subset))


def on_diagonal(x: Su2Tuple, i: int, j: int, tol: float = DIAGONAL_TOL) -> str:
    """``"plus"`` if ``C_i = C_j``, ``"minus"`` if ``C_i = -C_j``, else ``"neither"``."""
    for k in (i, j):
        if not 1 <= k <= x.n:
            raise RepVarietyError(f"index {k} out of range 1..{x.n}")
    ci, cj = x.C[i - 1], x.C[j - 1]
    if np.linalg.norm(ci - cj) < tol:
        return "plus"
    if np.linalg.norm(ci + cj) < tol:
        return "minus"
    return "neither"
