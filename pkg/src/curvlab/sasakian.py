"""Sasakian curvature identities and the scalar curvature window.

A Sasakian Ricci profile is any symmetric matrix with ``Ric xi = 2n xi``
(xi = e_0). The xi-components of the Weyl tensor are determined by such a
profile alone, which is what the identity checks below exercise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kappa_mu import AdaptedFrame
from .tensor import CurvatureTensor, constant_curvature, invariants_of

PROFILE_TOL = 1e-12


class SasakianInputError(ValueError):
    pass


@dataclass(frozen=True)
class SasakianRicciProfile:
    n: int
    ricci: np.ndarray

    def __post_init__(self):
        R = np.array(self.ricci, dtype=float)
        d = 2 * self.n + 1
        if R.shape != (d, d):
            raise SasakianInputError(f"ricci must be {d}x{d} for n={self.n}, got {R.shape}")
        if np.max(np.abs(R - R.T)) > PROFILE_TOL:
            raise SasakianInputError("ricci is not symmetric")
        e0 = np.eye(d)[0]
        if np.linalg.norm(R @ e0 - 2 * self.n * e0) > PROFILE_TOL:
            raise SasakianInputError("ricci does not satisfy Q xi = 2n xi")
        R.setflags(write=False)
        object.__setattr__(self, "ricci", R)

    @property
    def dim(self) -> int:
        return 2 * self.n + 1

    @property
    def scalar(self) -> float:
        return float(np.trace(self.ricci))

    @property
    def traceless_normsq(self) -> float:
        d = self.dim
        return float(np.sum((self.ricci - self.scalar / d * np.eye(d))**2))


def random_profile(n: int, rng: np.random.Generator) -> SasakianRicciProfile:
    """Symmetric entries uniform in [-3, 3], row and column 0 forced to 2n e_0."""
    d = 2 * n + 1
    A = rng.uniform(-3.0, 3.0, size=(d, d))
    A = np.triu(A) + np.triu(A, 1).T
    A[0, :] = 0.0
    A[:, 0] = 0.0
    A[0, 0] = 2 * n
    return SasakianRicciProfile(n, A)


def einstein_profile(n: int) -> SasakianRicciProfile:
    return SasakianRicciProfile(n, 2 * n * np.eye(2 * n + 1))


def weyl_xi_components(p: SasakianRicciProfile) -> np.ndarray:
    """``W[i, j, l] = W_ij0l`` of a Sasakian manifold with the given Ricci profile."""
    n, d, s = p.n, p.dim, p.scalar
    g = np.eye(d)
    e0 = g[0]
    coef = 1 - (2 * n - s / (2 * n)) / (2 * n - 1)
    return (coef * (np.einsum("j,il->ijl", e0, g) - np.einsum("i,jl->ijl", e0, g))
            + (np.einsum("i,jl->ijl", e0, p.ricci) - np.einsum("j,il->ijl", e0, p.ricci))
            / (2 * n - 1))


def weyl_xi_normsq_closed(p: SasakianRicciProfile) -> float:
    n, s = p.n, p.scalar
    return 2 / (2 * n - 1)**2 * (p.traceless_normsq - s**2 / (2 * n * (2 * n + 1))
                                 + 2 * s - 2 * n * (2 * n + 1))


def weyl_xi_identity_residual(p: SasakianRicciProfile) -> float:
    """Gap between sum_{i,j,a} W_ija0^2 and its closed form in s and |Ric0|^2."""
    W = weyl_xi_components(p)
    lhs = float(np.sum(W[:, :, 1:]**2))  # W_ija0^2 = W_ij0a^2
    return abs(lhs - weyl_xi_normsq_closed(p))


def sasakian_pattern_residual(T: CurvatureTensor) -> float:
    """Max deviation of ``R(X, Y)xi`` from ``eta(Y)X - eta(X)Y`` (xi = e_0)."""
    R = T.comps
    d = R.shape[0]
    g = np.eye(d)
    e0 = g[0]
    target = np.einsum("j,il->ijl", e0, g) - np.einsum("i,jl->ijl", e0, g)
    return float(np.max(np.abs(R[:, :, 0, :] - target)))


def trace_identity_residual(T: CurvatureTensor, tol: float = 1e-9) -> float:
    """``|4n - (2s^2/(2n(2n+1)) + 4|Ric0|^2/(2n-1) + |W|^2)/(2n+1)|``.

    Rejects tensors whose xi-components are not of Sasakian form.
    """
    gap = sasakian_pattern_residual(T)
    if gap >= tol:
        raise SasakianInputError(
            f"tensor violates R(X,Y)xi = eta(Y)X - eta(X)Y (residual {gap:.3g})")
    d = T.comps.shape[0]
    n = (d - 1) // 2
    rec = invariants_of(T).record
    rhs = (2 * rec.scalar**2 / (2 * n * (2 * n + 1)) + 4 * rec.traceless_normsq / (2 * n - 1)
           + rec.weyl_normsq) / (2 * n + 1)
    return abs(4 * n - rhs)


@dataclass(frozen=True)
class ScalarBounds:
    n: int
    lower: float
    upper: float


def scalar_bounds(n: int) -> ScalarBounds:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n == 1:
        return ScalarBounds(1, -6.0, 6.0)
    upper = 2 * n * (2 * n + 1)
    return ScalarBounds(n, -upper * (4 * n * n - 4 * n + 3) / (4 * n * n - 4 * n - 1), upper)


def n1_traceless_normsq(s: float) -> float:
    """|Ric0|^2 forced in dimension 3 (W = 0): 4|Ric0|^2 = 12 - s^2/3."""
    return (12 - s**2 / 3) / 4


def n1_rearrangement_residual(s: float, traceless_normsq: float) -> float:
    """Trace identity at n = 1 minus its rearranged form 4|Ric0|^2 = 12 - s^2/3."""
    trace_form = (2 * s**2 / 6 + 4 * traceless_normsq) / 3 - 4
    rearranged = (4 * traceless_normsq - (12 - s**2 / 3)) / 3
    return abs(trace_form - rearranged)


def sphere_sasakian_tensor(n: int) -> tuple[CurvatureTensor, AdaptedFrame]:
    """Unit sphere S^{2n+1} curvature with xi = e_0, and its (h = 0) frame layout."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return constant_curvature(2 * n + 1, 1.0), AdaptedFrame(n, 0.0)
