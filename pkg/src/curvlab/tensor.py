"""Dense frame-component curvature algebra.

All tensors live in an orthonormal frame, so the metric is the identity and
index position is immaterial. Components follow

    R[i, j, k, l] = g(R(e_i, e_j) e_k, e_l),
    R(X, Y) = [nabla_X, nabla_Y] - nabla_[X, Y],

with the Ricci tensor contracted over the first and last slot,
``Ric[j, k] = sum_i R[i, j, k, i]``. A round sphere therefore has positive
scalar curvature and ``R(X, Y)xi = eta(Y)X - eta(X)Y``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

DEFAULT_TOL = 1e-9


class DimensionError(ValueError):
    """Raised when a declared dimension disagrees with the component array."""


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class CurvatureTensor:
    """Rank-4 curvature components in an orthonormal frame."""

    dim: int
    comps: np.ndarray = field(repr=False)

    def __post_init__(self):
        comps = np.asarray(self.comps, dtype=float)
        if comps.shape != (self.dim,) * 4:
            raise DimensionError(
                f"dim={self.dim} but component array has shape {comps.shape}")
        object.__setattr__(self, "comps", _frozen(comps))

    def __getitem__(self, idx):
        return self.comps[idx]

    def rotated(self, frame: np.ndarray) -> "CurvatureTensor":
        """Components in a new orthonormal frame.

        ``frame[:, a]`` holds the old-frame coordinates of the new vector e'_a.
        """
        Q = np.asarray(frame, dtype=float)
        if Q.shape != (self.dim, self.dim):
            raise DimensionError(f"frame shape {Q.shape} does not match dim={self.dim}")
        return CurvatureTensor(
            self.dim, np.einsum("ai,bj,ck,dl,abcd->ijkl", Q, Q, Q, Q, self.comps))


@dataclass(frozen=True)
class SymmetricTwoTensor:
    dim: int
    comps: np.ndarray = field(repr=False)

    def __post_init__(self):
        comps = np.asarray(self.comps, dtype=float)
        if comps.shape != (self.dim, self.dim):
            raise DimensionError(
                f"dim={self.dim} but component array has shape {comps.shape}")
        object.__setattr__(self, "comps", _frozen(comps))

    @property
    def trace(self) -> float:
        return float(np.trace(self.comps))

    @property
    def normsq(self) -> float:
        return float(np.sum(self.comps**2))


@dataclass(frozen=True)
class InvariantRecord:
    scalar: float
    ricci_normsq: float
    traceless_normsq: float
    weyl_normsq: float
    riemann_normsq: float
    breve_xixi: float

    def as_dict(self) -> dict:
        return {
            "scalar": self.scalar,
            "ricci_normsq": self.ricci_normsq,
            "traceless_normsq": self.traceless_normsq,
            "weyl_normsq": self.weyl_normsq,
            "riemann_normsq": self.riemann_normsq,
            "breve_xixi": self.breve_xixi,
        }


@dataclass(frozen=True)
class SymmetryReport:
    antisymmetry: float
    pair_symmetry: float
    bianchi: float
    tol: float

    @property
    def max_residual(self) -> float:
        return max(self.antisymmetry, self.pair_symmetry, self.bianchi)

    @property
    def valid(self) -> bool:
        return self.max_residual < self.tol


@dataclass(frozen=True)
class Invariants:
    """Everything :func:`invariants_of` computes for one tensor."""

    record: InvariantRecord
    ricci: SymmetricTwoTensor
    weyl: CurvatureTensor
    breve: SymmetricTwoTensor


def _as_comps(T) -> np.ndarray:
    if isinstance(T, CurvatureTensor):
        return T.comps
    return np.asarray(T, dtype=float)


def validate_symmetries(T: CurvatureTensor, tol: float = DEFAULT_TOL) -> SymmetryReport:
    """Maximal residuals of the algebraic curvature symmetries.

    Checks antisymmetry in both index pairs, pair symmetry and the first
    Bianchi identity ``R_ijkl + R_jkil + R_kijl = 0``.
    """
    R = _as_comps(T)
    if R.ndim != 4 or len(set(R.shape)) != 1:
        raise DimensionError(f"not a square rank-4 array: shape {R.shape}")
    if isinstance(T, CurvatureTensor) and R.shape[0] != T.dim:
        raise DimensionError(f"dim={T.dim} but component array has shape {R.shape}")
    anti = max(np.max(np.abs(R + R.transpose(1, 0, 2, 3))),
               np.max(np.abs(R + R.transpose(0, 1, 3, 2))))
    pair = np.max(np.abs(R - R.transpose(2, 3, 0, 1)))
    # R[j,k,i,l] and R[k,i,j,l] as arrays indexed by (i,j,k,l)
    bianchi = np.max(np.abs(R + R.transpose(2, 0, 1, 3) + R.transpose(1, 2, 0, 3)))
    return SymmetryReport(float(anti), float(pair), float(bianchi), tol)


def ricci_of(T: CurvatureTensor) -> np.ndarray:
    return np.einsum("ijki->jk", _as_comps(T))


def breve_of(T: CurvatureTensor) -> np.ndarray:
    R = _as_comps(T)
    return np.einsum("ipqr,jpqr->ij", R, R)


def weyl_of(T: CurvatureTensor) -> np.ndarray:
    """Weyl tensor from the Ricci decomposition (needs dim >= 3)."""
    R = _as_comps(T)
    d = R.shape[0]
    if d < 3:
        raise DimensionError(f"Weyl tensor undefined for dim={d} < 3")
    ric = ricci_of(R)
    s = np.trace(ric)
    g = np.eye(d)
    ric_part = (np.einsum("ik,jl->ijkl", g, ric) - np.einsum("il,jk->ijkl", g, ric)
                - np.einsum("jk,il->ijkl", g, ric) + np.einsum("jl,ik->ijkl", g, ric))
    gg = np.einsum("jl,ik->ijkl", g, g) - np.einsum("il,jk->ijkl", g, g)
    return R + ric_part / (d - 2) - s / ((d - 1) * (d - 2)) * gg


def invariants_of(T: CurvatureTensor, xi_index: int = 0) -> Invariants:
    """Ricci, Weyl, breve tensor and the scalar invariants of ``T``."""
    R = _as_comps(T)
    d = R.shape[0]
    if d < 3:
        raise DimensionError(f"invariants need dim >= 3, got {d}")
    ric = ricci_of(R)
    s = float(np.trace(ric))
    weyl = weyl_of(R)
    breve = breve_of(R)
    ric_sq = float(np.sum(ric**2))
    record = InvariantRecord(
        scalar=s,
        ricci_normsq=ric_sq,
        traceless_normsq=float(np.sum((ric - s / d * np.eye(d))**2)),
        weyl_normsq=float(np.sum(weyl**2)),
        riemann_normsq=float(np.sum(R**2)),
        breve_xixi=float(breve[xi_index, xi_index]),
    )
    return Invariants(record, SymmetricTwoTensor(d, ric), CurvatureTensor(d, weyl),
                      SymmetricTwoTensor(d, breve))


@dataclass(frozen=True)
class WeaklyEinsteinResidual:
    full: float
    xixi: float


def weakly_einstein_residual(T: CurvatureTensor, xi_index: int = 0) -> WeaklyEinsteinResidual:
    """Deviation of the breve tensor from ``|R|^2/dim * g``.

    ``full`` is the max-norm over all components, ``xixi`` only the
    ``(xi, xi)`` entry.
    """
    R = _as_comps(T)
    d = R.shape[0]
    breve = breve_of(R)
    target = np.sum(R**2) / d
    full = np.max(np.abs(breve - target * np.eye(d)))
    xixi = abs(breve[xi_index, xi_index] - target)
    return WeaklyEinsteinResidual(float(full), float(xixi))


def norm_decomposition_residual(T: CurvatureTensor) -> float:
    """``| |R|^2 - 2s^2/(d(d-1)) - 4|Ric0|^2/(d-2) - |W|^2 |``."""
    R = _as_comps(T)
    d = R.shape[0]
    rec = invariants_of(R).record
    rhs = (2 * rec.scalar**2 / (d * (d - 1)) + 4 * rec.traceless_normsq / (d - 2)
           + rec.weyl_normsq)
    return abs(rec.riemann_normsq - rhs)


def constant_curvature(dim: int, c: float) -> CurvatureTensor:
    """Space form of sectional curvature ``c``: R(X,Y)Z = c(g(Y,Z)X - g(X,Z)Y)."""
    if dim < 2:
        raise DimensionError(f"dim must be >= 2, got {dim}")
    g = np.eye(dim)
    comps = c * (np.einsum("jk,il->ijkl", g, g) - np.einsum("ik,jl->ijkl", g, g))
    return CurvatureTensor(dim, comps)


def zero_tensor(dim: int) -> CurvatureTensor:
    return CurvatureTensor(dim, np.zeros((dim,) * 4))
