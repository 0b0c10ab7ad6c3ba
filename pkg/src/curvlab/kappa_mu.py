"""Synthetic curvature of contact and almost cosymplectic (kappa, mu)-spaces.

Tensors are assembled in the adapted frame

    index 0          -> xi
    indices 1..n     -> e_a spanning D(lambda)      (h e_a = lambda e_a)
    indices n+1..2n  -> phi e_a spanning D(-lambda)

so h = diag(0, lambda I, -lambda I) and phi maps a -> n+a, n+a -> -a.
The closed forms for the xi xi breve entry, |R|^2 and the six block sums
are evaluated next to the assembled tensors so the two routes can be
compared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .tensor import CurvatureTensor

CONTACT = "contact"
COSYMPLECTIC = "almost-cosymplectic"
FAMILIES = (CONTACT, COSYMPLECTIC)

MIN_LAMBDA = 1e-6

BLOCKS = ("abcd", "abcA", "abAB", "aAbB", "ABaC", "ABCD")
# multiplicity of each block in the horizontal part of |R|^2
BLOCK_WEIGHTS = {"abcd": 1, "abcA": 4, "abAB": 2, "aAbB": 4, "ABaC": 4, "ABCD": 1}


class ParameterError(ValueError):
    """(kappa, mu) parameters outside the admissible range of a family."""


@dataclass(frozen=True)
class KappaMuParams:
    family: str
    n: int
    kappa: float
    mu: float

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParameterError(f"family must be one of {FAMILIES}, got {self.family!r}")
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ParameterError(f"n must be an integer >= 1, got {self.n!r}")
        if self.family == CONTACT and not self.kappa < 1:
            raise ParameterError(f"kappa must be < 1 for the contact family, got {self.kappa}")
        if self.family == COSYMPLECTIC and not self.kappa < 0:
            raise ParameterError(
                f"kappa must be < 0 for the almost-cosymplectic family, got {self.kappa}")
        if self.lam < MIN_LAMBDA:
            raise ParameterError(
                f"lambda = {self.lam:.3g} is below {MIN_LAMBDA}; the adapted frame degenerates")

    @property
    def dim(self) -> int:
        return 2 * self.n + 1

    @property
    def lam(self) -> float:
        if self.family == CONTACT:
            return math.sqrt(1.0 - self.kappa)
        return math.sqrt(-self.kappa)


@dataclass(frozen=True)
class AdaptedFrame:
    n: int
    lam: float

    @property
    def dim(self) -> int:
        return 2 * self.n + 1

    @property
    def plus(self) -> np.ndarray:
        m = np.zeros(self.dim)
        m[1:self.n + 1] = 1.0
        return m

    @property
    def minus(self) -> np.ndarray:
        m = np.zeros(self.dim)
        m[self.n + 1:] = 1.0
        return m

    @property
    def h(self) -> np.ndarray:
        return np.diag(np.concatenate([[0.0], np.full(self.n, self.lam),
                                       np.full(self.n, -self.lam)]))

    @property
    def phi(self) -> np.ndarray:
        """Matrix of phi, column a holding the components of phi e_a."""
        n, P = self.n, np.zeros((self.dim, self.dim))
        for a in range(1, n + 1):
            P[n + a, a] = 1.0
            P[a, n + a] = -1.0
        return P

    def greek(self) -> range:
        return range(1, self.n + 1)

    def capital(self) -> range:
        return range(self.n + 1, 2 * self.n + 1)


def frame_of(p: KappaMuParams) -> AdaptedFrame:
    return AdaptedFrame(p.n, p.lam)


def nullity_components(dim: int, kappa: float, mu: float, h: np.ndarray) -> np.ndarray:
    """``E[i, j, l] = g(R(e_i, e_j) xi, e_l)`` from the (kappa, mu)-nullity condition, xi = e_0."""
    g = np.eye(dim)
    e = g[0]
    hs = np.asarray(h).T
    return (kappa * (np.einsum("j,il->ijl", e, g) - np.einsum("i,jl->ijl", e, g))
            + mu * (np.einsum("j,il->ijl", e, hs) - np.einsum("i,jl->ijl", e, hs)))


def _fill_xi_components(R: np.ndarray, E: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Write every component with a xi slot from ``E`` using the curvature symmetries.

    Components reachable through more than one rule are checked for agreement.
    """
    d = R.shape[0]
    candidates = [
        (np.s_[:, :, 0, :], E),                          # R_ij0l
        (np.s_[:, :, :, 0], -E),                         # R_ijk0 = -R_ij0k
        (np.s_[0, :, :, :], E.transpose(2, 0, 1)),       # R_0jkl = R_kl0j
        (np.s_[:, 0, :, :], -E.transpose(2, 0, 1)),      # R_i0kl = -R_kl0i
    ]
    filled = np.zeros((d,) * 4, dtype=bool)
    for where, values in candidates:
        clash = filled[where] & (np.abs(R[where] - values) > tol)
        if np.any(clash):
            raise AssertionError("inconsistent xi-components in (kappa, mu) assembly")
        R[where] = values
        filled[where] = True
    return R


def _horizontal_contact(fr: AdaptedFrame, kappa: float, mu: float) -> np.ndarray:
    lam = fr.lam
    p, m = fr.plus, fr.minus
    F = fr.phi.T  # F[a, b] = g(phi e_a, e_b)
    g = np.eye(fr.dim)

    def mask(x, y, z):
        return np.einsum("i,j,k->ijk", x, y, z)[..., None]

    def gxg(A, B, pat):
        return np.einsum(pat, A, B)

    # R(X,Y)Z = A [g(Y,Z)X - g(X,Z)Y] inside one eigen-distribution
    same = gxg(g, g, "jk,il->ijkl") - gxg(g, g, "ik,jl->ijkl")
    R = (2 * (1 + lam) - mu) * same * mask(p, p, p)
    R += (2 * (1 - lam) - mu) * same * mask(m, m, m)
    # R(X,Y)Z_{-+} = (kappa - mu) [g(phiY,Z) phiX - g(phiX,Z) phiY], X,Y in the opposite space
    cross = gxg(F, F, "jk,il->ijkl") - gxg(F, F, "ik,jl->ijkl")
    R += (kappa - mu) * cross * (mask(p, p, m) + mask(m, m, p))
    # R(X_l, Y_-l)Z_-l = kappa g(phiX,Z) phiY + mu g(phiX,Y) phiZ, and its antisymmetric partner
    t5 = kappa * gxg(F, F, "ik,jl->ijkl") + mu * gxg(F, F, "ij,kl->ijkl")
    R += t5 * mask(p, m, m)
    R -= t5.transpose(1, 0, 2, 3) * mask(m, p, m)
    # R(X_l, Y_-l)Z_l = -kappa g(phiY,Z) phiX - mu g(phiY,X) phiZ
    t6 = -kappa * gxg(F, F, "jk,il->ijkl") - mu * gxg(F, F, "ji,kl->ijkl")
    R += t6 * mask(p, m, p)
    R -= t6.transpose(1, 0, 2, 3) * mask(m, p, p)
    return R


def assemble_contact_km(p: KappaMuParams) -> CurvatureTensor:
    """Curvature of a contact metric (kappa, mu)-space in the adapted frame."""
    if p.family != CONTACT:
        raise ParameterError("assemble_contact_km needs the contact family")
    fr = frame_of(p)
    R = _horizontal_contact(fr, p.kappa, p.mu)
    R[0] = 0.0
    R[:, 0] = 0.0
    R[:, :, 0] = 0.0
    R[:, :, :, 0] = 0.0
    E = nullity_components(fr.dim, p.kappa, p.mu, fr.h)
    return CurvatureTensor(fr.dim, _fill_xi_components(R, E))


def cosymplectic_curvature(kappa: float, mu: float, h: np.ndarray, phi: np.ndarray,
                           xi_index: int = 0) -> np.ndarray:
    """``R = -kappa R3 - R52 - mu R6`` evaluated in any orthonormal frame."""
    d = h.shape[0]
    g = np.eye(d)
    e = g[xi_index]
    H = np.asarray(h).T              # H[a, b] = g(h e_a, e_b)
    K = (np.asarray(phi) @ np.asarray(h)).T  # K[a, b] = g(phi h e_a, e_b)
    R3 = (np.einsum("i,k,jl->ijkl", e, e, g) - np.einsum("j,k,il->ijkl", e, e, g)
          + np.einsum("ik,j,l->ijkl", g, e, e) - np.einsum("jk,i,l->ijkl", g, e, e))
    R6 = (np.einsum("i,k,jl->ijkl", e, e, H) - np.einsum("j,k,il->ijkl", e, e, H)
          + np.einsum("ik,j,l->ijkl", H, e, e) - np.einsum("jk,i,l->ijkl", H, e, e))
    R52 = np.einsum("jk,il->ijkl", K, K) - np.einsum("ik,jl->ijkl", K, K)
    return -kappa * R3 - R52 - mu * R6


def assemble_cosymplectic_km(p: KappaMuParams) -> CurvatureTensor:
    """Curvature of an almost cosymplectic (kappa, mu)-space in the adapted frame."""
    if p.family != COSYMPLECTIC:
        raise ParameterError("assemble_cosymplectic_km needs the almost-cosymplectic family")
    fr = frame_of(p)
    h, P = fr.h, fr.phi
    # h^2 = kappa phi^2 must hold in the frame
    if not np.allclose(h @ h, p.kappa * (P @ P), atol=1e-12):
        raise AssertionError("adapted frame violates h^2 = kappa phi^2")
    return CurvatureTensor(fr.dim, cosymplectic_curvature(p.kappa, p.mu, h, P))


def assemble(p: KappaMuParams) -> CurvatureTensor:
    if p.family == CONTACT:
        return assemble_contact_km(p)
    return assemble_cosymplectic_km(p)


def cosymplectic_horizontal(p: KappaMuParams) -> np.ndarray:
    """Horizontal block ``R_abcd = -lam_a lam_b [g(e_b, phi e_c) g(e_a, phi e_d) - g(e_a, phi e_c) g(e_b, phi e_d)]``."""
    fr = frame_of(p)
    lam = np.diag(fr.h)[1:]
    G = fr.phi[1:, 1:]  # G[b, c] = g(e_b, phi e_c)
    return -np.einsum("a,b,bc,ad->abcd", lam, lam, G, G) + np.einsum(
        "a,b,ac,bd->abcd", lam, lam, G, G)


# -- closed forms -------------------------------------------------------------

@dataclass(frozen=True)
class ClosedForms:
    breve_xixi: float
    riemann_normsq: float
    block_squares: dict


def closed_form_invariants(p: KappaMuParams) -> ClosedForms:
    n, k, mu, lam = p.n, p.kappa, p.mu, p.lam
    if p.family == CONTACT:
        breve = 4 * n * (k**2 - mu**2 * (k - 1))
        blocks = {
            "abcd": 2 * n * (n - 1) * (2 * (1 + lam) - mu)**2,
            "abcA": 0.0,
            "abAB": 2 * n * (n - 1) * (k - mu)**2,
            "aAbB": (k**2 + mu**2) * n**2 + 2 * n * k * mu,
            "ABaC": 0.0,
            "ABCD": 2 * n * (n - 1) * (2 * (1 - lam) - mu)**2,
        }
        normsq = (8 * n * (k**2 - (k - 1) * mu**2)
                  + 2 * n * (n - 1) * (2 * (1 + lam) - mu)**2
                  + 4 * n * (n - 1) * (k - mu)**2
                  + 4 * ((k**2 + mu**2) * n**2 + 2 * n * k * mu)
                  + 2 * n * (n - 1) * (2 * (1 - lam) - mu)**2)
    else:
        breve = 4 * n * (k**2 - mu**2 * k)
        blocks = {
            "abcd": 0.0,
            "abcA": 0.0,
            "abAB": 2 * n * (n - 1) * k**2,
            "aAbB": n**2 * k**2,
            "ABaC": 0.0,
            "ABCD": 0.0,
        }
        normsq = 4 * n * ((2 * n + 1) * k**2 - 2 * mu**2 * k)
    return ClosedForms(float(breve), float(normsq), {b: float(v) for b, v in blocks.items()})


def block_squares(T: CurvatureTensor, n: int) -> dict:
    """Sums of squares over the six Greek/capital index blocks of the horizontal part."""
    R = T.comps
    a = slice(1, n + 1)
    A = slice(n + 1, 2 * n + 1)
    pick = {
        "abcd": (a, a, a, a), "abcA": (a, a, a, A), "abAB": (a, a, A, A),
        "aAbB": (a, A, a, A), "ABaC": (A, A, a, A), "ABCD": (A, A, A, A),
    }
    return {name: float(np.sum(R[idx]**2)) for name, idx in pick.items()}


@dataclass(frozen=True)
class LemmaResiduals:
    riemann: float
    weyl: float


def lemma_decomposition_residual(T: CurvatureTensor, n: int) -> LemmaResiduals:
    """Residuals of the block splittings of |R|^2 and |W|^2 in an adapted frame.

    ``riemann``: |R|^2 against 2 breve(xi, xi) plus the weighted six blocks.
    ``weyl``: |W|^2 against 2 sum W_ija0^2 + sum W_dcab^2.
    """
    from .tensor import weyl_of

    R = T.comps
    if R.shape[0] != 2 * n + 1:
        raise ValueError(f"tensor of dim {R.shape[0]} is not in a frame with n={n}")
    breve_xixi = float(np.sum(R[0]**2))
    blocks = block_squares(T, n)
    rhs = 2 * breve_xixi + sum(BLOCK_WEIGHTS[b] * v for b, v in blocks.items())
    riemann = abs(float(np.sum(R**2)) - rhs)

    W = weyl_of(R)
    w_rhs = 2 * float(np.sum(W[:, :, 1:, 0]**2)) + float(np.sum(W[1:, 1:, 1:, 1:]**2))
    weyl = abs(float(np.sum(W**2)) - w_rhs)
    return LemmaResiduals(riemann, weyl)


# -- weakly Einstein conditions ---------------------------------------------

@dataclass(frozen=True)
class PolynomialResiduals:
    """Closed-form residuals of the xi xi weakly Einstein condition.

    Contact: ``lambda_form`` is LHS - RHS of the condition written with
    lambda^2 = 1 - kappa, ``kappa_form`` the same condition as a polynomial
    linear in kappa and ``factored_n1`` the n = 1 factorisation
    (mu + 2) mu kappa. Cosymplectic: ``cosym``.
    """

    lambda_form: float | None = None
    kappa_form: float | None = None
    factored_n1: float | None = None
    cosym: float | None = None

    @property
    def primary(self) -> float:
        return self.lambda_form if self.lambda_form is not None else self.cosym


def xixi_lambda_form(n: int, kappa: float, mu: float) -> float:
    """-(2n-1) mu^2 kappa - (n-1)[4(1+lambda^2) + mu^2 - 4mu] + 2(n-2) kappa mu.

    Equals (2n+1)/(4n) * (breve(xi, xi) - |R|^2/(2n+1)) on the assembled tensor.
    """
    lam2 = 1.0 - kappa
    lhs = -(2 * n - 1) * mu**2 * kappa
    rhs = (n - 1) * (4 * (1 + lam2) + mu**2 - 4 * mu) - 2 * (n - 2) * kappa * mu
    return lhs - rhs


def kappa_coefficient(n: int, mu: float) -> float:
    """Coefficient of kappa in the polynomial form: -mu^2(2n-1) + 2mu(n-2) + 4(n-1)."""
    return -mu**2 * (2 * n - 1) + 2 * mu * (n - 2) + 4 * (n - 1)


def xixi_kappa_form(n: int, kappa: float, mu: float) -> float:
    """kappa * kappa_coefficient(mu) - (n-1)[4 + (mu-2)^2]."""
    return kappa_coefficient(n, mu) * kappa - (n - 1) * (4 + (mu - 2)**2)


def kappa_root(n: int, mu: float) -> float | None:
    """The kappa solving the polynomial form for given mu (None if the coefficient vanishes)."""
    q = kappa_coefficient(n, mu)
    if q == 0:
        return None
    return (n - 1) * (4 + (mu - 2)**2) / q


def cosym_residual(n: int, kappa: float, mu: float) -> float:
    return -4 * n * mu**2 * kappa * (2 * n - 1) / (2 * n + 1)


def emptiness_quadratic(n: int, mu: float) -> float:
    """(3n-2) mu^2 - 2(3n-4) mu + 4(n-1); positive for every mu when n > 1."""
    return (3 * n - 2) * mu**2 - 2 * (3 * n - 4) * mu + 4 * (n - 1)


def emptiness_quadratic_min(n: int) -> float:
    return 4 * (n - 1) - (3 * n - 4)**2 / (3 * n - 2)


def weakly_einstein_polynomials(p: KappaMuParams) -> PolynomialResiduals:
    n, k, mu = p.n, p.kappa, p.mu
    if p.family == CONTACT:
        return PolynomialResiduals(
            lambda_form=xixi_lambda_form(n, k, mu),
            kappa_form=xixi_kappa_form(n, k, mu),
            factored_n1=(mu + 2) * mu * k if n == 1 else None,
        )
    return PolynomialResiduals(cosym=cosym_residual(n, k, mu))


@dataclass(frozen=True)
class MuThresholds:
    upper: float
    lower: float


def mu_admissible_bounds(n: int) -> MuThresholds:
    """Roots of -mu^2(2n-1) + 2mu(n-2) + 4(n-1) for n >= 2."""
    if n < 2:
        raise ValueError(f"mu thresholds need n >= 2, got {n}")
    r = math.sqrt(9 * n**2 - 16 * n + 8)
    return MuThresholds(upper=(n - 2 + r) / (2 * n - 1), lower=(n - 2 - r) / (2 * n - 1))


def boeckx_invariant(kappa: float, mu: float) -> float:
    if not kappa < 1:
        raise ParameterError(f"kappa must be < 1, got {kappa}")
    return (1 - mu / 2) / math.sqrt(1 - kappa)


def tangent_sphere_bundle_type(kappa: float, mu: float) -> bool:
    """True when the Boeckx invariant exceeds -1."""
    return boeckx_invariant(kappa, mu) > -1


SU2, SL2, E2, E11, SASAKIAN = "SU(2)-type", "SL(2,R)-type", "E(2)-type", "E(1,1)-type", "Sasakian"


@dataclass(frozen=True)
class Branch:
    label: str
    flat: bool = False


def classify_3dim(kappa: float, mu: float, tol: float = 1e-9) -> Branch:
    """Lie group branch of a 3-dim (kappa, mu)-space from the signs of 1 -/+ lambda - mu/2."""
    if kappa > 1 + tol:
        raise ParameterError(f"kappa must be <= 1, got {kappa}")
    if abs(kappa - 1) <= tol:
        return Branch(SASAKIAN)
    lam = math.sqrt(1 - kappa)
    lo = 1 - lam - mu / 2
    hi = 1 + lam - mu / 2
    if abs(lo) <= tol and mu < 2:
        return Branch(E2, flat=abs(mu) <= tol and abs(kappa) <= tol)
    if abs(hi) <= tol and mu > 2:
        return Branch(E11)
    if lo > 0 and hi > 0:
        return Branch(SU2)
    if lo < 0:
        return Branch(SL2)
    raise ParameterError(f"no branch for kappa={kappa}, mu={mu}")
