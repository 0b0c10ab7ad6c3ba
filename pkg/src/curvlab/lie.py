"""Left-invariant almost contact metric geometries on Lie groups.

A model is an orthonormal basis of a Lie algebra, its structure constants
``c[i, j, k]`` with ``[e_i, e_j] = sum_k c[i, j, k] e_k``, and an almost
contact structure (phi, xi, eta) with xi a basis vector. Curvature comes
from the Koszul formula and is independent of the closed-form assemblers in
:mod:`curvlab.kappa_mu`, which makes these models the oracle for them.

Exterior derivatives use the convention with the 1/(p+1) factor, so for
left-invariant forms ``d eta(X, Y) = -1/2 eta([X, Y])``. The fundamental
2-form is ``omega(X, Y) = g(X, phi Y)``; with this orientation the
(kappa, mu) curvature identities in :mod:`curvlab.kappa_mu` hold with the
h computed here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .tensor import CurvatureTensor, DimensionError, _frozen

JACOBI_TOL = 1e-12
H_ZERO_TOL = 1e-10

# dη(e2, e3) = -c1/2 must equal ω(e2, e3) = g(e2, φe3) = -1; solved in
# calibrate_milnor_contact() and frozen here.
MILNOR_CONTACT_C1 = 2.0


class ModelError(ValueError):
    """Invalid Lie model data (bad shapes, Jacobi or almost contact violations)."""


class ModelParseError(ModelError):
    """Malformed model-definition file."""


@dataclass(frozen=True)
class LieModel:
    dim: int
    bracket: np.ndarray = field(repr=False)
    phi: np.ndarray = field(repr=False)
    xi_index: int = 0
    name: str = ""

    def __post_init__(self):
        c = np.asarray(self.bracket, dtype=float)
        P = np.asarray(self.phi, dtype=float)
        d = self.dim
        if c.shape != (d, d, d):
            raise DimensionError(f"dim={d} but bracket array has shape {c.shape}")
        if P.shape != (d, d):
            raise DimensionError(f"dim={d} but phi has shape {P.shape}")
        if not 0 <= self.xi_index < d:
            raise ModelError(f"xi_index {self.xi_index} out of range for dim={d}")
        object.__setattr__(self, "bracket", _frozen(c))
        object.__setattr__(self, "phi", _frozen(P))

    @property
    def eta(self) -> np.ndarray:
        e = np.zeros(self.dim)
        e[self.xi_index] = 1.0
        return e

    def bracket_of(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", X, Y, self.bracket)

    def ad(self, X: np.ndarray) -> np.ndarray:
        """Matrix of ``Y -> [X, Y]`` (columns are images of basis vectors)."""
        return np.einsum("i,ijk->kj", X, self.bracket)

    def jacobi_residual(self) -> float:
        c = self.bracket
        # [[e_i,e_j],e_k] + cyclic, coefficients on e_m
        t = np.einsum("ijp,pkm->ijkm", c, c)
        jac = t + t.transpose(1, 2, 0, 3) + t.transpose(2, 0, 1, 3)
        return float(np.max(np.abs(jac))) if c.size else 0.0

    def antisymmetry_residual(self) -> float:
        return float(np.max(np.abs(self.bracket + self.bracket.transpose(1, 0, 2))))

    def almost_contact_residuals(self) -> dict[str, float]:
        P, e, d = self.phi, self.eta, self.dim
        xi = e
        return {
            "phi_squared": float(np.max(np.abs(P @ P + np.eye(d) - np.outer(xi, e)))),
            "phi_xi": float(np.max(np.abs(P @ xi))),
            "eta_phi": float(np.max(np.abs(e @ P))),
            "metric": float(np.max(np.abs(P.T @ P - np.eye(d) + np.outer(e, e)))),
        }

    def check(self, tol: float = JACOBI_TOL) -> None:
        """Raise :class:`ModelError` unless the model is a valid almost contact metric Lie algebra."""
        if self.antisymmetry_residual() > tol:
            raise ModelError("structure constants are not antisymmetric in the first two slots")
        jac = self.jacobi_residual()
        if jac > tol:
            raise ModelError(f"Jacobi identity violated (residual {jac:.3g})")
        for key, value in self.almost_contact_residuals().items():
            if value > tol:
                raise ModelError(f"almost contact axiom '{key}' violated (residual {value:.3g})")


def koszul_connection(M: LieModel) -> np.ndarray:
    """Levi-Civita connection coefficients ``nabla_{e_i} e_j = sum_k G[i, j, k] e_k``."""
    jac = M.jacobi_residual()
    if jac > JACOBI_TOL:
        raise ModelError(f"Jacobi identity violated (residual {jac:.3g})")
    c = M.bracket
    # 2 g(∇_i e_j, e_k) = g([e_i,e_j],e_k) - g([e_j,e_k],e_i) + g([e_k,e_i],e_j)
    return 0.5 * (c - c.transpose(2, 0, 1) + c.transpose(1, 2, 0))


def curvature_of(M: LieModel) -> CurvatureTensor:
    """Riemann tensor of the left-invariant metric."""
    G = koszul_connection(M)
    c = M.bracket
    # ∇_i ∇_j e_k = Σ_m G[j,k,m] ∇_i e_m = Σ_m G[j,k,m] G[i,m,l] e_l
    nn = np.einsum("jkm,iml->ijkl", G, G)
    brk = np.einsum("ijm,mkl->ijkl", c, G)
    return CurvatureTensor(M.dim, nn - nn.transpose(1, 0, 2, 3) - brk)


def h_operator(M: LieModel) -> np.ndarray:
    """Matrix of ``h = 1/2 L_xi phi`` with ``h[:, a]`` the image of ``e_a``."""
    ad_xi = M.ad(M.eta)
    return 0.5 * (ad_xi @ M.phi - M.phi @ ad_xi)


@dataclass(frozen=True)
class StructureClass:
    label: str
    normal: bool
    residuals: dict = field(default_factory=dict)

    @property
    def sasakian(self) -> bool:
        return self.label == "contact-metric" and self.normal


def d_eta(M: LieModel) -> np.ndarray:
    return -0.5 * np.einsum("ijk,k->ij", M.bracket, M.eta)


def omega(M: LieModel) -> np.ndarray:
    """Fundamental 2-form ``omega(e_i, e_j) = g(e_i, phi e_j)``."""
    return M.phi.copy()


def d_omega(M: LieModel) -> np.ndarray:
    w = omega(M)
    t = np.einsum("ijm,mk->ijk", M.bracket, w)  # ω([e_i,e_j], e_k)
    return -(t + t.transpose(1, 2, 0) + t.transpose(2, 0, 1)) / 3.0


def nijenhuis_normality(M: LieModel) -> np.ndarray:
    """``N[i, j, :] = [phi, phi](e_i, e_j) + 2 d eta(e_i, e_j) xi``."""
    P, c = M.phi, M.bracket
    br = c  # br[i,j,:] = [e_i, e_j]
    phiX = P.T  # phiX[i,:] = φ e_i
    phi2_br = np.einsum("km,ijm->ijk", P @ P, br)
    br_phi_phi = np.einsum("ia,jb,abk->ijk", phiX, phiX, c)
    br_phi_x = np.einsum("ia,ajm->ijm", phiX, c)
    br_x_phi = np.einsum("jb,ibm->ijm", phiX, c)
    nij = phi2_br + br_phi_phi - np.einsum("km,ijm->ijk", P, br_phi_x + br_x_phi)
    return nij + 2.0 * np.einsum("ij,k->ijk", d_eta(M), M.eta)


def exterior_and_classify(M: LieModel, tol: float = 1e-10) -> StructureClass:
    """Label the structure as contact-metric, (almost) cosymplectic or other."""
    de, w = d_eta(M), omega(M)
    residuals = {
        "d_eta_minus_omega": float(np.max(np.abs(de - w))),
        "d_eta": float(np.max(np.abs(de))),
        "d_omega": float(np.max(np.abs(d_omega(M)))),
        "nijenhuis": float(np.max(np.abs(nijenhuis_normality(M)))),
    }
    normal = residuals["nijenhuis"] < tol
    if residuals["d_eta_minus_omega"] < tol:
        label = "contact-metric"
    elif residuals["d_eta"] < tol and residuals["d_omega"] < tol:
        label = "cosymplectic" if normal else "almost-cosymplectic"
    else:
        label = "other"
    return StructureClass(label, normal, residuals)


@dataclass(frozen=True)
class KappaMuFit:
    kappa: float
    mu: float | None
    residual: float
    valid: bool

    @property
    def mu_determined(self) -> bool:
        return self.mu is not None


def kappa_mu_pattern(dim: int, h: np.ndarray, xi_index: int = 0):
    """Basis patterns ``(K, H)`` with ``R[i, j, xi, l] = kappa K + mu H``."""
    g = np.eye(dim)
    e = g[xi_index]
    hs = np.asarray(h, dtype=float).T  # hs[i, l] = g(h e_i, e_l)
    K = np.einsum("j,il->ijl", e, g) - np.einsum("i,jl->ijl", e, g)
    H = np.einsum("j,il->ijl", e, hs) - np.einsum("i,jl->ijl", e, hs)
    return K, H


def detect_kappa_mu(T: CurvatureTensor, h: np.ndarray, xi_index: int = 0,
                    tol: float = 1e-9) -> KappaMuFit:
    """Least-squares fit of the (kappa, mu)-nullity pattern over every xi-component.

    When ``h`` vanishes mu is unidentifiable and reported as ``None``. A fit
    whose residual reaches ``tol`` means the tensor is not a (kappa, mu)-space;
    that is reported through ``valid`` rather than raised.
    """
    R = T.comps if isinstance(T, CurvatureTensor) else np.asarray(T, dtype=float)
    d = R.shape[0]
    target = R[:, :, xi_index, :]
    K, H = kappa_mu_pattern(d, h, xi_index)
    if np.max(np.abs(h)) < H_ZERO_TOL:
        A = K.reshape(-1, 1)
    else:
        A = np.stack([K.ravel(), H.ravel()], axis=1)
    coef, *_ = np.linalg.lstsq(A, target.ravel(), rcond=None)
    resid = float(np.max(np.abs(A @ coef - target.ravel())))
    mu = float(coef[1]) if len(coef) > 1 else None
    return KappaMuFit(float(coef[0]), mu, resid, resid < tol)


def adapted_frame(h: np.ndarray, phi: np.ndarray, xi_index: int = 0,
                  tol: float = H_ZERO_TOL) -> tuple[np.ndarray, float]:
    """Orthonormal frame (xi, e_1..e_n, phi e_1..phi e_n) with h e_a = lambda e_a.

    Returns the frame as columns together with lambda. When h vanishes any
    phi-adapted basis is returned and lambda is 0.
    """
    h = np.asarray(h, dtype=float)
    P = np.asarray(phi, dtype=float)
    d = h.shape[0]
    n = (d - 1) // 2
    xi = np.eye(d)[xi_index]
    hs = 0.5 * (h + h.T)
    w, V = np.linalg.eigh(hs)
    lam = float(np.max(w)) if d > 1 else 0.0
    if lam > tol:
        top = V[:, np.argsort(w)[::-1][:n]]
        if not np.allclose(w[np.argsort(w)[::-1][:n]], lam, atol=1e-8):
            raise ModelError("h does not have a single positive eigenvalue of multiplicity n")
        basis = [top[:, a] for a in range(n)]
    else:
        lam = 0.0
        basis = []
        for v in np.eye(d):
            v = v - xi * (v @ xi)
            for b in basis:
                v = v - b * (v @ b) - (P @ b) * (v @ (P @ b))
            if np.linalg.norm(v) > 1e-6:
                basis.append(v / np.linalg.norm(v))
            if len(basis) == n:
                break
    E = np.column_stack([xi] + basis + [P @ b for b in basis])
    return E, lam


def g_lambda_model(n: int, lam: float) -> LieModel:
    """Solvable algebra with [xi, X_i] = -lam X_i, [xi, Y_i] = lam Y_i.

    Basis order is (xi, X_1..X_n, Y_1..Y_n) and phi X_i = Y_i.
    """
    if n < 1:
        raise ModelError(f"n must be >= 1, got {n}")
    if not lam > 0:
        raise ModelError(f"lambda must be positive, got {lam}")
    d = 2 * n + 1
    c = np.zeros((d, d, d))
    P = np.zeros((d, d))
    for i in range(1, n + 1):
        x, y = i, n + i
        c[0, x, x], c[x, 0, x] = -lam, lam
        c[0, y, y], c[y, 0, y] = lam, -lam
        P[y, x] = 1.0
        P[x, y] = -1.0
    return LieModel(d, c, P, 0, name=f"g-lambda:{n}:{_fmt(lam)}")


def milnor_model(c1: float, c2: float, c3: float) -> LieModel:
    """3-dim unimodular algebra in a Milnor frame, xi = e_1, phi e_2 = e_3.

    Brackets: [e1, e2] = c3 e3, [e2, e3] = c1 e1, [e3, e1] = c2 e2.
    """
    c = np.zeros((3, 3, 3))
    c[0, 1, 2], c[1, 0, 2] = c3, -c3
    c[1, 2, 0], c[2, 1, 0] = c1, -c1
    c[2, 0, 1], c[0, 2, 1] = c2, -c2
    P = np.array([[0.0, 0.0, 0.0],
                  [0.0, 0.0, -1.0],
                  [0.0, 1.0, 0.0]])
    return LieModel(3, c, P, 0, name=f"milnor:{_fmt(c1)}:{_fmt(c2)}:{_fmt(c3)}")


def heisenberg_model(n: int) -> LieModel:
    """Sasakian Heisenberg algebra: [e_a, e_{n+a}] = 2 xi, phi e_a = e_{n+a}."""
    if n < 1:
        raise ModelError(f"n must be >= 1, got {n}")
    d = 2 * n + 1
    c = np.zeros((d, d, d))
    P = np.zeros((d, d))
    for a in range(1, n + 1):
        c[a, n + a, 0], c[n + a, a, 0] = MILNOR_CONTACT_C1, -MILNOR_CONTACT_C1
        P[n + a, a], P[a, n + a] = 1.0, -1.0
    return LieModel(d, c, P, 0, name=f"heisenberg:{n}")


def abelian_model(n: int) -> LieModel:
    d = 2 * n + 1
    P = np.zeros((d, d))
    for i in range(1, n + 1):
        P[n + i, i], P[i, n + i] = 1.0, -1.0
    return LieModel(d, np.zeros((d, d, d)), P, 0, name=f"abelian:{n}")


def calibrate_milnor_contact() -> float:
    """Solve d eta(e2, e3) = omega(e2, e3) for c1 on the Milnor frame.

    d eta is linear in c1, so two evaluations pin it down exactly.
    """
    def gap(c1):
        M = milnor_model(c1, 0.0, 0.0)
        return d_eta(M)[1, 2] - omega(M)[1, 2]
    g0, g1 = gap(0.0), gap(1.0)
    return float(-g0 / (g1 - g0))


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


# -- model-definition files -------------------------------------------------

def model_to_dict(M: LieModel) -> dict:
    d = M.dim
    entries = []
    for i in range(d):
        for j in range(i + 1, d):
            for k in range(d):
                if M.bracket[i, j, k] != 0.0:
                    entries.append({"i": i, "j": j, "k": k, "c": float(M.bracket[i, j, k])})
    out = {
        "dim": d,
        "xi_index": M.xi_index,
        "phi": [float(v) for v in M.phi.ravel()],
        "brackets": entries,
    }
    if M.name:
        out["name"] = M.name
    return out


def dumps_model(M: LieModel) -> str:
    from .report import dumps
    return dumps(model_to_dict(M))


def dump_model(M: LieModel, path) -> None:
    Path(path).write_text(dumps_model(M) + "\n", encoding="utf-8")


def _require(data: dict, key: str):
    if key not in data:
        raise ModelParseError(f"missing field '{key}'")
    return data[key]


def model_from_dict(data: dict) -> LieModel:
    if not isinstance(data, dict):
        raise ModelParseError("model file must contain a key/value object")
    d = _require(data, "dim")
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise ModelParseError(f"field 'dim': expected positive integer, got {d!r}")
    xi = _require(data, "xi_index")
    if not isinstance(xi, int) or isinstance(xi, bool) or not 0 <= xi < d:
        raise ModelParseError(f"field 'xi_index': expected integer in [0, {d}), got {xi!r}")
    phi = _require(data, "phi")
    if not isinstance(phi, list) or len(phi) != d * d:
        raise ModelParseError(f"field 'phi': expected {d * d} numbers (row-major {d}x{d})")
    try:
        P = np.array([float(v) for v in phi]).reshape(d, d)
    except (TypeError, ValueError) as exc:
        raise ModelParseError(f"field 'phi': {exc}") from None
    entries = _require(data, "brackets")
    if not isinstance(entries, list):
        raise ModelParseError("field 'brackets': expected a list of {i, j, k, c} entries")
    c = np.zeros((d, d, d))
    seen = set()
    for n, ent in enumerate(entries):
        where = f"field 'brackets[{n}]'"
        if not isinstance(ent, dict) or set(ent) != {"i", "j", "k", "c"}:
            raise ModelParseError(f"{where}: expected keys i, j, k, c")
        i, j, k = ent["i"], ent["j"], ent["k"]
        if not all(isinstance(v, int) and not isinstance(v, bool) and 0 <= v < d
                   for v in (i, j, k)):
            raise ModelParseError(f"{where}: indices must be integers in [0, {d})")
        try:
            val = float(ent["c"])
        except (TypeError, ValueError):
            raise ModelParseError(f"{where}: coefficient 'c' is not a number") from None
        if i == j:
            if val != 0.0:
                raise ModelParseError(f"{where}: [e_{i}, e_{i}] must vanish")
            continue
        key = (min(i, j), max(i, j), k)
        sign = 1.0 if i < j else -1.0
        if key in seen and c[key] != sign * val:
            raise ModelParseError(f"{where}: conflicts with an earlier entry for [e_{i}, e_{j}]")
        seen.add(key)
        c[i, j, k], c[j, i, k] = val, -val
    name = data.get("name", "")
    if not isinstance(name, str):
        raise ModelParseError("field 'name': expected a string")
    return LieModel(d, c, P, xi, name=name)


def loads_model(text: str) -> LieModel:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelParseError(f"not valid JSON: {exc}") from None
    return model_from_dict(data)


def load_model(path) -> LieModel:
    return loads_model(Path(path).read_text(encoding="utf-8"))
