"""Verification suites, model reports and parameter sweeps.

Every check is a named residual compared with its own tolerance. The
static :data:`MANIFEST` maps each check name to the identity it verifies;
``run_suite("all")`` must cover the whole manifest.

Reports are serialised by :func:`dumps`: UTF-8 JSON, sorted keys, floats
printed with 17 significant digits, so re-running with the same inputs
gives byte-identical output.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kappa_mu as km
from . import lie, sasakian
from .tensor import (DEFAULT_TOL, CurvatureTensor, constant_curvature, invariants_of,
                     norm_decomposition_residual, validate_symmetries, weakly_einstein_residual,
                     zero_tensor)

SUITES = ("sasakian", "contact-km", "cosym-km", "lie-oracle")


# -- serialisation ------------------------------------------------------------

def _encode(obj, indent: int, level: int) -> str:
    pad = "\n" + " " * (indent * (level + 1)) if indent else ""
    end = "\n" + " " * (indent * level) if indent else ""
    sep = "," + pad if indent else ", "
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            raise ValueError(f"non-finite float {x!r} cannot be serialised")
        text = format(x, ".17g")
        if "e" not in text and "." not in text and "n" not in text:
            text += ".0"
        return text
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{json.dumps(str(k), ensure_ascii=False)}: {_encode(obj[k], indent, level + 1)}"
                 for k in sorted(obj, key=str)]
        return "{" + pad + sep.join(items) + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        items = [_encode(v, indent, level + 1) for v in obj]
        return "[" + pad + sep.join(items) + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """JSON text with sorted keys and 17-significant-digit floats."""
    return _encode(obj, indent, 0)


# -- checks -------------------------------------------------------------------

MANIFEST = {
    # sasakian
    "weyl-xi-square-identity":
        "sum_{i,j,a} W_ija0^2 = 2/(2n-1)^2 [|Ric0|^2 - s^2/(2n(2n+1)) + 2s - 2n(2n+1)]",
    "weyl-xi-einstein-vanishing": "W_ij0l = 0 for Ric = 2n g",
    "weyl-xi-matches-weyl-tensor": "W_ij0l from the Ricci profile equals the Weyl tensor of Heisenberg algebras",
    "scalar-bounds-n1": "-6 <= s <= 6 for n = 1",
    "scalar-bounds-n2": "-220/7 <= s <= 20 for n = 2",
    "scalar-bounds-ordering": "lower < 0 < upper for n <= 6",
    "sphere-upper-bound-witness": "unit sphere: s = 2n(2n+1), W = 0, weakly Einstein (n = 1, 2, 3)",
    "sasakian-trace-identity": "4n = (2s^2/(2n(2n+1)) + 4|Ric0|^2/(2n-1) + |W|^2)/(2n+1)",
    "n1-traceless-rearrangement": "4|Ric0|^2 = 12 - s^2/3 in dimension 3",
    "sphere-weyl-xi-splitting": "|W|^2 = 2 W_ija0 W_ija0 + W_dcab W_dcab on the sphere",
    # contact (kappa, mu)
    "contact-assembly-symmetries": "assembled contact tensors satisfy the Riemann symmetries and Bianchi",
    "contact-breve-xixi": "breve(xi, xi) = 4n(kappa^2 - mu^2(kappa - 1))",
    "contact-riemann-normsq": "|R|^2 closed form from the block table",
    "contact-block-squares": "six horizontal block sums equal the closed-form table",
    "contact-norm-decomposition": "|R|^2 = 2s^2/(d(d-1)) + 4|Ric0|^2/(d-2) + |W|^2",
    "contact-block-splitting": "|R|^2 = 2 breve(xi, xi) + weighted block sums; same split for W",
    "contact-xixi-polynomial-link": "breve(xi,xi) - |R|^2/(2n+1) = 4n/(2n+1) * lambda-form residual",
    "contact-lambda-kappa-forms-agree": "lambda-form and kappa-form residuals coincide",
    "contact-xixi-zero-equivalence": "xi xi residual vanishes exactly where the lambda-form residual does",
    "contact-necessity": "full weakly Einstein residual zero implies lambda-form residual zero",
    "n1-factorisation": "n = 1 zero set is {kappa = 0} U {mu = 0} U {mu = -2}",
    "n1-factor-identity": "n = 1 lambda-form residual equals -(mu + 2) mu kappa",
    "higher-n-no-solution-kappa-in-0-1": "no xi xi weakly Einstein point for n >= 2, 0 < kappa < 1",
    "higher-n-quadratic-positive": "(3n-2) mu^2 - 2(3n-4) mu + 4(n-1) > 0 for n >= 2",
    "higher-n-mu-thresholds": "kappa < 0 solutions have mu beyond (n-2 +- sqrt(9n^2-16n+8))/(2n-1)",
    "mu-threshold-roots": "thresholds are roots of -mu^2(2n-1) + 2mu(n-2) + 4(n-1)",
    "lower-branch-boeckx": "mu below the lower threshold gives I_M > -1",
    # cosymplectic (kappa, mu)
    "cosym-assembly-symmetries": "assembled cosymplectic tensors satisfy the Riemann symmetries and Bianchi",
    "cosym-h-squared": "h^2 = kappa phi^2 in the adapted frame",
    "cosym-breve-xixi": "breve(xi, xi) = 4n(kappa^2 - mu^2 kappa)",
    "cosym-riemann-normsq": "|R|^2 = 4n[(2n+1) kappa^2 - 2 mu^2 kappa]",
    "cosym-block-squares": "horizontal block sums 2n(n-1)kappa^2, n^2 kappa^2, zeros",
    "cosym-horizontal-formula": "R_abcd = -lam_a lam_b [g(e_b,phi e_c) g(e_a,phi e_d) - g(e_a,phi e_c) g(e_b,phi e_d)]",
    "cosym-norm-decomposition": "|R|^2 = 2s^2/(d(d-1)) + 4|Ric0|^2/(d-2) + |W|^2",
    "cosym-block-splitting": "|R|^2 = 2 breve(xi, xi) + weighted block sums; same split for W",
    "cosym-xixi-polynomial-link": "breve(xi,xi) - |R|^2/(2n+1) = -4n mu^2 kappa (2n-1)/(2n+1)",
    "mu-zero-conclusion": "cosymplectic xi xi weakly Einstein zero set is exactly mu = 0",
    "cosym-necessity": "full weakly Einstein residual zero implies mu = 0",
    # Lie oracle
    "g-lambda-oracle-vs-assembly": "Koszul curvature of G_lambda equals the cosymplectic assembly at (-lambda^2, 0)",
    "g-lambda-detect-kappa-mu": "fit of the nullity pattern on G_lambda gives (-lambda^2, 0)",
    "g-lambda-almost-cosymplectic": "G_lambda carries an almost cosymplectic, non-normal structure",
    "g-lambda-weakly-einstein": "G_lambda is weakly Einstein",
    "h-operator-relations": "trace h = 0, h symmetric, phi h = -h phi, h xi = 0 on the catalog",
    "h-eigenvalue-kappa-link": "contact catalog: lambda^2 = 1 - kappa; G_lambda: lambda^2 = -kappa",
    "milnor-contact-calibration": "d eta = omega on the Milnor frame at the frozen c1",
    "milnor-flat-e2": "Milnor (c1, c1, 0) is flat, contact, (kappa, mu) = (0, 0)",
    "milnor-heisenberg-sasakian": "Milnor (c1, 0, 0) is Sasakian with kappa = 1, h = 0",
    "milnor-oracle-vs-assembly": "Koszul curvature of Milnor models equals the contact assembly",
    "three-dim-branch-labels": "branch from signs of 1 -/+ lambda - mu/2 matches the Milnor sign type",
    "lie-catalog-backbone": "symmetries, norm decomposition and block splitting on Lie catalog tensors",
    "constant-curvature-backbone": "symmetries, norm decomposition and weakly Einstein on space forms",
}


@dataclass(frozen=True)
class Check:
    name: str
    suite: str
    residual: float
    tolerance: float
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.residual < self.tolerance)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "suite": self.suite,
            "identity": MANIFEST[self.name],
            "residual": float(self.residual),
            "tolerance": float(self.tolerance),
            "pass": self.passed,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class GridConfig:
    """Grid resolutions and tolerances for the property suites."""

    ns: tuple = (1, 2, 3)
    contact_kappa: tuple = (-2.0, 0.5, 11)
    cosym_kappa: tuple = (-3.0, -0.5, 11)
    mu_values: tuple = (-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0)
    profiles_per_n: int = 50
    profile_ns: tuple = (1, 2, 3, 4)
    identity_tol: float = 1e-9
    symmetry_tol: float = 1e-10
    splitting_tol: float = 1e-10
    n1_kappa: tuple = (-2.0, 0.9, 30)
    n1_mu: tuple = (-3.0, 3.0, 61)
    higher_ns: tuple = (2, 3, 4)
    higher_kappa: tuple = (0.01, 0.99, 25)
    higher_mu: tuple = (-3.0, 3.0, 61)
    emptiness_steps: int = 200
    threshold_mu: tuple = (-6.0, 6.0, 1201)
    cosym_sweep_kappa: tuple = (-4.0, -0.1, 40)
    cosym_sweep_mu: tuple = (-3.0, 3.0, 61)
    g_lambda_ns: tuple = (1, 2, 3)
    g_lambdas: tuple = (0.5, 1.0, 2.0)
    milnor_probes: tuple = ((1.0, 3.0), (3.0, 1.0), (0.5, 0.25), (-1.0, 3.0), (1.0, -3.0),
                            (-0.5, -2.0), (-2.0, -3.0), (2.0, 0.0), (0.0, 2.0), (0.0, -2.0),
                            (-2.0, 0.0), (0.0, -0.5), (1.5, 1.5), (4.0, 0.0), (0.0, 3.0))


DEFAULT_GRID = GridConfig()


def grid_axis(a: float, b: float, steps: int) -> np.ndarray:
    """``steps`` equispaced points from a to b inclusive, rounded to 12 decimals.

    The rounding makes decimal grid points such as 0 or -2 land exactly.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if steps == 1:
        return np.array([float(a)])
    return np.round(np.linspace(a, b, steps), 12)


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(1.0, abs(b))


def _normalised(x: float, normsq: float) -> float:
    return x / max(1.0, normsq)


# -- sasakian suite -----------------------------------------------------------

def sasakian_suite(seed: int, cfg: GridConfig = DEFAULT_GRID) -> list[Check]:
    S = "sasakian"
    rng = np.random.default_rng(seed)
    worst, per_n = 0.0, {}
    for n in cfg.profile_ns:
        res = max(sasakian.weyl_xi_identity_residual(sasakian.random_profile(n, rng))
                  for _ in range(cfg.profiles_per_n))
        per_n[str(n)] = res
        worst = max(worst, res)
    checks = [Check("weyl-xi-square-identity", S, worst, cfg.identity_tol,
                    {"profiles_per_n": cfg.profiles_per_n, "max_by_n": per_n})]

    ein = max(float(np.max(np.abs(sasakian.weyl_xi_components(sasakian.einstein_profile(n)))))
              for n in (1, 2, 3, 4))
    checks.append(Check("weyl-xi-einstein-vanishing", S, ein, cfg.identity_tol))

    # profile route vs the full Weyl tensor of non-Einstein Sasakian Heisenberg algebras
    gap = 0.0
    for n in (1, 2, 3):
        inv = invariants_of(lie.curvature_of(lie.heisenberg_model(n)))
        profile = sasakian.SasakianRicciProfile(n, inv.ricci.comps)
        gap = max(gap, float(np.max(np.abs(
            inv.weyl.comps[:, :, 0, :] - sasakian.weyl_xi_components(profile)))))
    checks.append(Check("weyl-xi-matches-weyl-tensor", S, gap, cfg.identity_tol))

    b1 = sasakian.scalar_bounds(1)
    checks.append(Check("scalar-bounds-n1", S, abs(b1.lower + 6) + abs(b1.upper - 6), 1e-15,
                        {"lower": b1.lower, "upper": b1.upper}))
    b2 = sasakian.scalar_bounds(2)
    checks.append(Check("scalar-bounds-n2", S, abs(b2.lower + 220 / 7) + abs(b2.upper - 20), 1e-12,
                        {"lower": b2.lower, "upper": b2.upper}))
    bad = sum(1 for n in range(1, 7)
              if not sasakian.scalar_bounds(n).lower < 0 < sasakian.scalar_bounds(n).upper)
    checks.append(Check("scalar-bounds-ordering", S, bad, 0.5))

    wit, trace_res, split_res = 0.0, 0.0, 0.0
    for n in (1, 2, 3):
        T, _ = sasakian.sphere_sasakian_tensor(n)
        inv = invariants_of(T)
        up = sasakian.scalar_bounds(n).upper
        wit = max(wit, abs(inv.record.scalar - up), math.sqrt(inv.record.weyl_normsq),
                  weakly_einstein_residual(T).full)
        trace_res = max(trace_res, sasakian.trace_identity_residual(T))
        split_res = max(split_res, km.lemma_decomposition_residual(T, n).weyl)
    checks.append(Check("sphere-upper-bound-witness", S, wit, 1e-10))
    checks.append(Check("sasakian-trace-identity", S, trace_res, cfg.identity_tol))
    checks.append(Check("sphere-weyl-xi-splitting", S, split_res, cfg.splitting_tol))

    rearr = 0.0
    for s in rng.uniform(-6, 6, size=50):
        r0 = sasakian.n1_traceless_normsq(s)
        rearr = max(rearr, sasakian.n1_rearrangement_residual(s, r0),
                    abs((2 * s**2 / 6 + 4 * r0) / 3 - 4))
    checks.append(Check("n1-traceless-rearrangement", S, rearr, 1e-12))
    return checks


# -- (kappa, mu) suites -----------------------------------------------------

@dataclass(frozen=True)
class PointRecord:
    """Tensor-route and closed-form quantities at one (family, n, kappa, mu)."""

    family: str
    n: int
    kappa: float
    mu: float
    symmetry: float
    breve_xixi: float
    riemann_normsq: float
    blocks: dict
    norm_decomposition: float
    split_riemann: float
    split_weyl: float
    we_full: float
    we_xixi: float
    closed: km.ClosedForms
    poly: km.PolynomialResiduals


def evaluate_point(family: str, n: int, kappa: float, mu: float) -> PointRecord:
    p = km.KappaMuParams(family, n, kappa, mu)
    T = km.assemble(p)
    inv = invariants_of(T)
    split = km.lemma_decomposition_residual(T, n)
    we = weakly_einstein_residual(T)
    return PointRecord(
        family, n, float(kappa), float(mu),
        symmetry=validate_symmetries(T).max_residual,
        breve_xixi=inv.record.breve_xixi,
        riemann_normsq=inv.record.riemann_normsq,
        blocks=km.block_squares(T, n),
        norm_decomposition=norm_decomposition_residual(T),
        split_riemann=split.riemann,
        split_weyl=split.weyl,
        we_full=we.full,
        we_xixi=we.xixi,
        closed=km.closed_form_invariants(p),
        poly=km.weakly_einstein_polynomials(p),
    )


def _family_grid(family: str, cfg: GridConfig) -> list[PointRecord]:
    kap = cfg.contact_kappa if family == km.CONTACT else cfg.cosym_kappa
    return [evaluate_point(family, n, k, mu)
            for n in cfg.ns for k in grid_axis(*kap) for mu in cfg.mu_values]


def _fidelity_checks(prefix: str, suite: str, pts: list[PointRecord],
                     cfg: GridConfig) -> list[Check]:
    sym = max(r.symmetry for r in pts)
    breve = max(_rel(r.breve_xixi, r.closed.breve_xixi) for r in pts)
    normsq = max(_rel(r.riemann_normsq, r.closed.riemann_normsq) for r in pts)
    blocks = max(_rel(r.blocks[b], r.closed.block_squares[b]) for r in pts for b in km.BLOCKS)
    decomp = max(_normalised(r.norm_decomposition, r.riemann_normsq) for r in pts)
    split = max(max(r.split_riemann, r.split_weyl) for r in pts)
    npts = {"points": len(pts)}
    return [
        Check(f"{prefix}-assembly-symmetries", suite, sym, cfg.symmetry_tol, npts),
        Check(f"{prefix}-breve-xixi", suite, breve, cfg.identity_tol),
        Check(f"{prefix}-riemann-normsq", suite, normsq, cfg.identity_tol),
        Check(f"{prefix}-block-squares", suite, blocks, cfg.identity_tol),
        Check(f"{prefix}-norm-decomposition", suite, decomp, cfg.identity_tol),
        Check(f"{prefix}-block-splitting", suite, split, cfg.splitting_tol),
    ]


def contact_suite(cfg: GridConfig = DEFAULT_GRID) -> list[Check]:
    S = "contact-km"
    tol = cfg.identity_tol
    pts = _family_grid(km.CONTACT, cfg)
    checks = _fidelity_checks("contact", S, pts, cfg)

    link = max(_rel(r.breve_xixi - r.riemann_normsq / (2 * r.n + 1),
                    4 * r.n / (2 * r.n + 1) * r.poly.lambda_form) for r in pts)
    checks.append(Check("contact-xixi-polynomial-link", S, link, tol))
    agree = max(_rel(r.poly.lambda_form, r.poly.kappa_form) for r in pts)
    checks.append(Check("contact-lambda-kappa-forms-agree", S, agree, 1e-12))
    mismatch = sum(1 for r in pts
                   if (_normalised(r.we_xixi, r.riemann_normsq) < tol) != (abs(r.poly.lambda_form) < tol))
    checks.append(Check("contact-xixi-zero-equivalence", S, mismatch, 0.5,
                        {"zeros": sum(1 for r in pts if abs(r.poly.lambda_form) < tol)}))
    nec = sum(1 for r in pts
              if _normalised(r.we_full, r.riemann_normsq) < tol and not abs(r.poly.lambda_form) < 1e-8)
    checks.append(Check("contact-necessity", S, nec, 0.5,
                        {"full_zeros": sum(1 for r in pts
                                           if _normalised(r.we_full, r.riemann_normsq) < tol)}))

    # n = 1 case split on the sweep grid, tensor route
    kap, mus = grid_axis(*cfg.n1_kappa), grid_axis(*cfg.n1_mu)
    wrong, factor = 0, 0.0
    zeros = 0
    for k in kap:
        for mu in mus:
            r = evaluate_point(km.CONTACT, 1, k, mu)
            is_zero = _normalised(r.we_xixi, r.riemann_normsq) < tol
            expected = abs(k) < tol or abs(mu) < tol or abs(mu + 2) < tol
            zeros += is_zero
            wrong += is_zero != expected
            factor = max(factor, abs(r.poly.lambda_form + r.poly.factored_n1))
    checks.append(Check("n1-factorisation", S, wrong, 0.5,
                        {"grid": [len(kap), len(mus)], "zeros": zeros}))
    checks.append(Check("n1-factor-identity", S, factor, 1e-12))

    # n >= 2, 0 < kappa < 1: tensor route finds no zero
    hits, qneg = 0, 0
    smallest = {}
    for n in cfg.higher_ns:
        low = math.inf
        for k in grid_axis(*cfg.higher_kappa):
            for mu in grid_axis(*cfg.higher_mu):
                r = evaluate_point(km.CONTACT, n, k, mu)
                x = _normalised(r.we_xixi, r.riemann_normsq)
                low = min(low, x)
                hits += x < tol
        # dense polynomial grid: |kappa-form| stays above the quadratic's minimum
        K, M = np.meshgrid(np.linspace(0.0, 1.0, cfg.emptiness_steps + 2)[1:-1],
                           np.linspace(-10.0, 10.0, cfg.emptiness_steps))
        res = np.abs(km.kappa_coefficient(n, M) * K - (n - 1) * (4 + (M - 2)**2))
        qmin = km.emptiness_quadratic_min(n)
        qneg += not (qmin > 0 and np.min(res) >= qmin)
        qneg += int(np.min(km.emptiness_quadratic(n, M)) <= 0)
        smallest[str(n)] = {"tensor_min_xixi": low, "poly_min": float(np.min(res)),
                            "quadratic_min": qmin}
    checks.append(Check("higher-n-no-solution-kappa-in-0-1", S, hits, 0.5, smallest))
    checks.append(Check("higher-n-quadratic-positive", S, qneg, 0.5))

    # n >= 2, kappa < 0: solutions sit beyond the mu thresholds
    bad, roots_checked, root_res = 0, 0, 0.0
    for n in cfg.higher_ns:
        th = km.mu_admissible_bounds(n)
        for mu in grid_axis(*cfg.threshold_mu):
            k = km.kappa_root(n, mu)
            if k is None or not -50.0 <= k < 1.0:
                continue
            if 0 < k < 1:
                bad += 1
                continue
            if k >= 0:
                continue
            roots_checked += 1
            bad += not (mu > th.upper or mu < th.lower)
            r = evaluate_point(km.CONTACT, n, k, mu)
            root_res = max(root_res, _normalised(r.we_xixi, r.riemann_normsq))
    checks.append(Check("higher-n-mu-thresholds", S, bad + (root_res >= tol), 0.5,
                        {"roots_checked": roots_checked, "max_root_xixi": root_res}))

    rr = 0.0
    for n in range(2, 7):
        th = km.mu_admissible_bounds(n)
        rr = max(rr, abs(km.kappa_coefficient(n, th.upper)), abs(km.kappa_coefficient(n, th.lower)))
    checks.append(Check("mu-threshold-roots", S, rr, 1e-12))

    th2 = km.mu_admissible_bounds(2)
    fails = 0
    for k in grid_axis(-10.0, -0.01, 100):
        for mu in grid_axis(th2.lower - 5.0, th2.lower - 1e-6, 100):
            fails += not (mu < 0 and km.boeckx_invariant(k, mu) > -1)
    checks.append(Check("lower-branch-boeckx", S, fails, 0.5))
    return checks


def cosym_suite(cfg: GridConfig = DEFAULT_GRID) -> list[Check]:
    S = "cosym-km"
    tol = cfg.identity_tol
    pts = _family_grid(km.COSYMPLECTIC, cfg)
    checks = _fidelity_checks("cosym", S, pts, cfg)

    hsq, horiz = 0.0, 0.0
    for n in cfg.ns:
        for k in grid_axis(*cfg.cosym_kappa):
            p = km.KappaMuParams(km.COSYMPLECTIC, n, k, 1.0)
            fr = km.frame_of(p)
            hsq = max(hsq, float(np.max(np.abs(fr.h @ fr.h - k * fr.phi @ fr.phi))))
            T = km.assemble(p)
            horiz = max(horiz, float(np.max(np.abs(T.comps[1:, 1:, 1:, 1:]
                                                   - km.cosymplectic_horizontal(p)))))
    checks.insert(1, Check("cosym-h-squared", S, hsq, 1e-12))
    checks.append(Check("cosym-horizontal-formula", S, horiz, cfg.symmetry_tol))

    link = max(_rel(r.breve_xixi - r.riemann_normsq / (2 * r.n + 1), r.poly.cosym) for r in pts)
    checks.append(Check("cosym-xixi-polynomial-link", S, link, tol))

    wrong, zeros = 0, 0
    for n in (1, 2, 3):
        for k in grid_axis(*cfg.cosym_sweep_kappa):
            for mu in grid_axis(*cfg.cosym_sweep_mu):
                r = evaluate_point(km.COSYMPLECTIC, n, k, mu)
                tensor_zero = _normalised(r.we_xixi, r.riemann_normsq) < tol
                poly_zero = abs(r.poly.cosym) < tol
                zeros += tensor_zero
                wrong += (tensor_zero != (abs(mu) < tol)) + (poly_zero != (abs(mu) < tol))
    checks.append(Check("mu-zero-conclusion", S, wrong, 0.5, {"zeros": zeros}))
    nec = sum(1 for r in pts if _normalised(r.we_full, r.riemann_normsq) < tol
              and not (abs(r.poly.cosym) < 1e-8 and abs(r.mu) < tol))
    checks.append(Check("cosym-necessity", S, nec, 0.5,
                        {"full_zeros": sum(1 for r in pts
                                           if _normalised(r.we_full, r.riemann_normsq) < tol)}))
    return checks


# -- Lie oracle suite ---------------------------------------------------------

def milnor_group_type(c1: float, c2: float, c3: float, tol: float = 1e-12) -> str:
    """Unimodular group type from the signs of the Milnor constants."""
    signs = [0 if abs(c) <= tol else (1 if c > 0 else -1) for c in (c1, c2, c3)]
    zeros = signs.count(0)
    if zeros == 0:
        return km.SU2 if len(set(signs)) == 1 else km.SL2
    if zeros == 1:
        nz = [s for s in signs if s]
        return km.E2 if nz[0] == nz[1] else km.E11
    return "Heisenberg" if zeros == 2 else "abelian"


def lie_catalog() -> list[lie.LieModel]:
    c1 = lie.MILNOR_CONTACT_C1
    models = [lie.g_lambda_model(n, lam) for n in (1, 2, 3) for lam in (0.5, 1.0, 2.0)]
    models += [lie.milnor_model(c1, c2, c3) for c2, c3 in DEFAULT_GRID.milnor_probes]
    models += [lie.milnor_model(c1, 0.0, 0.0), lie.milnor_model(c1, c1, 0.0),
               lie.abelian_model(1), lie.abelian_model(2)]
    models += [lie.heisenberg_model(n) for n in (1, 2, 3)]
    return models


def h_relations_residual(M: lie.LieModel) -> float:
    h, P, xi = lie.h_operator(M), M.phi, M.eta
    return max(abs(float(np.trace(h))), float(np.max(np.abs(h - h.T))),
               float(np.max(np.abs(P @ h + h @ P))), float(np.max(np.abs(h @ xi))))


def lie_suite(cfg: GridConfig = DEFAULT_GRID) -> list[Check]:
    S = "lie-oracle"
    tol = cfg.identity_tol
    oracle, detect, label_bad, we = 0.0, 0.0, 0, 0.0
    for n in cfg.g_lambda_ns:
        for lam in cfg.g_lambdas:
            M = lie.g_lambda_model(n, lam)
            R = lie.curvature_of(M)
            h = lie.h_operator(M)
            frame, _ = lie.adapted_frame(h, M.phi)
            T = km.assemble(km.KappaMuParams(km.COSYMPLECTIC, n, -lam**2, 0.0))
            oracle = max(oracle, float(np.max(np.abs(R.rotated(frame).comps - T.comps))))
            fit = lie.detect_kappa_mu(R, h)
            detect = max(detect, abs(fit.kappa + lam**2), abs(fit.mu or 0.0), fit.residual,
                         0.0 if fit.mu_determined else 1.0)
            cls = lie.exterior_and_classify(M)
            label_bad += cls.label != "almost-cosymplectic" or cls.normal
            we = max(we, _normalised(weakly_einstein_residual(R).full,
                                     invariants_of(R).record.riemann_normsq))
    checks = [
        Check("g-lambda-oracle-vs-assembly", S, oracle, tol),
        Check("g-lambda-detect-kappa-mu", S, detect, tol),
        Check("g-lambda-almost-cosymplectic", S, label_bad, 0.5),
        Check("g-lambda-weakly-einstein", S, we, tol),
    ]

    catalog = lie_catalog()
    checks.append(Check("h-operator-relations", S,
                        max(h_relations_residual(M) for M in catalog), 1e-12))

    c1 = lie.MILNOR_CONTACT_C1
    calib = abs(lie.calibrate_milnor_contact() - c1)
    calib = max(calib, float(np.max(np.abs(lie.d_eta(lie.milnor_model(c1, 0, 0))
                                           - lie.omega(lie.milnor_model(c1, 0, 0))))))
    checks.append(Check("milnor-contact-calibration", S, calib, 1e-12, {"c1": c1}))

    flat = lie.milnor_model(c1, c1, 0.0)
    Rf = lie.curvature_of(flat)
    fit = lie.detect_kappa_mu(Rf, lie.h_operator(flat))
    flat_res = max(float(np.max(np.abs(Rf.comps))), abs(fit.kappa), abs(fit.mu or 0.0),
                   0.0 if lie.exterior_and_classify(flat).label == "contact-metric" else 1.0,
                   0.0 if km.classify_3dim(fit.kappa, fit.mu or 0.0).flat else 1.0)
    checks.append(Check("milnor-flat-e2", S, flat_res, tol, {"model": flat.name}))

    heis = lie.milnor_model(c1, 0.0, 0.0)
    Rh = lie.curvature_of(heis)
    hh = lie.h_operator(heis)
    fit = lie.detect_kappa_mu(Rh, hh)
    cls = lie.exterior_and_classify(heis)
    heis_res = max(abs(fit.kappa - 1), float(np.max(np.abs(hh))), fit.residual,
                   0.0 if cls.sasakian else 1.0, 0.0 if fit.mu is None else 1.0)
    checks.append(Check("milnor-heisenberg-sasakian", S, heis_res, tol,
                        {"model": heis.name, "max_curvature": float(np.max(np.abs(Rh.comps)))}))

    oracle_m, link, mism = 0.0, 0.0, []
    for c2, c3 in cfg.milnor_probes:
        M = lie.milnor_model(c1, c2, c3)
        R = lie.curvature_of(M)
        h = lie.h_operator(M)
        fit = lie.detect_kappa_mu(R, h)
        frame, lam = lie.adapted_frame(h, M.phi)
        mu = fit.mu if fit.mu is not None else 0.0
        if lam > 0:
            T = km.assemble(km.KappaMuParams(km.CONTACT, 1, fit.kappa, mu))
            oracle_m = max(oracle_m, float(np.max(np.abs(R.rotated(frame).comps - T.comps))))
        oracle_m = max(oracle_m, fit.residual)
        link = max(link, abs(fit.kappa - (1 - lam**2)))
        expected = milnor_group_type(c1, c2, c3) if lam > 0 else km.SASAKIAN
        got = km.classify_3dim(fit.kappa, mu).label
        if expected != got:
            mism.append({"c2": c2, "c3": c3, "expected": expected, "got": got})
    for n in cfg.g_lambda_ns:
        for lam_ in cfg.g_lambdas:
            M = lie.g_lambda_model(n, lam_)
            _, lam = lie.adapted_frame(lie.h_operator(M), M.phi)
            link = max(link, abs(lam**2 - lam_**2))
    checks.append(Check("milnor-oracle-vs-assembly", S, oracle_m, tol))
    checks.append(Check("h-eigenvalue-kappa-link", S, link, tol))
    checks.append(Check("three-dim-branch-labels", S, len(mism), 0.5,
                        {"probes": len(cfg.milnor_probes), "mismatches": mism}))

    backbone = 0.0
    for M in catalog:
        R = lie.curvature_of(M)
        n = (M.dim - 1) // 2
        normsq = invariants_of(R).record.riemann_normsq
        split = km.lemma_decomposition_residual(R, n)
        backbone = max(backbone, validate_symmetries(R).max_residual,
                       _normalised(norm_decomposition_residual(R), normsq),
                       split.riemann, split.weyl)
    checks.append(Check("lie-catalog-backbone", S, backbone, 1e-10, {"models": len(catalog)}))

    cc = 0.0
    for d in (3, 5, 7, 9, 11, 13):
        for c in (-2.0, 0.0, 1.0, 2.5):
            T = constant_curvature(d, c)
            normsq = invariants_of(T).record.riemann_normsq
            cc = max(cc, validate_symmetries(T).max_residual,
                     _normalised(norm_decomposition_residual(T), normsq),
                     weakly_einstein_residual(T).full,
                     km.lemma_decomposition_residual(T, (d - 1) // 2).riemann,
                     km.lemma_decomposition_residual(T, (d - 1) // 2).weyl)
    cc = max(cc, norm_decomposition_residual(zero_tensor(5)))
    checks.append(Check("constant-curvature-backbone", S, cc, 1e-10))
    return checks


SUITE_RUNNERS = {
    "sasakian": lambda seed, cfg: sasakian_suite(seed, cfg),
    "contact-km": lambda seed, cfg: contact_suite(cfg),
    "cosym-km": lambda seed, cfg: cosym_suite(cfg),
    "lie-oracle": lambda seed, cfg: lie_suite(cfg),
}


def run_suite(suite: str, seed: int = 0, cfg: GridConfig = DEFAULT_GRID) -> list[Check]:
    if suite == "all":
        return [c for s in SUITES for c in SUITE_RUNNERS[s](seed, cfg)]
    if suite not in SUITE_RUNNERS:
        raise ValueError(f"unknown suite {suite!r}; choose from all, {', '.join(SUITES)}")
    return SUITE_RUNNERS[suite](seed, cfg)


def verify_summary(suite: str, seed: int = 0, cfg: GridConfig = DEFAULT_GRID) -> dict:
    checks = run_suite(suite, seed, cfg)
    return {
        "suite": suite,
        "seed": seed,
        "checks": [c.as_dict() for c in checks],
        "pass": all(c.passed for c in checks),
        "failed": [c.name for c in checks if not c.passed],
    }


# -- single-model reports -----------------------------------------------------

class SpecError(ValueError):
    """Unparseable catalog name or invalid model parameters."""


@dataclass(frozen=True)
class BuiltModel:
    model_id: str
    kind: str
    tensor: CurvatureTensor
    h: np.ndarray
    phi: np.ndarray
    lie_model: lie.LieModel | None = None
    params: km.KappaMuParams | None = None


def _parse_args(spec: str, names: tuple, types: tuple) -> list:
    parts = spec.split(":")
    head, args = parts[0], parts[1:]
    if len(args) != len(names):
        raise SpecError(f"'{head}' expects {len(names)} parameters "
                        f"({':'.join(names)}), got {len(args)}")
    out = []
    for name, typ, raw in zip(names, types, args):
        try:
            val = typ(raw)
        except ValueError:
            raise SpecError(f"parameter '{name}': cannot parse {raw!r} as {typ.__name__}") from None
        if typ is float and not math.isfinite(val):
            raise SpecError(f"parameter '{name}': must be finite")
        out.append(val)
    return out


def _from_lie(M: lie.LieModel, model_id: str) -> BuiltModel:
    try:
        M.check()
    except lie.ModelError as exc:
        raise SpecError(str(exc)) from None
    return BuiltModel(model_id, "lie", lie.curvature_of(M), lie.h_operator(M), M.phi, lie_model=M)


def _from_params(kind: str, family: str, spec: str) -> BuiltModel:
    n, kappa, mu = _parse_args(spec, ("n", "kappa", "mu"), (int, float, float))
    try:
        p = km.KappaMuParams(family, n, kappa, mu)
    except km.ParameterError as exc:
        raise SpecError(str(exc)) from None
    fr = km.frame_of(p)
    return BuiltModel(spec, kind, km.assemble(p), fr.h, fr.phi, params=p)


def build_model(spec: str) -> BuiltModel:
    """Build a model from a catalog name or a model-definition file path."""
    head = spec.split(":")[0]
    if head == "g-lambda":
        n, lam = _parse_args(spec, ("n", "lambda"), (int, float))
        try:
            return _from_lie(lie.g_lambda_model(n, lam), spec)
        except lie.ModelError as exc:
            raise SpecError(str(exc)) from None
    if head == "milnor":
        c = _parse_args(spec, ("c1", "c2", "c3"), (float, float, float))
        return _from_lie(lie.milnor_model(*c), spec)
    if head == "sphere":
        (n,) = _parse_args(spec, ("n",), (int,))
        if n < 1:
            raise SpecError("parameter 'n': must be >= 1")
        T, fr = sasakian.sphere_sasakian_tensor(n)
        return BuiltModel(spec, "sphere", T, np.zeros((fr.dim, fr.dim)), fr.phi)
    if head == "contact-km":
        return _from_params("contact-km", km.CONTACT, spec)
    if head == "cosym-km":
        return _from_params("cosym-km", km.COSYMPLECTIC, spec)
    try:
        M = lie.load_model(spec)
    except FileNotFoundError:
        raise SpecError(f"'{spec}' is neither a catalog name "
                        "(g-lambda, milnor, sphere, contact-km, cosym-km) nor a model file") from None
    return _from_lie(M, M.name or spec)


# Residuals that measure whether the model has a property (weakly Einstein,
# and the trace identity that only weakly Einstein Sasakian models satisfy)
# rather than whether the code is consistent. They are reported with a pass
# flag but do not decide the exit status.
PROPERTY_RESIDUALS = frozenset({"weakly-einstein-full", "weakly-einstein-xixi",
                                "sasakian-trace-identity"})


def model_report(spec: str, tol: float = DEFAULT_TOL, seed: int = 0) -> dict:
    """Run every applicable check on one model."""
    bm = build_model(spec)
    T = bm.tensor
    d = T.dim
    xi = bm.lie_model.xi_index if bm.lie_model is not None else 0
    inv = invariants_of(T, xi_index=xi)
    normsq = inv.record.riemann_normsq
    residuals: dict[str, float] = {}
    residuals["symmetries"] = validate_symmetries(T).max_residual
    residuals["norm-decomposition"] = _normalised(norm_decomposition_residual(T), normsq)
    we = weakly_einstein_residual(T, xi_index=xi)
    residuals["weakly-einstein-full"] = _normalised(we.full, normsq)
    residuals["weakly-einstein-xixi"] = _normalised(we.xixi, normsq)

    fit = lie.detect_kappa_mu(T, bm.h, xi, tol=tol)
    detected = None
    if fit.valid:
        _, lam = lie.adapted_frame(bm.h, bm.phi, xi)
        detected = {"kappa": fit.kappa, "mu": fit.mu, "lambda": lam, "fit_residual": fit.residual}
    residuals["kappa-mu-fit"] = fit.residual

    structure = None
    if bm.lie_model is not None:
        sc = lie.exterior_and_classify(bm.lie_model, tol=tol)
        structure = {"label": sc.label, "normal": sc.normal, "sasakian": sc.sasakian,
                     "residuals": sc.residuals}
    elif bm.kind == "contact-km":
        structure = {"label": "contact-metric", "normal": False, "sasakian": False, "residuals": {}}
    elif bm.kind == "cosym-km":
        structure = {"label": "almost-cosymplectic", "normal": False, "sasakian": False,
                     "residuals": {}}
    else:
        structure = {"label": "contact-metric", "normal": True, "sasakian": True, "residuals": {}}

    if xi == 0 and d % 2 == 1 and fit.valid:
        frame, _ = lie.adapted_frame(bm.h, bm.phi, xi)
        split = km.lemma_decomposition_residual(T.rotated(frame), (d - 1) // 2)
        residuals["block-splitting-riemann"] = split.riemann
        residuals["block-splitting-weyl"] = split.weyl

    if xi == 0 and sasakian.sasakian_pattern_residual(T) < tol:
        residuals["sasakian-trace-identity"] = sasakian.trace_identity_residual(T, tol)
        n = (d - 1) // 2
        bounds = sasakian.scalar_bounds(n)
        in_window = bounds.lower - tol <= inv.record.scalar <= bounds.upper + tol
        residuals["scalar-window"] = 0.0 if in_window or we.full >= tol else 1.0

    if bm.params is not None:
        cf = km.closed_form_invariants(bm.params)
        residuals["closed-form-breve-xixi"] = _rel(inv.record.breve_xixi, cf.breve_xixi)
        residuals["closed-form-riemann-normsq"] = _rel(normsq, cf.riemann_normsq)
        blocks = km.block_squares(T, bm.params.n)
        residuals["closed-form-block-squares"] = max(
            _rel(blocks[b], cf.block_squares[b]) for b in km.BLOCKS)

    classification = {"structure": structure, "branch_3dim": None, "flat": None, "boeckx": None}
    if detected is not None and fit.kappa <= 1 + tol:
        mu = fit.mu if fit.mu is not None else 0.0
        contactish = structure["label"] == "contact-metric"
        if d == 3 and contactish:
            br = km.classify_3dim(fit.kappa, mu, tol)
            classification["branch_3dim"] = br.label
            classification["flat"] = br.flat
        if contactish and fit.kappa < 1 - tol and fit.mu is not None:
            I = km.boeckx_invariant(fit.kappa, fit.mu)
            classification["boeckx"] = {"value": I, "greater_than_minus_one": I > -1}

    checks_pass = all(v < tol for k, v in residuals.items() if k not in PROPERTY_RESIDUALS)
    return {
        "model_id": bm.model_id,
        "properties": sorted(k for k in residuals if k in PROPERTY_RESIDUALS),
        "checks_pass": checks_pass,
        "kind": bm.kind,
        "dim": d,
        "invariants": inv.record.as_dict(),
        "residuals": residuals,
        "pass": {k: bool(v < tol) for k, v in residuals.items()},
        "detected": detected,
        "classification": classification,
        "tolerance": tol,
        "seed": seed,
    }


# -- sweeps -------------------------------------------------------------------

def _sweep_point(args) -> dict:
    family, n, k, mu, tol = args
    r = evaluate_point(family, n, k, mu)
    poly = {
        "lambda_form": r.poly.lambda_form, "kappa_form": r.poly.kappa_form,
        "factored_n1": r.poly.factored_n1, "cosym": r.poly.cosym,
    }
    primary = r.poly.primary
    return {
        "kappa": r.kappa,
        "mu": r.mu,
        "polynomial": {k_: v for k_, v in poly.items() if v is not None},
        "weakly_einstein_full": _normalised(r.we_full, r.riemann_normsq),
        "weakly_einstein_xixi": _normalised(r.we_xixi, r.riemann_normsq),
        "polynomial_zero": bool(abs(primary) < tol),
        "xixi_zero": bool(_normalised(r.we_xixi, r.riemann_normsq) < tol),
        "full_zero": bool(_normalised(r.we_full, r.riemann_normsq) < tol),
    }


def parse_range(text: str) -> tuple[float, float]:
    """Parse ``A..B`` into floats."""
    parts = text.split("..")
    if len(parts) != 2:
        raise SpecError(f"range {text!r} must look like A..B")
    try:
        a, b = float(parts[0]), float(parts[1])
    except ValueError:
        raise SpecError(f"range {text!r} has non-numeric endpoints") from None
    if not (math.isfinite(a) and math.isfinite(b)) or a > b:
        raise SpecError(f"range {text!r} is empty or not finite")
    return a, b


def sweep(family: str, n: int, kappa: tuple, mu: tuple, steps: int,
          tol: float = DEFAULT_TOL, jobs: int = 1) -> dict:
    """Evaluate the weakly Einstein residuals on a (kappa, mu) grid."""
    fam = {"contact": km.CONTACT, "contact-km": km.CONTACT, "cosym": km.COSYMPLECTIC,
           "cosym-km": km.COSYMPLECTIC, km.COSYMPLECTIC: km.COSYMPLECTIC}.get(family)
    if fam is None:
        raise SpecError(f"unknown family {family!r}; use contact or cosym")
    if n < 1:
        raise SpecError("n must be >= 1")
    if steps < 1:
        raise SpecError("steps must be >= 1")
    limit = 1.0 if fam == km.CONTACT else 0.0
    if not kappa[1] < limit:
        raise SpecError(f"kappa range must lie strictly below {limit:g} for the {fam} family")
    kap = grid_axis(kappa[0], kappa[1], steps)
    mus = grid_axis(mu[0], mu[1], steps)
    tasks = [(fam, n, float(k), float(m), tol) for k in kap for m in mus]
    try:
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as ex:
                points = list(ex.map(_sweep_point, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
        else:
            points = [_sweep_point(t) for t in tasks]
    except km.ParameterError as exc:
        raise SpecError(str(exc)) from None
    out = {
        "family": fam,
        "n": n,
        "grid": {"kappa": [kappa[0], kappa[1]], "mu": [mu[0], mu[1]], "steps": steps},
        "tolerance": tol,
        "points": points,
        "zero_count": {
            "polynomial": sum(p["polynomial_zero"] for p in points),
            "xixi": sum(p["xixi_zero"] for p in points),
            "full": sum(p["full_zero"] for p in points),
        },
        "mu_thresholds": None,
    }
    if fam == km.CONTACT and n >= 2:
        th = km.mu_admissible_bounds(n)
        out["mu_thresholds"] = {"upper": th.upper, "lower": th.lower}
    return out
