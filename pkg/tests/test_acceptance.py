"""One test per acceptance criterion, each printing a single pass/fail line.

Run directly (``python3 tests/test_acceptance.py``) or through pytest, which
repeats the lines in an "acceptance criteria" summary section.
"""

import math
import shutil
import subprocess
import sys
import time

import numpy as np

from curvlab import kappa_mu as km
from curvlab import lie, report, sasakian as sk
from curvlab.tensor import (constant_curvature, invariants_of, norm_decomposition_residual,
                            validate_symmetries, weakly_einstein_residual)
from conftest import record_criterion

C1 = lie.MILNOR_CONTACT_C1


def _xixi(T):
    return weakly_einstein_residual(T).xixi / max(1.0, invariants_of(T).record.riemann_normsq)


def test_criterion_1_sasakian_identity():
    rng = np.random.default_rng(7)
    start = time.perf_counter()
    worst = max(sk.weyl_xi_identity_residual(sk.random_profile(n, rng))
                for n in (1, 2, 3, 4) for _ in range(50))
    elapsed = time.perf_counter() - start
    ok = worst < 1e-9 and elapsed < 1.0
    assert record_criterion(1, ok, f"Weyl xi identity max residual {worst:.2e} over 200 profiles "
                                   f"in {elapsed:.3f}s")


def test_criterion_2_scalar_window():
    b1, b2 = sk.scalar_bounds(1), sk.scalar_bounds(2)
    ok = (b1.lower, b1.upper) == (-6.0, 6.0)
    ok &= abs(b2.lower + 220 / 7) < 1e-12 and abs(b2.upper - 20) < 1e-12
    worst = 0.0
    for n in (1, 2, 3):
        T, _ = sk.sphere_sasakian_tensor(n)
        rec = invariants_of(T).record
        ok &= abs(rec.scalar - sk.scalar_bounds(n).upper) < 1e-12
        w = max(math.sqrt(rec.weyl_normsq), weakly_einstein_residual(T).full)
        ok &= w < 1e-10
        worst = max(worst, w)
    assert record_criterion(2, ok, f"bounds (-6, 6), (-220/7, 20); sphere |W| and weakly "
                                   f"Einstein residual <= {worst:.1e}")


def test_criterion_3_assembly_fidelity():
    sym = rel = 0.0
    count = 0
    for fam, kap in ((km.CONTACT, (-2.0, 0.5)), (km.COSYMPLECTIC, (-3.0, -0.5))):
        for n in (1, 2, 3):
            for k in np.linspace(*kap, 11):
                for mu in (-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0):
                    p = km.KappaMuParams(fam, n, float(k), mu)
                    T = km.assemble(p)
                    rec = invariants_of(T).record
                    cf = km.closed_form_invariants(p)
                    sym = max(sym, validate_symmetries(T).max_residual)
                    rel = max(rel, abs(rec.breve_xixi - cf.breve_xixi) / max(1.0, abs(cf.breve_xixi)),
                              abs(rec.riemann_normsq - cf.riemann_normsq) / max(1.0, cf.riemann_normsq))
                    count += 1
    ok = count == 462 and sym < 1e-10 and rel < 1e-9
    assert record_criterion(3, ok, f"{count} tensors: symmetry/Bianchi {sym:.1e}, closed-form "
                                   f"relative error {rel:.1e}")


def test_criterion_4_case_splits():
    tol = 1e-9
    # n = 1 contact: zero set on the sweep grid
    sw = report.sweep("contact", 1, (-2.0, 0.4), (-3.0, 3.0), 61)
    n1_bad = sum(p["xixi_zero"] != (abs(p["kappa"]) < tol or abs(p["mu"]) < tol
                                    or abs(p["mu"] + 2) < tol) for p in sw["points"])
    n1_zeros = sum(p["xixi_zero"] for p in sw["points"])
    # n >= 2, 0 < kappa < 1: empty
    empty_hits = 0
    for n in (2, 3, 4):
        sw = report.sweep("contact", n, (0.01, 0.99), (-3.0, 3.0), 40)
        empty_hits += sw["zero_count"]["xixi"] + sw["zero_count"]["polynomial"]
    # kappa < 0: every root lies beyond the thresholds and is a tensor-route zero
    thr_bad, roots = 0, 0
    for n in (2, 3, 4):
        th = km.mu_admissible_bounds(n)
        for mu in np.linspace(-6, 6, 241):
            k = km.kappa_root(n, float(mu))
            if k is None or not -50 < k < 0:
                continue
            roots += 1
            T = km.assemble(km.KappaMuParams(km.CONTACT, n, k, float(mu)))
            thr_bad += not (mu > th.upper or mu < th.lower) or _xixi(T) >= tol
    # cosymplectic: exactly mu = 0
    sw = report.sweep("cosym", 2, (-4.0, -0.1), (-3.0, 3.0), 61)
    cos_bad = sum(p["xixi_zero"] != (abs(p["mu"]) < tol) for p in sw["points"])
    cos_zeros = sum(p["xixi_zero"] for p in sw["points"])
    ok = n1_bad == 0 and n1_zeros > 0 and empty_hits == 0 and thr_bad == 0 and roots > 0 \
        and cos_bad == 0 and cos_zeros == 61
    assert record_criterion(4, ok, f"n=1 mismatches {n1_bad} ({n1_zeros} zeros); n>=2 0<kappa<1 "
                                   f"zeros {empty_hits}; threshold violations {thr_bad}/{roots}; "
                                   f"cosym mismatches {cos_bad} ({cos_zeros} zeros)")


def test_criterion_5_g_lambda_oracle():
    comp = fit_err = we = 0.0
    labels_ok = True
    for n in (1, 2, 3):
        for lam in (0.5, 1.0, 2.0):
            M = lie.g_lambda_model(n, lam)
            R = lie.curvature_of(M)
            h = lie.h_operator(M)
            E, _ = lie.adapted_frame(h, M.phi)
            T = km.assemble(km.KappaMuParams(km.COSYMPLECTIC, n, -lam**2, 0.0))
            comp = max(comp, float(np.max(np.abs(R.rotated(E).comps - T.comps))))
            fit = lie.detect_kappa_mu(R, h)
            fit_err = max(fit_err, abs(fit.kappa + lam**2), abs(fit.mu), fit.residual)
            labels_ok &= lie.exterior_and_classify(M).label == "almost-cosymplectic"
            we = max(we, weakly_einstein_residual(R).full)
    ok = comp < 1e-9 and fit_err < 1e-9 and labels_ok and we < 1e-9
    assert record_criterion(5, ok, f"componentwise {comp:.1e}, fit {fit_err:.1e}, "
                                   f"almost-cosymplectic {labels_ok}, weakly Einstein {we:.1e}")


def test_criterion_6_three_dim_catalog():
    # Stated literally: milnor(c1*, 0, 0) contact, flat, (kappa, mu) = (0, 0).
    # This is the Heisenberg algebra (Sasakian, kappa = 1) and is expected to FAIL;
    # the flat point is milnor(c1*, c1*, 0), see the decisions ledger.
    M = lie.milnor_model(C1, 0.0, 0.0)
    R = lie.curvature_of(M)
    fit = lie.detect_kappa_mu(R, lie.h_operator(M))
    contact = lie.exterior_and_classify(M).label == "contact-metric"
    curv = float(np.max(np.abs(R.comps)))
    mu = fit.mu if fit.mu is not None else 0.0
    literal = contact and curv < 1e-9 and abs(fit.kappa) < 1e-9 and abs(mu) < 1e-9
    probes = [(1.0, 0.0, km.SASAKIAN), (0.75, 0.0, km.SU2), (0.5, 1.0, km.SL2),
              (0.0, 0.0, km.E2), (-3.0, 6.0, km.E11), (-3.0, -2.0, km.E2), (-3.0, 7.0, km.SL2),
              (-0.5, 0.5, km.SL2), (0.96, 1.5, km.SU2)]
    branch_ok = all(km.classify_3dim(k, m).label == lab for k, m, lab in probes)
    branch_ok &= km.classify_3dim(0.0, 0.0).flat
    ok = literal and branch_ok
    assert record_criterion(6, ok, f"milnor({C1:g},0,0): contact {contact}, max|R| {curv:.3g}, "
                                   f"kappa {fit.kappa:.3g}, mu {fit.mu}; branch probes "
                                   f"{'ok' if branch_ok else 'FAIL'}")


def test_criterion_7_backbone():
    tensors = []
    for d in (3, 5, 7, 9, 11, 13):
        for c in (-1.0, 0.0, 2.0):
            tensors.append((constant_curvature(d, c), (d - 1) // 2))
    for fam, ks in ((km.CONTACT, (-2.0, 0.0, 0.5)), (km.COSYMPLECTIC, (-3.0, -1.0, -0.5))):
        for n in (1, 2, 3, 4, 5, 6):
            for k in ks:
                for mu in (-2.0, 0.0, 1.5):
                    tensors.append((km.assemble(km.KappaMuParams(fam, n, k, mu)), n))
    for M in report.lie_catalog():
        R = lie.curvature_of(M)
        E, _ = lie.adapted_frame(lie.h_operator(M), M.phi)
        tensors.append((R.rotated(E), (M.dim - 1) // 2))
    eq = lem = 0.0
    for T, n in tensors:
        normsq = invariants_of(T).record.riemann_normsq
        eq = max(eq, norm_decomposition_residual(T) / (1e-9 * max(1.0, normsq)))
        r = km.lemma_decomposition_residual(T, n)
        lem = max(lem, r.riemann, r.weyl)
    ok = eq < 1 and lem < 1e-10
    assert record_criterion(7, ok, f"{len(tensors)} tensors: norm decomposition at {eq:.1e} of "
                                   f"budget, block splittings {lem:.1e}")


def test_criterion_8_determinism():
    exe = shutil.which("curvlab")
    cmd = [exe] if exe else [sys.executable, "-m", "curvlab"]
    runs = [subprocess.run(cmd + ["verify", "--suite", "all", "--seed", "7"],
                           capture_output=True, check=False) for _ in range(2)]
    codes = [r.returncode for r in runs]
    same = runs[0].stdout == runs[1].stdout and len(runs[0].stdout) > 0
    ok = codes == [0, 0] and same
    assert record_criterion(8, ok, f"exit codes {codes}, byte-identical {same}")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
