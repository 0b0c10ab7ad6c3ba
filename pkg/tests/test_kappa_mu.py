import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from curvlab import kappa_mu as km
from curvlab.tensor import constant_curvature, invariants_of, validate_symmetries, weakly_einstein_residual


def contact(n, k, mu):
    return km.KappaMuParams(km.CONTACT, n, k, mu)


def cosym(n, k, mu):
    return km.KappaMuParams(km.COSYMPLECTIC, n, k, mu)


def test_parameter_validation():
    with pytest.raises(km.ParameterError, match="kappa must be < 1"):
        contact(2, 1.5, 0.0)
    with pytest.raises(km.ParameterError, match="kappa must be < 0"):
        cosym(2, 0.0, 0.0)
    with pytest.raises(km.ParameterError, match="n must be"):
        contact(0, 0.0, 0.0)
    with pytest.raises(km.ParameterError, match="lambda"):
        contact(1, 1 - 1e-14, 0.0)


def test_unit_tangent_bundle_point_is_product():
    # (kappa, mu) = (0, 0) in dimension 5 is flat R^3 x S^2(4): |R|^2 = 2*16*2
    T = km.assemble(contact(2, 0.0, 0.0))
    rec = invariants_of(T).record
    assert rec.riemann_normsq == pytest.approx(64.0)
    assert rec.breve_xixi == pytest.approx(0.0, abs=1e-14)
    assert km.closed_form_invariants(contact(2, 0.0, 0.0)).block_squares["abcd"] == 64.0


# frozen hand-computed oracle values
@pytest.mark.parametrize("p,breve,normsq", [
    (contact(1, 0.5, 1.0), 3.0, None),
    (contact(2, 0.0, 0.0), 0.0, 64.0),
    (cosym(2, -1.0, 0.5), 10.0, 44.0),
    (cosym(1, -4.0, 0.0), 64.0, 192.0),
])
def test_closed_form_oracles(p, breve, normsq):
    cf = km.closed_form_invariants(p)
    rec = invariants_of(km.assemble(p)).record
    assert cf.breve_xixi == pytest.approx(breve)
    assert rec.breve_xixi == pytest.approx(breve)
    if normsq is not None:
        assert cf.riemann_normsq == pytest.approx(normsq)
        assert rec.riemann_normsq == pytest.approx(normsq)


def test_polynomial_oracles():
    assert km.xixi_lambda_form(1, 0.5, 1.0) == pytest.approx(-1.5)
    assert km.xixi_lambda_form(2, 0.0, 0.0) == pytest.approx(-8.0)
    assert km.xixi_kappa_form(2, 0.0, 0.0) == pytest.approx(-8.0)
    assert km.emptiness_quadratic_min(2) == pytest.approx(3.0)
    th = km.mu_admissible_bounds(2)
    assert (th.upper, th.lower) == pytest.approx((2 / math.sqrt(3), -2 / math.sqrt(3)))
    th3 = km.mu_admissible_bounds(3)
    assert (th3.upper, th3.lower) == pytest.approx(((1 + math.sqrt(41)) / 5, (1 - math.sqrt(41)) / 5))
    with pytest.raises(ValueError):
        km.mu_admissible_bounds(1)


@pytest.mark.parametrize("p", [contact(n, k, mu) for n in (1, 2, 3) for k in (-1.5, 0.3)
                               for mu in (-2.0, 0.7)]
                         + [cosym(n, k, mu) for n in (1, 2, 3) for k in (-2.0, -0.4) for mu in (0.0, 1.3)])
def test_assembly_fidelity(p):
    T = km.assemble(p)
    assert validate_symmetries(T, tol=1e-10).valid
    cf = km.closed_form_invariants(p)
    rec = invariants_of(T).record
    assert rec.breve_xixi == pytest.approx(cf.breve_xixi, rel=1e-9, abs=1e-9)
    assert rec.riemann_normsq == pytest.approx(cf.riemann_normsq, rel=1e-9, abs=1e-9)
    blocks = km.block_squares(T, p.n)
    for b in km.BLOCKS:
        assert blocks[b] == pytest.approx(cf.block_squares[b], rel=1e-9, abs=1e-9)
    split = km.lemma_decomposition_residual(T, p.n)
    assert split.riemann < 1e-10 and split.weyl < 1e-10


def test_nullity_condition_holds():
    p = contact(2, -0.5, 1.5)
    T = km.assemble(p)
    fr = km.frame_of(p)
    np.testing.assert_allclose(T.comps[:, :, 0, :],
                               km.nullity_components(p.dim, p.kappa, p.mu, fr.h), atol=1e-14)


def test_cosymplectic_horizontal_formula():
    p = cosym(2, -2.0, 0.4)
    np.testing.assert_allclose(km.assemble(p).comps[1:, 1:, 1:, 1:],
                               km.cosymplectic_horizontal(p), atol=1e-14)


def test_cosym_formula_vanishes_at_origin():
    fr = km.AdaptedFrame(2, 0.0)
    assert np.max(np.abs(km.cosymplectic_curvature(0.0, 0.0, fr.h, fr.phi))) == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.floats(-5, 0.95), st.floats(-4, 4))
def test_contact_xixi_link(n, k, mu):
    p = contact(n, k, mu)
    rec = invariants_of(km.assemble(p)).record
    gap = rec.breve_xixi - rec.riemann_normsq / (2 * n + 1)
    poly = km.weakly_einstein_polynomials(p)
    assert gap == pytest.approx(4 * n / (2 * n + 1) * poly.lambda_form, rel=1e-9, abs=1e-9)
    assert poly.kappa_form == pytest.approx(poly.lambda_form, rel=1e-12, abs=1e-12)
    if n == 1:
        assert poly.lambda_form == pytest.approx(-poly.factored_n1, rel=1e-12, abs=1e-12)
        assert gap == pytest.approx(weakly_einstein_residual(km.assemble(p)).xixi
                                    * np.sign(gap), rel=1e-9, abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.floats(-5, -0.01), st.floats(-4, 4))
def test_cosym_xixi_link(n, k, mu):
    p = cosym(n, k, mu)
    rec = invariants_of(km.assemble(p)).record
    gap = rec.breve_xixi - rec.riemann_normsq / (2 * n + 1)
    assert gap == pytest.approx(km.cosym_residual(n, k, mu), rel=1e-9, abs=1e-9)


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 8), st.floats(1e-6, 1 - 1e-6), st.floats(-50, 50))
def test_no_zero_for_kappa_in_0_1(n, k, mu):
    assert abs(km.xixi_kappa_form(n, k, mu)) >= km.emptiness_quadratic_min(n) - 1e-9
    assert km.emptiness_quadratic(n, mu) > 0


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 8), st.floats(-20, 20))
def test_negative_kappa_roots_beyond_thresholds(n, mu):
    k = km.kappa_root(n, mu)
    th = km.mu_admissible_bounds(n)
    if k is not None and k < 0:
        assert mu > th.upper or mu < th.lower


def test_boeckx():
    assert km.boeckx_invariant(0.0, 0.0) == 1.0
    assert km.boeckx_invariant(-3.0, 6.0) == -1.0
    assert km.tangent_sphere_bundle_type(0.0, 0.0)
    with pytest.raises(km.ParameterError):
        km.boeckx_invariant(1.0, 0.0)


@pytest.mark.parametrize("k,mu,label,flat", [
    (1.0, 0.0, km.SASAKIAN, False),
    (0.75, 0.0, km.SU2, False),
    (0.5, 1.0, km.SL2, False),
    (0.0, 0.0, km.E2, True),
    (-3.0, 6.0, km.E11, False),
    (-3.0, -2.0, km.E2, False),
    (-3.0, 0.0, km.SL2, False),
    (-3.0, 7.0, km.SL2, False),
])
def test_classify_3dim(k, mu, label, flat):
    br = km.classify_3dim(k, mu)
    assert (br.label, br.flat) == (label, flat)


def test_constant_curvature_lemma_splitting():
    for n in (1, 2, 3):
        res = km.lemma_decomposition_residual(constant_curvature(2 * n + 1, -1.5), n)
        assert res.riemann < 1e-12 and res.weyl < 1e-12
