import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from curvlab import kappa_mu as km
from curvlab import lie
from curvlab.tensor import constant_curvature, invariants_of, validate_symmetries

C1 = lie.MILNOR_CONTACT_C1


def test_koszul_is_metric_and_torsion_free():
    for M in (lie.g_lambda_model(2, 0.7), lie.milnor_model(C1, 1.3, -0.4)):
        G = lie.koszul_connection(M)
        # g(nabla_i e_j, e_k) + g(e_j, nabla_i e_k) = 0
        assert np.max(np.abs(G + G.transpose(0, 2, 1))) < 1e-15
        # nabla_i e_j - nabla_j e_i = [e_i, e_j]
        assert np.max(np.abs(G - G.transpose(1, 0, 2) - M.bracket)) < 1e-15


def test_g_lambda_connection_oracle():
    # nabla_X X = -lam xi for [xi, X] = -lam X
    G = lie.koszul_connection(lie.g_lambda_model(1, 2.0))
    np.testing.assert_allclose(G[1, 1], [-2.0, 0, 0])
    np.testing.assert_allclose(G[2, 2], [2.0, 0, 0])


def test_milnor_su2_round_sphere():
    # c = (2, 2, 2) is the unit 3-sphere
    R = lie.curvature_of(lie.milnor_model(2.0, 2.0, 2.0))
    np.testing.assert_allclose(R.comps, constant_curvature(3, 1.0).comps, atol=1e-15)


def test_jacobi_violation_rejected():
    c = np.zeros((4, 4, 4))
    # [e0,e1] = e2, [e1,e2] = e3, [e0,e2] = e3 breaks Jacobi only with a twist
    for (i, j, k, v) in [(0, 1, 2, 1.0), (1, 2, 3, 1.0), (2, 3, 0, 1.0)]:
        c[i, j, k], c[j, i, k] = v, -v
    M = lie.LieModel(4, c, np.zeros((4, 4)), 0)
    assert M.jacobi_residual() > 0.5
    with pytest.raises(lie.ModelError, match="Jacobi"):
        lie.koszul_connection(M)


def test_almost_contact_axioms():
    for M in (lie.g_lambda_model(3, 1.0), lie.milnor_model(1.0, 2.0, 3.0), lie.abelian_model(2)):
        M.check()
    bad = lie.LieModel(3, np.zeros((3, 3, 3)), np.eye(3), 0)
    with pytest.raises(lie.ModelError, match="phi"):
        bad.check()


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
def test_g_lambda_h_swaps_and_scales(n, lam):
    M = lie.g_lambda_model(n, lam)
    h = lie.h_operator(M)
    for i in range(1, n + 1):
        e = np.eye(2 * n + 1)
        np.testing.assert_allclose(h @ e[i], lam * e[n + i])
        np.testing.assert_allclose(h @ e[n + i], lam * e[i])
    E, got = lie.adapted_frame(h, M.phi)
    assert got == pytest.approx(lam)
    np.testing.assert_allclose(E.T @ E, np.eye(2 * n + 1), atol=1e-12)


@pytest.mark.parametrize("n", [1, 2])
def test_g_lambda_structure(n):
    cls = lie.exterior_and_classify(lie.g_lambda_model(n, 1.5))
    assert cls.label == "almost-cosymplectic"
    assert not cls.normal
    fit = lie.detect_kappa_mu(lie.curvature_of(lie.g_lambda_model(n, 1.5)),
                              lie.h_operator(lie.g_lambda_model(n, 1.5)))
    assert fit.kappa == pytest.approx(-2.25)
    assert fit.mu == pytest.approx(0, abs=1e-12)
    assert fit.valid


def test_calibrated_contact_constant():
    assert lie.calibrate_milnor_contact() == C1 == 2.0
    M = lie.milnor_model(C1, 0.7, -1.1)
    assert lie.exterior_and_classify(M).label == "contact-metric"
    assert lie.exterior_and_classify(lie.milnor_model(-C1, 0, 0)).label == "other"


def test_heisenberg_is_sasakian_not_flat():
    M = lie.milnor_model(C1, 0.0, 0.0)
    cls = lie.exterior_and_classify(M)
    assert cls.label == "contact-metric" and cls.sasakian
    R = lie.curvature_of(M)
    fit = lie.detect_kappa_mu(R, lie.h_operator(M))
    assert fit.kappa == pytest.approx(1.0) and fit.mu is None
    # sectional curvatures of Heisenberg: K(e2,e3) = -3/4 c1^2, K(e1,e_a) = c1^2/4
    assert R[1, 2, 2, 1] == pytest.approx(-0.75 * C1**2)
    assert R[0, 1, 1, 0] == pytest.approx(0.25 * C1**2)


def test_flat_e2_witness():
    M = lie.milnor_model(C1, C1, 0.0)
    assert np.max(np.abs(lie.curvature_of(M).comps)) < 1e-15
    fit = lie.detect_kappa_mu(lie.curvature_of(M), lie.h_operator(M))
    assert (fit.kappa, fit.mu) == (0.0, 0.0)
    assert lie.exterior_and_classify(M).label == "contact-metric"


@pytest.mark.parametrize("c2,c3", [(1.0, 3.0), (0.0, -2.0), (-0.5, -2.0), (3.0, 0.5)])
def test_milnor_matches_contact_assembly(c2, c3):
    M = lie.milnor_model(C1, c2, c3)
    R = lie.curvature_of(M)
    h = lie.h_operator(M)
    fit = lie.detect_kappa_mu(R, h)
    E, lam = lie.adapted_frame(h, M.phi)
    assert fit.kappa == pytest.approx(1 - lam**2)
    T = km.assemble(km.KappaMuParams(km.CONTACT, 1, fit.kappa, fit.mu))
    assert np.max(np.abs(R.rotated(E).comps - T.comps)) < 1e-12


@settings(max_examples=40, deadline=None)
@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3))
def test_milnor_curvature_symmetries(c1, c2, c3):
    R = lie.curvature_of(lie.milnor_model(c1, c2, c3))
    assert validate_symmetries(R, tol=1e-10).valid
    h = lie.h_operator(lie.milnor_model(c1, c2, c3))
    assert abs(np.trace(h)) < 1e-12


def test_model_file_round_trip_is_bit_exact(tmp_path):
    M = lie.g_lambda_model(2, 0.1)
    path = tmp_path / "g.json"
    lie.dump_model(M, path)
    again = lie.load_model(path)
    assert np.array_equal(again.bracket, M.bracket)
    assert np.array_equal(again.phi, M.phi)
    assert again.name == M.name
    assert lie.dumps_model(again) == lie.dumps_model(M)
    assert "0.10000000000000001" in path.read_text()


@pytest.mark.parametrize("mutate,field", [
    (lambda d: d.pop("dim"), "dim"),
    (lambda d: d.update(xi_index=9), "xi_index"),
    (lambda d: d.update(phi=[0, 1]), "phi"),
    (lambda d: d["brackets"].append({"i": 0, "j": 7, "k": 1, "c": 1}), "brackets"),
    (lambda d: d["brackets"].append({"i": 0, "j": 1, "k": 1, "c": "x"}), "brackets"),
    (lambda d: d.update(name=3), "name"),
])
def test_model_parse_errors_name_field(mutate, field):
    data = lie.model_to_dict(lie.milnor_model(1.0, 2.0, 3.0))
    mutate(data)
    with pytest.raises(lie.ModelParseError, match=field):
        lie.model_from_dict(data)


def test_malformed_text():
    with pytest.raises(lie.ModelParseError, match="JSON"):
        lie.loads_model("dim = 3")
    assert isinstance(lie.loads_model(json.dumps(lie.model_to_dict(lie.abelian_model(1)))),
                      lie.LieModel)


def test_abelian_is_flat_and_cosymplectic():
    M = lie.abelian_model(2)
    assert invariants_of(lie.curvature_of(M)).record.riemann_normsq == 0
    cls = lie.exterior_and_classify(M)
    assert cls.label == "cosymplectic" and cls.normal
