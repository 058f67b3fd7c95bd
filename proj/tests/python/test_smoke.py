import math

import numpy as np
import pytest

import crownlab as cl

QUARTER = math.pi / 4
X2 = np.diag([QUARTER, -QUARTER]).astype(complex)


def rotation(theta):
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]], dtype=complex)


def test_ldl_known_factors():
    n, d = cl.sym_ldl(np.array([[2, 1], [1, 1]]))
    assert np.allclose(n, [[1, 0.5], [0, 1]])
    assert np.allclose(d, [2, 0.5])


def test_real_iwasawa_shear():
    f = cl.decompose_real(np.array([[1.0, 0.0], [1.0, 1.0]]))
    r = 1 / math.sqrt(2)
    assert np.allclose(f["kappa"], [[r, -r], [r, r]])
    assert np.allclose(f["eta"], [[1, 0.5], [0, 1]])
    assert np.allclose(f["kappa"] @ f["alpha"] @ f["eta"], [[1, 0], [1, 1]])


def test_domain_test_singular_point():
    inside, _ = cl.domain_test(np.array([[1, 0], [1j, 1]]))
    assert not inside


def test_crown_path_against_closed_form():
    theta, t = 0.4, 0.9
    f = cl.decompose_path(X2, rotation(theta), t)
    c = cl.sl2_iwasawa_closed(math.pi / 2, theta, 1j * t)
    assert abs(np.exp(f["H"][0]) - c["alpha1"]) < 1e-10
    ok, _ = cl.check_H_range(f, X2, t)
    assert ok


def test_domain_exit_at_boundary():
    with pytest.raises(cl.DomainExit):
        cl.decompose_path(X2, rotation(QUARTER), 1.0)
    assert issubclass(cl.DomainExit, cl.DomainError)


def test_s_max_and_rho():
    assert cl.s_max(np.diag([2.0, 0.5])) == pytest.approx(4.0)
    assert cl.rho(X2) == pytest.approx(math.pi / 2)
    q = cl.haar_so(3, 5)
    assert np.allclose(q.T @ q, np.eye(3))


def test_weights_minor_identity():
    k = cl.haar_so(3, 11)
    h = [0.6, -0.1, -0.5]
    t = 0.7
    g = cl.group_exp(np.diag(h).astype(complex), -1j * t) @ k
    minors = cl.principal_minors(g.T @ g)
    for r in (1, 2):
        assert abs(cl.alpha_pow(k, r, h, 1j * t) - minors[r - 1]) < 1e-12
    assert cl.leading_vanishing_order(rotation(QUARTER), 1, [QUARTER, -QUARTER], 1e-10) == 2


def test_sweep_and_fit_sl2():
    grid = cl.dyadic_t_grid(1, 10)
    rows = cl.sweep(X2, grid, n_haar=64)
    for r in rows:
        assert r["sup_alpha"] == pytest.approx(1 / math.cos(r["t"] * math.pi / 2), rel=1e-6)
    fit = cl.fit_power_law([r["t"] for r in rows], [r["sup_alpha"] for r in rows], (0.9, 0.999))
    assert abs(fit["N_hat"] - 1) < 0.05


def test_fit_error():
    with pytest.raises(cl.FitError):
        cl.fit_power_law([0.5, 0.75], [1.0, 2.0])


def test_principal_series():
    v = {0: 0.5, 2: 1j}
    assert cl.extended_norm_sq(v, 2.0, t=0.0) == pytest.approx(1.25, abs=1e-12)
    rep = cl.boundary_pairing({0: 1.0}, cl.smooth_test_vector(), 2.0, t_grid=cl.dyadic_t_grid(4, 14))
    assert rep["cauchy"]


def test_scale_relations():
    corpus = cl.crown_corpus(2, 200, 3)
    rep = cl.scale_relation_check(corpus)
    assert rep["eta"]["certified"] and rep["kappa"]["certified"]


def test_identities_suite():
    ok, checks = cl.run_suite("identities")
    assert ok, [c for c in checks if not c["passed"] and not c["diagnostic"]]
    with pytest.raises(cl.StructuralError):
        cl.run_suite("nope")
