import math

import numpy as np
import pytest

import qwalknet as qw


def test_version():
    assert qw.__version__ == "0.1.0"


def test_first_step_from_coin_zero():
    spec = qw.NetworkSpec.homogeneous(4, 0.5)
    p = qw.exact_distributions(spec, (1.0, 0.0), 0, 1)
    assert p[1][1] == pytest.approx(0.75, abs=1e-13)


def test_engines_agree():
    spec = qw.NetworkSpec.homogeneous(4, 0.3)
    exact = qw.exact_distributions(spec, qw.SYMMETRIC_COIN, 0, 10)
    ens = qw.init_ensemble(spec, qw.SYMMETRIC_COIN, 0)
    for t in range(1, 11):
        ens.advance()
        assert np.allclose(ens.distribution(), exact[t], atol=1e-12)


def test_densities_and_entropy():
    ens = qw.init_ensemble(qw.NetworkSpec.homogeneous(5, 0.4), qw.SYMMETRIC_COIN)
    for _ in range(8):
        ens.advance()
    rho_w = ens.walker_density()
    rho_g = ens.network_density()
    assert rho_w.shape == (10, 10)
    assert rho_g.shape == (32, 32)
    assert qw.von_neumann_entropy(rho_w) == pytest.approx(qw.von_neumann_entropy(rho_g), abs=1e-8)
    assert qw.network_negativity(ens, 0, 2) > 0.0


def test_stationary_methods():
    spec = qw.NetworkSpec.homogeneous(4, 0.3)
    a = qw.stationary(spec, qw.SYMMETRIC_COIN, method="full")
    b = qw.stationary(spec, qw.SYMMETRIC_COIN, method="conditional")
    assert a["labels"] == b["labels"]
    assert np.allclose(a["probs"], b["probs"], atol=1e-8)
    assert sum(b["probs"]) == pytest.approx(1.0)


def test_dcqw_line_is_symmetric():
    labels, dist = qw.dcqw_line(qw.SYMMETRIC_COIN, 20)
    p = np.array(dist[-1])
    assert abs(float(np.dot(p, labels))) < 1e-10


def test_errors_are_mapped():
    with pytest.raises(ValueError):
        qw.NetworkSpec.homogeneous(5, 0.8)
    with pytest.raises(MemoryError):
        qw.exact_distributions(qw.NetworkSpec.homogeneous(12, 0.2), qw.SYMMETRIC_COIN, 0, 1)


def test_sampler_mean():
    spec = qw.sample_inhomogeneous(0.2, 0.2, 5, 15)
    assert math.isclose(sum(spec.edge_alphas) / 15, 0.2, abs_tol=1e-9)


def test_estimate_round_trip():
    grid = [0.05 * k for k in range(11)]
    out = qw.estimate_alpha(qw.NetworkSpec.homogeneous(7, 0.3), 10000, 140, 1, grid)
    assert out["ci"][0] <= out["alpha_hat"] <= out["ci"][1]
