import numpy as np
import pytest

from latticeqm.continuous_bases import gauss_legendre_integral, laguerre_overlap, laguerre_sl_residual
from latticeqm.discrete_bases import MeixnerParams
from latticeqm.errors import DomainError
from latticeqm.hydrogen_model import (
    HydrogenConfig,
    RadialQuantum,
    Units,
    discrete_radial_mean,
    discrete_radial_model,
    energy,
    radial_function,
    sl_mapping,
)


def test_config_and_quantum_numbers():
    assert HydrogenConfig().units is Units.ATOMIC
    with pytest.raises(DomainError):
        HydrogenConfig(0)
    with pytest.raises(DomainError):
        RadialQuantum(1, 1)
    with pytest.raises(DomainError):
        RadialQuantum(0, 0)
    q = RadialQuantum(4, 2)
    assert (q.alpha, q.n, q.gamma) == (5, 1, 6)


def test_energy_examples():
    assert energy(HydrogenConfig(1), 1) == -0.5
    assert energy(HydrogenConfig(1), 2) == -0.125
    assert energy(HydrogenConfig(2), 1) == -2.0
    with pytest.raises(DomainError):
        energy(HydrogenConfig(1), 0)


def test_energy_exact_and_degenerate_in_l():
    cfg = HydrogenConfig(1)
    for nu in range(1, 11):
        assert energy(cfg, nu) == -1.0 / (2 * nu * nu)
    for nu in range(1, 6):
        levels = {energy(cfg, RadialQuantum(nu, l).nu) for l in range(nu)}
        assert len(levels) == 1


def test_radial_function_examples():
    q = RadialQuantum(1, 0)
    norm = gauss_legendre_integral(lambda r: radial_function(q, np.maximum(r, 1e-300)) ** 2 / np.maximum(r, 1e-300),
                                   0.0, 80.0)
    assert norm == pytest.approx(1.0, abs=1e-8)
    rho = np.linspace(0.05, 40.0, 2000)
    vals = radial_function(RadialQuantum(2, 1), rho)
    assert np.all(vals > 0) or np.all(vals < 0)
    vals = radial_function(RadialQuantum(3, 0), rho)
    assert np.count_nonzero(np.diff(np.sign(vals))) == 2
    with pytest.raises(DomainError):
        radial_function(q, 0.0)


def test_radial_function_decays():
    vals = radial_function(RadialQuantum(2, 0), np.array([50.0, 100.0]))
    assert abs(vals[1]) < abs(vals[0]) < 1e-7


@pytest.mark.parametrize("nu", [1, 2, 3])
def test_radial_functions_orthonormal(nu):
    for l in range(nu):
        q = RadialQuantum(nu, l)
        assert laguerre_overlap(q.alpha, q.n, q.n) == pytest.approx(1.0, abs=1e-8)


def test_sl_mapping_examples():
    assert sl_mapping(RadialQuantum(1, 0))[0] == 1.0
    alpha, lam = sl_mapping(RadialQuantum(4, 2))
    assert (alpha, lam) == (5.0, 4.0)
    for l in range(10):
        a = 2 * l + 1
        assert 4 * l * (l + 1) == a * a - 1


def test_radial_equation_residual():
    s = np.array([0.5, 1.0, 2.0, 8.0])
    for nu in range(1, 5):
        for l in range(nu):
            alpha, lam = sl_mapping(RadialQuantum(nu, l))
            assert np.abs(laguerre_sl_residual(alpha, nu - l - 1, s, lam=lam)).max() <= 1e-8


def test_discrete_radial_model_examples():
    assert discrete_radial_model(0, 0.1) == MeixnerParams(2.0, 0.9)
    assert discrete_radial_model(1, 0.01) == MeixnerParams(4.0, 0.99)
    with pytest.raises(DomainError):
        discrete_radial_model(0, 1.0)
    with pytest.raises(DomainError):
        discrete_radial_model(0, 0.0)


def test_discrete_radial_mean_examples():
    assert discrete_radial_mean(0, 0, 1e-2) == pytest.approx(2.0, abs=5e-2)
    assert discrete_radial_mean(1, 2, 1e-3) == pytest.approx(8.0, abs=1e-2)


def test_discrete_radial_mean_closed_form_and_order_h():
    for l in range(3):
        for n in range(3):
            for h in (1e-1, 1e-2, 1e-3):
                mean = discrete_radial_mean(l, n, h)
                assert mean == pytest.approx(n * (2 - h) + (1 - h) * (2 * l + 2), rel=1e-12)
                assert abs(mean - (2 * n + 2 * l + 2)) == pytest.approx(h * (n + 2 * l + 2), rel=1e-9)


def test_continuum_mean_radius_by_quadrature():
    # <s> = int s psi^2 ds/s = 2n + alpha + 1
    for l, n in [(0, 0), (1, 1), (2, 0)]:
        alpha = 2 * l + 1
        assert laguerre_overlap(alpha, n, n, weight_power=0.0) == pytest.approx(2 * n + alpha + 1, abs=1e-8)
