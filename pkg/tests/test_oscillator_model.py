import math

import numpy as np
import pytest

from latticeqm.errors import DomainError
from latticeqm.oscillator_model import (
    OscillatorConfig,
    dispersion,
    dispersion_from_matrices,
    momentum_matrix,
    position_matrix,
    spectrum,
    uncertainty_product,
)
from latticeqm.wigner import su2_commutator_spectrum, su2_ladder_matrices


def test_config_validation():
    with pytest.raises(DomainError):
        OscillatorConfig(0)
    with pytest.raises(DomainError):
        OscillatorConfig(2, mass=0.0)
    with pytest.raises(DomainError):
        OscillatorConfig(2, beta=math.pi)
    cfg = OscillatorConfig(4, mass=2.0, omega=3.0, hbar=0.5)
    assert cfg.N == 4
    assert cfg.position_spacing == pytest.approx(math.sqrt(0.5 / 6.0), rel=1e-15)
    assert cfg.level_spacing == pytest.approx(1.5, rel=1e-15)


def test_position_matrix_examples():
    X = position_matrix(OscillatorConfig(1)).to_dense()
    assert X[0, 1] == pytest.approx(math.sqrt(0.5), abs=1e-15)
    assert X[1, 0] == pytest.approx(math.sqrt(0.5), abs=1e-15)
    assert np.all(np.diag(position_matrix(OscillatorConfig(6)).to_dense()) == 0.0)
    X = position_matrix(OscillatorConfig(4)).to_dense()
    for n in range(4):
        assert X[n + 1, n] == pytest.approx(math.sqrt(0.5) * math.sqrt((4 - n) * (n + 1) / 4), abs=1e-15)
    assert np.all(X == X.T)


def test_momentum_matrix_examples():
    P = momentum_matrix(OscillatorConfig(1)).to_dense()
    assert abs(P[0, 1]) == pytest.approx(math.sqrt(0.5), abs=1e-15)
    assert P[1, 0] == -P[0, 1]
    assert np.all(np.diag(P) == 0.0)


@pytest.mark.parametrize("tj", [1, 4, 9, 30])
def test_position_momentum_commutator_follows_su2(tj):
    cfg = OscillatorConfig(tj, mass=1.3, omega=0.7, hbar=1.1)
    X, P = position_matrix(cfg).to_dense(), momentum_matrix(cfg).to_dense()
    comm = X @ P - P @ X
    # X P - P X = -(hbar/2)(...)[A, A_dag]-type diagonal: magnitude hbar (1 - n/j)
    expected = cfg.hbar * su2_commutator_spectrum(tj)
    assert np.abs(np.abs(np.diag(comm)) - np.abs(expected)).max() <= 1e-12
    assert np.abs(comm - np.diag(np.diag(comm))).max() <= 1e-12


def test_matrices_built_from_ladder_matrices():
    cfg = OscillatorConfig(5, mass=2.0, omega=0.5)
    A, A_dag = su2_ladder_matrices(5)
    X = math.sqrt(cfg.hbar / (2 * cfg.mass * cfg.omega)) * (A.to_dense() + A_dag.to_dense())
    P = math.sqrt(cfg.mass * cfg.hbar * cfg.omega / 2) * (A.to_dense() - A_dag.to_dense())
    assert np.abs(position_matrix(cfg).to_dense() - X).max() <= 1e-15
    assert np.abs(momentum_matrix(cfg).to_dense() - P).max() <= 1e-15


def test_dispersion_examples():
    cfg = OscillatorConfig(4)
    dx, dp = dispersion(cfg, 1)
    assert dx * dp == pytest.approx(1.25, abs=1e-14)
    dx0, _ = dispersion(OscillatorConfig(2000, mass=2.0, omega=3.0), 0)
    assert dx0**2 == pytest.approx(1.0 / (2 * 2.0 * 3.0), rel=1e-14)
    cfg = OscillatorConfig(7, mass=2.0, omega=3.0)
    for n in range(8):
        dx, dp = dispersion(cfg, n)
        assert dx / dp == pytest.approx(1.0 / (cfg.mass * cfg.omega), rel=1e-14)
    with pytest.raises(DomainError):
        dispersion(cfg, 8)


def test_dispersion_two_ways_agree():
    for tj in range(1, 101):
        cfg = OscillatorConfig(tj, mass=1.7, omega=0.6, hbar=0.9)
        for n in range(tj + 1):
            a = dispersion(cfg, n)
            b = dispersion_from_matrices(cfg, n)
            assert abs(a[0] ** 2 - b[0] ** 2) <= 1e-12
            assert abs(a[1] ** 2 - b[1] ** 2) <= 1e-12


def test_uncertainty_product_examples():
    cfg = OscillatorConfig(4, hbar=1.0)
    assert uncertainty_product(cfg, 0) == 0.5
    assert uncertainty_product(cfg, 1) == pytest.approx(1.25, abs=1e-15)
    for tj in (1, 3, 10, 57):
        cfg = OscillatorConfig(tj, hbar=0.7)
        assert uncertainty_product(cfg, tj) == 0.35
        assert uncertainty_product(cfg, 0) == 0.35


def test_uncertainty_product_lower_bound():
    for tj in range(1, 101):
        cfg = OscillatorConfig(tj, hbar=1.3)
        for n in range(tj + 1):
            assert uncertainty_product(cfg, n) >= cfg.hbar / 2 * (1 - 1e-12)
            dx, dp = dispersion(cfg, n)
            assert abs(dx * dp - uncertainty_product(cfg, n)) <= 1e-12


def test_spectrum_examples():
    levels = spectrum(OscillatorConfig(2))
    assert len(levels) == 3
    assert np.all(np.diff(levels) == 1.0)
    levels = spectrum(OscillatorConfig(3, omega=0.5))
    assert len(levels) == 4 and np.all(np.diff(levels) == 0.5)
