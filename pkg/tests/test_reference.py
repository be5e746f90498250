import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.special import jv

from diskcubature.exceptions import DomainError
from diskcubature.harmonics import ModeIndex, angular_grid, discrete_fourier_coefficient, modes_up_to
from diskcubature.reference import (CATALOG, bessel_j, f2, f2_angular_derivative_sup, f2_fourier_coefficient,
                                    f2_w1_true_value, f2_w2_true_value, panel_oracle, true_value)
from diskcubature.bounds import estimate_angular_sup


def test_bessel_basic_values():
    assert bessel_j(0, 0.0) == 1.0
    assert bessel_j(3, 0.0) == 0.0
    assert bessel_j(1, -2.0) == pytest.approx(-jv(1, 2.0), abs=1e-15)


@given(st.integers(0, 30), st.floats(-60, 60))
def test_bessel_against_scipy(n, x):
    assert abs(bessel_j(n, x) - jv(n, x)) < 1e-13


def test_bessel_domain():
    with pytest.raises(DomainError):
        bessel_j(0, 61.0)
    with pytest.raises(DomainError):
        bessel_j(-1, 1.0)


def test_catalog_closed_forms():
    assert true_value("f0", "w1") == pytest.approx(6.754424205218060, abs=1e-14)
    assert true_value("f1", "w1") == pytest.approx(6.87223392972767, abs=1e-14)
    assert true_value("f3", "w1") == pytest.approx(1.79519580205131, abs=1e-14)
    assert true_value("f4", "w2") == pytest.approx(0.615384615384616, abs=1e-15)
    assert true_value("f5", "w2") == pytest.approx(0.785398163397448, abs=1e-15)
    with pytest.raises(DomainError):
        true_value("f9", "w1")


def test_f2_w1_value():
    assert f2_w1_true_value() == pytest.approx(0.301310995335215, abs=1e-15)


def test_f2_w2_truncated_value_matches_published_reference():
    assert f2_w2_true_value(K=22) == pytest.approx(0.0144772796822995, abs=1e-16)
    # the untruncated integral is different and agrees with the panel oracle
    assert abs(f2_w2_true_value() - 0.0144772796822995) > 2e-5


@pytest.mark.parametrize("r", [0.1, 0.5, 0.93])
def test_f2_coefficients_against_fine_dft(r):
    phi = angular_grid(200)
    vals = f2(r * np.cos(phi), r * np.sin(phi))
    for mode in modes_up_to(24):
        exact = float(f2_fourier_coefficient(mode, r))
        assert exact == pytest.approx(discrete_fourier_coefficient(vals, mode), abs=1e-13)


@pytest.mark.parametrize("mode", [ModeIndex(0, 1), ModeIndex(1, 1), ModeIndex(4, 2)])
@pytest.mark.parametrize("order", [1, 3, 5])
def test_certified_sup_dominates_grid_estimate(mode, order):
    est = estimate_angular_sup(f2, mode, order, n_radii=32, n_phi=256)
    assert f2_angular_derivative_sup(mode, order) >= est


def test_panel_oracle_simple_integrals():
    assert panel_oracle(lambda x, y: x * x + y * y) == pytest.approx(math.pi / 2, rel=1e-13)
    assert panel_oracle(lambda x, y: np.ones_like(x), R=2.0) == pytest.approx(4 * math.pi, rel=1e-13)


def test_catalog_entries_have_callables():
    for case in CATALOG.values():
        x = np.array([0.3]); y = np.array([-0.2])
        assert np.isfinite(case.integrand(x, y) * case.weight(x, y)).all()
