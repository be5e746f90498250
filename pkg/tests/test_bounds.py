import math

import pytest
from hypothesis import given, strategies as st
from scipy.special import zeta as scipy_zeta

from diskcubature.bounds import (SmoothnessData, all_bounds, dft_error_bound, estimate_angular_sup,
                                 gauss_error_bound, parse_mode_key, tail_bound, zeta)
from diskcubature.exceptions import DomainError
from diskcubature.harmonics import ModeIndex
from diskcubature.weights import ModeMeasure, WeightSpec, builtin_poisson, builtin_w1, builtin_w2, summability_norm

W1 = builtin_w1()
M01, M11 = ModeIndex(0, 1), ModeIndex(1, 1)
SP = math.sqrt(math.pi)


def test_zeta_values():
    assert zeta(2) == pytest.approx(math.pi ** 2 / 6, abs=1e-15)
    for s in (3, 5, 7, 1.5, 1.01):
        assert abs(zeta(s) - scipy_zeta(s)) < 1e-12
    assert 1 < zeta(30) < 1 + 1e-8
    with pytest.raises(DomainError):
        zeta(1.0)


def test_zeta_against_direct_sum():
    for s in (2, 3, 5, 7):
        n = 200000
        direct = math.fsum(j ** -s for j in range(1, n)) + n ** (1 - s) / (s - 1) + 0.5 * n ** -s
        assert zeta(s) == pytest.approx(direct, abs=1e-12)


def test_dft_bound_examples():
    zero = SmoothnessData(mode_sups={M01: 0.0, M11: 0.0})
    assert dft_error_bound(W1, zero, 1, 9) == 0.0
    ones = SmoothnessData(mode_sups={M01: 1.0, M11: 1.0}, D=1)
    expected = 2 * math.pi * zeta(3) / 9 ** 3 * (math.sqrt(2 * math.pi) + SP / 2)
    assert dft_error_bound(W1, ones, 1, 9) == pytest.approx(expected, rel=1e-14)
    assert dft_error_bound(W1, ones, 1, 9) / dft_error_bound(W1, ones, 1, 27) == pytest.approx(27, rel=1e-14)
    with pytest.raises(DomainError):
        dft_error_bound(W1, SmoothnessData(mode_sups={M01: 1.0}), 1, 9)


def test_tail_bound_examples():
    w2 = builtin_w2(k_max=22)
    assert tail_bound(w2, 0.0, 12, 1) == 0.0
    norm = (2 * math.sqrt(2) / SP) / 3 + 2 / (3 * SP)
    assert tail_bound(w2, 1.0, 12, 1) == pytest.approx(math.sqrt(2 * math.pi) * norm / 144, rel=1e-13)
    vals = [tail_bound(w2, 1.0, K, 1) for K in range(1, 30)]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    with pytest.raises(DomainError, match="summability"):
        tail_bound(builtin_poisson(k_max=5), 1.0, 5, 1)
    with pytest.raises(DomainError):
        tail_bound(w2, 1.0, 0, 1)


def test_gauss_bound_examples():
    unit = WeightSpec("u", 1.0, {M01: ModeMeasure(M01, ((1.0, 0.0, 0.0),))})
    assert gauss_error_bound(unit, SmoothnessData(radial_sups={M01: 0.0}), 3, 0) == 0.0
    assert gauss_error_bound(unit, SmoothnessData(radial_sups={M01: 1.0}), 1, 0) == pytest.approx(1 / 24, rel=1e-14)
    vals = [gauss_error_bound(unit, SmoothnessData(radial_sups={M01: 1.0}), N, 0) for N in range(1, 21)]
    assert all(a >= b for a, b in zip(vals, vals[1:]))
    with pytest.raises(DomainError):
        gauss_error_bound(W1, SmoothnessData(radial_sups={M01: 1.0}), 3, 1)


@given(st.floats(0.0, 1e6), st.integers(1, 3))
def test_bounds_are_homogeneous(c, D):
    base = SmoothnessData(mode_sups={M01: 2.0, M11: 3.0}, radial_sups={M01: 5.0, M11: 7.0},
                          angular_second_sup=1.5, D=D)
    scaled = SmoothnessData(mode_sups={M01: 2.0 * c, M11: 3.0 * c}, radial_sups={M01: 5.0 * c, M11: 7.0 * c},
                            angular_second_sup=1.5 * c, D=D)
    assert dft_error_bound(W1, scaled, 1, 9) == pytest.approx(c * dft_error_bound(W1, base, 1, 9), rel=1e-12)
    assert gauss_error_bound(W1, scaled, 4, 1) == pytest.approx(c * gauss_error_bound(W1, base, 4, 1), rel=1e-12)
    assert tail_bound(W1, 1.5 * c, 3, 1) == pytest.approx(c * tail_bound(W1, 1.5, 3, 1), rel=1e-12)


def test_smoothness_validation():
    with pytest.raises(DomainError):
        SmoothnessData(mode_sups={M01: -1.0})
    with pytest.raises(DomainError):
        SmoothnessData(D=0)


def test_all_bounds_for_divergent_weight():
    p = builtin_poisson(k_max=2)
    data = SmoothnessData(mode_sups={m: 1.0 for m in p.modes}, radial_sups={m: 1.0 for m in p.modes})
    out = all_bounds(p, data, 5, 9, 2)
    assert math.isinf(out["tail"]) and math.isinf(out["total"]) and out["dft"] > 0


def test_angular_sup_estimator():
    # d/dphi (x * Y_01) = -r sin(phi) / sqrt(2 pi)
    est = estimate_angular_sup(lambda x, y: x, M01, 1)
    assert est == pytest.approx(1 / math.sqrt(2 * math.pi), rel=1e-3)


def test_parse_mode_key():
    assert parse_mode_key("2,1") == ModeIndex(2, 1)
    assert parse_mode_key("(0,1)") == M01
