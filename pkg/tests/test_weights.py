import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad

from diskcubature.exceptions import DomainError
from diskcubature.harmonics import ModeIndex
from diskcubature.weights import (JacobiTerm, ModeMeasure, WeightSpec, beta_fn, builtin_poisson, builtin_unit,
                                  builtin_w1, builtin_w2, builtin_weight, format_weight_text, load_weight,
                                  mode_total_mass, parse_weight_text, summability_norm)

SP = math.sqrt(math.pi)


def test_term_validation():
    with pytest.raises(DomainError):
        JacobiTerm(1.0, -1.0, 0.0)
    with pytest.raises(DomainError):
        JacobiTerm(0.0, 0.0, 0.0)
    with pytest.raises(DomainError):
        JacobiTerm(float("nan"), 0.0, 0.0)


def test_beta_against_gamma():
    for x, y in [(0.5, 1.0), (2.5, 3.5), (100.0, 80.0), (1.0, 7.0)]:
        ref = math.exp(math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y))
        assert beta_fn(x, y) == pytest.approx(ref, rel=1e-13)


def test_sign_detection():
    w2 = builtin_w2(k_max=6)
    assert w2.modes[ModeIndex(0, 1)].sign == 1
    assert all(w2.modes[ModeIndex(k, 1)].sign == -1 for k in (2, 4, 6))
    with pytest.raises(DomainError):
        ModeMeasure(ModeIndex(0, 1), ((1.0, 0.0, 0.0), (-3.0, 1.0, 0.0)))


def test_one_signed_mixture_of_mixed_coefficients_is_allowed():
    # 2 - rho on [0, 1] stays positive although one coefficient is negative
    m = ModeMeasure(ModeIndex(0, 1), ((2.0, 0.0, 0.0), (-1.0, 1.0, 0.0)))
    assert m.sign == 1 and m.total_mass == pytest.approx(1.5)


def test_w1_masses():
    w = builtin_w1()
    assert mode_total_mass(w.modes[ModeIndex(0, 1)]) == pytest.approx(math.sqrt(2 * math.pi), rel=1e-15)
    assert mode_total_mass(w.modes[ModeIndex(1, 1)]) == pytest.approx(SP / 3, rel=1e-15)
    assert w.modes[ModeIndex(1, 1)].radial_norm == pytest.approx(SP / 2, rel=1e-15)


@pytest.mark.parametrize("R", [0.5, 1.0, 2.0])
def test_moments_against_numerical_integration(R):
    for m in list(builtin_w2(R, 8).modes.values()) + list(builtin_w1(R).modes.values()):
        for s in (0, 1, 3):
            t0 = m.terms[0]
            ref, _ = quad(lambda t: t0.c * t ** s, 0, R * R, weight="alg", wvar=(t0.a, t0.b))
            assert m.moment(s) == pytest.approx(ref, rel=1e-9)


def test_radial_norm_is_mode_integral():
    # integral of |w_kl(r)| r dr from the reconstructed radial profile
    for w in (builtin_w1(), builtin_w2(k_max=6), builtin_poisson(k_max=4)):
        for m in w.modes.values():
            ref, _ = quad(lambda r: abs(float(m.radial_profile(r))) * r, 0, 1)
            assert m.radial_norm == pytest.approx(ref, rel=1e-9)


def test_summability_norms():
    assert summability_norm(builtin_w1()).total == pytest.approx(math.sqrt(2 * math.pi) + SP / 2, rel=1e-15)
    full_w2 = (2 * math.sqrt(2) / SP) / 3 + 2 / (3 * SP)
    assert summability_norm(builtin_w2(k_max=22)).total == pytest.approx(full_w2, rel=1e-14)
    assert summability_norm(builtin_poisson(k_max=10)).divergent


@given(st.integers(0, 60))
def test_w2_partial_plus_tail_is_constant(K):
    w = builtin_w2(k_max=60)
    rep = summability_norm(w, K)
    assert rep.total == pytest.approx((2 * math.sqrt(2) / SP) / 3 + 2 / (3 * SP), rel=1e-13)


def test_w2_tail_counts_unstored_orders():
    small = summability_norm(builtin_w2(k_max=4), 30)
    big = summability_norm(builtin_w2(k_max=40), 30)
    assert small.total == pytest.approx(big.total, rel=1e-14)


def test_mode_reconstruction_matches_closed_forms():
    rng = np.random.default_rng(1)
    x, y = rng.uniform(-0.7, 0.7, size=(2, 50))
    w1 = builtin_w1()
    bare = WeightSpec("w1", 1.0, dict(w1.modes))
    assert np.allclose(bare(x, y), w1(x, y), rtol=1e-13)
    p = builtin_poisson(k_max=200)
    assert np.allclose(WeightSpec("p", 1.0, dict(p.modes))(x, y), p(x, y), rtol=1e-10)


def test_poisson_kernel_closed_form():
    p = builtin_poisson(k_max=3)
    assert p(0.0, 0.0) == pytest.approx(1.0)
    assert p.modes[ModeIndex(2, 1)].terms[0].c == pytest.approx(SP)


def test_unit_weight():
    u = builtin_unit()
    assert u.modes[ModeIndex(0, 1)].total_mass == pytest.approx(math.sqrt(2 * math.pi) / 2)


def test_builtin_lookup():
    assert builtin_weight("w2:8").k_max == 8
    assert builtin_weight("w2", k_max=4).k_max == 4
    assert builtin_weight("poisson:3").k_max == 3
    with pytest.raises(DomainError):
        builtin_weight("w7")
    with pytest.raises(DomainError):
        builtin_weight("w2:x")


def test_text_round_trip(tmp_path):
    w = builtin_w2(k_max=8)
    text = format_weight_text(w)
    back = parse_weight_text(text)
    assert back.modes.keys() == w.modes.keys()
    for idx in w.modes:
        assert back.modes[idx].terms == w.modes[idx].terms
    path = tmp_path / "w.txt"
    path.write_text(text)
    assert load_weight(str(path)).modes.keys() == w.modes.keys()


def test_text_parse_mixture_and_comments():
    w = parse_weight_text("mix; 1.0  # radius one\nmode 0 1 +1 : 2 0 0 + -1 1 0\nmode 3 2 -1 : -0.5 1.5 2\n")
    assert w.modes[ModeIndex(0, 1)].terms == (JacobiTerm(2, 0, 0), JacobiTerm(-1, 1, 0))
    assert w.modes[ModeIndex(3, 2)].sign == -1


@pytest.mark.parametrize("text", [
    "x; 1",
    "x; one; mode 0 1 +1 : 1 0 0",
    "x; 1; mode 0 1 +1 : 1 0",
    "x; 1; mode 0 1 -1 : 1 0 0",
    "x; 1; mode 0 2 +1 : 1 0 0",
    "x; 1; mode 0 1 +1 : 1 0 0; mode 0 1 +1 : 1 0 0",
])
def test_text_parse_errors(text):
    with pytest.raises(DomainError):
        parse_weight_text(text)
