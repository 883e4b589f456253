"""Tests for the bandlimited box approximants and their moments."""

import numpy as np
import numpy.testing as npt
import pytest
from scipy.special import polygamma

from srstab.extremal import (
    MAJORANT,
    MINORANT,
    SELBERG,
    Approximant,
    BoxFunction,
    DecayTooSlow,
    beurling,
    box_indicator,
    g_approximant,
    moments,
    selberg_box,
    trigamma,
)
from srstab.quadrature import integrate_moment_pair


# ---------------------------------------------------------------- oracles

def beurling_series_oracle(x, terms=2_000_000):
    """Literal two-series formula with an analytic tail estimate.

    Independent of the reflection/trigamma evaluation used by the
    implementation; only valid away from integers.
    """
    if x < 0:
        return 2.0 * np.sinc(-x) ** 2 - beurling_series_oracle(-x, terms)
    n = np.arange(0, terms + 1, dtype=float)
    s1 = np.sum(1.0 / (x - n) ** 2)
    s2 = np.sum(1.0 / (x + n[1:]) ** 2)
    tail = 2.0 * x / terms**2  # sum_{n>M} [(x-n)^-2 - (x+n)^-2] ~ 4x/n^3
    return (np.sin(np.pi * x) / np.pi) ** 2 * (s1 - s2 + 2.0 / x + tail)


def integral_with_tail(f, half_width, tail_term):
    i0, _, _ = integrate_moment_pair(f, -half_width, half_width, 1e-10,
                                     start_width=4.0, with_second=False)
    return i0 + tail_term


# ---------------------------------------------------------------- trigamma

def test_trigamma_against_scipy():
    x = np.concatenate([np.linspace(1e-3, 1.0, 500),
                        np.linspace(1.0, 200.0, 500)])
    ours = trigamma(x)
    ref = polygamma(1, x)
    assert np.abs(ours / ref - 1.0).max() < 1e-14
    assert np.abs(ours[x >= 1.0] - ref[x >= 1.0]).max() < 1e-13


def test_trigamma_special_value():
    assert trigamma(1.0) == pytest.approx(np.pi**2 / 6.0, abs=1e-14)


def test_trigamma_rejects_nonpositive():
    with pytest.raises(ValueError):
        trigamma(0.0)


# ---------------------------------------------------------------- beurling

@pytest.mark.parametrize("x", [0.3, 2.5, 7.25, -0.61, -1.7, 12.8])
def test_beurling_matches_raw_series(x):
    assert beurling(x) == pytest.approx(beurling_series_oracle(x), abs=5e-12)


def test_beurling_interpolates_sign_at_integers():
    for m in range(1, 8):
        assert beurling(float(m)) == 1.0
        assert beurling(float(-m)) == -1.0
    assert beurling(0.0) == 1.0


def test_beurling_majorizes_sign():
    x = np.linspace(-40.0, 40.0, 400001)
    assert np.min(beurling(x) - np.sign(x)) >= 0.0


def test_beurling_value_above_one_right_of_origin():
    assert beurling(2.5) >= 1.0


def test_beurling_excess_integral_is_one():
    # tail of (B(x)-1) + (B(-x)+1) = 2 (sin pi x/(pi x))^2 integrates to ~1/(pi^2 T)
    half_width = 30000.0
    val = integral_with_tail(lambda x: beurling(x) - np.sign(x), half_width,
                             1.0 / (np.pi**2 * half_width))
    assert val == pytest.approx(1.0, abs=1e-8)


def test_beurling_decay_constant_small():
    for x in (1e4, 1e4 + 0.5):
        assert abs(beurling(x) - 1.0) * x**2 <= 10.0


def test_beurling_scalar_and_array_forms_agree():
    xs = np.array([-2.2, -0.4, 0.0, 0.7, 3.9])
    arr = beurling(xs)
    npt.assert_array_equal(arr, [beurling(float(x)) for x in xs])


# ---------------------------------------------------------------- selberg box

def test_selberg_majorant_covers_box_center():
    assert selberg_box(MAJORANT, 4.0, 0.0) >= 1.0


def test_selberg_minorant_below_zero_outside_box():
    assert selberg_box(MINORANT, 4.0, 3.0) <= 0.0


def test_selberg_integrals_alpha_plus_minus_one():
    # tail corrections: the outer-edge Fejer hump dominates, giving
    # +-1/(pi^2 (T -+ alpha/2)) for the majorant/minorant
    alpha, half_width = 4.0, 30000.0
    plus = integral_with_tail(lambda t: selberg_box(MAJORANT, alpha, t),
                              half_width, 1.0 / (np.pi**2 * (half_width - alpha / 2)))
    minus = integral_with_tail(lambda t: selberg_box(MINORANT, alpha, t),
                               half_width, -1.0 / (np.pi**2 * (half_width + alpha / 2)))
    assert plus == pytest.approx(alpha + 1.0, abs=1e-8)
    assert minus == pytest.approx(alpha - 1.0, abs=1e-8)


def test_selberg_sandwiches_box():
    t = np.linspace(-20.0, 20.0, 8001)
    for alpha in (1.0, 4.0, 7.5):
        box = box_indicator(alpha, t)
        assert np.max(selberg_box(MINORANT, alpha, t) - box) <= 0.0
        assert np.max(box - selberg_box(MAJORANT, alpha, t)) <= 0.0


def test_selberg_rejects_bad_inputs():
    with pytest.raises(ValueError):
        selberg_box("upper", 4.0, 0.0)
    with pytest.raises(ValueError):
        selberg_box(MAJORANT, -1.0, 0.0)


# ---------------------------------------------------------------- cubed pair

def test_g_is_cube_of_rescaled_selberg():
    t = np.linspace(-15.0, 15.0, 1001)
    for side in (MINORANT, MAJORANT):
        npt.assert_array_equal(g_approximant(side, 9.0, t),
                               selberg_box(side, 3.0, t / 3.0) ** 3)


def test_g_minorant_at_center_below_box():
    assert g_approximant(MINORANT, 9.0, 0.0) <= 1.0


def test_g_majorant_tail_small_but_nonnegative():
    v = g_approximant(MAJORANT, 9.0, 10.0)
    assert 0.0 <= v <= 1e-2


@pytest.mark.parametrize("alpha", [3.0, 9.0, 15.0])
def test_g_sandwich_on_dense_grid(alpha):
    t = np.arange(0.0, 50.0 + 1e-9, 0.01)
    grid = np.concatenate([-t[:0:-1], t])
    gm = g_approximant(MINORANT, alpha, grid)
    gp = g_approximant(MAJORANT, alpha, grid)
    box = box_indicator(alpha, grid)
    assert np.max(gm - box) <= 0.0
    assert np.max(box - gp) <= 0.0


@pytest.mark.parametrize("alpha", [3.0, 9.0, 15.0])
def test_g_evenness(alpha):
    t = np.arange(0.0, 50.0 + 1e-9, 0.01)
    grid = np.concatenate([-t[:0:-1], t])
    for side in (MINORANT, MAJORANT):
        g = g_approximant(side, alpha, grid)
        assert np.abs(g - g[::-1]).max() <= 1e-12


@pytest.mark.parametrize("alpha", [3.0, 9.0])
@pytest.mark.parametrize("side", [MINORANT, MAJORANT])
def test_g_numerically_bandlimited(alpha, side):
    n = 2**16
    t = (np.arange(n) - n // 2) / 8.0  # rate 8 over |t| <= 2^12
    spectrum = np.abs(np.fft.fft(g_approximant(side, alpha, t)))
    freqs = np.fft.fftfreq(n, d=1.0 / 8.0)
    out_of_band = spectrum[np.abs(freqs) > 1.0].max()
    assert out_of_band <= 1e-4 * spectrum.max()


# ---------------------------------------------------------------- moments

@pytest.mark.parametrize("alpha", [1.0, 4.0, 10.0])
def test_box_moments_exact(alpha):
    m0, m2 = moments(BoxFunction(alpha))
    assert m0 == pytest.approx(alpha, abs=1e-10)
    assert m2 == pytest.approx(-np.pi**2 * alpha**3 / 3.0, abs=1e-10)


def test_selberg_order_refused_for_moments():
    with pytest.raises(DecayTooSlow):
        moments(Approximant(MINORANT, 4.0, order=SELBERG))


def test_moment_caching_is_idempotent():
    ap = Approximant(MINORANT, 6.0)
    first = ap.moments()
    assert ap.quadrature_meta is not None
    assert ap.moments() == first
    fresh = Approximant(MINORANT, 6.0)
    assert fresh.moments() == first


def test_moment0_ordering_and_trend():
    prev_lo, prev_hi = -np.inf, np.inf
    for alpha in (4.0, 8.0, 16.0, 32.0):
        m0_lo, _ = Approximant(MINORANT, alpha).moments()
        m0_hi, _ = Approximant(MAJORANT, alpha).moments()
        assert m0_lo <= alpha <= m0_hi
        # relative moments close in on 1 monotonically from both sides
        assert m0_lo / alpha > prev_lo
        assert m0_hi / alpha < prev_hi
        prev_lo, prev_hi = m0_lo / alpha, m0_hi / alpha


def test_first_moment_functional_vanishes_by_evenness():
    t = np.linspace(0.01, 400.0, 40000)
    g = g_approximant(MINORANT, 6.0, t)
    g_neg = g_approximant(MINORANT, 6.0, -t)
    # integrand t*f(t) cancels pairwise exactly
    assert np.abs(t * g + (-t) * g_neg).max() == 0.0


def test_moments_match_fixed_step_riemann_oracle():
    step = 1e-4
    for side in (MINORANT, MAJORANT):
        acc0 = 0.0
        acc2 = 0.0
        for lo in np.arange(0.0, 1000.0, 50.0):
            t = lo + step * np.arange(int(50.0 / step)) + step / 2.0
            g = g_approximant(side, 6.0, t)
            acc0 += 2.0 * np.sum(g) * step
            acc2 += 2.0 * np.sum(t * t * g) * step
        m0, m2 = Approximant(side, 6.0).moments()
        assert m0 == pytest.approx(acc0, abs=1e-6)
        assert m2 == pytest.approx(-4.0 * np.pi**2 * acc2, abs=1e-6)


def test_moment_tail_bound_is_recorded():
    ap = Approximant(MAJORANT, 4.0)
    ap.moments()
    meta = ap.quadrature_meta
    assert meta.tail_bound <= 1e-10
    assert meta.half_width >= 64.0
    assert meta.panel_tol == ap.quad_tol


def test_approximant_validation():
    with pytest.raises(ValueError):
        Approximant("inner", 4.0)
    with pytest.raises(ValueError):
        Approximant(MINORANT, 0.0)
    with pytest.raises(ValueError):
        Approximant(MINORANT, 4.0, order="quartic")
    with pytest.raises(TypeError):
        moments(lambda t: t)
