"""Tests for the randomized experiment drivers and the verification suite."""

import numpy as np
import numpy.testing as npt
import pytest

import srstab.spectral as spectral
from srstab.bounds import h_bound
from srstab.experiments import (
    EXACT_MIN_GAP,
    REGULAR,
    InfeasibleSeparation,
    derive_trial_seed,
    gen_amplitudes,
    gen_separated_tau,
    run_empirical_extremes,
    run_function_profiles,
    run_resolution_limit,
    run_verification_suite,
    spikes_per_alpha,
)
from srstab.extremal import MAJORANT, MINORANT
from srstab.spectral import ProblemSize, sensitivity, wraparound_separation

# Frozen after one derived run: worst-case two-cluster distances; below the
# resolution limit (alpha < 2) these collapse with N, above they stay at 1
# because the interleaved grids land on exact Dirichlet-kernel zeros.
GOLDEN_DISTANCE_A4_N61 = 1.0
GOLDEN_DISTANCE_A4_N601 = 1.0


# ------------------------------------------------------------ placement

def test_exact_min_gap_contract():
    tau = gen_separated_tau(1001, 20, 6.0, EXACT_MIN_GAP, seed=42)
    assert tau.shape == (20,)
    assert np.all((0.0 <= tau) & (tau < 1.0))
    assert 1001 * wraparound_separation(tau) == pytest.approx(6.0, abs=1e-9)
    gaps = np.diff(np.sort(np.concatenate([tau, [np.sort(tau)[0] + 1.0]])))
    assert np.all(gaps >= 6.0 / 1001 - 1e-12)


def test_regular_placement():
    tau = gen_separated_tau(100, 4, 5.0, REGULAR, seed=0)
    assert wraparound_separation(tau) == pytest.approx(0.25, abs=1e-12)


def test_placement_determinism():
    a = gen_separated_tau(501, 10, 4.0, EXACT_MIN_GAP, seed=7)
    b = gen_separated_tau(501, 10, 4.0, EXACT_MIN_GAP, seed=7)
    npt.assert_array_equal(a, b)
    c = gen_separated_tau(501, 10, 4.0, EXACT_MIN_GAP, seed=8)
    assert np.any(a != c)


def test_placement_feasibility_and_validation():
    with pytest.raises(InfeasibleSeparation):
        gen_separated_tau(10, 3, 4.0)
    with pytest.raises(ValueError):
        gen_separated_tau(100, 1, 4.0)
    with pytest.raises(ValueError):
        gen_separated_tau(100, 4, 5.0, mode="jittered")


# ------------------------------------------------------------ amplitudes

def test_amplitudes_degenerate_kappa():
    c = gen_amplitudes(16, 1.0, seed=3)
    npt.assert_allclose(np.abs(c), 1.0, atol=1e-15)


def test_amplitudes_within_dynamic_range():
    c = gen_amplitudes(64, 3.0, seed=4)
    assert np.all(np.abs(c) >= 1.0)
    assert np.all(np.abs(c) <= 3.0)


def test_amplitudes_determinism():
    npt.assert_array_equal(gen_amplitudes(8, 2.0, seed=5),
                           gen_amplitudes(8, 2.0, seed=5))
    with pytest.raises(ValueError):
        gen_amplitudes(8, 0.5, seed=5)


def test_trial_seed_derivation():
    assert derive_trial_seed(42, 0) == 42
    assert derive_trial_seed(42, 1) == 43
    assert derive_trial_seed(0, 7) == 7


# ------------------------------------------------------------ empirical trials

@pytest.fixture(scope="module")
def small_trials():
    return run_empirical_extremes(101, [4.0, 6.0], trials=20, kappa=1.0,
                                  sigma2=1.0, seed=42)


def test_empirical_row_count_and_order(small_trials):
    assert len(small_trials) == 40
    keys = [(rec.alpha, rec.trial_id) for rec in small_trials]
    assert keys == sorted(keys)
    for rec in small_trials:
        assert rec.r == spikes_per_alpha(101, rec.alpha)
        assert rec.seed == derive_trial_seed(42, rec.trial_id)
        assert rec.lambda_min <= rec.lambda_max
        assert rec.sigma_min_sq <= rec.sigma_max_sq


def test_empirical_reproducibility(small_trials):
    again = run_empirical_extremes(101, [4.0, 6.0], trials=20, kappa=1.0,
                                   sigma2=1.0, seed=42)
    assert again == small_trials


def test_empirical_respects_h_bounds(small_trials):
    for rec in small_trials:
        assert rec.sigma_min_sq >= h_bound(MINORANT, rec.alpha)
        assert rec.sigma_max_sq <= h_bound(MAJORANT, rec.alpha)
        assert rec.lambda_min >= h_bound(MINORANT, rec.alpha)


def test_empirical_unit_kappa_identity(small_trials):
    # kappa = 1, sigma2 = 1: the Fisher matrix is the Gram matrix
    for rec in small_trials:
        assert rec.lambda_max <= rec.sigma_max_sq + 1e-9


def test_empirical_noise_scaling():
    base = run_empirical_extremes(101, [4.0], trials=3, kappa=1.0,
                                  sigma2=1.0, seed=9)
    quarter = run_empirical_extremes(101, [4.0], trials=3, kappa=1.0,
                                     sigma2=4.0, seed=9)
    for a, b in zip(base, quarter):
        assert b.lambda_min == pytest.approx(a.lambda_min / 4.0, rel=1e-12)
        assert b.sigma_min_sq == a.sigma_min_sq


def test_empirical_infeasible():
    with pytest.raises(InfeasibleSeparation):
        run_empirical_extremes(11, [3.0], trials=1, kappa=1.0, sigma2=1.0, seed=0)


# ------------------------------------------------------------ resolution limit

@pytest.fixture(scope="module")
def distance_rows():
    rows = run_resolution_limit([1.0, 4.0], [61, 121, 241, 601])
    return {(alpha, n): dist for alpha, n, _, dist in rows}


def test_distance_collapses_below_limit(distance_rows):
    assert distance_rows[(1.0, 601)] < distance_rows[(1.0, 61)]
    seq = [distance_rows[(1.0, n)] for n in (61, 121, 241, 601)]
    assert all(b <= a + 1e-12 for a, b in zip(seq, seq[1:]))


def test_distance_survives_above_limit(distance_rows):
    assert distance_rows[(4.0, 601)] >= 0.5 * distance_rows[(4.0, 61)]
    assert distance_rows[(4.0, 61)] == pytest.approx(GOLDEN_DISTANCE_A4_N61, rel=1e-9)
    assert distance_rows[(4.0, 601)] == pytest.approx(GOLDEN_DISTANCE_A4_N601, rel=1e-9)


def test_distance_r_column():
    rows = run_resolution_limit([2.0], [61])
    assert rows[0][2] == 61 // 6


def test_distance_zero_for_identical_sets():
    # the inner minimization attains 0 when the two location sets coincide
    size = ProblemSize(61)
    tau = gen_separated_tau(61, 8, 2.0, seed=13)
    v = sensitivity(size, tau).entries[:, :8]
    sv = np.linalg.svd(np.hstack([v, v]), compute_uv=False)
    assert sv[-1] <= 1e-12


def test_distance_validation():
    with pytest.raises(InfeasibleSeparation):
        run_resolution_limit([7.0], [61])
    with pytest.raises(ValueError):
        run_resolution_limit([1.0], [60])
    with pytest.raises(ValueError):
        run_resolution_limit([1.0], [21])


# ------------------------------------------------------------ profiles

def test_profiles_shape_and_sandwich():
    rows = run_function_profiles([9.0], -20.0, 20.0, 0.01)
    assert len(rows) == 4001
    center = next(row for row in rows if row[1] == 0.0)
    assert center[2] <= 1.0 <= center[3]
    for _, t, gm, gp, box in rows:
        assert gm <= box <= gp


def test_profiles_outside_box_row():
    rows = run_function_profiles([15.0], 20.0, 21.0, 1.0)
    _, t, gm, gp, box = rows[0]
    assert (t, box) == (20.0, 0.0)
    assert gm <= 0.0 <= gp


def test_profiles_multiple_alphas():
    rows = run_function_profiles([3.0, 9.0, 15.0], -2.0, 2.0, 1.0)
    assert len(rows) == 15
    assert sorted({row[0] for row in rows}) == [3.0, 9.0, 15.0]
    with pytest.raises(ValueError):
        run_function_profiles([3.0], 0.0, 1.0, 0.0)


# ------------------------------------------------------------ verification

def test_verification_fast_passes():
    report = run_verification_suite("fast")
    assert report.passed, [c.name for c in report.checks if not c.passed]
    names = {c.name for c in report.checks}
    assert "unit_columns" in names
    assert "poisson_reduction" not in names  # full level only


def test_verification_full_composition():
    report = run_verification_suite("full")
    assert report.passed, [c.name for c in report.checks if not c.passed]
    names = {c.name for c in report.checks}
    assert {"poisson_reduction", "box_sandwich", "classical_v0_bounds",
            "crlb_brackets", "gram_vs_bruteforce"} <= names
    poisson = next(c for c in report.checks if c.name == "poisson_reduction")
    assert poisson.residual <= 1e-6


def test_verification_rejects_unknown_level():
    with pytest.raises(ValueError):
        run_verification_suite("exhaustive")


def test_verification_detects_corrupted_normalization(monkeypatch):
    # a 1% error in the derivative normalization must break unit columns
    monkeypatch.setattr(ProblemSize, "c_norm",
                        property(lambda self: 1.01 * np.sqrt(
                            3.0 / (np.pi**2 * (self.N - 1) * (self.N + 1)))))
    report = run_verification_suite("fast")
    failed = {c.name for c in report.checks if not c.passed}
    assert "unit_columns" in failed
