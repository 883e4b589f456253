"""Stability bounds for the Fisher information of super-resolution.

Builds bandlimited box approximants, the sensitivity matrix and Fisher
information of the spike-recovery model, the bound curves h_-/h_+ on the
squared extremal singular values, and the separation threshold above
which the smallest Fisher eigenvalue stays bounded away from zero.
"""

__version__ = "0.1.0"

from .extremal import (
    MINORANT,
    MAJORANT,
    SELBERG,
    CUBED,
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
from .spectral import (
    DuplicateLocation,
    FisherMatrix,
    ProblemSize,
    SensitivityMatrix,
    SingularFisher,
    SpikeConfig,
    crlb_linear_form,
    fim,
    fim_extremal_eigs,
    fim_from_gram,
    fourier_vector,
    gram_extremal,
    poisson_series_check,
    sensitivity,
    synth_signal,
    wraparound_separation,
)
from .bounds import (
    BoundCurve,
    NoSignChange,
    bound_curve,
    classical_v0_bounds,
    h_bound,
    stability_threshold,
)
from .experiments import (
    InfeasibleSeparation,
    TrialRecord,
    VerificationReport,
    gen_amplitudes,
    gen_separated_tau,
    run_empirical_extremes,
    run_function_profiles,
    run_resolution_limit,
    run_verification_suite,
)
