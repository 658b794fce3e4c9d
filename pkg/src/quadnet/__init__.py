"""Gaussian simulator and analysis toolkit for four-mode squeezed-light networks.

The package is organised bottom-up:

- :mod:`quadnet.states` — Gaussian states, symplectic channels, quadrature
  combinations, and physicality checks (vacuum variance 1/4).
- :mod:`quadnet.criteria` — the six correlation combinations per state family,
  closed-form variances, optimal gains, and the bipartite separability bounds
  used to certify full inseparability.
- :mod:`quadnet.network` — a small text format for optical networks, its
  elaborator, and the preset four-mode experiment builder.
- :mod:`quadnet.sampling` — homodyne sample generation, variance estimation,
  and spectrum-analyzer-style noise traces.
- :mod:`quadnet.calibration` — measured-data containers, uniform-efficiency
  fitting, and model-vs-measurement consistency reports.
- :mod:`quadnet.cli` — the ``quadnet`` command-line entry point.
"""

from .calibration import (
    CalibrationFit,
    CalibrationResult,
    ConsistencyReport,
    MeasuredComponent,
    MeasuredDataset,
    MeasuredSum,
    PredictedMeasurement,
    ReportRow,
    SumReconciliation,
    consistency_report,
    fit_uniform_efficiency,
    infer_sum_gains,
    load_measured_dataset,
    packaged_dataset,
    predict_measured,
    synthetic_dataset,
)
from .criteria import (
    ALL_BIPARTITIONS,
    CLUSTER_LABELS,
    CRITERION_LABELS,
    FAMILIES,
    GHZ_LABELS,
    Bipartition,
    CriterionPair,
    CriterionResult,
    GainVector,
    bipartition_bound,
    closed_form,
    closed_form_cluster,
    closed_form_ghz,
    combination_forms,
    combination_labels,
    criterion_pairs,
    criterion_totals,
    evaluate_criteria,
    excluded_bipartitions,
    full_inseparability,
    numeric_optimal_gain,
    results_from_totals,
    uncovered_bipartitions,
    variance_sum_bound,
)
from .errors import (
    ConventionSearchError,
    FitNonConvergenceError,
    NetworkFormatError,
    NetworkParseError,
    ParameterRangeError,
    PhysicalityError,
    QuadnetError,
    UndeclaredLabelError,
    UnknownKeywordError,
)
from .network import (
    Element,
    ExperimentConfig,
    NetworkSpec,
    PhaseConvention,
    build_experiment_network,
    default_convention,
    elaborate,
    packaged_network,
    parse_network,
    serialize_network,
    simulate_experiment,
)
from .sampling import (
    NoiseTrace,
    TraceConfig,
    VarianceEstimate,
    emit_trace,
    estimate_variance,
    sample_quadratures,
    trace_to_csv,
)
from .states import (
    MAX_SQUEEZING,
    VACUUM_VARIANCE,
    Axis,
    GaussianChannel,
    GaussianState,
    QuadForm,
    QuadIndex,
    apply,
    beam_splitter,
    combination_variance,
    commutation_matrix,
    is_physical,
    is_symplectic,
    loss_channel,
    phase_shift,
    snl,
    squeezer,
    vacuum,
    variance_db,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # states
    "VACUUM_VARIANCE",
    "MAX_SQUEEZING",
    "Axis",
    "QuadIndex",
    "GaussianState",
    "GaussianChannel",
    "QuadForm",
    "vacuum",
    "commutation_matrix",
    "is_physical",
    "is_symplectic",
    "squeezer",
    "phase_shift",
    "beam_splitter",
    "loss_channel",
    "apply",
    "snl",
    "combination_variance",
    "variance_db",
    # criteria
    "FAMILIES",
    "CLUSTER_LABELS",
    "GHZ_LABELS",
    "CRITERION_LABELS",
    "GainVector",
    "closed_form",
    "closed_form_cluster",
    "closed_form_ghz",
    "combination_labels",
    "combination_forms",
    "criterion_totals",
    "numeric_optimal_gain",
    "Bipartition",
    "ALL_BIPARTITIONS",
    "CriterionPair",
    "CriterionResult",
    "criterion_pairs",
    "variance_sum_bound",
    "bipartition_bound",
    "excluded_bipartitions",
    "evaluate_criteria",
    "results_from_totals",
    "uncovered_bipartitions",
    "full_inseparability",
    # network
    "Element",
    "NetworkSpec",
    "parse_network",
    "serialize_network",
    "elaborate",
    "ExperimentConfig",
    "PhaseConvention",
    "build_experiment_network",
    "simulate_experiment",
    "default_convention",
    "packaged_network",
    # sampling
    "VarianceEstimate",
    "sample_quadratures",
    "estimate_variance",
    "TraceConfig",
    "NoiseTrace",
    "emit_trace",
    "trace_to_csv",
    # calibration
    "MeasuredComponent",
    "MeasuredSum",
    "MeasuredDataset",
    "load_measured_dataset",
    "packaged_dataset",
    "PredictedMeasurement",
    "predict_measured",
    "synthetic_dataset",
    "CalibrationResult",
    "SumReconciliation",
    "CalibrationFit",
    "infer_sum_gains",
    "fit_uniform_efficiency",
    "ReportRow",
    "ConsistencyReport",
    "consistency_report",
    # errors
    "QuadnetError",
    "PhysicalityError",
    "ConventionSearchError",
    "FitNonConvergenceError",
    "NetworkParseError",
    "UnknownKeywordError",
    "UndeclaredLabelError",
    "ParameterRangeError",
    "NetworkFormatError",
]
