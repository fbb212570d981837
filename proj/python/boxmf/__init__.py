"""Box-counting multifractal analysis of intraday price series."""

from ._core import (
    BootstrapConfig,
    BootstrapReport,
    BoxMeasure,
    BoxScheme,
    ConfigError,
    DayAnalysis,
    IngestError,
    MassExponents,
    MomentGrid,
    NumericError,
    PartitionSurface,
    SingularitySpectrum,
    analytic_binomial_alpha,
    analytic_binomial_f,
    analytic_binomial_tau,
    analyze_series,
    batch_summary,
    binomial_cascade,
    bootstrap_analysis,
    build_box_measure,
    cli_main,
    constant_series,
    derive_box_scheme,
    fit_mass_exponents,
    legendre_spectrum,
    load_days,
    log_partition_value,
    partition_surface,
    random_series,
    shuffle_values,
    tau_linearity_report,
)

__version__ = "0.1.0"
