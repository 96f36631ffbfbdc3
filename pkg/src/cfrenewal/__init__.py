"""Exact continued-fraction arithmetic, the Gauss system, and its renewal law.

The package is organised around one pipeline: expand reals into digit
sequences with certified error control, drive the two-sided shift and
its suspension flow, and confront sampled renewal overshoots with the
quadrature form of their limiting distribution.
"""

from .cf import (
    Convergent,
    DigitSequence,
    RenewalResult,
    convergents,
    evaluate_cf,
    expand_digits,
    log_q,
    renewal_index,
    reversed_quotient_chain,
)
from .errors import (
    BudgetExceeded,
    CFRenewalError,
    IncompatibleTables,
    InsufficientDigits,
    InvalidBins,
    InvalidDigits,
    InvalidSampleCount,
    OutOfChart,
    PrecisionExhausted,
    QuadratureFailure,
    RationalInput,
    TrailingUnderflow,
    Unreachable,
)
from .fixedreal import FixedReal
from .flow import (
    CorrectionSeries,
    FlowPoint,
    RenewalFlowReport,
    birkhoff_sum,
    correction_f,
    flow_evolve,
    renewal_time,
    renewal_vs_flow_check,
    roof_phi,
)
from .gauss import (
    Cylinder,
    NaturalExtPoint,
    cylinder_interval,
    cylinder_measure,
    cylinder_rectangle,
    digit_frequency,
    gauss_map,
    mu1_cdf,
    mu2_density,
    natural_extension_inverse,
    natural_extension_step,
    sample_mu1,
    sample_mu2,
    sample_mu2_window,
)
from .limitlaw import (
    LEVY_CONSTANT,
    DistributionTable,
    QuadratureSpec,
    default_ratio_edges,
    empirical_pn,
    ks_distance,
    normalization_constant,
    theoretical_pn,
    theoretical_table,
)
from .mixing import (
    BoxSpec,
    CorrelationEstimate,
    LeafSegment,
    connect_via_leaves,
    correlation_estimate,
    flow_pair_distance,
    holonomy_invariant,
    stable_leaf_point,
    unstable_leaf_point,
)
from .streams import CHUNK, substream

__version__ = "0.1.0"

__all__ = [
    "BoxSpec",
    "BudgetExceeded",
    "CFRenewalError",
    "CHUNK",
    "Convergent",
    "CorrectionSeries",
    "CorrelationEstimate",
    "Cylinder",
    "DigitSequence",
    "DistributionTable",
    "FixedReal",
    "FlowPoint",
    "IncompatibleTables",
    "InsufficientDigits",
    "InvalidBins",
    "InvalidDigits",
    "InvalidSampleCount",
    "LEVY_CONSTANT",
    "LeafSegment",
    "NaturalExtPoint",
    "OutOfChart",
    "PrecisionExhausted",
    "QuadratureFailure",
    "QuadratureSpec",
    "RationalInput",
    "RenewalFlowReport",
    "RenewalResult",
    "TrailingUnderflow",
    "Unreachable",
    "birkhoff_sum",
    "connect_via_leaves",
    "convergents",
    "correction_f",
    "correlation_estimate",
    "cylinder_interval",
    "cylinder_measure",
    "cylinder_rectangle",
    "default_ratio_edges",
    "digit_frequency",
    "empirical_pn",
    "evaluate_cf",
    "expand_digits",
    "flow_evolve",
    "flow_pair_distance",
    "gauss_map",
    "holonomy_invariant",
    "ks_distance",
    "log_q",
    "mu1_cdf",
    "mu2_density",
    "natural_extension_inverse",
    "natural_extension_step",
    "normalization_constant",
    "renewal_index",
    "renewal_time",
    "renewal_vs_flow_check",
    "reversed_quotient_chain",
    "roof_phi",
    "sample_mu1",
    "sample_mu2",
    "sample_mu2_window",
    "stable_leaf_point",
    "substream",
    "theoretical_pn",
    "theoretical_table",
    "unstable_leaf_point",
]
