"""deltasift: computable infinitesimal arithmetic and delta-kernel integrals.

The package has four layers plus a CLI:

* :mod:`deltasift.series` -- truncated power series in one infinitesimal
  generator: field arithmetic, total order, classification, standard part,
  analytic extension and the mean-value probe.
* :mod:`deltasift.seqring` -- rings of scalar sequences modulo the
  eventually-zero and null ideals, with decidable queries for rational
  generators.
* :mod:`deltasift.kernels` -- closed-form delta-kernel integrals: sifting,
  window conditions, the regularized reciprocal, the trigonometric kernel,
  and step-function geometry.
* :mod:`deltasift.oracle` -- the independent numeric layer: adaptive
  quadrature, principal values, scale extrapolation, pendulum periods.
"""

__version__ = "0.1.0"

from .config import default_trunc, precision, set_default_trunc, set_precision
from .series import (
    ATAN,
    COS,
    EXP,
    LOG,
    SIN,
    AnalyticSeed,
    Classification,
    Comparison,
    SeriesNumber,
    add,
    arctan_ext,
    classify,
    compare,
    compose_analytic,
    const,
    divide,
    eta,
    from_json_dict,
    invert,
    is_finite,
    mul,
    mvt_residual,
    mvt_theta,
    polynomial_seed,
    power,
    series,
    standard_part,
    sub,
    to_json_dict,
    to_text,
    zero,
)
from .seqring import (
    IdealTag,
    SeqKind,
    SeqNumber,
    StLimit,
    Trilean,
    equals_mod,
    in_ideal,
    seq_add,
    seq_const,
    seq_from_eta_terms,
    seq_limit,
    seq_mul,
    seq_neg,
    seq_opaque,
    seq_periodic,
    seq_rational,
    seq_standard_part,
    seq_sub,
    zero_divisor_witness,
)
from .testfunctions import FuncKind, TestFunction, polynomial, rational, trig_sum
from .kernels import (
    DiracReport,
    SiftReport,
    SokhotskiResult,
    Window,
    arctan_family_mass,
    cauchy_kernel,
    dirac_conditions,
    fourier_kernel,
    fourier_kernel_direct,
    fourier_reduced_integral,
    heaviside_st,
    heaviside_unit,
    laugwitz_condition,
    sift,
    sift_over,
    sokhotski,
    zigzag_check,
    zigzag_points,
)
from .oracle import (
    CorpusEntry,
    PendulumRun,
    QuadratureResult,
    alpha_extrapolate,
    elliptic_period_ratio,
    integrate,
    integration_corpus,
    linear_period,
    pendulum_period,
    pv_integrate,
    run_corpus,
)
from .exprlang import (
    evaluate,
    format_series,
    parse_expr,
    parse_seq_generator,
    parse_testfunction,
)
