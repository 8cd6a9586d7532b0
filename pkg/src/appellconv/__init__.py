"""Exact Appell sequences from moment sequences, and verification of their
higher-order convolution identities."""

from .appell import (
    AppellSeq,
    Poly,
    Seq,
    appell_convolve,
    appell_eval,
    appell_from_rv,
    appell_poly,
    binomial_convolve,
    conv_inverse,
    multinomial_convolve,
    scale_transform,
)
from .errors import (
    AppellError,
    CatalogError,
    ConsistencyError,
    NotInvertibleError,
    OrderError,
    PreconditionError,
)
from .exact import (
    binomial,
    compositions,
    double_factorial_odd,
    format_rational,
    multinomial,
    parse_rational,
    rising_factorial,
)
from .identities import (
    ConvolutionProblem,
    MixedMomentOracle,
    VerificationReport,
    lhs_multinomial_sum,
    theorem4_rhs,
    theorem5_rhs,
)
from .moments import (
    BernoulliP,
    CauchySigned,
    Constant,
    Exponential,
    Gamma,
    StdNormal,
    Uniform01,
    iid_sum_moments,
    linear_combo_moments,
    moment,
    parse_rv,
)
from .stirling import classical_stirling_table, gf_cross_check, stirling_num, stirling_poly

__version__ = "0.1.0"
