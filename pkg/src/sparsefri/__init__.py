"""Fuzzy rule interpolation for sparse rule bases."""

from .errors import (
    DegenerateRuleError,
    DimensionMismatchError,
    DomainError,
    FisParseError,
    FriError,
    MethodError,
    NotSurroundedError,
    UndefinedRatioError,
)
from .fisformat import (
    FisDocument,
    MembershipDecl,
    ObsDocument,
    Rule,
    VariableDecl,
    parse_fis,
    parse_obs,
    read_fis,
    read_obs,
    serialize_fis,
    serialize_obs,
    split_listing,
    to_fuzzy_set,
)
from .fuzzy import (
    AlphaCut,
    AlphaLevelScheme,
    PiecewiseLinearFuzzySet,
    ReferencePointKind,
    alpha_cut,
    breakpoint_levels,
    cog_defuzzify,
    generate_levels,
    lower_upper_distance,
    membership,
    minkowski_distance,
    representative_value,
    set_from_alpha_cuts,
    validate_cnf,
)
from .methods import Conclusion, InterpolationConfig, Method, RowError, RuleView, evaluate, evaluate_batch, interpolate
from .estimator import FuzzyRuleInterpolator

__version__ = "0.1.0"
