"""Hybrid sets, hybrid intervals and case-free symbolic block matrix arithmetic."""

from .errors import (
    ArityMismatch,
    DivisionByZero,
    EndpointMismatch,
    FlavorMismatch,
    HybridMatError,
    NonAffineExpression,
    ShapeMismatch,
    UnboundParameter,
    UndefinedTermForced,
)
from .sizes import ParamEnv, SizeExpr, size, size_add, size_eval, sym
from .hybridset import (
    EMPTY,
    HybridSet,
    Point,
    as_hybrid,
    equal_on,
    generalized_partition_check,
    hset,
    index_domain,
    is_disjoint,
    is_reducible,
    mult_at,
    ominus,
    oplus,
    otimes,
    scale,
    strict_partition_check,
    support,
)
from .intervals import (
    Box,
    Flavor,
    HybridInterval,
    cartesian,
    cc,
    co,
    interval_concat,
    interval_mult_at,
    interval_negate,
    oc,
    oo,
    parse_interval,
    parse_region,
    rect_product,
    tuple_interval,
)
from .hybridfn import (
    BlockTerm,
    HybridFunctionExpr,
    SliceTerm,
    SumTerm,
    TermLayer,
    fn_oplus,
    layer,
    net_atoms_at,
    net_terms_at,
    reduce_plus,
    reduce_times,
    reduce_times_at,
    restrict_col,
    restrict_row,
)
from .blockmat import (
    BlockProduct,
    BlockSpec,
    Table,
    build_product,
    build_sum,
    build_sum_refined,
    evaluate,
    evaluate_pointwise,
    interleave_cuts,
    regions_of,
    sum_refinement,
    universe,
)

__version__ = "0.1.0"
