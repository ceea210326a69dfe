"""Exact signatures of piecewise-polynomial paths and the algebra of path varieties."""

from .errors import ValidationError
from .freealg import (
    FreeTensor,
    LetterMap,
    antipode,
    concat_product,
    deconcat,
    half_shuffle_left,
    half_shuffle_right,
    letter_map_extend,
    shuffle,
)
from .ideals import (
    ClosureType,
    GradedBasis,
    ideal_basis,
    invariant_projector,
    m_p,
    member,
    multi_path_ideal,
    phi,
    power_ideal,
    shift_ideal,
)
from .paths import (
    PiecewisePolyPath,
    PolynomialMap,
    PolySegment,
    apply_polynomial_map,
    concat,
    delta_shift,
    lambda_star,
    left_subpath,
    reverse,
    signature,
    stopped_signature_poly,
)
from .poly import Polynomial
from .series import (
    TruncatedSeries,
    exp_conc,
    first_kind_coordinate,
    is_grouplike,
    is_lie,
    log_conc,
    pair,
    series_inverse,
    series_mul,
)
from .varieties import (
    RankSpec,
    VarietySpec,
    hypersurface_test,
    in_variety,
    increments_variety,
    linear_signature_polynomial,
    loops_variety,
    rank_test,
    realize_log_signature,
    sphere_or_hyperplane_test,
    subspace_test,
)

__version__ = "0.1.0"

__all__ = [
    "antipode",
    "apply_polynomial_map",
    "ClosureType",
    "concat",
    "concat_product",
    "deconcat",
    "delta_shift",
    "exp_conc",
    "first_kind_coordinate",
    "FreeTensor",
    "GradedBasis",
    "half_shuffle_left",
    "half_shuffle_right",
    "hypersurface_test",
    "ideal_basis",
    "in_variety",
    "increments_variety",
    "invariant_projector",
    "is_grouplike",
    "is_lie",
    "lambda_star",
    "left_subpath",
    "letter_map_extend",
    "LetterMap",
    "linear_signature_polynomial",
    "log_conc",
    "loops_variety",
    "m_p",
    "member",
    "multi_path_ideal",
    "pair",
    "phi",
    "PiecewisePolyPath",
    "Polynomial",
    "PolynomialMap",
    "PolySegment",
    "power_ideal",
    "rank_test",
    "RankSpec",
    "realize_log_signature",
    "reverse",
    "series_inverse",
    "series_mul",
    "shift_ideal",
    "shuffle",
    "signature",
    "sphere_or_hyperplane_test",
    "stopped_signature_poly",
    "subspace_test",
    "TruncatedSeries",
    "ValidationError",
    "VarietySpec",
]
