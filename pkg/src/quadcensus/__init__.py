"""Exact-arithmetic classification and counting of points relative to smooth
quadric hypersurfaces over odd-order finite fields."""

from .classify import (
    PointClass,
    classify_algebraic,
    classify_geometric,
    classify_tangent_count,
    hyperplane_section_form,
    tangent_count,
)
from .counting import (
    CharSumReport,
    JointCountReport,
    QuadricPair,
    RLBoundParams,
    char_sum,
    count_joint,
    indicator_identity_check,
    katz_bound,
    lemma32_bound,
    random_pair,
    random_smooth_quadric,
    restricted_char_sum,
    rl_bound,
    rl_params_for_quadric_product,
    single_form_projective_char_sum,
    sweep,
)
from .field import FieldError, FieldSpec, field_create, field_for_order, odd_prime_powers
from .forms import QuadraticForm, WittClass, format_form, parse_form
from .projective import (
    enumerate_points,
    lines_through,
    normalize,
    num_points,
    point_at,
    points_on_line,
)

__version__ = "0.1.0"
