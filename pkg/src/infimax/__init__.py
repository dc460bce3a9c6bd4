"""Infimax sequences, their S-adic substitutions, Rauzy fractals and interval translation maps."""

from .errors import (
    AmbiguousRecoveryError,
    CapExceededError,
    ConvergenceError,
    IndexListError,
    InfimaxError,
    InsufficientDepthError,
    NoMatchError,
    OrderingError,
    PathError,
    RecoveryError,
    SignViolationError,
    WindowTooShortError,
    WordTooLongError,
)
from .fractal import (
    EndpointData,
    FractalPoint,
    endpoints,
    fractal_sample,
    fractal_values,
    phi,
    psi_L,
    psi_R,
    upsilon_plus,
    upsilon_plus_shift,
)
from .indices import IndexList, TailKind, as_index_list
from .ipsa import (
    Edge,
    Path,
    PathTail,
    SpecialPath,
    TailClass,
    classify_tail,
    edges_for_level,
    enumerate_finite_paths,
    path_count,
    path_for_shift,
    point_position,
    recover_path,
    sequence_window,
    special_path,
    word_map,
)
from .itm import (
    IntervalUnion,
    Itinerary,
    ITMParams,
    attractor_approx,
    conjugacy_check,
    itinerary,
    itm_map,
    itm_params_from_ell,
)
from .projection import (
    StableCovector,
    abelianization_matrix,
    b_matrix,
    birkhoff_coefficient,
    cross_ratio_bound,
    ell_sequence,
    hilbert_distance,
    stable_covector,
)
from .words import (
    PointedWord,
    alpha_prefix,
    apply_substitution,
    beta_suffix,
    check_allowed_pairs,
    compose_apply,
    factor_complexity,
    image_lengths,
)

__version__ = "0.1.0"
