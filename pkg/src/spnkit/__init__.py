"""spnkit: copositivity testing, PSD-plus-nonnegative splittings, orbit
searches over permutations and positive diagonal scalings, sign-pattern
graphs, and simplex quadratic-program relaxation diagnostics.

All public row/column positions are 1-based; see README for conventions.
"""

from .classes import (
    ClassLabel,
    RowSignSummary,
    block_diag,
    block_diag_class,
    classify,
    idx,
    is_almost_block,
    is_block_sign,
    is_Mn,
    is_nonnegative,
    is_Qmin,
    is_Qminus,
    is_Qplus,
    is_Rn,
    is_zmatrix,
    row_sign_summary,
)
from .cones import (
    CopositivityReport,
    DnnWitness,
    SpnCertificate,
    TraceStep,
    certificate_from_json,
    certificate_to_json,
    copositive_oracle,
    spn_decompose_recursive,
    spn_oracle,
    validate_certificate,
    witness_to_json,
)
from .errors import (
    DimensionTooLargeError,
    InvalidParamsError,
    LpNumericalFailureError,
    NoConvergenceError,
    NotInSupportedClassError,
    ParseError,
    SpnKitError,
    UndecidedError,
    ZeroPivotError,
)
from .fixtures import NAMES as FIXTURE_NAMES
from .fixtures import fixture_path, load_fixture
from .matcore import (
    DEFAULT_TOL,
    GroupElement,
    SymMatrix,
    Tolerances,
    apply_group,
    compose,
    delete_row_col,
    frob,
    identity_group,
    inverse_group,
    project_psd,
    schur_complement,
    sym_eigen,
)
from .orbit import (
    OrbitResult,
    joint_orbit_search,
    kn_generator,
    permute_into_Mn,
    rescale_into_Mn,
)
from .signgraph import (
    SignGraphs,
    edges_to_dot,
    extract_sign_graphs,
    is_threshold,
    orbit_necessary_filter,
    threshold_elimination,
)
from .simplex import LpProblem, solve_feasibility
from .stqp import (
    Affine,
    Raw,
    Separable,
    SpnBracket,
    StqpInstance,
    StqpReport,
    build_affine,
    build_separable,
    certify_tightness,
    raw_instance,
    sphere_relaxation,
    z_dnn_primal,
    z_spn_bisection,
    z_spn_bracket,
    z_star_oracle,
)
from .textio import (
    format_matrix,
    format_vector,
    parse_matrix,
    parse_vector,
    read_matrix,
    read_vector,
    write_matrix,
    write_vector,
)

__version__ = "0.1.0"
