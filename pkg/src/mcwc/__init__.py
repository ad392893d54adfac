"""Multiply constant-weight codes: bounds, constructions, verification and
exact small-case search."""

from .core import (
    CodeParameters,
    ConstructionError,
    DomainError,
    FormatError,
    IngredientError,
    McwcError,
    ParameterMismatchError,
    PartitionedCode,
    PartitionedWord,
    ShapeError,
    SizeError,
    VerificationReport,
    format_code,
    hamming_distance,
    load_code,
    min_distance,
    parse_code,
    save_code,
    verify_mcwc,
)
from .bounds import (
    AsymptoticPoint,
    BoundResult,
    asymptotic_point,
    best_upper_bound,
    binary_entropy,
    comparison_f,
    gv_lower_bound,
    johnson_eq3,
    johnson_recursive,
    mu_c,
    mu_gv,
    plotkin_bound,
    plotkin_discrete,
    q_entropy,
    spherical_bound,
)
from .scheme import SchemeTables, build_scheme_tables, eberlein
from .lp import (
    LpSolution,
    RationalLinearProgram,
    delsarte_lp,
    format_lp,
    lp_bound,
    solve_lp,
)
from .designs import (
    GddDesign,
    SkewSquare,
    SquareKind,
    bfc_fill,
    fill_hole,
    format_gdd,
    format_square,
    load_square,
    mcwc_to_square,
    parse_gdd,
    parse_square,
    sas_as_hsas,
    save_square,
    sfs_type_key,
    square_to_mcwc,
    transversal_design,
    verify_gdd,
    verify_square,
    wfc_construct,
)
from .constructions import (
    BaseCodewordTable,
    BaseWord,
    ColoredDecomposition,
    EdgeMember,
    PartitionMember,
    QaryCode,
    ResolvableBibd,
    affine_plane_bibd,
    bibd_to_mcwc,
    concatenate,
    decomposition_to_mcwc,
    develop,
    digon_decomposition,
    format_base_table,
    format_bibd,
    format_decomposition,
    load_base_table,
    one_factorization_k4,
    ordered_pair_decomposition,
    parse_base_table,
    parse_bibd,
    parse_decomposition,
    repetition_code,
    verify_bibd,
    verify_decomposition,
    verify_qary,
)
from .oracle import OracleResult, SearchConfig, enumerate_words, max_cwc, max_mcwc

__version__ = "0.1.0"
