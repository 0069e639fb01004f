"""Exact symbolic checks on planar kinematical symmetry.

The package verifies, by canonical-form arithmetic over Gaussian rationals,
the bracket structure of the planar kinematical algebra with its two central
terms, the vanishing of the boost-boost central parameter in the bundled
free-field realizations, covariance and conservation identities of the
two-component wave equation, the collapse of the symmetric rank-N system to
two distinct equations, and (with floating point, as a cross-check only) the
same brackets on a truncated oscillator basis.
"""

__version__ = "0.1.0"

from .cocycle import (
    ExtensionSpace,
    JacobiResult,
    LieAlgebraSpec,
    central_extensions,
    classes_independent,
    is_cocycle,
    jacobi_check,
)
from .exactscalar import I, ONE, ZERO, PolyExpr, Scalar, SymbolRegistry, parse_scalar
from .fieldcheck import (
    EomRules,
    FieldPoly,
    build_wave_operator,
    check_boost_covariance,
    check_conservation,
    check_rotation_covariance,
    multispinor_equations,
    reduce_on_shell,
)
from .galrealize import (
    GeneratorSet,
    StructureTable,
    central_scalar,
    default_table,
    extend_lambda,
    extract_kappa,
    get_table,
    kappa_shift,
    literal_table,
    make_registry,
    realize_levyleblond,
    realize_multispinor,
    realize_schrodinger,
    verify_structure,
)
from .matspin import (
    MatExpr,
    SymBasis,
    embed_factor,
    gamma_projector,
    pauli,
    restrict_symmetric,
)
from .numtrunc import (
    build_numeric,
    low_mode_projector,
    residual_report,
    run_numeric_check,
    xp_defect,
)
from .weylop import (
    DiffOp,
    ScalarDiffOp,
    bracket,
    compose,
    conjugate_phase,
    conjugate_shift,
)

__all__ = [
    "__version__",
    "Scalar", "PolyExpr", "SymbolRegistry", "parse_scalar", "ZERO", "ONE", "I",
    "MatExpr", "pauli", "gamma_projector", "SymBasis", "embed_factor",
    "restrict_symmetric",
    "ScalarDiffOp", "DiffOp", "compose", "bracket", "conjugate_phase",
    "conjugate_shift",
    "GeneratorSet", "StructureTable", "make_registry", "realize_schrodinger",
    "realize_levyleblond", "realize_multispinor", "extend_lambda",
    "kappa_shift", "extract_kappa", "central_scalar", "verify_structure",
    "default_table", "literal_table", "get_table",
    "LieAlgebraSpec", "JacobiResult", "ExtensionSpace", "jacobi_check",
    "central_extensions", "is_cocycle", "classes_independent",
    "FieldPoly", "EomRules", "reduce_on_shell", "check_conservation",
    "build_wave_operator", "check_boost_covariance",
    "check_rotation_covariance", "multispinor_equations",
    "build_numeric", "residual_report", "run_numeric_check",
    "low_mode_projector", "xp_defect",
]
