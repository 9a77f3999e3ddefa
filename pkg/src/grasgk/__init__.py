"""Exact computations in truncated Z2-graded Grassmann algebras.

The package builds E(n) over Q or F_p with one of three gradings, verifies
graded polynomial identities by randomized substitution, enumerates the
canonical spanning monomials of the relatively-free graded algebras, and
certifies component dimensions with an evaluation-rank oracle.  The growth
of the certified dimensions recovers the graded Gelfand-Kirillov dimension
empirically.
"""

from .scalar import FieldSpec, Scalar, FieldMismatchError, InvalidFieldError
from .grassmann import (
    GradingSpec,
    GrassmannElement,
    Monomial,
    MismatchError,
    TruncationError,
    gr_mul,
    gr_power,
    homogeneous_project,
    parity,
    random_homogeneous,
    structured_even_element,
)
from .freealg import (
    FreePoly,
    MultiDegree,
    ParityError,
    Variable,
    Word,
    build_g,
    commutator,
    commutator_chain,
    evaluate,
    identity_templates,
    left_normed_commutator,
    verify_identity,
    y,
    z,
)
from .spanning import (
    CanonicalMonomial,
    CompareReport,
    GrowthTable,
    closed_form_count,
    compare_counts,
    count_spanning,
    enumerate_spanning,
    gk_estimate,
    growth_table,
    hilbert_coeffs,
    kappa,
)
from .oracle import (
    ComponentResult,
    EvalMatrix,
    EvaluationPoint,
    IndependenceVerdict,
    component_dimension,
    evaluation_matrix,
    independence_check,
    make_points,
    rank,
    words_of_multidegree,
)

__version__ = "0.1.0"
