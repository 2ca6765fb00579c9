"""Measurable utility scales from ordinal and difference comparisons.

The package builds a cardinal utility function over a one-dimensional
alternative space by querying a preference oracle with binary choices
("is x better than y?") and difference comparisons ("is the step from
b1 to g1 a bigger improvement than the step from b2 to g2?").  The
resulting scale is unique up to positive affine transformations, which
the verification and fitting helpers make checkable.

Main entry points:

- :func:`construct_utility` builds a piecewise-linear utility function
  against a callable oracle.
- :func:`create_session` / :func:`submit_answer` run the same
  construction as a resumable question-and-answer session.
- :func:`solve_additive_representation` decides whether a finite table
  of comparisons admits any consistent utility assignment.
- :func:`exhaustive_check` and the ``check_*`` functions test the
  ordering axioms that make such a scale possible.
"""

from .errors import (
    AnchorsNotStrict,
    BadConfig,
    BracketInvalid,
    CardinalScaleError,
    DegenerateFit,
    DomainError,
    InconsistentTable,
    ModelTooLarge,
    NestingViolation,
    NoConvergence,
    NonMonotoneGenerator,
    PreconditionNotStrict,
    SchemaError,
    SessionComplete,
    SessionFailed,
    StaleQuery,
    TooEarly,
)
from .orders import (
    Alt,
    AxiomReport,
    Ordering3,
    PreferenceOracle,
    ProspectPair,
    check_A1,
    check_A1prime,
    check_A2,
    check_A3_approx,
    check_order_axioms,
)
from .models import (
    FiniteModel,
    GeneratorSpec,
    affine_transform,
    exhaustive_check,
    ingest_finite_model,
    ingest_utilities_csv,
    make_oracle,
    oracle_from_function,
    parse_generator,
    standard_suite,
)
from .feasibility import (
    FeasibilityResult,
    check_certificate,
    describe_constraint,
    solve_additive_representation,
)
from .construct import (
    AffineFit,
    BinaryProbe,
    BisectionProfile,
    DifferenceProbe,
    DyadicGrid,
    EvalResult,
    StandardSequence,
    UtilityFn,
    affine_fit,
    assemble_partial,
    construct_utility,
    evaluate,
    evaluate_detailed,
    extend_unit_sequence,
    midpoint,
    quotient_representative,
    refine_grid,
    run_with_oracle,
    solve_indifference,
    verify_representation,
)
from .session import (
    Query,
    Session,
    SessionConfig,
    create_session,
    current_estimate,
    drive_session,
    estimate_query_budget,
    next_query,
    replay_session,
    respond_with_oracle,
    submit_answer,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "CardinalScaleError",
    "DomainError",
    "BadConfig",
    "BracketInvalid",
    "NoConvergence",
    "PreconditionNotStrict",
    "AnchorsNotStrict",
    "NestingViolation",
    "DegenerateFit",
    "NonMonotoneGenerator",
    "SchemaError",
    "InconsistentTable",
    "ModelTooLarge",
    "StaleQuery",
    "SessionComplete",
    "SessionFailed",
    "TooEarly",
    # orders
    "Alt",
    "Ordering3",
    "ProspectPair",
    "PreferenceOracle",
    "AxiomReport",
    "check_order_axioms",
    "check_A1",
    "check_A1prime",
    "check_A2",
    "check_A3_approx",
    # models
    "GeneratorSpec",
    "FiniteModel",
    "parse_generator",
    "standard_suite",
    "make_oracle",
    "oracle_from_function",
    "affine_transform",
    "ingest_finite_model",
    "ingest_utilities_csv",
    "exhaustive_check",
    # feasibility
    "FeasibilityResult",
    "solve_additive_representation",
    "check_certificate",
    "describe_constraint",
    # construction
    "BisectionProfile",
    "BinaryProbe",
    "DifferenceProbe",
    "StandardSequence",
    "DyadicGrid",
    "UtilityFn",
    "EvalResult",
    "AffineFit",
    "run_with_oracle",
    "solve_indifference",
    "midpoint",
    "extend_unit_sequence",
    "refine_grid",
    "assemble_partial",
    "construct_utility",
    "evaluate",
    "evaluate_detailed",
    "verify_representation",
    "affine_fit",
    "quotient_representative",
    # sessions
    "SessionConfig",
    "Session",
    "Query",
    "create_session",
    "next_query",
    "submit_answer",
    "current_estimate",
    "respond_with_oracle",
    "drive_session",
    "replay_session",
    "estimate_query_budget",
]
