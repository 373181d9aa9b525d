"""Schubert-class pullbacks to the group and comodule expansions, mod p."""

from .cartan import CartanType, RootSystem, build_root_system
from .comodule import ComoduleExpansion, comodule_expansion, coproduct_coefficient
from .fplinalg import QuotientSpace, row_reduce
from .pullback import (
    CalibrationError,
    ClassificationResult,
    ConsistencyError,
    LabeledFamily,
    PullbackProblem,
    SignedMonomial,
    build_relations,
    calibrate,
    classify,
    expected_dims,
    kac_presentation,
)
from .verify import (
    ExpectedCase,
    VerificationReport,
    closed_form_check,
    load_cases,
    run_case,
    run_cases,
)
from .weyl import (
    Factorization,
    LengthStratum,
    WeylElement,
    WeylGroup,
    parse_word_text,
    poincare_coefficients,
)

__version__ = "0.1.0"

__all__ = [
    "CartanType",
    "RootSystem",
    "build_root_system",
    "WeylElement",
    "WeylGroup",
    "LengthStratum",
    "Factorization",
    "parse_word_text",
    "poincare_coefficients",
    "QuotientSpace",
    "row_reduce",
    "PullbackProblem",
    "ClassificationResult",
    "SignedMonomial",
    "LabeledFamily",
    "CalibrationError",
    "ConsistencyError",
    "build_relations",
    "classify",
    "calibrate",
    "kac_presentation",
    "expected_dims",
    "ComoduleExpansion",
    "comodule_expansion",
    "coproduct_coefficient",
    "ExpectedCase",
    "VerificationReport",
    "load_cases",
    "run_case",
    "run_cases",
    "closed_form_check",
]
