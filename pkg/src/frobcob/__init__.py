"""Labeled 2-cobordisms over an abelian group and their evaluations.

The package models surfaces between circle collections, each connected
piece carrying a genus and a label from an abelian group A, together
with the algebraic side: commutative Frobenius algebras equipped with
an A-action whose generators commute with multiplication.  Evaluation
sends a cobordism to an exact matrix over Q(i), and every structural
identity (functoriality, monoidality, independence of slicing) holds
as a strict equality of matrices.
"""

from .cobordism import (Cobordism, Component, CompositionError, cap, closed,
                        compose, copants, cup, cylinder, erase_labels, identity,
                        pants, permutation_cobordism, swap, tensor)
from .dsl import (ParseError, SourceSpan, ValidationError, format_algebra,
                  format_cobordism, parse_algebra, parse_cobordism,
                  parse_element, parse_group, parse_scalar)
from .frobenius import (AFrobeniusAlgebra, CheckReport, FrobeniusAlgebra,
                        NondegeneracyError, check_action, check_frobenius,
                        group_algebra)
from .groups import TRIVIAL, AbelianGroup, GroupElement, GroupMismatchError
from .linalg import (LinearMap, Permutation, ShapeError, SingularMatrixError,
                     kron, kron_all, matmul, permute_factors)
from .scalar import ONE, ZERO, I, Scalar
from .tqft import (ConsistencyError, Evaluator, RoundtripReport, SuiteResult,
                   WordShapeError, evaluate, evaluate_component, evaluate_word,
                   extract, roundtrip_report)
from .words import Atom, Word, random_cobordism, random_element, random_word

__version__ = "0.1.0"

__all__ = [
    "AFrobeniusAlgebra", "AbelianGroup", "Atom", "CheckReport", "Cobordism",
    "Component", "CompositionError", "ConsistencyError", "Evaluator",
    "FrobeniusAlgebra", "GroupElement", "GroupMismatchError", "I", "LinearMap",
    "NondegeneracyError", "ONE", "ParseError", "Permutation", "RoundtripReport",
    "Scalar", "ShapeError", "SingularMatrixError", "SourceSpan", "SuiteResult",
    "TRIVIAL", "ValidationError", "Word", "WordShapeError", "ZERO", "cap",
    "check_action", "check_frobenius", "closed", "compose", "copants", "cup",
    "cylinder", "erase_labels", "evaluate", "evaluate_component",
    "evaluate_word", "extract", "format_algebra", "format_cobordism",
    "group_algebra", "identity", "kron", "kron_all", "matmul", "pants",
    "parse_algebra", "parse_cobordism", "parse_element", "parse_group",
    "parse_scalar", "permutation_cobordism", "permute_factors",
    "random_cobordism", "random_element", "random_word", "roundtrip_report",
    "swap", "tensor",
]
