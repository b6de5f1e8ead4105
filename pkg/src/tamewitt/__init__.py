"""Tame Witt groups of quadratic forms over Henselian valued fields."""
from .valued_fields import field_by_name, laurent
from .quadratic_forms import QuadraticForm, SearchBudget, norm_form
from .graded_forms import GradedQuadraticForm, TameWittClass, graded_witt_class
from .norms import Norm, check_bounded, induce_graded_form, is_tame_norm
from .tame_witt import (
    is_in_Iqt,
    lift_graded,
    property_S_check,
    residue_class,
    springer_tame_decompose,
    witt_index_tame,
)
from .q2_witt import Q2WittClass, hilbert_symbol_2, square_class_q2, two_residue_classes_t, witt_class_q2

__all__ = [
    "field_by_name", "laurent", "QuadraticForm", "SearchBudget", "norm_form",
    "GradedQuadraticForm", "TameWittClass", "graded_witt_class",
    "Norm", "check_bounded", "induce_graded_form", "is_tame_norm",
    "is_in_Iqt", "lift_graded", "property_S_check", "residue_class",
    "springer_tame_decompose", "witt_index_tame",
    "Q2WittClass", "hilbert_symbol_2", "square_class_q2", "two_residue_classes_t", "witt_class_q2",
]

__version__ = "0.1.0"
