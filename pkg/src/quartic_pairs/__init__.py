"""Desk-scale computations for pairs of diagonal quartic forms."""
from .errors import (BudgetExceeded, DependentForms, HypothesisViolated, PreconditionError,
                     QuadratureError, QuarticError, SingleClass, TheoremViolation)
from .forms import FormPair, IndexClassification, NormalizedSystem, classify, counterexample_pair, normalize
from .kernels import BACKEND

__all__ = [
    "BACKEND", "BudgetExceeded", "DependentForms", "FormPair", "HypothesisViolated",
    "IndexClassification", "NormalizedSystem", "PreconditionError", "QuadratureError",
    "QuarticError", "SingleClass", "TheoremViolation", "classify", "counterexample_pair", "normalize",
]
__version__ = "0.1.0"
