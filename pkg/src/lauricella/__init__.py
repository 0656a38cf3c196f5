"""Lauricella F_D functions: evaluation, closed-form relation coefficients and residual verification."""
from lauricella.core import BetaPrefactor, EvalResult, Evaluator, ExactRational, FDParams, FDTerm, Family, \
    Relation
from lauricella.exceptions import DomainError, LauricellaException, ParameterError, RationalDivisionError, \
    RelationDocumentError, SweepConfigError, TermEvaluationError

__version__ = '1.0.0'
