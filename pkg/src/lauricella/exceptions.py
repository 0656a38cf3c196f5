class LauricellaException(Exception):
    """
    lauricella-relations related errors
    """
    pass


class DomainError(LauricellaException, ValueError):
    """
    A parameter point lies outside the domain of the requested computation
    """
    pass


class RationalDivisionError(DomainError, ZeroDivisionError):
    """
    Exact division by zero
    """
    pass


class ParameterError(DomainError):
    """
    Malformed parameter block, configuration value or index
    """
    pass


class TermEvaluationError(LauricellaException):
    """
    One or more terms of a relation could not be evaluated.

    Attributes:
        failures (list[tuple[int, str]]): term index and the reason it failed
    """

    def __init__(self, failures):
        self.failures = list(failures)
        detail = '; '.join('term {0}: {1}'.format(index, reason) for index, reason in self.failures)
        super().__init__('Failed to evaluate {0} term(s): {1}'.format(len(self.failures), detail))


class RelationDocumentError(LauricellaException):
    """
    A relation JSON document failed validation or decoding
    """
    pass


class SweepConfigError(LauricellaException):
    """
    Sweep configuration is invalid
    """
    pass
