import logging

logger = logging.getLogger(__name__)


class KconeError(RuntimeError):
    """Base class for domain errors reported with exit code 1"""

    code = "KCONE_ERROR"

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)
        self.message = message or self.code


class NotReducedError(KconeError):
    code = "NOT_REDUCED"


class NotASectionError(KconeError):
    code = "NOT_A_SECTION"


class NonIntegralError(KconeError):
    code = "NON_INTEGRAL"


class InternalNonIntegralError(KconeError):
    """Integrality failure inside a construction that must be integral (a bug)"""

    code = "INTERNAL_NON_INTEGRAL"


class WordNotFoundError(KconeError):
    code = "WORD_NOT_FOUND"


class FiberDegenerateError(KconeError):
    code = "FIBER_DEGENERATE"


class DegenerateConeError(KconeError):
    code = "DEGENERATE"


class InvalidRootError(KconeError):
    code = "INVALID_ROOT"


class InputValidationError(KconeError):
    """Malformed input; reported with exit code 2"""

    code = "INVALID_INPUT"

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class InternalConsistencyError(KconeError):
    """A verified identity failed; indicates a bug rather than bad input"""

    code = "INTERNAL_ERROR"
