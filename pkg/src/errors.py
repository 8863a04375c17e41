"""
Exception hierarchy shared by every package.

The CLI maps these onto exit codes: GenericityExhausted gives 3, any other
SlantError gives 2.
"""


class SlantError(Exception):
    """Base class for all engine errors."""


class ConfigurationError(SlantError):
    """Bad grammar, mismatched groups or an unusable scenario file."""


class ValidationError(SlantError):
    """Input violates a structural requirement (complex axiom, module membership...)."""


class ResourceLimitError(SlantError):
    def __init__(self, message, cap=None):
        super().__init__(message)
        self.cap = cap


class GenericityViolation(SlantError):
    """The base point of the support cocycle lies on a hyperplane spanned by vertex images."""


class GenericityExhausted(SlantError):
    pass


class ScopeError(SlantError):
    """The requested combination is outside what the engine computes."""


class LiftError(SlantError):
    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value


class UnsatError(SlantError):
    pass


class RadiusInsufficientError(SlantError):
    pass


class FamilyMisuseError(SlantError):
    """An alpha family failed its affineness check on a cell."""
