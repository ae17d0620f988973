"""Exception hierarchy for pfcft."""


class PfcftError(ValueError):
    """Base class for every error raised by the pfcft library."""


class FieldError(PfcftError):
    """Invalid finite-field parameters or operations."""


class StructureError(PfcftError):
    """Invalid cyclotomic, normal-basis or index-map request."""


class MatrixError(PfcftError):
    """Dimension mismatch or malformed matrix."""


class SingularMatrixError(MatrixError):
    """Matrix has no inverse."""


class ProgramError(PfcftError):
    """Malformed addition program."""


class ConvolutionError(PfcftError):
    """Unsupported or incorrect bilinear convolution algorithm."""


class PlanError(PfcftError):
    """Invalid transform plan request or construction failure."""


class PlanFormatError(PfcftError):
    """Plan or vector file could not be parsed."""


class OracleError(PfcftError):
    """Invalid input to a reference oracle."""
