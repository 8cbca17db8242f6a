"""Exception hierarchy.  Every domain error carries a stable snake_case code
used in machine-readable CLI output."""


class SpectralError(Exception):
    code = "spectral_error"


class InvalidProfile(SpectralError):
    code = "invalid_profile"

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class NotFinitelyRepresentable(SpectralError):
    code = "not_finitely_representable"


class CollisionDepthExceeded(SpectralError):
    code = "collision_depth_exceeded"


class EmptyFactorization(SpectralError):
    code = "empty_factorization"


class NonSquare(SpectralError):
    code = "non_square"


class NotTriangular(SpectralError):
    code = "not_triangular"


class SizeOverflow(SpectralError):
    code = "size_overflow"


class VerificationFailed(SpectralError):
    code = "verification_failed"


class DslSyntaxError(SpectralError):
    code = "syntax_error"

    def __init__(self, message, line, column):
        self.line = line
        self.column = column
        super().__init__(f"{message} at line {line}, column {column}")


class DslValidationError(SpectralError):
    code = "validation_error"
