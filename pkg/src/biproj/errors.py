"""Exception hierarchy shared by every module of the package."""


class BiprojError(Exception):
    """Base class for domain failures raised by biproj."""


class InexactFieldError(BiprojError, TypeError):
    """An exact-only operation received a floating-point matrix."""


class FieldError(BiprojError, ValueError):
    """Unsupported or inconsistent coefficient field."""


class SingularMatrix(BiprojError, ArithmeticError):
    pass


class PolySyntaxError(BiprojError, ValueError):
    pass


class NotBihomogeneous(BiprojError, ValueError):
    def __init__(self, degrees):
        self.degrees = sorted(degrees)
        super().__init__(f"polynomial is not bihomogeneous; mixed bidegrees {self.degrees}")


class ZeroPoint(BiprojError, ValueError):
    pass


class DegreeMismatch(BiprojError, ValueError):
    pass


class DegreeTooLarge(BiprojError, ValueError):
    pass


class NotFoundBelowCap(BiprojError):
    """No admissible bidegree was certified up to the search cap.

    This is evidence (not proof) that the projection is positive dimensional.
    """


class SingularBar(SingularMatrix):
    """The bar map of a power of the chosen form is not invertible."""


class CommutationFailure(BiprojError):
    pass


class BasisMismatch(BiprojError):
    pass


class ClusterAmbiguity(BiprojError):
    pass
