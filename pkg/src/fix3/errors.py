"""Exception types shared across the package."""


class DegreeMismatchError(ValueError):
    """Two permutations (or a permutation and a group) have different degrees."""


class EnumerationBoundError(RuntimeError):
    """A brute-force routine refused to enumerate a group above the configured bound."""

    def __init__(self, order, bound):
        self.order = order
        self.bound = bound
        super().__init__(
            f"group order {order} exceeds the element-enumeration bound {bound} "
            "(set FIX3_MAX_ENUM to raise it, or use a conditional/structural tier)"
        )


class FieldArithmeticError(ZeroDivisionError):
    pass


class GeometryError(ValueError):
    """A matrix does not preserve the point geometry it is supposed to act on."""


class ConstructionError(RuntimeError):
    """A group recipe failed its own validation (wrong order, failed search, ...)."""


class CosetDegreeError(EnumerationBoundError):
    def __init__(self, degree, cap):
        self.order = degree
        self.bound = cap
        RuntimeError.__init__(
            self,
            f"coset action degree {degree} exceeds the cap {cap}; "
            "use the structural tier for this case",
        )


class CertificateRefused(RuntimeError):
    def __init__(self, clause):
        self.clause = clause
        super().__init__(f"structural certificate refused: {clause}")


class AuditFailure(RuntimeError):
    pass


class GroupFileError(ValueError):
    def __init__(self, lineno, message):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")
