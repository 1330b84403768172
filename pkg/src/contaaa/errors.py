"""Exception hierarchy for contaaa."""


class AAAError(Exception):
    """Base class for all errors raised by this package."""


class InvalidMatrix(AAAError, ValueError):
    pass


class KernelFailure(AAAError, ArithmeticError):
    pass


class InvalidSupport(AAAError, ValueError):
    pass


class NonFiniteSample(AAAError, ArithmeticError):
    """f returned inf/nan at a sample point."""

    def __init__(self, point, value):
        self.point = point
        self.value = value
        super().__init__(f"non-finite function value {value!r} at sample point {point!r}")


class NoValidApproximant(AAAError, RuntimeError):
    pass


class LawsonBreakdown(AAAError, ArithmeticError):
    pass


class UnresolvedWinding(AAAError, ValueError):
    pass


class ExprError(AAAError, ValueError):
    pass


class ParseError(ExprError):
    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = tuple(sorted(set(expected)))
        text = f"{message} at offset {offset}"
        if self.expected:
            text += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(text)


class DomainError(ExprError):
    pass
