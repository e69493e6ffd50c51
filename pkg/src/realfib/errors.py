class RealFibError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(RealFibError, ValueError):
    pass


class ZeroPolynomialError(RealFibError, ValueError):
    pass


class NonMonicError(RealFibError, ValueError):
    pass


class CommonZeroError(RealFibError, ValueError):
    """Two forms share a projective zero (or a common component)."""


class InvalidBasePoint(RealFibError, ValueError):
    """f(e) = 0, so e cannot serve as a hyperbolicity direction."""


class RankDeficient(RealFibError, ValueError):
    pass


class SingularMatrix(RealFibError, ValueError):
    pass


class NonCommutingError(RealFibError, ValueError):
    def __init__(self, a, b, detail=""):
        self.pair = (a, b)
        super().__init__(f"matrices {a} and {b} do not commute{': ' + detail if detail else ''}")


class NonLinearEntry(RealFibError, ValueError):
    pass


class NotSymmetricError(RealFibError, ValueError):
    pass


class NotSelfAdjoint(RealFibError, ValueError):
    pass


class ComponentNotContained(RealFibError, ValueError):
    """A claimed component carries no kernel at any sampled point."""


class CrossCheckFailure(RealFibError, RuntimeError):
    """Two independent routes disagreed; never resolved by guessing."""


class ParseError(RealFibError, ValueError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} at position {position}")
