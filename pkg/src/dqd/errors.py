"""Exception hierarchy shared by every module."""


class DQDError(Exception):
    """Base class for all errors raised by the package."""


class InvalidParams(DQDError, ValueError):
    pass


class NotHermitian(DQDError, ValueError):
    pass


class NoConvergence(DQDError, RuntimeError):
    pass


class DomainError(DQDError, ValueError):
    """A scalar function was evaluated outside its domain."""


class NotState(DQDError, ValueError):
    """Input is not a valid density matrix."""


class InvalidDistribution(DQDError, ValueError):
    pass


class DegenerateTunneling(DQDError, ValueError):
    """Closed forms are singular at zero tunneling coupling."""


class PatternMismatch(DQDError, ValueError):
    """State does not have the thermal-model symmetry pattern."""


class BellDiagonalityViolated(DQDError, ValueError):
    pass


class ValidityDomain(DQDError, ValueError):
    """Teleportation formulas only hold for det(R) < 0."""


class Undefined(DQDError, ArithmeticError):
    """Quantity has a vanishing denominator at this point."""


class ConfigError(DQDError):
    pass


class ParseError(ConfigError):
    def __init__(self, msg: str, line: int, column: int):
        super().__init__(f"{msg} (line {line}, column {column})")
        self.line = line
        self.column = column


class ValidationError(ConfigError):
    def __init__(self, field: str, msg: str = ""):
        super().__init__(f"{field}: {msg}" if msg else field)
        self.field = field


class EmptySelection(DQDError, ValueError):
    pass


class MissingFixture(DQDError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "missing fixture"


class ToleranceExceeded(DQDError, AssertionError):
    def __init__(self, key: str, delta: float, tolerance: float):
        super().__init__(f"{key}: |delta| = {delta:.3e} > {tolerance:.1e}")
        self.key = key
        self.delta = delta
        self.tolerance = tolerance
