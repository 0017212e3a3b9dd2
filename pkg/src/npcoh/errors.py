"""Exception types raised by the engine."""


class NpcohError(Exception):
    """Base class for every error raised by npcoh."""


class ParseError(NpcohError, ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class VariableCountError(NpcohError, ValueError):
    pass


class NotQuasihomogeneousError(NpcohError, ValueError):
    pass


class InfiniteCodimensionError(NpcohError, ValueError):
    pass


class ResonanceError(NpcohError, ValueError):
    def __init__(self, monomial, degree):
        super().__init__(
            f"monomial with exponents {tuple(monomial)} has the resonant quasidegree {degree}"
        )
        self.monomial = tuple(monomial)
        self.degree = degree


class NoSolutionError(NpcohError, ArithmeticError):
    pass
