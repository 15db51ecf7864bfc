"""Exception hierarchy shared by every skewforge module."""

from __future__ import annotations


class SkewForgeError(Exception):
    """Base class for all errors raised by skewforge."""


# exact arithmetic
class ZeroDenominator(SkewForgeError, ZeroDivisionError):
    pass


class DivisionByZero(SkewForgeError, ZeroDivisionError):
    pass


class UnknownVariable(SkewForgeError, KeyError):
    pass


class PoleAtPoint(SkewForgeError, ZeroDivisionError):
    pass


class NotExactDivision(SkewForgeError, ArithmeticError):
    pass


# automorphisms and groups
class SettingMismatch(SkewForgeError, ValueError):
    pass


class ClosureCapExceeded(SkewForgeError, RuntimeError):
    pass


class UnsupportedMonoid(SkewForgeError, ValueError):
    pass


# skew ring
class NotStabilizerInvariant(SkewForgeError, ValueError):
    pass


class NotGammaElement(SkewForgeError, ValueError):
    pass


class ZeroElement(SkewForgeError, ValueError):
    pass


class EmptySupport(SkewForgeError, ValueError):
    pass


class ProjectionSearchFailed(SkewForgeError, RuntimeError):
    pass


class InvalidSetting(SkewForgeError, ValueError):
    pass


# bimodules / Hecke
class NonIntegerMultiplicity(SkewForgeError, ArithmeticError):
    pass


class NotGInvariantFamily(SkewForgeError, ValueError):
    pass


# presets
class IndexOutOfRange(SkewForgeError, IndexError):
    pass


class RelationFailed(SkewForgeError, AssertionError):
    def __init__(self, relation: str, residual=None):
        self.relation = relation
        self.residual = residual
        super().__init__(f"relation {relation!r} failed; residual {residual}")


class NonGenericTableau(SkewForgeError, ValueError):
    pass


class UnsupportedFlavor(SkewForgeError, ValueError):
    pass


class UnsupportedSetting(SkewForgeError, ValueError):
    pass


# cli
class ParseError(SkewForgeError, SyntaxError):
    """Raised by the expression parsers; ``offset`` is a 0-based character index."""

    def __init__(self, message: str, text: str = "", offset: int = 0):
        self.message = message
        self.text_input = text
        self.position = offset
        super().__init__(f"{message} at offset {offset}")


class UnknownSuite(SkewForgeError, KeyError):
    pass
