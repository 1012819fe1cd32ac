"""Exceptions raised by the algebra engine."""

from __future__ import annotations


class BCHFactorError(Exception):
    """Base class of every error raised by this package."""


class DegreeError(BCHFactorError, ValueError):
    """An argument does not lie in the filtration level an operation requires."""


class TruncationMismatch(BCHFactorError, ValueError):
    """Two elements carry different truncation parameters."""


class PoleOverflow(BCHFactorError, ArithmeticError):
    """A Laurent product would need a pole order above the cap."""


class DegreeOverflow(BCHFactorError, ArithmeticError):
    """A result would have to be truncated where truncation is not exact."""


class NonConvergence(BCHFactorError, RuntimeError):
    """A fixed-point iteration was still moving after its guaranteed step count."""


class FlagError(BCHFactorError, ValueError):
    """An operator lacks a (verified) capability an operation relies on."""


class MembershipError(BCHFactorError, ValueError):
    """An input is not in the subspace it was claimed to be in."""


class NotCharacter(BCHFactorError, ValueError):
    """A linear functional is not a character where one is required."""


class TargetMismatch(BCHFactorError, TypeError):
    """Two linear functionals take values in different target algebras."""


class ParseError(BCHFactorError, ValueError):
    """Malformed textual input (rationals, words, tree literals, JSON)."""
