"""Exception types raised across the package."""

from __future__ import annotations


class LiederError(Exception):
    """Base class for all package errors."""


class DimensionError(LiederError, ValueError):
    pass


class JacobiViolation(LiederError):
    """A bracket table fails the Jacobi identity on a basis triple.

    ``triple`` is 0-based; the message uses the 1-based labels of files
    and reports.
    """

    def __init__(self, i: int, j: int, l: int, residual):
        self.triple = (i, j, l)
        self.residual = tuple(residual)
        terms = ", ".join(
            f"{c}*e{k + 1}" for k, c in enumerate(self.residual) if c != 0
        )
        super().__init__(
            f"Jacobi identity fails on (e{i + 1}, e{j + 1}, e{l + 1}); residual {terms}"
        )


class AntisymmetryViolation(LiederError):
    pass


class NotNilpotent(LiederError):
    pass


class NotADerivation(LiederError):
    pass


class NotNormalized(LiederError):
    pass


class NotTriangular(LiederError):
    def __init__(self, row: int, col: int):
        self.row, self.col = row, col
        super().__init__(
            f"ad matrix is not triangular in the given basis order: "
            f"nonzero entry at (row {row + 1}, col {col + 1})"
        )


class WrongGeneratorCount(LiederError):
    pass


class AlphaNotDerivation(LiederError):
    def __init__(self, j: int, detail: str = ""):
        self.j = j
        msg = f"standard torus element t{j + 1} is not a derivation of N"
        super().__init__(f"{msg}: {detail}" if detail else msg)


class RankDeficientSelection(LiederError):
    pass


class PreconditionViolation(LiederError):
    pass


class GeneratorExhausted(LiederError):
    pass


class TheoremViolation(LiederError):
    """Raised when a computed instance contradicts the outer-derivation theorem."""


class InternalInvariantViolation(LiederError, AssertionError):
    pass


class ParseError(LiederError):
    def __init__(self, message: str, where: str | None = None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


class ProofGapDiagnostic(LiederError):
    """The candidate prescribed by the constructive proof failed verification.

    Carries the failed candidate, which check it failed, and the result of
    the generic fallback scan (``fallback`` may be None if none was found).
    """

    def __init__(self, branch: str, candidate, failed_check: str, fallback=None, trace=None):
        self.branch = branch
        self.candidate = candidate
        self.failed_check = failed_check
        self.fallback = fallback
        self.trace = trace
        super().__init__(
            f"proof candidate for branch {branch} failed check '{failed_check}'"
            + ("; generic fallback certificate found" if fallback is not None else "")
        )
