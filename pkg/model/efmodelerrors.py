#-----------------------------------------------------------------------------+
# efmodelerrors.py
'''
Exception taxonomy for the EtaForge model. Every error raised by a
computation derives from EtaForgeError and also from the closest builtin, so
callers that only know builtins still catch them. The CLI maps EtaForgeError
to exit code 1.
'''
#-----------------------------------------------------------------------------+
from fractions import Fraction

class EtaForgeError(Exception):
    """Base class of every reported computation failure."""

    def details(self) -> dict:
        """Structured diagnostics for reports; subclasses add fields."""
        return {}

#region series_core errors
class ZeroLeadingCoefficient(EtaForgeError, ZeroDivisionError):
    """Series is identically zero up to its truncation."""

class ConductorMismatch(EtaForgeError, ValueError):
    """A cyclotomic conductor does not divide the requested conductor."""

class TruncationError(EtaForgeError, LookupError):
    """A coefficient at or beyond the tracked truncation was requested."""
#endregion series_core errors

#region elliptic_special errors
class IntegerVector(EtaForgeError, ValueError):
    """Vector lies in Z^2 where a non-integral vector is required."""

class CongruentVectors(EtaForgeError, ValueError):
    """u is congruent to +v or -v modulo Z^2."""

class NotInGamma0(EtaForgeError, ValueError):
    """Matrix is not in the required Gamma0 subgroup."""

class PoleAtLatticePoint(EtaForgeError, ArithmeticError):
    """The evaluation point lies on the lattice."""
#endregion elliptic_special errors

#region decomposition errors
class InsufficientBasis(EtaForgeError, ArithmeticError):
    """The monomial system is inconsistent at the given degree bound."""

    def __init__(self, message: str, residual_exponent: Fraction = None):
        super().__init__(message)
        self.residual_exponent = residual_exponent

    def details(self) -> dict:
        e = self.residual_exponent
        return {"residual_leading_exponent": None if e is None else str(e)}

class InsufficientTruncation(EtaForgeError, ValueError):
    """The target series is known to fewer coefficients than required."""

    def __init__(self, message: str, required: Fraction = None,
                 available: Fraction = None):
        super().__init__(message)
        self.required = required
        self.available = available

    def details(self) -> dict:
        return {"required": str(self.required), "available": str(self.available)}

class NoRelation(EtaForgeError, ArithmeticError):
    """No rational relation exists within the degree bound."""
#endregion decomposition errors

#region cm_numerics / reciprocity errors
class NonPositiveImaginaryPart(EtaForgeError, ValueError):
    """The point is not in the upper half-plane."""

class ConductorNotDivisibleBy4(EtaForgeError, ValueError):
    """The class invariant needs a conductor divisible by 4."""

class InvalidOrder(EtaForgeError, ValueError):
    """Discriminant and conductor do not describe an imaginary quadratic order."""

class NotFundamental(InvalidOrder):
    """Discriminant is not a negative fundamental discriminant."""

class RoundingFailure(EtaForgeError, ArithmeticError):
    """Numeric coefficients are too far from integers to round safely."""

    def __init__(self, message: str, residual=None, digits: int = None,
                 advised_digits: int = None):
        super().__init__(message)
        self.residual = residual
        self.digits = digits
        self.advised_digits = advised_digits

    def details(self) -> dict:
        return {"max_rounding_residual": None if self.residual is None else str(self.residual),
                "digits": self.digits, "advised_digits": self.advised_digits}

class NotUnimodular(EtaForgeError, ValueError):
    """Matrix determinant is not 1 modulo N."""

class LevelMismatch(EtaForgeError, ValueError):
    """Function level does not divide the order conductor."""
#endregion cm_numerics / reciprocity errors
#-----------------------------------------------------------------------------+
