#-----------------------------------------------------------------------------+
# cm_numerics.py - arbitrary precision evaluation at CM points
#-----------------------------------------------------------------------------+
'''
Numeric side of EtaForge. Dedekind eta is evaluated as q^(1/24) * qp(q)
after moving tau into the standard fundamental domain; the eta multiplier of
each reduction step is carried exactly (a 24th-root-of-unity index and the
list of sqrt(-i tau) arguments) and applied only at the end.

mpmath keeps its working precision in a global context, so every function
sets it locally with workdps() and the callers evaluate sequentially.
'''
#-----------------------------------------------------------------------------+
from dataclasses import dataclass

import mpmath
from sympy import factorint

from efconstants import *
from ef_logging.ef_logging import ef_logging_setup
from ef_utilities.ef_utils import validate_int, validate_positive_int
from model.base_efmodel.efmodel import EFModel
from model.efmodelconstants import (CM_GUARD_DIGITS, CM_LADDER, CM_LADDER_STEP,
                                    CM_MIN_DIRECT_IMAG, CM_REALNESS_SLACK)
from model.efmodelerrors import (ConductorNotDivisibleBy4, InvalidOrder,
                                 NonPositiveImaginaryPart, NotFundamental)
from model.eta_quotients import EtaQuotient
from model.mat2 import Mat2
from model.series_core import QSeries
#-----------------------------------------------------------------------------+
#region ef_logging_setup()
logger = ef_logging_setup(EF_APP_NAME)
logger.debug(f"Imported module: {__name__}")
#endregion ef_logging_setup()
#-----------------------------------------------------------------------------+
#region ImagQuadOrder Class
def is_fundamental_discriminant(d: int) -> bool:
    if d >= 0:
        return False
    if d % 4 == 1:
        return all(e == 1 for p, e in factorint(-d).items())
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and all(e == 1 for p, e in factorint(-m).items())
    return False

@dataclass(frozen=True)
class ImagQuadOrder(EFModel):
    """
    The order of conductor N in K = Q(sqrt(d_K)) with its CM point
    tau_K = (-B + sqrt(d_K))/2, a root of X^2 + B X + C.
    """
    d_K: int
    conductor: int = 1

    def __post_init__(self):
        validate_int(self.d_K, "d_K")
        validate_int(self.conductor, "conductor")
        if self.conductor < 1:
            raise InvalidOrder(f"conductor must be positive, not {self.conductor}")
        if not is_fundamental_discriminant(self.d_K):
            raise NotFundamental(f"{self.d_K} is not a negative fundamental discriminant")

    @property
    def B(self) -> int:
        return 1 if self.d_K % 4 == 1 else 0

    @property
    def C(self) -> int:
        return (1 - self.d_K) // 4 if self.d_K % 4 == 1 else -self.d_K // 4

    def with_conductor(self, N: int) -> "ImagQuadOrder":
        return ImagQuadOrder(self.d_K, N)

    def to_dict(self) -> dict:
        return {"d_K": self.d_K, "conductor": self.conductor, "B": self.B, "C": self.C}

    @classmethod
    def from_dict(cls, data: dict) -> "ImagQuadOrder":
        return cls(int(data["d_K"]), int(data.get("conductor", 1)))
#endregion ImagQuadOrder Class
#-----------------------------------------------------------------------------+
#region BigComplex Class
@dataclass(frozen=True)
class BigComplex(EFModel):
    """An mpmath complex value with the decimal precision it was computed at."""
    re: mpmath.mpf
    im: mpmath.mpf
    precision: int

    def __post_init__(self):
        validate_int(self.precision, "precision", EF_MIN_DIGITS)

    @classmethod
    def from_mpc(cls, z, precision: int) -> "BigComplex":
        with mpmath.workdps(precision):
            z = mpmath.mpc(z)
            return cls(z.real, z.imag, precision)

    @property
    def value(self) -> mpmath.mpc:
        return mpmath.mpc(self.re, self.im)

    def _binary(self, other, op) -> "BigComplex":
        if isinstance(other, BigComplex):
            p, w = max(self.precision, other.precision), other.value
        else:
            p, w = self.precision, other
        with mpmath.workdps(p):
            return BigComplex.from_mpc(op(self.value, w), p)

    def __add__(self, other):
        return self._binary(other, lambda x, y: x + y)

    def __sub__(self, other):
        return self._binary(other, lambda x, y: x - y)

    def __mul__(self, other):
        return self._binary(other, lambda x, y: x * y)

    def __truediv__(self, other):
        return self._binary(other, lambda x, y: x / y)

    def __neg__(self):
        return BigComplex(-self.re, -self.im, self.precision)

    def __abs__(self):
        with mpmath.workdps(self.precision):
            return abs(self.value)

    def __complex__(self):
        return complex(self.value)

    def real_part(self) -> "BigComplex":
        return BigComplex(self.re, mpmath.mpf(0), self.precision)

    def to_dict(self) -> dict:
        with mpmath.workdps(self.precision):
            return {"re": mpmath.nstr(self.re, self.precision),
                    "im": mpmath.nstr(self.im, self.precision),
                    "digits": self.precision}

    @classmethod
    def from_dict(cls, data: dict) -> "BigComplex":
        p = int(data["digits"])
        with mpmath.workdps(p):
            return cls(mpmath.mpf(data["re"]), mpmath.mpf(data["im"]), p)
#endregion BigComplex Class
#-----------------------------------------------------------------------------+
#region helpers
def _as_mpc(tau) -> mpmath.mpc:
    if isinstance(tau, BigComplex):
        return tau.value
    return mpmath.mpc(tau)

def _check_upper(tau: mpmath.mpc) -> None:
    if tau.imag <= 0:
        raise NonPositiveImaginaryPart(f"Im(tau) must be positive, got {mpmath.nstr(tau.imag, 10)}")

def precision_ladder(digits: int = EF_DEFAULT_DIGITS) -> tuple:
    """Escalation rungs starting at digits: 300, 450, 700 by default."""
    validate_int(digits, "digits", EF_MIN_DIGITS)
    if digits in CM_LADDER:
        return CM_LADDER[CM_LADDER.index(digits):]
    return (digits, digits + CM_LADDER_STEP, digits + CM_LADDER_STEP + 250)

def tau_point(order: ImagQuadOrder, digits: int = EF_DEFAULT_DIGITS) -> BigComplex:
    with mpmath.workdps(digits + CM_GUARD_DIGITS):
        tau = mpmath.mpc(-order.B, mpmath.sqrt(-order.d_K)) / 2
    return BigComplex.from_mpc(tau, digits)
#endregion helpers
#-----------------------------------------------------------------------------+
#region fundamental domain reduction
def _reduce_with_multiplier(tau: mpmath.mpc) -> tuple:
    """
    Move tau into |Re| <= 1/2, |tau| >= 1. Returns (tau_red, gamma, k, args)
    with tau_red = gamma(tau) and
        eta(tau) = exp(2 pi i k/24) * prod(sqrt(-i a) for a in args)^-1 * eta(tau_red).
    """
    gamma = Mat2.identity()
    k = 0
    args = []
    one = mpmath.mpf(1)
    for _ in range(10_000):
        n = int(mpmath.nint(tau.real))
        if n:
            # eta(t) = exp(pi i n/12) eta(t - n)
            tau -= n
            k += n
            gamma = Mat2(1, -n, 0, 1) * gamma
        if abs(tau) < one:
            # eta(t) = eta(-1/t) / sqrt(-i t)
            args.append(tau)
            tau = -1 / tau
            gamma = Mat2(0, -1, 1, 0) * gamma
        else:
            return tau, gamma, k % 24, args
    raise ArithmeticError("fundamental domain reduction did not terminate")

def reduce_to_fundamental_domain(tau) -> tuple:
    """(tau_red, gamma) with gamma in SL2(Z) and tau_red = gamma(tau)."""
    tau = _as_mpc(tau)
    _check_upper(tau)
    tau_red, gamma, _, _ = _reduce_with_multiplier(tau)
    return tau_red, gamma
#endregion fundamental domain reduction
#-----------------------------------------------------------------------------+
#region eta evaluation
def _eta_direct(tau: mpmath.mpc) -> mpmath.mpc:
    q = mpmath.expjpi(2 * tau)
    return mpmath.expjpi(tau / 12) * mpmath.qp(q)

def _eta_mpc(tau: mpmath.mpc, reduce: bool = True) -> mpmath.mpc:
    _check_upper(tau)
    if not reduce:
        if tau.imag < mpmath.mpf(CM_MIN_DIRECT_IMAG.numerator) / CM_MIN_DIRECT_IMAG.denominator:
            raise ValueError(f"direct eta evaluation refused at Im(tau) = " + \
                             f"{mpmath.nstr(tau.imag, 5)}; reduce first")
        return _eta_direct(tau)
    tau_red, _, k, args = _reduce_with_multiplier(tau)
    value = mpmath.expjpi(mpmath.mpf(k) / 12) * _eta_direct(tau_red)
    for a in args:
        value /= mpmath.sqrt(-1j * a)
    return value

def eval_eta(tau, digits: int = EF_DEFAULT_DIGITS, reduce: bool = True) -> BigComplex:
    """eta(tau) to digits decimal digits."""
    with mpmath.workdps(digits + CM_GUARD_DIGITS):
        value = _eta_mpc(_as_mpc(tau), reduce)
    return BigComplex.from_mpc(value, digits)

def _eta_quotient_mpc(E: EtaQuotient, tau: mpmath.mpc) -> mpmath.mpc:
    value = mpmath.mpc(1)
    for d, m in E.exps:
        value *= _eta_mpc(d * tau) ** m
    return value

def eval_eta_quotient(E: EtaQuotient, tau, digits: int = EF_DEFAULT_DIGITS) -> BigComplex:
    with mpmath.workdps(digits + CM_GUARD_DIGITS):
        value = _eta_quotient_mpc(E, _as_mpc(tau))
    return BigComplex.from_mpc(value, digits)

def eval_series(series: QSeries, tau, digits: int = EF_DEFAULT_DIGITS) -> BigComplex:
    """Sum of the known terms of series at q = exp(2 pi i tau)."""
    with mpmath.workdps(digits + CM_GUARD_DIGITS):
        tau = _as_mpc(tau)
        _check_upper(tau)
        total = mpmath.mpc(0)
        for e, c in series.items():
            total += c.to_complex(digits + CM_GUARD_DIGITS) * \
                mpmath.expjpi(2 * tau * e.numerator / e.denominator)
    return BigComplex.from_mpc(total, digits)

def eval_j(tau, digits: int = EF_DEFAULT_DIGITS) -> BigComplex:
    """j(tau) = (t + 256)^3 / t^2 with t = (eta(tau)/eta(2 tau))^24."""
    with mpmath.workdps(digits + CM_GUARD_DIGITS):
        tau = _as_mpc(tau)
        t = (_eta_mpc(tau) / _eta_mpc(2 * tau)) ** 24
        value = (t + 256) ** 3 / t ** 2
    return BigComplex.from_mpc(value, digits)
#endregion eta evaluation
#-----------------------------------------------------------------------------+
#region class invariant
def invariant_quotient(N: int) -> EtaQuotient:
    """eta(N t)^8 / eta((N/4) t)^8 at level N, N divisible by 4."""
    validate_positive_int(N, "N")
    if N % 4:
        raise ConductorNotDivisibleBy4(f"conductor {N} is not divisible by 4")
    return EtaQuotient(N, {N // 4: -8, N: 8})

def realness_holds(value: BigComplex, digits: int) -> bool:
    with mpmath.workdps(digits):
        bound = mpmath.mpf(10) ** (-(digits - CM_REALNESS_SLACK)) * max(1, abs(value.value))
        return abs(value.im) < bound

def class_invariant(order: ImagQuadOrder, digits: int = EF_DEFAULT_DIGITS) -> BigComplex:
    """
    256 * eta(N tau_K)^8 / eta((N/4) tau_K)^8 for the order of conductor N.
    The value is real; a nonzero imaginary part beyond the working precision
    is logged and kept in the result instead of being dropped.
    """
    N = order.conductor
    E = invariant_quotient(N)
    with mpmath.workdps(digits + CM_GUARD_DIGITS):
        tau = tau_point(order, digits + CM_GUARD_DIGITS).value
        value = BigComplex.from_mpc(256 * _eta_quotient_mpc(E, tau), digits)
    if realness_holds(value, digits):
        return value.real_part()
    logger.warning(f"class_invariant(d_K={order.d_K}, N={N}) is not real to " + \
                   f"{digits - CM_REALNESS_SLACK} digits: Im = {mpmath.nstr(value.im, 10)}")
    return value
#endregion class invariant
#-----------------------------------------------------------------------------+
