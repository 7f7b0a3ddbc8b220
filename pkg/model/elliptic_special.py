#-----------------------------------------------------------------------------+
# elliptic_special.py - Siegel functions, Weierstrass p and the h_n family
#-----------------------------------------------------------------------------+
'''
Exact q-expansions of Siegel functions g_v and of the normalized Weierstrass
value W_v = p(v1 tau + v2; [tau, 1]) / (2 pi i)^2, together with the checks
that tie them to eta-quotients.

W_v keeps rational cyclotomic coefficients:
    W_v = 1/12 - 2 sum sigma_1(n) q^n + sum_{n in Z} q^n u / (1 - q^n u)^2,
with u = q^v1 exp(2 pi i v2) and v reduced to 0 <= v1, v2 < 1. The analytic
value is (2 pi i)^2 * W_v; wp_lattice_sum computes it independently.
'''
#-----------------------------------------------------------------------------+
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from sympy import divisor_sigma

from efconstants import *
from ef_logging.ef_logging import ef_logging_setup
from ef_utilities.ef_utils import (fraction_str, to_fraction, validate_int,
                                   validate_positive_int)
from model.base_efmodel.efmodel import EFModel
from model.cm_numerics import (BigComplex, eval_eta_quotient,
                               reduce_to_fundamental_domain)
from model.efmodelconstants import (ES_HALF, ES_LATTICE_RADIUS, ES_TRANSLATION_TRUNC,
                                    ES_TRANSPORT_DIGITS,
                                    ES_TRANSPORT_TOLERANCE_EXP, SC_DEFAULT_TRUNC)
from model.efmodelerrors import (CongruentVectors, IntegerVector, NotInGamma0,
                                 NonPositiveImaginaryPart, PoleAtLatticePoint)
from model.eta_quotients import (EtaQuotient, eta_quotient_series,
                                 h_quotient)
from model.mat2 import Mat2
from model.series_core import (ONE, ZERO, CyclotomicNumber, QSeries, rescale,
                               root_of_unity)
#-----------------------------------------------------------------------------+
#region ef_logging_setup()
logger = ef_logging_setup(EF_APP_NAME)
logger.debug(f"Imported module: {__name__}")
#endregion ef_logging_setup()
#-----------------------------------------------------------------------------+
#region FracVector Class
@dataclass(frozen=True)
class FracVector(EFModel):
    """The column vector (v1, v2) with exact rational entries."""
    v1: Fraction
    v2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "v1", to_fraction(self.v1))
        object.__setattr__(self, "v2", to_fraction(self.v2))

    @property
    def denominator(self) -> int:
        """Least N with v in (1/N) Z^2."""
        return math.lcm(self.v1.denominator, self.v2.denominator)

    def is_integral(self) -> bool:
        return self.v1.denominator == 1 and self.v2.denominator == 1

    def __neg__(self) -> "FracVector":
        return FracVector(-self.v1, -self.v2)

    def __add__(self, other: "FracVector") -> "FracVector":
        if isinstance(other, tuple):
            other = FracVector(*other)
        return FracVector(self.v1 + other.v1, self.v2 + other.v2)

    def __sub__(self, other: "FracVector") -> "FracVector":
        if isinstance(other, tuple):
            other = FracVector(*other)
        return FracVector(self.v1 - other.v1, self.v2 - other.v2)

    def reduced(self) -> "FracVector":
        """Representative modulo Z^2 with 0 <= v1, v2 < 1."""
        return FracVector(self.v1 - math.floor(self.v1), self.v2 - math.floor(self.v2))

    def congruent(self, other: "FracVector") -> bool:
        """True when self = other modulo Z^2."""
        return (self - other).is_integral()

    def transform(self, alpha: Mat2) -> "FracVector":
        """alpha^T v."""
        return FracVector(alpha.a * self.v1 + alpha.c * self.v2,
                          alpha.b * self.v1 + alpha.d * self.v2)

    def to_dict(self) -> dict:
        return {"v1": fraction_str(self.v1), "v2": fraction_str(self.v2)}

    @classmethod
    def from_dict(cls, data: dict) -> "FracVector":
        return cls(to_fraction(data["v1"]), to_fraction(data["v2"]))

    def __str__(self) -> str:
        return f"({fraction_str(self.v1)},{fraction_str(self.v2)})"

def _require_nonintegral(v: FracVector) -> None:
    if v.is_integral():
        raise IntegerVector(f"vector {v} lies in Z^2")
#endregion FracVector Class
#-----------------------------------------------------------------------------+
#region Siegel functions
def _siegel_data(v: FracVector, rel_trunc: Fraction = None) -> tuple:
    """
    Factor g_v as scalar * q^lead * prod(1 - exp(2 pi i r) q^e) over e > 0.

    A factor (1 - w q^e) with e < 0 is rewritten as -w q^e (1 - w^-1 q^-e)
    and one with e = 0 is the constant 1 - w. Binomials (e, r) are returned
    for e < rel_trunc, all of them when rel_trunc is None and only those from
    nonpositive factors are wanted.
    """
    v1, v2 = v.v1, v.v2
    scalar = -root_of_unity((v2 * (v1 - 1)) / 2)
    lead = (v1 * v1 - v1 + Fraction(1, 6)) / 2
    binomials = []

    def take(e: Fraction, r: Fraction):
        nonlocal scalar, lead
        if e < 0:
            scalar = scalar * -root_of_unity(r)
            lead += e
            binomials.append((-e, -r))
        elif e == 0:
            scalar = scalar * (1 - root_of_unity(r))
        else:
            binomials.append((e, r))

    take(v1, v2)
    n = 1
    while n <= abs(v1) or (rel_trunc is not None and n - abs(v1) < rel_trunc):
        take(n + v1, v2)
        take(n - v1, -v2)
        n += 1
    if rel_trunc is not None:
        binomials = [(e, r) for e, r in binomials if e < rel_trunc]
    return scalar, lead, binomials

def siegel_valuation(v: FracVector) -> Fraction:
    """Leading exponent of g_v."""
    _require_nonintegral(v)
    return _siegel_data(v)[1]

def _binomial_product(binomials: list, rel_trunc: Fraction) -> QSeries:
    """prod (1 - exp(2 pi i r) q^e) below q^rel_trunc."""
    M = math.lcm(1, *(e.denominator for e, _ in binomials))
    K = math.ceil(rel_trunc * M)
    terms = {0: ONE}
    for e, r in sorted(binomials):
        step = int(e * M)
        if step >= K:
            continue
        w = root_of_unity(r)
        updated = dict(terms)
        for k, c in terms.items():
            if k + step < K:
                prev = updated.get(k + step, ZERO)
                updated[k + step] = prev - w * c
        terms = {k: c for k, c in updated.items() if not c.is_zero()}
    return QSeries({Fraction(k, M): c for k, c in terms.items()}, rel_trunc)

def _siegel_parts(v: FracVector, trunc: Fraction) -> tuple:
    """(scalar, series) with g_v = scalar * series below q^trunc."""
    _require_nonintegral(v)
    lead = siegel_valuation(v)
    rel = trunc - lead
    if rel <= 0:
        return ONE, QSeries.zero(trunc)
    scalar, lead, binomials = _siegel_data(v, rel)
    return scalar, _binomial_product(binomials, rel).shift(lead)

def siegel_series(v: FracVector, trunc=SC_DEFAULT_TRUNC) -> QSeries:
    """
    Exact expansion of the Siegel function
        g_v = -q^((v1^2 - v1 + 1/6)/2) exp(pi i v2 (v1 - 1)) (1 - q^v1 zeta)
              prod_{n >= 1} (1 - q^(n + v1) zeta)(1 - q^(n - v1) / zeta)
    with zeta = exp(2 pi i v2), the product read literally for any v.
    """
    scalar, series = _siegel_parts(v, to_fraction(trunc))
    logger.debug(f"siegel_series({v}) below q^{fraction_str(trunc)}: {len(series)} terms")
    return series.scale(scalar)

def translate_factor(v: FracVector, s: tuple) -> CyclotomicNumber:
    """epsilon with g_{v+s} = epsilon * g_v for integer s = (s1, s2)."""
    s1, s2 = s
    validate_int(s1, "s1")
    validate_int(s2, "s2")
    sign = -1 if (s1 * s2 + s1 + s2) % 2 else 1
    return root_of_unity(-(s1 * v.v2 - s2 * v.v1) / 2) * sign
#endregion Siegel functions
#-----------------------------------------------------------------------------+
#region Weierstrass p
def wp_series(v: FracVector, trunc=SC_DEFAULT_TRUNC) -> QSeries:
    """p(v1 tau + v2; [tau, 1]) / (2 pi i)^2 as an exact q-series."""
    _require_nonintegral(v)
    trunc = to_fraction(trunc)
    r = v.reduced()
    v1, v2 = r.v1, r.v2
    terms: dict = {}

    def add(e: Fraction, c):
        if e < trunc:
            terms[e] = terms.get(e, ZERO) + c

    add(Fraction(0), Fraction(1, 12))
    for n in range(1, math.ceil(trunc)):
        add(Fraction(n), -2 * int(divisor_sigma(n, 1)))
    # n >= 0: q^(n+v1) zeta / (1 - q^(n+v1) zeta)^2
    n = 0
    while n + v1 < trunc:
        base = n + v1
        if base == 0:
            zeta = root_of_unity(v2)
            add(Fraction(0), zeta / (1 - zeta) ** 2)
        else:
            k = 1
            while k * base < trunc:
                add(k * base, root_of_unity(k * v2) * k)
                k += 1
        n += 1
    # n = -m < 0: by symmetry w / (1 - w)^2 with w = q^(m - v1) / zeta
    m = 1
    while m - v1 < trunc:
        base = m - v1
        k = 1
        while k * base < trunc:
            add(k * base, root_of_unity(-k * v2) * k)
            k += 1
        m += 1
    return QSeries(terms, trunc)

def _wp_lattice_mpc(v: FracVector, tau: mpmath.mpc, radius: int) -> mpmath.mpc:
    if v.is_integral():
        raise PoleAtLatticePoint(f"z = {v} lies on the lattice [tau, 1]")
    if tau.imag <= 0:
        raise NonPositiveImaginaryPart(f"Im(tau) must be positive, got {mpmath.nstr(tau.imag, 10)}")
    # [tau, 1] = (c tau + d) [tau_r, 1]; rewrite z in the reduced basis exactly
    tau_r, g = reduce_to_fundamental_domain(tau)
    lam = g.automorphy(tau)
    w = FracVector(g.d * v.v1 - g.c * v.v2, -g.b * v.v1 + g.a * v.v2).reduced()
    z = mpmath.mpf(w.v1.numerator) / w.v1.denominator * tau_r + \
        mpmath.mpf(w.v2.numerator) / w.v2.denominator
    pi2 = mpmath.pi ** 2
    total = mpmath.mpc(0)
    for m in range(-radius, radius + 1):
        total += pi2 / mpmath.sin(mpmath.pi * (z - m * tau_r)) ** 2
    g2 = pi2 / 3
    for m in range(1, radius + 1):
        g2 += 2 * pi2 / mpmath.sin(mpmath.pi * m * tau_r) ** 2
    tail = 8 * pi2 * mpmath.exp(-2 * mpmath.pi * (radius - 1) * tau_r.imag)
    logger.debug(f"wp_lattice_sum({v}) radius {radius}: tail estimate {mpmath.nstr(tail, 5)}")
    return (total - g2) / lam ** 2

def wp_lattice_sum(v: FracVector, tau, radius: int = ES_LATTICE_RADIUS,
                   digits: int = ES_TRANSPORT_DIGITS) -> BigComplex:
    """
    p(v1 tau + v2; [tau, 1]) from the lattice sum in Eisenstein order: the
    inner sum over n is summed in closed form as pi^2 / sin^2, the outer sum
    runs over |m| <= radius, and G2 supplies the 1/omega^2 correction.
    """
    validate_positive_int(radius, "radius")
    with mpmath.workdps(digits + 10):
        tau = tau.value if isinstance(tau, BigComplex) else mpmath.mpc(tau)
        value = _wp_lattice_mpc(v, tau, radius)
    return BigComplex.from_mpc(value, max(digits, EF_MIN_DIGITS))
#endregion Weierstrass p
#-----------------------------------------------------------------------------+
#region p differences and h_n
def wp_difference_via_siegel(u: FracVector, v: FracVector, trunc=SC_DEFAULT_TRUNC) -> QSeries:
    """-g_{u+v} g_{u-v} eta^4 / (g_u^2 g_v^2), which equals W_u - W_v."""
    _require_nonintegral(u)
    _require_nonintegral(v)
    if u.congruent(v) or u.congruent(-v):
        raise CongruentVectors(f"{u} is congruent to +-{v} modulo Z^2")
    trunc = to_fraction(trunc)
    parts = ((u + v, 1), (u - v, 1), (u, -2), (v, -2))
    lead = Fraction(1, 6) + sum((m * siegel_valuation(w) for w, m in parts), Fraction(0))
    rel = trunc - lead
    if rel <= 0:
        raise ValueError(f"trunc {fraction_str(trunc)} must exceed the leading " + \
                         f"exponent {fraction_str(lead)}")
    result = eta_quotient_series(EtaQuotient(1, {1: 4}), Fraction(1, 6) + rel)
    scalar = CyclotomicNumber.rational(-1)
    for w, m in parts:
        c, g = _siegel_parts(w, siegel_valuation(w) + rel)
        scalar = scalar * c ** m
        result = result * (g if m == 1 else g ** m)
    return result.scale(scalar)

def bridge_constant(u: FracVector, v: FracVector, trunc=6) -> CyclotomicNumber:
    """kappa with W_u - W_v = kappa * wp_difference_via_siegel(u, v)."""
    lhs = wp_series(u, trunc) - wp_series(v, trunc)
    rhs = wp_difference_via_siegel(u, v, trunc)
    e_l, c_l = lhs.leading()
    e_r, c_r = rhs.leading()
    if e_l != e_r:
        raise ArithmeticError(f"leading exponents differ for ({u}, {v}): " + \
                              f"{fraction_str(e_l)} and {fraction_str(e_r)}")
    kappa = c_l / c_r
    if not lhs.agrees_with(rhs.scale(kappa)):
        raise ArithmeticError(f"p difference for ({u}, {v}) is not a constant multiple " + \
                              f"of the Siegel quotient: first difference at q^" + \
                              f"{fraction_str(lhs.first_difference(rhs.scale(kappa)))}")
    logger.debug(f"bridge_constant({u}, {v}) = {kappa}")
    return kappa

H_U = FracVector(ES_HALF, ES_HALF)
H_V = FracVector(0, ES_HALF)

def h_n_series(n: int, trunc=SC_DEFAULT_TRUNC, route: str = "eta") -> QSeries:
    """
    h_n as a q-series. route='eta' expands the eta-quotient
    eta(2^(n-2)t)^12 / (eta(2^(n-1)t)^4 eta(2^(n-3)t)^8); route='definition'
    takes the ratio of p differences at 2^(n-1) tau and 2^(n-2) tau through
    the exact Siegel quotient.
    """
    validate_int(n, "n", 3)
    trunc = to_fraction(trunc)
    if route == "eta":
        return eta_quotient_series(h_quotient(n), trunc)
    if route != "definition":
        raise ValueError(f"Unknown h_n route '{route}', expected 'eta' or 'definition'")
    D = wp_difference_via_siegel(H_U, H_V, trunc / 2 ** (n - 2))
    numerator = rescale(D, 2 ** (n - 1))
    denominator = rescale(D, 2 ** (n - 2))
    return (numerator * denominator.inverse()).truncate(trunc)
#endregion p differences and h_n
#-----------------------------------------------------------------------------+
#region numeric checks
def _relative_error(x: mpmath.mpc, y: mpmath.mpc) -> mpmath.mpf:
    return abs(x - y) / max(abs(x), abs(y), mpmath.mpf(10) ** -mpmath.mp.dps)

def gamma0_transport_check(n: int, alpha: Mat2, v: FracVector, tau,
                           digits: int = ES_TRANSPORT_DIGITS) -> bool:
    """
    p_v(2^(n-1) alpha tau) = (c tau + d)^2 p_v'(2^(n-1) tau) with
    v' = (v1 + (c/2^(n-1)) v2, v2), checked through lattice sums.
    """
    validate_int(n, "n", 2)
    M = 2 ** (n - 1)
    if not alpha.in_gamma0(M):
        raise NotInGamma0(f"{alpha} is not in Gamma0({M})")
    _require_nonintegral(v)
    if not FracVector(2 * v.v1, 2 * v.v2).is_integral():
        raise ValueError(f"{v} is not in (1/2)Z^2")
    v_prime = FracVector(v.v1 + Fraction(alpha.c, M) * v.v2, v.v2)
    with mpmath.workdps(digits + 10):
        t = tau.value if isinstance(tau, BigComplex) else mpmath.mpc(tau)
        lhs = _wp_lattice_mpc(v, M * alpha.act(t), ES_LATTICE_RADIUS)
        rhs = alpha.automorphy(t) ** 2 * _wp_lattice_mpc(v_prime, M * t, ES_LATTICE_RADIUS)
        err = _relative_error(lhs, rhs)
        ok = err < mpmath.mpf(10) ** -ES_TRANSPORT_TOLERANCE_EXP
    logger.info(f"gamma0_transport_check(n={n}, alpha={alpha}, v={v}): " + \
                f"relative error {mpmath.nstr(err, 5)}, pass={ok}")
    return bool(ok)

def h_n_conjugate_check(n: int, tau, digits: int = 100) -> bool:
    """h_n(alpha tau) = -h_n(tau) for alpha = [[1, 0], [2^(n-1), 1]]."""
    validate_int(n, "n", 3)
    alpha = Mat2(1, 0, 2 ** (n - 1), 1)
    E = h_quotient(n)
    with mpmath.workdps(digits + 10):
        t = tau.value if isinstance(tau, BigComplex) else mpmath.mpc(tau)
        moved = alpha.act(t)
    lhs = eval_eta_quotient(E, moved, digits).value
    rhs = eval_eta_quotient(E, t, digits).value
    with mpmath.workdps(digits):
        err = _relative_error(lhs, -rhs)
        ok = err < mpmath.mpf(10) ** -(digits // 2)
    logger.info(f"h_n_conjugate_check(n={n}): relative error {mpmath.nstr(err, 5)}, pass={ok}")
    return bool(ok)
#endregion numeric checks
#-----------------------------------------------------------------------------+
#region identity suite
BRIDGE_PAIRS = (
    ((0, ES_HALF), (ES_HALF, 0)),
    ((ES_HALF, ES_HALF), (0, ES_HALF)),
    ((ES_HALF, 0), (ES_HALF, ES_HALF)),
    ((Fraction(1, 3), 0), (0, Fraction(1, 3))),
    ((Fraction(1, 3), Fraction(1, 3)), (0, ES_HALF)),
    ((Fraction(1, 4), 0), (ES_HALF, 0)),
    ((Fraction(1, 4), Fraction(1, 4)), (0, Fraction(1, 4))),
    ((Fraction(1, 6), ES_HALF), (Fraction(1, 3), 0)),
    ((0, Fraction(1, 3)), (0, Fraction(1, 4))),
    ((Fraction(2, 3), Fraction(1, 3)), (ES_HALF, ES_HALF)),
    ((Fraction(1, 4), Fraction(3, 4)), (Fraction(1, 3), Fraction(2, 3))),
)

def identity_report(name: str, trunc, residual: QSeries = None, passed: bool = None) -> dict:
    """Report for one identity; residual is the difference of both sides."""
    first = None if residual is None or residual.is_zero() else residual.valuation()
    ok = (first is None) if passed is None else passed
    report = {"identity": name, "trunc": fraction_str(to_fraction(trunc)),
              "max_abs_residual_exponent": None if first is None else fraction_str(first),
              "pass": bool(ok)}
    log = logger.info if ok else logger.warning
    log(f"identity {name} below q^{report['trunc']}: pass={report['pass']}")
    return report

def check_siegel_eta_half(trunc) -> dict:
    """g_(1/2,0) = -eta(tau/2)^2 / eta(tau)^2."""
    trunc = to_fraction(trunc)
    g = siegel_series(FracVector(ES_HALF, 0), trunc)
    ratio = rescale(eta_quotient_series(EtaQuotient(2, {1: 2, 2: -2}), 2 * trunc), ES_HALF)
    return identity_report("siegel_half_zero_eta", trunc, g + ratio)

def check_siegel_triple_product(trunc) -> dict:
    """g_(1/2,0) g_(1/2,1/2) g_(0,1/2) = 2 exp(pi i/4)."""
    trunc = to_fraction(trunc)
    product = QSeries.one(trunc)
    for v in (FracVector(ES_HALF, 0), FracVector(ES_HALF, ES_HALF), FracVector(0, ES_HALF)):
        product = product * siegel_series(v, siegel_valuation(v) + trunc)
    constant = QSeries.constant(root_of_unity(Fraction(1, 8)) * 2, product.trunc)
    return identity_report("siegel_triple_product", product.trunc, product - constant)

def check_siegel_translation(trunc=ES_TRANSLATION_TRUNC, grid: int = 12, s_bound: int = 3) -> dict:
    """g_{v+s} = translate_factor(v, s) g_v over the (1/grid)-grid."""
    trunc = to_fraction(trunc)
    first = None
    for a in range(grid):
        for b in range(grid):
            v = FracVector(Fraction(a, grid), Fraction(b, grid))
            if v.is_integral():
                continue
            base = siegel_series(v, trunc)
            for s1 in range(-s_bound, s_bound + 1):
                for s2 in range(-s_bound, s_bound + 1):
                    moved = siegel_series(v + (s1, s2), trunc)
                    diff = moved - base.scale(translate_factor(v, (s1, s2)))
                    if not diff.is_zero():
                        e = diff.valuation()
                        first = e if first is None else min(first, e)
                        logger.warning(f"translation fails at v={v}, s=({s1},{s2})")
    residual = None if first is None else QSeries.monomial(first, 1, first + 1)
    return identity_report("siegel_translation", trunc, residual)

def check_h_n_routes(n: int, trunc) -> dict:
    """Both h_n routes agree coefficientwise."""
    trunc = to_fraction(trunc)
    return identity_report(f"h_{n}_routes", trunc,
                           h_n_series(n, trunc, "definition") - h_n_series(n, trunc, "eta"))

def check_wp_symmetries(trunc, vectors=None) -> list:
    """W_v = W_{-v} and W_{v+s} = W_v as exact series."""
    trunc = to_fraction(trunc)
    vectors = vectors or [FracVector(ES_HALF, 0), FracVector(Fraction(1, 3), Fraction(1, 4)),
                          FracVector(0, Fraction(1, 3))]
    even = QSeries.zero(trunc)
    periodic = QSeries.zero(trunc)
    for v in vectors:
        w = wp_series(v, trunc)
        even = even + (w - wp_series(-v, trunc))
        periodic = periodic + (w - wp_series(v + (2, -3), trunc))
    return [identity_report("wp_even", trunc, even),
            identity_report("wp_periodic", trunc, periodic)]

def check_bridge_constant(trunc=6, pairs=BRIDGE_PAIRS) -> dict:
    """kappa is the same constant (namely 1) for every pair."""
    ok = True
    for u, v in pairs:
        try:
            kappa = bridge_constant(FracVector(*u), FracVector(*v), trunc)
        except ArithmeticError as e:
            logger.warning(f"bridge constant failed: {e}")
            ok = False
            continue
        if kappa != 1:
            logger.warning(f"bridge constant for ({u}, {v}) is {kappa}, expected 1")
            ok = False
    return identity_report("wp_bridge_constant", trunc, passed=ok)

def run_identity_suite(trunc=SC_DEFAULT_TRUNC, ns=range(3, 9), translation_trunc=ES_TRANSLATION_TRUNC,
                       bridge_trunc=6) -> list:
    """All exact identities as reports, in a fixed order."""
    trunc = to_fraction(trunc)
    reports = [check_siegel_eta_half(trunc), check_siegel_triple_product(trunc),
               check_siegel_translation(min(trunc, to_fraction(translation_trunc)))]
    reports += [check_h_n_routes(n, trunc) for n in ns]
    reports += check_wp_symmetries(min(trunc, Fraction(20)))
    reports.append(check_bridge_constant(bridge_trunc))
    return reports
#endregion identity suite
#-----------------------------------------------------------------------------+
