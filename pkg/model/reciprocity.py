#-----------------------------------------------------------------------------+
# reciprocity.py - Galois conjugates of CM values through the group W_{K,N}
#-----------------------------------------------------------------------------+
'''
Shimura reciprocity made explicit for K = Q(sqrt(d_K)) and level N.

W_{K,N} is the set of matrices [[t - B s, -C s], [s, t]] mod N with unit
determinant. Modulo the images of the units of O_K and the scalars t*I it
represents Gal(H_{K,N} / H_K). Each representative factors as
diag(1, det) * alpha with alpha in SL2(Z/NZ); for a function with rational
q-coefficients the diag part acts trivially and the conjugate is the value
at sl2_lift(alpha) applied to tau_K.
'''
#-----------------------------------------------------------------------------+
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from sympy import legendre_symbol, primefactors
from sympy.core.intfunc import igcdex

from efconstants import *
from ef_logging.ef_logging import ef_logging_setup
from ef_utilities.ef_utils import validate_int
from model.base_efmodel.efmodel import EFModel
from model.cm_numerics import (BigComplex, ImagQuadOrder, eval_eta_quotient,
                               invariant_quotient, is_fundamental_discriminant,
                               precision_ladder, tau_point)
from model.efmodelconstants import (CM_GUARD_DIGITS, RC_INVARIANT_SCALAR,
                                    RC_REFERENCE_POLYS, RC_ROUNDING_EXPONENT)
from model.efmodelerrors import (LevelMismatch, NotFundamental, NotUnimodular,
                                 RoundingFailure)
from model.eta_quotients import EtaQuotient, h_quotient, ligozat_check
from model.mat2 import Mat2
#-----------------------------------------------------------------------------+
#region ef_logging_setup()
logger = ef_logging_setup(EF_APP_NAME)
logger.debug(f"Imported module: {__name__}")
#endregion ef_logging_setup()
#-----------------------------------------------------------------------------+
#region class numbers and degrees
def class_number(d_K: int) -> int:
    """Number of reduced primitive forms (a, b, c) of discriminant d_K."""
    if not is_fundamental_discriminant(d_K):
        raise NotFundamental(f"{d_K} is not a negative fundamental discriminant")
    h = 0
    a = 1
    while 3 * a * a <= -d_K:
        for b in range(-a + 1, a + 1):
            if (b * b - d_K) % (4 * a):
                continue
            c = (b * b - d_K) // (4 * a)
            if c < a or (b < 0 and a == c) or math.gcd(a, b, c) != 1:
                continue
            h += 1
        a += 1
    return h

def kronecker_symbol(d: int, p: int) -> int:
    """(d/p) for a prime p; at p = 2 by the residue of d mod 8."""
    if p == 2:
        if d % 2 == 0:
            return 0
        return 1 if d % 8 in (1, 7) else -1
    if d % p == 0:
        return 0
    return int(legendre_symbol(d % p, p))

def unit_index(order: ImagQuadOrder) -> int:
    """[O_K^x : O^x]."""
    if order.conductor == 1:
        return 1
    return {-4: 2, -3: 3}.get(order.d_K, 1)

def degree_formula(order: ImagQuadOrder) -> int:
    """[H_{K,N} : K] = h_K N / [O_K^x : O^x] * prod_{p | N} (1 - (d_K/p)/p)."""
    N = order.conductor
    value = Fraction(class_number(order.d_K) * N, unit_index(order))
    for p in primefactors(N):
        value *= 1 - Fraction(kronecker_symbol(order.d_K, p), p)
    if value.denominator != 1:
        raise ArithmeticError(f"degree formula is not integral for {order}: {value}")
    return int(value)

def relative_degree(order: ImagQuadOrder, m: int) -> int:
    """[H_{K,2^m} : H_{K,2^(m-1)}]."""
    validate_int(m, "m", 2)
    upper = degree_formula(order.with_conductor(2 ** m))
    lower = degree_formula(order.with_conductor(2 ** (m - 1)))
    return upper // lower
#endregion class numbers and degrees
#-----------------------------------------------------------------------------+
#region the group W_{K,N}
def _w_element(order: ImagQuadOrder, t: int, s: int) -> Mat2:
    return Mat2(t - order.B * s, -order.C * s, s, t, order.conductor)

def build_W(order: ImagQuadOrder) -> list:
    """Elements of W_{K,N}, ordered by t and then s."""
    N = validate_int(order.conductor, "conductor", 2)
    W = []
    for t in range(N):
        for s in range(N):
            g = _w_element(order, t, s)
            if math.gcd(g.det(), N) == 1:
                W.append(g)
    return W

def kernel_matrices(order: ImagQuadOrder) -> list:
    """Images of the units of O_K: four for d_K = -4, six for d_K = -3, else +-I."""
    units = {-4: [(1, 0), (-1, 0), (0, 1), (0, -1)],
             -3: [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)]}
    kernel = []
    for t, s in units.get(order.d_K, [(1, 0), (-1, 0)]):
        g = _w_element(order, t, s)
        if g not in kernel:
            kernel.append(g)
    return kernel

def _reduction_subgroup(order: ImagQuadOrder) -> set:
    N = order.conductor
    scalars = [Mat2(t, 0, 0, t, N) for t in range(1, N) if math.gcd(t, N) == 1]
    return {k * s for k in kernel_matrices(order) for s in scalars}

def w_closure_check(order: ImagQuadOrder) -> bool:
    """True when W_{K,N} is closed under multiplication mod N."""
    W = build_W(order)
    members = set(W)
    missing = sum(1 for g in W for h in W if g * h not in members)
    if missing:
        logger.warning(f"W_(K,N) for d_K={order.d_K}, N={order.conductor} is not closed: " + \
                       f"{missing} products fall outside")
    return not missing

def sl2_part(gamma: Mat2) -> tuple:
    """(d, alpha) with gamma = diag(1, d) * alpha and det alpha = 1 mod N."""
    N = gamma.modulus
    d = gamma.det()
    return d, Mat2(1, 0, 0, pow(d, -1, N), N) * gamma

def coset_reps(order: ImagQuadOrder) -> list:
    """
    One (d, alpha) per coset of W_{K,N} modulo kernel * {t I}, identity coset
    first, each gamma written as diag(1, d) * alpha.
    """
    N = order.conductor
    H = _reduction_subgroup(order)
    reps, covered = [], set()
    for g in [Mat2.identity(N)] + build_W(order):
        if g in covered:
            continue
        reps.append(g)
        covered.update(g * h for h in H)
    logger.debug(f"coset_reps(d_K={order.d_K}, N={N}): {len(reps)} cosets")
    return [sl2_part(g) for g in reps]

def same_coset(order: ImagQuadOrder, g: Mat2, h: Mat2) -> bool:
    """g h^-1 lies in kernel * {t I}."""
    return g * h.inverse() in _reduction_subgroup(order)
#endregion the group W_{K,N}
#-----------------------------------------------------------------------------+
#region SL2 lifting
def _symmetric_steps(bound: int):
    yield 0
    for j in range(1, bound + 1):
        yield -j
        yield j

def sl2_lift(alpha: Mat2) -> Mat2:
    """
    An integer matrix of determinant 1 reducing to alpha mod N. The bottom
    row keeps c and moves d by multiples of N until gcd(c, d) = 1; the top
    row is the extended-gcd solution shifted by k*(c, d) with k the symmetric
    residue matching alpha's top row.
    """
    N = alpha.modulus
    if N == 0:
        if alpha.det() != 1:
            raise NotUnimodular(f"{alpha} has determinant {alpha.det()}")
        return alpha
    if alpha.det() != 1 % N:
        raise NotUnimodular(f"{alpha} has determinant {alpha.det()} mod {N}")
    c, d0 = alpha.c, alpha.d
    if c == 0 and d0 not in (1, N - 1):
        c = N
    d = next(d0 + j * N for j in _symmetric_steps(N * N) if math.gcd(c, d0 + j * N) == 1)
    x, y, _ = igcdex(d, c)
    a0, b0 = int(x), -int(y)
    u, w, _ = igcdex(c, d)
    k = (int(u) * (alpha.a - a0) + int(w) * (alpha.b - b0)) % N
    if k > N // 2:
        k -= N
    lift = Mat2(a0 + k * c, b0 + k * d, c, d)
    if lift.det() != 1 or lift.reduce(N) != alpha:
        raise ArithmeticError(f"sl2_lift failed for {alpha}: got {lift}")
    return lift
#endregion SL2 lifting
#-----------------------------------------------------------------------------+
#region Galois orbits
@dataclass(frozen=True)
class GaloisOrbit(EFModel):
    """Conjugate values over H_K, one per coset representative."""
    order: ImagQuadOrder
    reps: tuple
    values: tuple

    def __post_init__(self):
        if len(self.reps) != len(self.values):
            raise ValueError(f"{len(self.reps)} representatives for {len(self.values)} values")

    @property
    def degree(self) -> int:
        return len(self.values)

    def to_dict(self) -> dict:
        return {"d_K": self.order.d_K, "N": self.order.conductor, "degree": self.degree,
                "reps": [[d, lift.rows] for d, lift in self.reps],
                "values": [v.to_dict() for v in self.values]}

    @classmethod
    def from_dict(cls, data: dict) -> "GaloisOrbit":
        order = ImagQuadOrder(int(data["d_K"]), int(data["N"]))
        reps = tuple((int(d), Mat2.from_rows(rows)) for d, rows in data["reps"])
        return cls(order, reps, tuple(BigComplex.from_dict(v) for v in data["values"]))

def conjugates_of_invariant(order: ImagQuadOrder, E: EtaQuotient, digits: int = EF_DEFAULT_DIGITS,
                            scalar: int = 1) -> GaloisOrbit:
    """scalar * E(alpha tau_K) for every coset representative alpha."""
    if E.weight != 0:
        raise ValueError(f"{E} has weight {E.weight}; conjugates need weight 0")
    if order.conductor % E.level:
        raise LevelMismatch(f"level {E.level} does not divide the conductor {order.conductor}")
    reps = tuple((d, sl2_lift(alpha)) for d, alpha in coset_reps(order))
    with mpmath.workdps(digits + CM_GUARD_DIGITS):
        tau = tau_point(order, digits + CM_GUARD_DIGITS).value
        points = [lift.act(tau) for _, lift in reps]
    values = tuple(eval_eta_quotient(E, p, digits) * scalar for p in points)
    return GaloisOrbit(order, reps, values)

def invariant_orbit(order: ImagQuadOrder, digits: int = EF_DEFAULT_DIGITS) -> GaloisOrbit:
    """Orbit of 256 eta(N t)^8 / eta((N/4) t)^8 at tau_K."""
    return conjugates_of_invariant(order, invariant_quotient(order.conductor), digits,
                                   RC_INVARIANT_SCALAR)
#endregion Galois orbits
#-----------------------------------------------------------------------------+
#region minimal polynomials
@dataclass(frozen=True)
class MinPolyReport(EFModel):
    """Rounded product of (X - v) over an orbit, coefficients highest degree first."""
    coeffs: tuple
    max_rounding_residual: str
    max_imag: str
    digits: int
    trace_check: bool = True
    stable: bool = False
    reference_match: bool = None
    orbit: GaloisOrbit = field(default=None, compare=False)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def to_dict(self) -> dict:
        data = self.orbit.to_dict() if self.orbit else {"degree": self.degree}
        data.update({"poly": [str(c) for c in self.coeffs],
                     "max_rounding_residual": self.max_rounding_residual,
                     "max_imag": self.max_imag, "digits": self.digits,
                     "trace_check": self.trace_check, "stable": self.stable})
        if self.reference_match is not None:
            data["reference_match"] = self.reference_match
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "MinPolyReport":
        orbit = GaloisOrbit.from_dict(data) if "reps" in data else None
        return cls(tuple(int(c) for c in data["poly"]), data["max_rounding_residual"],
                   data["max_imag"], int(data["digits"]), data.get("trace_check", True),
                   data.get("stable", False), data.get("reference_match"), orbit)

def _tolerance(digits: int) -> mpmath.mpf:
    return mpmath.mpf(10) ** -int(digits * RC_ROUNDING_EXPONENT)

def _expand_product(values: list) -> list:
    poly = [mpmath.mpc(1)]
    for v in values:
        poly = [a - v * b for a, b in zip(poly + [0], [0] + poly)]
    return poly

def min_poly_from_orbit(orbit: GaloisOrbit, digits: int = None) -> MinPolyReport:
    """Expand prod (X - v_i) and round every coefficient to an integer."""
    digits = digits or min(v.precision for v in orbit.values)
    with mpmath.workdps(digits + CM_GUARD_DIGITS):
        values = [v.value for v in orbit.values]
        poly = _expand_product(values)
        coeffs = [int(mpmath.nint(c.real)) for c in poly]
        residual = max(abs(c - n) for c, n in zip(poly, coeffs))
        max_imag = max(abs(c.imag) for c in poly)
        trace_ok = abs(poly[1] + mpmath.fsum(values)) < _tolerance(digits) if len(poly) > 1 else True
        residual_str = mpmath.nstr(residual, 5)
        imag_str = mpmath.nstr(max_imag, 5)
        too_far = residual > _tolerance(digits)
    if too_far:
        ladder = precision_ladder(max(digits, EF_MIN_DIGITS))
        advised = ladder[1] if len(ladder) > 1 else digits + 150
        raise RoundingFailure(f"coefficients of the degree {len(coeffs) - 1} orbit polynomial are " + \
                              f"{residual_str} from integers at {digits} digits",
                              residual=residual_str, digits=digits, advised_digits=advised)
    logger.info(f"min_poly(d_K={orbit.order.d_K}, N={orbit.order.conductor}): degree " + \
                f"{len(coeffs) - 1}, rounding residual {residual_str}")
    return MinPolyReport(tuple(coeffs), residual_str, imag_str, digits, bool(trace_ok), orbit=orbit)

def reference_check(order: ImagQuadOrder, coeffs: tuple):
    """Compare against a printed reference polynomial; None when there is none."""
    reference = RC_REFERENCE_POLYS.get((order.d_K, order.conductor))
    if reference is None:
        return None
    if tuple(coeffs) != reference:
        logger.warning(f"polynomial for d_K={order.d_K}, N={order.conductor} differs from the " + \
                       f"reference: computed {list(coeffs)}, printed {list(reference)}")
        return False
    return True

def stable_min_poly(order: ImagQuadOrder, E: EtaQuotient = None, digits: int = EF_DEFAULT_DIGITS,
                    scalar: int = None) -> MinPolyReport:
    """
    min_poly_from_orbit at consecutive rungs of the precision ladder until
    two rungs round to the same integers. E defaults to the class invariant.
    """
    if E is None:
        E = invariant_quotient(order.conductor)
        scalar = RC_INVARIANT_SCALAR if scalar is None else scalar
    scalar = 1 if scalar is None else scalar
    previous, failure = None, None
    for rung in precision_ladder(digits):
        try:
            report = min_poly_from_orbit(conjugates_of_invariant(order, E, rung, scalar), rung)
        except RoundingFailure as e:
            logger.info(f"rounding failed at {rung} digits, escalating")
            previous, failure = None, e
            continue
        if previous is not None and previous.coeffs == report.coeffs:
            match = reference_check(order, report.coeffs)
            return MinPolyReport(previous.coeffs, previous.max_rounding_residual, previous.max_imag,
                                 previous.digits, previous.trace_check, True, match, previous.orbit)
        if previous is not None:
            logger.warning(f"rungs {previous.digits} and {rung} disagree")
        previous = report
    if failure is not None and previous is None:
        raise failure
    raise RoundingFailure(f"no two consecutive precision rungs agree for d_K={order.d_K}, " + \
                          f"N={order.conductor}", digits=digits,
                          advised_digits=precision_ladder(digits)[-1] + 300)
#endregion minimal polynomials
#-----------------------------------------------------------------------------+
#region sign flip and integrality
def sign_flip_matrix(order: ImagQuadOrder, m: int) -> Mat2:
    """[[1 - B 2^(m-1), -C 2^(m-1)], [2^(m-1), 1]] in W_{K,2^m}."""
    return _w_element(order.with_conductor(2 ** m), 1, 2 ** (m - 1))

def sign_flip_residual(m: int, order: ImagQuadOrder, digits: int = EF_DEFAULT_DIGITS):
    """|h_m(tau_K) + h_m(lift(tau_K))| and |h_m(tau_K)| as mpmath values."""
    validate_int(m, "m", 3)
    N = 2 ** m
    if order.conductor != N:
        raise LevelMismatch(f"sign flip for h_{m} needs conductor {N}, not {order.conductor}")
    _, alpha = sl2_part(sign_flip_matrix(order, m))
    lift = sl2_lift(alpha)
    E = h_quotient(m)
    with mpmath.workdps(digits + CM_GUARD_DIGITS):
        tau = tau_point(order, digits + CM_GUARD_DIGITS).value
        moved = lift.act(tau)
    value = eval_eta_quotient(E, tau, digits).value
    conjugate = eval_eta_quotient(E, moved, digits).value
    with mpmath.workdps(digits):
        residual, size = abs(value + conjugate), abs(value)
    logger.debug(f"sign_flip_residual(m={m}, d_K={order.d_K}) via {lift}: " + \
                 f"{mpmath.nstr(residual, 5)}")
    return residual, size

def verify_sign_flip(m: int, order: ImagQuadOrder, digits: int = EF_DEFAULT_DIGITS) -> bool:
    """h_m at the lifted image of tau_K equals -h_m(tau_K)."""
    residual, size = sign_flip_residual(m, order, digits)
    with mpmath.workdps(digits):
        ok = residual < _tolerance(digits) * max(1, size)
        if size < _tolerance(digits):
            logger.warning(f"h_{m}(tau_K) vanishes numerically for d_K={order.d_K}")
        logger.info(f"verify_sign_flip(m={m}, d_K={order.d_K}): residual " + \
                    f"{mpmath.nstr(residual, 5)}, pass={bool(ok)}")
    return bool(ok)

def integrality_power(M: int) -> int:
    """Least k with eta(M t)^2k / eta(t)^2k a function on Gamma0(M)."""
    validate_int(M, "M", 2)
    k = 1
    while not ligozat_check(EtaQuotient(M, {1: -2 * k, M: 2 * k})).passes:
        k += 1
    return k

@dataclass(frozen=True)
class IntegralityReport(EFModel):
    """Monic polynomial of x = M eta(M tau_K)^2 / eta(tau_K)^2, highest degree first."""
    M: int
    d_K: int
    k: int
    poly: tuple
    monic_integral: bool
    norm_divides: bool
    max_rounding_residual: str
    digits: int

    def to_dict(self) -> dict:
        return {"M": self.M, "d_K": self.d_K, "k": self.k, "degree": len(self.poly) - 1,
                "poly": [str(c) for c in self.poly], "monic_integral": self.monic_integral,
                "norm_divides": self.norm_divides,
                "max_rounding_residual": self.max_rounding_residual, "digits": self.digits}

    @classmethod
    def from_dict(cls, data: dict) -> "IntegralityReport":
        return cls(int(data["M"]), int(data["d_K"]), int(data["k"]),
                   tuple(int(c) for c in data["poly"]), bool(data["monic_integral"]),
                   bool(data["norm_divides"]), data["max_rounding_residual"], int(data["digits"]))

def integrality_check(M: int, order: ImagQuadOrder, digits: int = EF_DEFAULT_DIGITS) -> IntegralityReport:
    """
    y = x^k is a rational function on Gamma0(M); its orbit over W_{K,M}
    gives P_y and P_x(X) = P_y(X^k) is a monic integer polynomial of x.
    """
    k = integrality_power(M)
    E = EtaQuotient(M, {1: -2 * k, M: 2 * k})
    orbit = conjugates_of_invariant(order.with_conductor(M), E, digits, M ** k)
    report = min_poly_from_orbit(orbit, digits)
    poly = []
    for i, c in enumerate(report.coeffs):
        poly.append(c)
        if i < report.degree:
            poly.extend([0] * (k - 1))
    degree = len(poly) - 1
    constant = poly[-1]
    norm_divides = constant != 0 and (M ** degree) % constant == 0
    logger.info(f"integrality_check(M={M}, d_K={order.d_K}): k={k}, degree {degree}, " + \
                f"constant term {constant}")
    return IntegralityReport(M, order.d_K, k, tuple(poly), poly[0] == 1, norm_divides,
                             report.max_rounding_residual, digits)
#endregion sign flip and integrality
#-----------------------------------------------------------------------------+
