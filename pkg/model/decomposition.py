#-----------------------------------------------------------------------------+
# decomposition.py - eta-quotient decompositions by exact linear algebra
#-----------------------------------------------------------------------------+
'''
Modular functions on Gamma0(2^n) are polynomials in g04, u, 1/u and
h_3..h_n. A target q-expansion is matched against the expansions of all
generator monomials up to a degree bound; the system is solved exactly over
QQ with sympy's DomainMatrix. Weight 2k forms are first multiplied by
(eta(2t)^4 / eta(4t)^8)^k to land in weight 0.
'''
#-----------------------------------------------------------------------------+
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
from sympy import QQ, divisor_sigma
from sympy.polys.matrices import DomainMatrix

from efconstants import *
from ef_logging.ef_logging import ef_logging_setup
from ef_utilities.ef_utils import (fraction_str, fractions_str, to_fraction,
                                   validate_int, validate_positive_int)
from model.base_efmodel.efmodel import EFModel
from model.cm_numerics import BigComplex
from model.efmodelconstants import (CM_GUARD_DIGITS, DC_E4_FACTOR,
                                    DC_J4_POLE_ORDER, DC_RELATION_ORDER)
from model.efmodelerrors import (InsufficientBasis, InsufficientTruncation,
                                 NoRelation)
from model.eta_quotients import (EtaQuotient, cusp_orders, eta_quotient_series,
                                 g04, gamma0_index, h_quotient)
from model.series_core import QSeries, rescale
#-----------------------------------------------------------------------------+
#region ef_logging_setup()
logger = ef_logging_setup(EF_APP_NAME)
logger.debug(f"Imported module: {__name__}")
#endregion ef_logging_setup()
#-----------------------------------------------------------------------------+
#region EtaCombination Class
@dataclass(frozen=True)
class EtaCombination(EFModel):
    """
    sum c_i * E_i over eta-quotients of one level and one weight.

    Terms are given as (coefficient, EtaQuotient) pairs; quotients of a lower
    level are lifted, repeated quotients are merged and zero coefficients
    dropped. The first-seen order of quotients is kept.
    """
    level: int
    weight: int
    terms: tuple = ()

    def __post_init__(self):
        validate_positive_int(self.level, "level")
        validate_int(self.weight, "weight", 0)
        merged: dict = {}
        for c, E in self.terms:
            if E.level != self.level:
                E = E.lift(self.level)
            if E.weight != self.weight:
                raise ValueError(f"quotient {E} has weight {fraction_str(E.weight)}, " + \
                                 f"expected {self.weight}")
            merged[E] = merged.get(E, Fraction(0)) + to_fraction(c)
        object.__setattr__(self, "terms", tuple((c, E) for E, c in merged.items() if c))

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def quotients(self) -> list:
        return [E for _, E in self.terms]

    def to_dict(self) -> dict:
        return {"level": self.level, "weight": self.weight,
                "terms": [{"coeff": fraction_str(c), "quotient": E.to_dict()}
                          for c, E in self.terms]}

    @classmethod
    def from_dict(cls, data: dict) -> "EtaCombination":
        terms = tuple((to_fraction(t["coeff"]), EtaQuotient.from_dict(t["quotient"]))
                      for t in data.get("terms", []))
        return cls(int(data["level"]), int(data["weight"]), terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{fraction_str(c)}*[{E}]" for c, E in self.terms)
#endregion EtaCombination Class
#-----------------------------------------------------------------------------+
#region generators
def generator_set(n: int) -> list:
    """[g04, u, 1/u, h_3, ..., h_n] at level 2^n."""
    validate_int(n, "n", 2)
    u = EtaQuotient(4, {1: -8, 2: 24, 4: -16})
    gens = [g04(), u, u.inverse()] + [h_quotient(m) for m in range(3, n + 1)]
    return [E.lift(2 ** n) for E in gens]

def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest

def generator_monomials(n: int, degree_bound: int) -> list:
    """
    Exponent vectors over generator_set(n) of total degree <= degree_bound,
    by degree and then in descending lexicographic order. u and 1/u never
    appear together.
    """
    validate_int(degree_bound, "degree_bound", 0)
    k = len(generator_set(n))
    monomials = []
    for total in range(degree_bound + 1):
        vectors = [v for v in _compositions(total, k) if not (v[1] and v[2])]
        monomials.extend(sorted(vectors, reverse=True))
    return monomials

def monomial_quotient(n: int, vector: tuple) -> EtaQuotient:
    """The eta-quotient prod G_i^e_i over generator_set(n)."""
    E = EtaQuotient(2 ** n)
    for G, e in zip(generator_set(n), vector):
        if e:
            E = E * G ** e
    return E

@lru_cache(maxsize=None)
def pole_allowance(N: int) -> int:
    """
    Sum over the cusps of Gamma0(N) of the largest generator pole order.
    Zero for levels that are not 2^n with n >= 2.
    """
    n = N.bit_length() - 1
    if N < 4 or N != 2 ** n:
        return 0
    worst: dict = {}
    for G in generator_set(n):
        for cusp, order in cusp_orders(G).items():
            worst[cusp] = max(worst.get(cusp, Fraction(0)), -order)
    return math.ceil(sum(worst.values(), Fraction(0)))

def sturm_truncation(N: int, weight: int, degree_bound: int) -> int:
    """ceil(weight*index/12) + degree_bound*pole_allowance(N) + 1."""
    validate_positive_int(N, "N")
    validate_int(weight, "weight", 0)
    validate_int(degree_bound, "degree_bound", 0)
    if weight % 2:
        raise ValueError(f"weight must be even, not {weight}")
    return math.ceil(Fraction(weight * gamma0_index(N), 12)) + \
        degree_bound * pole_allowance(N) + 1
#endregion generators
#-----------------------------------------------------------------------------+
#region exact solver
def _qq_matrix(rows: list) -> DomainMatrix:
    ncols = len(rows[0]) if rows else 0
    return DomainMatrix([[QQ(a.numerator, a.denominator) for a in row] for row in rows],
                        (len(rows), ncols), QQ)

def _fractions(M: DomainMatrix) -> list:
    return [[Fraction(int(x.p), int(x.q)) for x in row] for row in M.to_Matrix().tolist()]

def _first_inconsistent_row(aug: DomainMatrix, k: int) -> int:
    """Least r with the first r equations inconsistent."""
    lo, hi = 1, aug.shape[0]
    while lo < hi:
        mid = (lo + hi) // 2
        top = aug[:mid, :]
        if top.rank() > top[:, :k].rank():
            hi = mid
        else:
            lo = mid + 1
    return lo

def _solve_columns(columns: list, target: QSeries, lo: int, trunc: int) -> list:
    """x with sum x_i columns_i = target at exponents lo..trunc-1."""
    k = len(columns)
    rows = [[col.coefficient(e).to_fraction() for col in columns] +
            [target.coefficient(e).to_fraction()] for e in range(lo, trunc)]
    aug = _qq_matrix(rows)
    rref, pivots = aug.rref()
    if k in pivots:
        r = _first_inconsistent_row(aug, k)
        exponent = Fraction(lo + r - 1)
        raise InsufficientBasis(f"target is not in the span of {k} monomials: first " + \
                                f"unmatched coefficient at q^{fraction_str(exponent)}",
                                residual_exponent=exponent)
    reduced = _fractions(rref)
    x = [Fraction(0)] * k
    for i, p in enumerate(pivots):
        x[p] = reduced[i][k]
    return x

def expand_combination(comb: EtaCombination, trunc) -> QSeries:
    total = QSeries.zero(trunc)
    for c, E in comb.terms:
        total = total + eta_quotient_series(E, trunc).scale(c)
    return total

def _check_expansion(comb: EtaCombination, target: QSeries, trunc) -> None:
    diff = expand_combination(comb, trunc) - target.truncate(trunc)
    if not diff.is_zero():
        raise ArithmeticError(f"decomposition re-expands differently at q^" + \
                              f"{fraction_str(diff.valuation())}")
#endregion exact solver
#-----------------------------------------------------------------------------+
#region decompositions
def _decompose_vectors(target: QSeries, n: int, degree_bound: int) -> tuple:
    """(trunc, [(coefficient, vector, quotient)]) for a weight 0 target."""
    validate_int(n, "n", 2)
    validate_positive_int(degree_bound, "degree_bound")
    if target.denom != 1:
        raise ValueError(f"target exponents must be integers, found denominator {target.denom}")
    trunc = sturm_truncation(2 ** n, 0, degree_bound)
    if target.trunc < trunc:
        raise InsufficientTruncation(
            f"target known below q^{fraction_str(target.trunc)}, comparison needs q^{trunc}",
            required=Fraction(trunc), available=target.trunc)
    vectors = generator_monomials(n, degree_bound)
    quotients = [monomial_quotient(n, v) for v in vectors]
    columns = [eta_quotient_series(E, trunc) for E in quotients]
    lo = min([math.floor(target.valuation())] + [int(E.leading_exponent) for E in quotients])
    x = _solve_columns(columns, target, lo, trunc)
    picked = [(c, v, E) for c, v, E in zip(x, vectors, quotients) if c]
    logger.info(f"decompose(n={n}, degree_bound={degree_bound}): {len(picked)} of " + \
                f"{len(vectors)} monomials, compared below q^{trunc}")
    return trunc, picked

def decompose_weight0(target: QSeries, n: int, degree_bound: int) -> EtaCombination:
    """Write a weight 0 function on Gamma0(2^n) as a sum of generator monomials."""
    trunc, picked = _decompose_vectors(target, n, degree_bound)
    comb = EtaCombination(2 ** n, 0, tuple((c, E) for c, _, E in picked))
    _check_expansion(comb, target, trunc)
    return comb

def form_factor(n: int) -> EtaQuotient:
    """eta(2t)^4 / eta(4t)^8, weight -2, at level 2^n."""
    return EtaQuotient(4, {2: 4, 4: -8}).lift(2 ** n)

def decompose_form(target: QSeries, n: int, weight: int, degree_bound: int) -> EtaCombination:
    """Write a weight 2k holomorphic form as a sum of weight 2k eta-quotients."""
    validate_int(n, "n", 2)
    validate_int(weight, "weight", 0)
    if weight % 2:
        raise ValueError(f"weight must be even, not {weight}")
    if weight == 0:
        return decompose_weight0(target, n, degree_bound)
    k = weight // 2
    required = sturm_truncation(2 ** n, weight, degree_bound) + k
    if target.trunc < required:
        raise InsufficientTruncation(
            f"weight {weight} target known below q^{fraction_str(target.trunc)}, " + \
            f"needs q^{required}", required=Fraction(required), available=target.trunc)
    factor = form_factor(n) ** k
    shifted = target * eta_quotient_series(factor, target.trunc)
    comb0 = decompose_weight0(shifted, n, degree_bound)
    comb = EtaCombination(2 ** n, weight,
                          tuple((c, E * factor.inverse()) for c, E in comb0.terms))
    _check_expansion(comb, target, required - k)
    return comb

def decompose_holomorphic(target: QSeries, N: int, weight: int, quotients: list) -> EtaCombination:
    """
    Second route: solve over a given list of holomorphic weight-k quotients
    of level N, for instance the output of enumerate_holomorphic.
    """
    trunc = sturm_truncation(N, weight, 0)
    if target.trunc < trunc:
        raise InsufficientTruncation(
            f"target known below q^{fraction_str(target.trunc)}, comparison needs q^{trunc}",
            required=Fraction(trunc), available=target.trunc)
    columns = [eta_quotient_series(E, trunc) for E in quotients]
    x = _solve_columns(columns, target, 0, trunc)
    comb = EtaCombination(N, weight, tuple((c, E) for c, E in zip(x, quotients) if c))
    _check_expansion(comb, target, trunc)
    return comb

def tower_split(target: QSeries, n: int, degree_bound: int) -> tuple:
    """
    (c0, c1) at level 2^(n-1) with target = c0 + c1*h_n, separating even and
    odd powers of h_n in the monomial solution.
    """
    validate_int(n, "n", 3)
    trunc, picked = _decompose_vectors(target, n, degree_bound)
    half = 2 ** (n - 1)
    hn = h_quotient(n)
    even, odd = [], []
    for c, v, E in picked:
        if v[-1] % 2:
            odd.append((c, EtaQuotient(half, (E / hn).exps)))
        else:
            even.append((c, EtaQuotient(half, E.exps)))
    c0 = EtaCombination(half, 0, tuple(even))
    c1 = EtaCombination(half, 0, tuple(odd))
    rebuilt = expand_combination(c0, trunc) + \
        expand_combination(c1, trunc) * eta_quotient_series(hn, trunc)
    if not rebuilt.agrees_with(target.truncate(trunc)):
        raise ArithmeticError("c0 + c1*h_n does not re-expand to the target")
    return c0, c1

def square_in_lower_level(n: int, degree_bound: int) -> EtaCombination:
    """h_n^2 decomposed over the generators of level 2^(n-1)."""
    validate_int(n, "n", 3)
    trunc = sturm_truncation(2 ** (n - 1), 0, degree_bound)
    target = eta_quotient_series(h_quotient(n) ** 2, trunc)
    return decompose_weight0(target, n - 1, degree_bound)
#endregion decompositions
#-----------------------------------------------------------------------------+
#region j and the level 4 relation
def j_series(trunc) -> QSeries:
    """j = E4^3 / Delta with integer coefficients, q^-1 + 744 + 196884 q + ..."""
    trunc = to_fraction(trunc)
    if trunc < 0:
        raise ValueError(f"trunc must be nonnegative, not {fraction_str(trunc)}")
    count = math.ceil(trunc) + 1
    e4 = QSeries.from_int_list([1] + [DC_E4_FACTOR * int(divisor_sigma(k, 3)) for k in range(1, count)],
                               0, 1, trunc + 1)
    delta = eta_quotient_series(EtaQuotient(1, {1: 24}), trunc + 2)
    return e4 ** 3 * delta.inverse()

def _polynomial_at(coeffs: tuple, s: QSeries, trunc) -> QSeries:
    total = QSeries.zero(trunc)
    power = QSeries.one(trunc)
    for c in coeffs:
        if c:
            total = total + power.scale(c)
        power = (power * s).truncate(trunc)
    return total

def _order_at_zero(coeffs: tuple) -> int:
    return next(i for i, c in enumerate(coeffs) if c)

@dataclass(frozen=True)
class RationalRelation(EFModel):
    """j(4 tau) = A(g04(tau)) / B(g04(tau)); coefficients in ascending degree."""
    numer: tuple
    denom: tuple

    def __post_init__(self):
        for name in ("numer", "denom"):
            coeffs = [to_fraction(c) for c in getattr(self, name)]
            while coeffs and not coeffs[-1]:
                coeffs.pop()
            object.__setattr__(self, name, tuple(coeffs))
        if not self.denom:
            raise ValueError("denominator polynomial is zero")

    @property
    def pole_order(self) -> int:
        """ord_{X=0} B - ord_{X=0} A."""
        return _order_at_zero(self.denom) - _order_at_zero(self.numer)

    def evaluate(self, x, digits: int = EF_DEFAULT_DIGITS) -> BigComplex:
        """A(x)/B(x) at a numeric point."""
        with mpmath.workdps(digits + CM_GUARD_DIGITS):
            x = x.value if isinstance(x, BigComplex) else mpmath.mpc(x)
            a = mpmath.polyval([mpmath.mpf(c.numerator) / c.denominator for c in reversed(self.numer)], x)
            b = mpmath.polyval([mpmath.mpf(c.numerator) / c.denominator for c in reversed(self.denom)], x)
            value = a / b
        return BigComplex.from_mpc(value, digits)

    def residual(self, order: int = DC_RELATION_ORDER) -> QSeries:
        """A(g) - j(4 tau) B(g) below q^order; zero for a true relation."""
        trunc = order + DC_J4_POLE_ORDER
        g = eta_quotient_series(g04(), trunc)
        j4 = rescale(j_series(Fraction(trunc, 4)), 4)
        diff = _polynomial_at(self.numer, g, trunc) - j4 * _polynomial_at(self.denom, g, trunc)
        return diff.truncate(order)

    def to_dict(self) -> dict:
        return {"A": fractions_str(self.numer), "B": fractions_str(self.denom)}

    @classmethod
    def from_dict(cls, data: dict) -> "RationalRelation":
        return cls(tuple(to_fraction(c) for c in data["A"]),
                   tuple(to_fraction(c) for c in data["B"]))

def _relation_at_degree(d: int, order: int):
    trunc = order + DC_J4_POLE_ORDER
    g = eta_quotient_series(g04(), trunc)
    j4 = rescale(j_series(Fraction(trunc, 4)), 4)
    powers = [QSeries.one(trunc)]
    for _ in range(d):
        powers.append((powers[-1] * g).truncate(trunc))
    columns = powers + [-(j4 * p) for p in powers]
    rows = [[col.coefficient(e).to_fraction() for col in columns]
            for e in range(-DC_J4_POLE_ORDER, order)]
    null = _qq_matrix(rows).nullspace()
    if null.shape[0] == 0:
        return None
    vector = _fractions(null)[0]
    scale = math.lcm(*(c.denominator for c in vector))
    ints = [int(c * scale) for c in vector]
    common = math.gcd(*ints)
    ints = [c // common for c in ints]
    A, B = ints[:d + 1], ints[d + 1:]
    # A = 0 would force B = 0
    if next(c for c in reversed(A) if c) < 0:
        A, B = [-c for c in A], [-c for c in B]
    return RationalRelation(tuple(A), tuple(B))

def j4_hauptmodul_relation(degree_bound: int = 6) -> RationalRelation:
    """A, B of least degree with j(4 tau) = A(g04)/B(g04)."""
    validate_positive_int(degree_bound, "degree_bound")
    for d in range(1, degree_bound + 1):
        order = max(DC_RELATION_ORDER, sturm_truncation(4, 0, d) + DC_J4_POLE_ORDER)
        relation = _relation_at_degree(d, order)
        if relation is None:
            logger.debug(f"j4_hauptmodul_relation: no relation at degree {d}")
            continue
        if relation.pole_order != DC_J4_POLE_ORDER:
            logger.warning(f"j4 relation has pole order {relation.pole_order} at X = 0")
        logger.info(f"j4_hauptmodul_relation: degree {d}, checked below q^{order}")
        return relation
    raise NoRelation(f"no relation j(4t) = A(g)/B(g) with degree <= {degree_bound}")
#endregion j and the level 4 relation
#-----------------------------------------------------------------------------+
