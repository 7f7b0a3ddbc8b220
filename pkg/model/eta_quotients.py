#-----------------------------------------------------------------------------+
# eta_quotients.py - Dedekind eta expansions and eta-quotients on Gamma0(N)
#-----------------------------------------------------------------------------+
'''
EtaQuotient is the product of eta(d*tau)**m_d over the divisors d of a level
N. This module expands such products as exact q-series, checks the Ligozat
modularity conditions, computes orders at the cusps of Gamma0(N) and
enumerates holomorphic quotients inside an exponent box.
'''
#-----------------------------------------------------------------------------+
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from sympy import divisors, primefactors

from efconstants import *
from ef_logging.ef_logging import ef_logging_setup
from ef_utilities.ef_utils import (fraction_str, to_fraction, validate_int,
                                   validate_positive_fraction,
                                   validate_positive_int)
from model.base_efmodel.efmodel import EFModel
from model.efmodelconstants import EQ_ETA_SHIFT
from model.series_core import QSeries
#-----------------------------------------------------------------------------+
#region ef_logging_setup()
logger = ef_logging_setup(EF_APP_NAME)
logger.debug(f"Imported module: {__name__}")
#endregion ef_logging_setup()
#-----------------------------------------------------------------------------+
#region EtaQuotient Class
@dataclass(frozen=True)
class EtaQuotient(EFModel):
    """
    The eta-quotient prod_{d | level} eta(d*tau)**m_d.

    exps accepts any mapping {d: m_d}; it is stored as a sorted tuple of
    (d, m_d) pairs with zero exponents dropped, so equal quotients compare
    and hash equal.
    """
    level: int
    exps: tuple = ()

    def __post_init__(self):
        validate_positive_int(self.level, "level")
        items = self.exps.items() if isinstance(self.exps, Mapping) else self.exps
        normalized = {}
        for d, m in items:
            validate_positive_int(d, "divisor")
            validate_int(m, f"exponent of eta({d}t)")
            if self.level % d:
                raise ValueError(f"{d} does not divide the level {self.level}")
            if d in normalized:
                raise ValueError(f"divisor {d} given twice")
            if m:
                normalized[d] = m
        object.__setattr__(self, "exps", tuple(sorted(normalized.items())))

    #region properties
    @property
    def exps_map(self) -> dict:
        return dict(self.exps)

    def m(self, d: int) -> int:
        return self.exps_map.get(d, 0)

    @property
    def weight(self) -> Fraction:
        return Fraction(sum(m for _, m in self.exps), 2)

    @property
    def leading_exponent(self) -> Fraction:
        """Order at infinity: sum(d*m_d)/24."""
        return sum((d * m for d, m in self.exps), 0) * EQ_ETA_SHIFT

    def is_constant(self) -> bool:
        return not self.exps
    #endregion properties

    #region algebra
    def lift(self, level: int) -> "EtaQuotient":
        """The same function viewed at a multiple of its level."""
        if level % self.level:
            raise ValueError(f"level {self.level} does not divide {level}")
        return EtaQuotient(level, self.exps)

    def __mul__(self, other: "EtaQuotient") -> "EtaQuotient":
        if not isinstance(other, EtaQuotient):
            return NotImplemented
        level = math.lcm(self.level, other.level)
        exps = self.exps_map
        for d, m in other.exps:
            exps[d] = exps.get(d, 0) + m
        return EtaQuotient(level, exps)

    def inverse(self) -> "EtaQuotient":
        return EtaQuotient(self.level, {d: -m for d, m in self.exps})

    def __truediv__(self, other: "EtaQuotient") -> "EtaQuotient":
        if not isinstance(other, EtaQuotient):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, k: int) -> "EtaQuotient":
        validate_int(k, "power")
        return EtaQuotient(self.level, {d: m * k for d, m in self.exps})
    #endregion algebra

    #region serialization
    def to_dict(self) -> dict:
        return {"level": self.level, "exps": {str(d): m for d, m in self.exps}}

    @classmethod
    def from_dict(cls, data: dict) -> "EtaQuotient":
        return cls(int(data["level"]), {int(d): int(m) for d, m in data.get("exps", {}).items()})

    def __str__(self) -> str:
        if not self.exps:
            return "1"
        return " ".join(f"eta({'' if d == 1 else d}t)^{m}" for d, m in self.exps)
    #endregion serialization
#endregion EtaQuotient Class
#-----------------------------------------------------------------------------+
#region named quotients
def g04() -> EtaQuotient:
    """Hauptmodul of X0(4): eta(4t)^8/eta(t)^8 = q + O(q^2)."""
    return EtaQuotient(4, {1: -8, 4: 8})

def h_quotient(n: int) -> EtaQuotient:
    """eta(2^(n-2)t)^12 / (eta(2^(n-1)t)^4 eta(2^(n-3)t)^8) at level 2^n."""
    validate_int(n, "n", 3)
    return EtaQuotient(2 ** n, {2 ** (n - 3): -8, 2 ** (n - 2): 12, 2 ** (n - 1): -4})
#endregion named quotients
#-----------------------------------------------------------------------------+
#region ModularityReport Class
@dataclass(frozen=True)
class ModularityReport(EFModel):
    weight: Fraction
    cond_parity: bool
    cond_24a: bool
    cond_24b: bool
    cond_square: bool

    @property
    def passes(self) -> bool:
        return self.cond_parity and self.cond_24a and self.cond_24b and self.cond_square

    def to_dict(self) -> dict:
        return {"weight": fraction_str(self.weight), "cond_parity": self.cond_parity,
                "cond_24a": self.cond_24a, "cond_24b": self.cond_24b,
                "cond_square": self.cond_square, "passes": self.passes}

    @classmethod
    def from_dict(cls, data: dict) -> "ModularityReport":
        return cls(to_fraction(data["weight"]), bool(data["cond_parity"]),
                   bool(data["cond_24a"]), bool(data["cond_24b"]), bool(data["cond_square"]))
#endregion ModularityReport Class
#-----------------------------------------------------------------------------+
#region expansions
def eta_series(scale, trunc) -> QSeries:
    """
    eta(r*tau) = q^(r/24) * sum_k (-1)^k q^(r*k(3k-1)/2), k over Z.

    Euler's pentagonal theorem gives the product exactly, so every coefficient
    is -1, 0 or +1.
    """
    r = validate_positive_fraction(scale, "scale")
    trunc = to_fraction(trunc)
    lead = r * EQ_ETA_SHIFT
    if trunc <= lead:
        raise ValueError(f"trunc {fraction_str(trunc)} must exceed the leading " + \
                         f"exponent {fraction_str(lead)}")
    terms = {}
    k = 0
    while True:
        found = False
        for j in ((k, -k) if k else (0,)):
            p = j * (3 * j - 1) // 2
            e = lead + r * p
            if e < trunc:
                terms[e] = -1 if j % 2 else 1
                found = True
        if not found and k:
            break
        k += 1
    return QSeries(terms, trunc)

def _unit_part_coefficients(E: EtaQuotient, count: int) -> list:
    """Integer coefficients 0..count-1 of prod_d prod_n (1 - q^(d n))^(m_d)."""
    c = [0] * count
    if count:
        c[0] = 1
    for d, m in E.exps:
        for step in range(d, count, d):
            if m > 0:
                for _ in range(m):
                    for i in range(count - 1, step - 1, -1):
                        c[i] -= c[i - step]
            else:
                for _ in range(-m):
                    for i in range(step, count):
                        c[i] += c[i - step]
    return c

def eta_quotient_series(E: EtaQuotient, trunc) -> QSeries:
    """Exact expansion of E below q^trunc; leading term q^(sum d*m_d/24)."""
    trunc = to_fraction(trunc)
    lead = E.leading_exponent
    if trunc <= lead:
        raise ValueError(f"trunc {fraction_str(trunc)} must exceed the leading " + \
                         f"exponent {fraction_str(lead)} of {E}")
    count = math.ceil(trunc - lead)
    logger.debug(f"Expanding {E} with {count} coefficients")
    return QSeries.from_int_list(_unit_part_coefficients(E, count), lead, 1, trunc)
#endregion expansions
#-----------------------------------------------------------------------------+
#region modularity
def _is_rational_square(x: Fraction) -> bool:
    return x >= 0 and all(math.isqrt(n) ** 2 == n for n in (x.numerator, x.denominator))

def ligozat_check(E: EtaQuotient) -> ModularityReport:
    N = E.level
    total = sum(m for _, m in E.exps)
    product = Fraction(1)
    for d, m in E.exps:
        product *= Fraction(d) ** m
    report = ModularityReport(
        weight=Fraction(total, 2),
        cond_parity=total % 2 == 0,
        cond_24a=sum(d * m for d, m in E.exps) % 24 == 0,
        cond_24b=sum((N // d) * m for d, m in E.exps) % 24 == 0,
        cond_square=_is_rational_square(product))
    logger.debug(f"ligozat_check({E}) at level {N}: passes={report.passes}")
    return report

def gamma0_index(N: int) -> int:
    """[SL2(Z) : Gamma0(N)] = N * prod_{p | N} (1 + 1/p)."""
    validate_positive_int(N, "N")
    index = Fraction(N)
    for p in primefactors(N):
        index *= 1 + Fraction(1, p)
    return int(index)

def cusp_representatives(N: int) -> list:
    """
    One pair (a, c) per cusp a/c of Gamma0(N): c runs over the divisors of N
    and a over the units modulo gcd(c, N/c), lifted so that gcd(a, c) = 1.
    """
    validate_positive_int(N, "N")
    cusps = []
    for c in divisors(N):
        g = math.gcd(c, N // c)
        classes = [0] if g == 1 else [a for a in range(1, g) if math.gcd(a, g) == 1]
        for a in classes:
            lifted = a
            while math.gcd(lifted, c) != 1:
                lifted += g
            cusps.append((lifted, c))
    return cusps

def _order_coefficients(N: int, c: int) -> dict:
    """{delta: weight of m_delta} in the order at a cusp of denominator c."""
    g = math.gcd(c, N // c)
    return {delta: Fraction(N * math.gcd(c, delta) ** 2, 24 * g * c * delta)
            for delta in divisors(N)}

def cusp_orders(E: EtaQuotient) -> dict:
    """Order of E at every cusp of Gamma0(level), in the local parameter."""
    N = E.level
    orders = {}
    for a, c in cusp_representatives(N):
        coeffs = _order_coefficients(N, c)
        orders[(a, c)] = sum((coeffs[d] * m for d, m in E.exps), Fraction(0))
    return orders

def cusp_total_order(E: EtaQuotient) -> Fraction:
    """Sum of the cusp orders; equals weight*index/12 for an eta-quotient."""
    return sum(cusp_orders(E).values(), Fraction(0))

def is_holomorphic(E: EtaQuotient) -> bool:
    return all(v >= 0 for v in cusp_orders(E).values())
#endregion modularity
#-----------------------------------------------------------------------------+
#region enumeration
def _max_linear(coeffs: list, total: int, bound: int):
    """Max of sum(coeffs[i]*x_i) with sum(x_i) = total, |x_i| <= bound;
    None when infeasible."""
    n = len(coeffs)
    if abs(total) > n * bound:
        return None
    budget = total + n * bound
    best = Fraction(0)
    for a in sorted(coeffs, reverse=True):
        give = min(2 * bound, budget)
        best += a * (give - bound)
        budget -= give
    return best

def enumerate_holomorphic(N: int, weight: int, bound: int) -> list:
    """
    Every EtaQuotient of level N and the given weight with |m_d| <= bound that
    passes ligozat_check and has nonnegative order at every cusp, sorted by
    the exponent vector over the divisors of N.
    """
    validate_positive_int(N, "N")
    validate_int(weight, "weight", 0)
    validate_positive_int(bound, "bound")
    ds = list(divisors(N))
    cusps = cusp_representatives(N)
    rows = [_order_coefficients(N, c) for _, c in cusps]
    coeff_rows = [[row[d] for d in ds] for row in rows]
    target = 2 * weight
    found = []

    def dfs(i: int, chosen: list, partial_sum: int, partial_orders: list, s_d: int, s_nd: int):
        rest = len(ds) - i
        remaining = target - partial_sum
        if rest == 1:
            m = remaining
            if abs(m) > bound:
                return
            # Ligozat congruences before any cusp order
            if (s_d + ds[i] * m) % 24 or (s_nd + (N // ds[i]) * m) % 24:
                return
            vector = chosen + [m]
            if any(o + row[i] * m < 0 for o, row in zip(partial_orders, coeff_rows)):
                return
            E = EtaQuotient(N, dict(zip(ds, vector)))
            if ligozat_check(E).passes:
                found.append((tuple(vector), E))
            return
        for m in range(-bound, bound + 1):
            if rest == 2:
                last = remaining - m
                if (s_d + ds[i] * m + ds[i + 1] * last) % 24 or \
                        (s_nd + (N // ds[i]) * m + (N // ds[i + 1]) * last) % 24:
                    continue
            orders = [o + row[i] * m for o, row in zip(partial_orders, coeff_rows)]
            ok = True
            for o, row in zip(orders, coeff_rows):
                best = _max_linear(row[i + 1:], remaining - m, bound)
                if best is None or o + best < 0:
                    ok = False
                    break
            if ok:
                dfs(i + 1, chosen + [m], partial_sum + m, orders,
                    (s_d + ds[i] * m) % 24, (s_nd + (N // ds[i]) * m) % 24)

    dfs(0, [], 0, [Fraction(0)] * len(cusps), 0, 0)
    found.sort(key=lambda t: t[0])
    logger.info(f"enumerate_holomorphic(N={N}, weight={weight}, bound={bound}): " + \
                f"{len(found)} quotients")
    return [E for _, E in found]
#endregion enumeration
#-----------------------------------------------------------------------------+
