#-----------------------------------------------------------------------------+
# series_core.py - exact cyclotomic numbers and truncated Puiseux q-series
#-----------------------------------------------------------------------------+
'''
Exact arithmetic foundation of EtaForge.

CyclotomicNumber holds sum(a_i * zeta_f**i) in the power basis of Q(zeta_f),
reduced modulo the f-th cyclotomic polynomial. Values of different conductor
are embedded into the lcm of the conductors before any arithmetic.

QSeries holds a sparse truncated expansion sum(c_e * q**e) where every
exponent e is a multiple of 1/denom and every stored e is below trunc.
Coefficients at or beyond trunc are unknown. Binary operations propagate the
tightest truncation their operands justify. Values are immutable.
'''
#-----------------------------------------------------------------------------+
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

import mpmath
from sympy import Poly, QQ, Symbol, cyclotomic_poly, totient
from sympy import Rational as SympyRational

from efconstants import *
from ef_logging.ef_logging import ef_logging_setup
from ef_utilities.ef_utils import fraction_str, to_fraction
from model.base_efmodel.efmodel import EFModel
from model.efmodelerrors import (ConductorMismatch, TruncationError,
                                 ZeroLeadingCoefficient)
#-----------------------------------------------------------------------------+
#region ef_logging_setup()
logger = ef_logging_setup(EF_APP_NAME)
logger.debug(f"Imported module: {__name__}")
#endregion ef_logging_setup()
#-----------------------------------------------------------------------------+
_X = Symbol("x")
Rational = Union[int, Fraction]

#region cyclotomic reduction tables
@lru_cache(maxsize=None)
def cyclotomic_degree(f: int) -> int:
    """phi(f), the dimension of Q(zeta_f)."""
    return int(totient(f))

@lru_cache(maxsize=None)
def _reduction_table(f: int) -> tuple:
    """Row k holds the power-basis coordinates of zeta_f**k, 0 <= k < f."""
    phi = cyclotomic_degree(f)
    # monic: x^phi + c[phi-1] x^(phi-1) + ... + c[0]
    lower = [int(c) for c in reversed(Poly(cyclotomic_poly(f, _X), _X).all_coeffs())][:phi]
    rows = []
    vec = [0] * phi
    vec[0] = 1
    for _ in range(f):
        rows.append(tuple(vec))
        top = vec[-1]
        vec = [0] + vec[:-1]
        if top:
            vec = [v - top * c for v, c in zip(vec, lower)]
    return tuple(rows)

@lru_cache(maxsize=None)
def _reduction_items(f: int) -> tuple:
    """Sparse form of _reduction_table: row k as ((index, coeff), ...)."""
    return tuple(tuple((i, c) for i, c in enumerate(row) if c)
                 for row in _reduction_table(f))
#endregion cyclotomic reduction tables
#-----------------------------------------------------------------------------+
#region CyclotomicNumber Class
class CyclotomicNumber(EFModel):
    """
    An exact element of the cyclotomic field Q(zeta_f).

    Attributes
    ----------
    conductor : int
        f, the order of the root of unity zeta_f = exp(2 pi i / f).
    coeffs : dict[int, Fraction]
        Power-basis coordinates, keys in range(phi(f)); zero is {}.
        Values with only the key 0 are rational and stored with conductor 1.
    """
    __slots__ = ("conductor", "_c")

    def __init__(self, conductor: int = 1, coeffs: Mapping[int, Rational] = None):
        if isinstance(conductor, bool) or not isinstance(conductor, int) or conductor < 1:
            raise ValueError(f"conductor must be a positive int, not {conductor!r}")
        raw: dict[int, Fraction] = {}
        for i, a in (coeffs or {}).items():
            a = to_fraction(a)
            if a:
                k = int(i) % conductor
                raw[k] = raw.get(k, Fraction(0)) + a
        c = _reduce(conductor, raw)
        if set(c) <= {0}:
            conductor = 1
        self.conductor = conductor
        self._c = c

    @classmethod
    def _raw(cls, conductor: int, c: dict) -> "CyclotomicNumber":
        # c must already be reduced with zero entries dropped
        obj = object.__new__(cls)
        if set(c) <= {0}:
            conductor = 1
        obj.conductor = conductor
        obj._c = c
        return obj

    @classmethod
    def rational(cls, value: Rational) -> "CyclotomicNumber":
        value = to_fraction(value)
        return cls._raw(1, {0: value} if value else {})

    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    #region predicates and conversions
    def is_zero(self) -> bool:
        return not self._c

    def is_rational(self) -> bool:
        return set(self._c) <= {0}

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self._c.get(0, Fraction(0))

    def to_complex(self, digits: int = 30) -> mpmath.mpc:
        """Numeric value at zeta_f = exp(2 pi i/f), computed at digits."""
        with mpmath.workdps(digits):
            total = mpmath.mpc(0)
            for i, a in self._c.items():
                total += mpmath.mpf(a.numerator) / a.denominator * \
                    mpmath.expjpi(mpmath.mpf(2 * i) / self.conductor)
            return total
    #endregion predicates and conversions

    #region field operations
    def embed(self, conductor: int) -> "CyclotomicNumber":
        """Same complex value expressed in Q(zeta_conductor)."""
        if conductor % self.conductor:
            raise ConductorMismatch(
                f"conductor {self.conductor} does not divide {conductor}")
        return CyclotomicNumber._raw(conductor, self._embedded(conductor))

    def _embedded(self, f: int) -> dict:
        if f == self.conductor or self.is_rational():
            return self._c
        step = f // self.conductor
        return _reduce(f, {i * step: a for i, a in self._c.items()})

    def galois(self, d: int) -> "CyclotomicNumber":
        """Image under sigma_d: zeta_f -> zeta_f**d, gcd(d, f) = 1."""
        if math.gcd(d, self.conductor) != 1:
            raise ValueError(f"d={d} is not a unit modulo {self.conductor}")
        f = self.conductor
        return CyclotomicNumber._raw(f, _reduce(f, {(i * d) % f: a for i, a in self._c.items()}))

    def inverse(self) -> "CyclotomicNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero cyclotomic number")
        if self.is_rational():
            return CyclotomicNumber.rational(1 / self._c[0])
        f = self.conductor
        num = Poly([SympyRational(a.numerator, a.denominator) for a in
                    (self._c.get(i, Fraction(0)) for i in reversed(range(cyclotomic_degree(f))))],
                   _X, domain=QQ)
        inv = num.invert(Poly(cyclotomic_poly(f, _X), _X, domain=QQ))
        coeffs = {i: Fraction(int(c.p), int(c.q))
                  for i, c in enumerate(reversed(inv.all_coeffs())) if c}
        return CyclotomicNumber._raw(f, coeffs)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        f = math.lcm(self.conductor, other.conductor)
        out = dict(self._embedded(f))
        for i, a in other._embedded(f).items():
            s = out.get(i, Fraction(0)) + a
            if s:
                out[i] = s
            else:
                out.pop(i, None)
        return CyclotomicNumber._raw(f, out)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber._raw(self.conductor, {i: -a for i, a in self._c.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self._c or not other._c:
            return ZERO
        if other.is_rational():
            s = other._c[0]
            return CyclotomicNumber._raw(self.conductor, {i: a * s for i, a in self._c.items()})
        if self.is_rational():
            s = self._c[0]
            return CyclotomicNumber._raw(other.conductor, {i: a * s for i, a in other._c.items()})
        f = math.lcm(self.conductor, other.conductor)
        a_c, b_c = self._embedded(f), other._embedded(f)
        raw: dict[int, Fraction] = {}
        for i, a in a_c.items():
            for j, b in b_c.items():
                k = i + j
                raw[k] = raw.get(k, Fraction(0)) + a * b
        return CyclotomicNumber._raw(f, _reduce(f, raw))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        f = math.lcm(self.conductor, other.conductor)
        return self._embedded(f) == other._embedded(f)

    __hash__ = None
    #endregion field operations

    #region serialization
    def to_dict(self) -> dict:
        return {"conductor": self.conductor,
                "coeffs": {str(i): fraction_str(a) for i, a in sorted(self._c.items())}}

    @classmethod
    def from_dict(cls, data: dict) -> "CyclotomicNumber":
        return cls(int(data["conductor"]),
                   {int(i): to_fraction(a) for i, a in data.get("coeffs", {}).items()})

    def __repr__(self) -> str:
        if self.is_rational():
            return f"CyclotomicNumber({fraction_str(self.to_fraction())})"
        terms = " + ".join(f"({fraction_str(a)})*z{self.conductor}^{i}"
                           for i, a in sorted(self._c.items()))
        return f"CyclotomicNumber({terms})"

    def __str__(self) -> str:
        return repr(self)[len("CyclotomicNumber("):-1]
    #endregion serialization
#endregion CyclotomicNumber Class
#-----------------------------------------------------------------------------+
#region CyclotomicNumber helpers
def _reduce(f: int, raw: Mapping[int, Fraction]) -> dict:
    """Reduce {power: coeff} (any nonnegative powers) to power-basis coordinates."""
    phi = cyclotomic_degree(f)
    if all(0 <= k < phi for k in raw):
        return {k: a for k, a in raw.items() if a}
    items = _reduction_items(f)
    out: dict[int, Fraction] = {}
    for k, a in raw.items():
        if not a:
            continue
        for i, c in items[k % f]:
            out[i] = out.get(i, Fraction(0)) + a * c
    return {i: a for i, a in out.items() if a}

def _coerce(value):
    if isinstance(value, CyclotomicNumber):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return CyclotomicNumber.rational(value)
    return NotImplemented

ZERO = CyclotomicNumber._raw(1, {})
ONE = CyclotomicNumber._raw(1, {0: Fraction(1)})

def root_of_unity(r: Rational) -> CyclotomicNumber:
    """exp(2 pi i r) exactly, with conductor the denominator of r."""
    r = to_fraction(r)
    f = r.denominator
    return CyclotomicNumber._raw(f, _reduce(f, {r.numerator % f: Fraction(1)}))

def cyclo_embed(x: CyclotomicNumber, conductor: int) -> CyclotomicNumber:
    """Embed x into Q(zeta_conductor); ConductorMismatch unless f | conductor."""
    return x.embed(conductor)
#endregion CyclotomicNumber helpers
#-----------------------------------------------------------------------------+
#region QSeries Class
class QSeries(EFModel):
    """
    A sparse truncated Puiseux series in q with exact cyclotomic coefficients.

    Attributes
    ----------
    denom : int
        M, every stored exponent is a multiple of 1/M (kept minimal).
    trunc : Fraction
        Coefficients at exponents >= trunc are unknown.
    coeffs : dict[Fraction, CyclotomicNumber]
        Nonzero coefficients keyed by exponent, all below trunc.
    """
    __slots__ = ("denom", "trunc", "_t")

    def __init__(self, coeffs: Mapping = None, trunc: Rational = 0):
        trunc = to_fraction(trunc)
        terms = {to_fraction(e): _coerce(c) for e, c in (coeffs or {}).items()}
        for e, c in terms.items():
            if c is NotImplemented:
                t = type((coeffs or {})[e]).__name__
                raise TypeError(f"coefficient at {e} has unsupported type: {t}")
        M = math.lcm(1, *(e.denominator for e in terms))
        keyed = {int(e * M): c for e, c in terms.items() if e < trunc and not c.is_zero()}
        obj = QSeries._from_terms(M, keyed, trunc)
        self.denom, self.trunc, self._t = obj.denom, obj.trunc, obj._t

    @classmethod
    def _from_terms(cls, M: int, terms: dict, trunc: Fraction) -> "QSeries":
        # terms: {k: CyclotomicNumber} meaning exponent k/M; filters and normalizes
        K = math.ceil(trunc * M)
        terms = {k: c for k, c in terms.items() if k < K and not c.is_zero()}
        g = math.gcd(M, *terms) if terms else M
        if g > 1:
            M //= g
            terms = {k // g: c for k, c in terms.items()}
        obj = object.__new__(cls)
        obj.denom = M
        obj.trunc = trunc
        obj._t = terms
        return obj

    #region constructors
    @classmethod
    def zero(cls, trunc: Rational) -> "QSeries":
        return cls._from_terms(1, {}, to_fraction(trunc))

    @classmethod
    def constant(cls, c, trunc: Rational) -> "QSeries":
        return cls._from_terms(1, {0: _coerce(c)}, to_fraction(trunc))

    @classmethod
    def one(cls, trunc: Rational) -> "QSeries":
        return cls.constant(1, trunc)

    @classmethod
    def monomial(cls, exponent: Rational, c=1, trunc: Rational = None) -> "QSeries":
        e = to_fraction(exponent)
        trunc = e + 1 if trunc is None else to_fraction(trunc)
        return cls._from_terms(e.denominator, {e.numerator: _coerce(c)}, trunc)

    @classmethod
    def from_int_list(cls, values: Iterable[int], start: Rational, step: Rational,
                      trunc: Rational) -> "QSeries":
        """Dense integer coefficients at exponents start + i*step."""
        start, step = to_fraction(start), to_fraction(step)
        M = math.lcm(start.denominator, step.denominator)
        s0, st = int(start * M), int(step * M)
        terms = {s0 + i * st: CyclotomicNumber._raw(1, {0: Fraction(v)})
                 for i, v in enumerate(values) if v}
        return cls._from_terms(M, terms, to_fraction(trunc))
    #endregion constructors

    #region accessors
    @property
    def coeffs(self) -> dict:
        return {Fraction(k, self.denom): c for k, c in sorted(self._t.items())}

    def items(self) -> list:
        """(exponent, coefficient) pairs in increasing exponent order."""
        return [(Fraction(k, self.denom), c) for k, c in sorted(self._t.items())]

    def exponents(self) -> list:
        return [Fraction(k, self.denom) for k in sorted(self._t)]

    def coefficient(self, exponent: Rational) -> CyclotomicNumber:
        e = to_fraction(exponent)
        if __debug__ and e >= self.trunc:
            raise TruncationError(
                f"coefficient at q^{fraction_str(e)} requested, series known below " + \
                f"q^{fraction_str(self.trunc)}")
        k = e * self.denom
        if k.denominator != 1:
            return ZERO
        return self._t.get(int(k), ZERO)

    def valuation(self) -> Fraction:
        """Smallest stored exponent, trunc for the zero series."""
        return Fraction(min(self._t), self.denom) if self._t else self.trunc

    def leading(self) -> tuple:
        if not self._t:
            raise ZeroLeadingCoefficient(
                f"series is zero below q^{fraction_str(self.trunc)}")
        k = min(self._t)
        return Fraction(k, self.denom), self._t[k]

    def is_zero(self) -> bool:
        return not self._t

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self._t.values())

    def has_integer_coefficients(self) -> bool:
        return all(c.is_rational() and c.to_fraction().denominator == 1
                   for c in self._t.values())

    def conductor(self) -> int:
        return math.lcm(1, *(c.conductor for c in self._t.values()))

    def __len__(self) -> int:
        return len(self._t)
    #endregion accessors

    #region ring operations
    def _aligned(self, other: "QSeries") -> tuple:
        M = math.lcm(self.denom, other.denom)
        sa, sb = M // self.denom, M // other.denom
        a = self._t if sa == 1 else {k * sa: c for k, c in self._t.items()}
        b = other._t if sb == 1 else {k * sb: c for k, c in other._t.items()}
        return M, a, b

    def __add__(self, other):
        other = _coerce_series(other, self)
        if other is NotImplemented:
            return other
        M, a, b = self._aligned(other)
        out = dict(a)
        for k, c in b.items():
            out[k] = out[k] + c if k in out else c
        return QSeries._from_terms(M, out, min(self.trunc, other.trunc))

    __radd__ = __add__

    def __neg__(self):
        return QSeries._from_terms(self.denom, {k: -c for k, c in self._t.items()}, self.trunc)

    def __sub__(self, other):
        other = _coerce_series(other, self)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CyclotomicNumber)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        trunc = min(self.trunc + other.valuation(), other.trunc + self.valuation())
        M, a, b = self._aligned(other)
        K = math.ceil(trunc * M)
        b_items = sorted(b.items())
        out: dict[int, CyclotomicNumber] = {}
        for ka, ca in a.items():
            limit = K - ka
            for kb, cb in b_items:
                if kb >= limit:
                    break
                k = ka + kb
                p = ca * cb
                out[k] = out[k] + p if k in out else p
        return QSeries._from_terms(M, out, trunc)

    def __rmul__(self, other):
        return self.__mul__(other)

    def scale(self, c) -> "QSeries":
        """Multiply every coefficient by the constant c."""
        c = _coerce(c)
        return QSeries._from_terms(self.denom, {k: v * c for k, v in self._t.items()}, self.trunc)

    def shift(self, exponent: Rational) -> "QSeries":
        """Multiply by the exact monomial q**exponent."""
        e = to_fraction(exponent)
        M = math.lcm(self.denom, e.denominator)
        s = M // self.denom
        off = int(e * M)
        return QSeries._from_terms(M, {k * s + off: c for k, c in self._t.items()},
                                   self.trunc + e)

    def truncate(self, trunc: Rational) -> "QSeries":
        t = to_fraction(trunc)
        return QSeries._from_terms(self.denom, self._t, min(t, self.trunc))

    def inverse(self) -> "QSeries":
        """Multiplicative inverse; trunc becomes trunc - 2*valuation."""
        v, c = self.leading()
        c_inv = c.inverse()
        v_key = int(v * self.denom)
        unit = {k - v_key: x * c_inv for k, x in self._t.items() if k != v_key}
        rel_trunc = self.trunc - v
        K = math.ceil(rel_trunc * self.denom)
        unit_items = sorted(unit.items())
        r: dict[int, CyclotomicNumber] = {0: ONE}
        for k in range(1, K):
            acc = None
            for j, b in unit_items:
                if j > k:
                    break
                prev = r.get(k - j)
                if prev is not None:
                    p = b * prev
                    acc = p if acc is None else acc + p
            if acc is not None and not acc.is_zero():
                r[k] = -acc
        out = {k - v_key: x * c_inv for k, x in r.items()}
        return QSeries._from_terms(self.denom, out, rel_trunc - v)

    def __pow__(self, k: int) -> "QSeries":
        if isinstance(k, bool) or not isinstance(k, int):
            t = type(k).__name__
            raise TypeError(f"series power requires type:int, not type: {t}")
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return QSeries.one(self.trunc - self.valuation())
        result, base = None, self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def rescale(self, r: Rational) -> "QSeries":
        """Substitute q -> q**r (r > 0): exponent e moves to r*e."""
        r = to_fraction(r)
        if r <= 0:
            raise ValueError(f"rescale factor must be positive, not {fraction_str(r)}")
        return QSeries._from_terms(self.denom * r.denominator,
                                   {k * r.numerator: c for k, c in self._t.items()},
                                   self.trunc * r)

    def map_coefficients(self, fn) -> "QSeries":
        return QSeries._from_terms(self.denom, {k: fn(c) for k, c in self._t.items()}, self.trunc)
    #endregion ring operations

    #region comparison
    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.trunc == other.trunc and self.items() == other.items()

    __hash__ = None

    def first_difference(self, other: "QSeries") -> Fraction:
        """Smallest exponent where the two series differ below their shared
        truncation, or None when they agree there."""
        diff = self - other
        return None if diff.is_zero() else diff.valuation()

    def agrees_with(self, other: "QSeries") -> bool:
        return self.first_difference(other) is None
    #endregion comparison

    #region serialization
    def to_dict(self) -> dict:
        return {"denom": self.denom,
                "trunc": fraction_str(self.trunc),
                "coeffs": [{"exp": fraction_str(e), "val": c.to_dict()} for e, c in self.items()]}

    @classmethod
    def from_dict(cls, data: dict) -> "QSeries":
        coeffs = {to_fraction(t["exp"]): CyclotomicNumber.from_dict(t["val"])
                  for t in data.get("coeffs", [])}
        return cls(coeffs, to_fraction(data["trunc"]))

    def __repr__(self) -> str:
        shown = " + ".join(f"({c})q^{fraction_str(e)}" for e, c in self.items()[:8])
        more = " + ..." if len(self._t) > 8 else ""
        return f"QSeries({shown or '0'}{more} + O(q^{fraction_str(self.trunc)}))"
    #endregion serialization
#endregion QSeries Class
#-----------------------------------------------------------------------------+
#region QSeries helpers and operations
def _coerce_series(value, like: QSeries):
    if isinstance(value, QSeries):
        return value
    c = _coerce(value)
    if c is NotImplemented:
        return c
    return QSeries._from_terms(1, {0: c}, like.trunc)

def series_arith(op: str, a: QSeries, b: QSeries = None) -> QSeries:
    """Apply op in {add, sub, mul, neg}; b is ignored for neg."""
    if op == "neg":
        return -a
    if b is None:
        raise ValueError(f"series_arith('{op}') requires two operands")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"Unknown series operation '{op}'")

def series_inv(a: QSeries) -> QSeries:
    return a.inverse()

def series_pow(a: QSeries, k: int) -> QSeries:
    return a ** k

def rescale(a: QSeries, r: Rational) -> QSeries:
    return a.rescale(r)

def series_shift(a: QSeries, e: Rational) -> QSeries:
    return a.shift(e)

def series_coefficient(a: QSeries, e: Rational) -> CyclotomicNumber:
    return a.coefficient(e)

def series_valuation(a: QSeries) -> Fraction:
    return a.valuation()

def cyclo_inverse(x: CyclotomicNumber) -> CyclotomicNumber:
    return x.inverse()

def cyclo_to_complex(x: CyclotomicNumber, digits: int = 30) -> mpmath.mpc:
    return x.to_complex(digits)

def series_product(factors: Iterable[QSeries], trunc: Rational) -> QSeries:
    """Product of series of the form 1 + O(q^{>0}) truncated at trunc."""
    result = QSeries.one(trunc)
    for f in factors:
        result = result * f
    return result.truncate(trunc)
#endregion QSeries helpers and operations
#-----------------------------------------------------------------------------+
