#-----------------------------------------------------------------------------+
# mat2.py - 2x2 integer matrices over Z and over Z/NZ
#-----------------------------------------------------------------------------+
import math
from dataclasses import dataclass

from efconstants import *
from ef_logging.ef_logging import ef_logging_setup
from ef_utilities.ef_utils import validate_int
from model.base_efmodel.efmodel import EFModel
#-----------------------------------------------------------------------------+
#region ef_logging_setup()
logger = ef_logging_setup(EF_APP_NAME)
logger.debug(f"Imported module: {__name__}")
#endregion ef_logging_setup()
#-----------------------------------------------------------------------------+
#region Mat2 Class
@dataclass(frozen=True)
class Mat2(EFModel):
    """
    The matrix [[a, b], [c, d]].

    modulus 0 means an integer matrix; modulus N > 0 means a matrix over
    Z/NZ with entries kept reduced into [0, N).
    """
    a: int
    b: int
    c: int
    d: int
    modulus: int = 0

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            validate_int(getattr(self, name), name)
        validate_int(self.modulus, "modulus", 0)
        if self.modulus:
            for name in ("a", "b", "c", "d"):
                object.__setattr__(self, name, getattr(self, name) % self.modulus)

    @classmethod
    def identity(cls, modulus: int = 0) -> "Mat2":
        return cls(1, 0, 0, 1, modulus)

    @classmethod
    def from_rows(cls, rows, modulus: int = 0) -> "Mat2":
        (a, b), (c, d) = rows
        return cls(a, b, c, d, modulus)

    @property
    def rows(self) -> list:
        return [[self.a, self.b], [self.c, self.d]]

    def det(self) -> int:
        value = self.a * self.d - self.b * self.c
        return value % self.modulus if self.modulus else value

    def reduce(self, N: int) -> "Mat2":
        """Image in M2(Z/NZ); the current modulus must be 0 or a multiple of N."""
        if self.modulus and self.modulus % N:
            raise ValueError(f"cannot reduce a matrix mod {self.modulus} to mod {N}")
        return Mat2(self.a, self.b, self.c, self.d, N)

    def is_unit(self) -> bool:
        if self.modulus:
            return math.gcd(self.det(), self.modulus) == 1
        return self.det() in (1, -1)

    def inverse(self) -> "Mat2":
        det = self.det()
        if self.modulus:
            inv = pow(det, -1, self.modulus)
        elif det in (1, -1):
            inv = det
        else:
            raise ValueError(f"{self.rows} is not invertible over Z")
        return Mat2(self.d * inv, -self.b * inv, -self.c * inv, self.a * inv, self.modulus)

    def transpose(self) -> "Mat2":
        return Mat2(self.a, self.c, self.b, self.d, self.modulus)

    def __mul__(self, other: "Mat2") -> "Mat2":
        if not isinstance(other, Mat2):
            return NotImplemented
        if self.modulus != other.modulus:
            raise ValueError(f"moduli differ: {self.modulus} and {other.modulus}")
        return Mat2(self.a * other.a + self.b * other.c, self.a * other.b + self.b * other.d,
                    self.c * other.a + self.d * other.c, self.c * other.b + self.d * other.d,
                    self.modulus)

    def scalar(self, t: int) -> "Mat2":
        return Mat2(self.a * t, self.b * t, self.c * t, self.d * t, self.modulus)

    def in_gamma0(self, N: int) -> bool:
        """Integer matrix of determinant 1 with c divisible by N."""
        return self.modulus == 0 and self.det() == 1 and self.c % N == 0

    def act(self, tau):
        """Moebius action (a tau + b)/(c tau + d) on an mpmath number."""
        return (self.a * tau + self.b) / (self.c * tau + self.d)

    def automorphy(self, tau):
        """c tau + d."""
        return self.c * tau + self.d

    #region serialization
    def to_dict(self) -> dict:
        data = {"rows": self.rows}
        if self.modulus:
            data["modulus"] = self.modulus
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "Mat2":
        return cls.from_rows(data["rows"], int(data.get("modulus", 0)))

    def __str__(self) -> str:
        suffix = f" mod {self.modulus}" if self.modulus else ""
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]{suffix}"
    #endregion serialization
#endregion Mat2 Class
#-----------------------------------------------------------------------------+
