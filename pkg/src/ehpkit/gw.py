"""The subring Z_P[<-1>]/(<-1>^2 - 1) of GW(k) (x) Z_P.

Every stable class computed in this package is of the form ``A + B<-1>``.
Whether such a class is invertible depends on the field only through one
bit: whether ``k`` is formally real.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .localization import LocalInt, LocalizationError, PrimeSet, Z, least_odd_prime


@dataclass(frozen=True)
class FieldClass:
    formally_real: bool

    @classmethod
    def parse(cls, text: str) -> "FieldClass":
        text = text.strip().lower()
        if text in ("real", "formally-real", "formally_real"):
            return cls(True)
        if text in ("nonreal", "non-real", "not-real"):
            return cls(False)
        raise ValueError(f"unknown field class {text!r}; use 'real' or 'nonreal'")

    def __str__(self):
        return "real" if self.formally_real else "nonreal"


REAL = FieldClass(True)
NONREAL = FieldClass(False)


@dataclass(frozen=True)
class GWElement:
    """``a + b<-1>`` with coefficients in Z_P."""

    a: LocalInt
    b: LocalInt

    def __post_init__(self):
        if self.a.primes != self.b.primes:
            raise LocalizationError("coefficients live in different rings")

    @classmethod
    def of(cls, a: Union[int, LocalInt] = 0, b: Union[int, LocalInt] = 0, primes: PrimeSet = Z) -> "GWElement":
        return cls(LocalInt.of(a, primes), LocalInt.of(b, primes))

    @property
    def primes(self) -> PrimeSet:
        return self.a.primes

    def _lift(self, other) -> "GWElement":
        if isinstance(other, GWElement):
            if other.primes != self.primes:
                raise LocalizationError(f"prime sets differ: {self.primes} vs {other.primes}")
            return other
        if isinstance(other, (int, LocalInt)):
            return GWElement.of(other, 0, self.primes)
        raise TypeError(f"cannot combine GWElement with {type(other).__name__}")

    def __add__(self, other):
        o = self._lift(other)
        return GWElement(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return GWElement(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return GWElement(self.a * o.a + self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers need gw_inverse")
        out = GWElement.of(1, 0, self.primes)
        for _ in range(k):
            out = out * self
        return out

    def dimension(self) -> LocalInt:
        return self.a + self.b

    def conjugate(self) -> "GWElement":
        """Image under <-1> -> -<-1>."""
        return GWElement(self.a, -self.b)

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def __eq__(self, other):
        if isinstance(other, int):
            return self.a == other and self.b.is_zero()
        if isinstance(other, GWElement):
            return (self.a, self.b) == (other.a, other.b)
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b))

    def __str__(self):
        return f"{self.a} + {self.b}<-1>"

    def __repr__(self):
        return f"GWElement({self}, P={self.primes})"

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b), "primes": self.primes.to_json()}

    @classmethod
    def from_json(cls, data: Union[str, dict]) -> "GWElement":
        if isinstance(data, str):
            data = json.loads(data)
        p = data["primes"]
        primes = PrimeSet.all() if p == "all" else PrimeSet(tuple(p))
        return cls.of(LocalInt.of(Fraction(data["a"]), primes), LocalInt.of(Fraction(data["b"]), primes), primes)


def gw_add(x: GWElement, y: GWElement) -> GWElement:
    return x + y


def gw_mul(x: GWElement, y: GWElement) -> GWElement:
    return x * y


def gw_dimension(x: GWElement) -> LocalInt:
    return x.dimension()


def gw_is_unit(x: GWElement, field: FieldClass) -> bool:
    """Unit test for ``A + B<-1>`` in GW(k) (x) Z_P.

    Formally real fields need both ``A+B`` and ``A-B`` to be units of Z_P;
    otherwise ``1 - <-1>`` is nilpotent and only the rank ``A+B`` matters.
    """
    plus = x.a + x.b
    if field.formally_real:
        return plus.is_unit() and (x.a - x.b).is_unit()
    return plus.is_unit()


def gw_inverse(x: GWElement, field: FieldClass) -> GWElement:
    """Inverse ``conj(x) / (A^2 - B^2)`` inside the modeled subring.

    Over a non-real field some units (``2 - <-1>`` over Z, say) are only
    invertible using the nilpotent part of GW(k), which is not modeled here.
    """
    if not gw_is_unit(x, field):
        raise LocalizationError(f"{x} is not a unit")
    norm = x.a * x.a - x.b * x.b
    if norm.is_unit():
        inv = norm.inverse()
        return GWElement(x.a * inv, -x.b * inv)
    raise LocalizationError(
        f"{x} is a unit of GW(k) (x) Z_P but its inverse needs the nilpotent part of GW(k)"
    )


def twist_class(n: int, q: int, primes: PrimeSet = Z) -> GWElement:
    """``(-1)^(n+q) <-1>^q``, the class of swapping two smash factors of S^(n+q alpha)."""
    if n < 0 or q < 0:
        raise ValueError("n and q must be nonnegative")
    sign = -1 if (n + q) % 2 else 1
    if q % 2:
        return GWElement.of(0, sign, primes)
    return GWElement.of(sign, 0, primes)


def is_twist(e: GWElement) -> bool:
    pairs = {(1, 0), (-1, 0), (0, 1), (0, -1)}
    return (e.a.den, e.b.den) == (1, 1) and (e.a.num, e.b.num) in pairs


@dataclass(frozen=True)
class Holds:
    def __str__(self):
        return "Holds"


@dataclass(frozen=True)
class FailsAt:
    index: int

    def __str__(self):
        return f"FailsAt({self.index})"


def unit_family_element(m: int, e: GWElement) -> GWElement:
    """``(m+1) + m e``."""
    return GWElement.of(m + 1, 0, e.primes) + e * m


def gw_unit_family_holds(e: GWElement, primes: PrimeSet, field: FieldClass):
    """Decide whether ``(m+1) + m e`` is a unit for every positive integer m.

    Closed form by the four possible twist values. Whenever the family can
    fail, the failing factor is ``2m+1``, so the least witness is half the
    least odd prime of P, rounded down.
    """
    if e.primes != primes:
        raise LocalizationError("e must have coefficients in Z_P")
    if not is_twist(e):
        raise ValueError(f"{e} is not a twist class (one of +-1, +-<-1>)")
    a, b = e.a.num, e.b.num
    if (a, b) == (-1, 0):
        return Holds()
    if (a, b) == (0, -1) and not field.formally_real:
        return Holds()
    p = least_odd_prime(primes)
    if p is None:
        return Holds()
    return FailsAt((p - 1) // 2)
