"""Exact arithmetic in Z_P, the integers with every prime outside P inverted.

``P`` is either every prime (so Z_P = Z) or an explicit finite set of primes.
Values are kept as reduced fractions whose denominators avoid P.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Tuple, Union


class LocalizationError(ValueError):
    """Raised for operations that would silently change the ring."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeSet:
    """Either all primes (``primes is None``) or a sorted tuple of primes."""

    primes: Union[Tuple[int, ...], None] = None

    def __post_init__(self):
        if self.primes is None:
            return
        ps = tuple(self.primes)
        if not ps:
            raise LocalizationError("an explicit prime set must be nonempty")
        if any(not _is_prime(p) for p in ps):
            raise LocalizationError(f"not all entries are prime: {ps}")
        if any(a >= b for a, b in zip(ps, ps[1:])):
            raise LocalizationError(f"primes must be strictly increasing: {ps}")
        object.__setattr__(self, "primes", ps)

    @classmethod
    def all(cls) -> "PrimeSet":
        return cls(None)

    @classmethod
    def of(cls, *primes: int) -> "PrimeSet":
        return cls(tuple(sorted(set(primes))))

    @classmethod
    def parse(cls, text: str) -> "PrimeSet":
        """Parse ``all`` or a comma separated ascending list such as ``2,3,5``."""
        text = text.strip()
        if text.lower() == "all":
            return cls.all()
        try:
            ps = tuple(int(t) for t in text.split(","))
        except ValueError as exc:
            raise LocalizationError(f"bad prime list {text!r}") from exc
        return cls(ps)

    @property
    def is_all(self) -> bool:
        return self.primes is None

    def divides(self, n: int) -> bool:
        """True if some prime of P divides ``n`` (n != 0)."""
        n = abs(n)
        if self.is_all:
            return n != 1
        return any(n % p == 0 for p in self.primes)

    def odd_primes(self) -> Tuple[int, ...]:
        if self.is_all:
            raise LocalizationError("the set of all primes is infinite")
        return tuple(p for p in self.primes if p != 2)

    def to_json(self):
        return "all" if self.is_all else list(self.primes)

    def __str__(self):
        return "all" if self.is_all else ",".join(map(str, self.primes))


Z = PrimeSet.all()
Z2 = PrimeSet.of(2)


@dataclass(frozen=True)
class LocalInt:
    """An element num/den of Z_P in lowest terms."""

    num: int
    den: int = 1
    primes: PrimeSet = Z

    def __post_init__(self):
        if self.den == 0:
            raise ZeroDivisionError("zero denominator")
        num, den = self.num, self.den
        if den < 0:
            num, den = -num, -den
        g = gcd(num, den)
        num, den = num // g, den // g
        if den != 1 and self.primes.divides(den):
            raise LocalizationError(f"{num}/{den} is not in Z_P for P={self.primes}")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def of(cls, value: Union[int, Fraction, "LocalInt"], primes: PrimeSet = Z) -> "LocalInt":
        if isinstance(value, LocalInt):
            if value.primes != primes:
                raise LocalizationError("prime sets differ")
            return value
        f = Fraction(value)
        return cls(f.numerator, f.denominator, primes)

    def _check(self, other: "LocalInt"):
        if not isinstance(other, LocalInt):
            raise TypeError(f"expected LocalInt, got {type(other).__name__}")
        if other.primes != self.primes:
            raise LocalizationError(f"prime sets differ: {self.primes} vs {other.primes}")

    def _lift(self, other) -> "LocalInt":
        if isinstance(other, (int, Fraction)):
            return LocalInt.of(other, self.primes)
        self._check(other)
        return other

    def __add__(self, other):
        other = self._lift(other)
        return LocalInt(self.num * other.den + other.num * self.den, self.den * other.den, self.primes)

    __radd__ = __add__

    def __neg__(self):
        return LocalInt(-self.num, self.den, self.primes)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        return LocalInt(self.num * other.num, self.den * other.den, self.primes)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return LocalInt(self.num ** k, self.den ** k, self.primes)

    def is_unit(self) -> bool:
        return self.num != 0 and not self.primes.divides(self.num)

    def inverse(self) -> "LocalInt":
        if not self.is_unit():
            raise LocalizationError(f"{self} is not a unit of Z_P for P={self.primes}")
        return LocalInt(self.den, self.num, self.primes)

    def is_zero(self) -> bool:
        return self.num == 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return Fraction(self.num, self.den) == other
        if isinstance(other, LocalInt):
            return (self.num, self.den, self.primes) == (other.num, other.den, other.primes)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den, self.primes))

    def __str__(self):
        return str(self.num) if self.den == 1 else f"{self.num}/{self.den}"

    def __repr__(self):
        return f"LocalInt({self}, P={self.primes})"


def zp_add(x: LocalInt, y: LocalInt) -> LocalInt:
    x._check(y)
    return x + y


def zp_mul(x: LocalInt, y: LocalInt) -> LocalInt:
    x._check(y)
    return x * y


def zp_is_unit(x: LocalInt) -> bool:
    return x.is_unit()


def least_odd_prime(primes: PrimeSet) -> Union[int, None]:
    """Smallest odd prime in P (3 when P is every prime), or None."""
    if primes.is_all:
        return 3
    odd = primes.odd_primes()
    return odd[0] if odd else None
