"""Exact integer, rational, and Gaussian (complex) arithmetic.

Rationals are `fractions.Fraction` (always reduced, positive denominator,
zero canonically 0/1).  Gaussian values are immutable pairs over ints or
Fractions; every operation is exact, no floating point anywhere.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction

# Values in this package routinely exceed the default int/str conversion
# cap (second-term numerators reach hundreds of thousands of digits).
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)

BigRational = Fraction

_LOG10_2 = math.log10(2)


@dataclass(frozen=True)
class GaussianInt:
    """Complex number with arbitrary-precision integer parts."""

    re: int
    im: int

    def __add__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "GaussianInt") -> "GaussianInt":
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianInt(a * c - b * d, a * d + b * c)

    def __neg__(self) -> "GaussianInt":
        return GaussianInt(-self.re, -self.im)

    def __pow__(self, n: int) -> "GaussianInt":
        """Square-and-multiply; O(log n) multiplications."""
        if n < 0:
            raise ValueError("negative exponent on a Gaussian integer")
        result = GaussianInt(1, 0)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def conjugate(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im


@dataclass(frozen=True)
class GaussianRational:
    """Complex number with exact rational parts.

    Division multiplies by the conjugate over the norm, so every
    intermediate stays rational; components are reduced by Fraction
    after each operation.
    """

    re: Fraction
    im: Fraction

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational(a * c - b * d, a * d + b * c)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __truediv__(self, other: "GaussianRational") -> "GaussianRational":
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational((a * c + b * d) / n, (b * c - a * d) / n)

    def __pow__(self, n: int) -> "GaussianRational":
        """Square-and-multiply; negative exponents go through the exact
        reciprocal."""
        if n < 0:
            return self.reciprocal() ** (-n)
        result = GR_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def reciprocal(self) -> "GaussianRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("reciprocal of zero Gaussian rational")
        return GaussianRational(self.re / n, -self.im / n)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    @classmethod
    def from_gaussian_int(cls, g: GaussianInt) -> "GaussianRational":
        return cls(Fraction(g.re), Fraction(g.im))


GR_ZERO = GaussianRational(Fraction(0), Fraction(0))
GR_ONE = GaussianRational(Fraction(1), Fraction(0))
GR_I = GaussianRational(Fraction(0), Fraction(1))


def gi_pow(g: GaussianInt, n: int) -> GaussianInt:
    return g ** n


def gr_pow(z: GaussianRational, n: int) -> GaussianRational:
    if n < 0:
        raise ValueError("exponent must be non-negative")
    return z ** n


def gr_norm(z: GaussianRational) -> Fraction:
    return z.norm()


def parse_rational(text: str) -> Fraction:
    """Parse "5", "-239", "24/10", or "2.4" into an exact Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def int_to_text(n: int, hexadecimal: bool = False) -> str:
    """Serialize an integer; hex form carries a 0x marker after the sign."""
    if hexadecimal:
        sign = "-" if n < 0 else ""
        return f"{sign}0x{abs(n):x}"
    return str(n)


def int_from_text(text: str) -> int:
    s = text.strip()
    neg = s.startswith("-")
    body = s[1:] if neg else s
    value = int(body, 16) if body.startswith(("0x", "0X")) else int(body)
    return -value if neg else value


def decimal_digit_count(n: int) -> int:
    """Number of decimal digits of |n| without a full str() conversion.

    bit_length brackets the answer to two candidates; one big-integer
    comparison settles it.
    """
    n = abs(n)
    if n == 0:
        return 1
    e = int(n.bit_length() * _LOG10_2)
    # e <= log10(n) + 1, and 10**e > n happens only when the estimate
    # overshoots by the float slack; correct with exact comparisons.
    while 10 ** e > n:
        e -= 1
    while 10 ** (e + 1) <= n:
        e += 1
    return e + 1


def fraction_to_fixed_text(fr: Fraction, digits: int) -> str:
    """Render fr with `digits` digits after the point, truncated toward zero."""
    if digits < 0:
        raise ValueError("digits must be non-negative")
    sign = "-" if fr < 0 else ""
    scaled = abs(fr.numerator) * 10 ** digits // fr.denominator
    whole, frac = divmod(scaled, 10 ** digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def fraction_to_sci_text(fr: Fraction, digits: int) -> str:
    """Scientific form d.<digits>e<exp>, mantissa truncated toward zero."""
    if fr == 0:
        return f"0.{'0' * digits}e0"
    # Digit-count difference brackets the exponent to within one.
    exp = decimal_digit_count(fr.numerator) - decimal_digit_count(fr.denominator)
    mantissa = abs(fr) / Fraction(10) ** exp
    while mantissa >= 10:
        mantissa /= 10
        exp += 1
    while mantissa < 1:
        mantissa *= 10
        exp -= 1
    sign = "-" if fr < 0 else ""
    return f"{sign}{fraction_to_fixed_text(mantissa, digits)}e{exp}"


def format_decimal_head(fr: Fraction, digits: int = 20) -> str:
    """Leading decimal expansion of a rational: plain fixed-point for
    magnitudes below 10**6, scientific above."""
    if abs(fr) < 10 ** 6:
        return fraction_to_fixed_text(fr, digits)
    return fraction_to_sci_text(fr, digits)
