"""Arbitrary-precision fixed-point reals with tracked absolute error.

A FixedReal holds an integer mantissa m at a binary scale s together with
an integer error counter e; the true real value is guaranteed to lie in

    [(m - e) * 2**-s, (m + e) * 2**-s].

All arithmetic is integer-only (binary fixed point internally, decimal
only at the I/O boundary) and every operation widens e conservatively,
so containment of the true value is an invariant, not a heuristic.

Per-operation error growth, in output ulps:

* add/sub: exact after aligning scales; e_out = e_x + e_y (aligned).
* mul:     e_out <= ceil((|m_x| e_y + |m_y| e_x + e_x e_y) / 2**min(s_x, s_y)) + 1,
           the +1 covering mantissa rounding.
* div:     e_out <= ceil((e_x |m_y| + |m_x| e_y) * 2**(s - s_x + s_y)
                          / (|m_y| (|m_y| - e_y))) + 1, requiring the
           divisor interval to exclude zero.
* sqrt:    endpoint-based: floor/ceil integer square roots of the interval
           endpoints bracket the result exactly.
* rational conversion and rational scaling: nearest rounding, at most 1 ulp.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import DivisorStraddlesZero, NegativeOperand


def _div_nearest(a: int, b: int) -> int:
    """Round a/b to the nearest integer, ties away from zero; b > 0."""
    if a >= 0:
        return (2 * a + b) // (2 * b)
    return -((-2 * a + b) // (2 * b))


def _ceil_div(a: int, b: int) -> int:
    """Ceiling of a/b for b > 0."""
    return -((-a) // b)


def _shift_floor(n: int, bits: int) -> int:
    return n >> bits if bits >= 0 else n << -bits


def _shift_ceil(n: int, bits: int) -> int:
    if bits <= 0:
        return n << -bits
    return -((-n) >> bits)


@dataclass(frozen=True)
class FixedReal:
    """Immutable fixed-point real: value = mantissa * 2**-scale, with the
    true quantity within err_ulp output ulps of it."""

    mantissa: int
    scale: int
    err_ulp: int = 0

    def __post_init__(self) -> None:
        if self.scale < 0:
            raise ValueError("scale must be non-negative")
        if self.err_ulp < 0:
            raise ValueError("err_ulp must be non-negative")

    # -- construction -------------------------------------------------

    @classmethod
    def from_int(cls, n: int, scale: int) -> "FixedReal":
        return cls(n << scale, scale, 0)

    @classmethod
    def from_fraction(cls, fr: Fraction, scale: int) -> "FixedReal":
        num, den = fr.numerator, fr.denominator
        scaled = num << scale
        m = _div_nearest(scaled, den)
        return cls(m, scale, 0 if m * den == scaled else 1)

    @classmethod
    def zero(cls, scale: int) -> "FixedReal":
        return cls(0, scale, 0)

    # -- exact views ---------------------------------------------------

    @property
    def value(self) -> Fraction:
        return Fraction(self.mantissa, 1 << self.scale)

    @property
    def err(self) -> Fraction:
        return Fraction(self.err_ulp, 1 << self.scale)

    @property
    def lower(self) -> Fraction:
        return Fraction(self.mantissa - self.err_ulp, 1 << self.scale)

    @property
    def upper(self) -> Fraction:
        return Fraction(self.mantissa + self.err_ulp, 1 << self.scale)

    def is_exact(self) -> bool:
        return self.err_ulp == 0

    def contains(self, fr: Fraction) -> bool:
        return self.lower <= fr <= self.upper

    # -- arithmetic ----------------------------------------------------

    def __neg__(self) -> "FixedReal":
        return FixedReal(-self.mantissa, self.scale, self.err_ulp)

    def __abs__(self) -> "FixedReal":
        # | |x| - |m| | <= |x - m|, so the error bound carries over.
        return FixedReal(abs(self.mantissa), self.scale, self.err_ulp)

    def __add__(self, other: "FixedReal") -> "FixedReal":
        s = max(self.scale, other.scale)
        dx, dy = s - self.scale, s - other.scale
        return FixedReal(
            (self.mantissa << dx) + (other.mantissa << dy),
            s,
            (self.err_ulp << dx) + (other.err_ulp << dy),
        )

    def __sub__(self, other: "FixedReal") -> "FixedReal":
        return self + (-other)

    def __mul__(self, other: "FixedReal") -> "FixedReal":
        s = max(self.scale, other.scale)
        t = min(self.scale, other.scale)
        m = _div_nearest(self.mantissa * other.mantissa, 1 << t)
        raw = (
            abs(self.mantissa) * other.err_ulp
            + abs(other.mantissa) * self.err_ulp
            + self.err_ulp * other.err_ulp
        )
        return FixedReal(m, s, _ceil_div(raw, 1 << t) + 1)

    def __truediv__(self, other: "FixedReal") -> "FixedReal":
        my, ey = other.mantissa, other.err_ulp
        if abs(my) <= ey:
            raise DivisorStraddlesZero(
                "divisor interval contains zero; raise the working scale"
            )
        s = max(self.scale, other.scale)
        num = self.mantissa << (s + other.scale - self.scale)
        m = _div_nearest(num if my > 0 else -num, abs(my))
        raw = (self.err_ulp * abs(my) + abs(self.mantissa) * ey) << (
            s - self.scale + other.scale
        )
        e = _ceil_div(raw, abs(my) * (abs(my) - ey)) + 1
        return FixedReal(m, s, e)

    def sqrt(self, target_scale: int | None = None) -> "FixedReal":
        """Square root at target_scale (default: input scale).

        The input interval must reach non-negative values; a strictly
        negative interval means upstream cancellation destroyed the value.
        The part of the interval below zero, if any, is clamped away,
        which is sound whenever the true quantity is non-negative (the
        caller's contract for taking a square root).
        """
        ts = self.scale if target_scale is None else target_scale
        if ts <= 0:
            raise ValueError("target scale must be positive")
        lo = self.mantissa - self.err_ulp
        hi = self.mantissa + self.err_ulp
        if hi < 0:
            raise NegativeOperand(
                "square root of an entirely negative interval"
            )
        lo = max(lo, 0)
        shift = 2 * ts - self.scale
        r_lo = isqrt(_shift_floor(lo, -shift))
        hi_s = _shift_ceil(hi, -shift)
        r_hi = isqrt(hi_s)
        if r_hi * r_hi < hi_s:
            r_hi += 1
        m = (r_lo + r_hi) // 2
        return FixedReal(m, ts, r_hi - m)

    def mul_fraction(self, fr: Fraction) -> "FixedReal":
        """Scale by an exact rational; at most 1 ulp of rounding."""
        p, q = fr.numerator, fr.denominator
        m = _div_nearest(self.mantissa * p, q)
        return FixedReal(m, self.scale, _ceil_div(self.err_ulp * abs(p), q) + 1)

    def shift(self, bits: int) -> "FixedReal":
        """Multiply by 2**bits exactly."""
        if bits >= 0:
            return FixedReal(self.mantissa << bits, self.scale, self.err_ulp << bits)
        return FixedReal(self.mantissa, self.scale - bits, self.err_ulp)

    def rescale(self, new_scale: int) -> "FixedReal":
        """Change scale; widening is exact, narrowing rounds (+1 ulp)."""
        if new_scale >= self.scale:
            d = new_scale - self.scale
            return FixedReal(self.mantissa << d, new_scale, self.err_ulp << d)
        d = self.scale - new_scale
        m = _div_nearest(self.mantissa, 1 << d)
        return FixedReal(m, new_scale, _ceil_div(self.err_ulp, 1 << d) + 1)

    def widened(self, extra_ulp: int) -> "FixedReal":
        return FixedReal(self.mantissa, self.scale, self.err_ulp + extra_ulp)

    def widened_by_fraction(self, extra: Fraction) -> "FixedReal":
        """Widen the error bound by at least the given absolute amount."""
        if extra < 0:
            raise ValueError("error widening must be non-negative")
        ulps = _ceil_div(extra.numerator << self.scale, extra.denominator)
        return self.widened(ulps)

    # -- decimal I/O ----------------------------------------------------

    def _dec_trunc(self, m: int, digits: int) -> int:
        """Truncate m * 2**-scale toward zero in units of 10**-digits."""
        scaled = m * 10 ** digits
        if scaled >= 0:
            return scaled >> self.scale
        return -((-scaled) >> self.scale)

    def to_decimal(self, digits: int) -> tuple[str, bool]:
        """Decimal expansion with `digits` digits after the point,
        truncated toward zero, plus a validity flag.

        The flag is True only when every value in the error interval
        truncates to the same string, i.e. every printed digit is
        certain.  Callers seeing False must re-run at a higher scale.
        """
        if digits < 1:
            raise ValueError("digits must be at least 1")
        n_lo = self._dec_trunc(self.mantissa - self.err_ulp, digits)
        n_hi = self._dec_trunc(self.mantissa + self.err_ulp, digits)
        n_mid = self._dec_trunc(self.mantissa, digits)
        sign = "-" if n_mid < 0 else ""
        whole, frac = divmod(abs(n_mid), 10 ** digits)
        return f"{sign}{whole}.{frac:0{digits}d}", n_lo == n_hi

    def valid_decimal_digits(self, limit: int) -> int:
        """Largest digit count <= limit that to_decimal reports valid
        (0 when even one digit is uncertain)."""
        # Validity is monotone: decimal cells at fewer digits nest the
        # finer ones, so binary search applies.
        lo, hi = 0, limit
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.to_decimal(mid)[1]:
                lo = mid
            else:
                hi = mid - 1
        return lo
