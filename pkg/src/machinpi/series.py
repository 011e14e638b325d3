"""Arctangent series and pi evaluation at arbitrary precision.

Three series are provided:

* arctan_gregory: the alternating odd-power Maclaurin series.
* arctan_euler: the all-positive series in powers of x**2/(1+x**2), with
  the factorial ratio folded into a per-term multiplicative recurrence.
* arctan_conjugate: the expansion of arctan(x) in odd powers of the
  complex number v = x/(x + 2i).  Writing w_m = v**(2m-1), the two
  conjugate streams collapse to

      arctan(x) = -2 * sum_m Im(w_m) / (2m - 1),

  which is real by construction, so no imaginary residue is ever
  discarded.  Successive terms pick up a factor v**2, so the error
  contracts by |v|**2 = x**2 / (x**2 + 4) per term: about
  log10(1 + 4/x**2) decimal digits per added term.

pi comes either from a verified two-term formula (4 * sum of coefficient
times arctan of the reciprocal argument) or, with no rational arguments
at all, from the radical tower: pi = 2**(k+1) * arctan(1/c_k) evaluated
by the conjugate series directly on the fixed-point c_k.

Terms for all series are generated by multiplicative recurrences; no
powers or factorials are recomputed per term.  Each result's error bound
covers rounding and truncation; the stated per-term contraction is also
measured from the actual term magnitudes and reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DivergentArgument,
    PrecisionExhausted,
    UnverifiedFormula,
    ZeroArgument,
)
from .machin import MachinFormula, verify_formula
from .radicals import eval_radicals
from .realnum import FixedReal

_LOG2_10 = math.log2(10)
_LOG10_2 = math.log10(2)
_GUARD_BITS = 64


@dataclass(frozen=True)
class SeriesResult:
    """A partial sum with its provenance and measured convergence."""

    value: FixedReal
    terms_used: int
    per_term_log10: float
    method: str


def approx_log10(fr: Fraction) -> float:
    """Float log10 of a positive rational of any size."""
    if fr <= 0:
        raise ValueError("approx_log10 needs a positive value")

    def _lg(v: int) -> float:
        e = max(0, v.bit_length() - 53)
        return math.log10(v >> e) + e * _LOG10_2

    return _lg(fr.numerator) - _lg(fr.denominator)


def digits_per_term(beta: Fraction) -> float:
    """Decimal digits of pi gained per added conjugate-series term for
    the argument 1/beta: log10(1 + 4*beta**2)."""
    return approx_log10(1 + 4 * Fraction(beta) ** 2)


def scale_for_digits(digits: int) -> int:
    return math.ceil(digits * _LOG2_10) + _GUARD_BITS


def terms_for_digits(digits: int, rate: float) -> int:
    return math.ceil(digits / rate) + 2


def _cap_upper(fr: Fraction, bits: int = 64) -> Fraction:
    """Cheap upper bound on a non-negative rational with huge components:
    keep `bits` significant bits of each side, rounding the ratio up."""
    num, den = fr.numerator, fr.denominator
    tn = max(0, num.bit_length() - bits)
    td = max(0, den.bit_length() - bits)
    num_top = (num >> tn) + (1 if tn else 0)
    return Fraction(num_top, den >> td) * Fraction(2) ** (tn - td)


def _sqrt_upper(fr: Fraction) -> Fraction:
    """Cheap upper bound on the square root of a non-negative rational."""
    p, q = fr.numerator, fr.denominator
    return Fraction(math.isqrt(p * q) + 1, q)


def _tail_bound(rho: Fraction, terms: int) -> Fraction:
    """Truncated-tail bound for the conjugate-pair series.

    The first omitted term has magnitude at most
    2 |v|**(2*terms+1) / (2*terms+1) with |v| = sqrt(rho), and the rest
    decay geometrically with ratio rho.
    """
    rho_ub = _cap_upper(rho)
    if rho_ub >= 1:
        rho_ub = rho  # huge near-one operands: fall back to the exact ratio
    lead = rho_ub ** terms * _sqrt_upper(rho_ub)
    return 2 * lead / ((2 * terms + 1) * (1 - rho_ub))


def _measured_rate(first: Fraction, last: Fraction, terms: int, fallback: float) -> float:
    if terms < 2 or first == 0 or last == 0:
        return fallback
    return (approx_log10(abs(first)) - approx_log10(abs(last))) / (terms - 1)


def arctan_gregory(x: Fraction, terms: int, scale: int) -> SeriesResult:
    """Alternating odd-power partial sum; |x| < 1 for convergence.

    Truncation is bounded by the first omitted term.
    """
    x = Fraction(x)
    if abs(x) >= 1:
        raise DivergentArgument(f"|{x}| >= 1 diverges in the odd-power series")
    if terms < 1:
        raise ValueError("terms must be at least 1")
    total = FixedReal.zero(scale)
    p = x
    first = last = Fraction(0)
    for n in range(1, terms + 1):
        term = p / (2 * n - 1)
        total = total + FixedReal.from_fraction(term, scale)
        if n == 1:
            first = term
        last = term
        p *= -x * x
    tail = abs(x) ** (2 * terms + 1) / (2 * terms + 1)
    total = total.widened_by_fraction(tail)
    rate = _measured_rate(first, last, terms, 2 * approx_log10(1 / abs(x)) if x else 0.0)
    return SeriesResult(total, terms, rate, "gregory")


def arctan_euler(x: Fraction, terms: int, scale: int) -> SeriesResult:
    """All-positive series in q = x**2/(1+x**2); converges for every real x.

    t_0 = x/(1+x**2) and t_(n+1) = t_n * q * 2(n+1)/(2n+3); the tail after
    the last term is at most |t_terms| / (1 - q).
    """
    x = Fraction(x)
    if terms < 1:
        raise ValueError("terms must be at least 1")
    one_plus = 1 + x * x
    q = x * x / one_plus
    t = x / one_plus
    total = FixedReal.zero(scale)
    first = last = Fraction(0)
    for n in range(terms):
        total = total + FixedReal.from_fraction(t, scale)
        if n == 0:
            first = t
        last = t
        t *= q * Fraction(2 * (n + 1), 2 * n + 3)
    tail = abs(t) * one_plus  # 1/(1-q) = 1 + x**2
    total = total.widened_by_fraction(tail)
    fallback = approx_log10(1 / q) if x else 0.0
    return SeriesResult(total, terms, _measured_rate(first, last, terms, fallback), "euler")


def arctan_conjugate(x: Fraction, terms: int, scale: int) -> SeriesResult:
    """Conjugate-pair series; fastest of the three, defined for all x != 0.

    With x = a/b the starting power is the exact Gaussian rational
    v = (a**2 - 2ab i) / (a**2 + 4 b**2); the recurrence multiplies by
    v**2 in complex fixed point, and only the imaginary parts feed the
    sum.
    """
    x = Fraction(x)
    if x == 0:
        raise ZeroArgument("the conjugate-pair series needs a nonzero argument")
    if terms < 1:
        raise ValueError("terms must be at least 1")
    a, b = x.numerator, x.denominator
    d = a * a + 4 * b * b
    v_re, v_im = Fraction(a * a, d), Fraction(-2 * a * b, d)
    rho = Fraction(a * a, d)  # |v|**2
    r_re = v_re * v_re - v_im * v_im
    r_im = 2 * v_re * v_im
    wr = FixedReal.from_fraction(v_re, scale)
    wi = FixedReal.from_fraction(v_im, scale)
    frr = FixedReal.from_fraction(r_re, scale)
    fri = FixedReal.from_fraction(r_im, scale)
    total = FixedReal.zero(scale)
    first = last = Fraction(0)
    for m in range(1, terms + 1):
        term = wi.mul_fraction(Fraction(-2, 2 * m - 1))
        total = total + term
        if m == 1:
            first = term.value
        last = term.value
        if m < terms:
            wr, wi = wr * frr - wi * fri, wr * fri + wi * frr
    total = total.widened_by_fraction(_tail_bound(rho, terms))
    fallback = approx_log10(1 / rho)
    return SeriesResult(total, terms, _measured_rate(first, last, terms, fallback), "conjugate")


def pi_from_formula(
    formula: MachinFormula,
    terms: int,
    scale: int,
    assume_verified: bool = False,
) -> SeriesResult:
    """pi = 4 * sum of alpha * arctan(1/beta) over the formula's terms,
    every arctangent through the conjugate-pair series.

    The formula must verify exactly unless the caller explicitly vouches
    for it; each term's truncation bound enters the total error scaled by
    |alpha|.
    """
    if not assume_verified:
        outcome = verify_formula(formula)
        if not outcome.ok:
            raise UnverifiedFormula(
                f"formula failed the exact product check: {outcome.product}"
            )
    total = FixedReal.zero(scale)
    slowest_beta = min(abs(beta) for _, beta in formula.terms)
    rate = 0.0
    for alpha, beta in formula.terms:
        part = arctan_conjugate(1 / beta, terms, scale)
        total = total + part.value.mul_fraction(alpha)
        if abs(beta) == slowest_beta:
            rate = part.per_term_log10
    return SeriesResult(total.shift(2), terms, rate, "conjugate")


def pi_from_radicals(k: int, terms: int, scale: int) -> SeriesResult:
    """pi = 2**(k+1) * arctan(1/c_k) evaluated without any rational
    rounding: the conjugate-pair series runs directly on the fixed-point
    tower value, so the argument stays irrational.

    Needs no second term; the per-term gain is log10(1 + 4*c_k**2).
    """
    if k < 2:
        raise ValueError("depth k must be at least 2")
    if terms < 1:
        raise ValueError("terms must be at least 1")
    digits = math.ceil(scale * _LOG10_2) + 4
    state = eval_radicals(k, digits)
    c = state.c_k
    one = FixedReal.from_int(1, c.scale)
    denom = one + (c * c).shift(2)
    v_re = one / denom
    v_im = -c.shift(1) / denom
    r_re = v_re * v_re - v_im * v_im
    r_im = (v_re * v_im).shift(1)
    c_lo = c.lower
    rho = 1 / (1 + 4 * c_lo * c_lo)
    wr, wi = v_re, v_im
    total = FixedReal.zero(c.scale)
    first = last = Fraction(0)
    for m in range(1, terms + 1):
        term = wi.mul_fraction(Fraction(-2, 2 * m - 1))
        total = total + term
        if m == 1:
            first = term.value
        last = term.value
        if m < terms:
            wr, wi = wr * r_re - wi * r_im, wr * r_im + wi * r_re
    total = total.widened_by_fraction(_tail_bound(rho, terms))
    fallback = approx_log10(1 / rho)
    rate = _measured_rate(first, last, terms, fallback)
    return SeriesResult(total.shift(k + 1), terms, rate, "conjugate")


def _radical_rate(k: int) -> float:
    """Predicted digits per term for the tower argument at depth k,
    using c_k ~= 2**(k+1)/pi."""
    c_log10 = (k + 1) * _LOG10_2 - math.log10(math.pi)
    if c_log10 < 120:
        c = 10.0 ** c_log10
        return math.log10(1 + 4 * c * c)
    return math.log10(4) + 2 * c_log10


def pi_digits_from_formula(
    formula: MachinFormula,
    digits: int,
    assume_verified: bool = False,
) -> tuple[str, SeriesResult]:
    """Decimal digits of pi, every printed digit validated; retries at a
    higher scale if the validity flag trips."""
    if digits < 1:
        raise ValueError("digits must be at least 1")
    rate = min(digits_per_term(beta) for _, beta in formula.terms)
    terms = terms_for_digits(digits, rate)
    scale = scale_for_digits(digits)
    return _validated_digits(
        lambda t, s: pi_from_formula(formula, t, s, assume_verified=assume_verified),
        digits,
        terms,
        scale,
    )


def pi_digits_from_radicals(k: int, digits: int) -> tuple[str, SeriesResult]:
    """Decimal digits of pi through the tower path at depth k."""
    if digits < 1:
        raise ValueError("digits must be at least 1")
    terms = terms_for_digits(digits, _radical_rate(k))
    scale = scale_for_digits(digits)
    return _validated_digits(
        lambda t, s: pi_from_radicals(k, t, s), digits, terms, scale
    )


def _validated_digits(evaluate, digits, terms, scale):
    for attempt in range(5):
        result = evaluate(terms, scale)
        text, ok = result.value.to_decimal(digits)
        if ok:
            return text, result
        scale += 128 << attempt
        terms += 3
    raise PrecisionExhausted(f"could not validate {digits} digits of pi")
