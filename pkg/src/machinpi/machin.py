"""Exact construction and verification of two-term arctangent identities.

Everything here works in the Gaussian rationals.  A term
alpha * arctan(1/beta) corresponds to the unit-modulus rotation
((beta + i)/(beta - i)) ** alpha, and a formula for pi/4 is exactly valid
iff the product of its rotations equals i.

Solving for the closing second term: with beta1 = p/q in lowest terms and
A + Bi = (p + qi) ** alpha1,

    ((beta1 + i)/(beta1 - i)) ** alpha1 = (A + Bi)/(A - Bi),

and demanding the product equal i gives beta2 = (A + B)/(A - B).  The
same value falls out of the direct rearrangement

    beta2 = 2 / (z - i) - i,      z = ((beta1 + i)/(beta1 - i)) ** alpha1,

which is kept as an independent cross-check path (see
solve_second_term_direct); the README records the algebra connecting the
two.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateSecondTerm, NotExactlyVerifiable
from .exact import GR_I, GaussianInt, GaussianRational, gr_pow


@dataclass(frozen=True)
class MachinFormula:
    """pi/4 = sum of alpha * arctan(1/beta) over the listed terms."""

    terms: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self) -> None:
        if not self.terms:
            raise ValueError("a formula needs at least one term")
        for _, beta in self.terms:
            if beta == 0:
                raise ValueError("every cotangent argument must be nonzero")

    @classmethod
    def two_term(cls, k: int, u1: Fraction, u2: Fraction) -> "MachinFormula":
        return cls(((Fraction(1 << (k - 1)), Fraction(u1)), (Fraction(1), Fraction(u2))))

    @classmethod
    def single(cls, alpha: Fraction, beta: Fraction) -> "MachinFormula":
        return cls(((Fraction(alpha), Fraction(beta)),))

    def __str__(self) -> str:
        # Negative arguments render as subtraction: arctan(1/-x) = -arctan(1/x).
        parts = []
        for alpha, beta in self.terms:
            sign = "-" if beta < 0 else "+"
            coeff = "" if alpha == 1 else f"{alpha}*"
            parts.append((sign, f"{coeff}arctan({abs(1 / beta)})"))
        first_sign, first = parts[0]
        rendered = ("-" if first_sign == "-" else "") + first
        for sign, term in parts[1:]:
            rendered += f" {sign} {term}"
        return f"pi/4 = {rendered}"


@dataclass(frozen=True)
class VerificationResult:
    """Outcome of the exact product check, with the product as certificate."""

    ok: bool
    product: GaussianRational

    def __bool__(self) -> bool:
        return self.ok


def rotation_power(beta: Fraction, alpha: int) -> GaussianRational:
    """((beta + i)/(beta - i)) ** alpha, exactly.

    Computed from the integer power (p + qi) ** |alpha| with beta = p/q,
    so only one rational reduction happens at the end; negative exponents
    conjugate (the rotation has unit modulus).
    """
    g = GaussianInt(beta.numerator, beta.denominator) ** abs(alpha)
    a, b = g.re, g.im
    n = a * a + b * b
    z = GaussianRational(Fraction(a * a - b * b, n), Fraction(2 * a * b, n))
    return z.conjugate() if alpha < 0 else z


def solve_second_term(alpha1: int, beta1: Fraction) -> Fraction:
    """Exact beta2 with pi/4 = alpha1*arctan(1/beta1) + arctan(1/beta2).

    Raises DegenerateSecondTerm when the first term alone is pi/4 (the
    rotation is already i) or is pi/4 plus a right angle (beta2 would be
    zero, and arctan(1/beta2) undefined).
    """
    if alpha1 < 1:
        raise ValueError("first coefficient must be a positive integer")
    beta1 = Fraction(beta1)
    if beta1 == 0:
        raise ValueError("first cotangent argument must be nonzero")
    g = GaussianInt(beta1.numerator, beta1.denominator) ** alpha1
    a, b = g.re, g.im
    if a == b:
        raise DegenerateSecondTerm(
            f"{alpha1}*arctan(1/{beta1}) is already pi/4; no second term"
        )
    if a == -b:
        raise DegenerateSecondTerm(
            f"{alpha1}*arctan(1/{beta1}) differs from pi/4 by a right "
            "angle; the second argument degenerates to zero"
        )
    return Fraction(a + b, a - b)


def solve_u2(u1: Fraction, k: int) -> Fraction:
    """Second argument closing pi/4 = 2**(k-1) * arctan(1/u1) + arctan(1/u2)."""
    u1 = Fraction(u1)
    if u1 <= 0:
        raise ValueError("u1 must be positive")
    if k < 1:
        raise ValueError("k must be a positive integer")
    return solve_second_term(1 << (k - 1), u1)


def solve_second_term_direct(alpha1: int, beta1: Fraction) -> Fraction:
    """Same value as solve_second_term via the literal rearrangement
    2/(z - i) - i over Gaussian rationals; cross-check path."""
    if alpha1 < 1:
        raise ValueError("first coefficient must be a positive integer")
    beta1 = Fraction(beta1)
    b = GaussianRational(beta1, Fraction(0))
    z = gr_pow((b + GR_I) / (b - GR_I), alpha1)
    if z == GR_I:
        raise DegenerateSecondTerm(
            f"{alpha1}*arctan(1/{beta1}) is already pi/4; no second term"
        )
    two = GaussianRational(Fraction(2), Fraction(0))
    w = two / (z - GR_I) - GR_I
    assert w.im == 0, "second argument must come out real"
    if w.re == 0:
        raise DegenerateSecondTerm(
            f"{alpha1}*arctan(1/{beta1}) differs from pi/4 by a right "
            "angle; the second argument degenerates to zero"
        )
    return w.re


def verify_formula(formula: MachinFormula) -> VerificationResult:
    """Exact check that the rotations multiply to i.

    Only integer coefficients admit an exact algebraic check; rational
    coefficients raise NotExactlyVerifiable rather than guessing a branch.
    """
    product = GaussianRational(Fraction(1), Fraction(0))
    for alpha, beta in formula.terms:
        if alpha.denominator != 1:
            raise NotExactlyVerifiable(
                f"coefficient {alpha} is not an integer"
            )
        product = product * rotation_power(beta, int(alpha))
    return VerificationResult(ok=product == GR_I, product=product)


def check_relation_pair(
    a: tuple[int, Fraction], b: tuple[int, Fraction]
) -> bool:
    """True iff the two weighted arctangent terms are exactly equal,
    i.e. their rotations coincide."""
    (alpha_a, beta_a), (alpha_b, beta_b) = a, b
    return rotation_power(Fraction(beta_a), alpha_a) == rotation_power(
        Fraction(beta_b), alpha_b
    )
