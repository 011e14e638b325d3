"""Convergence measurement and method comparison.

"Correct digits" means the length of the longest common prefix of the
decimal expansions after the leading "3." against a reference constant
whose own digits were validated independently.  Per-term slope comes from
a least-squares fit over samples with at least three terms, skipping the
pre-asymptotic transient.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InsufficientReference
from .machin import MachinFormula
from .realnum import FixedReal
from .series import (
    approx_log10,
    arctan_conjugate,
    arctan_euler,
    arctan_gregory,
    digits_per_term,
    pi_from_formula,
    scale_for_digits,
)

# Band within which the measured slope is expected to sit relative to the
# predicted one once past the transient; outside it the report is flagged
# but not rejected.
RATE_BAND = 0.15

# Published digits-per-term for the reference constructions at each depth.
KNOWN_DIGITS_PER_TERM = {2: 1, 3: 2, 5: 3, 10: 6, 17: 10, 23: 14}


@dataclass
class ConvergenceReport:
    k: int | None
    u1: Fraction
    measured_digits_per_term: float
    predicted_digits_per_term: float
    reference_rate: int | None
    samples: list[tuple[int, int]] = field(default_factory=list)
    wall_time_per_term: float = 0.0
    rate_within_band: bool = True


def predict_rate(u1: Fraction) -> float:
    """Digits of pi per added term for a first argument 1/u1."""
    u1 = Fraction(u1)
    if u1 <= 0:
        raise ValueError("u1 must be positive")
    return digits_per_term(u1)


def _common_prefix_digits(sample: str, reference: str) -> int:
    """Matching digit count after the '3.'; both strings look like 3.14159..."""
    n = 0
    for a, b in zip(sample, reference):
        if a != b:
            break
        if a not in ".-":
            n += 1
    return max(0, n - 1)  # drop the leading "3"


def _least_squares_slope(points: list[tuple[int, int]]) -> float:
    n = len(points)
    if n < 2:
        return float("nan")
    sx = sum(p[0] for p in points)
    sy = sum(p[1] for p in points)
    sxx = sum(p[0] * p[0] for p in points)
    sxy = sum(p[0] * p[1] for p in points)
    return (n * sxy - sx * sy) / (n * sxx - sx * sx)


def _formula_depth(formula: MachinFormula) -> int | None:
    alpha = formula.terms[0][0]
    if alpha.denominator != 1:
        return None
    a = int(alpha)
    if a >= 1 and a & (a - 1) == 0:
        return a.bit_length()  # alpha = 2**(k-1)
    return None


def measure_convergence(
    formula: MachinFormula,
    max_terms: int,
    reference_pi: FixedReal,
    reference_rate: int | None = None,
) -> ConvergenceReport:
    """Count correct digits of pi at each truncation 1..max_terms and fit
    the digits-per-term slope.

    The reference must out-resolve everything the run can produce, else
    InsufficientReference.
    """
    if max_terms < 1:
        raise ValueError("max_terms must be at least 1")
    u1 = min(abs(beta) for _, beta in formula.terms)
    predicted = digits_per_term(u1)
    ceiling = int(predicted * (max_terms + 1)) + 8
    ref_digits = reference_pi.valid_decimal_digits(ceiling)
    if ref_digits < ceiling:
        raise InsufficientReference(
            f"reference pi resolves {ref_digits} digits; the measurement "
            f"could reach about {ceiling}"
        )
    ref_text, ok = reference_pi.to_decimal(ref_digits)
    assert ok
    scale = scale_for_digits(ceiling)
    samples: list[tuple[int, int]] = []
    elapsed = 0.0
    for m in range(1, max_terms + 1):
        t0 = time.perf_counter()
        result = pi_from_formula(formula, m, scale, assume_verified=True)
        elapsed += time.perf_counter() - t0
        text, _ = result.value.to_decimal(ref_digits)
        samples.append((m, _common_prefix_digits(text, ref_text)))
    fit_points = [p for p in samples if p[0] >= 3]
    slope = _least_squares_slope(fit_points if len(fit_points) >= 2 else samples)
    within = (
        slope == slope
        and abs(slope - predicted) / predicted < RATE_BAND
    )
    return ConvergenceReport(
        k=_formula_depth(formula),
        u1=u1,
        measured_digits_per_term=slope,
        predicted_digits_per_term=predicted,
        reference_rate=reference_rate,
        samples=samples,
        wall_time_per_term=elapsed / sum(m for m, _ in samples),
        rate_within_band=within,
    )


def compare_methods(
    x: Fraction, terms: int, scale: int
) -> list[tuple[str, Fraction]]:
    """Absolute truncation error of each series at equal term counts,
    measured against the conjugate-pair series run at four times the
    terms.  Errors are exact rationals (they can be far below float
    range)."""
    x = Fraction(x)
    if abs(x) >= 1:
        raise ValueError("comparison domain is |x| < 1")
    if x == 0:
        # arctan(0) = 0; every method is exact there.
        return [("gregory", Fraction(0)), ("euler", Fraction(0)), ("conjugate", Fraction(0))]
    reference = arctan_conjugate(x, 4 * terms, scale).value.value
    rows = []
    for name, fn in (
        ("gregory", arctan_gregory),
        ("euler", arctan_euler),
        ("conjugate", arctan_conjugate),
    ):
        rows.append((name, abs(fn(x, terms, scale).value.value - reference)))
    return rows


def format_error(err: Fraction) -> str:
    """Render an error magnitude as ~1.23e-45 without float underflow."""
    if err == 0:
        return "0"
    lg = approx_log10(err)
    exp = int(lg // 1)
    mantissa = 10.0 ** (lg - exp)
    return f"{mantissa:.2f}e{exp:+d}"


def validated_pi_reference(digits: int) -> FixedReal:
    """pi validated to at least `digits` decimals by two structurally
    independent two-term formulas (depth-3 and depth-5 constructions);
    their expansions must agree digit for digit."""
    from .machin import solve_u2
    from .series import pi_from_formula, terms_for_digits

    target = digits + 4
    scale = scale_for_digits(target)
    f_a = MachinFormula.two_term(3, Fraction(5), solve_u2(Fraction(5), 3))
    f_b = MachinFormula.two_term(5, Fraction(20), solve_u2(Fraction(20), 5))
    ref_a = pi_from_formula(
        f_a, terms_for_digits(target, digits_per_term(Fraction(5))), scale
    )
    ref_b = pi_from_formula(
        f_b, terms_for_digits(target, digits_per_term(Fraction(20))), scale
    )
    text_a, ok_a = ref_a.value.to_decimal(digits)
    text_b, ok_b = ref_b.value.to_decimal(digits)
    if not (ok_a and ok_b and text_a == text_b):
        raise InsufficientReference(
            f"independent pi references disagree within {digits} digits"
        )
    return ref_a.value
