from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from machinpi.errors import DivisorStraddlesZero, NegativeOperand
from machinpi.realnum import FixedReal

from oracles import sqrt_digits


fractions_mid = st.fractions(min_value=-50, max_value=50, max_denominator=1000)
fractions_pos = st.fractions(
    min_value=Fraction(1, 1000), max_value=50, max_denominator=1000
)
scales = st.integers(min_value=16, max_value=96)


def exactly(fr: Fraction, scale: int = 128) -> FixedReal:
    """Fixed-point image of a rational with its conversion error tracked."""
    return FixedReal.from_fraction(fr, scale)


class TestSqrt:
    def test_sqrt_two_twenty_digits(self):
        root = FixedReal.from_int(2, 256).sqrt()
        assert root.to_decimal(20) == (sqrt_digits(2, 20), True)

    def test_sqrt_two_at_scale_128_gives_38_digits(self):
        root = FixedReal.from_int(2, 128).sqrt()
        text, _ = root.to_decimal(38)
        assert text == sqrt_digits(2, 38)
        # One ulp at scale 128 pins at least 37 of those digits outright.
        assert root.valid_decimal_digits(38) >= 37

    def test_sqrt_zero(self):
        assert FixedReal.from_int(0, 64).sqrt() == FixedReal(0, 64, 0)

    def test_sqrt_perfect_square_exact(self):
        root = FixedReal.from_int(4, 64).sqrt()
        assert root.mantissa == 2 << 64 and root.err_ulp == 0

    def test_sqrt_rejects_negative_interval(self):
        with pytest.raises(NegativeOperand):
            FixedReal.from_int(-1, 64).sqrt()

    def test_sqrt_clamps_straddling_interval(self):
        # value 0 +/- 4 ulps: still allowed, root interval starts at 0
        x = FixedReal(0, 64, 4)
        root = x.sqrt()
        assert root.lower <= 0 <= root.upper

    @given(fractions_pos, scales)
    def test_sqrt_contains_true_root(self, fr, scale):
        root = exactly(fr, scale).sqrt(scale)
        # lower**2 <= fr <= upper**2 brackets sqrt(fr) without irrationals
        assert max(root.lower, 0) ** 2 <= fr
        assert root.upper ** 2 >= fr


class TestArithmetic:
    def test_cancellation_example(self):
        two = FixedReal.from_int(2, 256)
        diff = two - two.sqrt()
        text, ok = diff.to_decimal(20)
        assert ok
        # 2 - sqrt(2) digits derived from the integer-root expansion
        assert text == "0." + str(2 * 10 ** 20 - int(sqrt_digits(2, 20).replace(".", "")) - 1)[-20:]

    def test_self_division(self):
        three = FixedReal.from_int(3, 128)
        assert (three / three).contains(Fraction(1))

    def test_division_by_straddling_interval(self):
        with pytest.raises(DivisorStraddlesZero):
            FixedReal.from_int(1, 64) / FixedReal(3, 64, 5)

    @given(fractions_mid, fractions_mid, scales)
    def test_add_sub_contain_exact(self, a, b, scale):
        fa, fb = exactly(a, scale), exactly(b, scale)
        assert (fa + fb).contains(a + b)
        assert (fa - fb).contains(a - b)

    @given(fractions_mid, fractions_mid, scales)
    def test_mul_contains_exact(self, a, b, scale):
        assert (exactly(a, scale) * exactly(b, scale)).contains(a * b)

    @given(fractions_mid, fractions_mid, scales)
    def test_div_contains_exact(self, a, b, scale):
        assume(abs(b) > Fraction(1, 100))
        fb = exactly(b, scale)
        assert (exactly(a, scale) / fb).contains(a / b)

    @given(fractions_mid, fractions_mid)
    def test_add_then_subtract_recovers(self, a, b):
        fa, fb = exactly(a), exactly(b)
        back = (fa + fb) - fb
        assert back.contains(a)
        assert back.err <= 2 * (fa.err + fb.err) + Fraction(4, 1 << 128)

    @given(fractions_mid, st.fractions(min_value=-3, max_value=3, max_denominator=60))
    def test_mul_fraction_contains_exact(self, a, q):
        assert exactly(a).mul_fraction(q).contains(a * q)

    @given(fractions_mid, st.integers(min_value=-40, max_value=40))
    def test_shift_is_exact(self, a, bits):
        shifted = exactly(a).shift(bits)
        assert shifted.contains(a * Fraction(2) ** bits)

    @given(fractions_mid, scales, scales)
    def test_rescale_contains(self, a, s1, s2):
        x = exactly(a, s1)
        assert x.rescale(s2).contains(a)


class TestErrorPropagationThroughChains:
    @given(fractions_pos, fractions_pos, fractions_pos)
    def test_compound_pipeline_contains_exact(self, a, b, c):
        # (a*b + c) / (a + 1): compare against exact rational arithmetic.
        scale = 160
        fa, fb, fc = (exactly(v, scale) for v in (a, b, c))
        one = FixedReal.from_int(1, scale)
        got = (fa * fb + fc) / (fa + one)
        assert got.contains((a * b + c) / (a + 1))

    def test_monotone_refinement(self):
        # The same pipeline at a higher scale lands inside the coarse interval.
        def pipeline(scale: int) -> FixedReal:
            two = FixedReal.from_int(2, scale)
            a1 = two.sqrt()
            a2 = (two + a1).sqrt()
            return a2 / (two - a1).sqrt()

        coarse = pipeline(96)
        fine = pipeline(256)
        assert coarse.lower <= fine.value <= coarse.upper
        assert fine.err < coarse.err


class TestDecimal:
    def test_exact_quarter(self):
        assert exactly(Fraction(1, 4)).to_decimal(3) == ("0.250", True)

    def test_negative_truncates_toward_zero(self):
        assert exactly(Fraction(-1, 4)).to_decimal(3) == ("-0.250", True)
        assert exactly(Fraction(-1999, 1000)).to_decimal(2)[0] == "-1.99"

    def test_uncertain_digit_flagged(self):
        root = FixedReal.from_int(2, 256).sqrt()
        blurred = root.widened_by_fraction(Fraction(1, 10 ** 10))
        text, ok = blurred.to_decimal(20)
        assert not ok
        _, ok9 = blurred.to_decimal(9)
        assert ok9

    def test_valid_decimal_digits(self):
        root = FixedReal.from_int(2, 256).sqrt()
        blurred = root.widened_by_fraction(Fraction(1, 10 ** 10))
        assert blurred.valid_decimal_digits(40) == 9

    def test_straddling_zero_invalid_unless_tiny(self):
        wobbling = FixedReal(1, 64, 100)  # interval about +/- 5.4e-18
        assert wobbling.to_decimal(20)[1] is False
        assert wobbling.to_decimal(12) == ("0.000000000000", True)

    @given(fractions_mid, st.integers(min_value=1, max_value=25))
    def test_valid_rendering_matches_exact_truncation(self, a, digits):
        text, ok = exactly(a, 160).to_decimal(digits)
        if ok:
            sign = "-" if a < 0 else ""
            scaled = abs(a.numerator) * 10 ** digits // a.denominator
            whole, frac = divmod(scaled, 10 ** digits)
            assert text == f"{sign}{whole}.{frac:0{digits}d}"


class TestValidation:
    def test_scale_must_be_non_negative(self):
        with pytest.raises(ValueError):
            FixedReal(1, -1)

    def test_err_must_be_non_negative(self):
        with pytest.raises(ValueError):
            FixedReal(1, 8, -2)
