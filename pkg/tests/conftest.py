from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import settings

from machinpi import MachinFormula, solve_u2, validated_pi_reference

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture(scope="session")
def pi_reference_300():
    """pi as a FixedReal validated to >= 300 decimals by two independent
    formulas; see analysis.validated_pi_reference."""
    return validated_pi_reference(300)


@pytest.fixture(scope="session")
def pi_text_300(pi_reference_300):
    text, ok = pi_reference_300.to_decimal(300)
    assert ok
    return text


@pytest.fixture(scope="session")
def machin_formula():
    return MachinFormula.two_term(3, Fraction(5), Fraction(-239))


@pytest.fixture(scope="session")
def k10_formula():
    u1 = Fraction(651)
    return MachinFormula.two_term(10, u1, solve_u2(u1, 10))
