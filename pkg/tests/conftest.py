import random
from fractions import Fraction

import pytest

from p2xp2.key_variety import WeightData
from p2xp2.series import DenominatorProduct, HilbertSeries, IntPolynomial


def poly(terms) -> IntPolynomial:
    if isinstance(terms, dict):
        return IntPolynomial(terms)
    return IntPolynomial.from_coefficients(terms)


def series(terms, weights) -> HilbertSeries:
    return HilbertSeries(poly(terms), DenominatorProduct(tuple(weights)))


# parity classes (pa, pb, pu) with pa + pb + pu integral
_PARITIES = [
    (Fraction(0), Fraction(0), Fraction(0)),
    (Fraction(1, 2), Fraction(1, 2), Fraction(0)),
    (Fraction(1, 2), Fraction(0), Fraction(1, 2)),
    (Fraction(0), Fraction(1, 2), Fraction(1, 2)),
]


def random_weight_data(rng: random.Random, spread: int = 5) -> WeightData:
    """Any valid weight data: integer or half-integer vectors, arbitrary
    shift, with positivity arranged by lifting u."""
    pa, pb, pu = rng.choice(_PARITIES)
    a = sorted(rng.randint(0, spread) + pa for _ in range(3))
    b = sorted(rng.randint(0, spread) + pb for _ in range(3))
    u = rng.randint(-2, 2) + pu
    if a[0] + b[0] + u < 1:
        u += 1 - (a[0] + b[0] + u)
    return WeightData(a, b, u)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20543)
