from fractions import Fraction
from math import gcd

import numpy as np
import pytest

from gwmirror.exact_coh import (
    CohClass,
    HLaurent,
    assert_no_positive_hbar,
    coh_integrate,
    coh_mul,
    ctop_split,
    hl_linear,
    hl_linear_inverse,
)
from gwmirror.exceptions import (
    DimensionMismatchError,
    NotInvertibleError,
    PositiveHbarError,
    VanishingClassWarning,
)
from gwmirror.selftest import random_coh_class, random_hlaurent, random_rational


def H(k: int, n: int, c=1) -> CohClass:
    return CohClass.hyperplane_power(k, n, c)


@pytest.mark.unit
class TestCohClass:
    """Q[H]/(H^{n+1})"""

    def test_difference_of_squares(self):
        one = CohClass.one(2)
        assert coh_mul(one + H(1, 2), one - H(1, 2)) == one - H(2, 2)

    def test_products_past_top_degree_vanish(self):
        assert coh_mul(H(2, 3), H(2, 3)).is_zero()
        assert H(4, 3).is_zero()

    def test_integrate_reads_top_coefficient(self):
        assert coh_integrate(H(3, 3, Fraction(5, 2))) == Fraction(5, 2)
        assert coh_integrate(H(1, 3)) == 0

    def test_coefficients_are_fractions(self):
        c = CohClass(2, (1, 2, 3))
        assert all(isinstance(x, Fraction) for x in c.coeffs)

    def test_wrong_length_rejected(self):
        with pytest.raises(DimensionMismatchError):
            CohClass(2, (1, 2))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            CohClass.one(2) + CohClass.one(3)

    @pytest.mark.parametrize("case", range(100))
    def test_rational_arithmetic_is_exact(self, case):
        rng = np.random.default_rng(3000 + case)
        a, c = (int(v) for v in rng.integers(-10**6, 10**6, size=2))
        b, d = (int(v) for v in rng.integers(1, 10**6, size=2))
        n = int(rng.integers(1, 4))
        x, y = H(0, n, Fraction(a, b)), H(0, n, Fraction(c, d))
        total, product = (x + y)[0], coh_mul(x, y)[0]
        g = gcd(a * d + b * c, b * d)
        assert (total.numerator, total.denominator) == ((a * d + b * c) // g, b * d // g)
        g = gcd(a * c, b * d)
        assert (product.numerator, product.denominator) == (a * c // g, b * d // g)

    @pytest.mark.parametrize("case", range(100))
    def test_integrate_is_linear(self, case):
        rng = np.random.default_rng(4000 + case)
        n = int(rng.integers(1, 6))
        x, y = random_coh_class(rng, n), random_coh_class(rng, n)
        s, t = random_rational(rng), random_rational(rng)
        assert coh_integrate(x * s + y * t) == s * coh_integrate(x) + t * coh_integrate(y)


@pytest.mark.unit
class TestCtopSplit:
    """Top Chern classes of split bundles"""

    def test_quintic(self):
        assert ctop_split([5], 4) == H(1, 4, 5)

    def test_complete_intersection(self):
        assert ctop_split([2, 3], 5) == H(2, 5, 6)

    def test_rank_above_dimension_vanishes(self):
        with pytest.warns(VanishingClassWarning):
            assert ctop_split([1, 1, 1], 2).is_zero()

    def test_nonpositive_degree_rejected(self):
        with pytest.raises(ValueError):
            ctop_split([0], 3)


@pytest.mark.unit
class TestHLaurent:
    """Laurent polynomials in hbar over the cohomology ring"""

    def test_zero_classes_not_stored(self):
        x = HLaurent(2, {0: CohClass.zero(2), -1: CohClass.one(2)})
        assert list(x.terms) == [-1]

    def test_monomial_coefficient(self):
        x = HLaurent.monomial(Fraction(3, 4), -2, 1, 3)
        assert x.coefficient(-2, 1) == Fraction(3, 4)
        assert x.coefficient(-2, 0) == 0
        assert list(x.entries()) == [(-2, 1, Fraction(3, 4))]

    def test_linear_inverse_small_case(self):
        inv = hl_linear_inverse(1, 1, 1)
        assert inv == HLaurent(1, {-1: CohClass.one(1), -2: H(1, 1, -1)})

    def test_linear_inverse_zero_hbar_part(self):
        with pytest.raises(NotInvertibleError):
            hl_linear_inverse(2, 0, 3)

    @pytest.mark.parametrize("case", range(100))
    def test_linear_inverse_is_inverse(self, case):
        rng = np.random.default_rng(case)
        n = int(rng.integers(1, 7))
        c = int(rng.integers(-9, 10))
        m = int(rng.choice([v for v in range(-9, 10) if v]))
        assert hl_linear(c, m, n) * hl_linear_inverse(c, m, n) == HLaurent.one(n)

    @pytest.mark.parametrize("case", range(100))
    def test_ring_axioms(self, case):
        rng = np.random.default_rng(1000 + case)
        n = int(rng.integers(1, 5))
        a, b, c = (random_hlaurent(rng, n) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a - a == HLaurent.zero(n)

    def test_positive_hbar_detected(self):
        with pytest.raises(PositiveHbarError):
            assert_no_positive_hbar([HLaurent.one(2), hl_linear(1, 1, 2)])
        assert_no_positive_hbar(hl_linear_inverse(1, 2, 2))
