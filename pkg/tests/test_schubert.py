from fractions import Fraction

import pytest

from gwmirror.exceptions import DimensionMismatchError
from gwmirror.schubert import (
    SchubertElt,
    chern_top_sym,
    dual_partition,
    duality_pairing,
    grass_integrate,
    lines_dimension_matches,
    lines_on_hypersurface,
    pieri_mul,
    schubert_class,
    schubert_mul,
    special_class,
)


def s(a, b=0, m=4) -> SchubertElt:
    return schubert_class(a, b, m)


@pytest.mark.unit
class TestPieri:
    """Pieri rule on G(2, m)"""

    def test_sigma1_squared(self):
        assert pieri_mul(s(1), 1) == s(2) + s(1, 1)

    def test_leaves_the_box(self):
        assert pieri_mul(s(2, 2), 1).is_zero()

    def test_sigma1_times_sigma11(self):
        assert pieri_mul(s(1, 1), 1) == s(2, 1)

    def test_sigma0_is_identity(self):
        x = s(2, 1, 5) * 3 + s(3, 0, 5)
        assert pieri_mul(x, 0) == x

    def test_outside_box_is_zero_class(self):
        assert special_class(3, 4).is_zero()
        with pytest.raises(ValueError):
            SchubertElt(4, {(3, 0): Fraction(1)})


@pytest.mark.unit
class TestSchubertRing:
    """Products and integration in the Schubert ring"""

    def test_giambelli_product_matches_pieri(self):
        assert schubert_mul(s(1), s(1, 1)) == pieri_mul(s(1, 1), 1)

    def test_sigma2_squared_is_point(self):
        assert grass_integrate(s(2) * s(2)) == 1

    def test_commutative_and_associative(self):
        m = 6
        a, b, c = s(2, 1, m), s(3, 1, m) + s(1, 0, m), s(2, 2, m)
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert schubert_mul(pieri_mul(a, 2), b) == pieri_mul(a * b, 2)

    @pytest.mark.parametrize("m", [4, 5, 6, 7])
    def test_duality(self, m):
        box = m - 2
        partitions = [(a, b) for a in range(box + 1) for b in range(a + 1)]
        for first in partitions:
            for second in partitions:
                if first[0] + first[1] + second[0] + second[1] != 2 * box:
                    continue
                expected = 1 if second == dual_partition(first, m) else 0
                assert duality_pairing(first, second, m) == expected

    def test_integrate_off_degree(self):
        assert grass_integrate(s(1)) == 0
        assert grass_integrate(s(2, 2)) == 1

    def test_mixed_grassmannians(self):
        with pytest.raises(DimensionMismatchError):
            s(1, 0, 4) * s(1, 0, 5)


@pytest.mark.unit
class TestChernTop:
    """Top Chern class of Sym^l S*"""

    def test_sym1_is_sigma11(self):
        for m in (3, 4, 6):
            assert chern_top_sym(1, m) == schubert_class(1, 1, m)

    def test_sym2(self):
        # 2 x1 (x1 + x2) 2 x2 = 4 e1 e2
        assert chern_top_sym(2, 4) == s(2, 1) * 4

    def test_sym3(self):
        assert chern_top_sym(3, 4) == (s(1) * s(1) * s(1, 1) * 2 + s(1, 1) * s(1, 1)) * 9


@pytest.mark.integration
class TestLineCounts:
    """Lines on hypersurfaces"""

    @pytest.mark.parametrize("l, n, expected", [(3, 3, 27), (5, 4, 2875), (7, 5, 698005), (1, 2, 1)])
    def test_classical_counts(self, l, n, expected):
        assert lines_on_hypersurface(l, n) == expected

    def test_degree_mismatch_returns_zero(self, caplog):
        assert not lines_dimension_matches(4, 4)
        assert lines_on_hypersurface(4, 4) == 0
        assert "degree mismatch" in caplog.text
