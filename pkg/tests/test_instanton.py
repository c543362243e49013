import json
from fractions import Fraction

import pytest
from pydantic import ValidationError

from gwmirror.exceptions import MissingDivisorError, UnsupportedGeometryError
from gwmirror.instanton import (
    InstantonTable,
    extract_instanton,
    invariants_from_j_function,
    multiple_cover_sum,
    yukawa_from_instantons,
    yukawa_quintic,
)
from gwmirror.mirror import i_function, normalize
from gwmirror.novikov import ScalarSeries
from gwmirror.schemas import GeometrySpec

QUINTIC_INSTANTONS = {
    1: 2875,
    2: 609250,
    3: 317206375,
    4: 242467530000,
    5: 229305888887625,
    6: 248249742118022000,
}


@pytest.mark.unit
class TestMultipleCoverSum:
    """Multiple-cover relation between n_d and K_d"""

    def test_small_degrees(self):
        n = {1: Fraction(64), 2: Fraction(8), 3: Fraction(3), 4: Fraction(1)}
        assert multiple_cover_sum(n, 1) == 64
        assert multiple_cover_sum(n, 2) == 8 + Fraction(64, 8)
        assert multiple_cover_sum(n, 4) == 1 + Fraction(8, 8) + Fraction(64, 64)

    def test_missing_divisor(self):
        with pytest.raises(MissingDivisorError):
            multiple_cover_sum({2: Fraction(1)}, 2)

    def test_table_validates_relation(self):
        with pytest.raises(ValidationError):
            InstantonTable(max_degree=2, n={1: "1", 2: "0"}, K={1: "1", 2: "1"})


@pytest.mark.unit
class TestExtraction:
    """Instanton extraction from a Yukawa coupling"""

    def test_constant_coupling(self):
        table = extract_instanton(ScalarSeries.from_coeffs([5], 4), 4)
        assert all(v == 0 for v in table.n.values())
        assert table.integral

    def test_single_instanton(self):
        c = Fraction(7)
        table = extract_instanton(ScalarSeries.from_coeffs([5, c, c, c], 3), 3)
        assert table.n == {1: c, 2: 0, 3: 0}
        assert table.K[2] == c / 8

    def test_constant_term_must_be_five(self):
        with pytest.raises(UnsupportedGeometryError):
            extract_instanton(ScalarSeries.from_coeffs([4, 1], 1), 1)

    def test_round_trip(self):
        k = ScalarSeries.from_coeffs([5, 3, -1, 4, Fraction(1, 2)], 4)
        assert yukawa_from_instantons(extract_instanton(k, 4)) == k


@pytest.mark.slow
class TestQuintic:
    """Full quintic pipeline"""

    def test_yukawa_leading_terms(self):
        k = yukawa_quintic(2)
        assert k[0] == 5
        assert k[1] == 2875
        assert k[2] == 2875 + 8 * 609250

    def test_instanton_numbers(self, quintic_pipeline):
        table, _ = quintic_pipeline
        assert table.integral
        assert table.n == {d: Fraction(v) for d, v in QUINTIC_INSTANTONS.items()}

    def test_k2(self, quintic_pipeline):
        table, _ = quintic_pipeline
        assert table.K[2] == Fraction(609250) + Fraction(2875, 8)

    def test_j_function_route_agrees(self, quintic_pipeline):
        table, je_invariants = quintic_pipeline
        assert je_invariants == {d: table.K[d] for d in range(1, 7)}

    def test_read_off_normalized_series(self, quintic, quintic_normalization):
        invariants = invariants_from_j_function(quintic_normalization.je, quintic)
        assert invariants[1] == 2875

    def test_other_geometries_refused(self):
        s = GeometrySpec(ambient_dim=5, bundle_degrees=[2, 3], trunc_order=2)
        with pytest.raises(UnsupportedGeometryError):
            invariants_from_j_function(normalize(i_function(s), s).je, s)

    def test_table_json(self, quintic_pipeline):
        table, _ = quintic_pipeline
        data = json.loads(table.model_dump_json())
        assert data["n"]["1"] == "2875"
        assert data["K"]["2"] == "4876875/8"
        assert data["integral"] is True
