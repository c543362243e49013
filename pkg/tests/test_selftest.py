import pytest

from gwmirror import selftest
from gwmirror.exceptions import SingularWeightError
from gwmirror.selftest import check_grassmannian_dimensions, check_quintic, check_revert_compose


@pytest.mark.unit
class TestPropertyChecks:
    """Single selftest checks report case counts and pass"""

    def test_reversion_check(self, rng):
        result = check_revert_compose(rng, cases=20)
        assert result.passed
        assert result.cases == 20

    def test_dimension_check(self):
        assert check_grassmannian_dimensions().passed


@pytest.mark.integration
class TestQuinticChecks:
    """Quintic checks fail independently of one another"""

    def test_all_quintic_checks_pass(self):
        results = check_quintic(seed=20030, order=2)
        assert [r.name for r in results] == [
            "quintic integrality",
            "Yukawa route = J_E route",
            "K_2 = localized degree-2 integral",
            "J_E dimension constraint",
        ]
        assert all(r.passed for r in results)

    def test_broken_localization_keeps_other_results(self, monkeypatch):
        def singular(*args, **kwargs):
            raise SingularWeightError("node smoothing at p_0 vanishes for these weights")

        monkeypatch.setattr(selftest, "localize", singular)
        results = {r.name: r for r in check_quintic(seed=20030, order=2)}
        assert len(results) == 4
        assert not results["K_2 = localized degree-2 integral"].passed
        assert "vanishes" in results["K_2 = localized degree-2 integral"].detail
        assert results["quintic integrality"].passed
        assert results["Yukawa route = J_E route"].passed
        assert results["J_E dimension constraint"].passed
