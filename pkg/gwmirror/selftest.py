"""
The ``selftest`` command: randomized algebraic properties plus the cross-oracle
equalities, each summarized as a CheckResult.
"""
import logging
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

import numpy as np

from .exact_coh import CohClass, HLaurent, hl_linear, hl_linear_inverse
from .exceptions import GWMirrorError
from .instanton import QUINTIC_AMBIENT, QUINTIC_DEGREE, InstantonTable, quintic_spec, quintic_table
from .localization import localize
from .mirror import check_dimension_constraint, expected_dim, i_function, normalize, verify_mirror_identity
from .novikov import (
    QSeries,
    ScalarSeries,
    exp_scalar_over_hbar,
    qs_mul,
    qs_truncate,
    scalar_compose,
    scalar_revert,
)
from .schemas import CheckResult, EmbeddingModel, SelfTestReport
from .schubert import lines_on_hypersurface

logger = logging.getLogger(__name__)

PROPERTY_CASES = 100
LINE_COUNTS = {(3, 3): 27, (5, 4): 2875, (7, 5): 698005}


# --- Random samplers ---
def random_rational(rng: np.random.Generator, bound: int = 9) -> Fraction:
    return Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, 4)))


def random_coh_class(rng: np.random.Generator, n: int) -> CohClass:
    return CohClass(n, tuple(random_rational(rng) for _ in range(n + 1)))


def random_hlaurent(rng: np.random.Generator, n: int, low: int = -3, high: int = 1) -> HLaurent:
    return HLaurent(n, {k: random_coh_class(rng, n) for k in range(low, high + 1) if rng.random() < 0.7})


def random_qseries(rng: np.random.Generator, n: int, order: int) -> QSeries:
    return QSeries(n, tuple(random_hlaurent(rng, n, -3, 0) for _ in range(order + 1)))


def random_scalar_series(rng: np.random.Generator, order: int, constant: Fraction = Fraction(0)) -> ScalarSeries:
    return ScalarSeries((constant,) + tuple(random_rational(rng) for _ in range(order)))


def random_substitution(rng: np.random.Generator, order: int) -> ScalarSeries:
    """q * (unit) with a nonzero linear coefficient."""
    linear = Fraction(int(rng.choice([-3, -2, -1, 1, 2, 3])), int(rng.integers(1, 3)))
    tail = tuple(random_rational(rng, 4) for _ in range(order - 1))
    return ScalarSeries((Fraction(0), linear) + tail)


# --- Property checks ---
def _property(name: str, cases: int, case: Callable[[], bool]) -> CheckResult:
    failures = sum(1 for _ in range(cases) if not case())
    detail = None if not failures else f"{failures} of {cases} cases failed"
    return CheckResult(name=name, passed=not failures, cases=cases, detail=detail)


def check_ring_axioms(rng: np.random.Generator, cases: int = PROPERTY_CASES) -> CheckResult:
    def case() -> bool:
        n = int(rng.integers(1, 5))
        a, b, c = (random_hlaurent(rng, n) for _ in range(3))
        return (
            (a * b) * c == a * (b * c)
            and a * b == b * a
            and a * (b + c) == a * b + a * c
            and a * HLaurent.one(n) == a
        )

    return _property("hlaurent ring axioms", cases, case)


def check_linear_inverse(rng: np.random.Generator, cases: int = PROPERTY_CASES) -> CheckResult:
    def case() -> bool:
        n = int(rng.integers(1, 6))
        c = int(rng.integers(-6, 7))
        m = int(rng.choice([v for v in range(-8, 9) if v]))
        return hl_linear(c, m, n) * hl_linear_inverse(c, m, n) == HLaurent.one(n)

    return _property("linear factor inverse", cases, case)


def check_truncation_coherence(rng: np.random.Generator, cases: int = PROPERTY_CASES) -> CheckResult:
    def case() -> bool:
        n, order = int(rng.integers(1, 4)), int(rng.integers(1, 5))
        lower = int(rng.integers(0, order + 1))
        a, b = random_qseries(rng, n, order), random_qseries(rng, n, order)
        return qs_truncate(qs_mul(a, b), lower) == qs_mul(qs_truncate(a, lower), qs_truncate(b, lower))

    return _property("truncation coherence", cases, case)


def check_revert_compose(rng: np.random.Generator, cases: int = PROPERTY_CASES) -> CheckResult:
    def case() -> bool:
        order = int(rng.integers(1, 7))
        w = random_substitution(rng, order)
        v = scalar_revert(w)
        q = ScalarSeries.variable(order)
        return scalar_compose(w, v) == q and scalar_compose(v, w) == q

    return _property("revert/compose round trip", cases, case)


def check_exp_inverse(rng: np.random.Generator, cases: int = PROPERTY_CASES) -> CheckResult:
    def case() -> bool:
        n, order = int(rng.integers(1, 4)), int(rng.integers(0, 6))
        a = random_scalar_series(rng, order)
        return qs_mul(exp_scalar_over_hbar(a, n), exp_scalar_over_hbar(-a, n)) == QSeries.one(n, order)

    return _property("exp(a/hbar) exp(-a/hbar) = 1", cases, case)


def check_grassmannian_dimensions() -> CheckResult:
    bad = [n for n in range(3, 7) if expected_dim(n, 0, 0, 1) != 2 * (n - 1)]
    return CheckResult(
        name="expected_dim(n,0,0,1) = dim G(2,n+1)",
        passed=not bad,
        cases=4,
        detail=f"fails for n in {bad}" if bad else None,
    )


# --- Oracle and pipeline checks ---
def check_line_counts(seed: int) -> CheckResult:
    wrong: List[str] = []
    for (l, n), expected in LINE_COUNTS.items():
        schubert_value = lines_on_hypersurface(l, n)
        localized = localize(n, [l], 1, seed=seed).value
        if not (schubert_value == localized == expected):
            wrong.append(f"l={l}, n={n}: schubert {schubert_value}, localization {localized}")
    return CheckResult(
        name="lines: schubert = localization",
        passed=not wrong,
        cases=len(LINE_COUNTS),
        detail="; ".join(wrong) or None,
    )


def check_embeddings() -> CheckResult:
    failed = []
    for name, order in (("line", 8), ("conic", 6)):
        report = verify_mirror_identity(EmbeddingModel.from_name(name), order)
        if report.status != "verified":
            failed.append(f"{name}: {len(report.mismatches)} mismatches")
    return CheckResult(name="i_*(J_Y) = J_E", passed=not failed, cases=2, detail="; ".join(failed) or None)


def check_quintic_integrality(table: InstantonTable) -> CheckResult:
    integral = table.integral and table.n[1] == LINE_COUNTS[(QUINTIC_DEGREE, QUINTIC_AMBIENT)]
    return CheckResult(name="quintic integrality", passed=integral, cases=table.max_degree,
                       detail=None if integral else f"n = {table.n}")


def check_extraction_routes(table: InstantonTable, je_invariants: Dict[int, Fraction]) -> CheckResult:
    agree = all(table.K[d] == value for d, value in je_invariants.items())
    return CheckResult(name="Yukawa route = J_E route", passed=agree, cases=len(je_invariants),
                       detail=None if agree else f"{table.K} vs {je_invariants}")


def check_degree_two(table: InstantonTable, seed: int) -> CheckResult:
    localized = localize(QUINTIC_AMBIENT, [QUINTIC_DEGREE], 2, seed=seed).value
    matches = localized == table.K[2]
    return CheckResult(name="K_2 = localized degree-2 integral", passed=matches,
                       detail=None if matches else f"{table.K[2]} vs {localized}")


def check_quintic_dimensions(order: int) -> CheckResult:
    spec = quintic_spec(order)
    violations = check_dimension_constraint(normalize(i_function(spec), spec).je, spec)
    return CheckResult(name="J_E dimension constraint", passed=not violations,
                       cases=order, detail="; ".join(violations[:3]) or None)


def check_quintic(seed: int, order: int = 6) -> List[CheckResult]:
    """Quintic pipeline checks; each one fails on its own without hiding the others."""
    table, je_invariants = quintic_table(order)
    checks: List[CheckResult] = []
    checks.extend(_guarded("quintic integrality", lambda: [check_quintic_integrality(table)]))
    checks.extend(_guarded("Yukawa route = J_E route", lambda: [check_extraction_routes(table, je_invariants)]))
    checks.extend(_guarded("K_2 = localized degree-2 integral", lambda: [check_degree_two(table, seed)]))
    checks.extend(_guarded("J_E dimension constraint", lambda: [check_quintic_dimensions(order)]))
    return checks


def _guarded(name: str, check: Callable[[], List[CheckResult]]) -> List[CheckResult]:
    try:
        return check()
    except (GWMirrorError, ArithmeticError, ValueError) as e:
        logger.error(f"selftest check {name} raised: {e}")
        return [CheckResult(name=name, passed=False, detail=str(e))]


def run_selftest(seed: int) -> SelfTestReport:
    rng = np.random.default_rng(seed)
    plan: List[Tuple[str, Callable[[], List[CheckResult]]]] = [
        ("ring axioms", lambda: [check_ring_axioms(rng)]),
        ("linear inverse", lambda: [check_linear_inverse(rng)]),
        ("truncation", lambda: [check_truncation_coherence(rng)]),
        ("reversion", lambda: [check_revert_compose(rng)]),
        ("exponential", lambda: [check_exp_inverse(rng)]),
        ("dimensions", lambda: [check_grassmannian_dimensions()]),
        ("line counts", lambda: [check_line_counts(seed)]),
        ("embeddings", lambda: [check_embeddings()]),
        ("quintic", lambda: check_quintic(seed)),
    ]
    checks: List[CheckResult] = []
    for name, check in plan:
        logger.info(f"selftest: {name}")
        checks.extend(_guarded(name, check))
    status = "passed" if all(c.passed for c in checks) else "failed"
    return SelfTestReport(status=status, checks=checks)
