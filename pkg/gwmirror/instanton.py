"""
Quintic instanton numbers from the normalized J_E.

K(Q) = 5 + sum_d n_d d^3 Q^d / (1 - Q^d) is the Yukawa coupling in the mirror
coordinate Q; the twisted degree-d invariants are K_d = sum_{k|d} n_{d/k} / k^3.
"""
import logging
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple, Union

from pydantic import BaseModel, computed_field, model_validator
from sympy import divisors

from .exceptions import MissingDivisorError, UnsupportedGeometryError
from .mirror import JSeries, Normalization, i_function, normalize
from .novikov import (
    ScalarSeries,
    scalar_compose,
    scalar_derivative_theta,
    scalar_exp,
    scalar_inverse,
    scalar_pow,
    scalar_revert,
)
from .schemas import GeometrySpec, Rational

logger = logging.getLogger(__name__)

QUINTIC_AMBIENT = 4
QUINTIC_DEGREE = 5
QUINTIC_DISCRIMINANT = 5**5
TRIPLE_INTERSECTION = 5


def multiple_cover_sum(table: Union["InstantonTable", Mapping[int, Fraction]], d: int) -> Fraction:
    """sum_{k | d} n_{d/k} / k^3."""
    ns = table.n if isinstance(table, InstantonTable) else table
    total = Fraction(0)
    for k in divisors(d):
        if d // k not in ns:
            raise MissingDivisorError(f"n_{d // k} is needed for K_{d}")
        total += Fraction(ns[d // k]) / k**3
    return total


class InstantonTable(BaseModel):
    max_degree: int
    n: Dict[int, Rational]
    K: Dict[int, Rational]

    @model_validator(mode="after")
    def multiple_cover_relation(self) -> "InstantonTable":
        for d, value in self.K.items():
            if multiple_cover_sum(self.n, d) != value:
                raise ValueError(f"K_{d} = {value} breaks the multiple-cover relation")
        return self

    @computed_field
    @property
    def integral(self) -> bool:
        return all(value.denominator == 1 for value in self.n.values())

    def rows(self) -> List[Tuple[int, Fraction, Fraction]]:
        return [(d, self.n[d], self.K[d]) for d in sorted(self.n)]


class QuinticReport(BaseModel):
    order: int
    table: InstantonTable
    je_invariants: Dict[int, Rational]

    @computed_field
    @property
    def routes_agree(self) -> bool:
        return all(self.table.K.get(d) == value for d, value in self.je_invariants.items())

    @computed_field
    @property
    def status(self) -> str:
        return "verified" if self.routes_agree and self.table.integral else "mismatch"


def quintic_spec(order: int) -> GeometrySpec:
    return GeometrySpec(ambient_dim=QUINTIC_AMBIENT, bundle_degrees=[QUINTIC_DEGREE], trunc_order=order)


def ensure_quintic(spec: GeometrySpec) -> None:
    if spec.ambient_dim != QUINTIC_AMBIENT or spec.bundle_degrees != [QUINTIC_DEGREE]:
        raise UnsupportedGeometryError(
            f"instanton extraction is calibrated for the quintic only, got {spec.label}"
        )


def yukawa_from_normalization(norm: Normalization) -> ScalarSeries:
    """5 / ((1 - 3125 q) F^2 (q dQ/dq / Q)^3), re-expanded in Q = q exp(f)."""
    unit_f, mirror_f = norm.unit_F, norm.mirror_map_f
    order = unit_f.trunc_order
    log_derivative = ScalarSeries.one(order) + scalar_derivative_theta(mirror_f)
    discriminant = ScalarSeries.from_coeffs([1, -QUINTIC_DISCRIMINANT], order)
    denominator = discriminant * unit_f * unit_f * scalar_pow(log_derivative, 3)
    in_q = scalar_inverse(denominator) * TRIPLE_INTERSECTION
    mirror_map = ScalarSeries.variable(order) * scalar_exp(mirror_f)
    return scalar_compose(in_q, scalar_revert(mirror_map))


def yukawa_quintic(order: int) -> ScalarSeries:
    if order < 1:
        raise ValueError(f"Yukawa coupling needs order >= 1, got {order}")
    spec = quintic_spec(order)
    return yukawa_from_normalization(normalize(i_function(spec), spec))


def extract_instanton(K: ScalarSeries, order: int) -> InstantonTable:
    """Solve K_m = sum_{d | m} n_d d^3 for n_1..n_order by triangular elimination."""
    if K[0] != TRIPLE_INTERSECTION:
        raise UnsupportedGeometryError(f"Yukawa constant term must be 5, got {K[0]}")
    order = min(order, K.trunc_order)
    ns: Dict[int, Fraction] = {}
    for m in range(1, order + 1):
        lower = sum((ns[d] * d**3 for d in divisors(m) if d < m), Fraction(0))
        ns[m] = (K[m] - lower) / m**3
    table = InstantonTable(
        max_degree=order, n=ns, K={d: multiple_cover_sum(ns, d) for d in ns}
    )
    if not table.integral:
        logger.warning(f"non-integral instanton numbers up to degree {order}: {ns}")
    return table


def yukawa_from_instantons(table: InstantonTable, order: Optional[int] = None) -> ScalarSeries:
    order = table.max_degree if order is None else order
    coeffs = [Fraction(TRIPLE_INTERSECTION)]
    for m in range(1, order + 1):
        coeffs.append(sum((table.n[d] * d**3 for d in divisors(m)), Fraction(0)))
    return ScalarSeries(tuple(coeffs))


def invariants_from_j_function(je: JSeries, spec: GeometrySpec) -> Dict[int, Fraction]:
    """
    Twisted invariants read off J_E: the capped Q^d H^3 hbar^-2 coefficient is d K_d.

    Follows from the divisor equation and c_top(E_d) = c_top(E'_d) e^*(c_top(E)).
    """
    ensure_quintic(spec)
    series = je.payload
    return {
        d: series.coefficient(d, -2, 3) / d for d in range(1, series.trunc_order + 1)
    }


def quintic_table(order: int) -> Tuple[InstantonTable, Dict[int, Fraction]]:
    """Yukawa-route instanton table plus the J_E-route invariants for cross-checking."""
    spec = quintic_spec(order)
    norm = normalize(i_function(spec), spec)
    table = extract_instanton(yukawa_from_normalization(norm), order)
    logger.info(f"quintic instanton numbers to degree {order}: integral={table.integral}")
    return table, invariants_from_j_function(norm.je, spec)
