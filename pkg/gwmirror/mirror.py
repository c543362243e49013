"""
Generating functions of P^n and of split bundles over it.

All J-type series are reduced: the prefactor exp(tT/hbar) is stripped and the
divisor variable is absorbed into q, so the identity i_*(J_Y) = J_E can be
checked coefficient by coefficient.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .exact_coh import CohClass, HLaurent, assert_no_positive_hbar, ctop_split, hl_linear, hl_linear_inverse
from .exceptions import ContractViolationError, ModelMismatchError, UnsupportedGenusError
from .novikov import (
    QSeries,
    ScalarSeries,
    exp_class_over_hbar,
    exp_scalar_over_hbar,
    qs_component,
    qs_substitute,
    scalar_exp,
    scalar_inverse,
    scalar_revert,
)
from .schemas import EmbeddingModel, GeometrySpec, Mismatch, VerificationReport

logger = logging.getLogger(__name__)


class FormTag(str, Enum):
    REDUCED_J = "reduced_J"
    CAPPED_I = "capped_I"
    NORMALIZED_JE = "normalized_JE"


@dataclass(frozen=True)
class JSeries:
    """A J- or I-type series; ``uncapped`` keeps the factor before c_top(E) is applied."""

    payload: QSeries
    form_tag: FormTag
    uncapped: Optional[QSeries] = None
    geometry: Optional[GeometrySpec] = None


class Normalization(NamedTuple):
    je: JSeries
    mirror_map_f: ScalarSeries
    shift_g0: ScalarSeries
    unit_F: ScalarSeries


# --- Dimension bookkeeping ---
def expected_dim(n: int, g: int, npts: int, d: int) -> int:
    """(dim X - 3)(1 - g) + npts - K_X.beta for X = P^n, beta = d lines."""
    if g != 0:
        raise UnsupportedGenusError(f"only genus 0 is supported, got g={g}")
    if d < 0:
        raise ValueError(f"curve degree must be >= 0, got {d}")
    return (n - 3) * (1 - g) + npts + (n + 1) * d


def ed_rank(spec: GeometrySpec, d: int, pointed: bool = False) -> int:
    """Rank of E_d = H^0(f*E), or of E'_d (sections vanishing at the marking) when pointed."""
    return bundle_rank(spec.bundle_degrees, d, pointed)


def bundle_rank(l_list: Sequence[int], d: int, pointed: bool = False) -> int:
    # also used for split bundles beyond the Fano range (localization oracle)
    if d < 0:
        raise ValueError(f"curve degree must be >= 0, got {d}")
    if pointed:
        return sum(l * d for l in l_list)
    return sum(l * d + 1 for l in l_list)


def split_rank_identity(spec: GeometrySpec, d: int) -> bool:
    """rank E_d = rank E'_d + rank E, the rank shadow of c_top(E_d) = c_top(E'_d) e^*(c_top(E))."""
    return ed_rank(spec, d) == ed_rank(spec, d, pointed=True) + spec.rank


def check_dimension_constraint(je: JSeries, spec: GeometrySpec) -> List[str]:
    """
    Violations of the degree constraint for the uncapped J_E.

    The q^d coefficient of hbar^{-2-j} pushes forward c^j c_top(E'_d) from
    M_{0,1}(P^n, d), so it sits in H^{2p} with
    p = n - (expected_dim(n,0,1,d) - ed_rank(E'_d) - j).
    """
    series = je.uncapped if je.uncapped is not None else je.payload
    n = spec.ambient_dim
    violations = []
    for d, k, p, value in series.entries():
        if d == 0:
            if (k, p, value) != (0, 0, 1):
                violations.append(f"q^0 carries {value}*H^{p}*hbar^{k}")
            continue
        j = -2 - k
        allowed = n - (expected_dim(n, 0, 1, d) - ed_rank(spec, d, pointed=True) - j)
        if j < 0 or p != allowed:
            violations.append(f"q^{d} hbar^{k} H^{p} = {value} (expected H^{allowed}, j={j})")
    return violations


# --- Generating functions ---
def j_projective(n: int, order: int) -> JSeries:
    """Reduced J of P^n: the q^d coefficient is prod_{m<=d} (H + m hbar)^{-(n+1)}."""
    if n < 1:
        raise ValueError(f"P^n needs n >= 1, got {n}")
    coeffs = [HLaurent.one(n)]
    for m in range(1, order + 1):
        coeffs.append(coeffs[-1] * hl_linear_inverse(1, m, n) ** (n + 1))
    payload = QSeries(n, tuple(coeffs))
    return JSeries(payload=payload, form_tag=FormTag.REDUCED_J, uncapped=payload)


def i_function(spec: GeometrySpec) -> JSeries:
    """
    c_top(E) times sum_d q^d prod_i prod_{m<=l_i d} (l_i H + m hbar) / prod_{m<=d} (H + m hbar)^{n+1}.
    """
    n, order = spec.ambient_dim, spec.trunc_order
    ctop = ctop_split(spec.bundle_degrees, n)
    denominators = j_projective(n, order).payload
    numerator = HLaurent.one(n)
    coeffs = [HLaurent.one(n)]
    for d in range(1, order + 1):
        for l in spec.bundle_degrees:
            for m in range(l * (d - 1) + 1, l * d + 1):
                numerator = numerator * hl_linear(l, m, n)
        coeffs.append(numerator * denominators[d])
    uncapped = QSeries(n, tuple(coeffs))
    logger.info(f"built hypergeometric series for {spec.label} to order {order}")
    return JSeries(
        payload=uncapped * ctop, form_tag=FormTag.CAPPED_I, uncapped=uncapped, geometry=spec
    )


def check_j_form(series: QSeries) -> None:
    """q^0 term is 1 and every q^d (d >= 1) term lies in hbar^{-2} and below."""
    n = series.ambient_dim
    if series[0] != HLaurent.one(n):
        raise ContractViolationError(f"q^0 coefficient is {series[0]}, expected 1")
    for d in range(1, series.trunc_order + 1):
        top = series[d].max_hbar_exp()
        if top is not None and top > -2:
            raise ContractViolationError(
                f"q^{d} coefficient has an hbar^{top} part: {series[d]}"
            )


def normalize(series: JSeries, spec: GeometrySpec) -> Normalization:
    """
    Bring a hypergeometric series into J-form.

    Writes I = F + (g_0 + g_1 H)/hbar + O(hbar^-2), divides by F, removes the
    scalar shift exp(-g_0/(F hbar)) and the divisor shift exp(-f H/hbar) with
    f = g_1/F, then changes variables through the inverse of Q = q exp(f).
    """
    if series.form_tag not in (FormTag.CAPPED_I, FormTag.NORMALIZED_JE):
        raise ModelMismatchError(f"normalize expects a capped I-series, got {series.form_tag.value}")
    uncapped = series.uncapped
    if uncapped is None:
        raise ModelMismatchError("series carries no uncapped payload")
    n = spec.ambient_dim
    if uncapped.ambient_dim != n:
        raise ModelMismatchError(f"series over P^{uncapped.ambient_dim} for geometry {spec.label}")
    assert_no_positive_hbar(uncapped)

    unit_f = qs_component(uncapped, 0, 0)
    g0 = qs_component(uncapped, -1, 0)
    g1 = qs_component(uncapped, -1, 1)
    if unit_f[0] != 1 or g0[0] or g1[0]:
        raise ContractViolationError("I-series does not start with 1 + O(q)")

    inverse_f = scalar_inverse(unit_f)
    shift = g0 * inverse_f
    mirror_f = g1 * inverse_f
    result = uncapped * QSeries.from_scalar(inverse_f, n)
    if any(shift.coeffs):
        result = result * exp_scalar_over_hbar(-shift, n)
    if any(mirror_f.coeffs):
        result = result * exp_class_over_hbar(-mirror_f, n)
        order = result.trunc_order
        if order >= 1:
            mirror_map = ScalarSeries.variable(order) * scalar_exp(mirror_f)
            result = qs_substitute(result, scalar_revert(mirror_map))
        logger.info(f"applied mirror map for {spec.label}: f = {mirror_f}")

    check_j_form(result)
    ctop = ctop_split(spec.bundle_degrees, n)
    je = JSeries(
        payload=result * ctop, form_tag=FormTag.NORMALIZED_JE, uncapped=result, geometry=spec
    )
    return Normalization(je=je, mirror_map_f=mirror_f, shift_g0=shift, unit_F=unit_f)


# --- Pushforward along Y = P^1 -> P^2 ---
def _pushforward_images(model: EmbeddingModel) -> Tuple[CohClass, CohClass]:
    # i_*(1) = e H; i_*(point) = H^2, which the projection formula with i^*H = e w confirms
    n = model.ambient_dim
    return (
        CohClass.hyperplane_power(1, n, model.bundle_degree),
        CohClass.hyperplane_power(2, n),
    )


def pushforward(model: EmbeddingModel, jy: JSeries, order: int) -> QSeries:
    """i_* on classes and q^beta -> q^{e beta} on Novikov variables."""
    if jy.form_tag != FormTag.REDUCED_J or jy.payload.ambient_dim != 1:
        raise ModelMismatchError("pushforward expects the reduced J of P^1")
    e = model.bundle_degree
    if jy.payload.trunc_order < order // e:
        raise ModelMismatchError(
            f"J_Y known to order {jy.payload.trunc_order}, need {order // e} for order {order}"
        )
    n = model.ambient_dim
    unit_image, point_image = _pushforward_images(model)
    coeffs = [HLaurent.zero(n) for _ in range(order + 1)]
    for d_y in range(order // e + 1):
        terms = {
            k: unit_image * c[0] + point_image * c[1]
            for k, c in jy.payload[d_y].terms.items()
        }
        coeffs[e * d_y] = HLaurent(n, terms)
    return QSeries(n, tuple(coeffs))


def compare_series(lhs: QSeries, rhs: QSeries) -> Tuple[int, List[Mismatch]]:
    order = min(lhs.trunc_order, rhs.trunc_order)
    keys = sorted(
        {(d, k, p) for d, k, p, _ in lhs.entries() if d <= order}
        | {(d, k, p) for d, k, p, _ in rhs.entries() if d <= order}
    )
    mismatches = []
    for d, k, p in keys:
        a, b = lhs.coefficient(d, k, p), rhs.coefficient(d, k, p)
        if a != b:
            mismatches.append(Mismatch(d=d, hbar_exp=k, h_power=p, lhs=a, rhs=b))
    return len(keys), mismatches


def verify_mirror_identity(model: EmbeddingModel, order: int) -> VerificationReport:
    """Check i_*(J_Y) = J_E exactly up to q^order."""
    e = model.bundle_degree
    lhs = pushforward(model, j_projective(1, order // e), order)
    spec = GeometrySpec(ambient_dim=model.ambient_dim, bundle_degrees=[e], trunc_order=order)
    rhs = normalize(i_function(spec), spec).je.payload
    checked, mismatches = compare_series(lhs, rhs)
    if mismatches:
        first = mismatches[0]
        logger.error(
            f"{model.name}: {len(mismatches)} mismatches, first at q^{first.d} hbar^{first.hbar_exp} "
            f"H^{first.h_power}: {first.lhs} != {first.rhs}"
        )
    else:
        logger.info(f"{model.name}: i_*(J_Y) = J_E verified on {checked} coefficients")
    return VerificationReport(
        model=model.name,
        order=order,
        status="mismatch" if mismatches else "verified",
        checked=checked,
        mismatches=mismatches,
    )
