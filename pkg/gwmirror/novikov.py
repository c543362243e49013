"""
Truncated Novikov series in q.

``QSeries`` carries an HLaurent payload per q-degree; ``ScalarSeries`` carries
rationals and is what the mirror map is built from. Arithmetic never reads past
the truncation order, and results are truncated to the smaller input order.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Iterator, List, Optional, Tuple, Union

from .exact_coh import CohClass, HLaurent, Scalar, hl_mul
from .exceptions import (
    ContractViolationError,
    DimensionMismatchError,
    InvalidSubstitutionError,
    NonconvergentExponentialError,
    NotInvertibleError,
)

logger = logging.getLogger(__name__)


# =================================
# Scalar series
# =================================
@dataclass(frozen=True)
class ScalarSeries:
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ValueError("a series needs at least its constant term")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def trunc_order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Scalar], order: int) -> "ScalarSeries":
        """Pad with zeros or cut so the result has exactly order + 1 coefficients."""
        values = list(coeffs)[: order + 1]
        values += [0] * (order + 1 - len(values))
        return cls(tuple(values))

    @classmethod
    def zero(cls, order: int) -> "ScalarSeries":
        return cls.from_coeffs([], order)

    @classmethod
    def one(cls, order: int) -> "ScalarSeries":
        return cls.from_coeffs([1], order)

    @classmethod
    def variable(cls, order: int) -> "ScalarSeries":
        """The series q itself."""
        return cls.from_coeffs([0, 1], order)

    def __getitem__(self, d: int) -> Fraction:
        return self.coeffs[d] if 0 <= d < len(self.coeffs) else Fraction(0)

    def __add__(self, other: "ScalarSeries") -> "ScalarSeries":
        order = min(self.trunc_order, other.trunc_order)
        return ScalarSeries(tuple(self[d] + other[d] for d in range(order + 1)))

    def __neg__(self) -> "ScalarSeries":
        return ScalarSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "ScalarSeries") -> "ScalarSeries":
        return self + (-other)

    def __mul__(self, other: Union["ScalarSeries", Scalar]) -> "ScalarSeries":
        if isinstance(other, ScalarSeries):
            return scalar_mul(self, other)
        return ScalarSeries(tuple(c * other for c in self.coeffs))

    __rmul__ = __mul__

    def __str__(self) -> str:
        parts = [f"{c}*q^{d}" for d, c in enumerate(self.coeffs) if c]
        return (" + ".join(parts) or "0") + f" + O(q^{self.trunc_order + 1})"


def scalar_truncate(a: ScalarSeries, order: int) -> ScalarSeries:
    if order > a.trunc_order:
        raise ValueError(f"cannot extend a series known to order {a.trunc_order} to {order}")
    return ScalarSeries(a.coeffs[: order + 1])


def scalar_mul(a: ScalarSeries, b: ScalarSeries) -> ScalarSeries:
    order = min(a.trunc_order, b.trunc_order)
    out = [Fraction(0)] * (order + 1)
    for i in range(order + 1):
        x = a.coeffs[i]
        if not x:
            continue
        for j in range(order + 1 - i):
            out[i + j] += x * b.coeffs[j]
    return ScalarSeries(tuple(out))


def scalar_pow(a: ScalarSeries, k: int) -> ScalarSeries:
    result = ScalarSeries.one(a.trunc_order)
    for _ in range(k):
        result = scalar_mul(result, a)
    return result


def scalar_inverse(a: ScalarSeries) -> ScalarSeries:
    """1/a for a unit (nonzero constant term)."""
    if not a.coeffs[0]:
        raise NotInvertibleError("series with zero constant term is not a unit")
    inv0 = 1 / a.coeffs[0]
    out = [inv0]
    for d in range(1, a.trunc_order + 1):
        out.append(-inv0 * sum(a.coeffs[j] * out[d - j] for j in range(1, d + 1)))
    return ScalarSeries(tuple(out))


def scalar_exp(a: ScalarSeries) -> ScalarSeries:
    """exp(a) for a(0) = 0, via b' = a' b."""
    if a.coeffs[0]:
        raise NonconvergentExponentialError(f"exp of a series with constant term {a.coeffs[0]}")
    out = [Fraction(1)]
    for k in range(1, a.trunc_order + 1):
        out.append(sum(j * a.coeffs[j] * out[k - j] for j in range(1, k + 1)) / k)
    return ScalarSeries(tuple(out))


def scalar_derivative_theta(a: ScalarSeries) -> ScalarSeries:
    """q d/dq."""
    return ScalarSeries(tuple(d * c for d, c in enumerate(a.coeffs)))


def _derivative(a: ScalarSeries) -> ScalarSeries:
    # d/dq; the top coefficient is unknown and padded with zero
    return ScalarSeries.from_coeffs(
        [(d + 1) * a.coeffs[d + 1] for d in range(a.trunc_order)], a.trunc_order
    )


def _check_substitution(u: ScalarSeries) -> None:
    if u.coeffs[0] or u.trunc_order < 1 or not u.coeffs[1]:
        raise InvalidSubstitutionError(f"substitution must be q * (unit), got {u}")


def scalar_compose(a: ScalarSeries, u: ScalarSeries) -> ScalarSeries:
    """a(u(q)) for u = q * (unit), by Horner's rule."""
    _check_substitution(u)
    order = min(a.trunc_order, u.trunc_order)
    u = scalar_truncate(u, order)
    result = ScalarSeries.from_coeffs([a.coeffs[order]], order)
    for k in range(order - 1, -1, -1):
        result = scalar_mul(result, u) + ScalarSeries.from_coeffs([a.coeffs[k]], order)
    return result


def scalar_revert(w: ScalarSeries) -> ScalarSeries:
    """
    Functional inverse v of w = c*q + O(q^2), c != 0.

    Newton's method on w(v) - q = 0; each step doubles the number of correct
    coefficients, so the loop ends after about log2(order) steps.
    """
    if w.coeffs[0]:
        raise InvalidSubstitutionError(f"cannot revert a series with constant term {w.coeffs[0]}")
    if w.trunc_order < 1 or not w.coeffs[1]:
        raise NotInvertibleError("reversion needs a nonzero linear coefficient")
    order = w.trunc_order
    target = ScalarSeries.variable(order)
    v = ScalarSeries.from_coeffs([0, 1 / w.coeffs[1]], order)
    dw = _derivative(w)
    for step in range(order + 2):
        residual = scalar_compose(w, v) - target
        if not any(residual.coeffs):
            logger.debug(f"reversion converged after {step} Newton steps")
            return v
        v = v - scalar_mul(residual, scalar_inverse(scalar_compose(dw, v)))
    raise ContractViolationError("Newton reversion failed to converge")


# =================================
# Novikov series with HLaurent payloads
# =================================
@dataclass(frozen=True, eq=False)
class QSeries:
    ambient_dim: int
    coeffs: Tuple[HLaurent, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ValueError("a series needs at least its q^0 coefficient")
        for h in self.coeffs:
            if h.ambient_dim != self.ambient_dim:
                raise DimensionMismatchError(
                    f"coefficient over P^{h.ambient_dim} in a series over P^{self.ambient_dim}"
                )
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def trunc_order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, n: int, order: int) -> "QSeries":
        return cls(n, tuple(HLaurent.zero(n) for _ in range(order + 1)))

    @classmethod
    def one(cls, n: int, order: int) -> "QSeries":
        return cls(n, (HLaurent.one(n),) + tuple(HLaurent.zero(n) for _ in range(order)))

    @classmethod
    def from_scalar(cls, a: ScalarSeries, n: int, cls_: Optional[CohClass] = None) -> "QSeries":
        """a(q) * cls_ (default 1) as an hbar-free series."""
        base = cls_ if cls_ is not None else CohClass.one(n)
        return cls(n, tuple(HLaurent.from_class(base * c) for c in a.coeffs))

    def __iter__(self) -> Iterator[HLaurent]:
        return iter(self.coeffs)

    def __getitem__(self, d: int) -> HLaurent:
        return self.coeffs[d]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.coeffs == other.coeffs

    __hash__ = None

    def __add__(self, other: "QSeries") -> "QSeries":
        return qs_add(self, other)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return qs_add(self, qs_scale(other, -1))

    def __mul__(self, other: Union["QSeries", HLaurent, CohClass, Scalar]) -> "QSeries":
        if isinstance(other, QSeries):
            return qs_mul(self, other)
        return qs_scale(self, other)

    __rmul__ = __mul__

    def entries(self) -> Iterator[Tuple[int, int, int, Fraction]]:
        """Nonzero (d, hbar_exp, h_power, value) in lexicographic order."""
        for d, h in enumerate(self.coeffs):
            for k, p, v in h.entries():
                yield d, k, p, v

    def coefficient(self, d: int, hbar_exp: int, h_power: int) -> Fraction:
        return self.coeffs[d].coefficient(hbar_exp, h_power) if d <= self.trunc_order else Fraction(0)


def _check_pair(a: QSeries, b: QSeries) -> int:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError(f"series over P^{a.ambient_dim} and P^{b.ambient_dim}")
    return min(a.trunc_order, b.trunc_order)


def qs_add(a: QSeries, b: QSeries) -> QSeries:
    order = _check_pair(a, b)
    return QSeries(a.ambient_dim, tuple(a[d] + b[d] for d in range(order + 1)))


def qs_mul(a: QSeries, b: QSeries) -> QSeries:
    order = _check_pair(a, b)
    n = a.ambient_dim
    out: List[HLaurent] = [HLaurent.zero(n) for _ in range(order + 1)]
    for i in range(order + 1):
        if a[i].is_zero():
            continue
        for j in range(order + 1 - i):
            if not b[j].is_zero():
                out[i + j] = out[i + j] + hl_mul(a[i], b[j])
    return QSeries(n, tuple(out))


def qs_scale(a: QSeries, factor: Union[HLaurent, CohClass, Scalar]) -> QSeries:
    return QSeries(a.ambient_dim, tuple(h * factor for h in a.coeffs))


def qs_truncate(a: QSeries, order: int) -> QSeries:
    if order > a.trunc_order:
        raise ValueError(f"cannot extend a series known to order {a.trunc_order} to {order}")
    return QSeries(a.ambient_dim, a.coeffs[: order + 1])


def qs_component(a: QSeries, hbar_exp: int, h_power: int) -> ScalarSeries:
    """The scalar series sum_d [hbar^k H^p] a_d q^d."""
    return ScalarSeries(tuple(h.coefficient(hbar_exp, h_power) for h in a.coeffs))


def qs_substitute(a: QSeries, v: ScalarSeries) -> QSeries:
    """a(v(q)) for a substitution v = q * (unit), applied to every scalar component."""
    _check_substitution(v)
    order = min(a.trunc_order, v.trunc_order)
    n = a.ambient_dim
    keys = sorted({(k, p) for _, k, p, _ in a.entries()})
    coeffs: List[dict] = [{} for _ in range(order + 1)]
    for k, p in keys:
        composed = scalar_compose(scalar_truncate(qs_component(a, k, p), order), v)
        for d, value in enumerate(composed.coeffs):
            if value:
                coeffs[d].setdefault(k, [Fraction(0)] * (n + 1))[p] = value
    return QSeries(
        n,
        tuple(
            HLaurent(n, {k: CohClass(n, tuple(vals)) for k, vals in c.items()})
            for c in coeffs
        ),
    )


def exp_scalar_over_hbar(a: ScalarSeries, n: int) -> QSeries:
    """exp(a(q)/hbar); the q^d coefficient is sum_{k<=d} [a^k]_d / (k! hbar^k)."""
    if a.coeffs[0]:
        raise NonconvergentExponentialError(
            f"exp(a/hbar) needs a(0) = 0, got a(0) = {a.coeffs[0]}"
        )
    order = a.trunc_order
    terms: List[dict] = [{} for _ in range(order + 1)]
    power = ScalarSeries.one(order)
    for k in range(order + 1):
        for d in range(k, order + 1):
            if power.coeffs[d]:
                terms[d][-k] = CohClass.hyperplane_power(0, n, power.coeffs[d] / factorial(k))
        power = scalar_mul(power, a)
    return QSeries(n, tuple(HLaurent(n, t) for t in terms))


def exp_class_over_hbar(a: ScalarSeries, n: int) -> QSeries:
    """exp(a(q) * H / hbar); finite in H because H^{n+1} = 0."""
    order = a.trunc_order
    terms: List[dict] = [{} for _ in range(order + 1)]
    power = ScalarSeries.one(order)
    for k in range(n + 1):
        for d, value in enumerate(power.coeffs):
            if value:
                terms[d][-k] = CohClass.hyperplane_power(k, n, value / factorial(k))
        power = scalar_mul(power, a)
    return QSeries(n, tuple(HLaurent(n, t) for t in terms))


def qs_dump(a: QSeries) -> str:
    """One line 'd hbar_exp h_power value' per nonzero entry, lexicographically sorted."""
    return "".join(f"{d} {k} {p} {v}\n" for d, k, p, v in a.entries())
