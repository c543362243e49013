"""
Exact arithmetic in H*(P^n, Q) = Q[H]/(H^{n+1}) and Laurent polynomials in hbar
with cohomology coefficients.

Rationals are ``fractions.Fraction`` throughout: always normalized, exact, and
serialized as ``str(Fraction)`` ("p/q" or "p").
"""
from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Tuple, Union

from .exceptions import (
    DimensionMismatchError,
    NotInvertibleError,
    PositiveHbarError,
    VanishingClassWarning,
)

logger = logging.getLogger(__name__)

Rational = Fraction
Scalar = Union[int, Fraction]


def _check_dims(a: int, b: int) -> None:
    if a != b:
        raise DimensionMismatchError(f"ambient dimensions differ: P^{a} vs P^{b}")


@dataclass(frozen=True)
class CohClass:
    """A class sum_k coeffs[k] * H^k on P^n; H^{n+1} = 0 has no slot."""

    ambient_dim: int
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.ambient_dim < 1:
            raise ValueError(f"ambient dimension must be >= 1, got {self.ambient_dim}")
        if len(self.coeffs) != self.ambient_dim + 1:
            raise DimensionMismatchError(
                f"P^{self.ambient_dim} needs {self.ambient_dim + 1} coefficients, got {len(self.coeffs)}"
            )
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    # --- constructors ---
    @classmethod
    def zero(cls, n: int) -> "CohClass":
        return cls(n, (Fraction(0),) * (n + 1))

    @classmethod
    def one(cls, n: int) -> "CohClass":
        return cls.hyperplane_power(0, n)

    @classmethod
    def hyperplane_power(cls, k: int, n: int, coefficient: Scalar = 1) -> "CohClass":
        """coefficient * H^k; the zero class once k exceeds n."""
        coeffs = [Fraction(0)] * (n + 1)
        if 0 <= k <= n:
            coeffs[k] = Fraction(coefficient)
        return cls(n, tuple(coeffs))

    # --- queries ---
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k <= self.ambient_dim else Fraction(0)

    # --- arithmetic ---
    def __add__(self, other: "CohClass") -> "CohClass":
        _check_dims(self.ambient_dim, other.ambient_dim)
        return CohClass(self.ambient_dim, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CohClass":
        return CohClass(self.ambient_dim, tuple(-a for a in self.coeffs))

    def __sub__(self, other: "CohClass") -> "CohClass":
        return self + (-other)

    def __mul__(self, other: Union["CohClass", Scalar]) -> "CohClass":
        if isinstance(other, CohClass):
            return coh_mul(self, other)
        return CohClass(self.ambient_dim, tuple(a * other for a in self.coeffs))

    __rmul__ = __mul__

    def __str__(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if c:
                parts.append(f"{c}" if k == 0 else f"{c}*H^{k}")
        return " + ".join(parts) or "0"


def coh_mul(a: CohClass, b: CohClass) -> CohClass:
    """Cup product; products landing in H^{n+1} and above are discarded."""
    _check_dims(a.ambient_dim, b.ambient_dim)
    n = a.ambient_dim
    out = [Fraction(0)] * (n + 1)
    for i, x in enumerate(a.coeffs):
        if not x:
            continue
        for j in range(n + 1 - i):
            y = b.coeffs[j]
            if y:
                out[i + j] += x * y
    return CohClass(n, tuple(out))


def coh_integrate(a: CohClass) -> Fraction:
    """Evaluation against [P^n]: the coefficient of H^n."""
    return a.coeffs[a.ambient_dim]


def ctop_split(l_list: Iterable[int], n: int) -> CohClass:
    """Top Chern class (prod l_i) * H^r of the split bundle sum_i O(l_i) on P^n."""
    degrees = list(l_list)
    if any(l < 1 for l in degrees):
        raise ValueError(f"bundle degrees must be positive, got {degrees}")
    rank = len(degrees)
    if rank > n:
        logger.warning(f"c_top of a rank {rank} bundle on P^{n} vanishes for degree reasons")
        warnings.warn(
            f"rank {rank} exceeds dim P^{n}; top Chern class is zero",
            VanishingClassWarning,
            stacklevel=2,
        )
        return CohClass.zero(n)
    return CohClass.hyperplane_power(rank, n, prod(degrees))


@dataclass(frozen=True, eq=False)
class HLaurent:
    """Finite sum of CohClass * hbar^k, k of either sign; zero classes are never stored."""

    ambient_dim: int
    terms: Mapping[int, CohClass]

    def __post_init__(self) -> None:
        cleaned = {}
        for k in sorted(self.terms):
            c = self.terms[k]
            _check_dims(self.ambient_dim, c.ambient_dim)
            if not c.is_zero():
                cleaned[int(k)] = c
        object.__setattr__(self, "terms", MappingProxyType(cleaned))

    # --- constructors ---
    @classmethod
    def zero(cls, n: int) -> "HLaurent":
        return cls(n, {})

    @classmethod
    def one(cls, n: int) -> "HLaurent":
        return cls(n, {0: CohClass.one(n)})

    @classmethod
    def from_class(cls, c: CohClass, hbar_exp: int = 0) -> "HLaurent":
        return cls(c.ambient_dim, {hbar_exp: c})

    @classmethod
    def monomial(cls, value: Scalar, hbar_exp: int, h_power: int, n: int) -> "HLaurent":
        return cls(n, {hbar_exp: CohClass.hyperplane_power(h_power, n, value)})

    # --- queries ---
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, hbar_exp: int, h_power: int) -> Fraction:
        c = self.terms.get(hbar_exp)
        return c[h_power] if c is not None else Fraction(0)

    def entries(self) -> Iterator[Tuple[int, int, Fraction]]:
        """Nonzero (hbar_exp, h_power, value) triples in lexicographic order."""
        for k, c in self.terms.items():
            for p, v in enumerate(c.coeffs):
                if v:
                    yield k, p, v

    def max_hbar_exp(self) -> int | None:
        return max(self.terms) if self.terms else None

    # --- arithmetic ---
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HLaurent):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and dict(self.terms) == dict(other.terms)

    __hash__ = None

    def __add__(self, other: "HLaurent") -> "HLaurent":
        _check_dims(self.ambient_dim, other.ambient_dim)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return HLaurent(self.ambient_dim, out)

    def __neg__(self) -> "HLaurent":
        return HLaurent(self.ambient_dim, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "HLaurent") -> "HLaurent":
        return self + (-other)

    def __mul__(self, other: Union["HLaurent", CohClass, Scalar]) -> "HLaurent":
        if isinstance(other, HLaurent):
            return hl_mul(self, other)
        if isinstance(other, CohClass):
            return HLaurent(self.ambient_dim, {k: c * other for k, c in self.terms.items()})
        return HLaurent(self.ambient_dim, {k: c * other for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "HLaurent":
        if exponent < 0:
            raise ValueError("negative powers need hl_linear_inverse")
        result = HLaurent.one(self.ambient_dim)
        for _ in range(exponent):
            result = hl_mul(result, self)
        return result

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*hbar^{k}" for k, c in self.terms.items())


def hl_mul(a: HLaurent, b: HLaurent) -> HLaurent:
    _check_dims(a.ambient_dim, b.ambient_dim)
    out: dict[int, CohClass] = {}
    for i, x in a.terms.items():
        for j, y in b.terms.items():
            term = coh_mul(x, y)
            out[i + j] = out[i + j] + term if (i + j) in out else term
    return HLaurent(a.ambient_dim, out)


def hl_linear(c: Scalar, m: Scalar, n: int) -> HLaurent:
    """The linear factor c*H + m*hbar."""
    return HLaurent(n, {0: CohClass.hyperplane_power(1, n, c), 1: CohClass.hyperplane_power(0, n, m)})


def hl_linear_inverse(c: Scalar, m: Scalar, n: int) -> HLaurent:
    """(c*H + m*hbar)^{-1} = sum_{j<=n} (-c)^j H^j / (m^{j+1} hbar^{j+1}); finite since H^{n+1} = 0."""
    if m == 0:
        raise NotInvertibleError(f"{c}*H has no inverse in Q[H]/(H^{n + 1})[hbar, 1/hbar]")
    c, m = Fraction(c), Fraction(m)
    terms = {
        -(j + 1): CohClass.hyperplane_power(j, n, (-c) ** j / m ** (j + 1))
        for j in range(n + 1)
    }
    return HLaurent(n, terms)


def assert_no_positive_hbar(x: Union[HLaurent, Iterable[HLaurent]]) -> None:
    """Raise PositiveHbarError if any coefficient carries hbar^k with k > 0."""
    payloads = [x] if isinstance(x, HLaurent) else list(x)
    for d, h in enumerate(payloads):
        top = h.max_hbar_exp()
        if top is not None and top > 0:
            raise PositiveHbarError(f"coefficient {d} contains hbar^{top}")
