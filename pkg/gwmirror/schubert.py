"""
Schubert calculus on the Grassmannian G(2, m) of lines in P^{m-1}.

Classes are indexed by two-row partitions (a, b) with m - 2 >= a >= b >= 0;
sigma_k = sigma_{k,0} are the special classes and the point class is
sigma_{m-2,m-2}.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from types import MappingProxyType
from typing import Dict, Mapping, Tuple, Union

from sympy import Poly, symbols, symmetrize

from .exceptions import DimensionMismatchError

logger = logging.getLogger(__name__)

Partition = Tuple[int, int]


@dataclass(frozen=True, eq=False)
class SchubertElt:
    m: int
    terms: Mapping[Partition, Fraction]

    def __post_init__(self) -> None:
        if self.m < 3:
            raise ValueError(f"G(2, m) needs m >= 3, got {self.m}")
        cleaned = {}
        for (a, b), coef in sorted(self.terms.items()):
            if not (self.m - 2 >= a >= b >= 0):
                raise ValueError(f"partition {(a, b)} is outside the {self.m - 2} box")
            if coef:
                cleaned[(a, b)] = Fraction(coef)
        object.__setattr__(self, "terms", MappingProxyType(cleaned))

    @classmethod
    def zero(cls, m: int) -> "SchubertElt":
        return cls(m, {})

    @property
    def box(self) -> int:
        return self.m - 2

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SchubertElt):
            return NotImplemented
        return self.m == other.m and dict(self.terms) == dict(other.terms)

    __hash__ = None

    def __add__(self, other: "SchubertElt") -> "SchubertElt":
        _check_same_grassmannian(self, other)
        out: Dict[Partition, Fraction] = dict(self.terms)
        for key, coef in other.terms.items():
            out[key] = out.get(key, Fraction(0)) + coef
        return SchubertElt(self.m, out)

    def __neg__(self) -> "SchubertElt":
        return SchubertElt(self.m, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "SchubertElt") -> "SchubertElt":
        return self + (-other)

    def __mul__(self, other: Union["SchubertElt", int, Fraction]) -> "SchubertElt":
        if isinstance(other, SchubertElt):
            return schubert_mul(self, other)
        return SchubertElt(self.m, {k: c * other for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*s{a},{b}" for (a, b), c in self.terms.items())


def _check_same_grassmannian(a: SchubertElt, b: SchubertElt) -> None:
    if a.m != b.m:
        raise DimensionMismatchError(f"G(2,{a.m}) and G(2,{b.m}) classes do not multiply")


def schubert_class(a: int, b: int, m: int) -> SchubertElt:
    """sigma_{a,b}; the zero class when (a, b) leaves the box."""
    if a < b or b < 0:
        raise ValueError(f"({a}, {b}) is not a partition")
    if a > m - 2:
        return SchubertElt.zero(m)
    return SchubertElt(m, {(a, b): Fraction(1)})


def special_class(k: int, m: int) -> SchubertElt:
    return schubert_class(k, 0, m)


def pieri_mul(a: SchubertElt, k: int) -> SchubertElt:
    """
    a * sigma_k by the Pieri rule:
    sigma_{x,y} sigma_k = sum sigma_{c,d} over c + d = x + y + k, y <= d <= x <= c <= m - 2.
    """
    if k < 0:
        raise ValueError(f"special class index must be >= 0, got {k}")
    box = a.box
    out: Dict[Partition, Fraction] = {}
    for (x, y), coef in a.terms.items():
        for d in range(y, min(x, y + k) + 1):
            c = x + y + k - d
            if c <= box:
                out[(c, d)] = out.get((c, d), Fraction(0)) + coef
    return SchubertElt(a.m, out)


def schubert_mul(a: SchubertElt, b: SchubertElt) -> SchubertElt:
    """Expands b by Giambelli, sigma_{p,q} = sigma_p sigma_q - sigma_{p+1} sigma_{q-1}, then applies Pieri."""
    _check_same_grassmannian(a, b)
    result = SchubertElt.zero(a.m)
    for (p, q), coef in b.terms.items():
        term = pieri_mul(pieri_mul(a, q), p)
        if q > 0:
            term = term - pieri_mul(pieri_mul(a, q - 1), p + 1)
        result = result + term * coef
    return result


def schubert_pow(a: SchubertElt, k: int) -> SchubertElt:
    result = schubert_class(0, 0, a.m)
    for _ in range(k):
        result = schubert_mul(result, a)
    return result


def grass_integrate(a: SchubertElt) -> Fraction:
    """Degree of the zero-dimensional part: the coefficient of sigma_{m-2,m-2}."""
    return a.terms.get((a.box, a.box), Fraction(0))


def dual_partition(partition: Partition, m: int) -> Partition:
    a, b = partition
    return (m - 2 - b, m - 2 - a)


def duality_pairing(first: Partition, second: Partition, m: int) -> Fraction:
    """Integral of sigma_first * sigma_second; 1 exactly when second is dual to first in the top degree."""
    return grass_integrate(schubert_class(*first, m) * schubert_class(*second, m))


def chern_top_sym(l: int, m: int) -> SchubertElt:
    """
    c_{l+1}(Sym^l S*) on G(2, m).

    With Chern roots x1, x2 of S*, the top class is prod_{k=0..l} (k x1 + (l-k) x2);
    rewritten in e1 = sigma_1 and e2 = sigma_{1,1}.
    """
    if l < 1:
        raise ValueError(f"symmetric power must be >= 1, got {l}")
    x1, x2 = symbols("x1 x2")
    top = prod((k * x1 + (l - k) * x2 for k in range(l + 1)), start=1)
    symmetric, remainder, defs = symmetrize(top.expand(), x1, x2, formal=True)
    if remainder != 0:
        raise ArithmeticError(f"top Chern polynomial is not symmetric: remainder {remainder}")
    (e1, _), (e2, _) = defs
    sigma_1 = special_class(1, m)
    sigma_11 = schubert_class(1, 1, m)
    result = SchubertElt.zero(m)
    for (i, j), coef in Poly(symmetric, e1, e2).terms():
        result = result + schubert_pow(sigma_1, i) * schubert_pow(sigma_11, j) * Fraction(int(coef))
    return result


def lines_dimension_matches(l: int, n: int) -> bool:
    """rank Sym^l S* = l + 1 equals dim G(2, n+1) = 2(n - 1)."""
    return l + 1 == 2 * (n - 1)


def lines_on_hypersurface(l: int, n: int) -> Fraction:
    """Number of lines on a generic degree-l hypersurface in P^n."""
    if n < 2:
        raise ValueError(f"P^n needs n >= 2 to contain lines, got {n}")
    if not lines_dimension_matches(l, n):
        logger.warning(
            f"degree mismatch: c_{l + 1}(Sym^{l} S*) on the {2 * (n - 1)}-dimensional G(2,{n + 1}) "
            "does not integrate to a count; returning 0"
        )
        return Fraction(0)
    count = grass_integrate(chern_top_sym(l, n + 1))
    logger.info(f"lines on a degree {l} hypersurface in P^{n}: {count}")
    return count
