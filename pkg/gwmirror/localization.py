"""
Torus localization for twisted integrals over M_{0,0}(P^n, d), d <= 2.

The torus acts on P^n with weights lambda_0..lambda_n. The tangent space at the
fixed point p_i has weights lambda_i - lambda_k, and O(l) restricts to p_i with
weight l * lambda_i. For d <= 2 every fixed locus is a point, so each graph
contributes a plain rational function of the weights:

    c_top(E_d) restricted to the locus / e(N^vir) / |Aut|

with e(N^vir) = e(H^0(f*T)^mov) * prod_nodes (w_F1 + w_F2) / prod_{free flags} w_F.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .exceptions import ContractViolationError, SingularWeightError, UnsupportedDegreeError
from .mirror import bundle_rank, expected_dim

logger = logging.getLogger(__name__)

WEIGHT_RANGE = 50
MAX_RETRIES_PER_TRIAL = 20

Edge = Tuple[int, int, int]


@dataclass(frozen=True)
class WeightVector:
    values: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))
        if len(set(self.values)) != len(self.values):
            raise SingularWeightError(f"torus weights must be pairwise distinct, got {self.as_strings()}")

    def __getitem__(self, i: int) -> Fraction:
        return self.values[i]

    def __len__(self) -> int:
        return len(self.values)

    def as_strings(self) -> List[str]:
        return [str(v) for v in self.values]


@dataclass(frozen=True)
class FixedGraph:
    """Fixed-point labels on vertices, (v, w, degree) on edges; vertices are indices into ``vertices``."""

    vertices: Tuple[int, ...]
    edges: Tuple[Edge, ...]
    automorphism_order: int = 1
    degree: int = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "degree", sum(e[2] for e in self.edges))
        for v, w, d in self.edges:
            if self.vertices[v] == self.vertices[w]:
                raise ValueError(f"edge {(v, w, d)} joins two vertices over the same fixed point")
        if len(self.edges) != len(self.vertices) - 1:
            raise ValueError("fixed graphs of genus 0 are trees")

    def valence(self, v: int) -> int:
        return sum((a == v) + (b == v) for a, b, _ in self.edges)

    def flags(self, v: int) -> List[Tuple[int, int]]:
        """(other endpoint label, edge degree) for each edge at vertex v."""
        out = []
        for a, b, d in self.edges:
            if a == v:
                out.append((self.vertices[b], d))
            elif b == v:
                out.append((self.vertices[a], d))
        return out


def random_weights(n: int, rng: np.random.Generator) -> WeightVector:
    """n + 1 distinct integers drawn from [-50, 50]."""
    drawn = rng.choice(np.arange(-WEIGHT_RANGE, WEIGHT_RANGE + 1), size=n + 1, replace=False)
    return WeightVector(tuple(Fraction(int(v)) for v in drawn))


def enumerate_fixed_graphs(n: int, d: int) -> List[FixedGraph]:
    if n < 1:
        raise ValueError(f"P^n needs n >= 1, got {n}")
    if d not in (1, 2):
        raise UnsupportedDegreeError(f"localization is implemented for d = 1, 2, got d={d}")
    points = range(n + 1)
    graphs = []
    if d == 1:
        for i, j in combinations(points, 2):
            graphs.append(FixedGraph(vertices=(i, j), edges=((0, 1, 1),)))
    else:
        # double cover of a line: the deck involution is the automorphism
        for i, j in combinations(points, 2):
            graphs.append(FixedGraph(vertices=(i, j), edges=((0, 1, 2),), automorphism_order=2))
        # two lines through p_j; the unordered pair {i, k} absorbs the end swap
        for j in points:
            others = [p for p in points if p != j]
            for i, k in combinations(others, 2):
                graphs.append(FixedGraph(vertices=(j, i, k), edges=((0, 1, 1), (0, 2, 1))))
            # both lines run to the same p_i; swapping them is an automorphism
            for i in others:
                graphs.append(FixedGraph(vertices=(j, i, i), edges=((0, 1, 1), (0, 2, 1)), automorphism_order=2))
    logger.info(f"enumerated {len(graphs)} fixed graphs for P^{n}, d={d}")
    return graphs


def _nonzero(value: Fraction, what: str) -> Fraction:
    if value == 0:
        raise SingularWeightError(f"{what} vanishes for these weights")
    return value


def _edge_bundle_euler(li: Fraction, lj: Fraction, d: int, l_list: Sequence[int]) -> Fraction:
    # H^0 of the pulled-back O(l): weights (a lambda_i + (ld - a) lambda_j)/d, a = 0..ld
    result = Fraction(1)
    for l in l_list:
        for a in range(l * d + 1):
            result *= (a * li + (l * d - a) * lj) / d
    return result


def _edge_tangent_euler(i: int, j: int, d: int, weights: WeightVector) -> Fraction:
    li, lj = weights[i], weights[j]
    diff = _nonzero(li - lj, f"lambda_{i} - lambda_{j}")
    along = Fraction(1)
    for b in range(1, d + 1):
        along *= Fraction(b, d) ** 2
    result = (-1) ** d * along * diff ** (2 * d)
    for k in range(len(weights)):
        if k in (i, j):
            continue
        for a in range(d + 1):
            result *= _nonzero((a * li + (d - a) * lj) / d - weights[k], f"normal weight at edge {i}-{j}")
    return result


def graph_contribution(graph: FixedGraph, n: int, l_list: Sequence[int], weights: WeightVector) -> Fraction:
    """Contribution of one fixed locus to the integral of c_top(E_d) over M_{0,0}(P^n, d)."""
    if len(weights) != n + 1:
        raise ValueError(f"P^{n} needs {n + 1} weights, got {len(weights)}")
    numerator = Fraction(1)
    denominator = Fraction(graph.automorphism_order)
    for v, w, d in graph.edges:
        i, j = graph.vertices[v], graph.vertices[w]
        numerator *= _edge_bundle_euler(weights[i], weights[j], d, l_list)
        denominator *= _edge_tangent_euler(i, j, d, weights)
    for v, i in enumerate(graph.vertices):
        li = weights[i]
        flags = graph.flags(v)
        # flag weight: tangent of the covering curve over p_i
        omegas = [(li - weights[k]) / d for k, d in flags]
        if len(flags) == 1:
            numerator *= omegas[0]
            continue
        # node: the normalization sequence divides out the fiber at p_i once per extra branch
        for _ in range(len(flags) - 1):
            fiber_e = Fraction(1)
            for l in l_list:
                fiber_e *= l * li
            denominator *= _nonzero(fiber_e, f"E at p_{i}")
            tangent = Fraction(1)
            for k in range(n + 1):
                if k != i:
                    tangent *= li - weights[k]
            numerator *= tangent
        denominator *= _nonzero(sum(omegas, Fraction(0)), f"node smoothing at p_{i}")
    return numerator / denominator


def twisted_integral_localized(n: int, l_list: Sequence[int], d: int, weights: WeightVector) -> Fraction:
    """Sum of graph contributions; independent of the weights whenever the degrees match."""
    if not dimension_matches(n, l_list, d):
        logger.warning(
            f"degree mismatch: rank E_{d} = {bundle_rank(l_list, d)} but "
            f"dim M_0,0(P^{n},{d}) = {expected_dim(n, 0, 0, d)}; returning 0"
        )
        return Fraction(0)
    return sum(
        (graph_contribution(g, n, l_list, weights) for g in enumerate_fixed_graphs(n, d)),
        Fraction(0),
    )


def dimension_matches(n: int, l_list: Sequence[int], d: int) -> bool:
    return bundle_rank(l_list, d) == expected_dim(n, 0, 0, d)


class LocalizationResult(NamedTuple):
    value: Fraction
    weight_trials: List[WeightVector]
    note: Optional[str] = None


def localize(
    n: int,
    l_list: Sequence[int],
    d: int,
    seed: int,
    trials: int = 3,
) -> LocalizationResult:
    """
    Evaluate the graph sum for ``trials`` independent weight vectors drawn from ``seed``.

    Singular draws are retried; disagreeing values raise ContractViolationError.
    """
    if any(l < 1 for l in l_list) or not l_list:
        raise ValueError(f"bundle degrees must be positive, got {list(l_list)}")
    if trials < 1:
        raise ValueError(f"need at least one weight trial, got {trials}")
    if d not in (1, 2):
        raise UnsupportedDegreeError(f"localization is implemented for d = 1, 2, got d={d}")
    if not dimension_matches(n, l_list, d):
        return LocalizationResult(
            Fraction(0), [], note=f"rank E_{d} != dim M_0,0(P^{n},{d}); the integral is zero"
        )

    rng = np.random.default_rng(seed)
    values: Dict[Tuple[Fraction, ...], Fraction] = {}
    used: List[WeightVector] = []
    retries = 0
    while len(used) < trials:
        weights = random_weights(n, rng)
        try:
            value = twisted_integral_localized(n, l_list, d, weights)
        except SingularWeightError as e:
            retries += 1
            logger.warning(f"retrying with fresh weights: {e}")
            if retries > MAX_RETRIES_PER_TRIAL * trials:
                raise
            continue
        values[weights.values] = value
        used.append(weights)

    distinct = set(values.values())
    if len(distinct) > 1:
        logger.error(f"graph sum depends on the weights: {sorted(distinct)}")
        raise ContractViolationError(f"localization values disagree across weights: {sorted(distinct)}")
    value = distinct.pop()
    logger.info(f"localized integral for P^{n}, l={list(l_list)}, d={d}: {value}")
    return LocalizationResult(value, used)
