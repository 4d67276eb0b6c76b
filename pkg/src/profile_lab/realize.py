"""Graph sequences whose ratio points converge to a chosen point of ``Pi_l``.

Real-valued sizes (clique orders, branch counts, expander exponents) are
rounded to the nearest integer with ties going up.  Zero target weights are
skipped.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from numbers import Rational
from typing import Sequence

from .errors import InvalidSize, NotNormalized, ProfileLabError, ScaleTooSmall
from .graphs import Graph, Hypergraph, complete, disjoint_union, disjoint_union_hyper, hyperstar, q_ify
from .profile import ProfilePoint, power_sums, ratio_point_hyperstars, ratio_point_mixed

FAMILIES = ("cycles", "necklaces", "mixed", "hyperstars")
MATERIALIZE_LIMIT = 5000


def round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def _check_vector(y) -> tuple:
    y = tuple(y)
    if not y or any(v < 0 for v in y):
        raise NotNormalized("target weights must be nonnegative and nonempty")
    total = sum(y, Fraction(0)) if all(isinstance(v, Rational) for v in y) else float(sum(y))
    if abs(total - 1) > 1e-12:
        raise NotNormalized(f"target weights sum to {total}, not 1")
    return y


@dataclass(frozen=True)
class TargetSpec:
    """Target weights and the family parameter.

    ``y`` is one weight vector, or for the mixed family a sequence of
    ``r - 1`` vectors (``q = 2..r``).  ``param`` is ``q`` for necklaces,
    ``r`` for mixed targets and ``k`` for hyperstars.
    """

    y: tuple
    ell: int
    param: int | None = None

    def __post_init__(self):
        if self.ell < 2:
            raise InvalidSize(f"profile length must be at least 2, got {self.ell}")
        nested = len(self.y) > 0 and isinstance(self.y[0], (tuple, list))
        if nested:
            ys = tuple(_check_vector(v) for v in self.y)
            object.__setattr__(self, "y", ys)
            if self.param is None:
                object.__setattr__(self, "param", len(ys) + 1)
            elif self.param != len(ys) + 1:
                raise InvalidSize(f"r={self.param} needs {self.param - 1} weight vectors")
        else:
            object.__setattr__(self, "y", _check_vector(self.y))

    @property
    def blocks(self) -> tuple:
        return self.y if isinstance(self.y[0], tuple) else (self.y,)

    def point(self) -> ProfilePoint:
        vals = []
        for v in self.blocks:
            vals.extend(power_sums(v, self.ell).values)
        return ProfilePoint(tuple(vals), block=self.ell - 1)


@dataclass(frozen=True)
class ConvergenceRow:
    N: int
    point: ProfilePoint
    err_inf: float
    graph_size: int


# --------------------------------------------------------------------------
# constructions
# --------------------------------------------------------------------------

def clique_sizes_cycles(y: Sequence, N: int) -> list[int]:
    sizes = []
    for v in y:
        if v == 0:
            continue
        scale = float(v) ** 0.25 * N
        if scale < 1:
            raise ScaleTooSmall(f"y={v} at N={N} gives scale {scale:.4g} < 1", N=N)
        sizes.append(round_half_up(scale) + 1)
    return sizes


def clique_sizes_necklaces(y: Sequence, q: int, N: int) -> list[int]:
    if q < 2:
        raise InvalidSize(f"q must be at least 2, got {q}")
    sizes = []
    for v in y:
        if v == 0:
            continue
        scale = float(v) ** (1.0 / (4 * (q - 1))) * N
        if scale + 1 < q:
            raise ScaleTooSmall(f"y={v} at N={N} gives a clique smaller than K_{q}", N=N)
        sizes.append(round_half_up(scale) + 1)
    return sizes


def clique_sequence_cycles(y, N: int) -> Graph:
    """Disjoint union of ``K_{round(y_i^{1/4} N) + 1}`` over nonzero ``y_i``."""
    return disjoint_union([complete(m) for m in clique_sizes_cycles(_check_vector(y), N)])


def clique_sequence_necklaces(y, q: int, N: int) -> Graph:
    """Disjoint union of ``K_{round(y_i^{1/(4(q-1))} N) + 1}``."""
    return disjoint_union([complete(m) for m in clique_sizes_necklaces(_check_vector(y), q, N)])


def mixed_exponents(ys: Sequence[Sequence], N: int) -> list[tuple[int, int]]:
    """``(q, k)`` for every nonzero weight, ``k = round(log2(y N^{r-q}) / 8)``."""
    r = len(ys) + 1
    out = []
    for q, y in enumerate(ys, start=2):
        for v in y:
            if v == 0:
                continue
            k = round_half_up(math.log2(float(v) * float(N) ** (r - q)) / 8)
            out.append((q, k))
    return out


def expander_sequence_mixed(ys: Sequence[Sequence], N: int, provider) -> Graph:
    """Disjoint union of ``A(k_i^(q), q) = q_ify(provider(k_i^(q)), q)``."""
    ys = [_check_vector(y) for y in ys]
    plan = mixed_exponents(ys, N)
    for q, k in plan:
        if k < provider.min_k:
            raise ScaleTooSmall(
                f"q={q}: exponent k={k} below the {provider.name} provider minimum {provider.min_k}",
                N=N, q=q, k=k,
            )
    return disjoint_union([q_ify(provider(k), q) for q, k in plan])


def hyperstar_branches(y: Sequence, k: int, N: int) -> list[int]:
    branches = []
    for v in y:
        if v == 0:
            continue
        b = round_half_up(float(v) ** (1.0 / k) * N / factorial(k - 1))
        if b < 1:
            raise ScaleTooSmall(f"y={v} at N={N} rounds to no branches", N=N)
        branches.append(b)
    return branches


def hyperstar_sequence(y, k: int, N: int) -> Hypergraph:
    """Disjoint union of ``S^(k)_{b_i}`` with ``b_i = round(y_i^{1/k} N / (k-1)!)``."""
    if k < 2:
        raise InvalidSize(f"uniformity must be at least 2, got {k}")
    return disjoint_union_hyper([hyperstar(k, b) for b in hyperstar_branches(_check_vector(y), k, N)], k)


# --------------------------------------------------------------------------
# exact evaluation
# --------------------------------------------------------------------------

def clique_union_point(sizes: Sequence[int], ell: int, q: int = 2) -> ProfilePoint:
    """Exact necklace ratio point of ``K_{m_1} + K_{m_2} + ...`` from the clique spectra.

    ``M_{K_m,q} = c (J - I)`` with ``c = C(m-2, q-2)`` has eigenvalue
    ``(m-1)c`` once and ``-c`` with multiplicity ``m - 1``.
    """
    def hom(j):
        return sum(((m - 1) * comb(m - 2, q - 2)) ** j + (m - 1) * comb(m - 2, q - 2) ** j for m in sizes)

    h4 = hom(4)
    return ProfilePoint(tuple(Fraction(hom(4 * j), h4**j) for j in range(2, ell + 1)))


def build(target: TargetSpec, family: str, N: int, provider=None):
    """The ``N``-th graph (or hypergraph) of the sequence for ``family``."""
    if family == "cycles":
        return clique_sequence_cycles(target.y, N)
    if family == "necklaces":
        return clique_sequence_necklaces(target.y, target.param, N)
    if family == "mixed":
        return expander_sequence_mixed(target.blocks, N, provider)
    if family == "hyperstars":
        return hyperstar_sequence(target.y, target.param, N)
    raise InvalidSize(f"unknown family {family!r}; choose from {FAMILIES}")


def evaluate(target: TargetSpec, family: str, N: int, provider=None) -> tuple[ProfilePoint, int]:
    """Exact ratio point of the ``N``-th construction and its vertex count."""
    if family == "cycles":
        sizes = clique_sizes_cycles(target.y, N)
        return clique_union_point(sizes, target.ell, 2), sum(sizes)
    if family == "necklaces":
        sizes = clique_sizes_necklaces(target.y, target.param, N)
        return clique_union_point(sizes, target.ell, target.param), sum(sizes)
    G = build(target, family, N, provider)
    if family == "mixed":
        return ratio_point_mixed(G, target.ell, target.param), G.n
    return ratio_point_hyperstars(G, target.ell, target.param), G.n


def err_inf(point: ProfilePoint, target: ProfilePoint):
    return max(abs(a - b) for a, b in zip(point.values, target.values))


def convergence_experiment(target: TargetSpec, family: str, schedule: Sequence[int], provider=None) -> list[ConvergenceRow]:
    """Distance from the constructed ratio point to the target along ``schedule``."""
    if family not in FAMILIES:
        raise InvalidSize(f"unknown family {family!r}; choose from {FAMILIES}")
    schedule = [int(N) for N in schedule]
    if not schedule or any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise InvalidSize("schedule must be nonempty and strictly increasing")
    goal = target.point()
    rows = []
    for N in schedule:
        try:
            point, size = evaluate(target, family, N, provider)
        except ProfileLabError as exc:
            raise type(exc)(f"N={N}: {exc.detail}", **{**exc.info, "N": N}) from exc
        rows.append(ConvergenceRow(N, point, float(err_inf(point, goal)), size))
    return rows


def smallest_feasible_N(target: TargetSpec, family: str, provider=None, limit: int = 1 << 20) -> int:
    N = 1
    while N <= limit:
        try:
            evaluate(target, family, N, provider)
            return N
        except ScaleTooSmall:
            N += 1
    raise ScaleTooSmall(f"no feasible N up to {limit}")
