"""Power sums on the simplex and the ratio-profile points of graphs.

Ratio points computed from graphs are exact :class:`fractions.Fraction`
tuples (homomorphism counts are integers).  Sampling, inverse realization and
eigenvalue-based weights work in float64.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from numbers import Rational
from typing import Sequence

import numpy as np
from scipy.optimize import least_squares

from .errors import (
    HomCountZero,
    InvalidPattern,
    InvalidSize,
    NegativeEntry,
    NotNormalizable,
    NotNormalized,
    OutOfRange,
    UniformityMismatch,
)
from .graphs import Graph, Hypergraph
from .homcount import (
    clique_edge_matrix,
    cycle_homs,
    hyperstar_hom,
    necklace_homs,
    spectrum,
)

NORMALIZATION_TOL = 1e-12


@dataclass(frozen=True)
class ProfilePoint:
    """Point ``(a_2, ..., a_l)`` of a ratio profile, possibly several ``q``-blocks long."""

    values: tuple
    block: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if self.block is None:
            object.__setattr__(self, "block", len(self.values))

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    @property
    def exact(self) -> bool:
        return all(isinstance(v, Rational) for v in self.values)

    def blocks(self) -> list[tuple]:
        b = self.block or 1
        return [self.values[i:i + b] for i in range(0, len(self.values), b)]

    def is_monotone(self, tol: float = 0.0) -> bool:
        """``1 >= a_2 >= ... >= a_l >= 0`` in every block."""
        for blk in self.blocks():
            chain = (1, *blk, 0)
            if any(a < b - tol for a, b in zip(chain, chain[1:])):
                return False
        return True

    def as_strings(self) -> list[str]:
        return [format_value(v) for v in self.values]

    def as_floats(self) -> np.ndarray:
        return np.array([float(v) for v in self.values])


def format_value(v) -> str:
    """``num/den`` for rationals, ``repr`` for floats."""
    if isinstance(v, Rational):
        f = Fraction(v)
        return f"{f.numerator}/{f.denominator}"
    return repr(float(v))


# --------------------------------------------------------------------------
# power sums
# --------------------------------------------------------------------------

def _check_weights(x) -> tuple[list, bool]:
    vals = list(x)
    exact = all(isinstance(v, Rational) for v in vals)
    if any(v < 0 for v in vals):
        raise NegativeEntry("weight vectors must be nonnegative")
    total = sum(vals, Fraction(0)) if exact else float(np.sum(np.asarray(vals, dtype=float)))
    if (exact and total != 1) or (not exact and abs(total - 1) > NORMALIZATION_TOL):
        raise NotNormalized(f"weights sum to {total}, not 1")
    return vals, exact


def power_sums(x, ell: int) -> ProfilePoint:
    """``(p_2(x), ..., p_l(x))``; exact when every entry of ``x`` is rational."""
    if ell < 2:
        raise InvalidSize(f"profile length must be at least 2, got {ell}")
    vals, exact = _check_weights(x)
    if exact:
        vals = [Fraction(v) for v in vals]
        return ProfilePoint(tuple(sum(v**j for v in vals) for j in range(2, ell + 1)))
    arr = np.asarray(vals, dtype=float)
    return ProfilePoint(tuple(float(np.sum(arr**j)) for j in range(2, ell + 1)))


def _power_sum_array(x: np.ndarray, ell: int) -> np.ndarray:
    return np.array([np.sum(x**j) for j in range(2, ell + 1)])


# --------------------------------------------------------------------------
# ratio points from graphs
# --------------------------------------------------------------------------

def _ratios(homs: dict[int, int], ell: int, base: int) -> tuple:
    h = homs[base]
    return tuple(Fraction(homs[base * j], h**j) for j in range(2, ell + 1))


def ratio_point_cycles(G: Graph, ell: int, densities: bool = False) -> ProfilePoint:
    """``(hom(C_8)/hom(C_4)^2, ..., hom(C_{4l})/hom(C_4)^l)``.

    With ``densities=True`` the same point is computed from homomorphism
    densities; the ``|V(G)|`` powers cancel, so the result is identical.
    """
    return ratio_point_necklaces(G, ell, 2, densities)


def ratio_point_necklaces(G: Graph, ell: int, q: int, densities: bool = False) -> ProfilePoint:
    if ell < 2:
        raise InvalidSize(f"profile length must be at least 2, got {ell}")
    homs = necklace_homs(G, [4 * j for j in range(1, ell + 1)], q)
    if homs[4] == 0:
        raise HomCountZero(f"hom(N_4,{q}; G) = 0", q=q)
    if not densities:
        return ProfilePoint(_ratios(homs, ell, 4))
    # N_{c,q} has c(q-1) vertices
    t = {c: Fraction(h, G.n ** (c * (q - 1))) for c, h in homs.items()}
    return ProfilePoint(tuple(t[4 * j] / t[4] ** j for j in range(2, ell + 1)))


def ratio_point_mixed(G: Graph, ell: int, r: int) -> ProfilePoint:
    """Concatenated necklace points for ``q = 2..r``."""
    if r < 2:
        raise InvalidSize(f"r must be at least 2, got {r}")
    values = []
    for q in range(2, r + 1):
        try:
            values.extend(ratio_point_necklaces(G, ell, q).values)
        except HomCountZero as exc:
            raise HomCountZero(f"hom(N_4,{q}; G) = 0 (block q={q})", q=q) from exc
    return ProfilePoint(tuple(values), block=ell - 1)


def ratio_point_hyperstars(G: Hypergraph, ell: int, k: int | None = None) -> ProfilePoint:
    """``(hom(S_{2k})/hom(S_k)^2, ..., hom(S_{lk})/hom(S_k)^l)`` for k-uniform ``G``."""
    k = G.k if k is None else k
    if k != G.k:
        raise UniformityMismatch(f"k={k} but the hypergraph is {G.k}-uniform")
    if ell < 2:
        raise InvalidSize(f"profile length must be at least 2, got {ell}")
    homs = {j * k: hyperstar_hom(G, j * k) for j in range(1, ell + 1)}
    if homs[k] == 0:
        raise HomCountZero("hypergraph has no edges")
    return ProfilePoint(_ratios(homs, ell, k))


def eigen_weight_vector(G: Graph, q: int = 2, tol: float = 1e-9) -> np.ndarray:
    """``x_i = lambda_i^4 / sum lambda^4`` over the spectrum of ``M_{G,q}`` (descending order)."""
    M = clique_edge_matrix(G, q)
    if M.dim == 0 or not np.any(M.entries):
        raise HomCountZero(f"M_(G,{q}) is zero", q=q)
    lam4 = spectrum(M, tol) ** 4
    return lam4 / lam4.sum()


# --------------------------------------------------------------------------
# boundary of Pi_{n,l}
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundaryPattern:
    """Multiplicity pattern of a boundary point of ``Pi_{n,l}``.

    ``mults`` is ``(r_0, ..., r_{l-1})`` where ``r_0`` counts zero entries and
    ``r_i`` repeats ``values[i-1]``.  Type 1 has every odd ``r_i = 1``; type 2
    has every even ``r_i = 1`` (``i >= 2``) and no zero block.
    """

    kind: int
    mults: tuple
    values: tuple

    @property
    def n(self) -> int:
        return sum(self.mults)

    @property
    def collapsed(self) -> bool:
        """Coincident or zero block values: the pattern degenerates to a smaller one."""
        v = self.values
        return any(a == b for a, b in zip(v, v[1:])) or (len(v) > 0 and v[0] == 0)

    def validate(self, ell: int) -> None:
        r, x = self.mults, self.values
        if self.kind not in (1, 2):
            raise InvalidPattern(f"pattern type must be 1 or 2, got {self.kind}")
        if len(r) != ell or len(x) != ell - 1:
            raise InvalidPattern(f"need {ell} multiplicities and {ell - 1} values")
        if any(m < 0 for m in r):
            raise InvalidPattern("multiplicities must be nonnegative")
        if any(v < 0 for v in x) or any(a > b for a, b in zip(x, x[1:])):
            raise InvalidPattern("values must satisfy 0 <= x_1 <= ... <= x_{l-1}")
        for i in range(1, ell):
            odd = i % 2 == 1
            if self.kind == 1:
                if odd and r[i] != 1:
                    raise InvalidPattern(f"type 1 needs r_{i} = 1, got {r[i]}")
                if not odd and r[i] < 1:
                    raise InvalidPattern(f"type 1 needs r_{i} >= 1, got {r[i]}")
            else:
                if not odd and r[i] != 1:
                    raise InvalidPattern(f"type 2 needs r_{i} = 1, got {r[i]}")
                if odd and r[i] < 1:
                    raise InvalidPattern(f"type 2 needs r_{i} >= 1, got {r[i]}")
        if self.kind == 2 and r[0] != 0:
            raise InvalidPattern("type 2 patterns have no zero block")

    def vector(self, ell: int) -> list:
        """The normalized weight vector (zeros first, then the repeated blocks)."""
        self.validate(ell)
        exact = all(isinstance(v, Rational) for v in self.values)
        x = [Fraction(v) for v in self.values] if exact else [float(v) for v in self.values]
        total = sum(m * v for m, v in zip(self.mults[1:], x))
        if total == 0:
            raise NotNormalizable("all block values are zero")
        zero = Fraction(0) if exact else 0.0
        out = [zero] * self.mults[0]
        for m, v in zip(self.mults[1:], x):
            out.extend([v / total] * m)
        return out


def boundary_point(pattern: BoundaryPattern, ell: int) -> ProfilePoint:
    vec = pattern.vector(ell)
    if all(isinstance(v, Fraction) for v in vec):
        return power_sums(vec, ell)
    arr = np.asarray(vec, dtype=float)
    return ProfilePoint(tuple(float(np.sum(arr**j)) for j in range(2, ell + 1)))


def boundary_patterns(n: int, ell: int) -> list[tuple[int, tuple]]:
    """All ``(kind, mults)`` admissible for ``Pi_{n,l}`` (entries summing to ``n``)."""
    out = []
    for kind in (1, 2):
        free = []
        for i in range(ell):
            if i == 0:
                free.append(range(0, n + 1) if kind == 1 else range(0, 1))
            elif (i % 2 == 1) == (kind == 1):
                free.append(range(1, 2))
            else:
                free.append(range(1, n + 1))
        for mults in product(*free):
            if sum(mults) == n:
                out.append((kind, mults))
    return out


def boundary_sweep(n: int, ell: int, count: int, seed=0) -> np.ndarray:
    """Random boundary points of ``Pi_{n,l}`` over every admissible pattern."""
    rng = np.random.default_rng(seed)
    pats = boundary_patterns(n, ell)
    rows = []
    for i in range(count):
        kind, mults = pats[i % len(pats)]
        values = tuple(np.sort(rng.random(ell - 1)))
        rows.append(boundary_point(BoundaryPattern(kind, mults, values), ell).as_floats())
    return np.array(rows)


# --------------------------------------------------------------------------
# sampling and grids
# --------------------------------------------------------------------------

def dirichlet_uniform(n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform point of the ``(n-1)``-simplex via sorted uniform gaps."""
    cuts = np.sort(rng.random(n - 1))
    return np.diff(np.concatenate(([0.0], cuts, [1.0])))


def sample_profile(ell: int, n_max: int, count: int, seed=0, return_sizes: bool = False):
    """Random points of ``Pi_l``: ``n`` uniform in ``[1, n_max]``, ``x`` uniform on the simplex.

    Returns a ``(count, l-1)`` array (and the sampled ``n`` values if asked).
    """
    if count < 1:
        raise InvalidSize("count must be positive")
    if ell < 2 or n_max < 1:
        raise InvalidSize("need l >= 2 and n_max >= 1")
    rng = np.random.default_rng(seed)
    sizes = np.empty(count, dtype=np.int64)
    pts = np.empty((count, ell - 1))
    for i in range(count):
        n = int(rng.integers(1, n_max + 1))
        sizes[i] = n
        pts[i] = _power_sum_array(dirichlet_uniform(n, rng), ell)
    return (pts, sizes) if return_sizes else pts


def simplex_grid(n: int, steps: int) -> np.ndarray:
    """All points of the ``(n-1)``-simplex with coordinates in ``(1/steps) Z``."""
    if n == 1:
        return np.ones((1, 1))
    cols = np.indices((steps + 1,) * (n - 1)).reshape(n - 1, -1).T
    cols = cols[cols.sum(axis=1) <= steps]
    last = steps - cols.sum(axis=1, keepdims=True)
    return np.hstack([cols, last]) / steps


def grid_profile(n: int, ell: int, steps: int) -> np.ndarray:
    """Image of :func:`simplex_grid` under ``(p_2, ..., p_l)``."""
    x = simplex_grid(n, steps)
    return np.stack([np.sum(x**j, axis=1) for j in range(2, ell + 1)], axis=1)


# --------------------------------------------------------------------------
# inverse realization
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Infeasible:
    """No simplex vector of the requested length matched the target."""

    residual: float
    best: np.ndarray


def project_simplex(y: np.ndarray) -> np.ndarray:
    """Euclidean projection onto ``{x >= 0, sum x = 1}`` (sort-based)."""
    u = np.sort(y)[::-1]
    css = np.cumsum(u) - 1.0
    idx = np.arange(1, len(y) + 1)
    rho = np.nonzero(u - css / idx > 0)[0][-1]
    theta = css[rho] / (rho + 1)
    return np.maximum(y - theta, 0.0)


def _objective(x, a, js):
    res = np.array([np.sum(x**j) for j in js]) - a
    return float(res @ res)


def _gradient(x, a, js):
    res = np.array([np.sum(x**j) for j in js]) - a
    J = np.stack([j * x ** (j - 1) for j in js])
    return 2.0 * J.T @ res


def _descend(x, a, js, iters=200):
    """Projected gradient descent with backtracking."""
    f = _objective(x, a, js)
    step = 1.0
    for _ in range(iters):
        g = _gradient(x, a, js)
        while step > 1e-12:
            xn = project_simplex(x - step * g)
            fn = _objective(xn, a, js)
            if fn < f:
                x, f = xn, fn
                step *= 2.0
                break
            step *= 0.5
        else:
            break
    return x


def _refine(x, a, js):
    """Bound-constrained Gauss-Newton (trust-region reflective) on the
    consistent system ``p_j(x) = a_j``, ``sum x = 1``."""

    def fun(z):
        return np.concatenate([[np.sum(z**j) for j in js] - a, [np.sum(z) - 1.0]])

    def jac(z):
        rows = [j * z ** (j - 1) for j in js]
        rows.append(np.ones_like(z))
        return np.stack(rows)

    sol = least_squares(
        fun, np.clip(x, 1e-15, 1.0), jac=jac, bounds=(0.0, 1.0),
        method="trf", xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=500,
    )
    z = np.clip(sol.x, 0.0, None)
    return z / z.sum()


def realize_weights(target, n: int, tol: float = 1e-6, restarts: int = 25, seed=0):
    """Find ``x`` on the ``n``-simplex with ``(p_2(x), ..., p_l(x)) = target``.

    Multi-start: Dirichlet starting points, projected descent, then
    Gauss-Newton refinement.  Returns ``x`` (sorted descending) when the
    squared residual is at most ``tol**2``, else :class:`Infeasible` carrying
    the best residual found.  Deterministic for a fixed ``seed``.
    """
    if n < 1:
        raise InvalidSize("n must be positive")
    if tol <= 0:
        raise InvalidSize("tol must be positive")
    a = np.array([float(v) for v in target])
    js = np.arange(2, len(a) + 2)
    rng = np.random.default_rng(seed)
    best = None
    for _ in range(max(1, restarts)):
        x = dirichlet_uniform(n, rng)
        x = _descend(x, a, js)
        if n > 1:
            x = _refine(x, a, js)
        cand = np.sort(x)[::-1]
        res = _objective(cand, a, js)
        key = (res, tuple(cand))
        if best is None or key < best[0]:
            best = (key, cand)
        if res <= (tol * 1e-4) ** 2:
            break
    (res, _), x = best
    if res <= tol**2:
        return x
    return Infeasible(res, x)


# --------------------------------------------------------------------------
# fibers over ratio points
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class FiberPoint:
    """Coordinates ``b_{4i,q}``; row ``q - 2`` holds ``i = 1..l``."""

    values: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.values)
        if not rows or len({len(r) for r in rows}) != 1:
            raise InvalidSize("fiber point needs equal-length rows")
        if any(v < 0 or v > 1 for r in rows for v in r):
            raise OutOfRange("fiber coordinates must lie in [0, 1]")
        object.__setattr__(self, "values", rows)

    @classmethod
    def from_flat(cls, flat: Sequence, ell: int, r: int) -> "FiberPoint":
        if len(flat) != ell * (r - 1):
            raise InvalidSize(f"expected {ell * (r - 1)} coordinates, got {len(flat)}")
        return cls(tuple(tuple(flat[i * ell:(i + 1) * ell]) for i in range(r - 1)))

    @property
    def ell(self) -> int:
        return len(self.values[0])

    @property
    def r(self) -> int:
        return len(self.values) + 1

    def flat(self) -> list:
        return [v for row in self.values for v in row]

    def ratios(self) -> ProfilePoint:
        """Induced ratio coordinates ``b_{4i,q} / b_{4,q}^i`` for ``i = 2..l``."""
        out = []
        for row in self.values:
            if row[0] == 0:
                raise HomCountZero("b_{4,q} = 0, ratios undefined")
            out.extend(row[i - 1] / row[0] ** i for i in range(2, len(row) + 1))
        return ProfilePoint(tuple(out), block=self.ell - 1)


def fiber_scale(b: FiberPoint, t, ell: int | None = None, r: int | None = None) -> FiberPoint:
    """``b'_{4i,q} = b_{4i,q} t^{4i(q-1)}``: the effect of padding with isolated vertices."""
    if t < 0 or t > 1:
        raise OutOfRange(f"t must lie in [0, 1], got {t}")
    if (ell is not None and ell != b.ell) or (r is not None and r != b.r):
        raise InvalidSize(f"fiber point has l={b.ell}, r={b.r}")
    rows = []
    for q, row in enumerate(b.values, start=2):
        rows.append(tuple(v * t ** (4 * i * (q - 1)) for i, v in enumerate(row, start=1)))
    return FiberPoint(tuple(rows))
