"""Exact homomorphism counts.

Two independent routes are kept side by side:

* brute force: enumerate every map ``V(H) -> V(G)`` (vectorized, in chunks)
  and test the edge conditions;
* spectral: ``hom(C_j; G) = tr(A_G^j)``, ``hom(N_{j,q}; G) = tr(M_{G,q}^j)``
  and ``hom(S^(k)_b; G) = sum_v ((k-1)! d(v))^b``.

All counts are Python ints.  Floats only appear in :func:`spectrum` and
:func:`spectrum_buckets`.

Hypergraph homomorphisms send every hyperedge of ``H`` *bijectively* onto a
hyperedge of ``G``.  This is the convention under which the hyperstar degree
formula holds, e.g. one 3-edge has ``3! = 6`` homomorphisms onto itself.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable

import numpy as np

from .errors import (
    BudgetExceeded,
    ConvergenceFailure,
    EmptyTarget,
    FeasibilityExceeded,
    InvalidSize,
    UniformityMismatch,
)
from .expander import cayley_generators, cayley_spectrum
from .graphs import Graph, Hypergraph

DEFAULT_BUDGET = 10**8
CHUNK = 1 << 20
DENSE_SPECTRUM_LIMIT = 5000


def thread_count() -> int:
    """Worker cap from ``PROFILE_LAB_THREADS`` (default: CPU count)."""
    raw = os.environ.get("PROFILE_LAB_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


# --------------------------------------------------------------------------
# brute force
# --------------------------------------------------------------------------

def _enumerate(n_target: int, n_source: int, check, budget: int, workers: int | None) -> int:
    """Count maps ``[n_source] -> [n_target]`` accepted by ``check(images)``.

    Maps are indexed in mixed radix with source vertex 0 most significant, so
    each contiguous block of indices fixes the images of a vertex prefix.
    """
    total = n_target**n_source
    if total > budget:
        raise BudgetExceeded(
            f"{n_target}^{n_source} = {total} maps exceeds the budget of {budget}", bound=total
        )
    if n_source == 0:
        return 1
    if n_target == 0:
        return 0
    powers = n_target ** np.arange(n_source - 1, -1, -1, dtype=np.int64)

    def run(lo: int, hi: int) -> int:
        count = 0
        for start in range(lo, hi, CHUNK):
            idx = np.arange(start, min(hi, start + CHUNK), dtype=np.int64)
            images = (idx[:, None] // powers[None, :]) % n_target
            count += int(np.count_nonzero(check(images)))
        return count

    # partition on the images of the first two source vertices
    prefix = min(n_source, 2)
    block = n_target ** (n_source - prefix)
    nblocks = n_target**prefix
    workers = workers or thread_count()
    if workers == 1 or total <= CHUNK:
        return run(0, total)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(lambda b: run(b * block, (b + 1) * block), range(nblocks))
        return sum(parts)


def brute_force_hom(H: Graph, G: Graph, budget: int = DEFAULT_BUDGET, workers: int | None = None) -> int:
    """Number of maps ``V(H) -> V(G)`` sending every edge of ``H`` to an edge of ``G``."""
    adj = np.zeros(G.n * G.n, dtype=bool)
    adj[G.edges[:, 0] * G.n + G.edges[:, 1]] = True
    adj[G.edges[:, 1] * G.n + G.edges[:, 0]] = True
    hedges = H.edge_list()
    n = G.n

    def check(images):
        ok = np.ones(images.shape[0], dtype=bool)
        for u, v in hedges:
            ok &= adj[images[:, u] * n + images[:, v]]
        return ok

    return _enumerate(G.n, H.n, check, budget, workers)


def brute_force_hom_hyper(
    H: Hypergraph, G: Hypergraph, budget: int = DEFAULT_BUDGET, workers: int | None = None
) -> int:
    """Maps ``V(H) -> V(G)`` sending each hyperedge bijectively onto a hyperedge."""
    if H.k != G.k:
        raise UniformityMismatch(f"source is {H.k}-uniform but target is {G.k}-uniform")
    k, n = G.k, G.n
    weights = n ** np.arange(k, dtype=np.int64)
    codes = np.array(sorted(int(np.dot(e, weights)) for e in G.edges), dtype=np.int64)
    hedges = [list(e) for e in H.edges]

    def check(images):
        ok = np.ones(images.shape[0], dtype=bool)
        for e in hedges:
            img = np.sort(images[:, e], axis=1)
            ok &= np.all(img[:, 1:] > img[:, :-1], axis=1)
            ok &= np.isin(img @ weights, codes)
        return ok

    return _enumerate(G.n, H.n, check, budget, workers)


# --------------------------------------------------------------------------
# matrices
# --------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SymmetricIntMatrix:
    """Dense symmetric integer matrix (int64 storage, exact)."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.entries)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InvalidSize("matrix must be square")
        if not np.array_equal(a, a.T):
            raise ValueError("matrix must be symmetric")
        a = a.astype(np.int64) if a.dtype != object else a
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def tolist(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.entries]

    def __eq__(self, other):
        if not isinstance(other, SymmetricIntMatrix):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)


def adjacency_matrix(G: Graph) -> SymmetricIntMatrix:
    A = np.zeros((G.n, G.n), dtype=np.int64)
    A[G.edges[:, 0], G.edges[:, 1]] = 1
    A[G.edges[:, 1], G.edges[:, 0]] = 1
    return SymmetricIntMatrix(A)


def count_cliques(cand: int, size: int, nbrs: list[int]) -> int:
    """Number of ``size``-cliques inside the vertex bitset ``cand``."""
    if size == 0:
        return 1
    if size == 1:
        return cand.bit_count()
    total = 0
    while cand.bit_count() >= size:
        v = (cand & -cand).bit_length() - 1
        cand &= cand - 1
        total += count_cliques(cand & nbrs[v], size - 1, nbrs)
    return total


def clique_edge_matrix(G: Graph, q: int) -> SymmetricIntMatrix:
    """Entry ``(u, v)``: number of ``q``-cliques of ``G`` containing edge ``{u, v}``."""
    if q < 2:
        raise InvalidSize(f"q must be at least 2, got {q}")
    if q == 2:
        return adjacency_matrix(G)
    M = np.zeros((G.n, G.n), dtype=np.int64)
    if G.is_complete():
        if G.n >= 2:
            M[:] = comb(G.n - 2, q - 2)
            np.fill_diagonal(M, 0)
        return SymmetricIntMatrix(M)
    nbrs = G.neighbor_sets()
    for u, v in G.edge_list():
        c = count_cliques(nbrs[u] & nbrs[v], q - 2, nbrs)
        M[u, v] = M[v, u] = c
    return SymmetricIntMatrix(M)


# --------------------------------------------------------------------------
# exact traces
# --------------------------------------------------------------------------

def _promote(a: np.ndarray, exponent: int) -> np.ndarray:
    """Use object dtype unless ``dim * (max row sum)^exponent`` fits in int64."""
    if a.dtype == object:
        return a
    r = int(np.abs(a).sum(axis=1).max(initial=0))
    if a.shape[0] * r**exponent < 2**62:
        return a
    return a.astype(object)


def _matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a.dot(b)


def trace_powers(M: SymmetricIntMatrix, js: Iterable[int]) -> dict[int, int]:
    """Exact ``tr(M^j)`` for every ``j`` in ``js`` by integer matrix products.

    Uses ``tr(M^{2h}) = sum(P * P)`` and ``tr(M^{2h+1}) = sum((P @ M) * P)``
    with ``P = M^h``, since ``P`` is symmetric.
    """
    js = sorted(set(int(j) for j in js))
    if any(j < 1 for j in js):
        raise InvalidSize("trace exponents must be positive")
    out: dict[int, int] = {}
    if not js:
        return out
    base = _promote(M.entries, max(js))
    if M.dim == 0:
        return {j: 0 for j in js}
    powers = {1: base}

    def power(h: int) -> np.ndarray:
        if h in powers:
            return powers[h]
        best = max(p for p in powers if p <= h)
        rest = h - best
        powers[h] = _matmul(powers[best], power(rest))
        return powers[h]

    for j in js:
        if j == 1:
            out[j] = int(np.trace(base))
            continue
        h = j // 2
        P = power(h)
        if j % 2 == 0:
            out[j] = int((P * P).sum())
        else:
            out[j] = int((_matmul(P, base) * P).sum())
    return out


def trace_power(M: SymmetricIntMatrix, j: int) -> int:
    if j < 1:
        raise InvalidSize(f"exponent must be positive, got {j}")
    return trace_powers(M, [j])[j]


def _component_traces(G: Graph, q: int, js: list[int]) -> dict[int, int]:
    """``tr(M_{G,q}^j)`` summed over connected components.

    A complete component ``K_m`` has ``M = c (J - I)`` with ``c = C(m-2, q-2)``,
    whose spectrum is ``(m-1)c`` once and ``-c`` with multiplicity ``m-1``.
    Repeated components are evaluated once.
    """
    totals = {j: 0 for j in js}
    seen: dict[tuple, dict[int, int]] = {}
    for comp in G.components():
        m = len(comp)
        if m < 2:
            continue
        sub = G.subgraph(comp)
        if sub.is_complete():
            key = ("K", m)
            if key not in seen:
                c = comb(m - 2, q - 2)
                seen[key] = {j: ((m - 1) * c) ** j + (m - 1) * (-c) ** j for j in js}
        else:
            key = (m, sub.edges.tobytes())
            if key not in seen:
                seen[key] = trace_powers(clique_edge_matrix(sub, q), js)
        for j in js:
            totals[j] += seen[key][j]
    return totals


def cycle_homs(G: Graph, js: Iterable[int]) -> dict[int, int]:
    js = sorted(set(js))
    if any(j < 3 for j in js):
        raise InvalidSize("cycles need length at least 3")
    return _component_traces(G, 2, js)


def cycle_hom(G: Graph, j: int) -> int:
    """``hom(C_j; G) = tr(A_G^j)``."""
    return cycle_homs(G, [j])[j]


def necklace_homs(G: Graph, js: Iterable[int], q: int) -> dict[int, int]:
    js = sorted(set(js))
    if any(j < 3 for j in js):
        raise InvalidSize("necklaces need length at least 3")
    if q < 2:
        raise InvalidSize(f"q must be at least 2, got {q}")
    return _component_traces(G, q, js)


def necklace_hom(G: Graph, j: int, q: int) -> int:
    """``hom(N_{j,q}; G) = tr(M_{G,q}^j)``."""
    return necklace_homs(G, [j], q)[j]


def hyperstar_hom(G: Hypergraph, b: int) -> int:
    """``hom(S^(k)_b; G) = sum_v ((k-1)! d(v))^b``."""
    if b < 1:
        raise InvalidSize(f"a hyperstar needs at least one branch, got {b}")
    f = factorial(G.k - 1)
    return sum((f * d) ** b for d in G.degrees())


def density(H: Graph, G: Graph, budget: int = DEFAULT_BUDGET) -> Fraction:
    """``t(H; G) = hom(H; G) / |V(G)|^|V(H)|`` as an exact fraction."""
    if G.n == 0:
        raise EmptyTarget("density is undefined for an empty target")
    return Fraction(brute_force_hom(H, G, budget), G.n**H.n)


# --------------------------------------------------------------------------
# floating-point diagnostics
# --------------------------------------------------------------------------

def _check_spectrum(ev, M: SymmetricIntMatrix, tol: float) -> bool:
    exact = trace_powers(M, [2, 4])
    top = max(1.0, float(np.max(np.abs(ev), initial=0.0)))
    for j in (2, 4):
        approx = float(np.sum(np.asarray(ev, dtype=float) ** j))
        if abs(approx - exact[j]) > M.dim * top**j * tol * j:
            return False
    return True


def spectrum(M: SymmetricIntMatrix, tol: float = 1e-9) -> np.ndarray:
    """All eigenvalues of ``M`` in descending order.

    The float64 result is checked against exact traces of ``M^2`` and
    ``M^4``; on failure it is recomputed in extended precision with mpmath
    (small matrices only) before giving up.
    """
    if M.dim < 1:
        raise InvalidSize("spectrum needs a nonempty matrix")
    ev = np.sort(np.linalg.eigvalsh(M.entries.astype(float)))[::-1]
    if _check_spectrum(ev, M, tol):
        return ev
    if M.dim <= 200:
        import mpmath

        with mpmath.workdps(50):
            E = mpmath.eigsy(mpmath.matrix(M.tolist()), eigvals_only=True)
            ev = np.sort(np.array([float(x) for x in E]))[::-1]
        if _check_spectrum(ev, M, tol):
            return ev
    raise ConvergenceFailure(f"eigenvalues do not meet tolerance {tol}")


@dataclass(frozen=True)
class SpectrumBuckets:
    top: float
    mid_count: int
    mid_max: float
    small_count: int
    small_max: float


def _bucket(ev: np.ndarray, lo: float, tol: float) -> SpectrumBuckets:
    ev = np.sort(np.asarray(ev, dtype=float))[::-1]
    top = float(ev[0])
    rest = np.abs(ev[1:])
    # every non-top eigenvalue clearly above ``lo`` is mid-scale, the rest O(1)
    is_mid = rest > lo + tol * max(1.0, abs(top))
    mid = rest[is_mid]
    small = rest[~is_mid]
    return SpectrumBuckets(
        top=top,
        mid_count=int(mid.size),
        mid_max=float(mid.max(initial=0.0)),
        small_count=int(small.size),
        small_max=float(small.max(initial=0.0)),
    )


def bucket_thresholds(k: int) -> tuple[float, float]:
    """Geometric midpoints between the ``2^{2k}``, ``2^k`` and ``1`` scales."""
    return 2.0 ** (1.5 * k), 2.0 ** (0.5 * k)


def spectrum_buckets(
    G: Graph, p: int, k: int, tol: float = 1e-9, thresholds: tuple[float, float] | None = None
) -> SpectrumBuckets:
    """Classify the spectrum of ``M_{G,p}`` into top / ``2^k``-scale / ``O(1)`` buckets.

    Cayley graphs of ``Z_2^m`` with ``p = 2`` are diagonalized exactly by a
    Walsh-Hadamard transform; anything else goes through :func:`spectrum`.
    """
    _, lo = thresholds or bucket_thresholds(k)
    cay = cayley_generators(G) if p == 2 else None
    if cay is not None:
        ev = cayley_spectrum(*cay).astype(float)
    else:
        if G.n > DENSE_SPECTRUM_LIMIT:
            raise FeasibilityExceeded(
                f"dense spectrum of a {G.n}-vertex matrix exceeds the limit {DENSE_SPECTRUM_LIMIT}"
            )
        ev = spectrum(clique_edge_matrix(G, p), tol)
    return _bucket(ev, lo, tol)
