"""Triangle-free (n, d, lambda)-graphs.

``expander(k)`` builds Alon's Cayley graph on ``Z_2^{3k}``: with ``F = GF(2^k)``
(``3`` not dividing ``k``), split ``F*`` by the top bit of ``w^7`` into
``W0`` (bit 0) and ``W1`` (bit 1), map ``w -> (w, w^3, w^5)`` into ``3k``-bit
vectors and take all sums of one vector from each side as the generating set.
The result is triangle-free and ``2^{k-1}(2^{k-1}-1)``-regular on ``2^{3k}``
vertices.

Providers are plain callables ``provider(k) -> Graph`` exposing ``min_k`` and
``name``; anything passing :func:`verify_ndlambda` may be plugged in.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from functools import lru_cache
from importlib import resources

import numpy as np
import scipy.sparse.linalg as spla

from .errors import ConstructionUnavailable, FeasibilityExceeded, InvalidSize
from .graphs import Graph

ALON_MIN_K = 4
DEFAULT_MAX_VERTICES = 2**15
DENSE_EIG_LIMIT = 1500


# --------------------------------------------------------------------------
# GF(2^k)
# --------------------------------------------------------------------------

def _poly_mod(a: int, b: int) -> int:
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


@lru_cache(maxsize=None)
def irreducible_poly(k: int) -> int:
    """Smallest (as an integer) irreducible binary polynomial of degree ``k``."""
    if k < 1:
        raise InvalidSize(f"field degree must be positive, got {k}")
    for cand in range((1 << k) | 1, 1 << (k + 1), 2):
        if all(_poly_mod(cand, d) for d in range(2, 1 << (k // 2 + 1))):
            return cand
    raise AssertionError("unreachable")


def gf_mul(a: int, b: int, k: int, poly: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> k:
            a ^= poly
    return r


def gf_pow(a: int, e: int, k: int, poly: int) -> int:
    r = 1
    while e:
        if e & 1:
            r = gf_mul(r, a, k, poly)
        a = gf_mul(a, a, k, poly)
        e >>= 1
    return r


def alon_generators(k: int) -> np.ndarray:
    """Sorted generating set of Alon's Cayley graph for parameter ``k``."""
    if k < 1 or k % 3 == 0:
        raise ConstructionUnavailable(f"the construction needs 3 not dividing k, got k={k}")
    poly = irreducible_poly(k)
    w0, w1 = [], []
    for w in range(1, 1 << k):
        (w1 if (gf_pow(w, 7, k, poly) >> (k - 1)) & 1 else w0).append(w)

    def embed(w):
        return (w << (2 * k)) | (gf_pow(w, 3, k, poly) << k) | gf_pow(w, 5, k, poly)

    a = np.array([embed(w) for w in w0], dtype=np.int64)
    b = np.array([embed(w) for w in w1], dtype=np.int64)
    gens = np.unique((a[:, None] ^ b[None, :]).ravel())
    return gens


# --------------------------------------------------------------------------
# Cayley graphs of Z_2^m
# --------------------------------------------------------------------------

def cayley_graph(dim: int, gens) -> Graph:
    gens = np.asarray(gens, dtype=np.int64)
    n = 1 << dim
    v = np.arange(n, dtype=np.int64)
    w = v[:, None] ^ gens[None, :]
    keep = v[:, None] < w
    return Graph(n, np.stack([np.broadcast_to(v[:, None], w.shape)[keep], w[keep]], axis=1))


def cayley_generators(G: Graph):
    """Return ``(dim, gens)`` if ``G`` is a Cayley graph of ``Z_2^dim`` with
    vertex labels as bit vectors, else ``None``."""
    n = G.n
    if n < 2 or n & (n - 1):
        return None
    deg = G.degrees()
    A = G.csr()
    gens = A.indices[A.indptr[0]:A.indptr[1]]
    if np.any(deg != len(gens)):
        return None
    member = np.zeros(n, dtype=bool)
    member[gens] = True
    if not np.all(member[G.edges[:, 0] ^ G.edges[:, 1]]):
        return None
    return n.bit_length() - 1, gens.astype(np.int64)


def walsh_hadamard(values: np.ndarray) -> np.ndarray:
    h = np.array(values, copy=True)
    n = h.shape[0]
    s = 1
    while s < n:
        h = h.reshape(-1, 2, s)
        h = np.stack([h[:, 0] + h[:, 1], h[:, 0] - h[:, 1]], axis=1).reshape(-1)
        s *= 2
    return h


def cayley_spectrum(dim: int, gens) -> np.ndarray:
    """Exact integer adjacency spectrum (descending) of ``Cay(Z_2^dim, gens)``."""
    ind = np.zeros(1 << dim, dtype=np.int64)
    ind[np.asarray(gens, dtype=np.int64)] = 1
    return np.sort(walsh_hadamard(ind))[::-1]


def cayley_triangles(dim: int, gens) -> int:
    gens = np.asarray(gens, dtype=np.int64)
    member = np.zeros(1 << dim, dtype=bool)
    member[gens] = True
    ordered = 0
    for start in range(0, len(gens), 1024):
        ordered += int(member[gens[start:start + 1024, None] ^ gens[None, :]].sum())
    return (1 << dim) * ordered // 6


# --------------------------------------------------------------------------
# verification
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class NdLambdaReport:
    n: int
    regular_degree: int | None
    triangle_free: bool
    lambda2: float

    def to_dict(self) -> dict:
        return asdict(self)


def triangle_count(G: Graph) -> int:
    """Exact number of triangles, ``tr(A^3) / 6``."""
    cay = cayley_generators(G)
    if cay is not None:
        return cayley_triangles(*cay)
    A = G.csr()
    total = 0
    step = max(1, 2_000_000 // max(1, int(G.degrees().max(initial=1)) ** 2))
    for start in range(0, G.n, step):
        rows = A[start:start + step]
        total += int((rows @ A).multiply(rows).sum())
    return total // 6


def verify_ndlambda(G: Graph, tol: float = 1e-9) -> NdLambdaReport:
    if G.n < 1:
        raise InvalidSize("verification needs at least one vertex")
    deg = G.degrees()
    regular = int(deg[0]) if np.all(deg == deg[0]) else None
    tri_free = triangle_count(G) == 0
    cay = cayley_generators(G)
    if G.n == 1:
        lam2 = 0.0
    elif cay is not None:
        lam2 = float(np.sort(np.abs(cayley_spectrum(*cay)))[-2])
    elif G.n <= DENSE_EIG_LIMIT:
        ev = np.linalg.eigvalsh(G.csr().toarray().astype(float))
        lam2 = float(np.sort(np.abs(ev))[-2])
    else:
        ev = spla.eigsh(G.csr().astype(float), k=4, which="LM", tol=tol, return_eigenvectors=False)
        lam2 = float(np.sort(np.abs(ev))[-2])
    if regular is not None and regular < lam2 <= regular + 1e-6:
        lam2 = float(regular)
    return NdLambdaReport(G.n, regular, tri_free, lam2)


# --------------------------------------------------------------------------
# providers
# --------------------------------------------------------------------------

def expander(k: int, max_vertices: int = DEFAULT_MAX_VERTICES) -> Graph:
    """Alon's triangle-free graph ``A(k, 2)``."""
    if k < ALON_MIN_K or k % 3 == 0:
        raise ConstructionUnavailable(
            f"k={k} unsupported: need k >= {ALON_MIN_K} and 3 not dividing k"
        )
    n = 1 << (3 * k)
    if n > max_vertices:
        raise FeasibilityExceeded(f"A({k},2) has {n} vertices, cap is {max_vertices}", n=n)
    return cayley_graph(3 * k, alon_generators(k))


def feasible_alon_ks(max_vertices: int = DEFAULT_MAX_VERTICES) -> list[int]:
    out = []
    k = ALON_MIN_K
    while (1 << (3 * k)) <= max_vertices:
        if k % 3:
            out.append(k)
        k += 1
    return out


class AlonProvider:
    name = "alon"
    min_k = ALON_MIN_K

    def __init__(self, max_vertices: int = DEFAULT_MAX_VERTICES):
        self.max_vertices = max_vertices

    def __call__(self, k: int) -> Graph:
        return expander(k, self.max_vertices)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def clebsch() -> Graph:
    """Folded 5-cube: 16 vertices, 5-regular, triangle-free."""
    return cayley_graph(4, [1, 2, 4, 8, 15])


def hoffman_singleton() -> Graph:
    """Robertson's pentagon/pentagram construction: 50 vertices, 7-regular, girth 5."""
    edges = []
    P = lambda h, j: 5 * h + j
    Q = lambda i, j: 25 + 5 * i + j
    for h in range(5):
        for j in range(5):
            edges.append((P(h, j), P(h, (j + 1) % 5)))
            edges.append((Q(h, j), Q(h, (j + 2) % 5)))
    for h in range(5):
        for i in range(5):
            for j in range(5):
                edges.append((P(h, j), Q(i, (h * i + j) % 5)))
    return Graph(50, edges)


def projective_incidence(p: int) -> Graph:
    """Point-line incidence graph of PG(2, p) for prime ``p`` (bipartite)."""
    pts = []
    for a in range(p):
        for b in range(p):
            pts.append((1, a, b))
    for b in range(p):
        pts.append((0, 1, b))
    pts.append((0, 0, 1))
    N = len(pts)
    edges = [
        (i, N + j)
        for i, x in enumerate(pts)
        for j, y in enumerate(pts)
        if sum(s * t for s, t in zip(x, y)) % p == 0
    ]
    return Graph(2 * N, edges)


def fallback_library() -> dict[str, Graph]:
    return {
        "petersen": petersen(),
        "clebsch": clebsch(),
        "hoffman_singleton": hoffman_singleton(),
        "heawood": projective_incidence(2),
        "pg23_incidence": projective_incidence(3),
    }


class FallbackProvider:
    """Small triangle-free regular graphs indexed by ``k = 0, 1, 2``."""

    name = "fallback"
    min_k = 0
    order = ("petersen", "clebsch", "hoffman_singleton")

    def __call__(self, k: int) -> Graph:
        if k < self.min_k:
            raise ConstructionUnavailable(f"fallback library starts at k={self.min_k}, got {k}")
        if k >= len(self.order):
            raise FeasibilityExceeded(f"fallback library stops at k={len(self.order) - 1}, got {k}")
        return fallback_library()[self.order[k]]


class ConstantProvider:
    """Return the same graph for every admissible ``k``."""

    def __init__(self, graph: Graph, min_k: int = 0, name: str = "constant"):
        self.graph = graph
        self.min_k = min_k
        self.name = name

    def __call__(self, k: int) -> Graph:
        if k < self.min_k:
            raise ConstructionUnavailable(f"provider starts at k={self.min_k}, got {k}")
        return self.graph


def get_provider(name: str, max_vertices: int = DEFAULT_MAX_VERTICES):
    if name == "alon":
        return AlonProvider(max_vertices)
    if name == "fallback":
        return FallbackProvider()
    if name == "petersen":
        return ConstantProvider(petersen(), name="petersen")
    raise ValueError(f"unknown provider {name!r}")


# --------------------------------------------------------------------------
# measured constants
# --------------------------------------------------------------------------

def measure_alon(k: int) -> dict:
    """Exact n, d, lambda2 and triangle count of ``A(k,2)`` without building its edge list."""
    gens = alon_generators(k)
    dim = 3 * k
    ev = np.abs(cayley_spectrum(dim, gens))
    ev.sort()
    return {
        "k": k,
        "n": 1 << dim,
        "d": int(len(gens)),
        "lambda2": int(ev[-2]),
        "triangles": cayley_triangles(dim, gens),
    }


def load_constants() -> dict:
    text = resources.files("profile_lab").joinpath("data/expander_constants.json").read_text()
    return json.loads(text)


def build_constants(ks=(4, 5, 7, 8)) -> dict:
    rows = [measure_alon(k) for k in ks]
    ratios = {
        "n_over_8k": [r["n"] / 8 ** r["k"] for r in rows],
        "d_over_4k": [r["d"] / 4 ** r["k"] for r in rows],
        "lambda2_over_2k": [r["lambda2"] / 2 ** r["k"] for r in rows],
    }
    return {
        "version": 1,
        "construction": "alon-cayley-gf2",
        "min_k": ALON_MIN_K,
        "measured": rows,
        "windows": {key: [min(v), max(v)] for key, v in ratios.items()},
    }


def check_windows(report: NdLambdaReport, k: int, constants: dict | None = None) -> bool:
    c = constants or load_constants()
    w = c["windows"]
    lo, hi = w["n_over_8k"]
    ok = lo <= report.n / 8**k <= hi
    if report.regular_degree is None:
        return False
    lo, hi = w["d_over_4k"]
    ok &= lo <= report.regular_degree / 4**k <= hi
    lo, hi = w["lambda2_over_2k"]
    return bool(ok and lo - 1e-9 <= report.lambda2 / 2**k <= hi + 1e-9)
