"""Simple graphs, uniform hypergraphs, the constructions built from them,
and their on-disk formats (graph6 and hypergraph JSON lines).

Vertices are always the integers ``0..n-1``.  Both containers are immutable
and canonicalize their edge lists on construction, so equality is plain
structural equality of labelled graphs.
"""
from __future__ import annotations

import json
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

from .errors import FormatError, InvalidGraph, InvalidSize, UniformityMismatch

__all__ = [
    "Graph",
    "Hypergraph",
    "complete",
    "cycle",
    "empty",
    "q_ify",
    "necklace",
    "hyperstar",
    "disjoint_union",
    "disjoint_union_hyper",
    "add_isolated_vertices",
    "from_networkx",
    "clique_number",
    "to_graph6",
    "from_graph6",
    "read_graph6",
    "write_graph6",
    "to_hyper_json",
    "from_hyper_json",
    "read_hypergraphs",
    "write_hypergraphs",
]


class Graph:
    """Finite simple undirected graph on vertices ``0..n-1``.

    ``edges`` is stored as a read-only ``(m, 2)`` int64 array with ``u < v``
    in each row and rows sorted lexicographically.
    """

    __slots__ = ("n", "edges", "_cache")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] | np.ndarray = ()):
        n = int(n)
        if n < 0:
            raise InvalidGraph(f"vertex count must be nonnegative, got {n}")
        arr = np.asarray(edges if isinstance(edges, np.ndarray) else list(edges), dtype=np.int64)
        if arr.size == 0:
            arr = np.zeros((0, 2), dtype=np.int64)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise InvalidGraph("edges must be pairs")
        lo = np.minimum(arr[:, 0], arr[:, 1])
        hi = np.maximum(arr[:, 0], arr[:, 1])
        if np.any(lo == hi):
            raise InvalidGraph("loops are not allowed")
        if arr.shape[0] and (lo.min() < 0 or hi.max() >= n):
            raise InvalidGraph(f"edge endpoint outside 0..{n - 1}")
        order = np.lexsort((hi, lo))
        arr = np.stack([lo[order], hi[order]], axis=1)
        if arr.shape[0] > 1 and np.any(np.all(arr[1:] == arr[:-1], axis=1)):
            raise InvalidGraph("duplicate edges are not allowed")
        arr.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", arr)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @property
    def m(self) -> int:
        return int(self.edges.shape[0])

    def edge_list(self) -> list[tuple[int, int]]:
        return [(int(u), int(v)) for u, v in self.edges]

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.edges, other.edges)

    def __hash__(self):
        return hash((self.n, self.edges.tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def degrees(self) -> np.ndarray:
        if "deg" not in self._cache:
            deg = np.bincount(self.edges.ravel(), minlength=self.n)
            deg.setflags(write=False)
            self._cache["deg"] = deg
        return self._cache["deg"]

    def csr(self) -> sp.csr_matrix:
        """Sparse 0/1 adjacency matrix (int64)."""
        if "csr" not in self._cache:
            u, v = self.edges[:, 0], self.edges[:, 1]
            data = np.ones(2 * self.m, dtype=np.int64)
            A = sp.csr_matrix(
                (data, (np.concatenate([u, v]), np.concatenate([v, u]))), shape=(self.n, self.n)
            )
            A.sort_indices()
            self._cache["csr"] = A
        return self._cache["csr"]

    def neighbor_sets(self) -> list[int]:
        """Neighbourhoods as Python int bitsets, memoized per graph."""
        if "bits" not in self._cache:
            bits = [0] * self.n
            for u, v in self.edge_list():
                bits[u] |= 1 << v
                bits[v] |= 1 << u
            self._cache["bits"] = bits
        return self._cache["bits"]

    def components(self) -> list[np.ndarray]:
        """Vertex arrays of the connected components, ordered by smallest vertex."""
        if "comp" not in self._cache:
            if self.n == 0:
                self._cache["comp"] = []
            else:
                _, labels = sp.csgraph.connected_components(self.csr(), directed=False)
                # relabel so that components appear in order of first vertex
                _, first = np.unique(labels, return_index=True)
                order = np.argsort(first)
                comps = [np.flatnonzero(labels == lab) for lab in order]
                self._cache["comp"] = comps
        return self._cache["comp"]

    def subgraph(self, vertices: np.ndarray) -> "Graph":
        """Induced subgraph, relabelled to ``0..len(vertices)-1`` in the given order."""
        vertices = np.asarray(vertices, dtype=np.int64)
        index = np.full(self.n, -1, dtype=np.int64)
        index[vertices] = np.arange(len(vertices))
        e = index[self.edges]
        keep = np.all(e >= 0, axis=1)
        return Graph(len(vertices), e[keep])

    def is_complete(self) -> bool:
        return self.m == comb(self.n, 2)


class Hypergraph:
    """Finite k-uniform hypergraph on vertices ``0..n-1``.

    Hyperedges are sorted tuples; the edge tuple itself is sorted
    lexicographically.
    """

    __slots__ = ("n", "k", "edges", "_cache")

    def __init__(self, n: int, k: int, edges: Iterable[Sequence[int]] = ()):
        n, k = int(n), int(k)
        if n < 0:
            raise InvalidGraph(f"vertex count must be nonnegative, got {n}")
        if k < 2:
            raise InvalidGraph(f"uniformity must be at least 2, got {k}")
        canon = []
        for e in edges:
            t = tuple(sorted(int(v) for v in e))
            if len(t) != k or len(set(t)) != k:
                raise InvalidGraph(f"hyperedge {list(e)} does not have {k} distinct vertices")
            if t[0] < 0 or t[-1] >= n:
                raise InvalidGraph(f"hyperedge {list(e)} has a vertex outside 0..{n - 1}")
            canon.append(t)
        canon.sort()
        if any(a == b for a, b in zip(canon, canon[1:])):
            raise InvalidGraph("duplicate hyperedges are not allowed")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "edges", tuple(canon))
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("Hypergraph is immutable")

    @property
    def m(self) -> int:
        return len(self.edges)

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (self.n, self.k, self.edges) == (other.n, other.k, other.edges)

    def __hash__(self):
        return hash((self.n, self.k, self.edges))

    def __repr__(self):
        return f"Hypergraph(n={self.n}, k={self.k}, m={self.m})"

    def degrees(self) -> list[int]:
        """Number of hyperedges containing each vertex."""
        if "deg" not in self._cache:
            deg = [0] * self.n
            for e in self.edges:
                for v in e:
                    deg[v] += 1
            self._cache["deg"] = deg
        return list(self._cache["deg"])


# --------------------------------------------------------------------------
# constructions
# --------------------------------------------------------------------------

def empty(n: int) -> Graph:
    return Graph(n)


def complete(m: int) -> Graph:
    if m < 1:
        raise InvalidSize(f"complete graph needs at least one vertex, got {m}")
    iu = np.triu_indices(m, k=1)
    return Graph(m, np.stack(iu, axis=1))


def cycle(c: int) -> Graph:
    if c < 3:
        raise InvalidSize(f"cycle length must be at least 3, got {c}")
    v = np.arange(c)
    return Graph(c, np.stack([v, (v + 1) % c], axis=1))


def q_ify(G: Graph, q: int) -> Graph:
    """Replace every edge of ``G`` by a ``q``-clique.

    Original vertices keep their labels; the ``q - 2`` new vertices of the
    ``e``-th edge (in sorted edge order) are ``n + e*(q-2) + i``.
    """
    if q < 2:
        raise InvalidSize(f"q must be at least 2, got {q}")
    if q == 2:
        return G
    s = q - 2
    m = G.m
    new = G.n + np.arange(m * s, dtype=np.int64).reshape(m, s)
    parts = [G.edges]
    for i in range(s):
        parts.append(np.stack([G.edges[:, 0], new[:, i]], axis=1))
        parts.append(np.stack([G.edges[:, 1], new[:, i]], axis=1))
    for i, j in combinations(range(s), 2):
        parts.append(np.stack([new[:, i], new[:, j]], axis=1))
    return Graph(G.n + m * s, np.concatenate(parts))


def necklace(c: int, q: int) -> Graph:
    """The ``q``-necklace of length ``c``: the q-ification of ``C_c``."""
    return q_ify(cycle(c), q)


def hyperstar(k: int, b: int) -> Hypergraph:
    """k-uniform star with ``b`` branches; vertex 0 is the centre."""
    if k < 2:
        raise InvalidSize(f"uniformity must be at least 2, got {k}")
    if b < 1:
        raise InvalidSize(f"a hyperstar needs at least one branch, got {b}")
    edges = [(0, *range(1 + i * (k - 1), 1 + (i + 1) * (k - 1))) for i in range(b)]
    return Hypergraph(1 + b * (k - 1), k, edges)


def disjoint_union(parts: Sequence[Graph]) -> Graph:
    offset = 0
    chunks = []
    for g in parts:
        chunks.append(g.edges + offset)
        offset += g.n
    if not chunks:
        return Graph(0)
    return Graph(offset, np.concatenate(chunks))


def disjoint_union_hyper(parts: Sequence[Hypergraph], k: int | None = None) -> Hypergraph:
    if k is None:
        if not parts:
            raise InvalidSize("uniformity is needed for an empty union")
        k = parts[0].k
    offset = 0
    edges = []
    for h in parts:
        if h.k != k:
            raise UniformityMismatch(f"cannot union a {h.k}-uniform part into a {k}-uniform union")
        edges.extend(tuple(v + offset for v in e) for e in h.edges)
        offset += h.n
    return Hypergraph(offset, k, edges)


def add_isolated_vertices(G: Graph, t: int) -> Graph:
    if t < 0:
        raise InvalidSize(f"cannot add {t} vertices")
    return Graph(G.n + t, G.edges)


def from_networkx(nxg) -> Graph:
    nodes = sorted(nxg.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    return Graph(len(nodes), [(index[u], index[v]) for u, v in nxg.edges()])


def clique_number(G: Graph) -> int:
    """Exact clique number by branch and bound over neighbourhood bitsets."""
    nbrs = G.neighbor_sets()
    best = 0 if G.n == 0 else 1

    def expand(size: int, cand: int):
        nonlocal best
        if cand == 0:
            best = max(best, size)
            return
        while cand:
            if size + cand.bit_count() <= best:
                return
            v = cand.bit_length() - 1
            cand &= ~(1 << v)
            expand(size + 1, cand & nbrs[v])

    expand(0, (1 << G.n) - 1)
    return best


# --------------------------------------------------------------------------
# graph6
# --------------------------------------------------------------------------

def _encode_n(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n <= 68719476735:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise InvalidSize(f"graph6 cannot encode {n} vertices")


def to_graph6(G: Graph) -> str:
    """graph6 string (no header, no newline)."""
    n = G.n
    nbits = n * (n - 1) // 2
    nchars = -(-nbits // 6)
    # bit of pair (i, j), i < j, sits at position j(j-1)/2 + i
    u = G.edges[:, 0]
    v = G.edges[:, 1]
    pos = v * (v - 1) // 2 + u
    chars = np.zeros(nchars, dtype=np.uint8)
    np.bitwise_or.at(chars, pos // 6, (1 << (5 - pos % 6)).astype(np.uint8))
    return (_encode_n(n) + (chars + 63).tobytes()).decode("ascii")


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s:
        raise FormatError("empty graph6 string")
    data = np.frombuffer(s.encode("ascii"), dtype=np.uint8).astype(np.int64) - 63
    if np.any((data < 0) | (data > 63)):
        raise FormatError("graph6 characters must lie in the range 63..126")
    if data[0] == 63:
        if len(data) > 1 and data[1] == 63:
            head, rest = data[2:8], data[8:]
        else:
            head, rest = data[1:4], data[4:]
        n = 0
        for x in head:
            n = (n << 6) | int(x)
    else:
        n, rest = int(data[0]), data[1:]
    nbits = n * (n - 1) // 2
    if len(rest) != -(-nbits // 6):
        raise FormatError(f"graph6 body has {len(rest)} characters, expected {-(-nbits // 6)}")
    bits = np.unpackbits(rest.astype(np.uint8)[:, None], axis=1)[:, 2:].ravel()
    if np.any(bits[nbits:]):
        raise FormatError("nonzero graph6 padding")
    pos = np.flatnonzero(bits[:nbits]).astype(np.int64)
    # invert pos = j(j-1)/2 + i with 0 <= i < j
    j = ((1 + np.sqrt(1 + 8 * pos.astype(np.float64))) / 2).astype(np.int64)
    j -= (j * (j - 1) // 2 > pos)
    j += ((j + 1) * j // 2 <= pos)
    i = pos - j * (j - 1) // 2
    return Graph(n, np.stack([i, j], axis=1))


def read_graph6(path_or_stream) -> list[Graph]:
    text = _read_text(path_or_stream)
    return [from_graph6(line) for line in text.splitlines() if line.strip()]


def write_graph6(graphs: Iterable[Graph]) -> str:
    return "".join(to_graph6(g) + "\n" for g in graphs)


# --------------------------------------------------------------------------
# hypergraph JSON lines
# --------------------------------------------------------------------------

def to_hyper_json(H: Hypergraph) -> str:
    return json.dumps({"n": H.n, "k": H.k, "edges": [list(e) for e in H.edges]})


def from_hyper_json(line: str) -> Hypergraph:
    try:
        obj = json.loads(line)
        return Hypergraph(obj["n"], obj["k"], obj["edges"])
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise FormatError(f"bad hypergraph record: {exc}") from exc


def read_hypergraphs(path_or_stream) -> list[Hypergraph]:
    text = _read_text(path_or_stream)
    return [from_hyper_json(line) for line in text.splitlines() if line.strip()]


def write_hypergraphs(hypergraphs: Iterable[Hypergraph]) -> str:
    return "".join(to_hyper_json(h) + "\n" for h in hypergraphs)


def _read_text(path_or_stream) -> str:
    if hasattr(path_or_stream, "read"):
        return path_or_stream.read()
    with open(path_or_stream, "r", encoding="ascii") as fh:
        return fh.read()
