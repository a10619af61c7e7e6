"""Simple undirected graphs on vertices 0..n-1 with bitset adjacency.

Includes edge-list and graph6 I/O, the generators used throughout the
package, t-clique enumeration, (non-induced) subgraph containment and an
exact chromatic number for small graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "Graph",
    "CliqueSet",
    "GraphFormatError",
    "parse_edge_list",
    "parse_graph6",
    "encode_graph6",
    "gen_complete",
    "gen_turan",
    "gen_complete_multipartite",
    "gen_random",
    "gen_cycle",
    "gen_path",
    "enumerate_cliques",
    "clique_count",
    "per_vertex_clique_counts",
    "contains_subgraph",
    "chromatic_number",
    "turan_part_sizes",
]

CHROMATIC_BUDGET = 16


class GraphFormatError(ValueError):
    """Raised when a textual graph description cannot be decoded."""


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph; ``adj[v]`` is the neighbour bitset of ``v``."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("a graph needs at least one vertex")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {v} has a neighbour out of range")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in _bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def is_complete(self) -> bool:
        return self.edge_count == comb(self.n, 2)

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1.0
        return a

    def to_graph6(self) -> str:
        return encode_graph6(self)

    def __str__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


@dataclass(frozen=True)
class CliqueSet:
    """The t-cliques of a host graph on ``n`` vertices, sorted lexicographically."""

    t: int
    n: int
    cliques: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.cliques)

    def __iter__(self):
        return iter(self.cliques)


# -- parsing -----------------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse ``"n\\nu v\\nu v..."``; duplicate edges collapse."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise GraphFormatError("empty edge list: expected vertex count on the first line")
    try:
        n = int(lines[0])
    except ValueError:
        raise GraphFormatError(f"line 1: expected vertex count, got {lines[0]!r}") from None
    if n < 1:
        raise GraphFormatError("line 1: vertex count must be positive")
    edges = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer vertex in {line!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"line {lineno}: vertex out of range 0..{n - 1}")
        if u == v:
            raise GraphFormatError(f"line {lineno}: self-loop at vertex {u}")
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def _graph6_size(data: bytes) -> tuple[int, int]:
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise GraphFormatError("truncated graph6 size header")
        digits, start = data[2:8], 8
    else:
        if len(data) < 4:
            raise GraphFormatError("truncated graph6 size header")
        digits, start = data[1:4], 4
    n = 0
    for d in digits:
        n = (n << 6) | (d - 63)
    return n, start


def parse_graph6(line: str) -> Graph:
    """Decode one graph6 string (an optional ``>>graph6<<`` header is accepted)."""
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphFormatError("empty graph6 string")
    data = s.encode("ascii", errors="replace")
    for pos, b in enumerate(data):
        if not 63 <= b <= 126:
            raise GraphFormatError(f"graph6 byte {pos} out of range: {s[pos]!r}")
    n, start = _graph6_size(data)
    if n < 1:
        raise GraphFormatError("graph6 encodes zero vertices")
    nbits = n * (n - 1) // 2
    payload = data[start:]
    need = -(-nbits // 6)
    if len(payload) < need:
        raise GraphFormatError(f"truncated graph6 payload: need {need} bytes, got {len(payload)}")
    if len(payload) > need:
        raise GraphFormatError(f"graph6 payload too long: need {need} bytes, got {len(payload)}")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = payload[k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))


def encode_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        out = [n + 63]
    elif n <= 258047:
        out = [126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)]
    else:
        out = [126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)]
    acc = nacc = 0
    for j in range(1, n):
        for i in range(j):
            acc = (acc << 1) | (g.adj[i] >> j & 1)
            nacc += 1
            if nacc == 6:
                out.append(acc + 63)
                acc = nacc = 0
    if nacc:
        out.append((acc << (6 - nacc)) + 63)
    return bytes(out).decode("ascii")


# -- generators --------------------------------------------------------------


def gen_complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << v) for v in range(n)))


def gen_cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def gen_path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def turan_part_sizes(n: int, r: int) -> tuple[int, ...]:
    """Part sizes of T_r(n), larger parts first."""
    if r < 1 or r > n:
        raise ValueError(f"need 1 <= r <= n, got r={r}, n={n}")
    q, rem = divmod(n, r)
    return tuple([q + 1] * rem + [q] * (r - rem))


def gen_complete_multipartite(sizes: Sequence[int]) -> Graph:
    """Complete multipartite graph; parts occupy consecutive vertex ranges."""
    if len(sizes) == 0:
        raise ValueError("empty part size list")
    if any(s < 1 for s in sizes):
        raise ValueError(f"part sizes must be positive: {tuple(sizes)}")
    n = sum(sizes)
    full = (1 << n) - 1
    rows = []
    lo = 0
    for s in sizes:
        part = ((1 << s) - 1) << lo
        rows.extend([full & ~part] * s)
        lo += s
    return Graph(n, tuple(rows))


def gen_turan(n: int, r: int) -> tuple[Graph, tuple[int, ...]]:
    sizes = turan_part_sizes(n, r)
    return gen_complete_multipartite(sizes), sizes


def gen_random(n: int, p: float, seed: int) -> Graph:
    """G(n, p) from numpy's PCG64 stream.

    One uniform draw per pair, pairs visited as (0,1), (0,2), ..., (n-2,n-1);
    the pair is an edge iff its draw is < p.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    rng = np.random.default_rng(seed)
    draws = rng.random(comb(n, 2))
    pairs = combinations(range(n), 2)
    return Graph.from_edges(n, [e for e, u in zip(pairs, draws) if u < p])


# -- cliques -----------------------------------------------------------------


def _check_order(t: int) -> None:
    if t < 2:
        raise ValueError(f"clique order must be at least 2, got {t}")


def _iter_cliques(g: Graph, t: int) -> Iterator[tuple[int, ...]]:
    adj = g.adj
    stack: list[int] = []

    def extend(cand: int) -> Iterator[tuple[int, ...]]:
        need = t - len(stack)
        if need == 0:
            yield tuple(stack)
            return
        while cand.bit_count() >= need:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            stack.append(v)
            yield from extend(cand & adj[v])
            stack.pop()

    yield from extend((1 << g.n) - 1)


def enumerate_cliques(g: Graph, t: int) -> CliqueSet:
    """All t-cliques as increasing tuples, in lexicographic order.

    Candidates are extended in increasing vertex order with the candidate
    set restricted to later common neighbours, so each clique is produced
    exactly once and the output is already sorted.
    """
    _check_order(t)
    return CliqueSet(t, g.n, tuple(_iter_cliques(g, t)))


def clique_count(g: Graph, t: int) -> int:
    _check_order(t)
    if t == 2:
        return g.edge_count
    return sum(1 for _ in _iter_cliques(g, t))


def per_vertex_clique_counts(g: Graph, t: int) -> list[int]:
    _check_order(t)
    counts = [0] * g.n
    for clique in _iter_cliques(g, t):
        for v in clique:
            counts[v] += 1
    return counts


def has_clique(g: Graph, k: int) -> bool:
    if k <= 1:
        return k <= g.n
    return next(_iter_cliques(g, k), None) is not None


# -- containment -------------------------------------------------------------


def _search_order(h: Graph) -> list[int]:
    # Greedy: next vertex maximises links to already placed ones, then degree.
    order: list[int] = []
    placed = 0
    remaining = set(range(h.n))
    while remaining:
        v = max(remaining, key=lambda u: ((h.adj[u] & placed).bit_count(), h.degree(u), -u))
        order.append(v)
        placed |= 1 << v
        remaining.remove(v)
    return order


def contains_subgraph(g: Graph, h: Graph) -> bool:
    """True iff ``g`` has a (not necessarily induced) subgraph isomorphic to ``h``."""
    if h.n > g.n or h.edge_count > g.edge_count:
        return False
    if h.is_complete():
        return has_clique(g, h.n)

    order = _search_order(h)
    g_deg = [g.degree(v) for v in range(g.n)]
    # Vertices of g with enough degree to host each h-vertex.
    fits = []
    for hv in order:
        d = h.degree(hv)
        fits.append(sum(1 << v for v in range(g.n) if g_deg[v] >= d))
    back = [[order.index(u) for u in _bits(h.adj[hv]) if order.index(u) < pos] for pos, hv in enumerate(order)]
    image = [0] * h.n

    def place(pos: int, used: int) -> bool:
        if pos == h.n:
            return True
        cand = fits[pos] & ~used
        for q in back[pos]:
            cand &= g.adj[image[q]]
        while cand:
            low = cand & -cand
            cand ^= low
            image[pos] = low.bit_length() - 1
            if place(pos + 1, used | low):
                return True
        return False

    return place(0, 0)


# -- colouring ---------------------------------------------------------------


def _max_clique_size(g: Graph) -> int:
    best = 1

    def expand(size: int, cand: int) -> None:
        nonlocal best
        if size > best:
            best = size
        while cand:
            if size + cand.bit_count() <= best:
                return
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            expand(size + 1, cand & g.adj[v])

    expand(0, (1 << g.n) - 1)
    return best


def _dsatur_order(g: Graph) -> list[int]:
    return sorted(range(g.n), key=lambda v: (-g.degree(v), v))


def _colourable(g: Graph, k: int, order: list[int]) -> bool:
    colour = [-1] * g.n
    # classes[c] = bitset of vertices holding colour c
    classes = [0] * k

    def assign(pos: int, used: int) -> bool:
        if pos == len(order):
            return True
        v = order[pos]
        for c in range(min(used + 1, k)):
            if classes[c] & g.adj[v]:
                continue
            classes[c] |= 1 << v
            colour[v] = c
            if assign(pos + 1, max(used, c + 1)):
                return True
            classes[c] ^= 1 << v
        colour[v] = -1
        return False

    return assign(0, 0)


def _greedy_colours(g: Graph, order: list[int]) -> int:
    colour: dict[int, int] = {}
    for v in order:
        taken = {colour[u] for u in _bits(g.adj[v]) if u in colour}
        colour[v] = next(c for c in range(g.n) if c not in taken)
    return max(colour.values()) + 1


def chromatic_number(h: Graph) -> int:
    """Exact chromatic number by branch and bound (at most 16 vertices).

    The clique number and a greedy colouring bracket the answer; each
    k in between is decided by backtracking with colour-symmetry breaking.
    """
    if h.n > CHROMATIC_BUDGET:
        raise ValueError(f"chromatic_number supports at most {CHROMATIC_BUDGET} vertices, got {h.n}")
    if h.edge_count == 0:
        return 1
    order = _dsatur_order(h)
    lo, hi = _max_clique_size(h), _greedy_colours(h, order)
    for k in range(lo, hi):
        if _colourable(h, k, order):
            return k
    return hi
