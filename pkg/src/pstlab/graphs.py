"""Simple undirected graphs: graph6 codec, matrices, and structural tests.

Vertices are dense indices 0..n-1 with n <= 62 (one graph6 size byte).
Adjacency is kept as one bitmask per vertex, which makes twin detection,
connectivity, and the n=8 corpus sweeps cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

MAX_VERTICES = 62
GRAPH6_HEADER = ">>graph6<<"


class Graph6ParseError(ValueError):
    """Malformed graph6 input; carries the offending byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class Graph:
    """Immutable simple undirected graph on vertices 0..n-1."""

    __slots__ = ("n", "adj", "_edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 1 or n > MAX_VERTICES:
            raise ValueError(f"vertex count {n} outside 1..{MAX_VERTICES}")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) outside vertex range")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.adj = tuple(adj)
        self.n = n
        self._edges = None

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        if self._edges is None:
            self._edges = frozenset(
                (u, v) for u in range(self.n) for v in range(u + 1, self.n)
                if self.adj[u] >> v & 1)
        return self._edges

    def edge_count(self) -> int:
        return sum(bin(a).count("1") for a in self.adj) // 2

    def degree(self, u: int) -> int:
        return bin(self.adj[u]).count("1")

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbours(self, u: int) -> list[int]:
        return [v for v in range(self.n) if self.adj[u] >> v & 1]

    def is_connected(self) -> bool:
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            u = 0
            f = frontier
            while f:
                if f & 1:
                    nxt |= self.adj[u]
                f >>= 1
                u += 1
            frontier = nxt & ~seen
            seen |= frontier
        return seen == (1 << self.n) - 1

    def relabel(self, perm: list[int]) -> "Graph":
        """New graph with vertex u renamed perm[u]."""
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges))

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={sorted(self.edges)})"


@dataclass(frozen=True)
class TwinPair:
    """Vertices with identical neighbourhoods away from each other."""
    u: int
    v: int
    adjacent: bool
    common_neighbours: frozenset[int]

    @property
    def k(self) -> int:
        return len(self.common_neighbours)

    @property
    def sigma(self) -> int:
        return 1 if self.adjacent else 0


@dataclass(frozen=True)
class Bipartition:
    class_a: frozenset[int]
    class_b: frozenset[int]

    def side_of(self, u: int) -> int:
        return 0 if u in self.class_a else 1


# -- graph6 ------------------------------------------------------------------

def parse_graph6(text: str) -> Graph:
    """Decode one graph6 word (optional '>>graph6<<' prefix tolerated)."""
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
    if not s:
        raise Graph6ParseError("empty graph6 word", 0)
    data = s.encode("ascii", "replace")
    for i, byte in enumerate(data):
        if byte < 63 or byte > 126:
            raise Graph6ParseError(f"byte {byte} outside graph6 range 63..126", i)
    n = data[0] - 63
    if n == 63:
        raise Graph6ParseError("multi-byte vertex counts (n > 62) unsupported", 0)
    if n < 1:
        raise Graph6ParseError("graph6 word encodes zero vertices", 0)
    need = (n * (n - 1) // 2 + 5) // 6
    if len(data) - 1 < need:
        raise Graph6ParseError(
            f"truncated edge data: need {need} bytes, have {len(data) - 1}", len(data))
    if len(data) - 1 > need:
        raise Graph6ParseError("trailing garbage after edge data", 1 + need)
    edges = []
    bit = 0
    for j in range(1, n):
        for i in range(j):
            byte = data[1 + bit // 6] - 63
            if byte >> (5 - bit % 6) & 1:
                edges.append((i, j))
            bit += 1
    return Graph(n, edges)


def write_graph6(g: Graph) -> str:
    """Canonical graph6 encoding of g's labelled edge set."""
    if g.n > MAX_VERTICES:
        raise ValueError(f"graph6 single-byte size limited to n <= {MAX_VERTICES}")
    out = [g.n + 63]
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        col = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (col >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out).decode("ascii")


# -- matrices ----------------------------------------------------------------

def adjacency(g: Graph) -> list[list[int]]:
    return [[g.adj[i] >> j & 1 for j in range(g.n)] for i in range(g.n)]


def laplacian(g: Graph) -> list[list[int]]:
    """Degree matrix minus adjacency matrix."""
    m = [[-(g.adj[i] >> j & 1) for j in range(g.n)] for i in range(g.n)]
    for i in range(g.n):
        m[i][i] = g.degree(i)
    return m


def signless_laplacian(g: Graph) -> list[list[int]]:
    """Degree matrix plus adjacency matrix."""
    m = [[g.adj[i] >> j & 1 for j in range(g.n)] for i in range(g.n)]
    for i in range(g.n):
        m[i][i] = g.degree(i)
    return m


# -- structural predicates ---------------------------------------------------

def find_twins(g: Graph) -> list[TwinPair]:
    """All unordered pairs whose neighbourhoods agree away from the pair."""
    out = []
    for u in range(g.n):
        mask_u = g.adj[u]
        for v in range(u + 1, g.n):
            pair = (1 << u) | (1 << v)
            if (mask_u & ~pair) == (g.adj[v] & ~pair):
                common = mask_u & g.adj[v]
                out.append(TwinPair(
                    u, v, bool(mask_u >> v & 1),
                    frozenset(w for w in range(g.n) if common >> w & 1)))
    return out


def bipartition(g: Graph) -> Optional[Bipartition]:
    """Two-colouring by breadth-first layering; None when an odd cycle exists."""
    colour = [-1] * g.n
    for start in range(g.n):
        if colour[start] != -1:
            continue
        colour[start] = 0
        queue = [start]
        while queue:
            u = queue.pop()
            for v in g.neighbours(u):
                if colour[v] == -1:
                    colour[v] = colour[u] ^ 1
                    queue.append(v)
                elif colour[v] == colour[u]:
                    return None
    return Bipartition(
        frozenset(i for i, c in enumerate(colour) if c == 0),
        frozenset(i for i, c in enumerate(colour) if c == 1))


def odd_cycle_witness(g: Graph) -> Optional[list[int]]:
    """An odd cycle certifying non-bipartiteness, or None if bipartite."""
    colour = [-1] * g.n
    parent = [-1] * g.n
    for start in range(g.n):
        if colour[start] != -1:
            continue
        colour[start] = 0
        order = [start]
        head = 0
        while head < len(order):
            u = order[head]
            head += 1
            for v in g.neighbours(u):
                if colour[v] == -1:
                    colour[v] = colour[u] ^ 1
                    parent[v] = u
                    order.append(v)
                elif colour[v] == colour[u]:
                    path_u, path_v = [u], [v]
                    seen = {u: 0}
                    x = u
                    while parent[x] != -1:
                        x = parent[x]
                        seen[x] = len(path_u)
                        path_u.append(x)
                    x = v
                    while x not in seen:
                        x = parent[x]
                        path_v.append(x)
                    meet = seen[x]
                    return path_u[:meet + 1] + path_v[-2::-1]
    return None


def sign_matrix(bip: Bipartition, n: int) -> list[list[int]]:
    """Diagonal +/-1 matrix from a bipartition (+1 on class_a)."""
    return [[(1 if i in bip.class_a else -1) if i == j else 0
             for j in range(n)] for i in range(n)]


# -- standard constructions --------------------------------------------------

def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))

def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])

def complete_graph(n: int) -> Graph:
    return Graph(n, ((i, j) for i in range(n) for j in range(i + 1, n)))

def complete_minus_edge(n: int) -> Graph:
    if n < 2:
        raise ValueError("need at least 2 vertices to delete an edge")
    return Graph(n, ((i, j) for i in range(n) for j in range(i + 1, n)
                     if (i, j) != (0, 1)))

def star_graph(m: int) -> Graph:
    """K_{1,m}: centre 0 with m leaves."""
    if m < 1:
        raise ValueError("star needs at least one leaf")
    return Graph(m + 1, ((0, i) for i in range(1, m + 1)))

def hypercube(k: int) -> Graph:
    """Iterated cartesian product of the one-edge graph, 2^k vertices."""
    if k < 1 or k > 5:
        raise ValueError("hypercube dimension must be 1..5")
    n = 1 << k
    return Graph(n, ((x, x ^ (1 << b)) for x in range(n) for b in range(k)
                     if x < x ^ (1 << b)))

def one_sum_chain(block_sizes: list[int]) -> Graph:
    """Chain of blocks glued at single shared vertices.

    Each block is an odd cycle (size >= 3, odd) or a single edge (size 2);
    block i+1 shares its first vertex with the last-added vertex of block i.
    Spanning-tree counts multiply across blocks, so odd blocks keep the
    total odd.
    """
    if not block_sizes:
        raise ValueError("need at least one block")
    edges: list[tuple[int, int]] = []
    n = 1
    glue = 0
    for size in block_sizes:
        if size == 2:
            edges.append((glue, n))
            glue = n
            n += 1
        elif size >= 3 and size % 2 == 1:
            ring = [glue] + list(range(n, n + size - 1))
            edges.extend((ring[i], ring[(i + 1) % size]) for i in range(size))
            glue = ring[-1]
            n += size - 1
        else:
            raise ValueError(f"block size {size} is neither 2 nor an odd cycle length")
    return Graph(n, edges)


_FAMILIES = {
    "path": path_graph,
    "cycle": cycle_graph,
    "complete": complete_graph,
    "complete_minus_edge": complete_minus_edge,
    "star": star_graph,
    "hypercube": hypercube,
}


def construct(name: str, params: list[int]) -> Graph:
    """Build a named family member, e.g. construct('cycle', [4])."""
    if name == "one_sum":
        return one_sum_chain(params)
    if name not in _FAMILIES:
        raise ValueError(f"unknown family {name!r}; know "
                         f"{sorted(_FAMILIES) + ['one_sum']}")
    if len(params) != 1:
        raise ValueError(f"family {name!r} takes exactly one parameter")
    return _FAMILIES[name](params[0])
