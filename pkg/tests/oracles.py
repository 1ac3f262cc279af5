"""Independent brute-force oracles used to freeze expected test values.

Everything here is deliberately primitive: cofactor expansion instead of
fraction-free elimination, edge-subset enumeration instead of the
Matrix-Tree determinant, labelled Prufer decoding instead of level-sequence
generation, and the rooted-tree counting recurrence instead of any
enumeration at all.
"""

from __future__ import annotations

from itertools import combinations

from pstlab.generate import canonical_form
from pstlab.graphs import Graph


def det_cofactor(m) -> int:
    """Determinant by Laplace expansion along the first row."""
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [[row[c] for c in range(n) if c != j] for row in m[1:]]
        total += (-1) ** j * m[0][j] * det_cofactor(minor)
    return total


def spanning_trees_brute(g: Graph) -> int:
    """Count spanning trees by testing every (n-1)-edge subset."""
    edges = sorted(g.edges)
    if g.n == 1:
        return 1
    count = 0
    for subset in combinations(edges, g.n - 1):
        parent = list(range(g.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        ok = True
        for u, v in subset:
            ru, rv = find(u), find(v)
            if ru == rv:
                ok = False
                break
            parent[ru] = rv
        if ok:
            count += 1
    return count


def prufer_decode(seq: tuple[int, ...], n: int) -> Graph:
    """Labelled tree on 0..n-1 from a Prufer sequence of length n-2."""
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    leaf_ptr = 0
    leaf = -1
    used = [False] * n
    for x in seq:
        if leaf == -1:
            while degree[leaf_ptr] != 1 or used[leaf_ptr]:
                leaf_ptr += 1
            leaf = leaf_ptr
        edges.append((leaf, x))
        used[leaf] = True
        degree[x] -= 1
        if degree[x] == 1 and x < leaf_ptr:
            leaf = x
        else:
            leaf = -1
    last = [i for i in range(n) if not used[i] and degree[i] == 1]
    edges.append((last[0], last[1]))
    return Graph(n, edges)


def free_tree_count_prufer(n: int) -> int:
    """Isomorphism classes of trees on n vertices by enumerating all
    n^(n-2) Prufer sequences and bucketing by canonical form."""
    if n == 1 or n == 2:
        return 1
    seen = set()
    seq = [0] * (n - 2)
    while True:
        seen.add(canonical_form(prufer_decode(tuple(seq), n)))
        i = n - 3
        while i >= 0 and seq[i] == n - 1:
            seq[i] = 0
            i -= 1
        if i < 0:
            break
        seq[i] += 1
    return len(seen)


def rooted_tree_counts(max_n: int) -> list[int]:
    """Rooted trees on 1..max_n vertices by the classical divisor-sum
    convolution; r[1] = 1."""
    r = [0] * (max_n + 1)
    r[1] = 1
    for n in range(2, max_n + 1):
        total = 0
        for k in range(1, n):
            s = sum(d * r[d] for d in range(1, k + 1) if k % d == 0)
            total += s * r[n - k]
        r[n] = total // (n - 1)
    return r


def free_tree_counts_otter(max_n: int) -> list[int]:
    """Free-tree counts from rooted counts: t(x) = r(x) - (r^2(x) - r(x^2))/2."""
    r = rooted_tree_counts(max_n)
    t = [0] * (max_n + 1)
    for n in range(1, max_n + 1):
        square = sum(r[i] * r[n - i] for i in range(1, n))
        diag = r[n // 2] if n % 2 == 0 else 0
        t[n] = r[n] - (square - diag) // 2
    return t


def connected_graph_count_brute(n: int) -> int:
    """Connected isomorphism classes by enumerating all labelled graphs."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    seen = set()
    for mask in range(1 << len(pairs)):
        edges = [pairs[b] for b in range(len(pairs)) if mask >> b & 1]
        g = Graph(n, edges)
        if g.is_connected():
            seen.add(canonical_form(g))
    return len(seen)
