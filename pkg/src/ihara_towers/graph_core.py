"""Finite multigraphs with involutive directed edge pairs, and spanning-tree counts.

Graphs are stored by one chosen orientation per edge pair; the inverse
orientation is implicit.  Loops and parallel edges are allowed, and a loop
contributes both of its orientations to the valency of its vertex.

Two independent spanning-tree counters live here: the reduced-Laplacian
determinant (exact Bareiss elimination, no floating point) and a brute-force
subset enumeration.  The rest of the repository treats them as ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations


@dataclass(frozen=True)
class EdgePair:
    """One chosen orientation of an undirected edge; id is the input index."""

    id: int
    origin: int
    terminus: int


@dataclass(frozen=True)
class SerreGraph:
    vertices: tuple
    edge_pairs: tuple

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    def directed_edge_count(self) -> int:
        return 2 * len(self.edge_pairs)

    def valency(self, v: int) -> int:
        count = 0
        for e in self.edge_pairs:
            if e.origin == v:
                count += 1
            if e.terminus == v:
                count += 1
        return count


@dataclass(frozen=True)
class IntMatrix:
    """Square integer matrix with row/column labels in vertex order."""

    rows: tuple
    labels: tuple

    @property
    def size(self) -> int:
        return len(self.rows)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if self.labels != other.labels:
            raise ValueError("label mismatch")
        rows = tuple(
            tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows)
        )
        return IntMatrix(rows, self.labels)

    def row_sums(self):
        return tuple(sum(r) for r in self.rows)


def build_graph(vertex_count: int, undirected_edges, labels=None) -> SerreGraph:
    """Build a graph from a list of (u, v) endpoint pairs, ids in input order."""
    if vertex_count < 0:
        raise ValueError("vertex_count must be nonnegative")
    if labels is None:
        labels = tuple(range(vertex_count))
    else:
        labels = tuple(labels)
        if len(labels) != vertex_count:
            raise ValueError("label count mismatch")
    pairs = []
    for i, (u, v) in enumerate(undirected_edges):
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise IndexError(f"edge ({u}, {v}) references a missing vertex")
        pairs.append(EdgePair(i, u, v))
    return SerreGraph(labels, tuple(pairs))


def euler_characteristic(g: SerreGraph) -> int:
    """|V| - |E|/2 where |E| counts directed edges."""
    return g.vertex_count - len(g.edge_pairs)


def degree_and_adjacency(g: SerreGraph):
    """Return (D, A): diagonal valency matrix and directed-edge adjacency counts.

    A loop at v adds 2 to both the valency and the diagonal entry of A, so
    loops cancel in the Laplacian D - A.
    """
    n = g.vertex_count
    deg = [0] * n
    adj = [[0] * n for _ in range(n)]
    for e in g.edge_pairs:
        deg[e.origin] += 1
        deg[e.terminus] += 1
        adj[e.origin][e.terminus] += 1
        adj[e.terminus][e.origin] += 1
    d_rows = tuple(tuple(deg[i] if i == j else 0 for j in range(n)) for i in range(n))
    a_rows = tuple(tuple(row) for row in adj)
    return IntMatrix(d_rows, g.vertices), IntMatrix(a_rows, g.vertices)


def is_connected(g: SerreGraph) -> bool:
    """Breadth-first reachability from vertex 0; the empty graph is an error."""
    n = g.vertex_count
    if n == 0:
        raise ValueError("connectivity of the empty graph is undefined")
    neighbors = [[] for _ in range(n)]
    for e in g.edge_pairs:
        neighbors[e.origin].append(e.terminus)
        neighbors[e.terminus].append(e.origin)
    seen = [False] * n
    seen[0] = True
    queue = [0]
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        for w in neighbors[v]:
            if not seen[w]:
                seen[w] = True
                queue.append(w)
    return all(seen)


def _symmetric_psd_det(m) -> int:
    """Bareiss determinant for a symmetric positive-semidefinite matrix.

    Elimination preserves symmetry and every pivot is a leading principal
    minor (nonnegative here), so no pivoting is needed and only the upper
    triangle is updated; mirrored writes keep the rows usable as pivots.
    """
    n = len(m)
    if n == 0:
        return 1
    m = [list(row) for row in m]
    prev = 1
    for k in range(n - 1):
        pk = m[k][k]
        if pk == 0:
            return 0
        mk = m[k]
        for i in range(k + 1, n):
            mi = m[i]
            mik = mk[i]
            if mik:
                for j in range(i, n):
                    v = (mi[j] * pk - mik * mk[j]) // prev
                    mi[j] = v
                    m[j][i] = v
            else:
                for j in range(i, n):
                    v = (mi[j] * pk) // prev
                    mi[j] = v
                    m[j][i] = v
        prev = pk
    return m[-1][-1]


def spanning_tree_count(g: SerreGraph) -> int:
    """Number of spanning trees via the reduced Laplacian determinant.

    Row and column 0 are deleted (any choice is valid; this one is fixed for
    determinism).  The reduced Laplacian is symmetric positive semidefinite,
    which lets the fraction-free elimination work on one triangle.  A
    single-vertex graph has one spanning tree, the empty one.  Disconnected
    graphs return 0.
    """
    n = g.vertex_count
    if n == 0:
        raise ValueError("spanning trees of the empty graph are undefined")
    if not is_connected(g):
        return 0
    if n == 1:
        return 1
    deg = [0] * n
    lap = [[0] * n for _ in range(n)]
    for e in g.edge_pairs:
        deg[e.origin] += 1
        deg[e.terminus] += 1
        lap[e.origin][e.terminus] -= 1
        lap[e.terminus][e.origin] -= 1
    for v in range(n):
        lap[v][v] += deg[v]
    reduced = [row[1:] for row in lap[1:]]
    return _symmetric_psd_det(reduced)


BRUTE_FORCE_PAIR_LIMIT = 24


def spanning_tree_count_bruteforce(g: SerreGraph) -> int:
    """Count spanning trees by enumerating edge-pair subsets of size |V| - 1.

    Exponential; guarded at BRUTE_FORCE_PAIR_LIMIT edge pairs.  Serves as an
    oracle that is independent of any determinant computation.
    """
    n = g.vertex_count
    if n == 0:
        raise ValueError("spanning trees of the empty graph are undefined")
    if len(g.edge_pairs) > BRUTE_FORCE_PAIR_LIMIT:
        raise ValueError("graph too large for brute-force enumeration")
    if n == 1:
        return 1 if is_connected(g) else 0
    count = 0
    for subset in combinations(g.edge_pairs, n - 1):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        ok = True
        for e in subset:
            ru, rv = find(e.origin), find(e.terminus)
            if ru == rv:
                ok = False
                break
            parent[ru] = rv
        if ok:
            count += 1
    return count
