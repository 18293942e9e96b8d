"""k-uniform hypergraphs, supertrees and their structural invariants."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    Disconnected,
    DuplicateEdge,
    HasCycle,
    IntersectionTooLarge,
    NonUniformEdge,
    VertexOutOfRange,
)

Edge = tuple[int, ...]


@dataclass(frozen=True)
class Hypergraph:
    """A k-uniform hypergraph on the vertices ``0..n-1``.

    Edges are stored as sorted tuples, in the order they were given.
    ``incidence[i]`` lists the indices of the edges containing ``i``.
    Instances are immutable; use :func:`build` to construct one.
    """

    k: int
    n: int
    edges: tuple[Edge, ...]
    incidence: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(inc) for inc in self.incidence)

    def degree_multiset(self) -> tuple[int, ...]:
        """Degrees sorted in non-increasing order."""
        return tuple(sorted(self.degrees, reverse=True))

    def neighbours(self, v: int) -> set[int]:
        return {w for j in self.incidence[v] for w in self.edges[j] if w != v}

    def is_connected(self) -> bool:
        if self.n == 1:
            return True
        return len(_bfs_layers(self, 0)) == self.n

    def relabel(self, perm: Sequence[int]) -> "Hypergraph":
        """Return the hypergraph with vertex ``v`` renamed ``perm[v]``."""
        return build(self.k, self.n, [[perm[v] for v in e] for e in self.edges])

    def to_dict(self) -> dict:
        return {"k": self.k, "n": self.n, "edges": [list(e) for e in self.edges]}


class Supertree(Hypergraph):
    """A connected, acyclic Hypergraph. Only :func:`validate_supertree` makes these."""

    @property
    def inner(self) -> Hypergraph:
        return Hypergraph(self.k, self.n, self.edges, self.incidence)


def build(k: int, n: int, edges: Iterable[Iterable[int]]) -> Hypergraph:
    """Check and normalise an edge list into a :class:`Hypergraph`."""
    if k < 2:
        raise NonUniformEdge(f"uniformity k must be >= 2, got {k}")
    if n < 1:
        raise VertexOutOfRange(f"vertex count n must be >= 1, got {n}")
    stored: list[Edge] = []
    seen: dict[Edge, int] = {}
    for j, raw in enumerate(edges):
        e = tuple(sorted(int(v) for v in raw))
        if len(e) != k or len(set(e)) != k:
            raise NonUniformEdge(f"edge {j} = {list(raw)} does not have {k} distinct vertices")
        if e[0] < 0 or e[-1] >= n:
            raise VertexOutOfRange(f"edge {j} = {list(e)} has a vertex outside 0..{n - 1}")
        if e in seen:
            raise DuplicateEdge(f"edge {j} repeats edge {seen[e]}: {list(e)}")
        seen[e] = j
        stored.append(e)
    inc: list[list[int]] = [[] for _ in range(n)]
    for j, e in enumerate(stored):
        for v in e:
            inc[v].append(j)
    return Hypergraph(k, n, tuple(stored), tuple(tuple(x) for x in inc))


def validate_supertree(G: Hypergraph) -> Supertree:
    if isinstance(G, Supertree):
        return G
    if not G.is_connected():
        raise Disconnected(f"hypergraph with n={G.n}, m={G.m} is not connected")
    if G.n != G.m * (G.k - 1) + 1:
        raise HasCycle(f"n={G.n} != m(k-1)+1={G.m * (G.k - 1) + 1}")
    # implied by the two checks above; kept as a guard against bookkeeping bugs
    for v in range(G.n):
        inc = G.incidence[v]
        for a in range(len(inc)):
            for b in range(a + 1, len(inc)):
                common = set(G.edges[inc[a]]) & set(G.edges[inc[b]])
                if len(common) > 1:
                    raise IntersectionTooLarge(f"edges {inc[a]} and {inc[b]} share {sorted(common)}")
    return Supertree(G.k, G.n, G.edges, G.incidence)


def is_supertree(G: Hypergraph) -> bool:
    return G.is_connected() and G.n == G.m * (G.k - 1) + 1


def _bfs_layers(G: Hypergraph, source: int) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for j in G.incidence[v]:
            for w in G.edges[j]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
    return dist


def distances_from(G: Hypergraph, source: int) -> list[int]:
    """Edge-count distances from ``source``; ``-1`` marks unreachable vertices."""
    dist = _bfs_layers(G, source)
    return [dist.get(v, -1) for v in range(G.n)]


def diameter(G: Hypergraph) -> int:
    if not G.is_connected():
        raise Disconnected("diameter is undefined for a disconnected hypergraph")
    if isinstance(G, Supertree) or is_supertree(G):
        # double sweep is exact on trees
        d0 = _bfs_layers(G, 0)
        far = max(d0, key=lambda v: (d0[v], -v))
        return max(_bfs_layers(G, far).values())
    return max(max(_bfs_layers(G, s).values()) for s in range(G.n))


def pendent_counts(G: Hypergraph) -> tuple[int, int]:
    """Return ``(p, q)``: the numbers of pendent edges and pendent vertices.

    A single edge has no anchor of degree >= 2, so it counts as 0 pendent edges.
    """
    deg = G.degrees
    q = sum(1 for d in deg if d == 1)
    p = 0
    for e in G.edges:
        ones = sum(1 for v in e if deg[v] == 1)
        if ones == G.k - 1 and any(deg[v] >= 2 for v in e):
            p += 1
    return p, q


def is_pendent_edge(G: Hypergraph, j: int) -> bool:
    deg = G.degrees
    e = G.edges[j]
    return sum(1 for v in e if deg[v] == 1) == G.k - 1 and any(deg[v] >= 2 for v in e)


def non_pendent_vertices(G: Hypergraph, j: int) -> list[int]:
    return [v for v in G.edges[j] if G.degree(v) >= 2]


# -- canonical codes --------------------------------------------------------


def _reduced_tree(G: Hypergraph):
    """Incidence tree on edge-nodes ``0..m-1`` and cut-vertex nodes ``m..``.

    Returns the adjacency lists and the per-node label (count of degree-1
    vertices for edge-nodes, ``None`` for vertex-nodes).
    """
    deg = G.degrees
    cut = [v for v in range(G.n) if deg[v] >= 2]
    index = {v: G.m + i for i, v in enumerate(cut)}
    adj: list[list[int]] = [[] for _ in range(G.m + len(cut))]
    labels: list[int | None] = [None] * len(adj)
    for j, e in enumerate(G.edges):
        labels[j] = sum(1 for v in e if deg[v] == 1)
        for v in e:
            if deg[v] >= 2:
                adj[j].append(index[v])
                adj[index[v]].append(j)
    return adj, labels, index


def _centers(adj: list[list[int]]) -> list[int]:
    n = len(adj)
    if n <= 2:
        return list(range(n))
    degree = [len(a) for a in adj]
    leaves = [v for v in range(n) if degree[v] <= 1]
    remaining = n
    while remaining > 2:
        remaining -= len(leaves)
        nxt = []
        for v in leaves:
            for w in adj[v]:
                degree[w] -= 1
                if degree[w] == 1:
                    nxt.append(w)
        leaves = nxt
    return sorted(leaves)


def _rooted_code(adj, labels, root: int) -> str:
    # iterative post-order; depth can reach 2m+1
    parent = {root: -1}
    order = [root]
    for v in order:
        for w in adj[v]:
            if w not in parent:
                parent[w] = v
                order.append(w)
    code: dict[int, str] = {}
    for v in reversed(order):
        kids = "".join(sorted(code[w] for w in adj[v] if parent.get(w) == v and w != parent[v]))
        if labels[v] is None:
            code[v] = "(" + kids + ")"
        else:
            code[v] = "[" + str(labels[v]) + kids + "]"
    return code[root]


def rooted_code(G: Hypergraph, vertex: int) -> str:
    """Code of the supertree rooted at ``vertex``; equal codes mean same orbit."""
    adj, labels, index = _reduced_tree(G)
    if vertex in index:
        return _rooted_code(adj, labels, index[vertex])
    # a degree-1 vertex hangs off its only edge
    j = G.incidence[vertex][0]
    labels = list(labels)
    labels[j] = str(labels[j]) + "*"
    return _rooted_code(adj, labels, j)


@dataclass(frozen=True, order=True)
class CanonicalCode:
    """Isomorphism-invariant identifier of a supertree."""

    bytes: bytes

    def __str__(self) -> str:
        return self.bytes.decode("ascii")

    def short(self, width: int = 12) -> str:
        import hashlib

        return hashlib.sha1(self.bytes).hexdigest()[:width]


def canonical_code(G: Hypergraph) -> CanonicalCode:
    T = validate_supertree(G)
    adj, labels, _ = _reduced_tree(T)
    body = min(_rooted_code(adj, labels, c) for c in _centers(adj))
    return CanonicalCode(f"k{T.k}:{body}".encode("ascii"))
