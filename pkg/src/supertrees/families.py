"""Constructors for the named supertree families.

Labeling conventions, shared by every constructor here:

* a spine of length ``d`` is laid out as ``loose_path(d, k)``, so spine
  vertex ``v_j`` (1-based) is label ``(j - 1) * (k - 1)`` and edge ``e_j``
  is ``range((j - 1) * (k - 1), (j - 1) * (k - 1) + k)``;
* attached edges come after the spine, in order, each made of its anchor
  plus ``k - 1`` fresh labels.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import BadParams, InputNotATree, NotRealizable
from .hypergraph import Supertree, build, validate_supertree


def spine_vertex(j: int, k: int) -> int:
    """Label of ``v_j`` (1-based) on a spine built by :func:`loose_path`."""
    return (j - 1) * (k - 1)


def _spine(d: int, k: int) -> list[list[int]]:
    return [list(range(i * (k - 1), i * (k - 1) + k)) for i in range(d)]


def _attach(edges: list[list[int]], anchor: int, count: int, n: int, k: int) -> int:
    for _ in range(count):
        edges.append([anchor, *range(n, n + k - 1)])
        n += k - 1
    return n


def _finish(edges: list[list[int]], n: int, k: int) -> Supertree:
    return validate_supertree(build(k, n, edges))


def _check_k(k: int) -> None:
    if k < 2:
        raise BadParams(f"k must be >= 2, got {k}")


def loose_path(m: int, k: int) -> Supertree:
    _check_k(k)
    if m < 1:
        raise BadParams(f"loose path needs m >= 1, got {m}")
    return _finish(_spine(m, k), m * (k - 1) + 1, k)


def hyperstar(m: int, k: int) -> Supertree:
    """All ``m`` edges through the centre, label 0."""
    _check_k(k)
    if m < 1:
        raise BadParams(f"hyperstar needs m >= 1, got {m}")
    edges = [[0, *range(1 + i * (k - 1), 1 + (i + 1) * (k - 1))] for i in range(m)]
    return _finish(edges, m * (k - 1) + 1, k)


def power_k(tree_edges: Sequence[tuple[int, int]], k: int) -> Supertree:
    """k-th power of an ordinary tree on vertices ``0..N-1``.

    Edge ``j`` of the tree gains fresh vertices ``N + j(k-2) .. N + (j+1)(k-2) - 1``.
    """
    _check_k(k)
    pairs = [tuple(int(v) for v in e) for e in tree_edges]
    N = len(pairs) + 1
    if N < 2:
        raise InputNotATree("a tree needs at least 2 vertices")
    parent = list(range(N))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for j, e in enumerate(pairs):
        if len(e) != 2 or e[0] == e[1] or not all(0 <= v < N for v in e):
            raise InputNotATree(f"edge {j} = {e} is not an edge on vertices 0..{N - 1}")
        ra, rb = find(e[0]), find(e[1])
        if ra == rb:
            raise InputNotATree(f"edge {j} = {e} closes a cycle")
        parent[ra] = rb
    edges = [[a, b, *range(N + j * (k - 2), N + (j + 1) * (k - 2))] for j, (a, b) in enumerate(pairs)]
    return _finish(edges, N + len(pairs) * (k - 2), k)


def _check_md(m: int, d: int, k: int, name: str, d_min: int = 3) -> None:
    _check_k(k)
    if d < d_min:
        raise BadParams(f"{name} needs d >= {d_min}, got d={d}")
    if m < d:
        raise BadParams(f"{name} needs m >= d, got m={m}, d={d}")


def s1(m: int, d: int, k: int) -> Supertree:
    """Spine of length ``d`` with ``m - d`` pendent edges at ``v_{floor(d/2)+1}``."""
    _check_md(m, d, k, "s1")
    edges = _spine(d, k)
    n = _attach(edges, spine_vertex(d // 2 + 1, k), m - d, d * (k - 1) + 1, k)
    return _finish(edges, n, k)


def s2(m: int, d: int, k: int) -> Supertree:
    """Spine of length ``d`` with ``m - d`` pendent edges at ``v_{floor(d/2)}``."""
    _check_md(m, d, k, "s2", d_min=4)
    edges = _spine(d, k)
    n = _attach(edges, spine_vertex(d // 2, k), m - d, d * (k - 1) + 1, k)
    return _finish(edges, n, k)


def s3(m: int, d: int, k: int) -> Supertree:
    """Spine of odd length ``d``; ``m - d`` edges at the first pendent vertex of ``e_{floor(d/2)+1}``."""
    _check_md(m, d, k, "s3")
    if d % 2 == 0:
        raise BadParams(f"s3 is defined for odd d only, got d={d}")
    if k < 3:
        raise BadParams("s3 needs k >= 3: a 2-uniform spine edge has no pendent vertex")
    edges = _spine(d, k)
    anchor = spine_vertex(d // 2 + 1, k) + 1
    n = _attach(edges, anchor, m - d, d * (k - 1) + 1, k)
    return _finish(edges, n, k)


def s4(m: int, k: int) -> Supertree:
    """Spine of length 3; ``m - 4`` pendent edges at ``v_2``, then one at ``v_3``."""
    _check_k(k)
    if m < 5:
        raise BadParams(f"s4 needs m >= 5, got m={m}")
    edges = _spine(3, k)
    n = _attach(edges, spine_vertex(2, k), m - 4, 3 * (k - 1) + 1, k)
    n = _attach(edges, spine_vertex(3, k), 1, n, k)
    return _finish(edges, n, k)


def _edge_count(n: int, k: int) -> int:
    if k < 2 or n < 1 or (n - 1) % (k - 1):
        raise BadParams(f"n={n} is not of the form m(k-1)+1 for k={k}")
    return (n - 1) // (k - 1)


def t1(n: int, p: int, k: int) -> Supertree:
    """Hyperstar with ``p`` edges, each extended by a loose path; lengths differ by <= 1.

    The tip of star edge ``i`` is its lowest non-centre label; longer paths go
    to the lower tips. Paths of length 0 leave the star edge pendent.
    """
    m = _edge_count(n, k)
    if p == 1 and m == 1:
        return hyperstar(1, k)
    if not 2 <= p <= m:
        raise BadParams(f"t1 needs 2 <= p <= m={m}, got p={p}")
    star = hyperstar(p, k)
    edges = [list(e) for e in star.edges]
    size = star.n
    base, extra = divmod(m - p, p)
    for i in range(p):
        anchor = 1 + i * (k - 1)
        for _ in range(base + (1 if i < extra else 0)):
            edges.append([anchor, *range(size, size + k - 1)])
            anchor = size + k - 2
            size += k - 1
    return _finish(edges, size, k)


# -- degree sequences and BFS-supertrees ------------------------------------


@dataclass(frozen=True)
class DegreeSequence:
    degrees: tuple[int, ...]
    k: int

    def __post_init__(self):
        degs = tuple(int(d) for d in self.degrees)
        object.__setattr__(self, "degrees", degs)
        if self.k < 2 or not degs:
            raise NotRealizable(f"empty sequence or bad k={self.k}")
        if any(d < 1 for d in degs):
            raise NotRealizable(f"degrees must be positive: {degs}")
        if any(a < b for a, b in zip(degs, degs[1:])):
            raise NotRealizable(f"degrees must be non-increasing: {degs}")
        total = sum(degs)
        if total % self.k:
            raise NotRealizable(f"degree sum {total} is not a multiple of k={self.k}")
        if len(degs) != (total // self.k) * (self.k - 1) + 1:
            raise NotRealizable(f"{len(degs)} vertices cannot carry m={total // self.k} edges")

    @property
    def m(self) -> int:
        return sum(self.degrees) // self.k

    @property
    def n(self) -> int:
        return len(self.degrees)

    @classmethod
    def of(cls, degrees: Sequence[int], k: int) -> "DegreeSequence":
        return cls(tuple(sorted(degrees, reverse=True)), k)


def pendant_degree_sequence(n: int, q: int, k: int) -> DegreeSequence:
    """Degree sequence of the extremal supertree with ``q`` pendent vertices."""
    m = _edge_count(n, k)
    if not n - m + 1 <= q <= n - 1:
        raise BadParams(f"q must lie in [{n - m + 1}, {n - 1}], got {q}")
    top = q + 1 + m - n
    return DegreeSequence((top,) + (2,) * (n - q - 1) + (1,) * q, k)


@dataclass(frozen=True)
class BFSOrdering:
    order: tuple[int, ...]
    heights: tuple[int, ...]

    @property
    def root(self) -> int:
        return self.order[0]


def bfs_supertree(pi: DegreeSequence | Sequence[int], k: int | None = None) -> tuple[Supertree, BFSOrdering]:
    """Build the BFS-supertree for ``pi`` and return it with its ordering.

    Vertex ``i`` receives degree ``pi[i]``. Vertices are processed in label
    order; each opens its remaining edges, and every new edge takes the next
    ``k - 1`` unused labels as its children.
    """
    if not isinstance(pi, DegreeSequence):
        if k is None:
            raise NotRealizable("k is required with a plain degree list")
        pi = DegreeSequence(tuple(pi), k)
    elif k is not None and k != pi.k:
        raise NotRealizable(f"k={k} disagrees with the sequence's k={pi.k}")
    k = pi.k
    degs = pi.degrees
    edges: list[list[int]] = []
    heights = [0] * pi.n
    nxt = 1
    for v in range(pi.n):
        if v >= nxt:
            raise NotRealizable(f"vertex {v} is never reached")
        for _ in range(degs[v] - (0 if v == 0 else 1)):
            kids = list(range(nxt, nxt + k - 1))
            if kids and kids[-1] >= pi.n:
                raise NotRealizable("ran out of vertices")
            for c in kids:
                heights[c] = heights[v] + 1
            edges.append([v, *kids])
            nxt += k - 1
    T = _finish(edges, pi.n, k)
    return T, BFSOrdering(tuple(range(pi.n)), tuple(heights))


def heights_from(G, root: int) -> list[int]:
    dist = {root: 0}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for j in G.incidence[v]:
            for w in G.edges[j]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
    return [dist[v] for v in range(G.n)]


def bfs_clauses(G, order: Sequence[int]) -> dict[str, bool]:
    """Evaluate each clause (a)-(d) of a BFS-ordering for ``order`` on ``G``.

    Heights are distances from ``order[0]``. In clause (c) a vertex shares its
    parent with its siblings, so the parents are compared with ``<=``.
    """
    rank = {v: i for i, v in enumerate(order)}
    h = heights_from(G, order[0])
    deg = G.degrees
    seq = list(order)
    a = all(h[u] <= h[v] for u, v in zip(seq, seq[1:]))
    b = all(deg[u] >= deg[v] for u, v in zip(seq, seq[1:]))
    parent = {}
    for v in range(G.n):
        if h[v] == 0:
            continue
        for j in G.incidence[v]:
            for w in G.edges[j]:
                if h[w] == h[v] - 1:
                    parent[v] = w
    c = True
    for u in seq:
        for v in seq[rank[u] + 1:]:
            if u in parent and v in parent and rank[parent[u]] > rank[parent[v]]:
                c = False
    d = True
    for e in G.edges:
        ranks = sorted(rank[v] for v in e)
        # the members after the first must be consecutive in the ordering
        if ranks[-1] - ranks[1] != len(ranks) - 2:
            d = False
    return {"a": a, "b": b, "c": c, "d": d}


def is_bfs_ordering(G, order: Sequence[int]) -> bool:
    return all(bfs_clauses(G, order).values())
