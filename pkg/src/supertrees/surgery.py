"""Edge moving, edge releasing, branch collapsing, 2-switching and grafting.

Operations never mutate their input. ``move_edges`` and ``two_switch`` return
plain hypergraphs because the result need not be a supertree; the other
three return validated supertrees.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import (
    BadParams,
    BadSubsetSizes,
    DuplicateEdge,
    EdgeIsPendent,
    EdgesNotDisjoint,
    NotAGraftConfiguration,
    NotBranchEdge,
    ResultHasDuplicateEdge,
    UNotInEdge,
    UNotOutsideEdge,
    VNotInEdge,
)
from .hypergraph import Hypergraph, Supertree, build, non_pendent_vertices, validate_supertree


def _rebuild(G: Hypergraph, edges: list[Iterable[int]]) -> Hypergraph:
    try:
        return build(G.k, G.n, edges)
    except DuplicateEdge as exc:
        raise ResultHasDuplicateEdge(str(exc)) from None


def move_edges(G: Hypergraph, u: int, moves: Sequence[tuple[int, int]]) -> Hypergraph:
    """Replace each edge ``e_i`` by ``(e_i - {v_i}) + {u}``; edge positions are kept."""
    if not moves:
        return G
    edges = [list(e) for e in G.edges]
    seen = set()
    for j, v in moves:
        if j in seen:
            raise BadParams(f"edge {j} is moved twice")
        seen.add(j)
        e = G.edges[j]
        if u in e:
            raise UNotOutsideEdge(f"vertex {u} already lies in edge {j} = {list(e)}")
        if v not in e:
            raise VNotInEdge(f"vertex {v} is not in edge {j} = {list(e)}")
        edges[j] = [w for w in e if w != v] + [u]
    return _rebuild(G, edges)


def is_non_pendent_edge(G: Hypergraph, j: int) -> bool:
    """At least two vertices of the edge have degree >= 2."""
    return len(non_pendent_vertices(G, j)) >= 2


def release_moves(G: Hypergraph, e: int, u: int) -> list[tuple[int, int]]:
    moves = []
    for w in G.edges[e]:
        if w == u:
            continue
        for j in G.incidence[w]:
            if j != e and u not in G.edges[j]:
                moves.append((j, w))
    return moves


def edge_release(G: Hypergraph, e: int, u: int) -> Supertree:
    """Move every edge meeting ``e`` away from ``u`` onto ``u``."""
    T = validate_supertree(G)
    if u not in T.edges[e]:
        raise UNotInEdge(f"vertex {u} is not in edge {e} = {list(T.edges[e])}")
    if not is_non_pendent_edge(T, e):
        raise EdgeIsPendent(f"edge {e} = {list(T.edges[e])} has fewer than two non-pendent vertices")
    return validate_supertree(move_edges(T, u, release_moves(T, e, u)))


def is_branch_edge(G: Hypergraph, j: int) -> bool:
    return len(non_pendent_vertices(G, j)) >= 3


def branch_collapse(G: Hypergraph, e: int, keep: tuple[int, int]) -> Supertree:
    """Gather the attachments of every non-pendent vertex of ``e`` except ``keep`` onto ``keep[0]``."""
    T = validate_supertree(G)
    if not is_branch_edge(T, e):
        raise NotBranchEdge(f"edge {e} = {list(T.edges[e])} has fewer than 3 non-pendent vertices")
    inner = non_pendent_vertices(T, e)
    v1, v2 = keep
    if v1 == v2 or v1 not in inner or v2 not in inner:
        raise BadParams(f"keep={keep} must be two distinct non-pendent vertices of edge {e}")
    moves = [(j, w) for w in inner if w not in keep for j in T.incidence[w] if j != e]
    return validate_supertree(move_edges(T, v1, moves))


def two_switch(G: Hypergraph, e: int, f: int, U1: Iterable[int], V1: Iterable[int]) -> Hypergraph:
    """Swap the vertex sets ``U1`` (from edge ``e``) and ``V1`` (from edge ``f``)."""
    E, F = set(G.edges[e]), set(G.edges[f])
    if e == f or E & F:
        raise EdgesNotDisjoint(f"edges {e} and {f} intersect")
    U, V = set(U1), set(V1)
    if not (U <= E and V <= F) or len(U) != len(V) or not 1 <= len(U) <= G.k - 1:
        raise BadSubsetSizes(f"need U1 in e, V1 in f with 1 <= |U1| = |V1| <= {G.k - 1}")
    edges = [list(x) for x in G.edges]
    edges[e] = sorted((E - U) | V)
    edges[f] = sorted((F - V) | U)
    return _rebuild(G, edges)


# -- grafting ---------------------------------------------------------------


def pendent_paths_at(G: Hypergraph, u: int) -> list[tuple[list[int], list[int]]]:
    """All pendent paths starting at ``u``.

    Each item is ``(edge_indices, spine)`` where ``spine`` is ``[u, u_1, ..., u_p]``
    and ``u_p`` is the lowest degree-1 label of the last edge.
    """
    deg = G.degrees
    if deg[u] < 2:
        return []
    found = []
    for first in G.incidence[u]:
        path, spine = [first], [u]
        j, cur = first, u
        while True:
            others = [w for w in G.edges[j] if w != cur]
            twos = [w for w in others if deg[w] == 2]
            if any(deg[w] > 2 for w in others) or len(twos) > 1:
                path = None
                break
            if not twos:
                spine.append(min(others))
                break
            w = twos[0]
            nxt = [x for x in G.incidence[w] if x != j][0]
            if nxt in path:
                path = None
                break
            spine.append(w)
            path.append(nxt)
            j, cur = nxt, w
        if path is not None:
            found.append((path, spine))
    return found


def graft_step(G: Hypergraph, u: int, p: int, q: int) -> Hypergraph:
    """Turn ``H(u; p, q)`` into ``H(u; p + 1, q - 1)``.

    Finds two edge-disjoint pendent paths of lengths ``p`` and ``q`` at ``u``
    (lowest first-edge index wins among equal lengths), then moves the last
    edge of the ``q``-path from its inner end to the far end of the ``p``-path.
    """
    if q < 1 or p < 0:
        raise NotAGraftConfiguration(f"need p >= 0 and q >= 1, got p={p}, q={q}")
    if G.degree(u) < 2 + (1 if p > 0 else 0):
        raise NotAGraftConfiguration(f"vertex {u} has degree {G.degree(u)}: no base graph left")
    paths = pendent_paths_at(G, u)
    q_path = next((pp for pp in paths if len(pp[0]) == q), None)
    if q_path is None:
        raise NotAGraftConfiguration(f"no pendent path of length {q} at vertex {u}")
    if p == 0:
        end = u
    else:
        p_path = next((pp for pp in paths if len(pp[0]) == p and pp is not q_path), None)
        if p_path is None:
            raise NotAGraftConfiguration(f"no second pendent path of length {p} at vertex {u}")
        end = p_path[1][-1]
    f_q = q_path[0][-1]
    inner = q_path[1][-2]
    return move_edges(G, end, [(f_q, inner)])


def attach_paths(G: Hypergraph, u: int, lengths: Sequence[int]) -> Hypergraph:
    """Return ``G`` with a fresh pendent loose path of each given length at ``u``."""
    k = G.k
    edges = [list(e) for e in G.edges]
    n = G.n
    for length in lengths:
        anchor = u
        for _ in range(length):
            edges.append([anchor, *range(n, n + k - 1)])
            anchor = n + k - 2
            n += k - 1
    return build(k, n, edges)
