import random

import pytest

from supertrees import errors
from supertrees.families import hyperstar, loose_path, s1, spine_vertex
from supertrees.hypergraph import build, canonical_code, diameter, non_pendent_vertices
from supertrees.spectral import spectral_radius
from supertrees.surgery import (
    attach_paths,
    branch_collapse,
    edge_release,
    graft_step,
    is_branch_edge,
    move_edges,
    pendent_paths_at,
    two_switch,
)

from conftest import brute_isomorphic


def code(G):
    return canonical_code(G)


def v(j, k=3):
    return spine_vertex(j, k)


class TestMove:
    def test_path_to_star(self):
        P = loose_path(3, 3)
        G = move_edges(P, v(2), [(2, v(3))])
        assert code(G) == code(hyperstar(3, 3))

    def test_no_moves(self):
        P = loose_path(3, 3)
        assert move_edges(P, 0, []) is P

    def test_symmetric_move_in_s1(self):
        # v2 and v3 are mirror images on a spine of length 3, so the moved
        # graph is isomorphic to the input
        G = s1(4, 3, 3)
        H = move_edges(G, v(3), [(3, v(2))])
        assert H.degree(v(3)) == 3 and H.degree(v(2)) == 2
        assert code(H) == code(G)
        assert brute_isomorphic(G, H)

    def test_move_to_a_non_symmetric_vertex_changes_code(self):
        G = s1(5, 4, 3)
        H = move_edges(G, v(2), [(4, v(3))])
        assert code(H) != code(G)

    def test_positions_kept(self):
        P = loose_path(3, 3)
        G = move_edges(P, v(2), [(2, v(3))])
        assert G.edges[2] == tuple(sorted(set(P.edges[2]) - {v(3)} | {v(2)}))

    def test_errors(self):
        P = loose_path(3, 3)
        with pytest.raises(errors.UNotOutsideEdge):
            move_edges(P, v(2), [(1, v(3))])
        with pytest.raises(errors.VNotInEdge):
            move_edges(P, v(2), [(2, 0)])
        with pytest.raises(errors.ResultHasDuplicateEdge):
            move_edges(build(3, 4, [(0, 1, 2), (1, 2, 3)]), 0, [(1, 3)])
        with pytest.raises(errors.BadParams):
            move_edges(P, v(2), [(2, v(3)), (2, v(3))])

    def test_result_need_not_be_a_supertree(self):
        # swapping vertex 3 for 0 in the second edge isolates 3
        P = loose_path(2, 3)
        G = move_edges(P, 0, [(1, 3)])
        assert not G.is_connected()


class TestRelease:
    def test_path_release_is_one_move(self):
        P = loose_path(3, 3)
        G = edge_release(P, 1, v(2))
        assert code(G) == code(move_edges(P, v(2), [(2, v(3))]))
        assert code(G) == code(hyperstar(3, 3))

    def test_s1_release_drops_diameter(self):
        G = s1(5, 3, 3)
        H = edge_release(G, 1, v(2))
        assert diameter(H) == 2 <= diameter(G)

    def test_release_increases_q(self):
        rng = random.Random(0)
        for _ in range(30):
            m = rng.randint(3, 6)
            from supertrees.harness import random_supertree

            G = random_supertree(m, 3, rng)
            cands = [(j, u) for j in range(G.m) for u in non_pendent_vertices(G, j)
                     if len(non_pendent_vertices(G, j)) >= 2]
            if not cands:
                continue
            j, u = rng.choice(cands)
            H = edge_release(G, j, u)
            assert diameter(H) <= diameter(G)
            assert spectral_radius(H).lower > spectral_radius(G).upper

    def test_errors(self):
        P = loose_path(3, 3)
        with pytest.raises(errors.UNotInEdge):
            edge_release(P, 0, v(3))
        with pytest.raises(errors.EdgeIsPendent):
            edge_release(P, 0, v(2))
        with pytest.raises(errors.EdgeIsPendent):
            edge_release(loose_path(1, 3), 0, 0)


def _branch_example():
    # e = {0,1,2,3}; extra pendent edges at 0, 1 and 2
    return build(4, 13, [[0, 1, 2, 3], [0, 4, 5, 6], [1, 7, 8, 9], [2, 10, 11, 12]])


class TestCollapse:
    def test_k4_example(self):
        G = _branch_example()
        H = branch_collapse(G, 0, (0, 1))
        assert H.degree(0) == 3 and H.degree(2) == 1
        assert len(non_pendent_vertices(H, 0)) == 2

    def test_exactly_one_vertex_moves(self):
        G = _branch_example()
        H = branch_collapse(G, 0, (1, 2))
        changed = [j for j in range(G.m) if G.edges[j] != H.edges[j]]
        assert changed == [1]

    def test_q_up_diameter_not_up(self):
        rng = random.Random(7)
        from supertrees.harness import random_supertree

        done = 0
        while done < 50:
            G = random_supertree(rng.randint(3, 5), 4, rng)
            branch = [j for j in range(G.m) if is_branch_edge(G, j)]
            if not branch:
                continue
            j = rng.choice(branch)
            keep = tuple(rng.sample(non_pendent_vertices(G, j), 2))
            H = branch_collapse(G, j, keep)
            assert diameter(H) <= diameter(G)
            assert spectral_radius(H).lower - spectral_radius(G).upper > 1e-9
            done += 1

    def test_errors(self):
        with pytest.raises(errors.NotBranchEdge):
            branch_collapse(loose_path(3, 3), 1, (v(2), v(3)))
        with pytest.raises(errors.BadParams):
            branch_collapse(_branch_example(), 0, (0, 3))


class TestSwitch:
    def test_involution(self):
        G = loose_path(4, 3)
        H = two_switch(G, 0, 2, [0], [5])
        back = two_switch(H, 0, 2, [5], [0])
        assert back.edges == G.edges

    def test_symmetric_pendent_edges(self):
        # edges of a hyperstar all share the centre, so use a spider whose
        # three outer edges are symmetric; swapping all k-1 free vertices of two
        # of them gives back the same shape
        A = build(3, 13, [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 7, 8], [3, 9, 10], [5, 11, 12]])
        B = two_switch(A, 3, 4, [7, 8], [9, 10])
        assert code(A) == code(B)

    def test_errors(self):
        G = loose_path(4, 3)
        with pytest.raises(errors.EdgesNotDisjoint):
            two_switch(G, 0, 1, [0], [3])
        with pytest.raises(errors.BadSubsetSizes):
            two_switch(G, 0, 2, [0, 1], [5])
        with pytest.raises(errors.BadSubsetSizes):
            two_switch(G, 0, 2, [0, 1, 2], [4, 5, 6])


class TestGraft:
    def test_base_plus_two_one_paths(self):
        base = loose_path(1, 3)
        G = attach_paths(base, 0, [1, 1])
        H = graft_step(G, 0, 1, 1)
        lengths = sorted(len(p) for p, _ in pendent_paths_at(H, 0))
        # the base edge itself is a pendent path of length 1 at u
        assert lengths == [1, 2]
        assert H.degree(0) == 2

    def test_preserves_counts(self):
        G = attach_paths(hyperstar(2, 3), 0, [2, 3])
        H = graft_step(G, 0, 2, 3)
        assert (H.m, H.n) == (G.m, G.n)
        diff = [i for i in range(G.n) if G.degree(i) != H.degree(i)]
        assert len(diff) == 2
        assert sum(H.degree(i) - G.degree(i) for i in diff) == 0

    def test_q_decreases(self):
        for p, q in [(1, 1), (2, 1), (2, 2), (3, 2), (3, 3)]:
            G = attach_paths(loose_path(2, 3), 0, [p, q])
            H = graft_step(G, 0, p, q)
            assert spectral_radius(G).lower - spectral_radius(H).upper > 1e-9

    def test_errors(self):
        G = attach_paths(loose_path(1, 3), 0, [1, 1])
        with pytest.raises(errors.NotAGraftConfiguration):
            graft_step(G, 0, 1, 0)
        with pytest.raises(errors.NotAGraftConfiguration):
            graft_step(G, 0, 2, 1)
        with pytest.raises(errors.NotAGraftConfiguration):
            graft_step(loose_path(2, 3), v(2), 1, 1)
