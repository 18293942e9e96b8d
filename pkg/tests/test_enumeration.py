import pytest

from supertrees import errors
from supertrees.enumeration import (
    GUARD_RAIL,
    SupertreeClass,
    enumerate_supertrees,
    filter_class,
    rank_by_q,
)
from supertrees.families import hyperstar, loose_path, s1, s3, s4
from supertrees.hypergraph import canonical_code, diameter
from supertrees.spectral import SolverOptions

from conftest import brute_isomorphic, labeled_tree_classes


def codes(graphs):
    return [canonical_code(T) for T in graphs]


class TestCounts:
    def test_single_edge(self):
        for k in (2, 3, 5):
            assert len(enumerate_supertrees(1, k)) == 1

    def test_three_edges_k3(self):
        got = set(codes(enumerate_supertrees(3, 3)))
        assert got == {canonical_code(loose_path(3, 3)), canonical_code(hyperstar(3, 3))}

    @pytest.mark.parametrize("m", range(1, 7))
    def test_k2_against_pruefer_oracle(self, m):
        assert len(enumerate_supertrees(m, 2)) == labeled_tree_classes(m + 1)

    def test_known_sequences(self):
        # unlabeled trees on m+1 vertices, and hypertree counts for k = 3, 4
        assert [len(enumerate_supertrees(m, 2)) for m in range(1, 9)] == [1, 1, 2, 3, 6, 11, 23, 47]
        assert [len(enumerate_supertrees(m, 3)) for m in range(1, 8)] == [1, 1, 2, 4, 8, 19, 48]
        assert [len(enumerate_supertrees(m, 4)) for m in range(1, 7)] == [1, 1, 2, 4, 9, 21]

    @pytest.mark.parametrize("m", [3, 4, 5])
    def test_pairwise_non_isomorphic(self, m):
        reps = enumerate_supertrees(m, 3)
        for i, a in enumerate(reps):
            for b in reps[i + 1:]:
                assert not brute_isomorphic(a, b)

    def test_deterministic(self):
        a = [T.edges for T in enumerate_supertrees(6, 3)]
        b = [T.edges for T in enumerate_supertrees(6, 3)]
        assert a == b

    def test_sorted_by_code(self):
        cs = codes(enumerate_supertrees(5, 3))
        assert cs == sorted(cs)

    def test_diameter_pruning_is_exact(self):
        for m in range(1, 7):
            full = enumerate_supertrees(m, 3)
            for d in range(1, m + 1):
                pruned = codes(enumerate_supertrees(m, 3, max_diameter=d))
                assert pruned == [canonical_code(T) for T in full if diameter(T) <= d]

    def test_guard_rail(self):
        with pytest.raises(errors.TooLarge):
            enumerate_supertrees(GUARD_RAIL // 2 + 1, 3)
        with pytest.raises(errors.BadParams):
            enumerate_supertrees(0, 3)


class TestClasses:
    def test_diameter_extremes(self):
        all4 = enumerate_supertrees(4, 3)
        assert codes(filter_class(all4, SupertreeClass("diameter", 2))) == [canonical_code(hyperstar(4, 3))]
        assert codes(filter_class(all4, SupertreeClass("diameter", 4))) == [canonical_code(loose_path(4, 3))]

    def test_s_5_3_3_members(self):
        cls = codes(filter_class(enumerate_supertrees(5, 3), SupertreeClass.parse("diameter=3")))
        for G in (s1(5, 3, 3), s3(5, 3, 3), s4(5, 3)):
            assert cls.count(canonical_code(G)) == 1

    def test_parse(self):
        assert SupertreeClass.parse("all") == SupertreeClass()
        assert SupertreeClass.parse("p=2") == SupertreeClass("pendent_edges", 2)
        assert SupertreeClass.parse("q=7").kind == "pendent_vertices"
        assert SupertreeClass.parse("degrees=1,3,1,1,1,1,1").value == (3, 1, 1, 1, 1, 1, 1)
        for bad in ("size=3", "d=", "p=x"):
            with pytest.raises(errors.BadParams):
                SupertreeClass.parse(bad)

    def test_classes_partition(self):
        graphs = enumerate_supertrees(5, 3)
        sizes = [len(filter_class(graphs, SupertreeClass("diameter", d))) for d in range(1, 6)]
        assert sum(sizes) == len(graphs)


class TestRank:
    def test_s_5_3_3(self):
        ranked = rank_by_q(filter_class(enumerate_supertrees(5, 3), SupertreeClass("diameter", 3)))
        assert ranked[0].code == canonical_code(s1(5, 3, 3))
        assert ranked[1].code == canonical_code(s4(5, 3))
        assert [r.group for r in ranked] == [0, 1, 2]
        values = [r.value for r in ranked]
        assert values == sorted(values, reverse=True)

    def test_single(self):
        ranked = rank_by_q([loose_path(2, 3)])
        assert len(ranked) == 1 and ranked[0].group == 0

    def test_ties_share_a_group(self):
        P = loose_path(3, 3)
        ranked = rank_by_q([P, P.relabel(list(reversed(range(P.n))))])
        assert ranked[0].group == ranked[1].group == 0

    def test_reuses_results(self):
        graphs = enumerate_supertrees(4, 3)
        first = rank_by_q(graphs)
        cache = {r.code: r.result for r in first}
        again = rank_by_q(graphs, results=cache)
        assert [r.result for r in again] == [r.result for r in first]

    def test_no_convergence(self):
        with pytest.raises(errors.NoConvergence):
            rank_by_q(enumerate_supertrees(4, 3), SolverOptions(max_iterations=2))
