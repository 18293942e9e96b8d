import random

import pytest

from supertrees import errors, harness
from supertrees.enumeration import enumerate_supertrees
from supertrees.families import s1, s2, s4
from supertrees.hypergraph import canonical_code
from supertrees.spectral import SolverOptions, SpectralResult


def _res(lo, hi):
    return SpectralResult(0.5 * (lo + hi), lo, hi, None, 0.0, 1)


class TestVerdicts:
    def test_strictly_greater(self):
        ctx = harness.Context(SolverOptions(tolerance=1e-10), 0)
        assert ctx.strictly_greater(_res(2.0, 2.0), _res(1.0, 1.0))[0] == harness.PASS
        assert ctx.strictly_greater(_res(1.0, 1.0), _res(2.0, 2.0))[0] == harness.FAIL
        assert ctx.strictly_greater(_res(1.0, 1.0 + 1e-10), _res(1.0 - 5e-10, 1.0))[0] == harness.INCONCLUSIVE

    def test_combine(self):
        assert harness.combine([]) == harness.INCONCLUSIVE
        assert harness.combine(["PASS", "PASS"]) == "PASS"
        assert harness.combine(["PASS", "INCONCLUSIVE"]) == "INCONCLUSIVE"
        assert harness.combine(["INCONCLUSIVE", "FAIL"]) == "FAIL"

    def test_exit_codes(self):
        assert harness.Report("x", {}, verdict="PASS").exit_code == 0
        assert harness.Report("x", {}, verdict="FAIL").exit_code == 1
        assert harness.Report("x", {}, verdict="INCONCLUSIVE").exit_code == 2
        assert harness.Report("x", {}, verdict="COUNTEREXAMPLE").exit_code == 1

    def test_argmax_row_catches_a_wrong_claim(self):
        ctx = harness.Context(SolverOptions(), 0)
        members = harness._diameter_class(6, 4, 3)
        assert harness._argmax_row(ctx, members, s1(6, 4, 3))["verdict"] == "PASS"
        assert harness._argmax_row(ctx, members, s2(6, 4, 3))["verdict"] == "FAIL"


class TestGrid:
    def test_values(self):
        assert harness.parse_values("3") == [3]
        assert harness.parse_values("3,5") == [3, 5]
        assert harness.parse_values("3..5") == [3, 4, 5]
        assert harness.parse_values("d+1..d+3", {"d": 4}) == [5, 6, 7]
        assert harness.parse_values("2..d", {"d": 3}) == [2, 3]

    def test_bad_values(self):
        for text in ("x..3", "d+1", "3..?"):
            with pytest.raises(errors.BadParams):
                harness.parse_values(text)

    def test_grid(self):
        grid = harness.parse_grid("k=3,4;d=3..4;m=d+1..d+2")
        cells = harness.expand_grid(grid)
        assert len(cells) == 8
        assert {"k": 4, "d": 4, "m": 6} in cells
        assert harness.parse_grid("k=3 d=3") == {"k": "3", "d": "3"}
        with pytest.raises(errors.BadParams):
            harness.parse_grid("k3")


class TestClaims:
    def test_unknown(self):
        with pytest.raises(errors.UnknownClaim):
            harness.verify("thm9.9")

    def test_catalogue(self):
        assert set(harness.CLAIMS) == {
            "lem2.4", "lem2.6", "lem2.7", "lem2.8", "lem2.9", "lem2.10", "thm3.1", "thm3.3",
            "thm3.4", "thm4.2", "lem4.4", "lem4.5", "thm4.8", "thm4.10"}

    def test_thm33_example(self):
        rep = harness.verify("thm3.3", {"k": "3", "d": "3", "m": "5"})
        assert rep.verdict == "PASS" and len(rep.rows) == 1
        assert rep.rows[0]["argmax_code"] == str(canonical_code(s1(5, 3, 3)))
        assert rep.rows[0]["margin"] > 1e-9
        assert rep.solver["tolerance"] == 1e-10

    def test_thm34_example(self):
        rep = harness.verify("thm3.4", {"k": "3", "m": "5"})
        assert rep.verdict == "PASS"
        assert rep.rows[0]["ranking"][:2] == [str(canonical_code(s1(5, 3, 3))), str(canonical_code(s4(5, 3)))]

    def test_thm34_four_edges(self):
        rep = harness.verify("thm3.4", {"m": "4"})
        assert rep.verdict == "PASS" and rep.rows[0]["class_is_s1_s3"]

    def test_lem27_exhaustive(self):
        rep = harness.verify("lem2.7", {"mode": "exhaustive", "k": "3", "m_max": "4"})
        assert rep.verdict == "PASS" and rep.rows

    @pytest.mark.parametrize("claim", ["lem2.4", "lem2.6", "lem2.7", "lem2.8", "lem2.9", "lem2.10"])
    def test_lemmas_small(self, claim):
        rep = harness.verify(claim, {"instances": "25", "k": "3", "m_max": "5"})
        assert rep.verdict == "PASS"
        assert len(rep.rows) == 25

    @pytest.mark.parametrize("claim", ["thm4.2", "thm4.8", "thm4.10", "lem4.4", "lem4.5"])
    def test_degree_claims_small(self, claim):
        rep = harness.verify(claim, {"m_max": "4"})
        assert rep.verdict == "PASS" and rep.rows

    def test_thm31_hypertree_subclass(self):
        rep = harness.verify("thm3.1", {"k": "3", "d": "4", "m": "5..6"})
        assert rep.verdict == "PASS"
        for row in rep.rows:
            assert row["class_size"] >= 1

    def test_hypertree_membership(self):
        assert harness.is_hypertree(s1(6, 3, 3))
        assert all(harness.is_hypertree(T) for T in enumerate_supertrees(4, 2))
        assert not all(harness.is_hypertree(T) for T in enumerate_supertrees(4, 3))

    def test_reproducible(self):
        a = harness.verify("lem2.9", {"instances": "15", "k": "3"}, seed=4)
        b = harness.verify("lem2.9", {"instances": "15", "k": "3"}, seed=4)
        assert a.rows == b.rows and a.seed == 4

    def test_seed_changes_instances(self):
        a = harness.verify("lem2.10", {"instances": "10"}, seed=1)
        b = harness.verify("lem2.10", {"instances": "10"}, seed=2)
        assert a.rows != b.rows

    def test_guard_rail(self):
        with pytest.raises(errors.TooLarge):
            harness.verify("thm3.3", {"k": "4", "d": "5", "m": "20"})

    def test_report_dict(self):
        rep = harness.verify("thm3.4", {"m": "5"})
        d = rep.to_dict()
        assert d["claim_id"] == "thm3.4" and d["counts"] == {"PASS": 1}
        assert "thm3.4: PASS" in rep.summary()


def test_random_supertree_is_valid():
    rng = random.Random(0)
    for _ in range(50):
        T = harness.random_supertree(rng.randint(1, 6), rng.randint(2, 4), rng)
        assert T.n == T.m * (T.k - 1) + 1 and T.is_connected()


class TestConjectureScan:
    def test_single_cell(self):
        rep = harness.conjecture_scan([4], [5], [3])
        assert len(rep.rows) == 1
        row = rep.rows[0]
        assert row["s2_code"] == str(canonical_code(s2(5, 4, 3)))
        assert row["verdict"] in ("CONSISTENT", "COUNTEREXAMPLE", "INCONCLUSIVE")

    def test_four_cells(self):
        rep = harness.conjecture_scan([4, 5], lambda d: [d + 1, d + 2], [3])
        assert [(r["m"], r["d"]) for r in rep.rows] == [(5, 4), (6, 4), (6, 5), (7, 5)]
        for row in rep.rows:
            assert {"second_code", "gap_first_second", "gap_second_third"} <= set(row)
        assert rep.claim_id == "conj3.5"

    def test_empty(self):
        rep = harness.conjecture_scan([], [], [3])
        assert rep.rows == [] and rep.verdict == "INCONCLUSIVE"

    def test_bad_cell(self):
        with pytest.raises(errors.BadParams):
            harness.conjecture_scan([3], [4], [3])
