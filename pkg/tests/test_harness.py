import json

import pytest

from pstlab.exactalg import charpoly, rank_mod_p
from pstlab.generate import gen_connected_graphs, gen_free_trees
from pstlab.graphs import (
    Graph,
    complete_graph,
    complete_minus_edge,
    cycle_graph,
    hypercube,
    laplacian,
    one_sum_chain,
    path_graph,
    star_graph,
)
from pstlab.harness import (
    aggregate_to_csv,
    check_bipartite_lmax,
    check_power_of_two_eigenvalue,
    check_trees_no_lpst,
    check_twin_theorem,
    check_unique_matching_no_apst,
    is_pedestrian,
    lmax_is_integer,
    power_of_two,
    replay_certificate,
    run_survey,
    screen_odd_odd,
    screen_power_of_two,
    spanning_tree_count,
    survey_records,
    tree_perfect_matching,
    verify_positive_report,
    write_survey_jsonl,
)
from pstlab.pst import all_pair_reports, laplacian_pst, pst_search
from pstlab.spectral import ADJACENCY, LAPLACIAN

from oracles import spanning_trees_brute


class TestSpanningTrees:
    def test_trees_have_one(self):
        for n in range(2, 7):
            assert spanning_tree_count(path_graph(n)) == 1

    def test_c5(self):
        assert spanning_tree_count(cycle_graph(5)) == 5
        assert spanning_trees_brute(cycle_graph(5)) == 5

    def test_k4(self):
        assert spanning_tree_count(complete_graph(4)) == 16

    def test_against_brute_force(self, corpus6):
        for g in corpus6:
            if g.n <= 6:
                assert spanning_tree_count(g) == spanning_trees_brute(g)

    def test_vertex_choice_irrelevant(self, corpus6):
        for g in corpus6:
            base = spanning_tree_count(g, 0)
            assert all(spanning_tree_count(g, v) == base for v in range(1, g.n))

    def test_disconnected_gives_zero(self):
        assert spanning_tree_count(Graph(4, [(0, 1), (2, 3)])) == 0

    def test_tau_n_equals_lowest_charpoly_coefficient(self, corpus6):
        for g in corpus6:
            tau = spanning_tree_count(g)
            if tau == 0:
                continue
            p = charpoly(laplacian(g))
            lowest = next(c for c in p.coeffs if c != 0)
            assert g.n * tau == abs(lowest)


class TestScreens:
    def test_pedestrian(self):
        assert is_pedestrian(cycle_graph(3))
        assert not is_pedestrian(cycle_graph(4))
        assert is_pedestrian(one_sum_chain([3, 3]))
        assert spanning_tree_count(one_sum_chain([3, 3])) == 9

    def test_pedestrian_rejects_disconnected(self):
        with pytest.raises(ValueError):
            is_pedestrian(Graph(3, [(0, 1)]))

    def test_odd_odd(self):
        assert screen_odd_odd(cycle_graph(5))
        assert not screen_odd_odd(cycle_graph(4))
        assert not screen_odd_odd(cycle_graph(6))

    def test_odd_odd_rules_out_transfer_small(self):
        for n in range(3, 7):
            for g in gen_connected_graphs(n):
                if screen_odd_odd(g):
                    assert pst_search(g, LAPLACIAN) == []

    def test_power_of_two_screen(self):
        s = screen_power_of_two(hypercube(3))
        assert not s.applicable  # tau(Q3) = 384 is not a power of two
        assert s.tau == 384
        s = screen_power_of_two(cycle_graph(8))
        assert s.applicable and s.tau == 8 and s.admissible_pairs == []

    def test_power_of_two_flags(self):
        assert power_of_two(1) and power_of_two(8)
        assert not power_of_two(0) and not power_of_two(6)


class TestTwinTheorem:
    def test_full_small_corpus(self, corpus6):
        res = check_twin_theorem(corpus6)
        assert res.passed, res.violations
        assert res.details["exceptionals_seen"] == 2

    def test_known_negative_cases(self):
        # small twin pairs outside the two exceptional graphs never transfer
        k13_plus_edge = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2)])
        for g, u, v in ((complete_graph(3), 0, 1), (path_graph(3), 0, 2),
                        (star_graph(3), 1, 2), (k13_plus_edge, 1, 2)):
            assert laplacian_pst(g, u, v).verdict == "no"

    def test_exceptions_transfer(self):
        assert laplacian_pst(cycle_graph(4), 0, 2).yes
        assert laplacian_pst(complete_minus_edge(4), 0, 1).yes


class TestPowerOfTwoEigenvalue:
    def test_c4_antipodal(self):
        res = check_power_of_two_eigenvalue(cycle_graph(4), 0, 2)
        assert res.passed

    def test_k4_minus_edge(self):
        res = check_power_of_two_eigenvalue(complete_minus_edge(4), 0, 1)
        assert res.passed

    def test_q3_precondition_fails(self):
        with pytest.raises(ValueError):
            check_power_of_two_eigenvalue(hypercube(3), 0, 7)

    def test_non_cospectral_pair_rejected(self):
        with pytest.raises(ValueError):
            check_power_of_two_eigenvalue(cycle_graph(4), 0, 1)


class TestLmaxIntegrality:
    def test_examples(self):
        assert lmax_is_integer(cycle_graph(4))
        assert lmax_is_integer(path_graph(3))
        assert not lmax_is_integer(path_graph(4))
        assert not lmax_is_integer(cycle_graph(5))
        assert lmax_is_integer(complete_graph(5))

    def test_against_numeric(self, corpus6):
        import numpy as np
        for g in corpus6:
            lam = float(np.linalg.eigvalsh(np.array(laplacian(g), dtype=float))[-1])
            near_int = abs(lam - round(lam)) < 1e-8
            assert lmax_is_integer(g) == near_int, (g, lam)

    def test_bipartite_check_small(self, corpus6):
        res = check_bipartite_lmax(corpus6)
        assert res.passed
        assert res.details["bipartite"] == 1 + 1 + 1 + 3 + 5 + 17


class TestTreeChecks:
    def test_no_laplacian_transfer_small(self):
        res = check_trees_no_lpst(8)
        assert res.passed, res.violations[:3]
        assert res.details["trees"] == 1 + 2 + 3 + 6 + 11 + 23

    def test_matching_theorem_small(self):
        res = check_unique_matching_no_apst(8)
        assert res.passed, res.violations[:3]

    def test_perfect_matchings(self):
        assert tree_perfect_matching(path_graph(4)) == [(0, 1), (2, 3)]
        assert tree_perfect_matching(path_graph(6)) == [(0, 1), (2, 3), (4, 5)]
        assert tree_perfect_matching(path_graph(3)) is None
        assert tree_perfect_matching(star_graph(3)) is None
        # even order is not enough: two leaves on one support vertex strand
        spider = Graph(6, [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5)])
        assert tree_perfect_matching(spider) is None
        with pytest.raises(ValueError):
            tree_perfect_matching(cycle_graph(4))
        assert tree_perfect_matching(Graph(8, [(0, 1), (1, 2), (2, 3), (3, 4),
                                               (4, 5), (5, 6), (6, 7)])) is not None

    def test_matching_cap(self):
        with pytest.raises(ValueError):
            check_unique_matching_no_apst(13)


class TestSurvey:
    def test_n4_aggregate(self):
        records, agg = run_survey(gen_connected_graphs(4), with_pst=True)
        assert agg["connected"] == 6
        assert agg["tau_odd"] == 3
        assert agg["tau_power_of_two"] == 5
        assert agg["lpst_pairs"] == 3   # two C4 pairs plus one in K4 minus an edge
        assert agg["apst_pairs"] == 2   # the two C4 pairs
        assert agg["undecided_pairs"] == 0

    def test_n5_aggregate(self):
        _, agg = run_survey(gen_connected_graphs(5))
        assert agg["connected"] == 21
        assert agg["lpst_pairs"] is None

    def test_records_jsonl_roundtrip(self, tmp_path):
        records, _ = run_survey(gen_connected_graphs(4))
        out = tmp_path / "records.jsonl"
        write_survey_jsonl(records, str(out))
        lines = out.read_text().splitlines()
        assert len(lines) == 6
        parsed = [json.loads(line) for line in lines]
        assert all(set(p) == {"graph6", "n", "spanning_trees", "tau_odd",
                              "tau_power_of_two", "has_small_twins", "bipartite",
                              "lmax_integer", "lpst_pairs", "apst_pairs",
                              "undecided_pairs"} for p in parsed)

    def test_worker_pool_matches_serial(self):
        graphs = list(gen_connected_graphs(5))
        serial = survey_records(graphs, False, workers=1)
        parallel = survey_records(graphs, False, workers=2)
        assert [r.to_json() for r in serial] == [r.to_json() for r in parallel]

    def test_aggregate_csv(self):
        _, agg = run_survey(gen_connected_graphs(4))
        text = aggregate_to_csv(agg)
        header, *rows = text.strip().splitlines()
        assert header == "metric,value"
        assert len(rows) == len(agg)

    def test_disconnected_records(self):
        rec = survey_records([Graph(4, [(0, 1), (2, 3)])])[0]
        assert rec.spanning_trees == 0
        assert not rec.tau_odd and not rec.tau_power_of_two
        assert rec.bipartite


class TestCertificateReplay:
    def test_all_negatives_replay_small(self, corpus6):
        replayed = 0
        for g in corpus6:
            if g.n < 2 or g.n > 5:
                continue
            for kind in (LAPLACIAN, ADJACENCY):
                for r in all_pair_reports(g, kind):
                    if r.verdict == "yes":
                        ok, why = verify_positive_report(g, r)
                        assert ok, why
                    else:
                        ok, why = replay_certificate(g, r)
                        assert ok, (r.graph6, kind, r.u, r.v, r.certificate.kind, why)
                        replayed += 1
        assert replayed >= 400

    def test_tree_negatives_replay(self):
        for t in gen_free_trees(6):
            for r in all_pair_reports(t, ADJACENCY):
                if r.verdict != "yes":
                    ok, why = replay_certificate(t, r)
                    assert ok, why

    def test_tampered_certificate_rejected(self):
        from pstlab.spectral import IntegerEig
        r = laplacian_pst(path_graph(4), 0, 1)
        assert r.verdict == "no"
        r.certificate.witnesses = (IntegerEig(99),)
        ok, _ = replay_certificate(path_graph(4), r)
        assert not ok

    def test_missing_certificate_rejected(self):
        r = laplacian_pst(path_graph(4), 0, 1)
        r.certificate = None
        ok, why = replay_certificate(path_graph(4), r)
        assert not ok


class TestModularRankLaw:
    def test_rank_drop_exactly_at_divisors(self, corpus6):
        checked = 0
        for g in corpus6:
            if not g.is_connected() or g.n < 2:
                continue
            tau = spanning_tree_count(g)
            lap = laplacian(g)
            for p in (3, 5, 7, 11, 13):
                r = rank_mod_p(lap, p)
                if tau % p == 0:
                    assert r < g.n - 1
                else:
                    assert r == g.n - 1
                checked += 1
        assert checked >= 700
