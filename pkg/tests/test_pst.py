import math
from fractions import Fraction as F

import pytest

from pstlab.graphs import (
    Graph,
    complete_graph,
    complete_minus_edge,
    cycle_graph,
    hypercube,
    path_graph,
    star_graph,
)
from pstlab.pst import (
    PSTReport,
    adjacency_pst,
    all_pair_reports,
    bipartite_phase_check,
    exact_transfer_vector,
    laplacian_pst,
    numeric_fidelity,
    pst_search,
)
from pstlab.spectral import ADJACENCY, LAPLACIAN, IntegerEig

CERT_KINDS = {"not-strongly-cospectral", "non-integer-support", "parity-violation",
              "mixed-delta", "residual-factor", "quadratic-mixed-a"}


class TestLaplacianDecider:
    def test_p2(self):
        r = laplacian_pst(path_graph(2), 0, 1)
        assert r.yes and r.g == 2
        assert (r.time_coeff, r.time_delta) == (F(1, 2), 1)
        assert r.phase_s == 0 and r.phase_value() == 1

    def test_c4_antipodal(self):
        r = laplacian_pst(cycle_graph(4), 0, 2)
        assert r.yes and r.g == 2
        assert [e.value for e in r.plus_set] == [0, 4]
        assert [e.value for e in r.minus_set] == [2]

    def test_k4_minus_edge_nonadjacent(self):
        r = laplacian_pst(complete_minus_edge(4), 0, 1)
        assert r.yes and r.g == 2 and r.time_coeff == F(1, 2)

    def test_star_leaves_closed_with_certificate(self):
        r = laplacian_pst(star_graph(3), 1, 2)
        assert r.verdict == "no"
        assert r.certificate.kind in CERT_KINDS

    def test_yes_implies_zero_in_plus_set(self, corpus6):
        found = 0
        for g in corpus6:
            if g.n < 2:
                continue
            for r in pst_search(g, LAPLACIAN):
                assert IntegerEig(0) in r.plus_set
                found += 1
        assert found >= 3  # C4 twice, K4 minus edge at least

    def test_hypercubes(self):
        for k, pairs in ((2, 2), (3, 4)):
            q = hypercube(k)
            found = pst_search(q, LAPLACIAN)
            assert len(found) == pairs
            mask = (1 << k) - 1
            assert all(r.v == r.u ^ mask for r in found)
            assert all(r.time_coeff == F(1, 2) and r.time_delta == 1 for r in found)

    def test_validation(self):
        with pytest.raises(ValueError):
            laplacian_pst(path_graph(3), 0, 0)
        with pytest.raises(ValueError):
            laplacian_pst(Graph(3, [(0, 1)]), 0, 1)
        with pytest.raises(ValueError):
            laplacian_pst(path_graph(3), 0, 9)


class TestAdjacencyDecider:
    def test_p2_phase_i(self):
        r = adjacency_pst(path_graph(2), 0, 1)
        assert r.yes and r.g == 2
        assert (r.time_coeff, r.time_delta) == (F(1, 2), 1)
        assert r.phase_s == F(1, 2)
        assert abs(r.phase_value() - 1j) < 1e-12

    def test_p3_endpoints_scaled_branch(self):
        r = adjacency_pst(path_graph(3), 0, 2)
        assert r.yes and r.g == 1
        assert (r.time_coeff, r.time_delta) == (F(1), 2)
        assert abs(r.time_value() - math.pi / math.sqrt(2)) < 1e-15
        assert r.phase_s == 1 and abs(r.phase_value() + 1) < 1e-12

    def test_p4_endpoints_no(self):
        r = adjacency_pst(path_graph(4), 0, 3)
        assert r.verdict == "no"
        assert r.certificate.kind in CERT_KINDS

    def test_c4_antipodal(self):
        r = adjacency_pst(cycle_graph(4), 0, 2)
        assert r.yes and r.g == 2 and r.phase_s == 1

    def test_k4_no_pairs(self):
        assert pst_search(complete_graph(4), ADJACENCY) == []

    def test_k2_complement_of_nothing(self):
        # K3: support {2, -1}, g = 3, parity fails (diff 3 odd over g=3 -> 1)
        r = adjacency_pst(complete_graph(3), 0, 1)
        assert r.verdict == "no"

    def test_no_undecided_on_bipartite(self, corpus6):
        from pstlab.graphs import bipartition
        for g in corpus6:
            if g.n < 2 or bipartition(g) is None:
                continue
            for r in all_pair_reports(g, ADJACENCY):
                assert r.verdict != "undecided"


class TestNumericOracle:
    def test_p2_laplacian_peak(self):
        assert abs(numeric_fidelity(path_graph(2), LAPLACIAN, 0, 1, math.pi / 2) - 1) < 1e-12

    def test_p2_laplacian_at_zero(self):
        assert numeric_fidelity(path_graph(2), LAPLACIAN, 0, 1, 0.0) < 1e-15

    def test_p3_adjacency_peak(self):
        fid = numeric_fidelity(path_graph(3), ADJACENCY, 0, 2, math.pi / math.sqrt(2))
        assert abs(fid - 1) < 1e-9

    def test_p2_closed_form_curve(self):
        for t in (0.3, 0.7, 1.1):
            fid = numeric_fidelity(path_graph(2), LAPLACIAN, 0, 1, t)
            assert abs(fid - math.sin(t) ** 2) < 1e-12

    def test_all_positives_confirmed(self, corpus6):
        confirmed = 0
        for g in corpus6:
            if g.n < 2:
                continue
            for kind in (LAPLACIAN, ADJACENCY):
                for r in pst_search(g, kind):
                    fid = numeric_fidelity(g, kind, r.u, r.v, r.time_value())
                    assert fid >= 1 - 1e-9, (r.graph6, kind, r.u, r.v, fid)
                    confirmed += 1
        assert confirmed >= 5

    def test_scaled_branch_agrees_with_grid_search(self):
        # dense scan near pi/sqrt(2) reaches fidelity 1 for the P3 endpoints
        target = math.pi / math.sqrt(2)
        best = max(numeric_fidelity(path_graph(3), ADJACENCY, 0, 2,
                                    target + delta * 1e-3)
                   for delta in range(-50, 51))
        assert best >= 1 - 1e-6


class TestStructuralProperties:
    def test_symmetry_in_u_v(self, corpus6):
        import random
        rng = random.Random(7)
        graphs = [g for g in corpus6 if g.n >= 3]
        for g in rng.sample(graphs, 40):
            u, v = rng.sample(range(g.n), 2)
            for decide in (laplacian_pst, adjacency_pst):
                a, b = decide(g, u, v), decide(g, v, u)
                assert a.verdict == b.verdict
                assert a.g == b.g and a.time_coeff == b.time_coeff
                assert a.phase_s == b.phase_s
                assert set(a.plus_set) == set(b.plus_set)
                assert set(a.minus_set) == set(b.minus_set)
                if a.certificate:
                    assert a.certificate.kind == b.certificate.kind

    def test_exact_reconstruction_and_perturbation(self, corpus6):
        # U(t) e_u = gamma e_v decomposes as z+ - z-; swapping any single
        # eigenvalue across the classes must break the identity
        cases = 0
        for g in corpus6:
            if g.n < 2:
                continue
            for r in pst_search(g, LAPLACIAN):
                e_v = [1 if i == r.v else 0 for i in range(g.n)]
                vec = exact_transfer_vector(g, LAPLACIAN, r.u,
                                            list(r.plus_set), list(r.minus_set))
                assert vec == e_v
                for moved in r.plus_set:
                    plus = [e for e in r.plus_set if e != moved]
                    minus = list(r.minus_set) + [moved]
                    assert exact_transfer_vector(g, LAPLACIAN, r.u, plus, minus) != e_v
                for moved in r.minus_set:
                    plus = list(r.plus_set) + [moved]
                    minus = [e for e in r.minus_set if e != moved]
                    assert exact_transfer_vector(g, LAPLACIAN, r.u, plus, minus) != e_v
                cases += 1
        assert cases >= 3


class TestBipartitePhaseCheck:
    def test_p2_passes(self):
        r = adjacency_pst(path_graph(2), 0, 1)
        ok, why = bipartite_phase_check(r, path_graph(2))
        assert ok, why

    def test_c4_passes(self):
        r = adjacency_pst(cycle_graph(4), 0, 2)
        with pytest.raises(ValueError):
            # antipodal C4 vertices sit in the same colour class
            bipartite_phase_check(r, cycle_graph(4))

    def test_zero_in_support_fails(self):
        r = adjacency_pst(path_graph(2), 0, 1)
        doctored = PSTReport(r.graph6, r.matrix_kind, r.u, r.v, r.verdict,
                             None, r.g, r.time_coeff, r.time_delta, r.phase_s,
                             (IntegerEig(0),) + r.plus_set, r.minus_set)
        ok, why = bipartite_phase_check(doctored, path_graph(2))
        assert not ok and "0 in support" in why

    def test_unequal_two_adic_valuation_fails(self):
        r = adjacency_pst(path_graph(2), 0, 1)
        doctored = PSTReport(r.graph6, r.matrix_kind, r.u, r.v, r.verdict,
                             None, r.g, r.time_coeff, r.time_delta, r.phase_s,
                             (IntegerEig(2), IntegerEig(1)), r.minus_set)
        ok, why = bipartite_phase_check(doctored, path_graph(2))
        assert not ok

    def test_wrong_phase_fails(self):
        r = adjacency_pst(path_graph(2), 0, 1)
        doctored = PSTReport(r.graph6, r.matrix_kind, r.u, r.v, r.verdict,
                             None, r.g, r.time_coeff, r.time_delta, F(1),
                             r.plus_set, r.minus_set)
        ok, why = bipartite_phase_check(doctored, path_graph(2))
        assert not ok and "phase" in why

    def test_non_bipartite_precondition(self):
        r = adjacency_pst(path_graph(2), 0, 1)
        with pytest.raises(ValueError):
            bipartite_phase_check(r, cycle_graph(5))


class TestReportSerialization:
    def test_yes_schema(self):
        payload = adjacency_pst(path_graph(2), 0, 1).to_json()
        assert set(payload) == {"graph6", "kind", "u", "v", "verdict",
                                "certificate", "g", "time", "phase",
                                "plus_set", "minus_set"}
        assert payload["time"] == {"num": 1, "den": 2, "sqrt_delta": 1}
        assert payload["phase"] == {"s_num": 1, "s_den": 2}

    def test_no_schema_carries_certificate(self):
        payload = laplacian_pst(path_graph(4), 0, 1).to_json()
        assert payload["verdict"] == "no"
        assert payload["time"] is None and payload["phase"] is None
        assert payload["certificate"]["kind"] in CERT_KINDS

    def test_scaled_time_schema(self):
        payload = adjacency_pst(path_graph(3), 0, 2).to_json()
        assert payload["time"] == {"num": 1, "den": 1, "sqrt_delta": 2}
