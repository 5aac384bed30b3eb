import math
from fractions import Fraction

import numpy as np
import pytest

from kwsparse import derand
from kwsparse.derand import (
    CandidateReport,
    DerandConfig,
    derandomized_sparsify,
    derived_constants,
    truncated_probabilities,
)
from kwsparse.errors import Disconnected, EmptyGraph, ExhaustedSeeds, OutOfRange
from kwsparse.fixtures import complete, cycle, petersen
from kwsparse.graph import WeightedGraph, laplacian
from kwsparse.resistance import effective_resistances_exact
from kwsparse.sparsify import oversampling_rate
from kwsparse.verify import Verdict

from conftest import oracle_approx


class TestConstants:
    def test_k3(self):
        c = derived_constants(complete(3), DerandConfig(2, 0.5))
        assert c.delta == 0.25
        assert c.eps_hat == pytest.approx(0.4)
        # d_max = 2: alpha = 1/4, alpha' = 1/17, t = ceil(log2 17) = 5
        assert c.alpha == pytest.approx(0.25)
        assert Fraction(c.alpha_prime).limit_denominator(1000) == Fraction(1, 17)
        assert c.t == 5
        assert c.s == pytest.approx(oversampling_rate(3, 2, 0.4, 0.25))
        assert c.threshold == math.ceil(12 * c.s * 2)

    def test_quantum_is_smallest(self):
        for ap in (1 / 17, 0.5, 0.25, 0.2, 1e-3, 1 / 1024):
            t = derand._quantum_bits(ap)
            assert 2.0**-t <= ap and (t == 1 or 2.0 ** -(t - 1) > ap)

    def test_subunit_weights_scale_alpha(self):
        G = WeightedGraph.from_edges(3, [(0, 1, 0.5), (0, 2, 0.5), (1, 2, 0.5)])
        c = derived_constants(G, DerandConfig(2, 0.5))
        assert c.alpha == pytest.approx(0.5 / (2 * 1.0))

    def test_probabilities_on_grid(self):
        G = complete(3)
        c = derived_constants(G, DerandConfig(2, 0.5))
        p = truncated_probabilities(G, effective_resistances_exact(G), 0.5, c.alpha_prime)
        assert np.all((p * 32) == np.floor(p * 32))
        assert np.all(p == 0.34375)  # floor(32 * (2/3)(1/2)(17/16)) / 32 = 11/32

    def test_saturated_probability(self):
        G = complete(3)
        p = truncated_probabilities(G, effective_resistances_exact(G), 1e3, 1 / 17)
        assert np.all(p == 1.0)

    def test_within_alpha_of_exact(self, rng):
        from conftest import random_connected_graph
        from kwsparse.resistance import effective_resistances_approx
        for _ in range(10):
            G = random_connected_graph(rng, 12, wlow=1, whigh=5)
            c = derived_constants(G, DerandConfig(2, 0.5))
            R = effective_resistances_exact(G)
            s = 0.2
            exact = np.minimum(1, G.weights * R.values * s)
            approx = truncated_probabilities(G, effective_resistances_approx(G, c.alpha_prime, 3), s, c.alpha_prime)
            assert np.all(np.abs(approx - exact) <= c.alpha + 1e-12)

    def test_validation(self):
        with pytest.raises(OutOfRange):
            DerandConfig(3, 0.5)
        with pytest.raises(OutOfRange):
            DerandConfig(2, 1.2)
        with pytest.raises(OutOfRange):
            DerandConfig(2, 0.5, parallel_width=0)

    def test_bad_graphs(self):
        with pytest.raises(Disconnected):
            derived_constants(WeightedGraph.from_edges(4, [(0, 1), (2, 3)]), DerandConfig(2, 0.5))
        with pytest.raises(EmptyGraph):
            derived_constants(WeightedGraph.from_edges(2, []), DerandConfig(2, 0.5))


class TestPipeline:
    def test_k3(self):
        H, report = derandomized_sparsify(complete(3), DerandConfig(2, 0.9))
        assert report.accepted and report.verifier_verdict is Verdict.YES
        assert oracle_approx(laplacian(H), laplacian(complete(3)), 0.9)

    @pytest.mark.parametrize("noise_seed", [0, 1, 4])
    def test_modes(self, noise_seed):
        G = cycle(6)
        H, report = derandomized_sparsify(G, DerandConfig(2, 0.6, noise_seed=noise_seed))
        assert oracle_approx(laplacian(H), laplacian(G), 0.6)

    def test_parallel_matches_sequential(self):
        G = petersen()
        a = derandomized_sparsify(G, DerandConfig(2, 0.9))
        b = derandomized_sparsify(G, DerandConfig(2, 0.9, parallel_width=3, block_size=7))
        assert a[1] == b[1] and a[0] == b[0]

    def test_report_line(self):
        r = CandidateReport(4, 10, Verdict.YES, True)
        assert r.line(99) == "seed=4 edges=10 threshold=99 verdict=YES"
        assert CandidateReport(4, 10, None, False).line(9).endswith("verdict=SKIPPED")


def _fake_scanner(accept):
    def scan(plan, verifier, seeds, threshold):
        best = None
        for seed in seeds:
            if seed in accept:
                rep = CandidateReport(seed, 1, Verdict.YES, True)
                return rep, rep, plan.graph
            rep = CandidateReport(seed, 1, Verdict.NO, False)
            best = best or rep
        return None, best, None
    return scan


class TestSearchOrder:
    @pytest.mark.parametrize("width", [1, 2, 5])
    def test_lowest_index_wins(self, monkeypatch, width):
        monkeypatch.setattr(derand, "_scan_block", _fake_scanner({37, 700, 41}))
        _, report = derandomized_sparsify(complete(3), DerandConfig(2, 0.9, parallel_width=width, block_size=4))
        assert report.seed_index == 37

    @pytest.mark.parametrize("width", [1, 3])
    def test_exhausted(self, monkeypatch, width):
        monkeypatch.setattr(derand, "_scan_block", _fake_scanner(set()))
        with pytest.raises(ExhaustedSeeds) as info:
            derandomized_sparsify(complete(3), DerandConfig(2, 0.9, enumeration_cap=50,
                                                            parallel_width=width, block_size=8))
        assert info.value.tried == 50
        assert info.value.best.seed_index == 0

    def test_real_rejection_exhausts(self, monkeypatch):
        monkeypatch.setattr(derand.Verifier, "__call__", lambda self, Lt, stats=None: Verdict.NO)
        with pytest.raises(ExhaustedSeeds) as info:
            derandomized_sparsify(complete(4), DerandConfig(2, 0.9, enumeration_cap=20))
        assert info.value.best.verifier_verdict is Verdict.NO
