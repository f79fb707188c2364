"""Partition fitting, dense-core extraction, and stability certificates."""

import math
import random

import pytest

from shadowlab import (
    Cancellative,
    Expansion,
    Hypergraph,
    complete,
    perturb,
    turan,
    turan_padded,
)
from shadowlab.errors import (
    ParameterError,
    PreconditionError,
    ResourceBudgetError,
)
from shadowlab.stability import (
    brute_force_partition_fit,
    core_extract_cancellative,
    core_extract_expansion,
    partition_fit,
    stability_certificate,
)


def t6_plus_intra_part_edge():
    base = turan(6, 3, 3)[0]
    # vertices 0 and 3 share a part under the round-robin rule
    return Hypergraph.build(3, 6, base.edges + ((0, 1, 3),))


class TestPartitionFit:
    def test_turan_fits_exactly(self, t6):
        fit = partition_fit(t6, 3, 6)
        assert fit.removed == 0 and fit.optimal
        assert sorted(map(sorted, fit.parts)) == [[0, 3], [1, 4], [2, 5]]

    def test_intra_part_edge_costs_one(self):
        fit = partition_fit(t6_plus_intra_part_edge(), 3, 6)
        assert fit.removed == 1 and fit.optimal

    def test_complete_needs_removals(self, k4):
        fit = partition_fit(k4, 3, 4)
        assert fit.removed == brute_force_partition_fit(k4, 3, 4) == 2

    def test_cap_forces_vertices_out(self, t6):
        fit = partition_fit(t6, 3, 5)
        assert len(fit.subset) <= 5
        assert fit.removed == brute_force_partition_fit(t6, 3, 5) == 4

    def test_heuristic_upper_bounds_exact(self, t6):
        h = t6_plus_intra_part_edge()
        exact = partition_fit(h, 3, 6)
        heur = partition_fit(h, 3, 6, mode="heuristic", seed=1)
        assert not heur.optimal
        assert heur.removed >= exact.removed

    def test_heuristic_finds_turan_fit(self, t6):
        assert partition_fit(t6, 3, 6, mode="heuristic").removed == 0

    def test_matches_brute_force_on_random(self):
        rng = random.Random(8)
        import itertools

        for _ in range(40):
            n = rng.randint(4, 6)
            candidates = list(itertools.combinations(range(n), 3))
            h = Hypergraph.build(
                3, n, rng.sample(candidates, rng.randint(0, min(8, len(candidates))))
            )
            ell = rng.randint(2, 3)
            cap = rng.randint(2, n)
            assert partition_fit(h, ell, cap).removed == brute_force_partition_fit(
                h, ell, cap
            )

    def test_zero_removed_iff_multipartite_subgraph(self, t6):
        fit = partition_fit(t6, 3, 6)
        part_of = {v: i for i, p in enumerate(fit.parts) for v in p}
        assert all(len({part_of[v] for v in e}) == 3 for e in t6.edges)

    def test_budget_and_parameter_errors(self, t6):
        with pytest.raises(ResourceBudgetError):
            partition_fit(Hypergraph.build(3, 20, []), 3, 20)
        with pytest.raises(ParameterError):
            partition_fit(t6, 0, 6)
        with pytest.raises(ParameterError):
            partition_fit(t6, 3, 6, mode="annealing")


class TestCoreExtractCancellative:
    def test_turan_keeps_everything(self, t6):
        core = core_extract_cancellative(t6, 0.01)
        assert len(core.members) == 12
        assert core.core == (0, 1, 2, 3, 4, 5)
        assert all(f.satisfied for f in core.flags)

    def test_flag_identifiers(self, t6):
        core = core_extract_cancellative(t6, 0.01)
        assert {f.identifier for f in core.flags} == {
            "g-size-lower",
            "min-degree-on-core",
            "core-size-upper",
            "core-size-lower",
            "induced-size-lower",
        }

    def test_single_edge_smoke(self):
        core = core_extract_cancellative(Hypergraph.build(3, 3, [(0, 1, 2)]), 0.25)
        assert set(core.members) <= {(0, 1), (0, 2), (1, 2)}

    def test_threshold_monotonicity(self, t6):
        h = perturb(turan(9, 3, 3)[0], 3, 2, 0).hypergraph
        loose = core_extract_cancellative(h, 0.04)
        strict = core_extract_cancellative(h, 0.01)  # higher threshold
        assert set(strict.members) <= set(loose.members)
        assert set(strict.core) <= set(loose.core)

    def test_rejects_non_cancellative(self, k4):
        with pytest.raises(PreconditionError):
            core_extract_cancellative(k4, 0.1)

    def test_eps_validation(self, t6):
        for eps in (0.0, 1.0, -0.5):
            with pytest.raises(ParameterError):
                core_extract_cancellative(t6, eps)

    def test_core_inside_support(self):
        h = turan_padded(10, 6, 3, 3)
        core = core_extract_cancellative(h, 0.01)
        assert set(core.core) <= h.support


class TestCoreExtractExpansion:
    def test_turan_with_z_window(self, t6):
        core = core_extract_expansion(t6, 3, 0.01)
        assert core.core == (0, 1, 2, 3, 4, 5)
        assert core.stats["z"] == pytest.approx(4.0)
        assert core.flag("z-window-lower").satisfied
        assert core.flag("z-window-upper").satisfied

    def test_padding_excluded_from_core(self):
        core = core_extract_expansion(turan_padded(10, 6, 3, 3), 3, 0.01)
        assert core.core == (0, 1, 2, 3, 4, 5)

    def test_tight_point_smoke(self, k4):
        core = core_extract_expansion(k4, 4, 0.05)
        assert core.members and core.flags

    def test_rejects_covered_clique(self):
        with pytest.raises(PreconditionError):
            core_extract_expansion(complete(5, 3), 3, 0.1)


class TestCertificate:
    def test_padded_turan_passes(self):
        cert = stability_certificate(
            turan_padded(9, 6, 3, 3), Cancellative(), 0.05, 0.05
        )
        assert cert.passed and cert.status == "ok"
        assert cert.x == pytest.approx(6, abs=1e-9)
        assert cert.fit.removed == 0

    def test_near_extremal_passes(self, t6):
        h = Hypergraph.build(3, 6, t6.edges[1:])
        cert = stability_certificate(h, Cancellative(), 0.2, 0.2)
        assert cert.passed and cert.fit.removed == 0

    def test_sparse_input_fails_hypothesis(self):
        # two disjoint edges: shadow 6 gives bound 2.83, well above |H| = 2
        h = Hypergraph.build(3, 6, [(0, 1, 2), (3, 4, 5)])
        cert = stability_certificate(h, Cancellative(), 0.05, 0.05)
        assert not cert.hypothesis_met
        assert cert.status == "hypothesis-not-met"
        assert not cert.passed and cert.fit is None

    def test_expansion_family(self, t6):
        cert = stability_certificate(t6, Expansion(3), 0.05, 0.05)
        assert cert.passed and cert.ell_parts == 3

    @pytest.mark.parametrize("n", [3, 6, 9, 12])
    def test_turan_always_passes(self, n):
        h = turan(n, 3, 3)[0]
        cert = stability_certificate(h, Cancellative(), 0.001, 0.001)
        assert cert.passed and cert.fit.removed == 0

    def test_eps1_reference_values(self, t6):
        cert = stability_certificate(t6, Cancellative(), 0.04, 0.1)
        refs = cert.eps1_references
        assert refs["lemma-statement"] == pytest.approx(35 * 3 ** 4 * 0.2)
        assert refs["theorem-invocation"] == pytest.approx(40 * 3 ** 6 * 0.2)
        assert refs["induction-variant"] == pytest.approx(35 * 3 ** 4 * 0.04 ** 0.25)

    def test_cap_override(self, t6):
        cert = stability_certificate(t6, Cancellative(), 0.05, 0.5, cap=5)
        assert len(cert.fit.subset) <= 5

    def test_rejects_non_free(self, k4):
        with pytest.raises(PreconditionError):
            stability_certificate(k4, Cancellative(), 0.05, 0.05)

    def test_removed_cap_uses_x_not_n(self):
        h = turan_padded(12, 6, 3, 3)  # padding must not inflate delta x^r
        cert = stability_certificate(h, Cancellative(), 0.05, 0.05)
        assert cert.removed_cap == pytest.approx(0.05 * 6 ** 3)
