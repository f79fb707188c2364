"""Enumeration engines, canonical forms, extremal numbers, bound sweeps."""

import itertools
import random

import pytest

from shadowlab import Cancellative, Expansion, Hypergraph, complete, fano, turan
from shadowlab.errors import ResourceBudgetError
from shadowlab.extremal import (
    are_isomorphic,
    cache_name,
    canonical_form,
    enumerate_free,
    enumerate_free_classes,
    extremal_search,
    permutation_isomorphism_oracle,
    random_free_graph,
    read_class_cache,
    verify_bound_over_enumeration,
    write_class_cache,
)


def relabel(h, perm):
    return Hypergraph.build(
        h.r, h.n, [tuple(perm[v] for v in e) for e in h.edges]
    )


class TestCanonicalForm:
    def test_invariant_under_relabeling(self, t6):
        rng = random.Random(5)
        base = canonical_form(t6)
        for _ in range(25):
            perm = list(range(6))
            rng.shuffle(perm)
            assert canonical_form(relabel(t6, perm)) == base

    def test_distinguishes_different_graphs(self, k4):
        assert canonical_form(k4) != canonical_form(fano())

    def test_class_count_on_4_vertices_matches_oracle(self):
        """All 16 labeled 3-graphs on 4 vertices, deduped two ways."""
        candidates = list(itertools.combinations(range(4), 3))
        graphs = []
        for bits in range(16):
            edges = [e for i, e in enumerate(candidates) if bits >> i & 1]
            graphs.append(Hypergraph.build(3, 4, edges))
        keys = {canonical_form(h).key for h in graphs}
        reps = []
        for h in graphs:
            if not any(permutation_isomorphism_oracle(h, r) for r in reps):
                reps.append(h)
        assert len(keys) == len(reps)

    def test_agrees_with_permutation_oracle(self):
        rng = random.Random(6)
        candidates = list(itertools.combinations(range(5), 3))
        for _ in range(200):
            a = Hypergraph.build(3, 5, rng.sample(candidates, rng.randint(0, 6)))
            b = Hypergraph.build(3, 5, rng.sample(candidates, rng.randint(0, 6)))
            assert are_isomorphic(a, b) == permutation_isomorphism_oracle(a, b)

    def test_vertex_cap(self):
        with pytest.raises(ResourceBudgetError):
            canonical_form(Hypergraph.build(3, 13, []))


class TestEnumeration:
    def test_small_cancellative_extremes(self):
        assert enumerate_free(4, 3, Cancellative()).max_edges == 2
        assert enumerate_free(6, 3, Cancellative()).max_edges == 8

    def test_small_expansion_extreme(self):
        assert enumerate_free(5, 3, Expansion(3)).max_edges == 4

    def test_stats_are_consistent(self):
        stats = enumerate_free(5, 3, Cancellative())
        assert stats.engine == "naive"
        assert stats.visited == sum(c for _, c in stats.counts_by_edges)
        assert stats.max_edges == max(k for k, _ in stats.counts_by_edges)

    def test_unconstrained_count(self):
        # every subset of the C(4,3) = 4 candidate edges
        assert enumerate_free(4, 3, None).visited == 16

    def test_naive_budget(self):
        with pytest.raises(ResourceBudgetError):
            enumerate_free(7, 3, Cancellative())

    def test_orderly_budget(self):
        with pytest.raises(ResourceBudgetError):
            enumerate_free(9, 3, Cancellative(), engine="orderly")

    @pytest.mark.parametrize("family", [None, Cancellative(), Expansion(3)])
    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_engines_agree(self, n, family):
        naive_keys = set()
        enumerate_free(
            n, 3, family, visitor=lambda h: naive_keys.add(canonical_form(h).key)
        )
        orderly_keys = {
            canonical_form(h).key for h in enumerate_free_classes(n, 3, family)
        }
        assert naive_keys == orderly_keys

    def test_orderly_visits_are_free_representatives(self):
        from shadowlab.forbidden import is_free

        reps = enumerate_free_classes(5, 3, Cancellative())
        assert all(is_free(h, Cancellative()) for h in reps)
        keys = [canonical_form(h).key for h in reps]
        assert len(keys) == len(set(keys))


class TestExtremalSearch:
    def test_expansion_unique_turan(self, t6):
        result = extremal_search(6, 3, Expansion(3))
        assert result.max_edges == 8 and result.unique
        assert result.extremal_forms == (canonical_form(t6).key,)

    def test_cancellative_small(self):
        assert extremal_search(5, 3, Cancellative()).max_edges == 4

    def test_single_possible_edge(self):
        result = extremal_search(3, 3, Cancellative())
        assert result.max_edges == 1 and result.unique

    def test_example_is_extremal(self):
        result = extremal_search(5, 3, Expansion(3))
        assert len(result.example) == result.max_edges
        assert are_isomorphic(result.example, turan(5, 3, 3)[0])


class TestBoundSweeps:
    def test_thm1_unconstrained(self):
        report = verify_bound_over_enumeration(4, 3, None, "thm1")
        assert report.violations == ()
        assert report.visited == 16

    def test_thm3_cancellative(self):
        report = verify_bound_over_enumeration(5, 3, Cancellative(), "thm3")
        assert report.violations == ()
        assert report.min_slack >= -1e-9

    def test_thm6_expansion(self):
        report = verify_bound_over_enumeration(5, 3, Expansion(3), "thm6", ell=3)
        assert report.violations == ()

    def test_argmin_recorded(self):
        report = verify_bound_over_enumeration(4, 3, Cancellative(), "thm3")
        assert report.argmin_edges  # some nonempty graph attains the minimum


class TestRandomFree:
    @pytest.mark.parametrize("family", [Cancellative(), Expansion(3)])
    def test_samples_are_free(self, family):
        from shadowlab.forbidden import is_free

        for seed in range(50):
            h = random_free_graph(8, 3, family, seed, 6)
            assert is_free(h, family)
            assert len(h) <= 6

    def test_seed_determinism(self):
        a = random_free_graph(9, 3, Cancellative(), 123, 8)
        b = random_free_graph(9, 3, Cancellative(), 123, 8)
        assert a == b


class TestCache:
    def test_round_trip(self, tmp_path):
        forms = [canonical_form(h).key for h in enumerate_free_classes(4, 3, None)]
        path = tmp_path / cache_name(4, 3, "none", "orderly")
        write_class_cache(path, forms)
        assert read_class_cache(path) == tuple(sorted(forms))

    def test_cache_name_is_filesystem_safe(self):
        name = cache_name(6, 3, "expansion(3)", "naive")
        assert "(" not in name and ")" not in name
