import pytest

from hypermis.core import normalize, parse_hg, format_hg
from hypermis.generate import (
    KIND_LINEAR,
    KIND_MIXED,
    KIND_UNIFORM,
    GenSpec,
    InfeasibleError,
    gen,
)


class TestUniform:
    def test_single_full_edge(self):
        h = gen(GenSpec(n=5, kind=KIND_UNIFORM, seed=1, m=1, dim=5))
        assert h.edges == ((1, 2, 3, 4, 5),)

    def test_all_pairs_forced(self):
        h = gen(GenSpec(n=4, kind=KIND_UNIFORM, seed=9, m=6, dim=2))
        assert h.edges == ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))

    def test_infeasible_m(self):
        with pytest.raises(InfeasibleError):
            gen(GenSpec(n=4, kind=KIND_UNIFORM, seed=1, m=7, dim=2))

    def test_edge_probability_mode(self):
        h = gen(GenSpec(n=10, kind=KIND_UNIFORM, seed=2, edge_probability=0.3, dim=3))
        assert all(len(e) == 3 for e in h.edges)
        assert h == gen(GenSpec(n=10, kind=KIND_UNIFORM, seed=2, edge_probability=0.3, dim=3))
        full = gen(GenSpec(n=5, kind=KIND_UNIFORM, seed=2, edge_probability=1.0, dim=2))
        assert full.m == 10

    def test_distinct_edges(self):
        h = gen(GenSpec(n=12, kind=KIND_UNIFORM, seed=3, m=30, dim=3))
        assert len(set(h.edges)) == 30


class TestMixed:
    def test_sizes_in_range_and_exact_m(self):
        h = gen(GenSpec(n=14, kind=KIND_MIXED, seed=4, m=10, dim_range=(2, 5)))
        assert h.m == 10
        assert all(2 <= len(e) <= 5 for e in h.edges)

    def test_output_is_normalized(self):
        for seed in range(5):
            h = gen(GenSpec(n=12, kind=KIND_MIXED, seed=seed, m=8, dim_range=(2, 4)))
            assert normalize(h) == h


class TestLinear:
    def test_pairwise_intersection_at_most_one(self):
        h = gen(GenSpec(n=20, kind=KIND_LINEAR, seed=3, m=10, dim=3))
        assert h.m == 10
        for i, a in enumerate(h.edges):
            for b in h.edges[i + 1:]:
                assert len(set(a) & set(b)) <= 1

    def test_saturation_raises(self):
        with pytest.raises(InfeasibleError):
            gen(GenSpec(n=5, kind=KIND_LINEAR, seed=1, m=30, dim=3))


class TestSpecValidation:
    def test_bad_dims(self):
        with pytest.raises(ValueError):
            GenSpec(n=5, kind=KIND_UNIFORM, seed=1, m=2, dim=1)
        with pytest.raises(ValueError):
            GenSpec(n=5, kind=KIND_MIXED, seed=1, m=2, dim_range=(2, 9))

    def test_m_xor_probability(self):
        with pytest.raises(ValueError):
            GenSpec(n=5, kind=KIND_UNIFORM, seed=1, dim=2)
        with pytest.raises(ValueError):
            GenSpec(n=5, kind=KIND_UNIFORM, seed=1, m=2, edge_probability=0.5, dim=2)

    def test_probability_only_for_uniform(self):
        with pytest.raises(ValueError):
            GenSpec(n=5, kind=KIND_LINEAR, seed=1, edge_probability=0.5, dim=2)


class TestDeterminismAndRoundTrip:
    def test_same_spec_same_graph(self):
        spec = GenSpec(n=15, kind=KIND_UNIFORM, seed=77, m=12, dim=3)
        assert gen(spec) == gen(spec)

    def test_different_seeds_differ(self):
        a = gen(GenSpec(n=15, kind=KIND_UNIFORM, seed=1, m=12, dim=3))
        b = gen(GenSpec(n=15, kind=KIND_UNIFORM, seed=2, m=12, dim=3))
        assert a != b

    def test_write_parse_round_trip(self):
        for seed in range(4):
            h = gen(GenSpec(n=11, kind=KIND_MIXED, seed=seed, m=7, dim_range=(2, 4)))
            assert parse_hg(format_hg(h)) == h
