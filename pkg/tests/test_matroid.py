from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_migration
from tripodcert.errors import MatroidAxiomError, PreconditionError
from tripodcert.generators import crossing_grid
from tripodcert.matroid import (GammoidOracle, gammoid_rank, matroid_intersection,
                                oracle_rank)
from tripodcert.oracles import brute_common_independent, brute_rank


def free(_subset) -> bool:
    return True


def subsets_of(allowed):
    allowed = frozenset(allowed)
    return lambda s: frozenset(s) <= allowed


def uniform(r):
    return lambda s: len(s) <= r


def partition_matroid(blocks):
    """At most one element from each block."""
    return lambda s: all(len(set(s) & set(b)) <= 1 for b in blocks)


def _gammoid_pair(seed):
    rng = random.Random(seed)
    n = rng.randint(6, 12)
    n_src = rng.randint(2, min(5, n - 1))
    d = random_migration(rng, n, rng.uniform(0.2, 0.5), n_src, rng.randint(1, min(8, n - n_src)),
                         overlap=rng.random() < 0.2)
    srcs = sorted(d.sources)
    rng.shuffle(srcs)
    cut = rng.randint(1, len(srcs) - 1)
    return d, GammoidOracle(d, srcs[:cut]), GammoidOracle(d, srcs[cut:])


def _tight(cert, m1, m2, ground):
    assert cert.x_side | cert.y_side == frozenset(ground)
    assert not cert.x_side & cert.y_side
    assert m1(cert.common) and m2(cert.common)
    assert cert.size == cert.rank1_x + cert.rank2_y
    assert cert.rank1_x == brute_rank(m1, cert.x_side)
    assert cert.rank2_y == brute_rank(m2, cert.y_side)


class TestGammoid:
    def test_rank_of_empty_set(self, tripod_graph):
        assert gammoid_rank(GammoidOracle(tripod_graph, {"s1", "s2"}), set()) == 0

    def test_rank_of_single_sink(self, tripod_graph):
        o = GammoidOracle(tripod_graph, {"s1", "s2"})
        assert o.rank({"t"}) == 1 and o({"t"})

    def test_rejects_non_sources_and_foreign_queries(self, tripod_graph):
        with pytest.raises(PreconditionError):
            GammoidOracle(tripod_graph, {"c"})
        with pytest.raises(PreconditionError):
            GammoidOracle(tripod_graph, {"s1"})({"c"})

    @pytest.mark.parametrize("seed", range(25))
    def test_flow_rank_matches_subset_enumeration(self, seed):
        d, m1, _ = _gammoid_pair(seed)
        whole = GammoidOracle(d, d.sources)
        for o in (m1, whole):
            assert o.rank(d.sinks) == brute_rank(o, d.sinks) == oracle_rank(o, d.sinks)

    @pytest.mark.parametrize("seed", range(25))
    def test_axioms(self, seed):
        d, m1, m2 = _gammoid_pair(seed)
        sinks = sorted(d.sinks)
        for o in (m1, m2):
            indep = [frozenset(c) for r in range(len(sinks) + 1)
                     for c in combinations(sinks, r) if o(c)]
            assert frozenset() in indep
            for a in indep:
                assert all(a - {x} in indep for x in a)
            for a in indep:
                for b in indep:
                    if len(a) < len(b):
                        assert any(a | {x} in indep for x in b - a)


class TestIntersection:
    def test_free_matroids(self):
        cert = matroid_intersection(free, free, "abc")
        assert cert.common == {"a", "b", "c"} and cert.size == 3
        _tight(cert, free, free, "abc")

    def test_overlapping_restrictions(self):
        m1, m2 = subsets_of("ab"), subsets_of("bc")
        cert = matroid_intersection(m1, m2, "abc")
        assert cert.common == {"b"}
        _tight(cert, m1, m2, "abc")
        # every partition gives an upper bound and the returned one meets it
        ground = "abc"
        for r in range(4):
            for x in combinations(ground, r):
                y = set(ground) - set(x)
                assert brute_rank(m1, x) + brute_rank(m2, y) >= cert.size

    def test_same_source_side_gives_full_rank(self):
        d, m1, _ = _gammoid_pair(3)
        twin = GammoidOracle(d, m1.source_side)
        cert = matroid_intersection(m1, twin, d.sinks)
        assert cert.size == m1.rank(d.sinks)

    def test_bipartite_matching(self):
        # rows and columns of a 3x3 grid with a missing diagonal behave like a matching
        ground = [(r, c) for r in range(3) for c in range(3) if r != c]
        rows = partition_matroid([[e for e in ground if e[0] == r] for r in range(3)])
        cols = partition_matroid([[e for e in ground if e[1] == c] for c in range(3)])
        cert = matroid_intersection(rows, cols, ground)
        assert cert.size == 3
        _tight(cert, rows, cols, ground)

    def test_rejects_non_matroid(self):
        with pytest.raises(MatroidAxiomError):
            matroid_intersection(lambda s: len(s) == 1, free, "ab")

    @pytest.mark.parametrize("seed", range(40))
    def test_gammoid_pairs_against_enumeration(self, seed):
        d, m1, m2 = _gammoid_pair(seed)
        cert = matroid_intersection(m1, m2, d.sinks)
        assert cert.size == brute_common_independent(m1, m2, d.sinks)
        _tight(cert, m1, m2, d.sinks)

    @given(st.integers(0, 4), st.integers(0, 4), st.integers(1, 7))
    @settings(max_examples=40)
    def test_uniform_pairs(self, r1, r2, n):
        ground = range(n)
        cert = matroid_intersection(uniform(r1), uniform(r2), ground)
        assert cert.size == min(r1, r2, n)
        _tight(cert, uniform(r1), uniform(r2), ground)

    @pytest.mark.parametrize("seed", range(10))
    def test_random_partitions_never_beat_the_bound(self, seed):
        d, m1, m2 = _gammoid_pair(seed)
        cert = matroid_intersection(m1, m2, d.sinks)
        rng = random.Random(seed)
        sinks = sorted(d.sinks)
        for _ in range(200):
            x = {t for t in sinks if rng.random() < 0.5}
            assert m1.rank(x) + m2.rank(set(sinks) - x) >= cert.size

    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_crossing_grid_sides_share_every_sink(self, m):
        d = crossing_grid(m).digraph
        cols = {v for v in d.sources if v[0] == "a"}
        m1, m2 = GammoidOracle(d, cols), GammoidOracle(d, d.sources - cols)
        cert = matroid_intersection(m1, m2, d.sinks)
        assert cert.size == m == brute_common_independent(m1, m2, d.sinks)
        _tight(cert, m1, m2, d.sinks)
