from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import migration_digraphs, minimal_tripod, random_migration
from tripodcert.generators import comb
from tripodcert.graph import Digraph, MigrationDigraph, delete_vertices
from tripodcert.menger import is_linkable, max_linkage, max_linkage_size, separates
from tripodcert.oracles import OracleCapError, brute_max_linkage, brute_min_separator


def _check_result(d, a, b, res):
    assert len(res.linkage) == len(res.separator) == res.value
    assert res.linkage.links(a, b)
    assert all(d.is_path(p) for p in res.linkage)
    assert separates(d, a, b, res.separator)


def test_single_edge():
    d = Digraph("st", [("s", "t")])
    res = max_linkage(d, {"s"}, {"t"})
    assert [p.vertices for p in res.linkage] == [("s", "t")]
    assert res.separator in ({"s"}, {"t"})


def test_diamond():
    d = Digraph("sabt", [("s", "a"), ("s", "b"), ("a", "t"), ("b", "t")])
    res = max_linkage(d, {"s"}, {"t"})
    assert res.value == 1 == brute_min_separator(d, {"s"}, {"t"})
    assert res.separator == {"s"}


def test_two_disjoint_paths_need_two_cut_vertices():
    d = Digraph(["s1", "t1", "s2", "t2"], [("s1", "t1"), ("s2", "t2")])
    a, b = {"s1", "s2"}, {"t1", "t2"}
    res = max_linkage(d, a, b)
    assert res.value == 2
    for v in d.vertices:
        assert not separates(d, a, b, {v})
    _check_result(d, a, b, res)


def test_shared_vertex_is_a_length_zero_path():
    d = Digraph("ab", [])
    res = max_linkage(d, {"a"}, {"a", "b"})
    assert res.value == 1 and res.separator == {"a"}
    assert res.linkage[0].length == 0


def test_no_path():
    res = max_linkage(Digraph("ab"), {"a"}, {"b"})
    assert res.value == 0 and not res.separator and len(res.linkage) == 0


def test_decide():
    d = Digraph("sabt", [("s", "a"), ("s", "b"), ("a", "t"), ("b", "t")])
    res = max_linkage(d, {"s"}, {"t"})
    assert len(res.decide(1)) == 1
    assert res.decide(2) == {"s"}


def test_size_limit_stops_early():
    d = comb(5).digraph
    assert max_linkage_size(d, d.sources, d.sinks) == 5
    assert max_linkage_size(d, d.sources, d.sinks, limit=2) == 2


class TestLinkable:
    def test_empty_target(self, tripod_graph):
        assert is_linkable(tripod_graph, {"s1"}, set())

    def test_minimal_tripod(self, tripod_graph):
        assert is_linkable(tripod_graph, {"s1"}, {"t"})

    def test_comb_with_two_sources(self):
        d = comb(3, sources=2).digraph
        assert len(d.sources) == 2
        assert not is_linkable(d, d.sources, d.sinks)
        assert brute_max_linkage(d, d.sources, d.sinks) == 2

    @given(migration_digraphs(max_vertices=7), st.data())
    def test_downward_closed(self, d, data):
        y = data.draw(st.sets(st.sampled_from(sorted(d.sinks)))) if d.sinks else set()
        if is_linkable(d, d.sources, y):
            for size in range(len(y)):
                for sub in combinations(sorted(y), size):
                    assert is_linkable(d, d.sources, sub)


@pytest.mark.parametrize("seed", range(60))
def test_duality_against_brute_force(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 10)
    d = random_migration(rng, n, rng.uniform(0.1, 0.5), rng.randint(1, 4), rng.randint(1, 4))
    a, b = d.sources, d.sinks
    res = max_linkage(d, a, b)
    _check_result(d, a, b, res)
    assert res.value == brute_max_linkage(d, a, b) == brute_min_separator(d, a, b)


@given(migration_digraphs(max_vertices=7), st.data())
def test_adding_an_edge_never_lowers_the_value(d, data):
    n = len(d)
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    if not pairs:
        return
    u, v = data.draw(st.sampled_from(pairs))
    bigger = MigrationDigraph(d.vertices, set(d.edges) | {(u, v)}, d.sources, d.sinks)
    assert max_linkage(bigger, d.sources, d.sinks).value >= max_linkage(d, d.sources, d.sinks).value


def test_separator_survivors_are_really_cut(tripod_graph):
    res = max_linkage(tripod_graph, {"s1", "s2"}, {"t"})
    rest = delete_vertices(tripod_graph, res.separator)
    assert not rest.reachable(rest.sources) & rest.sinks


def test_oracle_cap():
    with pytest.raises(OracleCapError):
        brute_max_linkage(comb(5, 2).digraph, set(), set(), cap=12)
