from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tripodcert.errors import PreconditionError
from tripodcert.generators import (GENERATORS, InstanceSpec, comb, crossing_grid,
                                   degree_conforming, doubled_gadget, erdos_renyi, gadget_linkages,
                                   generate, layered_dag)
from tripodcert.graph import check_line_degrees, pairwise_intersect

SPECS = [
    InstanceSpec("layered-dag", {"layers": 4, "width": 3, "p": 0.5}, 3),
    InstanceSpec("comb", {"teeth": 3}, 7),
    InstanceSpec("crossing-grid", {"m": 3}),
    InstanceSpec("erdos-renyi-digraph", {"n": 10, "p": 0.3}, 1),
    InstanceSpec("doubled-gadget", {"copies": 2}),
    InstanceSpec("degree-conforming", {"core": 5, "p": 0.3, "sources": 3, "sinks": 2}, 4),
]


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.name)
def test_same_spec_same_instance(spec):
    a, b = generate(spec), generate(spec)
    assert (a.vertices, set(a.edges), a.sources, a.sinks) == (b.vertices, set(b.edges),
                                                              b.sources, b.sinks)


def test_every_generator_is_covered():
    assert {s.name for s in SPECS} == set(GENERATORS)


def test_comb_twice():
    assert comb(3, seed=7) == comb(3, seed=7)


def test_seed_changes_erdos_renyi():
    a, b = erdos_renyi(10, 0.3, seed=1), erdos_renyi(10, 0.3, seed=2)
    assert set(a.edges) != set(b.edges)


def test_erdos_renyi_is_simple():
    d = erdos_renyi(10, 0.3, seed=1)
    assert all(u != v for u, v in d.edges)
    assert len(set(d.edges)) == d.number_of_edges()
    assert d.sources.isdisjoint(d.sinks)


@pytest.mark.parametrize("m", [1, 2, 3, 5])
def test_crossing_grid_shape(m):
    g = crossing_grid(m)
    p, q = g.first, g.second
    assert len(p) == len(q) == m
    assert p.ends() == q.ends() and p.starts().isdisjoint(q.starts())
    assert pairwise_intersect(p, q)
    d = g.digraph
    assert p.links(d.sources, d.sinks) and q.links(d.sources, d.sinks)


def test_crossing_grid_two_has_all_four_meetings():
    g = crossing_grid(2)
    meets = [(i, j) for i, a in enumerate(g.first) for j, b in enumerate(g.second) if a.meets(b)]
    assert meets == [(0, 0), (0, 1), (1, 0), (1, 1)]


@pytest.mark.parametrize("teeth, height", [(1, 1), (5, 1), (28, 2)])
def test_comb_shape(teeth, height):
    g = comb(teeth, height, seed=3)
    d, teeth_link, spine = g.digraph, g.first, g.second
    assert len(teeth_link) == teeth
    assert all(d.is_path(p) for p in teeth_link) and d.is_path(spine)
    assert teeth_link.links(d.sources, d.sinks)
    assert all(p.meets(spine) for p in teeth_link)


def test_woven_comb_needs_room():
    # two wide blocks of ten fresh teeth plus four shared ones
    assert len(comb(24, 2, weave=2).first) == 24
    with pytest.raises(PreconditionError, match="at least 24 teeth"):
        comb(23, 2, weave=2)
    with pytest.raises(PreconditionError, match="height"):
        comb(28, 1, weave=2)


def test_gadget_linkages_cross():
    d = doubled_gadget(1)
    k, l_ = gadget_linkages(0)
    assert pairwise_intersect(k, l_)
    assert all(d.is_path(p) for p in list(k) + list(l_))


@given(st.integers(1, 6), st.floats(0, 1), st.integers(0, 4), st.integers(0, 4), st.integers(0, 99))
@settings(max_examples=50)
def test_degree_conforming_meets_the_edge_preconditions(core, p, n_src, n_snk, seed):
    check_line_degrees(degree_conforming(core, p, n_src, n_snk, seed=seed))


def test_layered_dag_is_acyclic_forward():
    d = layered_dag(4, 3, seed=2)
    assert all(v[1] == u[1] + 1 for u, v in d.edges)


@pytest.mark.parametrize("spec, match", [
    (InstanceSpec("nope"), "unknown generator"),
    (InstanceSpec("comb", {"teeth": 3, "bogus": 1}), "bad parameters"),
    (InstanceSpec("erdos-renyi-digraph", {"n": 3, "p": 0.5, "sources": 2, "sinks": 2}), "terminals"),
    (InstanceSpec("layered-dag", {"layers": 1, "width": 2}), "two layers"),
])
def test_invalid_specs(spec, match):
    with pytest.raises(PreconditionError, match=match):
        generate(spec)
