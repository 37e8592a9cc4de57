from __future__ import annotations

import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from tripodcert.graph import MigrationDigraph

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def minimal_tripod() -> MigrationDigraph:
    return MigrationDigraph(["s1", "s2", "c", "t"], [("s1", "c"), ("s2", "c"), ("c", "t")],
                            ["s1", "s2"], ["t"])


def two_tripods() -> MigrationDigraph:
    edges = [("s1", "c1"), ("s2", "c1"), ("c1", "t1"), ("s3", "c2"), ("s4", "c2"), ("c2", "t2")]
    return MigrationDigraph(["s1", "s2", "s3", "s4", "c1", "c2", "t1", "t2"], edges,
                            ["s1", "s2", "s3", "s4"], ["t1", "t2"])


def single_source_path() -> MigrationDigraph:
    return MigrationDigraph(["s", "x", "t"], [("s", "x"), ("x", "t")], ["s"], ["t"])


def random_migration(rng: random.Random, n: int, p: float, n_src: int, n_snk: int,
                     overlap: bool = True) -> MigrationDigraph:
    """Arbitrary terminals: sources and sinks may overlap and carry any edges."""
    edges = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
    sources = rng.sample(range(n), min(n, n_src))
    if overlap:
        sinks = rng.sample(range(n), min(n, n_snk))
    else:
        rest = [v for v in range(n) if v not in sources]
        sinks = rng.sample(rest, min(len(rest), n_snk))
    return MigrationDigraph(range(n), edges, sources, sinks)


@st.composite
def migration_digraphs(draw, max_vertices: int = 8, min_vertices: int = 1):
    n = draw(st.integers(min_vertices, max_vertices))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    sources = draw(st.sets(st.integers(0, n - 1), max_size=n))
    sinks = draw(st.sets(st.integers(0, n - 1), max_size=n))
    return MigrationDigraph(range(n), edges, sources, sinks)


@pytest.fixture
def tripod_graph() -> MigrationDigraph:
    return minimal_tripod()


@pytest.fixture
def twin_graph() -> MigrationDigraph:
    return two_tripods()
