from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import (migration_digraphs, minimal_tripod, random_migration, single_source_path,
                      two_tripods)
from tripodcert.errors import PreconditionError
from tripodcert.graph import MigrationDigraph, Path, Tripod, delete_vertices
from tripodcert.oracles import brute_packing_number, brute_tripod_exists, enumerate_tripods
from tripodcert.tripods import (Certificate, find_tripod, pack_tripods, packing_verdict,
                                prune_hitting_set, source_labels, tripod_exists,
                                tripod_from_path_pair, verify_certificate, verify_tripod)


def _random(seed, n_max=9):
    rng = random.Random(seed)
    n = rng.randint(1, n_max)
    return random_migration(rng, n, rng.uniform(0.05, 0.5), rng.randint(0, 4), rng.randint(0, 3))


class TestDetection:
    def test_minimal_tripod(self, tripod_graph):
        assert tripod_exists(tripod_graph)

    def test_internal_source_on_a_path(self):
        d = MigrationDigraph("sat", [("s", "a"), ("a", "t")], "sa", "t")
        assert tripod_exists(d)

    def test_single_source(self):
        assert not tripod_exists(single_source_path())

    def test_source_that_is_also_a_sink(self):
        # a is a source and a sink and s reaches it: branch2 and the tail have length 0
        d = MigrationDigraph("sa", [("s", "a")], "sa", "a")
        assert tripod_exists(d) and brute_tripod_exists(d)

    def test_labels_keep_at_most_two_sources(self):
        d = MigrationDigraph("abcx", [("a", "x"), ("b", "x"), ("c", "x")], "abc", "x")
        assert source_labels(d)["x"] == ["a", "b"]

    @pytest.mark.parametrize("seed", range(150))
    def test_agrees_with_path_triple_enumeration(self, seed):
        d = _random(seed)
        assert tripod_exists(d) == brute_tripod_exists(d)

    @given(migration_digraphs(max_vertices=7))
    def test_agrees_with_enumeration_property(self, d):
        assert tripod_exists(d) == brute_tripod_exists(d)

    @given(migration_digraphs(max_vertices=7), st.data())
    def test_monotone(self, d, data):
        n = len(d)
        pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
        if pairs:
            e = data.draw(st.sampled_from(pairs))
            bigger = MigrationDigraph(d.vertices, set(d.edges) | {e}, d.sources, d.sinks)
            assert tripod_exists(bigger) >= tripod_exists(d)
        removed = data.draw(st.sets(st.sampled_from(d.vertices)))
        assert tripod_exists(delete_vertices(d, removed)) <= tripod_exists(d)


class TestFind:
    def test_minimal_tripod(self, tripod_graph):
        r = find_tripod(tripod_graph)
        assert (r.s1, r.s2, r.c, r.t) == ("s1", "s2", "c", "t")
        assert verify_tripod(tripod_graph, r)

    def test_internal_source_gives_a_length_zero_branch(self):
        d = MigrationDigraph("sat", [("s", "a"), ("a", "t")], "sa", "t")
        r = find_tripod(d)
        assert (r.s1, r.s2, r.c, r.t) == ("s", "a", "a", "t")
        assert r.branch2.length == 0 and r.branch1.vertices == ("s", "a")

    def test_no_tripod_raises(self):
        with pytest.raises(PreconditionError, match="no tripod"):
            find_tripod(single_source_path())

    def test_prefers_the_shortest_pair(self):
        edges = [("s1", "x"), ("x", "y"), ("y", "c"), ("s2", "c"), ("c", "t"),
                 ("s3", "c")]
        d = MigrationDigraph({v for e in edges for v in e}, edges, ["s1", "s2", "s3"], ["t"])
        r = find_tripod(d)
        assert {r.s1, r.s2} == {"s2", "s3"}

    @pytest.mark.parametrize("seed", range(200))
    def test_random_outputs_verify_and_use_shortest_paths(self, seed):
        d = _random(seed, 10)
        if not tripod_exists(d):
            return
        r = find_tripod(d)
        assert verify_tripod(d, r)
        to_t = d.bfs_distances([r.t], reverse=True)
        assert r.branch1.length + r.tail.length == to_t[r.s1]
        assert r.branch2.length + r.tail.length == to_t[r.s2]
        assert r.branch1.length >= r.branch2.length


class TestPathPair:
    def test_disjoint_except_end(self):
        d = MigrationDigraph("abxt", [("a", "x"), ("x", "t"), ("b", "t")], "ab", "t")
        r = tripod_from_path_pair(d, Path.of("a", "x", "t"), Path.of("b", "t"))
        assert r.c == "t" and r.tail.length == 0

    def test_shared_suffix_of_length_two(self):
        edges = [("a", "x"), ("x", "u"), ("b", "y"), ("y", "u"), ("u", "w"), ("w", "t")]
        d = MigrationDigraph("abxyuwt", edges, "ab", "t")
        p, q = Path.of("a", "x", "u", "w", "t"), Path.of("b", "y", "u", "w", "t")
        r = tripod_from_path_pair(d, p, q)
        assert r.c == "u" and r.tail.vertices == ("u", "w", "t")
        host = MigrationDigraph("abxyuwt", edges, "ab", "t")
        centres = {c for _, _, _, c, *_ in enumerate_tripods(host)}
        assert centres == {"u"}

    def test_cross_then_rediverge(self):
        p = Path.of("s1", "a", "b", "f", "c", "t")
        q = Path.of("s2", "b", "d", "e", "c", "t")
        edges = set(p.edges()) | set(q.edges())
        d = MigrationDigraph({v for e in edges for v in e}, edges, ["s1", "s2"], ["t"])
        assert len(d) == 9
        r = tripod_from_path_pair(d, p, q)
        assert verify_tripod(d, r)
        assert r.vertex_set <= p.vertex_set | q.vertex_set

    @pytest.mark.parametrize("p, q, match", [
        (("a", "x", "t"), ("a", "t"), "distinct"),
        (("a", "x"), ("b", "t"), "same vertex"),
    ])
    def test_preconditions(self, p, q, match):
        d = MigrationDigraph("abxt", [("a", "x"), ("x", "t"), ("b", "t"), ("a", "t")], "ab", "tx")
        with pytest.raises(PreconditionError, match=match):
            tripod_from_path_pair(d, Path(p), Path(q))


class TestVerify:
    def _r(self, **over):
        base = dict(s1="s1", s2="s2", t="t", c="c", branch1=Path.of("s1", "c"),
                    branch2=Path.of("s2", "c"), tail=Path.of("c", "t"))
        base.update(over)
        return Tripod(**base)

    def test_valid(self, tripod_graph):
        assert verify_tripod(tripod_graph, self._r())

    @pytest.mark.parametrize("over, reason", [
        (dict(s2="s1", branch2=Path.of("s1", "c")), "coincide"),
        (dict(t="c", tail=Path.of("c")), "not a sink"),
        (dict(tail=Path.of("c", "s1")), "expected"),
        (dict(branch1=Path.of("s1", "t", "c")), "not a path"),
    ])
    def test_invalid(self, tripod_graph, over, reason):
        check = verify_tripod(tripod_graph, self._r(**over))
        assert not check and reason in check.reason

    def test_branches_sharing_a_non_centre_vertex(self):
        edges = [("s1", "m"), ("s2", "m"), ("m", "c"), ("s1", "c"), ("c", "t")]
        d = MigrationDigraph(["s1", "s2", "m", "c", "t"], edges, ["s1", "s2"], ["t"])
        r = Tripod("s1", "s2", "t", "c", Path.of("s1", "m", "c"), Path.of("s2", "m", "c"),
                   Path.of("c", "t"))
        check = verify_tripod(d, r)
        assert not check and "share" in check.reason


class TestCertificates:
    def test_empty_hitting_set_on_tripod_free(self):
        cert = Certificate.of_hitting_set((), 0)
        assert verify_certificate(single_source_path(), 1, cert)

    def test_two_disjoint_tripods(self, twin_graph):
        r1 = find_tripod(twin_graph)
        r2 = find_tripod(delete_vertices(twin_graph, r1.vertex_set))
        assert verify_certificate(twin_graph, 2, Certificate.of_packing([r1, r2]))
        assert not verify_certificate(twin_graph, 3, Certificate.of_packing([r1, r2]))

    def test_duplicated_tripod(self, tripod_graph):
        r = find_tripod(tripod_graph)
        check = verify_certificate(tripod_graph, 2, Certificate.of_packing([r, r]))
        assert not check and "disjoint" in check.reason

    def test_hitting_set_missing_a_tripod(self, twin_graph):
        cert = Certificate.of_hitting_set({"c1"}, 5)
        check = verify_certificate(twin_graph, 2, cert)
        assert not check and "survives" in check.reason
        survivor = check.witness
        assert survivor.c == "c2"
        assert brute_tripod_exists(delete_vertices(twin_graph, {"c1"}))

    @pytest.mark.parametrize("hit, bound, reason", [
        ({"c1", "c2"}, 1, "bound is 1"),
        ({"zz"}, 3, "non-vertices"),
        ({"c1", "c2"}, None, "no size bound"),
    ])
    def test_hitting_set_clauses(self, twin_graph, hit, bound, reason):
        cert = Certificate("hitting-set", hitting_set=hit, bound=bound)
        check = verify_certificate(twin_graph, 2, cert)
        assert not check and reason in check.reason

    def test_edge_certificates(self, tripod_graph):
        r = find_tripod(tripod_graph)
        assert verify_certificate(tripod_graph, 1, Certificate("edge-packing", packing=[r]))
        cut = Certificate("edge-hitting-set", hitting_set={("c", "t")}, bound=1)
        assert verify_certificate(tripod_graph, 1, cut)
        bad = Certificate("edge-hitting-set", hitting_set={("t", "c")}, bound=1)
        assert "non-edges" in verify_certificate(tripod_graph, 1, bad).reason

    def test_unknown_kind(self):
        with pytest.raises(PreconditionError):
            Certificate("whatever")

    def test_edge_disjoint_but_vertex_sharing(self):
        edges = [("a", "x"), ("b", "x"), ("x", "t1"), ("c", "x"), ("e", "x"), ("x", "t2")]
        d = MigrationDigraph({v for e in edges for v in e}, edges, "abce", ["t1", "t2"])
        r1 = Tripod("a", "b", "t1", "x", Path.of("a", "x"), Path.of("b", "x"), Path.of("x", "t1"))
        r2 = Tripod("c", "e", "t2", "x", Path.of("c", "x"), Path.of("e", "x"), Path.of("x", "t2"))
        assert packing_verdict(d, 2, [r1, r2], edges=True)
        assert not packing_verdict(d, 2, [r1, r2])


class TestSearchAndPrune:
    def test_pack_two(self, twin_graph):
        found = pack_tripods(twin_graph, 2)
        assert len(found) == 2 and packing_verdict(twin_graph, 2, found)
        assert pack_tripods(twin_graph, 3) is None
        assert pack_tripods(twin_graph, 0) == []

    @pytest.mark.parametrize("seed", range(60))
    def test_pack_is_sound(self, seed):
        d = _random(seed, 10)
        for k in (1, 2, 3):
            found = pack_tripods(d, k)
            if found is not None:
                assert packing_verdict(d, k, found)
                assert brute_packing_number(d, limit=k) >= k

    def test_prune_is_minimal(self, twin_graph):
        hit = prune_hitting_set(twin_graph, twin_graph.vertices)
        assert not tripod_exists(delete_vertices(twin_graph, hit))
        for v in hit:
            assert tripod_exists(delete_vertices(twin_graph, hit - {v}))
        assert len(hit) == 2
