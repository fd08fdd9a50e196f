from __future__ import annotations

import json

import pytest

from wreathflop import (
    Configuration,
    Edge,
    FlopGraph,
    FlopMove,
    Label,
    NoPathError,
    NotFoundError,
    P,
    ParameterError,
    Q,
    VertexId,
    apply_flop,
    canonical_key,
    explore,
    export,
    initial_configuration,
    shortest_flop_path,
)


def mirrored(c: Configuration) -> Configuration:
    """The configuration relabeled by the chain reversal i -> k+1-i."""
    k = c.k

    def phi(v: VertexId) -> VertexId:
        if v.kind == "Q":
            return Q(k + 1 - v.i)
        return P(k + 1 - v.j, k + 1 - v.i)

    labels = {phi(v): c.label(v) for v in c.vertices}
    edges = [
        Edge(phi(e.a), phi(e.b), e.kind, exc_a=e.exceptional_at(e.a), exc_b=e.exceptional_at(e.b))
        for e in c.edges
    ]
    return Configuration(k, labels, edges)


class TestCanonicalKey:
    def test_equal_configurations_share_keys(self):
        assert canonical_key(initial_configuration(2)) == canonical_key(initial_configuration(2))

    def test_edge_kind_changes_the_key(self):
        c = initial_configuration(1)
        flopped = apply_flop(c, FlopMove((P(1, 1),)))
        assert canonical_key(c) != canonical_key(flopped)
        assert canonical_key(c, "iso") != canonical_key(flopped, "iso")

    def test_chain_reversal_is_an_automorphism_of_the_start(self):
        c = initial_configuration(2)
        assert mirrored(c) == c

    def test_mirror_states_collapse_only_in_isomorphism_mode(self):
        c = initial_configuration(2)
        left = apply_flop(c, FlopMove((P(1, 1),)))
        right = apply_flop(c, FlopMove((P(2, 2),)))
        assert mirrored(left) == right
        assert canonical_key(left) != canonical_key(right)
        assert canonical_key(left, "isomorphism") == canonical_key(right, "isomorphism")

    def test_flags_are_part_of_the_key(self):
        from wreathflop import EdgeKind

        labels = {
            P(1, 1): Label.SQUARE,
            P(1, 2): Label.ELLIPSE,
            P(2, 2): Label.SQUARE,
            Q(1): Label.RULED4,
            Q(2): Label.RULED4,
        }
        plain = Configuration(2, labels, [Edge(P(1, 1), P(1, 2), EdgeKind.SOLID)])
        flagged = Configuration(2, labels, [Edge(P(1, 1), P(1, 2), EdgeKind.SOLID, exc_b=True)])
        for mode in ("identity", "isomorphism"):
            assert canonical_key(plain, mode) != canonical_key(flagged, mode)

    def test_unknown_mode_rejected(self):
        with pytest.raises(ParameterError):
            canonical_key(initial_configuration(1), "fancy")

    def test_iso_keys_agree_with_brute_force_isomorphism(self):
        # oracle: exhaustive search over label-preserving P/Q bijections
        import itertools

        def isomorphic(c1: Configuration, c2: Configuration) -> bool:
            by_label_1: dict[tuple, list[VertexId]] = {}
            by_label_2: dict[tuple, list[VertexId]] = {}
            for c, buckets in ((c1, by_label_1), (c2, by_label_2)):
                for v in c.vertices:
                    buckets.setdefault((v.kind, c.label(v).value), []).append(v)
            if {k: len(v) for k, v in by_label_1.items()} != {
                k: len(v) for k, v in by_label_2.items()
            }:
                return False
            keys = sorted(by_label_1, key=repr)
            edge_set_2 = {
                (e.a, e.b, e.kind, e.exc_a, e.exc_b) for e in c2.edges
            }
            for choice in itertools.product(
                *(itertools.permutations(by_label_2[key]) for key in keys)
            ):
                phi: dict[VertexId, VertexId] = {}
                for key, images in zip(keys, choice):
                    for source, image in zip(by_label_1[key], images):
                        phi[source] = image
                mapped = set()
                for e in c1.edges:
                    a, b, exc_a, exc_b = phi[e.a], phi[e.b], e.exc_a, e.exc_b
                    if b.key() < a.key():
                        a, b, exc_a, exc_b = b, a, exc_b, exc_a
                    mapped.add((a, b, e.kind, exc_a, exc_b))
                if mapped == edge_set_2:
                    return True
            return False

        nodes = list(explore(initial_configuration(3)).nodes.values())
        nodes.append(mirrored(nodes[0]))
        for c1, c2 in itertools.combinations(nodes, 2):
            same_key = canonical_key(c1, "iso") == canonical_key(c2, "iso")
            assert same_key == isomorphic(c1, c2)


class TestExplore:
    def test_k1_two_resolutions(self):
        g = explore(initial_configuration(1))
        assert len(g.nodes) == 2
        assert len(g.arcs) == 2
        (arc, other) = sorted(g.arcs, key=lambda a: (a.source, a.target))
        assert (arc.source, arc.target) == (other.target, other.source)
        assert arc.centers == (P(1, 1),)

    def test_depth_zero_keeps_only_the_start(self):
        g = explore(initial_configuration(1), max_depth=0)
        assert len(g.nodes) == 1
        assert len(g.arcs) == 0

    def test_negative_depth_rejected(self):
        with pytest.raises(ParameterError):
            explore(initial_configuration(1), max_depth=-1)
        with pytest.raises(ParameterError):
            explore(initial_configuration(1), workers=0)

    def test_deterministic_including_workers(self):
        a = explore(initial_configuration(2))
        b = explore(initial_configuration(2))
        c = explore(initial_configuration(2), workers=3)
        assert set(a.nodes) == set(b.nodes) == set(c.nodes)
        assert a.arcs == b.arcs == c.arcs
        assert a.root == b.root == c.root

    def test_every_arc_has_a_reverse_with_the_same_move(self):
        g = explore(initial_configuration(3))
        arcs = {(a.source, a.centers, a.target) for a in g.arcs}
        assert all((t, mv, s) in arcs for (s, mv, t) in arcs)

    def test_iso_arcs_are_pair_symmetric_and_consistent(self):
        # reverse moves are translated onto the stored class representative,
        # so symmetry holds per node pair rather than per literal move
        g = explore(initial_configuration(3), mode="iso")
        pairs = {(a.source, a.target) for a in g.arcs}
        assert all((t, s) in pairs for (s, t) in pairs)
        for arc in g.arcs:
            result = apply_flop(g.nodes[arc.source], FlopMove(arc.centers))
            assert canonical_key(result, "iso") == arc.target

    def test_arcs_reproduce_their_target_keys(self):
        g = explore(initial_configuration(2), simultaneous=True)
        for arc in g.arcs:
            result = apply_flop(g.nodes[arc.source], FlopMove(arc.centers))
            assert canonical_key(result) == arc.target

    def test_simultaneous_adds_arcs_but_no_nodes(self):
        single = explore(initial_configuration(2))
        sim = explore(initial_configuration(2), simultaneous=True)
        assert set(single.nodes) == set(sim.nodes)
        assert single.arcs < sim.arcs
        assert any(len(a.centers) > 1 for a in sim.arcs)

    def test_isomorphism_mode_never_exceeds_identity_mode(self):
        for k in (1, 2, 3):
            ident = explore(initial_configuration(k))
            iso = explore(initial_configuration(k), mode="iso")
            assert len(iso.nodes) <= len(ident.nodes)

    def test_max_nodes_truncates_deterministically(self):
        a = explore(initial_configuration(3), max_nodes=4)
        b = explore(initial_configuration(3), max_nodes=4)
        assert a.truncated and b.truncated
        assert set(a.nodes) == set(b.nodes)

    def test_explore_accepts_arbitrary_start(self):
        start = apply_flop(initial_configuration(2), FlopMove((P(1, 1),)))
        g = explore(start)
        assert g.root == canonical_key(start)
        assert canonical_key(initial_configuration(2)) in g.nodes


class TestShortestPath:
    def test_identity_path_is_empty(self):
        g = explore(initial_configuration(1))
        assert shortest_flop_path(g, g.root, g.root) == []

    def test_k1_single_step(self):
        g = explore(initial_configuration(1))
        other = next(key for key in g.nodes if key != g.root)
        path = shortest_flop_path(g, g.root, other)
        assert [tuple(str(v) for v in mv.centers) for mv in path] == [("P:1:1",)]

    def test_k2_double_flop_distance(self):
        g = explore(initial_configuration(2))
        c = initial_configuration(2)
        target = apply_flop(apply_flop(c, FlopMove((P(1, 1),))), FlopMove((P(2, 2),)))
        path = shortest_flop_path(g, g.root, canonical_key(target))
        assert len(path) == 2

    def test_path_replays_to_the_target(self):
        g = explore(initial_configuration(3))
        for target_key in sorted(g.nodes)[:10]:
            cfg = initial_configuration(3)
            for mv in shortest_flop_path(g, g.root, target_key):
                cfg = apply_flop(cfg, mv)
            assert canonical_key(cfg) == target_key

    def test_unknown_keys_rejected(self):
        g = explore(initial_configuration(1))
        with pytest.raises(NotFoundError):
            shortest_flop_path(g, "nope", g.root)
        with pytest.raises(NotFoundError):
            shortest_flop_path(g, g.root, "nope")

    def test_no_path_between_disconnected_nodes(self):
        a = initial_configuration(1)
        b = apply_flop(a, FlopMove((P(1, 1),)))
        g = FlopGraph(
            root=canonical_key(a),
            mode="identity",
            simultaneous=False,
            nodes={canonical_key(a): a, canonical_key(b): b},
        )
        with pytest.raises(NoPathError):
            shortest_flop_path(g, canonical_key(a), canonical_key(b))


class TestExport:
    def test_configuration_dot_k1(self):
        text = export(initial_configuration(1), "dot")
        assert text.count("shape=circle") == 1
        assert text.count("shape=trapezium") == 1
        assert text.count("style=solid") == 1
        assert 'pos="1,1!"' in text

    def test_configuration_dot_k2_counts(self):
        text = export(initial_configuration(2), "dot")
        node_lines = [line for line in text.splitlines() if "shape=" in line]
        edge_lines = [line for line in text.splitlines() if " -- " in line]
        assert len(node_lines) == 5
        assert len(edge_lines) == 6
        assert sum("style=solid" in line for line in edge_lines) == 4
        assert sum("style=dashed" in line for line in edge_lines) == 2

    def test_configuration_json_roundtrip(self):
        c = apply_flop(initial_configuration(2), FlopMove((P(1, 1),)))
        parsed = Configuration.from_json_obj(json.loads(export(c, "json")))
        assert parsed == c

    def test_export_is_byte_deterministic(self):
        c = initial_configuration(3)
        assert export(c, "dot") == export(c, "dot")
        assert export(c, "json") == export(c, "json")
        g1 = explore(initial_configuration(2))
        g2 = explore(initial_configuration(2))
        assert export(g1, "json") == export(g2, "json")
        assert export(g1, "dot") == export(g2, "dot")

    def test_graph_json_schema(self):
        g = explore(initial_configuration(1))
        obj = json.loads(export(g, "json"))
        assert set(obj) == {"root", "nodes", "arcs", "dead_arcs"}
        assert obj["root"] in obj["nodes"]
        assert len(obj["nodes"]) == 2
        for arc in obj["arcs"]:
            assert set(arc) == {"from", "to", "centers"}
            assert arc["from"] in obj["nodes"] and arc["to"] in obj["nodes"]
        parsed = Configuration.from_json_obj(obj["nodes"][obj["root"]])
        assert parsed == initial_configuration(1)

    def test_unknown_format_rejected(self):
        with pytest.raises(ParameterError):
            export(initial_configuration(1), "svg")
        with pytest.raises(ParameterError):
            export("not a configuration")  # type: ignore[arg-type]
