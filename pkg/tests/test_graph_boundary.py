import json

import numpy as np
import pytest
from conftest import path_bib, random_z2_graphs, star_k14

from steklov_cayley.cayley import free_abelian, heisenberg
from steklov_cayley.families import heis_ball, induced, random_connected_subset, zd_ball, zd_box
from steklov_cayley.graph_boundary import (
    DisconnectedResult,
    GraphSchemaError,
    GraphWithBoundary,
    InducedSubsetSpec,
    InvalidGraphError,
    example_family_G,
    from_json,
    induce,
    to_json,
    validate,
    vertex_boundary,
)

Z1, Z2 = free_abelian(1), free_abelian(2)

# a P-pentomino: five interior lattice points and their nine boundary neighbours
PENTOMINO = {(4, 2), (5, 2), (6, 2), (5, 3), (6, 3)}
PENTOMINO_DELTA = {(3, 2), (4, 1), (4, 3), (5, 1), (6, 1), (7, 2), (7, 3), (6, 4), (5, 4)}
PENTOMINO_EDGES = (
    [((x, 2), (x + 1, 2)) for x in range(3, 7)]
    + [((x, 3), (x + 1, 3)) for x in range(4, 7)]
    + [((4, y), (4, y + 1)) for y in range(1, 3)]
    + [((5, y), (5, y + 1)) for y in range(1, 4)]
    + [((6, y), (6, y + 1)) for y in range(1, 4)]
)

# included in Z^2 but not induced
NOT_INDUCED = {
    "vertices": [
        {"id": 0, "boundary": False, "label": [1, 2]},
        {"id": 1, "boundary": False, "label": [2, 2]},
        {"id": 2, "boundary": False, "label": [3, 2]},
        {"id": 3, "boundary": False, "label": [4, 2]},
        {"id": 4, "boundary": False, "label": [3, 3]},
        {"id": 5, "boundary": False, "label": [4, 3]},
        {"id": 6, "boundary": True, "label": [1, 1]},
        {"id": 7, "boundary": True, "label": [1, 3]},
    ],
    "edges": [[0, 1], [1, 2], [2, 3], [4, 5], [0, 6], [0, 7], [2, 4], [3, 5]],
    "host": {"kind": "free_abelian", "rank": 2},
}


class TestValidate:
    def test_path_is_valid(self):
        assert validate(path_bib()) == []

    def test_boundary_edge(self):
        g = GraphWithBoundary.from_edges(2, [(0, 1)], [0, 1])
        kinds = [v.kind for v in validate(g)]
        assert kinds == ["boundary_edge"]
        assert validate(g)[0].witnesses == ((0, 1),)

    def test_disconnected(self):
        g = GraphWithBoundary.from_edges(4, [(0, 1), (2, 3)], [0, 2])
        (v,) = validate(g)
        assert v.kind == "disconnected"
        assert v.witnesses == ((0, 1), (2, 3))

    def test_empty_boundary_loop_duplicate(self):
        g = GraphWithBoundary(3, ((0, 0), (0, 1), (0, 1), (1, 2)), (False, False, False))
        kinds = {v.kind for v in validate(g)}
        assert kinds == {"loop", "duplicate_edge", "empty_boundary"}

    def test_host_inclusion_checked(self):
        g = GraphWithBoundary.from_edges(2, [(0, 1)], [1], labels=[(0, 0), (2, 0)], host=Z2)
        assert [v.kind for v in validate(g)] == ["label"]


class TestVertexBoundary:
    def test_single_point_z2(self):
        spec = InducedSubsetSpec(Z2, frozenset({(0, 0)}))
        assert vertex_boundary(spec) == {(1, 0), (-1, 0), (0, 1), (0, -1)}

    def test_interval(self):
        assert vertex_boundary(InducedSubsetSpec(Z1, frozenset({(0,), (1,), (2,)}))) == {(-1,), (3,)}

    def test_heisenberg_identity(self):
        H = heisenberg()
        spec = InducedSubsetSpec(H, frozenset({(0, 0, 0)}))
        assert vertex_boundary(spec) == set(H.generators)

    def test_empty_omega_rejected(self):
        with pytest.raises(ValueError):
            InducedSubsetSpec(Z2, frozenset())


class TestInduce:
    def test_star(self):
        g = induce(InducedSubsetSpec(Z2, frozenset({(0, 0)})))
        assert (g.n, g.b, len(g.edges)) == (5, 4, 4)
        assert g.labels[0] == (0, 0)

    def test_box_2x3(self):
        g = zd_box((2, 3))
        assert g.n - g.b == 6
        assert g.b == 10
        assert g.n == 16
        # 7 edges inside the box plus 10 attachments
        inner = sum(1 for i, j in g.edges if not g.boundary[i] and not g.boundary[j])
        assert inner == 7
        assert len(g.edges) == 17

    def test_pentomino(self):
        g = induced(Z2, PENTOMINO)
        assert {g.labels[i] for i in g.boundary_indices} == PENTOMINO_DELTA
        assert {g.labels[i] for i in g.interior_indices} == PENTOMINO
        got = {frozenset((g.labels[i], g.labels[j])) for i, j in g.edges}
        assert got == {frozenset(e) for e in PENTOMINO_EDGES}
        assert len(got) == 15

    def test_vertex_order(self):
        g = zd_ball(2, 2)
        interior = [g.labels[i] for i in g.interior_indices]
        bnd = [g.labels[i] for i in g.boundary_indices]
        assert interior == sorted(interior)
        assert bnd == sorted(bnd)
        assert max(g.interior_indices) < min(g.boundary_indices)

    def test_disconnected_rejected(self):
        with pytest.raises(DisconnectedResult):
            induced(Z2, {(0, 0), (5, 5)})

    def test_shared_boundary_keeps_it_connected(self):
        g = induced(Z1, {(0,), (2,)})
        assert validate(g) == []

    @pytest.mark.parametrize("seed", range(5))
    def test_induced_properties(self, seed):
        host = free_abelian(2) if seed % 2 else heisenberg()
        rng = np.random.default_rng(seed)
        omega = random_connected_subset(host, 12, rng)
        spec = InducedSubsetSpec(host, omega)
        g = induce(spec)
        delta = vertex_boundary(spec)
        assert validate(g) == []
        assert g.n == len(omega) + len(delta)
        adj = g.adjacency_list
        for i in g.boundary_indices:
            assert adj[i]
            assert all(not g.boundary[j] for j in adj[i])
        for i, j in g.edges:
            assert g.labels[i] in omega or g.labels[j] in omega

    def test_heis_ball_graph(self):
        g = heis_ball(2)
        assert g.n - g.b == 17
        assert validate(g) == []


class TestExampleFamily:
    @pytest.mark.parametrize("n,nv,ne", [(1, 3, 2), (4, 6, 8), (1000, 1002, 2000)])
    def test_sizes(self, n, nv, ne):
        g = example_family_G(n)
        assert (g.n, len(g.edges), g.b) == (nv, ne, 2)
        assert validate(g) == []

    def test_n1_is_a_path(self):
        g = example_family_G(1)
        assert sorted(g.degrees.tolist()) == [1, 1, 2]

    def test_invalid(self):
        with pytest.raises(ValueError):
            example_family_G(0)


class TestJson:
    def test_star_roundtrip(self):
        g = star_k14()
        assert from_json(to_json(g)) == g

    def test_g3_roundtrip(self):
        g = example_family_G(3)
        assert from_json(to_json(g)) == g
        assert len(g.edges) == 6 and g.b == 2 and g.n - g.b == 3

    def test_bad_edge_index(self):
        text = json.dumps({"vertices": [{"id": 0, "boundary": True}], "edges": [[0, 3]]})
        with pytest.raises(GraphSchemaError):
            from_json(text)

    @pytest.mark.parametrize(
        "doc",
        [
            "not json",
            "[]",
            '{"vertices": [{"id": 0}], "edges": []}',
            '{"vertices": [{"id": 0, "boundary": true}, {"id": 0, "boundary": false}], "edges": []}',
            '{"vertices": [{"id": 0, "boundary": true, "label": [0]}, {"id": 1, "boundary": false}], "edges": [[0, 1]]}',
            '{"vertices": [{"id": 0, "boundary": true}], "edges": [[0]]}',
            '{"vertices": [{"id": 0, "boundary": true}], "edges": [], "host": {"kind": "x"}}',
        ],
    )
    def test_schema_errors(self, doc):
        with pytest.raises(GraphSchemaError):
            from_json(doc)

    def test_invariant_violation_reported(self):
        text = json.dumps({"vertices": [{"id": 0, "boundary": True}, {"id": 1, "boundary": True}], "edges": [[0, 1]]})
        with pytest.raises(InvalidGraphError) as info:
            from_json(text)
        assert info.value.violations[0].kind == "boundary_edge"

    def test_reindexed_input_equals_up_to_relabeling(self):
        g = induced(Z2, {(0, 0)})
        d = json.loads(to_json(g))
        perm = [4, 2, 0, 3, 1]
        d["vertices"] = [{**v, "id": perm[v["id"]]} for v in d["vertices"]]
        d["edges"] = [sorted([perm[i], perm[j]]) for i, j in d["edges"]]
        h = from_json(json.dumps(d))
        assert h != g
        assert h.canonical() == g.canonical()

    def test_random_roundtrips(self):
        for g in random_z2_graphs(50, 15, seed=11):
            h = from_json(to_json(g))
            assert h.canonical() == g.canonical()
            assert h == g

    def test_included_not_induced(self):
        g = from_json(json.dumps(NOT_INDUCED))
        assert validate(g) == []
        assert (g.n, len(g.edges), g.b) == (8, 8, 2)
        # host edges such as (2,2)-(2,3) are left out, so no subset induces this graph
        omega = {g.labels[i] for i in g.interior_indices}
        assert induced(Z2, omega).canonical() != g.canonical()
