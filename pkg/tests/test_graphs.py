import pytest
from hypothesis import given, settings, strategies as st

from covgraph.graphs import (Graph, GraphMorphism, ValidationError,
                             cycle_graph, disjoint_union_graphs,
                             graph_equal, induced_pi0_map, rose_graph,
                             spanning_forest, subgraph, theta_graph,
                             validate_graph)
from covgraph.zoo import cyclic_cover_map


def test_cycle_counts():
    g = cycle_graph(5)
    assert len(g.vertices) == 5
    assert len(g.darts) == 10
    assert g.components.count == 1


def test_rose_and_theta():
    assert len(rose_graph(3).darts) == 6
    th = theta_graph()
    assert len(th.vertices) == 2
    assert len(th.darts) == 6


def test_involution_fixed_point_rejected():
    with pytest.raises(ValidationError) as err:
        Graph(["v"], ["d"], {"d": "d"}, {"d": "v"})
    assert "d" in str(err.value)


def test_involution_must_be_involutive():
    with pytest.raises(ValidationError):
        Graph(["v"], ["a", "b", "c"],
              {"a": "b", "b": "c", "c": "a"},
              {"a": "v", "b": "v", "c": "v"})


def test_validate_graph_reports_all_problems():
    with pytest.raises(ValidationError) as err:
        validate_graph(["v0"], [("e0", "v0", "nope"),
                                ("e1", "ghost", "v0")])
    assert len(err.value.problems) == 2


def test_unknown_base_vertex_rejected():
    with pytest.raises(ValidationError):
        cycle_graph(3, bases=("v9",))


def test_components_of_disjoint_union():
    g = disjoint_union_graphs([cycle_graph(3), rose_graph(2), cycle_graph(4)])
    assert g.components.count == 3
    part = g.components
    assert sorted(sum((list(part.vertices_of(c)) for c in range(3)), [])) \
        == sorted(g.vertices)


def test_morphism_must_commute():
    c6 = cycle_graph(6, prefix="u", edge_prefix="f")
    c3 = cycle_graph(3)
    vmap = {f"u{i}": f"v{i % 3}" for i in range(6)}
    bad = {f"f{i}{s}": "c0+" for i in range(6) for s in "+-"}
    with pytest.raises(ValidationError):
        GraphMorphism(c6, c3, vmap, bad)


def test_morphism_compose_and_identity():
    f = cyclic_cover_map(6, 3)
    ident = GraphMorphism.identity(f.target)
    assert ident.compose(f).same_maps(f)
    c6 = f.source
    rot = GraphMorphism(
        c6, c6,
        {f"u{i}": f"u{(i + 1) % 6}" for i in range(6)},
        {f"f{i}{s}": f"f{(i + 1) % 6}{s}" for i in range(6) for s in "+-"})
    assert f.compose(rot).vertex_map["u0"] == "v1"


def test_pi0_map_flags():
    f = cyclic_cover_map(6, 3)
    pi0 = induced_pi0_map(f)
    assert pi0.surjective and pi0.injective


def test_subgraph_must_be_involution_closed():
    g = cycle_graph(3)
    with pytest.raises(ValidationError):
        subgraph(g, ["v0", "v1"], ["c0+"])


def test_graph_equal_ignores_construction_order():
    g = cycle_graph(4)
    h = Graph(list(reversed(g.vertices)), list(reversed(g.darts)),
              g.involution, g.origin)
    assert graph_equal(g, h)


@st.composite
def multigraphs(draw):
    n = draw(st.integers(1, 6))
    vertices = [f"v{i}" for i in range(n)]
    m = draw(st.integers(0, 8))
    edges = []
    for k in range(m):
        u = draw(st.integers(0, n - 1))
        v = draw(st.integers(0, n - 1))
        edges.append((f"e{k}", f"v{u}", f"v{v}"))
    return validate_graph(vertices, edges)


@settings(max_examples=60, deadline=None)
@given(multigraphs())
def test_spanning_forest_is_a_spanning_tree_per_component(g):
    forest = spanning_forest(g)
    tree = forest.tree_darts
    # involution-closed, one tree edge pair per non-root vertex
    assert all(g.involution[d] in tree for d in tree)
    assert len(tree) // 2 == len(g.vertices) - g.components.count
    for v in g.vertices:
        path = forest.path_from_base(v)
        cur = g.base_of_component(g.components.index[v]) \
            if not g.bases else None
        # path leads from the component base to v through tree darts
        if path:
            assert g.terminus(path[-1]) == v
        assert all(d in tree for d in path)


@settings(max_examples=60, deadline=None)
@given(multigraphs())
def test_component_numbering_deterministic(g):
    part = g.components
    assert part.reps == tuple(sorted(part.reps))
    for c, rep in enumerate(part.reps):
        assert min(part.vertices_of(c)) == rep
