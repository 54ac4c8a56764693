import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from covgraph.covers import Category, CoveringMap, trivial_cover
from covgraph.graphs import (GraphMorphism, ValidationError, graph_equal,
                             induced_pi0_map, rose_graph)
from covgraph.pullback import (compose_pullbacks, image_identities,
                               preimage_subspace, pullback,
                               pullback_extrinsic_union,
                               pullback_intrinsic_union, pullback_morphism,
                               pullback_partitioned_union, pullback_trivial,
                               universal_map)
from covgraph.zoo import (cyclic_base, cyclic_cover, cyclic_cover_map,
                          rose_base, rose_to_rose)

from helpers import random_cover


def test_pullback_square_commutes():
    f = cyclic_cover_map(6, 3)
    p = cyclic_cover(9, 3, prefix="z", edge_prefix="y")
    pb = pullback(f, p)
    left = f.compose(pb.proj_base.morphism)
    right = p.morphism.compose(pb.proj_top)
    assert left.same_maps(right)


def test_pullback_projection_is_a_cover():
    rng = random.Random(3)
    for _ in range(15):
        base = rose_graph(2, bases=("v",))
        p = random_cover(rng, base, 3)
        f = rose_to_rose(2, (rng.choice([1, -1]), rng.choice([1, -1])),
                         base=None)
        # retarget f onto the rose R_2 base via a second random cover map
        q = random_cover(rng, base, 2)
        pb = pullback(q.morphism, p)  # cover along cover is fine too
        assert pb.proj_base.total is pb.total  # validated in construction


def test_gcd_component_counts_sample():
    for m, n in [(2, 3), (4, 6), (3, 3), (6, 4)]:
        f = cyclic_cover_map(m * 3, 3)
        p = cyclic_cover(n * 3, 3, prefix="z", edge_prefix="y")
        pb = pullback(f, p)
        assert pb.total.components.count == math.gcd(m, n)


def test_category_and_basepoint_propagation():
    f = cyclic_cover_map(6, 3)
    p = CoveringMap(cyclic_cover_map(9, 3, prefix="z", edge_prefix="y"),
                    Category.BSCOV, "z0")
    pb = pullback(f, p)
    assert pb.category == Category.BSCOV
    assert pb.basepoint == "(u0,z0)"


def test_empty_fiber_pullback():
    # cover of one component of a two-component base, pulled back along
    # the inclusion of the uncovered component, is empty
    from covgraph.zoo import c3_inclusion
    inc = c3_inclusion()
    y = inc.target
    other = [v for v in y.vertices if v.endswith("#1")]
    triv = trivial_cover(y, ["s"]).cover
    from covgraph.covers import select_components
    keep = [c for c in range(triv.total.components.count)
            if triv.total.components.reps[c].startswith("(x")]
    p = select_components(triv, keep)
    pb = pullback(inc, p)
    assert pb.total.is_empty()


def test_functor_laws_on_identity_and_composition():
    y = cyclic_base(3)
    f = cyclic_cover_map(6, 3)
    p = trivial_cover(y, ["a", "b"]).cover
    from covgraph.covers import CoverMorphism
    from covgraph.functor import enumerate_hom
    hs = enumerate_hom(p, p).morphisms
    ident = next(t for t in hs if t.t.same_maps(GraphMorphism.identity(p.total)))
    pid, pb1, pb2 = pullback_morphism(f, ident)
    assert pid.t.same_maps(GraphMorphism.identity(pb1.total))
    for t1 in hs:
        for t2 in hs:
            lhs, _, _ = pullback_morphism(f, t2.compose(t1))
            a, _, _ = pullback_morphism(f, t1)
            b, _, _ = pullback_morphism(f, t2)
            assert lhs.t.same_maps(b.compose(a).t)


def test_universal_property():
    f = cyclic_cover_map(6, 3)
    p = cyclic_cover(9, 3, prefix="z", edge_prefix="y")
    pb = pullback(f, p)
    mu = universal_map(pb.proj_base.morphism, pb.proj_top, pb)
    assert mu.same_maps(GraphMorphism.identity(pb.total))
    with pytest.raises(ValidationError):
        universal_map(pb.proj_top, pb.proj_base.morphism, pb)


def test_compose_pullbacks_iso():
    f = cyclic_cover_map(6, 3)
    c6 = f.source
    h = GraphMorphism(
        cyclic_cover_map(12, 6, prefix="w", edge_prefix="g").source, c6,
        {f"w{i:02d}": f"u{i % 6}" for i in range(12)},
        {f"g{i:02d}{s}": f"f{i % 6}{s}" for i in range(12) for s in "+-"})
    p = cyclic_cover(9, 3, prefix="z", edge_prefix="y")
    iso, left, right = compose_pullbacks(h, f, p)
    assert iso.is_iso()
    assert len(left.total.vertices) == len(right.total.vertices)


def test_pullback_of_trivial_is_trivial():
    f = cyclic_cover_map(6, 3)
    iso, q, pb = pullback_trivial(f, ["a", "b", "c"])
    assert iso.is_iso()
    iso_b, q_b, pb_b = pullback_trivial(f, ["a", "b"], based_label="a")
    assert pb_b.basepoint is not None
    assert iso_b.t.vertex_map[q_b.cover.basepoint] == pb_b.basepoint


def test_intrinsic_union_is_set_level_equality():
    f = cyclic_cover_map(6, 3)
    p = cyclic_cover(9, 3, prefix="z", edge_prefix="y")
    t = trivial_cover(f.target, ["s", "t"]).cover
    # two-component cover: partition its components singly
    rep = pullback_intrinsic_union(f, t, [[0], [1]])
    assert rep.equal
    whole = pullback(f, t)
    got_v = set()
    for pb in rep.pullbacks:
        got_v |= set(pb.total.vertices)
    assert got_v == set(whole.total.vertices)


def test_extrinsic_union_iso():
    f = cyclic_cover_map(6, 3)
    covers = [cyclic_cover(9, 3, prefix="z", edge_prefix="y"),
              cyclic_cover(3, 3, prefix="q", edge_prefix="r"),
              trivial_cover(f.target, ["s"]).cover]
    iso, union_up, pb_union = pullback_extrinsic_union(f, covers)
    assert iso.is_iso()
    assert len(union_up.cover.total.vertices) \
        == len(pb_union.total.vertices)


def test_partitioned_union_three_isos():
    f = cyclic_cover_map(6, 3)
    covers = [cyclic_cover(9, 3, prefix="z", edge_prefix="y"),
              cyclic_cover(3, 3, prefix="q", edge_prefix="r"),
              trivial_cover(f.target, ["s"]).cover,
              cyclic_cover(6, 3, prefix="t", edge_prefix="o")]
    rep = pullback_partitioned_union(f, covers, [[0, 2], [1, 3]])
    assert rep.iso_reassociate.is_iso()
    assert rep.iso_outer.is_iso()
    assert rep.iso_blocks.is_iso()


def test_preimage_subspace_identity():
    f = cyclic_cover_map(6, 3)
    t = trivial_cover(f.target, ["s", "t"]).cover
    rep = preimage_subspace(f, t, [0])
    assert rep.equal


def test_image_identities():
    from covgraph.zoo import c3_inclusion
    inc = c3_inclusion()
    p = trivial_cover(inc.target, ["s", "t"]).cover
    pb = pullback(inc, p)
    rep = image_identities(pb)
    assert rep.holds


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6))
def test_gcd_law_property(m, n):
    f = cyclic_cover_map(m * 3, 3)
    p = cyclic_cover(n * 3, 3, prefix="z", edge_prefix="y")
    pb = pullback(f, p)
    g = math.gcd(m, n)
    assert pb.total.components.count == g
    # each component winds n/g times over the source cycle
    for c in range(g):
        comp_size = len(pb.total.components.vertices_of(c))
        assert comp_size == (n // g) * m * 3
