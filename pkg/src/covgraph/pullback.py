"""The fiber-product construction on graph covers.

Given a morphism f: X -> Y and a cover p: E -> Y, the pullback total
space has vertices {(x, e) : f(x) = p(e)} and darts {(a, b) : f(a) = p(b)},
with the two canonical projections.  The projection to X is always a
covering map; the projection to E restricts to a bijection of fibers.

Pair cells are ordered lexicographically by their component identifiers,
so component numbering and serialized output are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .covers import (Category, CoverMorphism, CoveringMap, TrivialCover,
                     UnionCover, extrinsic_union, restrict_cover,
                     select_components, trivial_cover, union_respects_iso)
from .graphs import (Graph, GraphMorphism, ValidationError, graph_equal,
                     pair_id, tag_id, union_of_components_subgraph)


class PullbackCover:
    """f*(E) with its two projections.

    ``vertex_pair`` / ``dart_pair`` recover the (x, e) pair behind each
    pair identifier.
    """

    def __init__(self, f, p):
        if not graph_equal(f.target, p.base):
            raise ValidationError(["target of f is not the base of p"])
        self.f = f
        self.p = p
        x = f.source
        vertices, origin, involution = [], {}, {}
        vertex_pair, dart_pair = {}, {}
        proj_b_v, proj_b_d, proj_t_v, proj_t_d = {}, {}, {}, {}
        for xv in x.vertices:
            for e in p.fiber(f.vertex_map[xv]):
                pv = pair_id(xv, e)
                vertices.append(pv)
                vertex_pair[pv] = (xv, e)
                proj_b_v[pv] = xv
                proj_t_v[pv] = e
        over = {}
        for b in p.total.darts:
            over.setdefault(p.dart(b), []).append(b)
        darts = []
        for a in x.darts:
            for b in over.get(f.dart_map[a], ()):
                pd = pair_id(a, b)
                darts.append(pd)
                dart_pair[pd] = (a, b)
                origin[pd] = pair_id(x.origin[a], p.total.origin[b])
                involution[pd] = pair_id(x.involution[a],
                                         p.total.involution[b])
                proj_b_d[pd] = a
                proj_t_d[pd] = b
        total = Graph(vertices, darts, involution, origin)
        self.total = total
        self.vertex_pair = vertex_pair
        self.dart_pair = dart_pair
        self.proj_top = GraphMorphism(total, p.total, proj_t_v, proj_t_d)
        category = p.category
        basepoint = None
        if p.category.based:
            x0 = x.bases[0] if x.bases else None
            if x0 is None or f.vertex_map[x0] != p.base_vertex:
                category = Category.SCOV if p.category.surjective else Category.COV
            else:
                basepoint = pair_id(x0, p.basepoint)
        self.proj_base = CoveringMap(GraphMorphism(total, x, proj_b_v, proj_b_d),
                                     category, basepoint)

    @property
    def category(self):
        return self.proj_base.category

    @property
    def basepoint(self):
        return self.proj_base.basepoint


def pullback(f, p):
    return PullbackCover(f, p)


def pullback_morphism(f, t):
    """f*(t): the cover morphism (x, e) -> (x, t(e)) between pullbacks.

    Preserves injectivity, surjectivity, and isomorphism of ``t``.
    Returns (f*(t), f*(p1), f*(p2)) with the pullbacks freshly built
    unless supplied via :func:`pullback_morphism_between`.
    """
    pb1 = pullback(f, t.p1)
    pb2 = pullback(f, t.p2)
    return pullback_morphism_between(f, t, pb1, pb2), pb1, pb2


def pullback_morphism_between(f, t, pb1, pb2):
    vmap = {pv: pair_id(x, t.t.vertex_map[e])
            for pv, (x, e) in pb1.vertex_pair.items()}
    dmap = {pd: pair_id(a, t.t.dart_map[b])
            for pd, (a, b) in pb1.dart_pair.items()}
    m = GraphMorphism(pb1.total, pb2.total, vmap, dmap)
    return CoverMorphism(m, pb1.proj_base, pb2.proj_base,
                         category=pb1.category if pb1.category == pb2.category
                         else Category.COV)


def universal_map(q1, q2, pb):
    """The unique morphism mu into the pullback with proj_base ∘ mu = q1
    and proj_top ∘ mu = q2; requires f ∘ q1 = p ∘ q2."""
    f, p = pb.f, pb.p
    if not graph_equal(q1.source, q2.source):
        raise ValidationError(["q1 and q2 have different sources"])
    if not graph_equal(q1.target, f.source) or \
            not graph_equal(q2.target, p.total):
        raise ValidationError(["q1 must land in the source of f and q2 in "
                               "the total space of p"])
    if not f.compose(q1).same_maps(p.morphism.compose(q2)):
        raise ValidationError(["square does not commute"])
    vmap = {c: pair_id(q1.vertex_map[c], q2.vertex_map[c])
            for c in q1.source.vertices}
    dmap = {c: pair_id(q1.dart_map[c], q2.dart_map[c])
            for c in q1.source.darts}
    mu = GraphMorphism(q1.source, pb.total, vmap, dmap)
    if not pb.proj_base.morphism.compose(mu).same_maps(q1) or \
            not pb.proj_top.compose(mu).same_maps(q2):
        raise ValidationError(["universal map fails to commute"])
    return mu


def compose_pullbacks(h, f, p):
    """The canonical isomorphism h*(f*(p)) ≅ (f ∘ h)*(p), given by
    (w, (x, z)) -> (w, z); verified bijective."""
    inner = pullback(f, p)
    left = pullback(h, inner.proj_base)
    right = pullback(f.compose(h), p)
    vmap, dmap = {}, {}
    for pv, (w, m) in left.vertex_pair.items():
        _, z = inner.vertex_pair[m]
        vmap[pv] = pair_id(w, z)
    for pd, (a, m) in left.dart_pair.items():
        _, b = inner.dart_pair[m]
        dmap[pd] = pair_id(a, b)
    t = GraphMorphism(left.total, right.total, vmap, dmap)
    iso = CoverMorphism(t, left.proj_base, right.proj_base)
    if not iso.is_iso():
        raise ValidationError(["pullback composition witness is not bijective"])
    return iso, left, right


def pullback_trivial(f, labels, based_label=None):
    """The isomorphism trivial_cover(X, D) ≅ f*(trivial_cover(Y, D)),
    (x, d) -> (x, (f(x), d))."""
    x, y = f.source, f.target
    bp_x = bp_y = None
    if based_label is not None:
        if not x.bases or not y.bases:
            raise ValidationError(["based variant requires base vertices"])
        bp_x = (x.bases[0], str(based_label))
        bp_y = (y.bases[0], str(based_label))
    q = trivial_cover(x, labels, bp_x)
    pt = trivial_cover(y, labels, bp_y)
    pb = pullback(f, pt.cover)
    vmap = {pair_id(v, l): pair_id(v, pair_id(f.vertex_map[v], l))
            for l in q.labels for v in x.vertices}
    dmap = {pair_id(d, l): pair_id(d, pair_id(f.dart_map[d], l))
            for l in q.labels for d in x.darts}
    mu = GraphMorphism(q.cover.total, pb.total, vmap, dmap)
    iso = CoverMorphism(mu, q.cover, pb.proj_base)
    if not iso.is_iso():
        raise ValidationError(["trivial pullback witness is not bijective"])
    if based_label is not None and \
            mu.vertex_map[q.cover.basepoint] != pb.basepoint:
        raise ValidationError(["trivial pullback witness misses basepoint"])
    return iso, q, pb


@dataclass(frozen=True)
class IntrinsicUnionReport:
    parts: tuple
    pullbacks: tuple
    equal: bool


def pullback_intrinsic_union(f, p, partition):
    """Set-level identity f*(⊔ Eα) = ⊔ f*(Eα) for a partition of the
    total space into unions of components; checked as an equality of
    identifier sets, and each restricted projection is itself the
    pullback of the restricted cover."""
    comps = p.total.components
    flat = [c for part in partition for c in part]
    if sorted(flat) != list(range(comps.count)):
        raise ValidationError(["not a partition into components"])
    whole = pullback(f, p)
    part_pullbacks = []
    seen_v, seen_d = set(), set()
    for part in partition:
        sub = select_components(p, part)
        pb = pullback(f, sub)
        part_pullbacks.append(pb)
        seen_v |= set(pb.total.vertices)
        seen_d |= set(pb.total.darts)
        # restricted projection equals the pullback of the restriction
        for pv in pb.total.vertices:
            if whole.proj_base.vertex(pv) != pb.proj_base.vertex(pv):
                raise ValidationError(["projection mismatch on " + pv])
        for pd in pb.total.darts:
            if whole.proj_base.dart(pd) != pb.proj_base.dart(pd):
                raise ValidationError(["projection mismatch on " + pd])
    equal = (seen_v == set(whole.total.vertices)
             and seen_d == set(whole.total.darts))
    if not equal:
        raise ValidationError(["pullback of intrinsic union is not equal"])
    return IntrinsicUnionReport(tuple(tuple(q) for q in partition),
                                tuple(part_pullbacks), True)


def pullback_extrinsic_union(f, covers):
    """The canonical isomorphism ∐ f*(Eα) -> f*(∐ Eα),
    ((x, e), α) -> (x, (e, α)); verified bijective.

    Returns (iso, union upstairs of pullbacks, pullback of the union).
    """
    covers = tuple(covers)
    union = extrinsic_union(covers)
    pb_union = pullback(f, union.cover)
    part_pbs = [pullback(f, q) for q in covers]
    union_of_pbs = extrinsic_union([pb.proj_base for pb in part_pbs])
    vmap, dmap = {}, {}
    for tv, (i, pv) in union_of_pbs.vertex_origin.items():
        x, e = part_pbs[i].vertex_pair[pv]
        vmap[tv] = pair_id(x, tag_id(e, i))
    for td, (i, pd) in union_of_pbs.dart_origin.items():
        a, b = part_pbs[i].dart_pair[pd]
        dmap[td] = pair_id(a, tag_id(b, i))
    t = GraphMorphism(union_of_pbs.cover.total, pb_union.total, vmap, dmap)
    iso = CoverMorphism(t, union_of_pbs.cover, pb_union.proj_base)
    if not iso.is_iso():
        raise ValidationError(["extrinsic union witness is not bijective"])
    return iso, union_of_pbs, pb_union


@dataclass(frozen=True)
class PartitionedUnionReport:
    """The chain f*(E) ≅ f*(∐β blocks) ≅ ∐β f*(block) ≅ ∐β ∐α f*(Eα),
    one verified isomorphism per link."""

    iso_reassociate: CoverMorphism
    iso_outer: CoverMorphism
    iso_blocks: CoverMorphism


def pullback_partitioned_union(f, covers, partition):
    """Verify the three isomorphisms for a partition of the index set of
    an extrinsic union."""
    covers = tuple(covers)
    flat = [i for block in partition for i in block]
    if sorted(flat) != list(range(len(covers))):
        raise ValidationError(["not a partition of the index set"])
    union_all = extrinsic_union(covers)
    block_unions = [extrinsic_union([covers[i] for i in block])
                    for block in partition]
    nested = extrinsic_union([bu.cover for bu in block_unions])
    # reassociation isomorphism over Y: ((e, α-in-block), β) -> (e, α)
    vmap, dmap = {}, {}
    for tv, (b, inner_v) in nested.vertex_origin.items():
        j, v = block_unions[b].vertex_origin[inner_v]
        vmap[tv] = tag_id(v, partition[b][j])
    for td, (b, inner_d) in nested.dart_origin.items():
        j, d = block_unions[b].dart_origin[inner_d]
        dmap[td] = tag_id(d, partition[b][j])
    r = CoverMorphism(GraphMorphism(nested.cover.total, union_all.cover.total,
                                    vmap, dmap),
                      nested.cover, union_all.cover)
    if not r.is_iso():
        raise ValidationError(["reassociation is not bijective"])
    # link 1: f*(E) ≅ f*(nested) via functoriality on r⁻¹
    iso1, _, _ = pullback_morphism(f, r.inverse())
    if not iso1.is_iso():
        raise ValidationError(["pullback of reassociation is not bijective"])
    # link 2: ∐β f*(blockβ) ≅ f*(nested) via the extrinsic-union law
    iso2, union_of_block_pbs, _ = pullback_extrinsic_union(
        f, [bu.cover for bu in block_unions])
    # link 3: ∐β ∐α f*(Eα) ≅ ∐β f*(blockβ), per-block extrinsic-union law
    per_block = []
    for block in partition:
        iso_b, _, _ = pullback_extrinsic_union(f, [covers[i] for i in block])
        per_block.append(iso_b)
    fine_union = extrinsic_union([iso.p1 for iso in per_block])
    iso3 = union_respects_iso(fine_union, union_of_block_pbs, per_block)
    return PartitionedUnionReport(iso1, iso2, iso3)


@dataclass(frozen=True)
class PreimageReport:
    pullback_of_restriction: PullbackCover
    preimage_components: tuple
    equal: bool


def preimage_subspace(f, p, cs):
    """Lemma-level identity f*(p|S) = f*(p)|f*(S) for S a union of
    components of the total space; f*(S) is exactly the proj_top preimage
    of S."""
    sub_base = union_of_components_subgraph(p.total, cs)
    s_vs, s_ds = set(sub_base.vertices), set(sub_base.darts)
    restricted = select_components(p, cs)
    pb_restricted = pullback(f, restricted)
    whole = pullback(f, p)
    pre_v = {pv for pv, e in whole.proj_top.vertex_map.items() if e in s_vs}
    pre_d = {pd for pd, b in whole.proj_top.dart_map.items() if b in s_ds}
    equal = (pre_v == set(pb_restricted.total.vertices)
             and pre_d == set(pb_restricted.total.darts))
    if not equal:
        raise ValidationError(["preimage subspace identity fails"])
    for pv in pb_restricted.total.vertices:
        if whole.proj_base.vertex(pv) != pb_restricted.proj_base.vertex(pv):
            raise ValidationError(["restricted projection mismatch at " + pv])
    tcomps = whole.total.components
    pre_comps = tuple(sorted({tcomps.index[v] for v in pre_v}))
    return PreimageReport(pb_restricted, pre_comps, True)


@dataclass(frozen=True)
class ImageIdentities:
    top_image_vertices: frozenset
    top_image_darts: frozenset
    base_image_vertices: frozenset
    base_image_darts: frozenset
    holds: bool


def image_identities(pb):
    """im f̃ = p⁻¹(im f) and im f*(p) = f⁻¹(im p), on vertices and darts."""
    f, p = pb.f, pb.p
    im_f_v = set(f.vertex_map.values())
    im_f_d = set(f.dart_map.values())
    im_p_v = set(p.morphism.vertex_map.values())
    im_p_d = set(p.morphism.dart_map.values())
    top_v = frozenset(pb.proj_top.vertex_map.values())
    top_d = frozenset(pb.proj_top.dart_map.values())
    base_v = frozenset(pb.proj_base.morphism.vertex_map.values())
    base_d = frozenset(pb.proj_base.morphism.dart_map.values())
    want_top_v = {e for e in p.total.vertices if p.vertex(e) in im_f_v}
    want_top_d = {b for b in p.total.darts if p.dart(b) in im_f_d}
    want_base_v = {x for x in f.source.vertices
                   if f.vertex_map[x] in im_p_v}
    want_base_d = {a for a in f.source.darts if f.dart_map[a] in im_p_d}
    holds = (top_v == want_top_v and top_d == want_top_d
             and base_v == want_base_v and base_d == want_base_d)
    if not holds:
        raise ValidationError(["image identities fail"])
    return ImageIdentities(top_v, top_d, base_v, base_d, True)
