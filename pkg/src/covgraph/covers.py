"""Covering maps of graphs and their basic calculus.

A covering map is a graph morphism that is star-bijective: around every
vertex of the total space, the dart map restricts to a bijection of stars.
Fibers are then constant over each base component.  Empty fibers are
allowed except where the category demands surjectivity.

Four categories are supported: all covers (COV), surjective covers (SCOV),
based covers (BCOV), and based surjective covers (BSCOV).  Morphisms of
covers are commuting triangles over the base, filtered by surjectivity
and basepoint preservation as the category demands.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .graphs import (Graph, GraphMorphism, ValidationError, graph_equal,
                     pair_id, subgraph, tag_id, union_of_components_subgraph)


class Category(enum.Enum):
    COV = "cov"
    SCOV = "scov"
    BCOV = "bcov"
    BSCOV = "bscov"

    @property
    def surjective(self):
        return self in (Category.SCOV, Category.BSCOV)

    @property
    def based(self):
        return self in (Category.BCOV, Category.BSCOV)


class CoveringMap:
    """A validated covering map with an optional basepoint in the total
    space (required by the based categories)."""

    def __init__(self, morphism, category=Category.COV, basepoint=None):
        self.morphism = morphism
        self.category = category
        self.basepoint = basepoint
        self._lift = None
        self._fibers = None
        self._subgroup_words = {}
        self._monodromy = {}
        self._validate()

    @property
    def total(self):
        return self.morphism.source

    @property
    def base(self):
        return self.morphism.target

    def vertex(self, v):
        return self.morphism.vertex_map[v]

    def dart(self, d):
        return self.morphism.dart_map[d]

    @property
    def base_vertex(self):
        """Image of the basepoint, if based."""
        if self.basepoint is None:
            return None
        return self.vertex(self.basepoint)

    def _validate(self):
        problems = []
        m = self.morphism
        total, base = m.source, m.target
        for v in total.vertices:
            images = [m.dart_map[d] for d in total.star[v]]
            target_star = base.star[m.vertex_map[v]]
            if len(set(images)) != len(images):
                problems.append(f"star not injective at {v}")
            missing = set(target_star) - set(images)
            for d in sorted(missing):
                problems.append(f"star at {v} misses base dart {d}")
        # fiber constancy per base component
        fibers = {y: [] for y in base.vertices}
        for e in total.vertices:
            fibers[m.vertex_map[e]].append(e)
        self._fibers = {y: tuple(sorted(es)) for y, es in fibers.items()}
        comps = base.components
        for c in range(comps.count):
            sizes = {len(self._fibers[y]) for y in comps.vertices_of(c)}
            if len(sizes) > 1:
                problems.append(
                    f"fiber sizes vary over base component {comps.reps[c]}")
        if self.category.surjective:
            for y in base.vertices:
                if not self._fibers[y]:
                    problems.append(f"cover misses vertex {y}")
                    break
        if self.category.based:
            if self.basepoint is None:
                problems.append("based category requires a basepoint")
            elif self.basepoint not in set(total.vertices):
                problems.append(f"unknown basepoint {self.basepoint}")
            elif base.bases and \
                    m.vertex_map[self.basepoint] not in base.bases:
                problems.append(
                    f"basepoint {self.basepoint} does not lie over the "
                    "base vertex")
        if problems:
            raise ValidationError(problems)

    # -- fibers and lifting ------------------------------------------------

    def fiber(self, y):
        if y not in self._fibers:
            raise ValidationError([f"unknown vertex {y}"])
        return self._fibers[y]

    def degree_over(self, c):
        """Common fiber size over base component ``c``."""
        return len(self._fibers[self.base.components.reps[c]])

    @property
    def lift_table(self):
        """Mapping (total vertex, base dart at its image) -> unique lifted
        dart; this is the inverse of the star bijections."""
        if self._lift is None:
            m = self.morphism
            self._lift = {(m.source.origin[d], m.dart_map[d]): d
                          for d in m.source.darts}
        return self._lift

    def lift_dart(self, e, base_dart):
        return self.lift_table[(e, base_dart)]

    def lift_path(self, e, base_darts):
        """Lift a base dart path starting at total vertex ``e``; returns
        (dart path, terminal vertex)."""
        path = []
        cur = e
        for d in base_darts:
            lifted = self.lift_dart(cur, d)
            path.append(lifted)
            cur = self.total.terminus(lifted)
        return tuple(path), cur


def validate_cover(morphism, category=Category.COV, basepoint=None):
    """Check star bijectivity and fiber constancy; raises ValidationError
    listing every failing star and component."""
    return CoveringMap(morphism, category, basepoint)


def fiber(p, y):
    return p.fiber(y)


class CoverMorphism:
    """Morphism of covers over a common base: p2 ∘ t = p1."""

    def __init__(self, t, p1, p2, category=Category.COV):
        self.t = t
        self.p1 = p1
        self.p2 = p2
        self.category = category
        self._validate()

    def _validate(self):
        problems = []
        if not graph_equal(self.p1.base, self.p2.base):
            problems.append("covers have different bases")
        if not graph_equal(self.t.source, self.p1.total):
            problems.append("morphism source is not the first total space")
        if not graph_equal(self.t.target, self.p2.total):
            problems.append("morphism target is not the second total space")
        if problems:
            raise ValidationError(problems)
        if not self.p2.morphism.compose(self.t).same_maps(self.p1.morphism):
            raise ValidationError(["triangle does not commute"])
        if self.category.surjective and not self.t.is_surjective():
            raise ValidationError(["morphism not surjective"])
        if self.category.based:
            if self.p1.basepoint is None or self.p2.basepoint is None:
                raise ValidationError(["based category requires basepoints"])
            if self.t.vertex_map[self.p1.basepoint] != self.p2.basepoint:
                raise ValidationError(["morphism does not preserve basepoint"])

    def is_iso(self):
        return self.t.is_bijective()

    def inverse(self):
        return CoverMorphism(self.t.inverse(), self.p2, self.p1, self.category)

    def compose(self, other):
        """self ∘ other as cover morphisms (other first)."""
        return CoverMorphism(self.t.compose(other.t), other.p1, self.p2,
                             self.category)

    def same_maps(self, other):
        return self.t.same_maps(other.t)


def as_cover(cm):
    """A morphism between validated covers is itself a covering map onto
    its target total space (graphs are locally connected)."""
    return validate_cover(cm.t)


@dataclass(frozen=True)
class TrivialCover:
    """The product cover Y × D -> Y for a finite label set D."""

    base: Graph
    labels: tuple
    cover: CoveringMap


def trivial_cover(y, labels, basepoint=None):
    """Product cover with one sheet per label.  ``basepoint`` is an
    optional pair (base vertex, label) for the based categories."""
    labels = tuple(sorted(str(l) for l in labels))
    vertices, darts, involution, origin = [], [], {}, {}
    vmap, dmap = {}, {}
    for l in labels:
        for v in y.vertices:
            pv = pair_id(v, l)
            vertices.append(pv)
            vmap[pv] = v
        for d in y.darts:
            pd = pair_id(d, l)
            darts.append(pd)
            involution[pd] = pair_id(y.involution[d], l)
            origin[pd] = pair_id(y.origin[d], l)
            dmap[pd] = d
    total = Graph(vertices, darts, involution, origin)
    m = GraphMorphism(total, y, vmap, dmap)
    bp = pair_id(*basepoint) if basepoint is not None else None
    category = Category.BCOV if bp is not None else Category.COV
    return TrivialCover(y, labels, CoveringMap(m, category, bp))


@dataclass(frozen=True)
class TrivialityResult:
    trivial: bool
    fiber_size: int
    iso: CoverMorphism | None
    reason: str


def is_trivial(p):
    """Decide triviality and, when trivial, produce a verified isomorphism
    to the product cover.

    A cover is trivial iff every component of the total space maps onto its
    image component with degree one, and the fiber size is the same over
    every base component.
    """
    base, total = p.base, p.total
    bcomps, tcomps = base.components, total.components
    over = {c: [] for c in range(bcomps.count)}
    for c in range(tcomps.count):
        rep = tcomps.reps[c]
        over[bcomps.index[p.vertex(rep)]].append(c)
    sizes = {len(over[c]) for c in range(bcomps.count)} or {0}
    if len(sizes) > 1:
        return TrivialityResult(False, -1, None,
                                "fiber size varies across base components")
    n = sizes.pop() if bcomps.count else 0
    for c in range(tcomps.count):
        b = bcomps.index[p.vertex(tcomps.reps[c])]
        y = bcomps.reps[b]
        deg = sum(1 for e in p.fiber(y) if tcomps.index[e] == c)
        if deg != 1:
            return TrivialityResult(
                False, n, None,
                f"component of {tcomps.reps[c]} has degree {deg} > 1")
    labels = [str(i + 1) for i in range(n)]
    triv = trivial_cover(base, labels)
    label_of = {}
    for b in range(bcomps.count):
        for i, c in enumerate(over[b]):
            label_of[c] = sorted(labels)[i]
    vmap = {e: pair_id(p.vertex(e), label_of[tcomps.index[e]])
            for e in total.vertices}
    dmap = {d: pair_id(p.dart(d), label_of[tcomps.index[total.origin[d]]])
            for d in total.darts}
    t = GraphMorphism(total, triv.cover.total, vmap, dmap)
    iso = CoverMorphism(t, p, triv.cover)
    if not iso.is_iso():
        raise ValidationError(["triviality witness is not bijective"])
    return TrivialityResult(True, n, iso, "")


def restrict_cover(p, a):
    """Restriction of ``p`` over a subgraph ``a`` of the base; the total
    space is the full preimage of ``a``."""
    avs, ads = set(a.vertices), set(a.darts)
    for d in a.darts:
        if d not in p.base.origin or p.base.origin[d] != a.origin[d]:
            raise ValidationError([f"dart {d} is not a base dart"])
    vs = [e for e in p.total.vertices if p.vertex(e) in avs]
    ds = [d for d in p.total.darts if p.dart(d) in ads]
    sub = subgraph(p.total, vs, ds)
    m = GraphMorphism(sub, a,
                      {v: p.vertex(v) for v in sub.vertices},
                      {d: p.dart(d) for d in sub.darts})
    bp = p.basepoint if p.basepoint in set(sub.vertices) else None
    cat = p.category if (bp is not None or not p.category.based) else Category.COV
    return CoveringMap(m, cat, bp)


def select_components(p, cs):
    """Restrict a cover to a set of components of the total space; the
    result covers the same base (empty selection is a valid COV object)."""
    sub = union_of_components_subgraph(p.total, cs)
    m = GraphMorphism(sub, p.base,
                      {v: p.vertex(v) for v in sub.vertices},
                      {d: p.dart(d) for d in sub.darts})
    bp = p.basepoint if p.basepoint in set(sub.vertices) else None
    cat = Category.COV if (p.category.surjective or (p.category.based and bp is None)) \
        else p.category
    if p.category.based and bp is not None:
        cat = Category.BCOV
    return CoveringMap(m, cat, bp)


def image_of_component(p, c):
    """Image of a total-space component; asserts it is exactly a component
    of the base and returns that component's index."""
    tcomps, bcomps = p.total.components, p.base.components
    if not 0 <= c < tcomps.count:
        raise ValidationError([f"unknown component index {c}"])
    vs = {p.vertex(v) for v in tcomps.vertices_of(c)}
    ds = {p.dart(d) for d in tcomps.darts_of(c)}
    b = bcomps.index[next(iter(vs))]
    if vs != set(bcomps.vertices_of(b)) or ds != set(bcomps.darts_of(b)):
        raise ValidationError(
            [f"image of component {tcomps.reps[c]} is not a full component"])
    return b


def extend_cover_to_union(p, y):
    """Enlarge the target of a cover of one component of ``y`` to all of
    ``y``; fibers over the other components are empty."""
    bcomps = y.components
    ids = (set(p.base.vertices), set(p.base.darts))
    for c in range(bcomps.count):
        if (set(bcomps.vertices_of(c)), set(bcomps.darts_of(c))) == ids:
            break
    else:
        raise ValidationError(["base is not a component of the union"])
    m = GraphMorphism(p.total, y, dict(p.morphism.vertex_map),
                      dict(p.morphism.dart_map))
    cat = Category.BCOV if p.category.based else Category.COV
    return CoveringMap(m, cat, p.basepoint)


@dataclass(frozen=True)
class UnionCover:
    """Extrinsic disjoint union of covers over a common base, with the
    canonical injections and the origin of every tagged cell."""

    cover: CoveringMap
    summands: tuple
    injections: tuple
    vertex_origin: dict
    dart_origin: dict


def extrinsic_union(covers, category=Category.COV, base_summand=None):
    """Tagged disjoint union ∐ Eα over the common base.

    Based categories carry no preferred basepoint on a union, so the
    caller must designate which summand donates it via ``base_summand``.
    """
    covers = tuple(covers)
    if not covers:
        raise ValidationError(["empty union needs at least a base graph"])
    y = covers[0].base
    for q in covers[1:]:
        if not graph_equal(q.base, y):
            raise ValidationError(["covers have different bases"])
    vertices, darts, involution, origin = [], [], {}, {}
    vmap, dmap = {}, {}
    vertex_origin, dart_origin = {}, {}
    for i, q in enumerate(covers):
        for v in q.total.vertices:
            tv = tag_id(v, i)
            vertices.append(tv)
            vmap[tv] = q.vertex(v)
            vertex_origin[tv] = (i, v)
        for d in q.total.darts:
            td = tag_id(d, i)
            darts.append(td)
            involution[td] = tag_id(q.total.involution[d], i)
            origin[td] = tag_id(q.total.origin[d], i)
            dmap[td] = q.dart(d)
            dart_origin[td] = (i, d)
    total = Graph(vertices, darts, involution, origin)
    bp = None
    if category.based:
        if base_summand is None:
            raise ValidationError(
                ["based union requires a designated basepoint summand"])
        inner = covers[base_summand].basepoint
        if inner is None:
            raise ValidationError(
                [f"summand {base_summand} has no basepoint"])
        bp = tag_id(inner, base_summand)
    cover = CoveringMap(GraphMorphism(total, y, vmap, dmap), category, bp)
    injections = tuple(
        GraphMorphism(q.total, total,
                      {v: tag_id(v, i) for v in q.total.vertices},
                      {d: tag_id(d, i) for d in q.total.darts})
        for i, q in enumerate(covers))
    return UnionCover(cover, covers, injections, vertex_origin, dart_origin)


def union_respects_iso(union1, union2, isos):
    """Assemble per-summand isomorphisms tα into the isomorphism of unions
    t(e, α) = (tα(e), α)."""
    if len(union1.summands) != len(union2.summands) or \
            len(isos) != len(union1.summands):
        raise ValidationError(["mismatched summand index sets"])
    vmap, dmap = {}, {}
    for i, iso in enumerate(isos):
        for v, w in iso.t.vertex_map.items():
            vmap[tag_id(v, i)] = tag_id(w, i)
        for d, e in iso.t.dart_map.items():
            dmap[tag_id(d, i)] = tag_id(e, i)
    t = GraphMorphism(union1.cover.total, union2.cover.total, vmap, dmap)
    out = CoverMorphism(t, union1.cover, union2.cover)
    if not out.is_iso():
        raise ValidationError(["assembled union morphism is not bijective"])
    return out


def equalizer(t1, t2):
    """Components of the first total space on which two cover morphisms
    agree; agreement at one vertex of a component forces agreement on the
    whole component (equalizer rigidity)."""
    if not graph_equal(t1.t.source, t2.t.source) or \
            not graph_equal(t1.t.target, t2.t.target):
        raise ValidationError(["morphisms have different sources or targets"])
    g = t1.t.source
    comps = g.components
    agree = []
    for c in range(comps.count):
        vs = comps.vertices_of(c)
        hits = [v for v in vs
                if t1.t.vertex_map[v] == t2.t.vertex_map[v]]
        full = (len(hits) == len(vs) and all(
            t1.t.dart_map[d] == t2.t.dart_map[d] for d in comps.darts_of(c)))
        if hits and not full:
            raise ValidationError(
                [f"equalizer is not open-closed on component {comps.reps[c]}"])
        if full:
            agree.append(c)
    return tuple(agree)
