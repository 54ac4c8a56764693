"""Fundamental-group machinery for finite graphs.

Fundamental groups of graphs are free; a spanning tree yields a
presentation whose generators are the non-tree edges.  Subgroups are
handled through Stallings foldings: a folded, base-pointed, generator-
labeled graph supports membership, rank, and index queries.  Monodromy
(permutation) representations classify covers of a connected base and
give a second, independent route to the same subgroups.

Words are tuples of nonzero ints: letter ``+k`` is generator ``k - 1``,
``-k`` its inverse.  Free reduction is the canonical form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .covers import Category, CoveringMap, CoverMorphism
from .graphs import (Graph, GraphMorphism, ValidationError, pair_id,
                     spanning_forest)

Word = tuple


def reduce_word(letters):
    """Freely reduce a letter sequence."""
    out = []
    for l in letters:
        if out and out[-1] == -l:
            out.pop()
        else:
            out.append(l)
    return tuple(out)


def invert_word(w):
    return tuple(-l for l in reversed(w))


def concat_words(*ws):
    out = []
    for w in ws:
        for l in w:
            if out and out[-1] == -l:
                out.pop()
            else:
                out.append(l)
    return tuple(out)


def word_to_text(w):
    """Render in the ``g0 g1^-1`` grammar."""
    return " ".join(f"g{abs(l) - 1}" if l > 0 else f"g{abs(l) - 1}^-1"
                    for l in w)


def word_from_text(text, rank):
    letters = []
    for tok in text.split():
        inv = tok.endswith("^-1")
        name = tok[:-3] if inv else tok
        if not name.startswith("g") or not name[1:].isdigit():
            raise ValidationError([f"bad word token {tok}"])
        k = int(name[1:])
        if not 0 <= k < rank:
            raise ValidationError([f"generator {tok} out of range"])
        letters.append(-(k + 1) if inv else k + 1)
    return reduce_word(letters)


def random_word(rng, rank, max_len):
    """Random freely reduced word, letters chosen without immediate
    backtracking."""
    if rank == 0:
        return ()
    n = rng.randint(0, max_len)
    letters = []
    for _ in range(n):
        while True:
            l = rng.choice([s * k for k in range(1, rank + 1) for s in (1, -1)])
            if not letters or letters[-1] != -l:
                break
        letters.append(l)
    return tuple(letters)


@dataclass(frozen=True)
class Pi1Presentation:
    """Spanning-tree presentation of the free group of one component.

    Generators are the non-tree edges; the positive direction of
    generator ``i`` is its lexicographically smaller dart.
    """

    graph: Graph
    component: int
    base: str
    forest: object
    gens: tuple          # positive dart per generator
    letter: dict         # non-tree dart -> signed generator index

    @property
    def rank(self):
        return len(self.gens)

    def path_from_base(self, v):
        return self.forest.path_from_base(v)

    def path_to_base(self, v):
        g = self.graph
        return tuple(g.involution[d] for d in reversed(self.path_from_base(v)))

    def generator_loop(self, k):
        """Dart path of generator ``k`` (1-based, signed)."""
        g = self.graph
        d = self.gens[abs(k) - 1]
        if k < 0:
            d = g.involution[d]
        u, w = g.origin[d], g.terminus(d)
        return self.path_from_base(u) + (d,) + self.path_to_base(w)

    def word_to_path(self, w):
        out = ()
        for l in w:
            out = out + self.generator_loop(l)
        return out


def pi1(g, x):
    """Presentation of the free group of the component of ``x``, based at
    ``x``."""
    if x not in set(g.vertices):
        raise ValidationError([f"unknown vertex {x}"])
    comp = g.components.index[x]
    forest = spanning_forest(g, bases=[x])
    tree = forest.tree_darts
    comp_darts = g.components.darts_of(comp)
    non_tree = [d for d in comp_darts if d not in tree]
    gens, letter = [], {}
    for d in sorted(non_tree):
        r = g.involution[d]
        if r in letter:
            continue
        gens.append(d)
        letter[d] = len(gens)
        letter[r] = -len(gens)
    return Pi1Presentation(g, comp, x, forest, tuple(gens), letter)


def loop_word(pres, path):
    """Reduced word of a closed dart path at the base; tree darts
    contribute nothing."""
    g = pres.graph
    cur = pres.base
    letters = []
    for d in path:
        if g.origin[d] != cur:
            raise ValidationError([f"path breaks at dart {d}"])
        cur = g.terminus(d)
        l = pres.letter.get(d)
        if l is not None:
            letters.append(l)
    if cur != pres.base:
        raise ValidationError(["path is not closed at the base"])
    return reduce_word(letters)


@dataclass(frozen=True)
class InducedHom:
    """Homomorphism of free groups induced by a graph morphism, given by
    the image word of each source generator."""

    source: Pi1Presentation
    target: Pi1Presentation
    images: tuple

    def apply(self, w):
        parts = []
        for l in w:
            img = self.images[abs(l) - 1]
            parts.append(img if l > 0 else invert_word(img))
        return concat_words(*parts)


def induced_hom(f, x):
    src = f.source.presentation(x)
    tgt = f.target.presentation(f.vertex_map[x])
    images = []
    for k in range(1, src.rank + 1):
        path = tuple(f.dart_map[d] for d in src.generator_loop(k))
        images.append(loop_word(tgt, path))
    return InducedHom(src, tgt, tuple(images))


# -- Stallings graphs ------------------------------------------------------

def _label_key(l):
    return (abs(l), 0 if l > 0 else 1)


@dataclass(frozen=True)
class StallingsGraph:
    """Folded base-pointed graph over a rank-``rank`` free group.

    ``transitions`` lists (vertex, signed label, vertex) triples; both
    directions of every edge are present.  Vertices are 0..n-1 with the
    base at 0, canonically numbered by BFS in label order, so equal
    subgroups give equal objects.
    """

    rank: int
    n: int
    transitions: tuple

    @property
    def table(self):
        return {(u, l): v for u, l, v in self.transitions}

    def edge_count(self):
        return len(self.transitions) // 2

    def graph_rank(self):
        if self.n == 0:
            return 0
        return self.edge_count() - self.n + 1

    def trace(self, w, start=0):
        """Follow a word from ``start``; returns (vertex path, final
        vertex or None if the reading dies)."""
        table = self.table
        cur = start
        path = [cur]
        for l in w:
            nxt = table.get((cur, l))
            if nxt is None:
                return tuple(path), None
            cur = nxt
            path.append(cur)
        return tuple(path), cur

    def contains(self, w):
        path, end = self.trace(reduce_word(w))
        return end == 0, path

    def is_full_rose(self):
        labels = {l for _, l, _ in self.transitions}
        return self.n <= 1 and labels == {s * k for k in range(1, self.rank + 1)
                                          for s in (1, -1)}

    def is_complete(self):
        return all((u, s * k) in self.table
                   for u in range(self.n)
                   for k in range(1, self.rank + 1) for s in (1, -1))

    def index(self):
        """Subgroup index: n when the reading is complete, else None
        (infinite index)."""
        return self.n if self.is_complete() else None

    def core(self):
        """Prune degree-1 non-base vertices repeatedly."""
        table = dict(self.table)
        alive = set(range(self.n))
        changed = True
        while changed:
            changed = False
            for v in sorted(alive):
                if v == 0:
                    continue
                incident = [(u, l) for (u, l), w in table.items()
                            if u == v or w == v]
                touching = {(u, l) for (u, l) in incident if u == v}
                if len(touching) <= 1:
                    for (u, l), w in list(table.items()):
                        if u == v or w == v:
                            del table[(u, l)]
                    alive.discard(v)
                    changed = True
        return _canonical(self.rank,
                          [(u, l, w) for (u, l), w in table.items()])

    def generators(self):
        """Free generating words of the subgroup: one per non-tree edge of
        a BFS spanning tree."""
        table = self.table
        parent_word = {0: ()}
        order = [0]
        seen = {0}
        i = 0
        while i < len(order):
            u = order[i]
            i += 1
            for l in sorted({l for (x, l) in table if x == u}, key=_label_key):
                v = table[(u, l)]
                if v not in seen:
                    seen.add(v)
                    parent_word[v] = parent_word[u] + (l,)
                    order.append(v)
        tree_pairs = set()
        for v in order:
            w = parent_word[v]
            cur = 0
            for l in w:
                tree_pairs.add((cur, l))
                cur = table[(cur, l)]
                tree_pairs.add((cur, -l))
        gens = []
        used = set()
        for u, l, v in sorted(self.transitions,
                              key=lambda t: (t[0], _label_key(t[1]))):
            if (u, l) in tree_pairs or (u, l) in used or (v, -l) in used:
                continue
            used.add((u, l))
            used.add((v, -l))
            gens.append(concat_words(parent_word[u], (l,),
                                     invert_word(parent_word[v])))
        return gens


def _canonical(rank, triples):
    """Canonical BFS renumbering with the base first."""
    table = {(u, l): v for u, l, v in triples}
    order = [0]
    number = {0: 0}
    i = 0
    while i < len(order):
        u = order[i]
        i += 1
        for l in sorted({l for (x, l) in table if x == u}, key=_label_key):
            v = table[(u, l)]
            if v not in number:
                number[v] = len(order)
                order.append(v)
    out = tuple(sorted((number[u], l, number[v])
                       for (u, l), v in table.items()
                       if u in number))
    return StallingsGraph(rank, len(order), out)


def fold(words, rank):
    """Stallings folding of the flower on the given words.

    Deterministic: at every step the smallest clashing (vertex, label)
    pair is folded and the two smallest targets merged.
    """
    triples = []
    fresh = itertools.count(1)
    for w in words:
        w = reduce_word(w)
        cur = 0
        for i, l in enumerate(w):
            nxt = 0 if i == len(w) - 1 else next(fresh)
            triples.append((cur, l, nxt))
            triples.append((nxt, -l, cur))
            cur = nxt
    parent = {}

    def find(v):
        root = v
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(v, v) != v:
            parent[v], v = root, parent[v]
        return root

    while True:
        edges = {(find(u), l, find(v)) for u, l, v in triples}
        out = {}
        for u, l, v in edges:
            out.setdefault((u, l), set()).add(v)
        clash = None
        for (u, l), vs in sorted(out.items(),
                                 key=lambda kv: (kv[0][0], _label_key(kv[0][1]))):
            if len(vs) > 1:
                clash = sorted(vs)[:2]
                break
        if clash is None:
            triples = edges
            break
        a, b = clash
        parent[find(b)] = find(a)
    base = find(0)
    if base != 0:
        swap = {base: 0, 0: base}
        triples = {(swap.get(u, u), l, swap.get(v, v)) for u, l, v in triples}
    return _canonical(rank, triples)


def membership(w, s):
    """Does the reduced word trace a closed path at the base?  Returns
    (bool, vertex path witness)."""
    return s.contains(w)


def hom_is_surjective(h):
    """Image subgroup equals the whole target group iff the folded image
    core is the full rose."""
    return fold(h.images, h.target.rank).core().is_full_rose()


def hom_is_injective(h):
    """Free groups are Hopfian: kernel is trivial iff the image rank
    equals the source rank."""
    return fold(h.images, h.target.rank).core().graph_rank() == h.source.rank


# -- covers and subgroups --------------------------------------------------

@dataclass(frozen=True)
class PermRep:
    """Monodromy data: one permutation of {0..d-1} per generator."""

    degree: int
    perms: tuple

    def __post_init__(self):
        for p in self.perms:
            if sorted(p) != list(range(self.degree)):
                raise ValidationError([f"not a permutation: {p}"])

    def act_letter(self, l, i):
        p = self.perms[abs(l) - 1]
        if l > 0:
            return p[i]
        return p.index(i)

    def act_word(self, w, i):
        for l in w:
            i = self.act_letter(l, i)
        return i

    def is_transitive(self):
        if self.degree == 0:
            return False
        seen = {0}
        frontier = [0]
        while frontier:
            i = frontier.pop()
            for k in range(1, len(self.perms) + 1):
                for l in (k, -k):
                    j = self.act_letter(l, i)
                    if j not in seen:
                        seen.add(j)
                        frontier.append(j)
        return len(seen) == self.degree


def cover_subgroup_words(p, e):
    """Generating words of p♯(π₁ of the component of ``e``), over the base
    presentation at p(e)."""
    if e not in p._subgroup_words:
        h = induced_hom(p.morphism, e)
        p._subgroup_words[e] = tuple(h.images)
    return p._subgroup_words[e]


def cover_subgroup(p, e):
    """Stallings graph of the image of π₁ of the component of ``e``.

    Computed by folding the images of the component's generators; the
    Schreier-graph construction (:func:`cover_subgroup_schreier`) must
    agree.
    """
    base_pres = p.base.presentation(p.vertex(e))
    return fold(cover_subgroup_words(p, e), base_pres.rank)


def cover_subgroup_schreier(p, e):
    """Same subgroup via monodromy: the Schreier graph of the orbit of
    ``e`` under the permutation action on the fiber."""
    y = p.vertex(e)
    pres = p.base.presentation(y)
    rep, fiber = monodromy_at(p, y)
    start = fiber.index(e)
    orbit = sorted(_orbit(rep, start))
    pos = {i: j for j, i in enumerate(orbit)}
    triples = []
    for j, i in enumerate(orbit):
        for k in range(1, pres.rank + 1):
            for l in (k, -k):
                triples.append((pos[i], l, pos[rep.act_letter(l, i)]))
    if pos[start] != 0:
        swap = {pos[start]: 0, 0: pos[start]}
        triples = [(swap.get(u, u), l, swap.get(v, v)) for u, l, v in triples]
    return _canonical(pres.rank, set(triples))


def _orbit(rep, start):
    seen = {start}
    frontier = [start]
    while frontier:
        i = frontier.pop()
        for k in range(1, len(rep.perms) + 1):
            for l in (k, -k):
                j = rep.act_letter(l, i)
                if j not in seen:
                    seen.add(j)
                    frontier.append(j)
    return seen


def closed_lift_test(p, e, w):
    """Lift the loop of ``w`` (over the presentation at p(e)) starting at
    ``e``; true iff the lift closes up at ``e``.

    Independent of :func:`membership` on :func:`cover_subgroup`; the two
    are cross-checked in the test suite.
    """
    pres = p.base.presentation(p.vertex(e))
    path = pres.word_to_path(reduce_word(w))
    _, end = p.lift_path(e, path)
    return end == e


def monodromy_at(p, y):
    """Permutation action of π₁(base, y) on the fiber over ``y``; fiber
    points are ordered deterministically.  Requires a nonempty fiber."""
    if y in p._monodromy:
        return p._monodromy[y]
    fiber = p.fiber(y)
    if not fiber:
        raise ValidationError([f"empty fiber over {y}"])
    pres = p.base.presentation(y)
    perms = []
    for k in range(1, pres.rank + 1):
        loop = pres.generator_loop(k)
        perm = []
        for e in fiber:
            _, end = p.lift_path(e, loop)
            perm.append(fiber.index(end))
        perms.append(tuple(perm))
    rep = PermRep(len(fiber), tuple(perms))
    p._monodromy[y] = (rep, fiber)
    return rep, fiber


def monodromy(p, c):
    """Monodromy representation over base component ``c`` (at its
    preferred basepoint)."""
    y = p.base.base_of_component(c)
    rep, _ = monodromy_at(p, y)
    return rep


def cover_from_perm_rep(y, pres, rep, basepoint_sheet=None):
    """Connected-or-not cover of the component of ``pres`` built from a
    permutation representation: tree edges lift horizontally, generator
    edges permute sheets.  The target is all of ``y``; fibers over other
    components are empty."""
    comp_vs = set(y.components.vertices_of(pres.component))
    comp_ds = set(y.components.darts_of(pres.component))
    d = rep.degree
    sheets = [str(i) for i in range(d)]

    def step(dart, i):
        l = pres.letter.get(dart)
        if l is None:
            return i
        return rep.act_letter(l, i)

    vertices, darts, involution, origin = [], [], {}, {}
    vmap, dmap = {}, {}
    for i, s in enumerate(sheets):
        for v in sorted(comp_vs):
            pv = pair_id(v, s)
            vertices.append(pv)
            vmap[pv] = v
    for i, s in enumerate(sheets):
        for dart in sorted(comp_ds):
            pd = pair_id(dart, s)
            darts.append(pd)
            origin[pd] = pair_id(y.origin[dart], s)
            involution[pd] = pair_id(y.involution[dart], str(step(dart, i)))
            dmap[pd] = dart
    total = Graph(vertices, darts, involution, origin)
    m = GraphMorphism(total, y, vmap, dmap)
    bp = None
    category = Category.COV
    if basepoint_sheet is not None:
        bp = pair_id(pres.base, str(basepoint_sheet))
        category = Category.BCOV
    if set(y.vertices) == comp_vs and basepoint_sheet is None and d > 0:
        category = Category.COV  # tag stays COV; surjectivity is a fact
    return CoveringMap(m, category, bp)


@dataclass(frozen=True)
class KeyLemmaReport:
    """Sampled check of the membership identity for a pullback component:
    lifting a loop closes upstairs in the fiber product exactly when its
    image loop closes in the original cover."""

    checked: int
    discrepancies: tuple

    @property
    def ok(self):
        return not self.discrepancies


def verify_key_lemma(f, p, z1, words):
    """Compare closed-lift membership in the pullback at ``z1 = (x0, e1)``
    with closed-lift membership of the image word in ``p`` at ``e1``.

    The two sides are computed by independent lifting routines; any
    disagreement is reported (none is expected).
    """
    from .pullback import pullback

    pb = pullback(f, p)
    if z1 not in pb.vertex_pair:
        raise ValidationError([f"{z1} is not a pullback vertex"])
    x0, e1 = pb.vertex_pair[z1]
    h = induced_hom(f, x0)
    bad = []
    for w in words:
        upstairs = closed_lift_test(pb.proj_base, z1, w)
        downstairs = closed_lift_test(p, e1, h.apply(w))
        if upstairs != downstairs:
            bad.append((tuple(w), upstairs, downstairs))
    return KeyLemmaReport(len(list(words)), tuple(bad))
