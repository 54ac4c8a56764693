"""Shared test utilities: an oracle hom-set enumerator that works purely
from the definition (backtracking over images, no fundamental-group
machinery), plus small random-object builders."""

import itertools

from covgraph.covers import Category, CoverMorphism
from covgraph.graphs import GraphMorphism
from covgraph.pi1 import PermRep, cover_from_perm_rep


def canon_morphism(m):
    return (tuple(sorted(m.vertex_map.items())),
            tuple(sorted(m.dart_map.items())))


def brute_force_hom(p1, p2, category=Category.COV):
    """Every graph morphism t with p2 ∘ t = p1, found by backtracking over
    vertex images and then over dart images; filtered by the category.

    Independent of the rigid enumerator: uses only the commuting-triangle
    definition, never star bijectivity or subgroups.
    """
    g1, g2 = p1.total, p2.total
    order = _assignment_order(g1)
    results = []
    _assign_vertices(p1, p2, order, 0, {}, results)
    morphisms = []
    for vmap in results:
        for dmap in _dart_choices(p1, p2, vmap):
            if category.surjective and \
                    set(vmap.values()) != set(g2.vertices):
                continue
            if category.based and vmap.get(p1.basepoint) != p2.basepoint:
                continue
            m = GraphMorphism(g1, g2, dict(vmap), dmap)
            morphisms.append(CoverMorphism(m, p1, p2, category))
    morphisms.sort(key=lambda t: canon_morphism(t.t))
    return morphisms


def _assignment_order(g):
    """Vertices ordered so each one after a component root touches an
    earlier vertex; each entry is (vertex, witness dart or None)."""
    seen = set()
    order = []
    for root in g.components.reps:
        order.append((root, None))
        seen.add(root)
        frontier = [root]
        while frontier:
            v = frontier.pop(0)
            for d in g.star[v]:
                w = g.terminus(d)
                if w not in seen:
                    seen.add(w)
                    order.append((w, d))
                    frontier.append(w)
    return order


def _assign_vertices(p1, p2, order, i, vmap, results):
    if i == len(order):
        if _all_darts_mappable(p1, p2, vmap):
            results.append(dict(vmap))
        return
    v, via = order[i]
    if via is None:
        candidates = p2.fiber(p1.vertex(v))
    else:
        u = p1.total.origin[via]
        candidates = sorted({
            p2.total.terminus(b) for b in p2.total.darts
            if p2.dart(b) == p1.dart(via) and p2.total.origin[b] == vmap[u]})
    for c in candidates:
        vmap[v] = c
        _assign_vertices(p1, p2, order, i + 1, vmap, results)
        del vmap[v]


def _candidate_darts(p1, p2, vmap, d):
    g1, g2 = p1.total, p2.total
    return [b for b in g2.darts
            if p2.dart(b) == p1.dart(d)
            and g2.origin[b] == vmap[g1.origin[d]]
            and g2.terminus(b) == vmap[g1.terminus(d)]]


def _all_darts_mappable(p1, p2, vmap):
    return all(_candidate_darts(p1, p2, vmap, d) for d in p1.total.darts)


def _dart_choices(p1, p2, vmap):
    g1 = p1.total
    pairs = g1.edges()
    per_pair = []
    for d, r in pairs:
        per_pair.append([(b, p2.total.involution[b])
                         for b in _candidate_darts(p1, p2, vmap, d)])
    for combo in itertools.product(*per_pair):
        dmap = {}
        ok = True
        for (d, r), (b, br) in zip(pairs, combo):
            # the partner dart must itself satisfy the origin constraint
            if p2.total.origin[br] != vmap[g1.origin[r]]:
                ok = False
                break
            dmap[d] = b
            dmap[r] = br
        if ok:
            yield dmap


def all_reduced_words(rank, max_len):
    """Every freely reduced word of length at most ``max_len``."""
    out = [()]
    alphabet = [s * k for k in range(1, rank + 1) for s in (1, -1)]
    frontier = [()]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for l in alphabet:
                if w and w[-1] == -l:
                    continue
                nxt.append(w + (l,))
        out += nxt
        frontier = nxt
    return out


def closed_path_words(q, e0, max_len):
    """Subgroup elements of length <= max_len over a rose base, found by
    enumerating closed dart paths in the cover; an oracle independent of
    folding."""
    from covgraph.pi1 import loop_word

    pres = q.base.presentation(q.vertex(e0))
    found = set()
    stack = [(e0, ())]
    while stack:
        v, path = stack.pop()
        if v == e0:
            found.add(loop_word(pres, tuple(q.dart(d) for d in path)))
        if len(path) == max_len:
            continue
        for d in q.total.star[v]:
            stack.append((q.total.terminus(d), path + (d,)))
    return found


def random_perm(rng, d):
    p = list(range(d))
    rng.shuffle(p)
    return tuple(p)


def random_cover(rng, base, max_sheets):
    """Cover of a connected based graph from a random permutation
    representation."""
    pres = base.presentation(base.bases[0])
    d = rng.randint(1, max_sheets)
    rep = PermRep(d, tuple(random_perm(rng, d) for _ in range(pres.rank)))
    return cover_from_perm_rep(base, pres, rep)
