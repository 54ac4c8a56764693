"""Standard example graphs, covers, and maps.

Used by the experiment scripts and the test suites: cyclic covers of
cycles, rose maps, and a fixed corpus of maps realizing every
combination of component and fundamental-group behavior.
"""

from __future__ import annotations

from .covers import CoveringMap
from .graphs import Graph, GraphMorphism, cycle_graph, rose_graph, tag_id


def cyclic_base(k, bases=None):
    if bases is None:
        bases = (f"v{0:0{len(str(k - 1))}d}",)
    return cycle_graph(k, bases=bases)


def cyclic_cover_map(mk, k, base=None, prefix="u", edge_prefix="f",
                     bases=True):
    """The mk-cycle wrapping the k-cycle mk/k times (requires k | mk)."""
    if mk % k:
        raise ValueError("mk must be a multiple of k")
    tw = len(str(mk - 1))
    bw = len(str(k - 1))
    top = cycle_graph(mk, prefix=prefix, edge_prefix=edge_prefix,
                      bases=(f"{prefix}{0:0{tw}d}",) if bases else ())
    if base is None:
        base = cyclic_base(k)
    vmap = {f"{prefix}{i:0{tw}d}": f"v{i % k:0{bw}d}" for i in range(mk)}
    dmap = {}
    for i in range(mk):
        dmap[f"{edge_prefix}{i:0{tw}d}+"] = f"c{i % k:0{bw}d}+"
        dmap[f"{edge_prefix}{i:0{tw}d}-"] = f"c{i % k:0{bw}d}-"
    return GraphMorphism(top, base, vmap, dmap)


def cyclic_cover(mk, k, base=None, prefix="u", edge_prefix="f"):
    return CoveringMap(cyclic_cover_map(mk, k, base, prefix, edge_prefix))


def rose_base(r=1, bases=True):
    return rose_graph(r, vertex="w", edge_prefix="m",
                      bases=("w",) if bases else ())


def rose_to_rose(r_src, images, base=None):
    """Map R_{r_src} -> R_1 sending loop i to the single target loop with
    the orientation given by ``images[i]`` (+1 or -1)."""
    src = rose_graph(r_src, bases=("v",))
    if base is None:
        base = rose_base()
    dmap = {}
    for i, s in enumerate(images):
        if s > 0:
            dmap[f"l{i}+"] = "m0+"
            dmap[f"l{i}-"] = "m0-"
        else:
            dmap[f"l{i}+"] = "m0-"
            dmap[f"l{i}-"] = "m0+"
    return GraphMorphism(src, base, {"v": "w"}, dmap)


def double_wrap(base=None):
    """C_2 -> R_1: the connected double cover of the rose; injective but
    not surjective on the fundamental group."""
    if base is None:
        base = rose_base()
    src = cycle_graph(2, prefix="a", edge_prefix="b", bases=("a0",))
    dmap = {"b0+": "m0+", "b0-": "m0-", "b1+": "m0+", "b1-": "m0-"}
    return GraphMorphism(src, base, {"a0": "w", "a1": "w"}, dmap)


def wedge_map(base=None):
    """Wedge of a 2-cycle and a 4-cycle mapping onto R_1: the loop images
    generate an index-2 subgroup of rank 1, so the induced hom is neither
    injective nor surjective."""
    if base is None:
        base = rose_base()
    vertices = ["p", "q", "r0", "r1", "r2"]
    edges = [("s0", "p", "q"), ("s1", "q", "p"),
             ("t0", "p", "r0"), ("t1", "r0", "r1"),
             ("t2", "r1", "r2"), ("t3", "r2", "p")]
    darts, involution, origin = [], {}, {}
    for eid, u, v in edges:
        dp, dm = eid + "+", eid + "-"
        darts += [dp, dm]
        involution[dp], involution[dm] = dm, dp
        origin[dp], origin[dm] = u, v
    src = Graph(vertices, darts, involution, origin, bases=("p",))
    dmap = {}
    for eid, _, _ in edges:
        dmap[eid + "+"] = "m0+"
        dmap[eid + "-"] = "m0-"
    return GraphMorphism(src, base, {v: "w" for v in vertices}, dmap)


def doubled_source(f):
    """X ⊔ X -> Y via f on both copies; kills π₀ injectivity without
    touching the per-component π₁ behavior."""
    x = f.source
    vertices, darts, involution, origin, bases = [], [], {}, {}, []
    vmap, dmap = {}, {}
    for i in (0, 1):
        for v in x.vertices:
            tv = tag_id(v, i)
            vertices.append(tv)
            vmap[tv] = f.vertex_map[v]
        for d in x.darts:
            td = tag_id(d, i)
            darts.append(td)
            involution[td] = tag_id(x.involution[d], i)
            origin[td] = tag_id(x.origin[d], i)
            dmap[td] = f.dart_map[d]
    for b in x.bases[:1]:
        bases.append(tag_id(b, 0))
    src = Graph(vertices, darts, involution, origin, bases)
    return GraphMorphism(src, f.target, vmap, dmap)


def widened_target(f, extra=None):
    """Same map into Y ⊔ (extra component); kills π₀ surjectivity."""
    y = f.target
    if extra is None:
        extra = rose_graph(1, vertex="spare", edge_prefix="sp")
    vertices = ([tag_id(v, 0) for v in y.vertices]
                + [tag_id(v, 1) for v in extra.vertices])
    darts, involution, origin = [], {}, {}
    for i, g in ((0, y), (1, extra)):
        for d in g.darts:
            td = tag_id(d, i)
            darts.append(td)
            involution[td] = tag_id(g.involution[d], i)
            origin[td] = tag_id(g.origin[d], i)
    bases = tuple(tag_id(b, 0) for b in y.bases[:1])
    tgt = Graph(vertices, darts, involution, origin, bases)
    vmap = {v: tag_id(f.vertex_map[v], 0) for v in f.source.vertices}
    dmap = {d: tag_id(f.dart_map[d], 0) for d in f.source.darts}
    return GraphMorphism(f.source, tgt, vmap, dmap)


def c3_inclusion():
    """C_3 included as the first summand of C_3 ⊔ C_3."""
    c3 = cyclic_base(3)
    return widened_target(
        GraphMorphism.identity(c3),
        extra=cycle_graph(3, prefix="x", edge_prefix="d"))


def c3_fold():
    """C_3 ⊔ C_3 -> C_3, identity on each summand."""
    return doubled_source(GraphMorphism.identity(cyclic_base(3)))


def triad_corpus():
    """Named maps realizing every {π₀ bijective / non-surjective /
    non-injective / neither} × {π₁ iso / injective-only / surjective-only
    / neither} combination, plus the five canonical examples."""
    cores = [
        ("id_R1", GraphMorphism.identity(rose_base())),
        ("C2_over_R1", double_wrap()),
        ("R2_to_R1", rose_to_rose(2, (1, 1))),
        ("wedge24_to_R1", wedge_map()),
    ]
    corpus = []
    for name, f in cores:
        corpus.append((name, f))
        corpus.append((name + "_doubled", doubled_source(f)))
        corpus.append((name + "_missing", widened_target(f)))
        corpus.append((name + "_doubled_missing",
                       widened_target(doubled_source(f))))
    corpus.append(("id_C3", GraphMorphism.identity(cyclic_base(3))))
    corpus.append(("C3_into_C3uC3", c3_inclusion()))
    corpus.append(("C3uC3_onto_C3", c3_fold()))
    corpus.append(("C6_to_C3", cyclic_cover_map(6, 3)))
    return corpus
