"""Finite multigraphs in Serre dart (half-edge) form.

A graph is a finite set of vertices together with a finite set of darts,
a fixed-point-free involution pairing each dart with its reverse, and an
origin map sending each dart to the vertex it leaves from.  Loops and
parallel edges are unproblematic in this encoding, and covering maps
become star-bijective morphisms (see :mod:`covgraph.covers`).

Identifiers are opaque strings ordered lexicographically; every traversal
below visits identifiers in sorted order so that all derived data
(components, forests, constructed graphs) is reproducible byte-for-byte.
"""

from __future__ import annotations

from dataclasses import dataclass


class ValidationError(Exception):
    """A graph, morphism, or cover violated a structural invariant.

    ``problems`` lists every violation found, not just the first.
    """

    def __init__(self, problems):
        self.problems = [str(p) for p in problems]
        super().__init__("; ".join(self.problems))


def pair_id(a, b):
    """Identifier of an ordered pair, used for fiber products."""
    return f"({a},{b})"


def tag_id(x, alpha):
    """Identifier of a tagged copy, used for extrinsic disjoint unions."""
    return f"{x}#{alpha}"


class Graph:
    """Finite multigraph given by darts, an involution, and origins.

    The empty graph is valid.  ``bases`` optionally records one preferred
    basepoint per component (used as default π₁ basepoints).
    """

    def __init__(self, vertices, darts, involution, origin, bases=()):
        self.vertices = tuple(sorted(vertices))
        self.darts = tuple(sorted(darts))
        self.involution = dict(involution)
        self.origin = dict(origin)
        self.bases = tuple(bases)
        self._star = None
        self._components = None
        self._presentations = {}
        self._validate()

    def _validate(self):
        problems = []
        if len(set(self.vertices)) != len(self.vertices):
            problems.append("duplicate vertex identifiers")
        if len(set(self.darts)) != len(self.darts):
            problems.append("duplicate dart identifiers")
        vset = set(self.vertices)
        dset = set(self.darts)
        for d in self.darts:
            o = self.origin.get(d)
            if o is None or o not in vset:
                problems.append(f"dangling dart origin at {d}")
            r = self.involution.get(d)
            if r is None or r not in dset:
                problems.append(f"involution undefined at {d}")
            elif r == d:
                problems.append(f"involution fixed point at {d}")
            elif self.involution.get(r) != d:
                problems.append(f"involution not self-inverse at {d}")
        for b in self.bases:
            if b not in vset:
                problems.append(f"unknown base vertex {b}")
        if problems:
            raise ValidationError(problems)
        comp_seen = {}
        for b in self.bases:
            c = self.components.index[b]
            if c in comp_seen:
                problems.append(
                    f"base vertices {comp_seen[c]} and {b} share a component")
            comp_seen[c] = b
        if problems:
            raise ValidationError(problems)

    # -- derived structure -------------------------------------------------

    @property
    def star(self):
        """Mapping vertex -> sorted tuple of darts with that origin."""
        if self._star is None:
            star = {v: [] for v in self.vertices}
            for d in self.darts:
                star[self.origin[d]].append(d)
            self._star = {v: tuple(sorted(ds)) for v, ds in star.items()}
        return self._star

    @property
    def components(self):
        if self._components is None:
            self._components = _compute_components(self)
        return self._components

    def terminus(self, d):
        return self.origin[self.involution[d]]

    def edges(self):
        """Involution orbits, each as a pair (d, reverse) with d minimal."""
        out = []
        for d in self.darts:
            r = self.involution[d]
            if d < r:
                out.append((d, r))
        return out

    def base_of_component(self, c):
        """Preferred basepoint of component ``c``: declared base if any,
        else the component representative."""
        for b in self.bases:
            if self.components.index[b] == c:
                return b
        return self.components.reps[c]

    def is_empty(self):
        return not self.vertices

    def presentation(self, x):
        """Cached spanning-tree presentation of π₁ at ``x`` (see pi1)."""
        if x not in self._presentations:
            from .pi1 import pi1 as _pi1
            self._presentations[x] = _pi1(self, x)
        return self._presentations[x]


def graph_equal(g, h):
    """Set-level equality of graphs (identifiers, involution, origin)."""
    return (g.vertices == h.vertices and g.darts == h.darts
            and g.involution == h.involution and g.origin == h.origin)


@dataclass(frozen=True)
class ComponentPartition:
    """Partition of a graph into connected components.

    Components are numbered in order of their representative (minimum)
    vertex, so the numbering is deterministic.
    """

    graph: Graph
    index: dict
    reps: tuple
    count: int

    def vertices_of(self, c):
        return tuple(v for v in self.graph.vertices if self.index[v] == c)

    def darts_of(self, c):
        g = self.graph
        return tuple(d for d in g.darts if self.index[g.origin[d]] == c)


def _compute_components(g):
    index = {}
    reps = []
    for v in g.vertices:
        if v in index:
            continue
        c = len(reps)
        reps.append(v)
        index[v] = c
        queue = [v]
        while queue:
            u = queue.pop()
            for d in g.star[u]:
                w = g.terminus(d)
                if w not in index:
                    index[w] = c
                    queue.append(w)
    return ComponentPartition(g, index, tuple(reps), len(reps))


def validate_graph(vertices, edges, bases=()):
    """Build a graph from an edge description, reporting every violation.

    ``edges`` is a sequence of ``(edge_id, u, v)``; each edge induces the
    darts ``<edge_id>+`` (origin ``u``) and ``<edge_id>-`` (origin ``v``).
    """
    problems = []
    seen = set()
    darts, involution, origin = [], {}, {}
    vset = set(vertices)
    if len(vset) != len(list(vertices)):
        problems.append("duplicate vertex identifiers")
    for eid, u, v in edges:
        if eid in seen:
            problems.append(f"duplicate edge identifier {eid}")
            continue
        seen.add(eid)
        dp, dm = f"{eid}+", f"{eid}-"
        darts += [dp, dm]
        involution[dp], involution[dm] = dm, dp
        origin[dp], origin[dm] = u, v
        if u not in vset:
            problems.append(f"dangling dart origin at {dp}")
        if v not in vset:
            problems.append(f"dangling dart origin at {dm}")
    if problems:
        raise ValidationError(problems)
    return Graph(vertices, darts, involution, origin, bases)


class GraphMorphism:
    """Map of graphs: vertices to vertices, darts to darts, commuting with
    the involution and origin maps.  Edges are never collapsed."""

    def __init__(self, source, target, vertex_map, dart_map):
        self.source = source
        self.target = target
        self.vertex_map = dict(vertex_map)
        self.dart_map = dict(dart_map)
        self._validate()

    def _validate(self):
        problems = []
        tv, td = set(self.target.vertices), set(self.target.darts)
        for v in self.source.vertices:
            w = self.vertex_map.get(v)
            if w is None or w not in tv:
                problems.append(f"vertex {v} has no valid image")
        for d in self.source.darts:
            e = self.dart_map.get(d)
            if e is None or e not in td:
                problems.append(f"dart {d} has no valid image")
                continue
            if self.target.origin[e] != self.vertex_map.get(self.source.origin[d]):
                problems.append(f"dart map does not commute with origin at {d}")
            if self.dart_map.get(self.source.involution[d]) != self.target.involution[e]:
                problems.append(f"dart map does not commute with involution at {d}")
        if problems:
            raise ValidationError(problems)

    def vertex(self, v):
        return self.vertex_map[v]

    def dart(self, d):
        return self.dart_map[d]

    @staticmethod
    def identity(g):
        return GraphMorphism(g, g, {v: v for v in g.vertices},
                             {d: d for d in g.darts})

    def compose(self, other):
        """self ∘ other (other applied first)."""
        return GraphMorphism(
            other.source, self.target,
            {v: self.vertex_map[w] for v, w in other.vertex_map.items()},
            {d: self.dart_map[e] for d, e in other.dart_map.items()})

    def is_injective(self):
        return (len(set(self.vertex_map.values())) == len(self.source.vertices)
                and len(set(self.dart_map.values())) == len(self.source.darts))

    def is_surjective(self):
        return (set(self.vertex_map.values()) == set(self.target.vertices)
                and set(self.dart_map.values()) == set(self.target.darts))

    def is_bijective(self):
        return (self.is_injective() and self.is_surjective()
                and len(self.source.vertices) == len(self.target.vertices))

    def inverse(self):
        if not self.is_bijective():
            raise ValidationError(["morphism is not bijective"])
        return GraphMorphism(
            self.target, self.source,
            {w: v for v, w in self.vertex_map.items()},
            {e: d for d, e in self.dart_map.items()})

    def same_maps(self, other):
        return (self.vertex_map == other.vertex_map
                and self.dart_map == other.dart_map)


@dataclass(frozen=True)
class Pi0Map:
    """The induced function on components, with surjectivity/injectivity
    flags."""

    source: ComponentPartition
    target: ComponentPartition
    mapping: dict
    surjective: bool
    injective: bool


def induced_pi0_map(f):
    sp = f.source.components
    tp = f.target.components
    mapping = {c: tp.index[f.vertex_map[sp.reps[c]]] for c in range(sp.count)}
    image = set(mapping.values())
    return Pi0Map(sp, tp, mapping,
                  surjective=(image == set(range(tp.count))),
                  injective=(len(image) == sp.count))


@dataclass(frozen=True)
class SpanningForest:
    """Breadth-first spanning forest with one base vertex per component.

    ``parent_dart[v]`` is the tree dart whose traversal reaches ``v`` from
    its parent; base vertices are absent from it.  ``tree_darts`` holds
    both orientations of every tree dart.
    """

    graph: Graph
    bases: tuple
    parent_dart: dict
    tree_darts: frozenset

    def path_from_base(self, v):
        """Dart path from the base of v's component to ``v``."""
        path = []
        while v in self.parent_dart:
            d = self.parent_dart[v]
            path.append(d)
            v = self.graph.origin[d]
        return tuple(reversed(path))


def spanning_forest(g, bases=None):
    """Deterministic BFS forest; ``bases`` optionally pins basepoints,
    at most one per component."""
    comps = g.components
    chosen = {}
    if bases:
        for b in bases:
            c = comps.index[b]
            if c in chosen:
                raise ValidationError(
                    [f"base vertices {chosen[c]} and {b} share a component"])
            chosen[c] = b
    base_list = tuple(chosen.get(c, g.base_of_component(c))
                      for c in range(comps.count))
    parent = {}
    tree = set()
    for base in base_list:
        frontier = [base]
        visited = {base}
        while frontier:
            nxt = []
            for u in frontier:
                for d in g.star[u]:
                    w = g.terminus(d)
                    if w not in visited:
                        visited.add(w)
                        parent[w] = d
                        tree.add(d)
                        tree.add(g.involution[d])
                        nxt.append(w)
            frontier = nxt
    return SpanningForest(g, base_list, parent, frozenset(tree))


# -- stock builders --------------------------------------------------------

def cycle_graph(n, prefix="v", edge_prefix="c", bases=()):
    """Cycle with ``n`` vertices and ``n`` edges (n >= 1; n = 1 is a loop)."""
    width = len(str(n - 1))
    vs = [f"{prefix}{i:0{width}d}" for i in range(n)]
    es = [(f"{edge_prefix}{i:0{width}d}", vs[i], vs[(i + 1) % n])
          for i in range(n)]
    return validate_graph(vs, es, bases)


def rose_graph(k, vertex="v", edge_prefix="l", bases=()):
    """Rose: one vertex carrying ``k`` loops."""
    es = [(f"{edge_prefix}{i}", vertex, vertex) for i in range(k)]
    return validate_graph([vertex], es, bases)


def theta_graph():
    """Two vertices joined by three parallel edges."""
    return validate_graph(["u", "v"],
                          [("a", "u", "v"), ("b", "u", "v"), ("c", "u", "v")])


def path_graph(n, prefix="p", edge_prefix="s"):
    """Path with ``n`` vertices and ``n - 1`` edges."""
    width = max(1, len(str(n - 1)))
    vs = [f"{prefix}{i:0{width}d}" for i in range(n)]
    es = [(f"{edge_prefix}{i:0{width}d}", vs[i], vs[i + 1])
          for i in range(n - 1)]
    return validate_graph(vs, es)


def disjoint_union_graphs(graphs):
    """Tagged disjoint union; summand ``i`` gets identifier suffix ``#i``."""
    vertices, darts, involution, origin, bases = [], [], {}, {}, []
    for i, g in enumerate(graphs):
        vertices += [tag_id(v, i) for v in g.vertices]
        darts += [tag_id(d, i) for d in g.darts]
        for d in g.darts:
            involution[tag_id(d, i)] = tag_id(g.involution[d], i)
            origin[tag_id(d, i)] = tag_id(g.origin[d], i)
        bases += [tag_id(b, i) for b in g.bases]
    return Graph(vertices, darts, involution, origin, bases)


def subgraph(g, vertices, darts):
    """Full-checked subgraph: darts must be involution-closed with both
    endpoints included."""
    vset, dset = set(vertices), set(darts)
    problems = []
    for d in dset:
        if d not in g.origin:
            problems.append(f"unknown dart {d}")
            continue
        if g.involution[d] not in dset:
            problems.append(f"subgraph not involution-closed at {d}")
        if g.origin[d] not in vset:
            problems.append(f"subgraph missing origin of {d}")
    gv = set(g.vertices)
    for v in vset:
        if v not in gv:
            problems.append(f"unknown vertex {v}")
    if problems:
        raise ValidationError(problems)
    return Graph(sorted(vset), sorted(dset),
                 {d: g.involution[d] for d in dset},
                 {d: g.origin[d] for d in dset},
                 tuple(b for b in g.bases if b in vset))


def component_subgraph(g, c):
    comps = g.components
    return subgraph(g, comps.vertices_of(c), comps.darts_of(c))


def union_of_components_subgraph(g, cs):
    comps = g.components
    vs, ds = [], []
    for c in sorted(set(cs)):
        if not 0 <= c < comps.count:
            raise ValidationError([f"unknown component index {c}"])
        vs += list(comps.vertices_of(c))
        ds += list(comps.darts_of(c))
    return subgraph(g, vs, ds)
