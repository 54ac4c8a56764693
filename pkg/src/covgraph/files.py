"""Canonical text formats for graphs, morphisms, and covers.

Files are UTF-8, line-based, with ``#`` comments and whitespace-separated
tokens.  A file holds one or more blocks:

    graph <name>
    v <vid> ...
    e <eid> <vid> <vid> ...
    base <vid> ...

    morphism <name> : <graph> -> <graph>
    vmap <vid> <vid> ...
    emap <eid> <eid> <+|-> ...

A ``category cov|scov|bcov|bscov`` line directly after a morphism block
turns it into a cover (the morphism's source is the total space; its
``base`` line supplies the basepoint for the based categories).

Each edge ``e <eid> u v`` induces the darts ``<eid>+`` with origin ``u``
and ``<eid>-`` with origin ``v``.  Serialization is canonical: sorted
lines, explicit ``+``/``-`` orientations, so parse-serialize-parse is the
identity.
"""

from __future__ import annotations

from .covers import Category, CoveringMap
from .graphs import (Graph, GraphMorphism, ValidationError, graph_equal,
                     validate_graph)


class ParseError(ValidationError):
    pass


class Workspace:
    """Name registry for loaded objects; every value is validated before
    registration and names are unique per kind."""

    def __init__(self):
        self.graphs = {}
        self.morphisms = {}
        self.covers = {}

    def add_graph(self, name, g):
        # identical redefinitions are tolerated so files can repeat a
        # shared base graph
        if name in self.graphs:
            if graph_equal(self.graphs[name], g):
                return
            raise ParseError([f"duplicate graph name {name}"])
        self.graphs[name] = g

    def add_morphism(self, name, m):
        if name in self.morphisms:
            if self.morphisms[name].same_maps(m):
                return
            raise ParseError([f"duplicate morphism name {name}"])
        self.morphisms[name] = m

    def add_cover(self, name, p):
        if name in self.covers:
            old = self.covers[name]
            if old.morphism.same_maps(p.morphism) and \
                    old.category == p.category and \
                    old.basepoint == p.basepoint:
                return
            raise ParseError([f"duplicate cover name {name}"])
        self.covers[name] = p

    def load(self, path):
        """Parse every block in the file, in order; returns the names
        defined, as (kind, name) pairs."""
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
        return self.load_text(text)

    def load_text(self, text):
        defined = []
        lines = []
        for i, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if line:
                lines.append((i, line.split()))
        pos = 0
        while pos < len(lines):
            i, toks = lines[pos]
            if toks[0] == "graph":
                pos, name, g = _parse_graph(lines, pos)
                self.add_graph(name, g)
                defined.append(("graph", name))
            elif toks[0] == "morphism":
                pos, name, m, category = _parse_morphism(lines, pos, self)
                if category is None:
                    self.add_morphism(name, m)
                    defined.append(("morphism", name))
                else:
                    bp = None
                    if category.based:
                        if not m.source.bases:
                            raise ParseError(
                                [f"line {i}: based cover needs a base line "
                                 "in its total-space graph"])
                        bp = m.source.bases[0]
                    self.add_cover(name, CoveringMap(m, category, bp))
                    defined.append(("cover", name))
            else:
                raise ParseError([f"line {i}: expected graph or morphism, "
                                  f"got {toks[0]}"])
        return defined


def _parse_graph(lines, pos):
    i, toks = lines[pos]
    if len(toks) != 2:
        raise ParseError([f"line {i}: graph header needs a name"])
    name = toks[1]
    vertices, edges, bases = [], [], []
    pos += 1
    while pos < len(lines):
        i, toks = lines[pos]
        if toks[0] == "v" and len(toks) == 2:
            vertices.append(toks[1])
        elif toks[0] == "e" and len(toks) == 4:
            edges.append((toks[1], toks[2], toks[3]))
        elif toks[0] == "base" and len(toks) == 2:
            bases.append(toks[1])
        elif toks[0] in ("graph", "morphism"):
            break
        else:
            raise ParseError([f"line {i}: bad graph line {' '.join(toks)}"])
        pos += 1
    try:
        g = validate_graph(vertices, edges, bases)
    except ValidationError as err:
        raise ParseError([f"graph {name}: {p}" for p in err.problems])
    return pos, name, g


def _parse_morphism(lines, pos, ws):
    i, toks = lines[pos]
    if len(toks) != 6 or toks[2] != ":" or toks[4] != "->":
        raise ParseError(
            [f"line {i}: expected morphism <name> : <graph> -> <graph>"])
    name, src_name, tgt_name = toks[1], toks[3], toks[5]
    for gn in (src_name, tgt_name):
        if gn not in ws.graphs:
            raise ParseError([f"line {i}: unknown graph {gn}"])
    src, tgt = ws.graphs[src_name], ws.graphs[tgt_name]
    vmap, dmap = {}, {}
    category = None
    pos += 1
    while pos < len(lines):
        i, toks = lines[pos]
        if toks[0] == "vmap" and len(toks) == 3:
            vmap[toks[1]] = toks[2]
        elif toks[0] == "emap" and len(toks) == 4 and toks[3] in "+-":
            e1, e2, sign = toks[1], toks[2], toks[3]
            if sign == "+":
                dmap[e1 + "+"] = e2 + "+"
                dmap[e1 + "-"] = e2 + "-"
            else:
                dmap[e1 + "+"] = e2 + "-"
                dmap[e1 + "-"] = e2 + "+"
        elif toks[0] == "category" and len(toks) == 2:
            try:
                category = Category(toks[1])
            except ValueError:
                raise ParseError([f"line {i}: unknown category {toks[1]}"])
            pos += 1
            break
        elif toks[0] in ("graph", "morphism"):
            break
        else:
            raise ParseError([f"line {i}: bad morphism line "
                              f"{' '.join(toks)}"])
        pos += 1
    try:
        m = GraphMorphism(src, tgt, vmap, dmap)
    except ValidationError as err:
        raise ParseError([f"morphism {name}: {p}" for p in err.problems])
    return pos, name, m, category


# -- serialization ---------------------------------------------------------

def edge_naming(g):
    """Canonical edge description of an arbitrary graph.

    Returns (edges, dart_name) where ``edges`` lists (eid, u, v) and
    ``dart_name`` maps every dart to its serialized ``<eid><sign>`` form.
    Graphs whose darts already pair as ``X+``/``X-`` keep their names;
    otherwise the smaller dart id becomes the edge id.
    """
    edges = []
    dart_name = {}
    for d, r in g.edges():
        if d.endswith("+") and r == d[:-1] + "-":
            eid = d[:-1]
        else:
            eid = d
        edges.append((eid, g.origin[d], g.origin[r]))
        dart_name[d] = eid + "+"
        dart_name[r] = eid + "-"
    edges.sort()
    return edges, dart_name


def serialize_graph(name, g):
    out = [f"graph {name}"]
    for v in sorted(g.vertices):
        out.append(f"v {v}")
    edges, _ = edge_naming(g)
    for eid, u, v in edges:
        out.append(f"e {eid} {u} {v}")
    for b in g.bases:
        out.append(f"base {b}")
    return "\n".join(out) + "\n"


def serialize_morphism(name, m, src_name, tgt_name, category=None):
    out = [f"morphism {name} : {src_name} -> {tgt_name}"]
    for v in sorted(m.vertex_map):
        out.append(f"vmap {v} {m.vertex_map[v]}")
    src_edges, src_names = edge_naming(m.source)
    _, tgt_names = edge_naming(m.target)
    inv_src = {v: k for k, v in src_names.items()}
    for eid, _, _ in src_edges:
        d = inv_src[eid + "+"]
        img = tgt_names[m.dart_map[d]]
        out.append(f"emap {eid} {img[:-1]} {img[-1]}")
    if category is not None:
        out.append(f"category {category.value}")
    return "\n".join(out) + "\n"


def serialize_cover(name, p, total_name, base_name):
    """Graph block for the total space followed by the cover's morphism
    block with its category line."""
    total = p.total
    if p.basepoint is not None and p.basepoint not in total.bases:
        # keep the basepoint across a round trip
        total = Graph(total.vertices, total.darts, total.involution,
                      total.origin, bases=(p.basepoint,))
    return (serialize_graph(total_name, total)
            + serialize_morphism(name, p.morphism, total_name, base_name,
                                 p.category))
