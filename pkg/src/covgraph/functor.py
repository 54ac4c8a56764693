"""Categorical probes of the pullback functor and the triad verdict.

Hom-sets between covers of a common base are finite and rigid: a
morphism is determined by where one vertex of each source component
goes, and a candidate target is valid exactly when the corresponding
subgroup inclusion holds.  This makes complete enumeration cheap.

Faithfulness, fullness, and essential surjectivity are universally
quantified over infinitely many covers; the probes search a bounded,
deterministically generated corpus and report witnesses or exhaustion.
The triad compares the categorical findings against the algebraic
conditions (connectivity data of the map) and flags any mismatch as a
hard inconsistency.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .covers import (Category, CoverMorphism, CoveringMap, extrinsic_union,
                     trivial_cover)
from .graphs import (Graph, GraphMorphism, ValidationError, induced_pi0_map,
                     pair_id)
from .pi1 import (PermRep, cover_from_perm_rep, cover_subgroup_words,
                  hom_is_injective, hom_is_surjective, induced_hom,
                  monodromy_at)
from .pullback import pullback, pullback_morphism_between


@dataclass(frozen=True)
class HomSet:
    """All morphisms between two covers in one category, in deterministic
    order."""

    source: CoveringMap
    target: CoveringMap
    category: Category
    morphisms: tuple

    def __len__(self):
        return len(self.morphisms)


def enumerate_hom(p1, p2, category=Category.COV):
    """Complete hom-set enumeration.

    Per source component: candidate images of the component
    representative are the fiber points whose subgroup contains the
    component's subgroup; each candidate extends uniquely by path
    lifting.  The hom-set is the product over components, filtered by
    the category.
    """
    comps = p1.total.components
    per_component = []
    for c in range(comps.count):
        rep = comps.reps[c]
        y = p1.vertex(rep)
        gens = cover_subgroup_words(p1, rep)
        options = []
        fiber2 = p2.fiber(y)
        if fiber2:
            mon, fib = monodromy_at(p2, y)
            for e2 in fiber2:
                i = fib.index(e2)
                if all(mon.act_word(w, i) == i for w in gens):
                    ext = _extend(p1, p2, rep, e2)
                    if ext is not None:
                        options.append(ext)
        per_component.append(options)
    morphisms = []
    for combo in itertools.product(*per_component):
        vmap, dmap = {}, {}
        for tv, td in combo:
            vmap.update(tv)
            dmap.update(td)
        if category.surjective and set(vmap.values()) != set(p2.total.vertices):
            continue
        if category.based and vmap.get(p1.basepoint) != p2.basepoint:
            continue
        m = GraphMorphism(p1.total, p2.total, vmap, dmap)
        morphisms.append(CoverMorphism(m, p1, p2, category))
    return HomSet(p1, p2, category, tuple(morphisms))


def _extend(p1, p2, rep, e2):
    """Extend rep -> e2 over the whole component by unique dart lifting;
    None on a (theoretically impossible) meet conflict."""
    t_v = {rep: e2}
    t_d = {}
    queue = [rep]
    total1, total2 = p1.total, p2.total
    while queue:
        v = queue.pop()
        for d in total1.star[v]:
            if d in t_d:
                continue
            img = p2.lift_dart(t_v[v], p1.dart(d))
            t_d[d] = img
            w = total1.terminus(d)
            iw = total2.terminus(img)
            if w in t_v:
                if t_v[w] != iw:
                    return None
            else:
                t_v[w] = iw
                queue.append(w)
    return t_v, t_d


def iso_covers(p1, p2, category=Category.COV):
    """First isomorphism found by the rigid enumerator, or None."""
    if len(p1.total.vertices) != len(p2.total.vertices) or \
            len(p1.total.darts) != len(p2.total.darts):
        return None
    for y in p1.base.vertices:
        if len(p1.fiber(y)) != len(p2.fiber(y)):
            return None
    for t in enumerate_hom(p1, p2, category).morphisms:
        if t.is_iso():
            return t
    return None


# -- cover corpus ----------------------------------------------------------

_REP_CLASSES = {}


def perm_rep_classes(d, rank, transitive_only=False):
    """Canonical representatives of permutation tuples modulo simultaneous
    conjugation (sheet relabeling), in deterministic order."""
    key = (d, rank)
    if key not in _REP_CLASSES:
        perms = list(itertools.permutations(range(d)))
        out = []
        for combo in itertools.product(perms, repeat=rank):
            canon = min(_conjugate(combo, g, d) for g in perms)
            if combo == canon:
                out.append(PermRep(d, tuple(combo)))
        _REP_CLASSES[key] = out
    reps = _REP_CLASSES[key]
    if transitive_only:
        return [r for r in reps if r.is_transitive()]
    return reps


def _conjugate(combo, g, d):
    out = []
    for p in combo:
        q = [0] * d
        for i in range(d):
            q[g[i]] = g[p[i]]
        out.append(tuple(q))
    return tuple(out)


def cover_corpus(y, max_sheets, category=Category.COV):
    """Deterministic cover corpus over ``y``: all per-component
    permutation representations up to ``max_sheets`` modulo sheet
    relabeling, combined across components, plus the empty cover and
    extrinsic unions of two small connected covers.

    Union summands are capped at two sheets each to keep probe loops
    tractable.
    """
    comps = y.components
    based = category.based
    y0 = y.bases[0] if y.bases else None
    if based and y0 is None:
        raise ValidationError(["based corpus requires a based graph"])
    base_comp = comps.index[y0] if based else None
    options = []
    for c in range(comps.count):
        pres = y.presentation(y.base_of_component(c))
        opts = [] if category.surjective else [None]
        for d in range(1, max_sheets + 1):
            for rep in perm_rep_classes(d, pres.rank):
                opts.append((pres, rep, c))
        options.append(opts)
    covers = []
    for combo in itertools.product(*options):
        if based and combo[base_comp] is None:
            continue
        covers.append(_combine(y, combo, category, base_comp))
    covers.extend(_small_unions(y, max_sheets, category, base_comp))
    return covers


def _combine(y, combo, category, base_comp):
    vertices, darts, involution, origin = [], [], {}, {}
    vmap, dmap = {}, {}
    for piece in combo:
        if piece is None:
            continue
        pres, rep, c = piece
        q = cover_from_perm_rep(y, pres, rep)
        vertices += q.total.vertices
        darts += q.total.darts
        involution.update(q.total.involution)
        origin.update(q.total.origin)
        vmap.update(q.morphism.vertex_map)
        dmap.update(q.morphism.dart_map)
    total = Graph(vertices, darts, involution, origin)
    m = GraphMorphism(total, y, vmap, dmap)
    bp = None
    if category.based:
        pres = combo[base_comp][0]
        bp = pair_id(pres.base, "0")
    return CoveringMap(m, category, bp)


def _small_unions(y, max_sheets, category, base_comp):
    comps = y.components
    connected = []
    for c in range(comps.count):
        pres = y.presentation(y.base_of_component(c))
        for d in range(1, min(max_sheets, 2) + 1):
            for rep in perm_rep_classes(d, pres.rank, transitive_only=True):
                connected.append((pres, rep, c))
    out = []
    for i in range(len(connected)):
        for j in range(i, len(connected)):
            presi, repi, ci = connected[i]
            presj, repj, cj = connected[j]
            if category.surjective and {ci, cj} != set(range(comps.count)):
                continue
            base_summand = None
            if category.based:
                if ci == base_comp:
                    base_summand = 0
                elif cj == base_comp:
                    base_summand = 1
                else:
                    continue
            q1 = cover_from_perm_rep(
                y, presi, repi,
                basepoint_sheet=0 if base_summand == 0 else None)
            q2 = cover_from_perm_rep(
                y, presj, repj,
                basepoint_sheet=0 if base_summand == 1 else None)
            out.append(extrinsic_union([q1, q2], category,
                                       base_summand).cover)
    return out


# -- probes ----------------------------------------------------------------

def _canon(t):
    return (tuple(sorted(t.t.vertex_map.items())),
            tuple(sorted(t.t.dart_map.items())))


@dataclass(frozen=True)
class ProbeResult:
    """Outcome of one bounded categorical search.

    ``witness`` carries a machine-checked counterexample (or None);
    ``certified`` distinguishes a certificate from mere exhaustion.
    """

    kind: str
    witness: object
    certified: bool
    pairs_checked: int
    bound: int
    notes: str = ""


class ProbeContext:
    """Shared corpus and caches for one (map, category, bound) run."""

    def __init__(self, f, category, max_sheets):
        self.f = f
        self.category = category
        self.max_sheets = max_sheets
        self.corpus = cover_corpus(f.target, max_sheets, category)
        self._pb = {}
        self._hom = {}

    def pb(self, cover):
        key = id(cover)
        if key not in self._pb:
            self._pb[key] = (pullback(self.f, cover), cover)
        return self._pb[key][0]

    def hom(self, p1, p2):
        key = (id(p1), id(p2))
        if key not in self._hom:
            self._hom[key] = enumerate_hom(p1, p2, self.category)
        return self._hom[key]


def probe_faithful(ctx, category=Category.COV, max_sheets=3):
    """Search for t1 != t2 with equal pullbacks; also checks that the
    component-swap witness on the trivial two-sheet cover appears whenever
    the map misses a base component.

    Accepts either a prepared :class:`ProbeContext` or a raw map with a
    category and sheet bound.
    """
    if not isinstance(ctx, ProbeContext):
        ctx = ProbeContext(ctx, category, max_sheets)
    f = ctx.f
    witness = None
    pairs = 0
    for p1 in ctx.corpus:
        for p2 in ctx.corpus:
            hs = ctx.hom(p1, p2)
            if len(hs) < 2:
                pairs += 1
                continue
            pairs += 1
            pb1, pb2 = ctx.pb(p1), ctx.pb(p2)
            seen = {}
            for t in hs.morphisms:
                key = _canon(pullback_morphism_between(f, t, pb1, pb2))
                if key in seen and not seen[key].same_maps(t):
                    witness = (p1, p2, seen[key], t)
                    break
                seen[key] = t
            if witness:
                break
        if witness:
            break
    pi0 = induced_pi0_map(f)
    notes = ""
    if not pi0.surjective:
        if not _swap_witness_works(ctx):
            raise ValidationError(
                ["component-swap witness not confirmed despite missed component"])
        notes = "component-swap witness confirmed"
        if witness is None:
            raise ValidationError(
                ["faithfulness witness missing although a component is missed"])
    return ProbeResult("faithful", witness, witness is not None, pairs,
                       ctx.max_sheets, notes)


def _swap_witness_works(ctx):
    """The paper-style witness: on the trivial two-sheet cover, swapping
    the sheets over a missed component is a morphism distinct from the
    identity with the same pullback."""
    f = ctx.f
    y = f.target
    pi0 = induced_pi0_map(f)
    missed = sorted(set(range(y.components.count)) - set(pi0.mapping.values()))
    c = missed[0]
    bp = None
    if ctx.category.based:
        bp = (y.bases[0], "1")
    triv = trivial_cover(y, ["1", "2"], bp).cover
    if ctx.category.surjective:
        triv = CoveringMap(triv.morphism, ctx.category, triv.basepoint)
    ident = CoverMorphism(GraphMorphism.identity(triv.total), triv, triv,
                          ctx.category)
    cvs = set(y.components.vertices_of(c))
    swap_label = {"1": "2", "2": "1"}
    vmap, dmap = {}, {}
    for l in ("1", "2"):
        for v in y.vertices:
            nl = swap_label[l] if v in cvs else l
            vmap[pair_id(v, l)] = pair_id(v, nl)
        for d in y.darts:
            nl = swap_label[l] if y.origin[d] in cvs else l
            dmap[pair_id(d, l)] = pair_id(d, nl)
    swap = CoverMorphism(GraphMorphism(triv.total, triv.total, vmap, dmap),
                         triv, triv, ctx.category)
    if swap.same_maps(ident):
        return False
    pbt = pullback(f, triv)
    a = pullback_morphism_between(f, ident, pbt, pbt)
    b = pullback_morphism_between(f, swap, pbt, pbt)
    return _canon(a) == _canon(b)


def probe_full(ctx, category=Category.COV, max_sheets=3):
    """Search for a downstairs morphism s not of the form f*(t)."""
    if not isinstance(ctx, ProbeContext):
        ctx = ProbeContext(ctx, category, max_sheets)
    f = ctx.f
    witness = None
    pairs = 0
    for p1 in ctx.corpus:
        for p2 in ctx.corpus:
            pairs += 1
            pb1, pb2 = ctx.pb(p1), ctx.pb(p2)
            down = enumerate_hom(pb1.proj_base, pb2.proj_base, ctx.category)
            if not down.morphisms:
                continue
            hs = ctx.hom(p1, p2)
            image = {_canon(pullback_morphism_between(f, t, pb1, pb2))
                     for t in hs.morphisms}
            for s in down.morphisms:
                if _canon(s) not in image:
                    witness = (p1, p2, s)
                    break
            if witness:
                break
        if witness:
            break
    return ProbeResult("full", witness, witness is not None, pairs,
                       ctx.max_sheets)


@dataclass(frozen=True)
class Realization:
    connected_piece: object
    realized: bool
    certified: bool
    detail: str


def probe_essentially_surjective(ctx, category=Category.COV,
                                 max_sheets=3):
    """For each connected cover of the source up to the bound, decide
    whether it is a pullback.

    Fast path (source/target components matched and every π₁ map
    surjective): the candidate monodromy over the target is forced, so a
    failed search is a certificate of non-realizability.  Otherwise an
    exhaustive search over the target corpus is used and failures are
    reported as unrealized-up-to-bound only.
    """
    if not isinstance(ctx, ProbeContext):
        ctx = ProbeContext(ctx, category, max_sheets)
    f = ctx.f
    x = f.source
    pi0 = induced_pi0_map(f)
    surj_all = all(
        hom_is_surjective(induced_hom(f, x.base_of_component(c)))
        for c in range(x.components.count))
    fast = pi0.surjective and pi0.injective and surj_all
    results = []
    witness = None
    checked = 0
    for c in range(x.components.count):
        pres = x.presentation(x.base_of_component(c))
        for d in range(1, ctx.max_sheets + 1):
            for rep in perm_rep_classes(d, pres.rank, transitive_only=True):
                checked += 1
                r = _decide_realizable(ctx, pres, rep, c, fast)
                results.append(r)
                if witness is None and r.certified and not r.realized:
                    witness = r
    return ProbeResult("essentially-surjective", witness,
                       witness is not None, checked, ctx.max_sheets,
                       notes="fast-path" if fast else "bounded search"), results


def _object_of(ctx, core, base_graph, basepoint_vertex):
    """Wrap a connected cover as an object of the category: the surjective
    and based categories get an extra one-sheet trivial summand carrying
    the basepoint."""
    if not (ctx.category.based or ctx.category.surjective):
        return core
    bp = (basepoint_vertex, "t") if ctx.category.based else None
    triv = trivial_cover(base_graph, ["t"], bp).cover
    return extrinsic_union(
        [core, triv], ctx.category,
        base_summand=1 if ctx.category.based else None).cover


def _decide_realizable(ctx, pres, rep, comp, fast):
    f = ctx.f
    x = f.source
    core = cover_from_perm_rep(x, pres, rep)
    z_obj = _object_of(ctx, core, x, x.bases[0] if x.bases else None)
    d = rep.degree
    if fast:
        h = induced_hom(f, pres.base)
        sigma = _forced_sigma(h, rep, d)
        if sigma is None:
            return Realization(
                (pres.base, rep), False, True,
                "no target monodromy satisfies the forced constraints")
        e_core = cover_from_perm_rep(f.target, h.target, PermRep(d, sigma))
        e_obj = _object_of(ctx, e_core, f.target,
                           f.target.bases[0] if f.target.bases else None)
        pb = pullback(f, _as_category_object(ctx, e_obj))
        iso = iso_covers(pb.proj_base, _as_category_object(ctx, z_obj),
                        ctx.category)
        if iso is None:
            raise ValidationError(
                ["forced monodromy candidate failed its isomorphism check"])
        return Realization((pres.base, rep), True, True,
                           "forced monodromy verified")
    z_cat = _as_category_object(ctx, z_obj)
    for e in ctx.corpus:
        pb = ctx.pb(e)
        if iso_covers(pb.proj_base, z_cat, ctx.category) is not None:
            return Realization((pres.base, rep), True, False,
                               "realized by corpus search")
    return Realization((pres.base, rep), False, False,
                       "unrealized up to bound")


def _as_category_object(ctx, cover):
    if cover.category == ctx.category:
        return cover
    return CoveringMap(cover.morphism, ctx.category, cover.basepoint)


def _forced_sigma(h, rep, d):
    """Search permutation images of the target generators satisfying
    sigma(f#(a_i)) = rho(a_i); unique if it exists (f# is surjective)."""
    r_y = h.target.rank
    perms = list(itertools.permutations(range(d)))
    for combo in itertools.product(perms, repeat=r_y):
        cand = PermRep(d, tuple(combo))
        if all(tuple(cand.act_word(h.images[i], j) for j in range(d))
               == rep.perms[i] for i in range(len(h.images))):
            return tuple(combo)
    return None


# -- triad -----------------------------------------------------------------

@dataclass(frozen=True)
class TriadBounds:
    max_sheets: int = 3
    word_length: int = 12
    samples: int = 100
    seed: int = 0


@dataclass(frozen=True)
class CategoryVerdict:
    category: Category
    faithful: ProbeResult
    full: ProbeResult
    essentially_surjective: ProbeResult
    realizations: tuple
    inconsistencies: tuple

    @property
    def consistent(self):
        return not self.inconsistencies


@dataclass(frozen=True)
class TriadReport:
    """Algebraic connectivity data of a map next to the bounded
    categorical probes, with a consistency verdict per category."""

    pi0_surjective: bool
    pi0_injective: bool
    pi1_surjective: bool
    pi1_injective: bool
    pi1_by_component: tuple
    bounds: TriadBounds
    verdicts: tuple

    @property
    def consistent(self):
        return all(v.consistent for v in self.verdicts)


def triad(f, categories=(Category.COV,), bounds=TriadBounds()):
    """Run the three probes in each category and compare with the
    algebraic conditions; mismatches are hard errors reported in the
    verdicts."""
    x = f.source
    pi0 = induced_pi0_map(f)
    per_comp = []
    for c in range(x.components.count):
        h = induced_hom(f, x.base_of_component(c))
        per_comp.append((hom_is_surjective(h), hom_is_injective(h)))
    pi1_surj = all(s for s, _ in per_comp)
    pi1_inj = all(i for _, i in per_comp)
    alg1 = pi0.surjective
    alg2 = alg1 and pi0.injective and pi1_surj
    alg3 = alg2 and pi1_inj
    verdicts = []
    for category in categories:
        if category.based and (not x.bases or not f.target.bases):
            raise ValidationError(
                ["based categories require based source and target"])
        ctx = ProbeContext(f, category, bounds.max_sheets)
        fa = probe_faithful(ctx)
        fu = probe_full(ctx)
        es, realizations = probe_essentially_surjective(ctx)
        problems = []
        if (fa.witness is None) != alg1:
            problems.append("faithfulness probe disagrees with components")
        if ((fa.witness is None) and (fu.witness is None)) != alg2:
            problems.append("fullness probe disagrees with the algebraic side")
        cat_equiv_holds = (fa.witness is None and fu.witness is None
                           and es.witness is None
                           and all(r.realized for r in realizations
                                   if r.certified))
        if alg3:
            if not cat_equiv_holds:
                problems.append("equivalence should hold but a witness exists")
            if not all(r.realized and r.certified for r in realizations):
                problems.append("equivalence holds but a cover is unrealized")
        else:
            if fa.witness is None and fu.witness is None and es.witness is None:
                problems.append("equivalence fails but no witness was found")
        verdicts.append(CategoryVerdict(category, fa, fu, es,
                                        tuple(realizations), tuple(problems)))
    return TriadReport(pi0.surjective, pi0.injective, pi1_surj, pi1_inj,
                       tuple(per_comp), bounds, tuple(verdicts))


@dataclass(frozen=True)
class ConnectivityReport:
    applicable: bool
    components: int
    connected: bool
    fiber_meets_all: bool


def pb_connectivity_check(f, p):
    """When the source components inject, the total space is connected,
    and every π₁ map is surjective, the pullback must be connected and
    every pullback component must meet the distinguished fiber."""
    x = f.source
    pi0 = induced_pi0_map(f)
    e_connected = p.total.components.count == 1
    surj_all = all(
        hom_is_surjective(induced_hom(f, x.base_of_component(c)))
        for c in range(x.components.count))
    pb = pullback(f, p)
    n = pb.total.components.count
    applicable = pi0.injective and e_connected and surj_all
    connected = n <= 1
    fiber_meets_all = True
    if pb.total.vertices and pi0.injective and e_connected:
        x1, e1 = pb.vertex_pair[pb.total.vertices[0]]
        y1 = f.vertex_map[x1]
        distinguished = {pair_id(x1, e) for e in p.fiber(y1)}
        tcomps = pb.total.components
        hit = {tcomps.index[v] for v in distinguished}
        fiber_meets_all = hit == set(range(n))
    if applicable and not (connected and fiber_meets_all):
        raise ValidationError(["pullback connectivity assertion failed"])
    return ConnectivityReport(applicable, n, connected, fiber_meets_all)
