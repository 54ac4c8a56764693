import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from covgraph.graphs import (ValidationError, cycle_graph, rose_graph,
                             theta_graph)
from covgraph.pi1 import (PermRep, closed_lift_test, cover_from_perm_rep,
                          cover_subgroup, cover_subgroup_schreier,
                          cover_subgroup_words, fold, hom_is_injective,
                          hom_is_surjective, induced_hom, invert_word,
                          loop_word, membership, monodromy_at, pi1,
                          random_word, reduce_word, verify_key_lemma,
                          word_from_text, word_to_text)
from covgraph.zoo import (cyclic_base, cyclic_cover, cyclic_cover_map,
                          double_wrap, rose_to_rose, wedge_map)

from helpers import all_reduced_words, closed_path_words, random_cover

letters = st.integers(-3, 3).filter(lambda x: x != 0)
words = st.lists(letters, max_size=10).map(tuple)


@settings(max_examples=80, deadline=None)
@given(words)
def test_reduce_word_is_idempotent_and_inverse_cancels(w):
    r = reduce_word(w)
    assert reduce_word(r) == r
    assert reduce_word(r + invert_word(r)) == ()


@settings(max_examples=80, deadline=None)
@given(words)
def test_word_text_round_trip(w):
    r = reduce_word(w)
    assert word_from_text(word_to_text(r), 3) == r


def test_word_from_text_rejects_garbage():
    with pytest.raises(ValidationError):
        word_from_text("g0 h1", 2)
    with pytest.raises(ValidationError):
        word_from_text("g5", 2)


def test_rank_is_edges_minus_vertices_plus_one():
    assert pi1(theta_graph(), "u").rank == 2
    assert pi1(rose_graph(3), "v").rank == 3
    assert pi1(cycle_graph(7), "v0").rank == 1


@settings(max_examples=60, deadline=None)
@given(words)
def test_loop_word_inverts_word_to_path(w):
    pres = pi1(rose_graph(3), "v")
    r = reduce_word(w)
    assert loop_word(pres, pres.word_to_path(r)) == r


def test_loop_word_on_theta():
    pres = pi1(theta_graph(), "u")
    for k in (1, 2, -1, -2):
        assert loop_word(pres, pres.generator_loop(k)) == (k,)


def test_fold_known_subgroup():
    # H = <a^2, b, a b a^-1> in F_2: index 2, rank 3
    s = fold([(1, 1), (2,), (1, 2, -1)], 2)
    assert s.n == 2
    assert s.edge_count() == 4
    assert s.graph_rank() == 3
    assert s.index() == 2
    assert membership((1, 1), s)[0]
    assert membership((2,), s)[0]
    assert not membership((1,), s)[0]
    assert not membership((1, 2), s)[0]
    assert membership((1, 2, 1), s)[0]


def test_fold_is_canonical_under_generator_shuffles():
    gens = [(1, 1), (2,), (1, 2, -1)]
    base = fold(gens, 2)
    for perm in itertools.permutations(gens):
        assert fold(list(perm), 2) == base
    # adding a redundant generator changes nothing
    assert fold(gens + [(1, 1, 2)], 2) == base


def test_membership_agrees_with_word_enumeration_oracle():
    # subgroup elements of length <= 6 are exactly the projections of
    # closed dart paths of length <= 6 in the cover of the rose
    r2 = rose_graph(2, bases=("v",))
    pres = r2.presentation("v")
    for rep in [PermRep(2, ((1, 0), (0, 1))),
                PermRep(3, ((1, 2, 0), (1, 0, 2))),
                PermRep(3, ((1, 0, 2), (2, 1, 0)))]:
        q = cover_from_perm_rep(r2, pres, rep)
        e0 = sorted(q.fiber("v"))[0]
        enumerated = closed_path_words(q, e0, 6)
        s = cover_subgroup(q, e0)
        for w in all_reduced_words(2, 6):
            assert membership(w, s)[0] == (w in enumerated)


def test_dual_subgroup_routes_agree():
    rng = random.Random(11)
    bases = [rose_graph(2, bases=("v",)), cyclic_base(4),
             rose_graph(3, bases=("v",))]
    for _ in range(20):
        base = rng.choice(bases)
        q = random_cover(rng, base, 3)
        for e in sorted(q.total.vertices)[:2]:
            assert cover_subgroup(q, e) == cover_subgroup_schreier(q, e)


def test_closed_lift_agrees_with_membership():
    rng = random.Random(5)
    for _ in range(15):
        base = rose_graph(2, bases=("v",))
        q = random_cover(rng, base, 4)
        e = sorted(q.fiber("v"))[0]
        s = cover_subgroup(q, e)
        for _ in range(40):
            w = random_word(rng, 2, 8)
            assert closed_lift_test(q, e, w) == membership(w, s)[0]


def test_monodromy_round_trip():
    r2 = rose_graph(2, bases=("v",))
    pres = r2.presentation("v")
    rng = random.Random(2)
    for _ in range(20):
        d = rng.randint(1, 4)
        perms = []
        for _ in range(pres.rank):
            p = list(range(d))
            rng.shuffle(p)
            perms.append(tuple(p))
        rep = PermRep(d, tuple(perms))
        q = cover_from_perm_rep(r2, pres, rep)
        mon, fiber = monodromy_at(q, "v")
        assert mon.perms == rep.perms


def test_nielsen_schreier_rank_formula():
    # index-d subgroups of F_2 have rank 1 + d
    from covgraph.functor import perm_rep_classes
    r2 = rose_graph(2, bases=("v",))
    pres = r2.presentation("v")
    for d in range(1, 5):
        for rep in perm_rep_classes(d, 2, transitive_only=True):
            q = cover_from_perm_rep(r2, pres, rep)
            s = cover_subgroup(q, sorted(q.fiber("v"))[0])
            assert s.index() == d
            assert s.graph_rank() == 1 + d * (2 - 1)


def test_induced_hom_flags():
    assert hom_is_surjective(induced_hom(rose_to_rose(2, (1, 1)), "v"))
    assert not hom_is_injective(induced_hom(rose_to_rose(2, (1, 1)), "v"))
    dw = double_wrap()
    assert hom_is_injective(induced_hom(dw, "a0"))
    assert not hom_is_surjective(induced_hom(dw, "a0"))
    wm = wedge_map()
    h = induced_hom(wm, "p")
    assert not hom_is_injective(h)
    assert not hom_is_surjective(h)


def test_induced_hom_composes_with_words():
    f = cyclic_cover_map(6, 3)
    h = induced_hom(f, "u0")
    # the generator of pi1(C6) maps to the square of the C3 generator
    assert h.apply((1,)) in {(1, 1), (-1, -1)}


def test_key_lemma_sampled():
    rng = random.Random(0)
    f = cyclic_cover_map(6, 3)
    p = cyclic_cover(9, 3, prefix="z", edge_prefix="y")
    from covgraph.pullback import pullback
    pb = pullback(f, p)
    z1 = sorted(pb.total.vertices)[0]
    ws = [random_word(rng, 1, 12) for _ in range(100)]
    rep = verify_key_lemma(f, p, z1, ws)
    assert rep.ok


def test_cover_subgroup_words_of_trivial_cover():
    from covgraph.covers import trivial_cover
    y = rose_graph(2, bases=("v",))
    t = trivial_cover(y, ["a"]).cover
    ws = cover_subgroup_words(t, "(v,a)")
    s = fold(list(ws), 2)
    assert s.is_full_rose()
