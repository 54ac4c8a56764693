"""Finite graph coverings: pullbacks, fundamental groups, and the
categorical behavior of the pullback functor."""

from .covers import (Category, CoveringMap, CoverMorphism, TrivialCover,
                     TrivialityResult, UnionCover, equalizer, extrinsic_union,
                     fiber, is_trivial, restrict_cover, select_components,
                     trivial_cover, validate_cover)
from .functor import (HomSet, ProbeResult, TriadBounds, TriadReport,
                      cover_corpus, enumerate_hom, iso_covers,
                      pb_connectivity_check, perm_rep_classes, probe_faithful,
                      probe_full, probe_essentially_surjective, triad)
from .graphs import (ComponentPartition, Graph, GraphMorphism, Pi0Map,
                     ValidationError, cycle_graph, disjoint_union_graphs,
                     graph_equal, induced_pi0_map, pair_id, rose_graph,
                     spanning_forest, subgraph, tag_id, theta_graph,
                     validate_graph)
from .pi1 import (InducedHom, KeyLemmaReport, PermRep, Pi1Presentation,
                  StallingsGraph, closed_lift_test, cover_from_perm_rep,
                  cover_subgroup, cover_subgroup_schreier,
                  cover_subgroup_words, fold, hom_is_injective,
                  hom_is_surjective, induced_hom, membership, monodromy,
                  monodromy_at, pi1, reduce_word, verify_key_lemma,
                  word_from_text, word_to_text)
from .pullback import (PullbackCover, compose_pullbacks, image_identities,
                       pullback, pullback_extrinsic_union,
                       pullback_intrinsic_union, pullback_morphism,
                       pullback_partitioned_union, pullback_trivial,
                       universal_map)

__version__ = "0.1.0"
