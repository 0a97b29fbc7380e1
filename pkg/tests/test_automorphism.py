import random
from itertools import permutations

import pytest

from oracles import brute_automorphisms, brute_graph_automorphisms, random_graph
from orientdist.automorphism import (
    automorphisms,
    biclique_shortcut_applies,
    compose,
    find_nontrivial_automorphism,
    format_permutation,
    graph_automorphisms,
    identity,
    inverse,
    is_automorphism,
    is_distinguishing,
    is_rigid,
    parse_permutation,
    preserves_labelling,
    transposition,
)
from orientdist.bipartite_words import WordSet, from_deleted_words, DeletedWordSet, orientation_from_words
from orientdist.config import Caps, InvalidInputError, ResourceCapError
from orientdist.graph_core import ARC, VERTEX, Labelling, build_family, enumerate_orientations, orient, reverse


def directed_cycle(n):
    # canonical edges of cycle:n are (0,1),(0,n-1),(1,2),...; reversing (0,n-1) closes the cycle
    g = build_family(f"cycle:{n}")
    return orient(g, "".join("1" if e == (0, n - 1) else "0" for e in g.edges))


def twins_example():
    return orientation_from_words(WordSet(3, ("000", "000", "110", "111", "011")))


def test_directed_cycle_rotation_and_reflection():
    c4 = directed_cycle(4)
    assert set(c4.arcs) == {(0, 1), (1, 2), (2, 3), (3, 0)}
    assert is_automorphism(c4, (1, 2, 3, 0))
    for p in ((0, 3, 2, 1), (1, 0, 3, 2), (2, 1, 0, 3), (3, 2, 1, 0)):
        assert not is_automorphism(c4, p)
    with pytest.raises(InvalidInputError):
        is_automorphism(c4, (0, 1, 2))


def test_twin_transposition_is_automorphism():
    og = twins_example()
    assert is_automorphism(og, transposition(8, (3, 4)))


def test_directed_path_rigid():
    og = orient(build_family("path:5"), "0000")
    assert automorphisms(og) == [identity(5)]


def test_c4_prime_group_order_4():
    og = orient(build_family("cycle:4"), "0010")
    assert set(og.arcs) == {(0, 1), (2, 1), (2, 3), (0, 3)}
    assert len(automorphisms(og)) == 4


def test_directed_c5_order_5():
    og = directed_cycle(5)
    assert len(brute_automorphisms(og)) == 5
    assert len(automorphisms(og)) == 5


def test_rigid_examples():
    assert is_rigid(orient(build_family("complete:4"), "000000"))
    assert not is_rigid(directed_cycle(4))
    assert is_rigid(orient(build_family("biclique:2,3"), "001011"))


def test_preserves_labelling_examples():
    c4 = directed_cycle(4)
    rot = (1, 2, 3, 0)
    assert preserves_labelling(c4, identity(4), Labelling(VERTEX, (1, 1, 2, 2)))
    assert not preserves_labelling(c4, rot, Labelling(VERTEX, (1, 1, 2, 2)))
    assert preserves_labelling(c4, compose(rot, rot), Labelling(VERTEX, (1, 2, 1, 2)))
    with pytest.raises(InvalidInputError):
        preserves_labelling(c4, (0, 3, 2, 1), Labelling(VERTEX, (1, 1, 1, 1)))


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_distinguishing_examples_on_directed_cycles(n):
    og = directed_cycle(n)
    assert is_distinguishing(og, Labelling(VERTEX, (1, 1) + (2,) * (n - 2)))
    arc_labels = tuple(1 if i == 0 else 2 for i in range(n))
    assert is_distinguishing(og, Labelling(ARC, arc_labels))
    assert not is_distinguishing(og, Labelling(VERTEX, (1,) * n))


def test_group_is_sorted_identity_first():
    group = automorphisms(orient(build_family("cycle:6"), "010000"))
    assert group[0] == identity(6)
    assert group == sorted(group)


def test_permutation_io():
    assert format_permutation((2, 0, 1)) == "[2,0,1]"
    assert parse_permutation("[2,0,1]") == (2, 0, 1)
    assert parse_permutation(" [ ] ") == ()
    for bad in ("2,0,1", "[0,0]", "[0,x]", "[1,2]"):
        with pytest.raises(InvalidInputError):
            parse_permutation(bad)
    assert inverse((2, 0, 1)) == (1, 2, 0)
    assert compose((1, 2, 0), (1, 2, 0)) == (2, 0, 1)


def test_caps():
    with pytest.raises(ResourceCapError):
        automorphisms(orient(build_family("path:17"), "0" * 16))
    with pytest.raises(ResourceCapError):
        automorphisms(directed_cycle(5), Caps(max_group_size=3))


def _corpus(count=120, seed=7, max_n=7):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        g = random_graph(rng, rng.randint(1, max_n), rng.choice((0.3, 0.5, 0.8)))
        out.append(orient(g, [rng.random() < 0.5 for _ in g.edges]))
    return out


@pytest.mark.parametrize("og", _corpus(), ids=lambda og: str(og.mask()) or "empty")
def test_against_full_scan(og):
    assert automorphisms(og) == sorted(brute_automorphisms(og))
    assert is_rigid(og) == (len(brute_automorphisms(og)) == 1)


def test_group_axioms_and_reversal():
    for og in _corpus(60, seed=11, max_n=8):
        group = automorphisms(og)
        members = set(group)
        assert identity(og.n_vertices) in members
        for p in group:
            assert inverse(p) in members
            for q in group:
                assert compose(p, q) in members
        assert set(automorphisms(reverse(og))) == members


def test_rigid_iff_constant_labelling_distinguishing():
    for og in _corpus(80, seed=5, max_n=8):
        assert is_rigid(og) == is_distinguishing(og, Labelling(VERTEX, (1,) * og.n_vertices))


def test_graph_automorphisms_against_full_scan():
    rng = random.Random(3)
    for _ in range(40):
        g = random_graph(rng, rng.randint(1, 6))
        assert graph_automorphisms(g) == sorted(brute_graph_automorphisms(g))


def test_biclique_route_matches_general_engine():
    # twin-free biclique orientations use the X-permutation route
    g = build_family("biclique:2,4")
    uses = 0
    for _, og in enumerate_orientations(g):
        if biclique_shortcut_applies(og):
            uses += 1
        assert automorphisms(og) == sorted(brute_automorphisms(og))
    assert uses > 0
    og = from_deleted_words(DeletedWordSet(3, ("000", "110")))
    assert biclique_shortcut_applies(og)
    assert automorphisms(og) == sorted(brute_automorphisms(og))


def test_find_nontrivial_skips_arc_trivial_maps():
    # two isolated vertices plus one arc: swapping the isolated pair fixes every arc
    from orientdist.graph_core import from_edges

    og = orient(from_edges(4, [(0, 1)]), "0")
    assert find_nontrivial_automorphism(og) == (0, 1, 3, 2)
    assert find_nontrivial_automorphism(og, Labelling(ARC, (1,))) is None
    assert all(is_automorphism(og, p) == ((p[0], p[1]) == (0, 1)) for p in permutations(range(4)))
