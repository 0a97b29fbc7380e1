import random

import pytest

from oracles import (
    brute_automorphisms,
    brute_chromatic,
    brute_chromatic_index,
    brute_graph_automorphisms,
    brute_parameter,
    random_graph,
)
from orientdist.automorphism import is_distinguishing, is_rigid
from orientdist.config import Caps, InvalidInputError, ResourceCapError
from orientdist.distinguishing import (
    Ambiguous,
    Exact,
    Kind,
    LabellingSearch,
    MAX,
    MIN,
    biclique_index_brute_force,
    biclique_index_formula,
    biclique_index_generic,
    check_witness,
    classical_bounds,
    distinguishing_exists,
    extremal,
    graph_parameter_value,
    merge_extremal,
    parameter_value,
)
from orientdist.graph_core import ARC, VERTEX, Labelling, build_family, enumerate_orientations, is_proper, orient, reverse

ALL_KINDS = list(Kind)


def directed_cycle(n):
    g = build_family(f"cycle:{n}")
    return orient(g, "".join("1" if e == (0, n - 1) else "0" for e in g.edges))


def test_kind_parsing():
    assert Kind.parse("odp") is Kind.ODP
    assert Kind.OCHIDP.target == ARC and Kind.OCHIDP.proper
    assert Kind.OD.target == VERTEX and not Kind.OD.proper
    with pytest.raises(InvalidInputError):
        Kind.parse("chi")


def test_exists_examples():
    p4 = orient(build_family("path:4"), "000")
    assert distinguishing_exists(p4, Kind.OD, 1).labels == (1, 1, 1, 1)
    assert distinguishing_exists(directed_cycle(4), Kind.OD, 1) is None
    c4p = orient(build_family("cycle:4"), "0010")
    assert distinguishing_exists(c4p, Kind.OCHID, 3) is None
    lab = distinguishing_exists(c4p, Kind.OCHID, 4)
    assert lab is not None and check_witness(c4p, Kind.OCHID, lab)
    with pytest.raises(InvalidInputError):
        distinguishing_exists(p4, Kind.OD, 0)


def test_parameter_examples():
    star = orient(build_family("star:3"), "000")
    assert parameter_value(star, Kind.OD)[0] == 3
    assert parameter_value(directed_cycle(6), Kind.OCHIDP)[0] == 3
    c4 = directed_cycle(4)
    # arcs in cycle order 01,12,23,30; canonical edge order is 01,03,12,23
    lab = Labelling(ARC, (1, 3, 2, 1))
    assert is_proper(c4, lab) and is_distinguishing(c4, lab)
    assert parameter_value(c4, Kind.OCHIDP)[0] <= 3


def test_extremal_examples():
    assert extremal(build_family("cycle:6"), Kind.OD, MAX).value == 2
    assert extremal(build_family("cycle:4"), Kind.OCHID, MAX).value == 4
    assert extremal(build_family("biclique:3,3"), Kind.OCHIDP, MAX).value == 4
    with pytest.raises(InvalidInputError):
        extremal(build_family("cycle:4"), Kind.OD, "mid")


def test_classical_examples():
    assert classical_bounds(build_family("cycle:5")) == (3, 3)
    assert classical_bounds(build_family("complete:4")) == (4, 3)
    assert classical_bounds(build_family("biclique:2,3")) == (2, 3)
    assert classical_bounds(build_family("complete:1")) == (1, 0)


def test_classical_against_brute_force():
    rng = random.Random(2)
    for _ in range(40):
        g = random_graph(rng, rng.randint(1, 6))
        assert classical_bounds(g) == (brute_chromatic(g.n_vertices, g.edges), brute_chromatic_index(g.edges))


def _small_corpus(seed=1, count=50):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        g = random_graph(rng, rng.randint(2, 5), 0.6)
        if 1 <= g.n_edges <= 6:
            out.append(orient(g, [rng.random() < 0.5 for _ in g.edges]))
    return out


@pytest.mark.parametrize("kind", ALL_KINDS, ids=lambda k: k.value)
def test_parameter_value_against_brute_force(kind):
    for og in _small_corpus():
        group = brute_automorphisms(og)
        want_value, want_labels = brute_parameter(og.n_vertices, list(og.arcs), group, kind.target, kind.proper)
        value, lab = parameter_value(og, kind)
        assert (value, lab.labels) == (want_value, want_labels), str(og.mask())


@pytest.mark.parametrize("kind", ALL_KINDS, ids=lambda k: k.value)
def test_graph_parameter_against_brute_force(kind):
    rng = random.Random(4)
    for _ in range(25):
        g = random_graph(rng, rng.randint(1, 5), 0.6)
        if g.n_edges > 6:
            continue
        group = brute_graph_automorphisms(g)
        want = brute_parameter(g.n_vertices, list(g.edges), group, kind.target, kind.proper, directed=False)
        value, lab = graph_parameter_value(g, kind)
        assert (value, lab.labels) == want


@pytest.mark.parametrize("spec", ["path:4", "cycle:4", "complete:3", "star:3"])
@pytest.mark.parametrize("kind", ALL_KINDS, ids=lambda k: k.value)
def test_extremal_against_per_mask_scan(spec, kind):
    g = build_family(spec)
    values = [(parameter_value(og, kind)[0], str(mask)) for mask, og in enumerate_orientations(g)]
    lo = min(values)
    hi = min(values, key=lambda t: (-t[0], t[1]))
    got_lo, got_hi = extremal(g, kind, MIN), extremal(g, kind, MAX)
    assert (got_lo.value, str(got_lo.witness_mask)) == lo
    assert (got_hi.value, str(got_hi.witness_mask)) == hi
    for res in (got_lo, got_hi):
        og = orient(g, res.witness_mask)
        assert check_witness(og, kind, res.witness_labelling)
        assert res.witness_labelling.n_used <= res.value


def test_partitioned_extremal_matches():
    g = build_family("cycle:6")
    whole = extremal(g, Kind.OCHIDP, MAX)
    parts = [extremal(g, Kind.OCHIDP, MAX, start=a, stop=b) for a, b in ((0, 7), (7, 20), (20, 32))]
    merged = merge_extremal(parts, MAX)
    assert (merged.value, merged.witness_mask) == (whole.value, whole.witness_mask)
    assert merged.orientations_scanned == 32


def test_reversal_invariance():
    rng = random.Random(9)
    for _ in range(40):
        g = random_graph(rng, rng.randint(2, 7), 0.4)
        og = orient(g, [rng.random() < 0.5 for _ in g.edges])
        for kind in ALL_KINDS:
            assert parameter_value(og, kind)[0] == parameter_value(reverse(og), kind)[0]


def test_od_one_iff_rigid():
    rng = random.Random(10)
    for _ in range(60):
        g = random_graph(rng, rng.randint(2, 7), 0.5, no_isolated=True)
        og = orient(g, [rng.random() < 0.5 for _ in g.edges])
        rigid = is_rigid(og)
        assert (parameter_value(og, Kind.OD)[0] == 1) == rigid
        assert (parameter_value(og, Kind.ODP)[0] == 1) == rigid


def test_tournaments_on_four_vertices():
    g = build_family("complete:4")
    for _, og in enumerate_orientations(g):
        assert parameter_value(og, Kind.OD)[0] <= 2


def test_search_budget_cap():
    og = directed_cycle(7)
    with pytest.raises(ResourceCapError):
        distinguishing_exists(og, Kind.OCHIDP, 2, Caps(labelling_nodes=5))


def test_search_with_no_elements():
    s = LabellingSearch(VERTEX, 0, [])
    assert s.find(1).labels == ()


@pytest.mark.parametrize(
    "m,n,want",
    [(3, 4, Exact(2)), (2, 4, Exact(3)), (2, 3, Ambiguous(2)), (3, 6, Ambiguous(2)), (2, 5, Exact(3)), (3, 9, Exact(3))],
)
def test_biclique_formula_examples(m, n, want):
    assert biclique_index_formula(m, n) == want


@pytest.mark.parametrize("m,n", [(1, 3), (3, 3), (4, 2)])
def test_biclique_formula_rejects(m, n):
    with pytest.raises(InvalidInputError):
        biclique_index_formula(m, n)


@pytest.mark.parametrize("m,n", [(2, 3), (2, 4), (2, 5), (2, 6), (3, 4)])
def test_biclique_brute_force_matches_generic(m, n):
    value, lab = biclique_index_brute_force(m, n)
    assert biclique_index_generic(m, n) == value
    from orientdist.automorphism import is_graph_distinguishing

    assert is_graph_distinguishing(build_family(f"biclique:{m},{n}"), lab)
