import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from strata.classify import classify_surface
from strata.diagram import (
    SeparatrixDiagram,
    bubble_handle,
    contract_saddle_connection,
    cylinder_count,
    diagram_to_surface,
    erase_handle,
    handle_angle,
    horizontal_diagram,
    integer_lengths,
    is_hyperelliptic_diagram,
    is_realizable,
    make_canonical,
    pair_matrix,
    realizability,
    reverse_arrows,
    rotate_handle,
    torus_diagram,
    validate_diagram,
    vertical_diagram,
)
from strata.errors import (
    GenusTooSmall,
    LoopEdge,
    MultipleVertices,
    NotAlternating,
    NotSimplePair,
    SameSector,
    SignMismatchInPairing,
)
from strata.perm import reversal
from strata.surface import singularity_profile, spin_parity_surface, suspend

RAYS = [[1, "out"], [2, "in"], [3, "out"], [4, "in"], [5, "out"], [6, "in"]]


def figure_one():
    # one 6-valent vertex, loops 1->6, 5->2, 3->4; pairs {1}|{4} and {3,5}|{2,6}
    return validate_diagram({"vertices": [RAYS], "edges": [[1, 6], [5, 2], [3, 4]],
                             "pairing": [[1, 4], [3, 2]]})


def forced_zero():
    # same ribbon graph, paired so that p_52 must vanish
    return validate_diagram({"vertices": [RAYS], "edges": [[1, 6], [5, 2], [3, 4]],
                             "pairing": [[1, 2], [3, 4]]})


def parity(d):
    return spin_parity_surface(diagram_to_surface(d))


def test_validate():
    d = figure_one()
    assert d.genus == 2 and d.degrees == (2,)
    assert cylinder_count(d) == 2
    assert cylinder_count(torus_diagram()) == 1
    with pytest.raises(NotAlternating):
        validate_diagram({"vertices": [[[1, "out"], [3, "out"], [2, "in"], [4, "in"]]],
                          "edges": [[1, 2], [3, 4]], "pairing": [[1, 2]]})
    with pytest.raises(SignMismatchInPairing):
        validate_diagram({"vertices": [RAYS], "edges": [[1, 6], [5, 2], [3, 4]],
                          "pairing": [[1, 3], [4, 2]]})


def test_json_round_trip():
    for d in (figure_one(), make_canonical("E", 4), torus_diagram()):
        text = d.to_json()
        assert SeparatrixDiagram.from_json(text) == d
        assert SeparatrixDiagram.from_json(text).to_json() == text
        assert json.loads(text) == d.to_dict()


def test_figure_one_realizable():
    cert = realizability(figure_one())
    assert cert.feasible
    assert all(x > 0 for x in cert.lengths.values())
    rows = pair_matrix(figure_one())
    for row in rows:
        assert sum(c * cert.lengths[e] for c, e in zip(row, figure_one().edges)) == 0
    assert set(integer_lengths(figure_one()).values()) == {1}


def test_forced_zero_is_infeasible():
    cert = realizability(forced_zero())
    assert not cert.feasible
    # the certificate: combination of pair equations with nonnegative,
    # nonzero edge weights
    weights = list(cert.edge_weights.values())
    assert all(w >= 0 for w in weights) and any(w > 0 for w in weights)
    d = forced_zero()
    combo = [sum(Fraction(y) * row[k] for y, row in zip(cert.functional, pair_matrix(d)))
             for k in range(len(d.edges))]
    assert combo == [cert.edge_weights[e] for e in d.edges]


def test_canonical_diagrams():
    assert make_canonical("O", 2) == make_canonical("H", 2)
    assert make_canonical("E", 3) == make_canonical("H", 3)
    h5 = make_canonical("H", 5)
    assert len(h5.edges) == 9 and len(h5.faces) == 10 and cylinder_count(h5) == 5
    with pytest.raises(GenusTooSmall, match="genus too small for diagram E: g=2"):
        make_canonical("E", 2)
    with pytest.raises(GenusTooSmall):
        make_canonical("H", 1)


@pytest.mark.parametrize("g", range(2, 7))
def test_canonical_parity(g):
    assert parity(make_canonical("H", g)) == ((g + 1) // 2) % 2
    assert parity(make_canonical("O", g)) == 1
    if g >= 3:
        assert parity(make_canonical("E", g)) == 0


def test_hyperelliptic_diagram():
    assert is_hyperelliptic_diagram(torus_diagram())
    with pytest.raises(MultipleVertices):
        is_hyperelliptic_diagram(horizontal_diagram(suspend(reversal(5)))[0])


def test_reverse_arrows():
    for d in (figure_one(), make_canonical("O", 4), forced_zero()):
        r = reverse_arrows(d)
        assert reverse_arrows(r) == d
        assert is_realizable(r) == is_realizable(d)
    o4 = make_canonical("O", 4)
    assert parity(reverse_arrows(o4)) == parity(o4)


def test_bubble_into_torus_gives_figure_one():
    b = bubble_handle(torus_diagram(), 0, 2, 1)
    s = diagram_to_surface(b)
    assert s.n_squares == 3
    assert singularity_profile(s).stratum == (2,)
    assert sorted(len(f) for f in b.faces.values()) == sorted(
        len(f) for f in figure_one().faces.values())
    new = [pr for pr in b.pairing if pr != (1, 2)][0]
    back, m = erase_handle(b, new)
    assert back == torus_diagram() and m == 1


def test_erase_from_figure_one():
    d = figure_one()
    # {1} and {4} are petals of simple loops
    back, m = erase_handle(d, (1, 4))
    assert back.genus == 1 and len(back.edges) == 1
    with pytest.raises(NotSimplePair):
        erase_handle(d, (3, 2))


def test_surgery_errors():
    t = torus_diagram()
    with pytest.raises(SameSector):
        bubble_handle(t, 0, 1, 1)
    d = figure_one()
    with pytest.raises(SignMismatchInPairing):
        bubble_handle(d, 0, 1, 3)
    with pytest.raises(LoopEdge):
        contract_saddle_connection(d, 1)


def _random_bubble(d, rng):
    vertex = rng.randrange(len(d.vertices))
    halves = d.vertices[vertex]
    outs = [h for h, x in halves if x == "out"]
    ins = [h for h, x in halves if x == "in"]
    b = bubble_handle(d, vertex, rng.choice(outs), rng.choice(ins))
    new = [pr for pr in b.pairing if pr not in d.pairing]
    assert len(new) == 1
    return b, new[0]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 9), st.sampled_from(["H", "O", "E", "T"]), st.integers(2, 4))
def test_bubble_erase_round_trip(seed, kind, g):
    rng = random.Random(seed)
    d = torus_diagram() if kind == "T" else make_canonical(kind, max(g, 3))
    b, pair = _random_bubble(d, rng)
    assert b.genus == d.genus + 1
    assert is_realizable(b)
    back, m = erase_handle(b, pair)
    assert back == d
    assert m == handle_angle(b, pair)


def test_parity_change_law():
    rng = random.Random(20261017)
    seen = 0
    for _ in range(80):
        d = rng.choice([torus_diagram(), make_canonical("H", 2), make_canonical("O", 3),
                        make_canonical("E", 3), make_canonical("E", 4)])
        b, pair = _random_bubble(d, rng)
        m = handle_angle(b, pair)
        assert (parity(b) - parity(d)) % 2 == (m + 1) % 2
        seen += 1
    assert seen >= 50


def test_rotate_handle():
    d = make_canonical("O", 4)
    simple = []
    for pr in d.pairing:
        try:
            handle_angle(d, pr)
            simple.append(pr)
        except NotSimplePair:
            pass
    assert simple
    pair = simple[0]
    n = len(d.vertices[0])
    assert rotate_handle(d, pair, 0) == d
    assert rotate_handle(d, pair, n - 4) == d
    loop_halves = {h for f in pair for e in d.faces[f] for h in d.edge_of[e]}
    for steps in range(1, n - 4):
        r = rotate_handle(d, pair, steps)
        # petals may switch ends of their loops when the sector type flips
        moved = next(pr for pr in r.pairing
                     if all(set(r.faces[f]) <= loop_halves for f in pr))
        a = handle_angle(d, pair)
        # measured around one sector or the complementary one
        assert handle_angle(r, moved) in (a, (n - 2) // 2 - a)
        assert parity(r) == parity(d)


def test_contract_merges_zeros():
    d, lengths = horizontal_diagram(suspend(reversal(5)))
    assert len(d.vertices) == 2 and sorted(d.degrees) == [1, 1]
    link = next(e for e in d.edges if d.vertex_of[e[0]] != d.vertex_of[e[1]])
    c = contract_saddle_connection(d, link[0])
    s = diagram_to_surface(c)
    assert singularity_profile(s).stratum == (2,)
    label, _ = classify_surface(s)
    assert label.tag == "hyperelliptic"


def test_torus_surface():
    s = diagram_to_surface(torus_diagram())
    assert (s.n_squares, s.h, s.v) == (1, (1,), (1,))


def test_horizontal_and_vertical_diagrams():
    s = suspend(reversal(6))
    d, lengths = horizontal_diagram(s)
    assert d.degrees == (4,) and is_hyperelliptic_diagram(d)
    assert sum(lengths.values()) > 0
    dv, _ = vertical_diagram(s)
    assert dv.genus == 3
