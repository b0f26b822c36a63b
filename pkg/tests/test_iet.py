from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings, strategies as st

from strata.errors import (
    HitSingularOrbit,
    NonPositiveLength,
    OutOfDomain,
    Reducible,
    TieAtStep,
    UsageError,
)
from strata.iet import (
    IntervalExchange,
    apply,
    build_iet,
    format_rational,
    orbit,
    parse_rational,
    rauzy_step,
    singular_points,
)
from strata.perm import Permutation, is_irreducible


def rotation():
    return build_iet((2, 1), (F(1, 3), F(2, 3)))


def test_translations():
    assert rotation().translations == (F(2, 3), F(-1, 3))
    assert build_iet((4, 3, 2, 1), (1, 1, 1, 1)).translations == (3, 1, -1, -3)
    with pytest.raises(Reducible):
        build_iet((1, 2), (1, 1))
    with pytest.raises(NonPositiveLength):
        build_iet((2, 1), (1, 0))
    with pytest.raises(UsageError):
        build_iet((2, 1), (1, 1, 1))


def test_apply():
    T = rotation()
    assert apply(T, 0) == F(2, 3)
    assert apply(T, F(1, 2)) == F(1, 6)
    with pytest.raises(OutOfDomain):
        apply(T, 1)
    with pytest.raises(OutOfDomain):
        apply(T, F(-1, 5))


def test_orbit():
    T = rotation()
    assert orbit(T, 0, 3) == [0, F(2, 3), F(1, 3), 0]
    assert orbit(T, F(1, 7), 0) == [F(1, 7)]
    # the rotation is continuous on the circle, so nothing is singular
    assert singular_points(T) == frozenset()


def test_orbit_hits_singularity():
    T = build_iet((3, 2, 1), (1, 1, 1))
    assert singular_points(T) == {1, 2}
    with pytest.raises(HitSingularOrbit) as info:
        orbit(T, 1, 4)
    assert info.value.step == 0
    # 1/2 -> 5/2 -> 1/2 ... never singular
    assert orbit(T, F(1, 2), 2) == [F(1, 2), F(5, 2), F(1, 2)]
    # 0 -> 2, and 2 is a breakpoint
    with pytest.raises(HitSingularOrbit) as info:
        orbit(T, 0, 3)
    assert info.value.step == 1


def test_rauzy_step_examples():
    S = rauzy_step(rotation())
    assert S.pi == (2, 1) and S.lengths == (F(1, 3), F(1, 3))
    with pytest.raises(TieAtStep):
        rauzy_step(build_iet((2, 1), (1, 1)))


def test_rationals():
    assert parse_rational("3/6") == F(1, 2)
    assert parse_rational("-2") == -2
    assert format_rational(F(4, 2)) == "2/1"
    for bad in ("0.5", "1e3", "x", "1/0"):
        with pytest.raises(UsageError):
            parse_rational(bad)


@st.composite
def exchanges(draw, max_m=6):
    m = draw(st.integers(2, max_m))
    pi = tuple(draw(st.permutations(range(1, m + 1))))
    assume(is_irreducible(Permutation(pi)))
    lam = draw(st.lists(st.fractions(min_value=F(1, 30), max_value=5, max_denominator=30),
                        min_size=m, max_size=m))
    return build_iet(pi, lam)


@given(exchanges())
def test_images_tile_the_interval(T):
    # independent of the audit: push each interval through apply
    pieces = sorted((apply(T, T.breakpoints[i]), T.lengths[i]) for i in range(T.m))
    pos = F(0)
    for start, length in pieces:
        assert start == pos
        pos += length
    assert pos == T.total


@given(exchanges())
def test_json_round_trip(T):
    assert IntervalExchange.from_json(T.to_json()) == T


def _first_return(T, J, x):
    y = apply(T, x)
    while y >= J:
        y = apply(T, y)
    return y


@settings(max_examples=80, deadline=None)
@given(exchanges(), st.lists(st.fractions(min_value=0, max_value=1, max_denominator=97),
                             min_size=1, max_size=8))
def test_rauzy_step_is_first_return(T, fractions):
    lam = T.lengths
    assume(lam[-1] != lam[T.pi.index(T.m)])
    S = rauzy_step(T)
    J = S.total
    assert J == T.total - min(lam[-1], lam[T.pi.index(T.m)])
    for f in fractions:
        x = f * J
        if x >= J:
            continue
        assert apply(S, x) == _first_return(T, J, x)
