from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from strata.errors import Degenerate, LetterCountMismatch, MemoryCapExceeded, UsageError
from strata.perm import Permutation, ad_pi0, is_degenerate, is_irreducible, reversal
from strata.rauzy import (
    ExtendedRauzyClass,
    census,
    closure,
    extended_rauzy_class,
    partition_classes,
    rauzy_class,
    same_component,
)
from strata.surface import permutation_profile

P = Permutation

# total number of components of strata with 2g + n - 1 = m
COMPONENT_TOTALS = {4: 1, 5: 1, 6: 2, 7: 3, 8: 4, 9: 6}


def test_rauzy_class_examples():
    with pytest.raises(Degenerate):
        rauzy_class(P((2, 1)))
    c = rauzy_class(reversal(4))
    assert P((4, 1, 3, 2)) in c and P((2, 4, 3, 1)) in c
    assert c.is_closed()


def test_all_of_s4_in_one_extended_class():
    admissible = {t for t in permutations(range(1, 5))
                  if is_irreducible(P(t)) and not is_degenerate(P(t))}
    assert set(extended_rauzy_class(reversal(4)).members) == admissible


def test_extended_contains_rauzy():
    for m in (5, 6):
        p = reversal(m)
        assert set(rauzy_class(p).members) <= set(extended_rauzy_class(p).members)


def test_same_component():
    assert same_component(reversal(4), P((4, 1, 3, 2)))
    p = P((4, 1, 3, 2))
    assert same_component(p, ad_pi0(p))
    classes = [members for profile, members in census(6).classes]
    assert len(classes) == 2
    assert not same_component(classes[0][0], classes[1][0])
    assert not same_component(classes[1][-1], classes[0][-1])
    with pytest.raises(LetterCountMismatch):
        same_component(reversal(4), reversal(6))


@pytest.mark.parametrize("m", range(4, 10))
def test_census_totals(m):
    rows = census(m).rows
    assert sum(r.class_count for r in rows) == COMPONENT_TOTALS[m]
    assert all(r.genus == (sum(r.profile) // 2) + 1 for r in rows)


def test_census_rows_format():
    row = census(6).row((4,))
    assert row.class_count == 2
    assert row.to_line().split("\t")[:3] == ["6", "[4]", "2"]


@pytest.mark.parametrize("m", [5, 6, 7])
def test_classes_seed_independent(m):
    for group in partition_classes(m):
        if is_degenerate(P(group[0])):
            continue
        seeds = {group[0], group[-1], group[len(group) // 2]}
        sets = {extended_rauzy_class(P(s)).members for s in seeds}
        assert len(sets) == 1
        assert list(next(iter(sets))) == sorted(group)


@pytest.mark.parametrize("m", [5, 6, 7])
def test_profile_constant_on_classes(m):
    for profile, members in census(m).classes:
        assert {permutation_profile(x).stratum for x in members} == {profile}


def test_class_file_round_trip(tmp_path):
    c = extended_rauzy_class(reversal(6))
    text = c.to_text((4,))
    back, profile = ExtendedRauzyClass.from_text(text)
    assert back == c and profile == (4,)
    assert back.digest() == c.digest()
    assert text.splitlines()[0] == f"m=6 generators=abd count={len(c)} profile=4"


def test_class_file_rejects_bad_header():
    with pytest.raises(UsageError):
        ExtendedRauzyClass.from_text("m=4 count=2\n4 3 2 1\n")
    with pytest.raises(UsageError):
        ExtendedRauzyClass.from_text("m=4 generators=abd count=3 profile=2\n4 3 2 1\n")


def test_member_cap():
    with pytest.raises(MemoryCapExceeded):
        closure(reversal(6), cap=10)
    with pytest.raises(MemoryCapExceeded):
        census(10)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(census(7).classes), st.data())
def test_membership_agrees_with_partition(cls, data):
    profile, members = cls
    c = extended_rauzy_class(P(members[0]))
    x = data.draw(st.sampled_from(members))
    assert x in c
    assert same_component(P(members[0]), P(x))
    assert c.is_closed()


def test_hyperelliptic_class_size():
    # the class of the reversal has 2^(m-1) - 1 members, by a direct count
    for m in range(4, 10):
        assert len(rauzy_class(reversal(m))) == 2 ** (m - 1) - 1
        assert len(extended_rauzy_class(reversal(m))) == 2 ** (m - 1) - 1


# frozen census output
FROZEN = {
    7: ["7\t[3,1]\t1\t770", "7\t[2,2]\t2\t63,294"],
    8: ["8\t[6]\t3\t127,2327,5209", "8\t[2,1,1]\t1\t2177"],
    9: ["9\t[5,1]\t1\t41574", "9\t[4,2]\t2\t10568,23506", "9\t[3,3]\t2\t255,15568",
        "9\t[1,1,1,1]\t1\t1255"],
}


@pytest.mark.parametrize("m", sorted(FROZEN))
def test_census_frozen(m):
    assert [r.to_line() for r in census(m).rows] == FROZEN[m]
