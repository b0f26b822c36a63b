"""Rauzy classes, extended Rauzy classes and the census of strata.

Members of a class are kept as a sorted tuple of permutations
(lexicographic on image sequences), so two classes are equal exactly when
their member tuples are.
"""

import hashlib
import os
from collections import deque
from dataclasses import dataclass
from itertools import permutations

from .errors import LetterCountMismatch, MemoryCapExceeded, OutOfRange, UsageError
from .perm import (
    Permutation,
    _a,
    _a_inv,
    _ad,
    _b,
    _b_inv,
    _degenerate,
    _irreducible,
    parse_permutation,
    require_admissible,
)

CAP_ENV = "STRATA_MEMBER_CAP"
DEFAULT_CAP = 5_000_000
DEFAULT_LETTER_CAP = 9

_FORWARD = {"a": _a, "b": _b, "d": _ad}
_BACKWARD = {"a": _a_inv, "b": _b_inv, "d": _ad}


def member_cap():
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise UsageError(f"{CAP_ENV} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise UsageError(f"{CAP_ENV} must be positive")
    return cap


@dataclass(frozen=True)
class ExtendedRauzyClass:
    m: int
    members: tuple
    generators: str = "abd"

    def __post_init__(self):
        gens = "".join(g for g in "abd" if g in self.generators)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "members", tuple(sorted(Permutation(x) for x in self.members)))

    def __len__(self):
        return len(self.members)

    def __contains__(self, p):
        p = tuple(p)
        members = self.members
        lo, hi = 0, len(members)
        while lo < hi:
            mid = (lo + hi) // 2
            if members[mid] < p:
                lo = mid + 1
            else:
                hi = mid
        return lo < len(members) and members[lo] == p

    def is_closed(self):
        moves = [_FORWARD[g] for g in self.generators]
        return all(f(tuple(x)) in self for x in self.members for f in moves)

    def digest(self):
        h = hashlib.sha256()
        for x in self.members:
            h.update(x.text().encode())
            h.update(b"\n")
        return h.hexdigest()

    def to_text(self, profile=()):
        head = (f"m={self.m} generators={self.generators} count={len(self.members)} "
                f"profile={','.join(map(str, profile))}")
        return "\n".join([head] + [x.text() for x in self.members]) + "\n"

    @classmethod
    def from_text(cls, text):
        """Parse a class file; returns ``(class, profile)``."""
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise UsageError("empty class file")
        fields = {}
        for tok in lines[0].split():
            key, sep, val = tok.partition("=")
            if not sep:
                raise UsageError(f"bad class file header token {tok!r}")
            fields[key] = val
        try:
            m = int(fields["m"])
            count = int(fields["count"])
            gens = fields["generators"]
            prof = tuple(int(x) for x in fields.get("profile", "").split(",") if x)
        except (KeyError, ValueError) as exc:
            raise UsageError(f"bad class file header: {exc}") from None
        members = [parse_permutation(ln) for ln in lines[1:]]
        if len(members) != count:
            raise UsageError(f"header says {count} members, found {len(members)}")
        if any(len(x) != m for x in members):
            raise UsageError("member with the wrong letter count")
        if list(members) != sorted(members):
            raise UsageError("members are not sorted")
        return cls(m, tuple(members), gens), prof


def _orbit(t, moves, cap):
    seen = {t}
    queue = deque([t])
    while queue:
        x = queue.popleft()
        for f in moves:
            y = f(x)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise MemoryCapExceeded(f"class exceeds the member cap {cap}")
                queue.append(y)
    return seen


def closure(p, generators="abd", cap=None):
    p = require_admissible(p)
    cap = member_cap() if cap is None else cap
    moves = [_FORWARD[g] for g in "abd" if g in generators]
    return ExtendedRauzyClass(len(p), tuple(_orbit(tuple(p), moves, cap)), generators)


def rauzy_class(p, cap=None):
    return closure(p, "ab", cap)


def extended_rauzy_class(p, cap=None):
    return closure(p, "abd", cap)


def same_component(p1, p2, cap=None):
    """Bidirectional search: forward moves from p1, inverse moves from p2."""
    p1, p2 = require_admissible(p1), require_admissible(p2)
    if len(p1) != len(p2):
        raise LetterCountMismatch(f"{len(p1)} letters vs {len(p2)} letters")
    cap = member_cap() if cap is None else cap
    s, t = tuple(p1), tuple(p2)
    if s == t:
        return True
    sides = [({s}, deque([s]), list(_FORWARD.values())),
             ({t}, deque([t]), list(_BACKWARD.values()))]
    while sides[0][1] and sides[1][1]:
        # expand the smaller frontier by one full layer
        i = 0 if len(sides[0][1]) <= len(sides[1][1]) else 1
        seen, queue, moves = sides[i]
        other = sides[1 - i][0]
        for _ in range(len(queue)):
            x = queue.popleft()
            for f in moves:
                y = f(x)
                if y in other:
                    return True
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        if len(sides[0][0]) + len(sides[1][0]) > cap:
            raise MemoryCapExceeded(f"search exceeds the member cap {cap}")
    return False


# -- census ---------------------------------------------------------------------

@dataclass(frozen=True)
class CensusRow:
    m: int
    profile: tuple
    class_count: int
    class_sizes: tuple

    @property
    def genus(self):
        return sum(self.profile) // 2 + 1

    def to_line(self):
        prof = "[" + ",".join(map(str, self.profile)) + "]"
        sizes = ",".join(map(str, self.class_sizes))
        return f"{self.m}\t{prof}\t{self.class_count}\t{sizes}"


@dataclass
class CensusResult:
    rows: list
    classes: list  # (profile, sorted member tuple) per nondegenerate class

    def row(self, profile):
        return next((r for r in self.rows if r.profile == tuple(profile)), None)


def partition_classes(m, cap=None):
    """All extended classes of irreducible permutations on m letters.

    One pass of union-find over the edges x - a(x), x - b(x), x - Ad(x),
    seeds taken in lexicographic order.  Returns lists of members, each list
    sorted, ordered by smallest member.
    """
    cap = member_cap() if cap is None else cap
    index = {}
    nodes = []
    for t in permutations(range(1, m + 1)):
        if _irreducible(t):
            index[t] = len(nodes)
            nodes.append(t)
            if len(nodes) > cap:
                raise MemoryCapExceeded(f"more than {cap} irreducible permutations")
    parent = list(range(len(nodes)))

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for i, t in enumerate(nodes):
        for f in (_a, _b, _ad):
            j = index[f(t)]
            ri, rj = find(i), find(j)
            if ri != rj:
                if ri < rj:
                    parent[rj] = ri
                else:
                    parent[ri] = rj
    groups = {}
    for i, t in enumerate(nodes):
        groups.setdefault(find(i), []).append(t)
    return [groups[r] for r in sorted(groups)]


def census(m, letter_cap=DEFAULT_LETTER_CAP, cap=None, check_members=None):
    """Partition nondegenerate permutations into extended classes by profile.

    ``check_members`` (default: m <= 8) re-derives degeneracy and profile on
    every member and asserts they are constant on the class; otherwise only
    the smallest member is examined.
    """
    from .surface import permutation_profile

    if m < 2:
        raise OutOfRange(f"census needs m >= 2, got {m}")
    if m > letter_cap:
        raise MemoryCapExceeded(f"m={m} exceeds the letter cap {letter_cap}")
    if check_members is None:
        check_members = m <= 8
    by_profile = {}
    classes = []
    for members in partition_classes(m, cap):
        rep = members[0]
        degenerate = _degenerate(rep)
        profile = permutation_profile(rep).stratum
        if check_members:
            for x in members:
                assert _degenerate(x) == degenerate, f"degeneracy not constant at {x}"
                if not degenerate:
                    assert permutation_profile(x).stratum == profile, f"profile jump at {x}"
        if degenerate:
            continue
        classes.append((profile, tuple(Permutation(x) for x in members)))
        by_profile.setdefault(profile, []).append(len(members))
    rows = [CensusRow(m, prof, len(sizes), tuple(sorted(sizes)))
            for prof, sizes in sorted(by_profile.items(), reverse=True)]
    return CensusResult(rows, classes)
