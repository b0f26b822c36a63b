"""Exact interval exchange transformations.

Lengths and points are :class:`fractions.Fraction`; intervals are half-open,
``I_i = [beta_{i-1}, beta_i)``, which settles which side of a breakpoint a
point belongs to.
"""

import json
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    HitSingularOrbit,
    NonPositiveLength,
    OutOfDomain,
    PartitionAuditFailed,
    Reducible,
    TieAtStep,
    UsageError,
)
from .perm import Permutation, _a, _b, _irreducible, omega_matrix


def parse_rational(text):
    """Parse ``"p/q"`` or an integer string; no decimals."""
    if isinstance(text, int):
        return Fraction(text)
    s = str(text).strip()
    if "." in s or "e" in s.lower():
        raise UsageError(f"rationals must be written p/q, got {text!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad rational {text!r}") from None


def format_rational(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class IntervalExchange:
    pi: Permutation
    lengths: tuple

    @property
    def m(self):
        return len(self.pi)

    @property
    def breakpoints(self):
        out = [Fraction(0)]
        for x in self.lengths:
            out.append(out[-1] + x)
        return tuple(out)

    @property
    def total(self):
        return sum(self.lengths, Fraction(0))

    @property
    def translations(self):
        om = omega_matrix(self.pi)
        return tuple(sum((om[i][j] * self.lengths[j] for j in range(self.m)), Fraction(0))
                     for i in range(self.m))

    def to_json(self):
        return json.dumps({"pi": list(self.pi),
                           "lambda": [format_rational(x) for x in self.lengths]}) + "\n"

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
            pi, lam = data["pi"], data["lambda"]
        except (ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"bad exchange JSON: {exc}") from None
        return build_iet(pi, [parse_rational(x) for x in lam])


def _audit(T):
    """Images of the intervals must tile [0, |I|) exactly."""
    beta, delta = T.breakpoints, T.translations
    images = sorted((beta[i] + delta[i], beta[i + 1] + delta[i], i) for i in range(T.m))
    pos = Fraction(0)
    for lo, hi, i in images:
        if lo != pos:
            raise PartitionAuditFailed(f"gap or overlap at {lo} (interval {i + 1})")
        pos = hi
    if pos != T.total:
        raise PartitionAuditFailed(f"images end at {pos}, not {T.total}")
    # image of I_i starts where the intervals placed before it end
    order = sorted(range(T.m), key=lambda i: T.pi[i])
    start = Fraction(0)
    for i in order:
        if beta[i] + delta[i] != start:
            raise PartitionAuditFailed(f"interval {i + 1} lands at the wrong place")
        start += T.lengths[i]


def build_iet(pi, lengths):
    pi = Permutation(pi)
    if len(pi) < 2 or not _irreducible(pi):
        raise Reducible(f"reducible permutation {pi.text()}")
    lam = tuple(Fraction(x) for x in lengths)
    if len(lam) != len(pi):
        raise UsageError(f"{len(lam)} lengths for {len(pi)} intervals")
    if any(x <= 0 for x in lam):
        raise NonPositiveLength("all lengths must be positive")
    T = IntervalExchange(pi, lam)
    _audit(T)
    return T


def _index(T, x):
    beta = T.breakpoints
    if not 0 <= x < beta[-1]:
        raise OutOfDomain(f"{x} is outside [0, {beta[-1]})")
    return bisect_right(beta, x) - 1


def apply(T, x):
    x = Fraction(x)
    return x + T.translations[_index(T, x)]


def singular_points(T):
    """Interior breakpoints where T is discontinuous as a map of the circle.

    At beta_i the left limit is beta_i + delta_i and the value is
    beta_i + delta_{i+1}.  When the two agree modulo |I| (a rotation, say)
    the orbit goes on unambiguously; otherwise the point is singular.
    """
    beta, delta, total = T.breakpoints, T.translations, T.total
    return frozenset(beta[i] for i in range(1, T.m)
                     if (delta[i - 1] - delta[i]) % total != 0)


def orbit(T, x, n):
    """``[x, T x, ..., T^n x]``; refuses to step from a singular point."""
    x = Fraction(x)
    bad = singular_points(T)
    delta = T.translations
    out = [x]
    _index(T, x)
    for step in range(n):
        if x in bad:
            raise HitSingularOrbit(step, x)
        x = x + delta[_index(T, x)]
        out.append(x)
    return out


def rauzy_step(T):
    """One step of Rauzy induction at the right end.

    The last interval in domain order (letter m) is compared with the last
    one in image order (letter pi^-1(m)); the shorter one is cut off the
    longer one and the exchange is induced on what remains.  When the
    domain side wins only the image order changes, which is the move ``b``
    in this module's one-line convention.  When the image side wins the
    domain order changes (move ``a``) and the lengths are carried along:
    the last interval moves to just after the slot of m.
    """
    m = T.m
    t = tuple(T.pi)
    last = m - 1
    lost = t.index(m)
    lam = list(T.lengths)
    if lam[last] == lam[lost]:
        raise TieAtStep(f"lambda_{m} = lambda_{lost + 1}")
    if lam[last] > lam[lost]:
        lam[last] -= lam[lost]
        return build_iet(_b(t), lam)
    lam[lost] -= lam[last]
    lam = lam[:lost + 1] + [lam[last]] + lam[lost + 1:-1]
    return build_iet(_a(t), lam)
