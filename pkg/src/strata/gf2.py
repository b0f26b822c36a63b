"""Symplectic reduction and Arf invariant over the two-element field.

Vectors are Python ints used as bit sets.  The bilinear form and the
quadratic form are passed as callables so that the same reduction serves
both the permutation route (form Omega mod 2 on coordinate vectors) and the
surface route (intersection of grid cycles, winding numbers).
"""

from dataclasses import dataclass, field


@dataclass
class SymplecticSplit:
    """Result of splitting a spanning set into hyperbolic pairs + radical."""

    pairs: list = field(default_factory=list)
    radical: list = field(default_factory=list)

    @property
    def rank(self):
        return 2 * len(self.pairs)


def symplectic_split(vectors, lift):
    """Pairing-and-elimination.

    The form is given through a linear ``lift`` with
    B(x, y) = parity(lift(x) & y); it must be alternating on the span of
    ``vectors``.  Repeatedly pick x, y with B(x, y) = 1, record the pair and
    project the remaining vectors off span(x, y).  Whatever is left pairs
    trivially with everything and spans the radical (zero vectors are
    dropped).  Deterministic given the input order.
    """
    work = [v for v in vectors if v]
    split = SymplecticSplit()
    while work:
        x = work.pop(0)
        lx = lift(x)
        j = next((i for i, y in enumerate(work) if (lx & y).bit_count() & 1), None)
        if j is None:
            # x is orthogonal to everything that is left; every earlier pair
            # was projected away, so it lies in the radical
            split.radical.append(x)
            continue
        y = work.pop(j)
        ly = lift(y)
        split.pairs.append((x, y))
        rest = []
        for z in work:
            # z <- z + B(z,y) x + B(z,x) y  (signs vanish mod 2)
            bzy = (ly & z).bit_count() & 1
            bzx = (lx & z).bit_count() & 1
            if bzy:
                z ^= x
            if bzx:
                z ^= y
            if z:
                rest.append(z)
        work = rest
    return split


def form_from_lift(lift):
    return lambda x, y: (lift(x) & y).bit_count() & 1


def reduce_radical(vectors):
    """Independent subset of ``vectors`` (Gaussian elimination)."""
    basis = {}
    out = []
    for v in vectors:
        w = v
        while w:
            top = w.bit_length() - 1
            if top in basis:
                w ^= basis[top]
            else:
                basis[top] = w
                out.append(v)
                break
    return out


def arf(split, q):
    """Arf invariant sum q(a_i) q(b_i) over the hyperbolic pairs."""
    return sum(q(a) * q(b) for a, b in split.pairs) % 2


def popcount(x):
    return x.bit_count()
