"""Exchange permutations and the Rauzy moves.

A permutation is stored in one-line image notation, 1-based: ``p[k-1]`` is
the place where the ``k``-th interval lands.  Transposed data (the inverse
convention) describes the same surface with the roles of domain and image
swapped; nothing here depends on that choice except the direction of the
maps ``a`` and ``b``.

The move functions prefixed with an underscore work on raw tuples and skip
validation; the orbit enumerator calls them millions of times.
"""

from fractions import Fraction

from .errors import Degenerate, Empty, NotABijection, NotStandard, OutOfRange, Reducible


class Permutation(tuple):
    """Immutable one-line permutation of ``1..m``."""

    __slots__ = ()

    def __new__(cls, images):
        t = tuple(int(x) for x in images)
        if not t:
            raise Empty("empty permutation")
        if sorted(t) != list(range(1, len(t) + 1)):
            raise NotABijection(f"not a bijection of 1..{len(t)}: {' '.join(map(str, t))}")
        return super().__new__(cls, t)

    @property
    def m(self):
        return len(self)

    @property
    def images(self):
        return tuple(self)

    def __call__(self, k):
        return self[k - 1]

    def inverse(self):
        inv = [0] * len(self)
        for i, x in enumerate(self):
            inv[x - 1] = i + 1
        return Permutation(inv)

    def compose(self, other):
        """``self`` after ``other`` (right to left)."""
        return Permutation(self[x - 1] for x in other)

    def text(self):
        return " ".join(map(str, self))

    def __repr__(self):
        return f"Permutation({self.text()})"


def parse_permutation(text):
    tokens = text.split()
    if not tokens:
        raise Empty("no tokens")
    try:
        values = [int(tok) for tok in tokens]
    except ValueError:
        raise NotABijection(f"non-integer token in {text!r}") from None
    return Permutation(values)


def identity(m):
    return Permutation(range(1, m + 1))


def reversal(m):
    """The permutation ``(m, m-1, ..., 1)``."""
    return Permutation(range(m, 0, -1))


# -- predicates ---------------------------------------------------------------

def _irreducible(t):
    top = 0
    for k, x in enumerate(t[:-1], 1):
        if x > top:
            top = x
        if top == k:
            return False
    return True


def is_irreducible(p):
    return _irreducible(tuple(p))


def _meets_conditions(t):
    m = len(t)
    first, last = t[0], t[-1]
    for j in range(m - 1):
        x, y = t[j], t[j + 1]
        if x == m and y == 1 and first == last + 1:
            return True
        if y == 1 and first == x + 1:
            return True
        if y == last + 1 and x == m:
            return True
    return False


def meets_degeneracy_conditions(p):
    """The three local conditions (i)-(iii) on neighbouring letters.

    These are sufficient for a removable zero but not necessary, and they are
    not constant along Rauzy classes: the class of (2,3,5,1,4) has 46
    members of which 18 satisfy them.  :func:`is_degenerate` uses the
    class-invariant criterion instead.
    """
    if not _irreducible(tuple(p)):
        raise Reducible(f"reducible permutation {Permutation(p).text()}")
    return _meets_conditions(tuple(p))


def vertex_rays(t):
    """Cone angles (in units of 2 pi) of the suspension's vertex classes.

    Top vertices T_0..T_m and bottom vertices B_0..B_m of the suspension
    polygon are identified by the side gluings (top side j runs
    T_{j-1} -> T_j and is glued to B_{pi(j)-1} -> B_{pi(j)}) together with
    T_0 = B_0 and T_m = B_m.  A class of cone angle 2 pi L sends L downward
    vertical rays into the polygon, one from each interior top vertex.
    """
    m = len(t)
    parent = list(range(2 * m + 2))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    b0 = m + 1
    union(0, b0)
    union(m, b0 + m)
    for j in range(1, m + 1):
        union(j - 1, b0 + t[j - 1] - 1)
        union(j, b0 + t[j - 1])
    down = {}
    for k in range(1, m):
        r = find(k)
        down[r] = down.get(r, 0) + 1
    up = {}
    for k in range(1, m):
        r = find(b0 + k)
        up[r] = up.get(r, 0) + 1
    assert down == up, "ray count mismatch"
    return sorted(down.values(), reverse=True)


def _degenerate(t):
    # a vertex of angle 2 pi is a removable zero
    return 1 in vertex_rays(t)


def is_degenerate(p):
    """True when the suspension carries a removable (angle 2 pi) zero.

    Every permutation meeting the local conditions (i)-(iii) is degenerate
    in this sense, and a class is degenerate exactly when one of its
    members meets them.
    """
    if not _irreducible(tuple(p)):
        raise Reducible(f"reducible permutation {Permutation(p).text()}")
    return _degenerate(tuple(p))


def require_admissible(p):
    """Irreducible and nondegenerate, or raise."""
    p = Permutation(p)
    if len(p) < 2 or not _irreducible(p):
        raise Reducible(f"reducible permutation {p.text()}")
    if _degenerate(p):
        raise Degenerate(f"degenerate permutation {p.text()}")
    return p


# -- intersection matrix ------------------------------------------------------

def omega_matrix(p):
    m = len(p)
    om = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            if p[i] > p[j]:
                om[i][j] = 1
                om[j][i] = -1
    return om


def rank_q(matrix):
    """Rank over the rationals, by exact elimination."""
    rows = [[Fraction(x) for x in row] for row in matrix]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        piv = rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / piv[col]
                rows[r] = [a - f * b for a, b in zip(rows[r], piv)]
        rank += 1
    return rank


def genus(p):
    """Half the rank of the intersection matrix."""
    return rank_q(omega_matrix(p)) // 2


# -- the maps tau_k, a, b, Ad ------------------------------------------------

def tau(k, m):
    if not 1 <= k <= m - 1:
        raise OutOfRange(f"tau_k needs 1 <= k <= m-1, got k={k}, m={m}")
    return Permutation(list(range(1, k + 1)) + list(range(k + 2, m + 1)) + [k + 1])


def _a(t):
    p = t.index(len(t))
    return t[:p + 1] + (t[-1],) + t[p + 1:-1]


def _b(t):
    m = len(t)
    q = t[-1]
    return tuple(x if x <= q else (x + 1 if x < m else q + 1) for x in t)


def _ad(t):
    m = len(t)
    return tuple(m + 1 - t[m - 1 - j] for j in range(m))


def _a_inv(t):
    # a only rotates the letters to the right of the slot of m
    p = t.index(len(t))
    return t[:p + 1] + t[p + 2:] + (t[p + 1],)


def _b_inv(t):
    m = len(t)
    q = t[-1]
    return tuple(x if x <= q else (x - 1 if x > q + 1 else m) for x in t)


def _checked(p):
    p = Permutation(p)
    if not _irreducible(p):
        raise Reducible(f"reducible permutation {p.text()}")
    return p


def rauzy_a(p):
    return Permutation(_a(_checked(p)))


def rauzy_b(p):
    return Permutation(_b(_checked(p)))


def rauzy_a_inverse(p):
    return Permutation(_a_inv(_checked(p)))


def rauzy_b_inverse(p):
    return Permutation(_b_inv(_checked(p)))


def ad_pi0(p):
    return Permutation(_ad(tuple(p)))


# -- standard permutations -----------------------------------------------------

def is_standard(p):
    return p[0] == len(p) and p[-1] == 1


def standardize_moves(p):
    """Greedy a/b word bringing ``p`` to a standard permutation.

    Whichever of pi(m), pi^{-1}(m) is larger gets moved: ``a`` rotates the
    value of the last letter, ``b`` moves the slot of ``m``.  Ties go to
    ``a``.  Each phase strictly lowers min(pi(m), pi^{-1}(m)), so the loop
    ends; the guard only catches programming errors.  Only irreducibility
    is needed, so degenerate permutations are accepted here.
    """
    t = tuple(Permutation(p))
    if len(t) < 2 or not _irreducible(t):
        raise Reducible(f"reducible permutation {Permutation(t).text()}")
    m = len(t)
    word = []
    for _ in range(m * m * 4 + 4):
        if t[0] == m and t[-1] == 1:
            return Permutation(t), "".join(word)
        if t[-1] >= t.index(m) + 1:
            t = _a(t)
            word.append("a")
        else:
            t = _b(t)
            word.append("b")
    raise AssertionError(f"standardize did not terminate on {p}")


def standardize(p):
    return standardize_moves(p)[0]


def interior_restriction(p):
    p = Permutation(p)
    m = len(p)
    if m < 4 or not is_standard(p):
        raise NotStandard(f"{p.text()} is not standard with m >= 4")
    return Permutation(x - 1 for x in p[1:-1])


def _split_point(t):
    """Largest k < len(t) with t({1..k}) = {1..k}, or 0."""
    top, best = 0, 0
    for k, x in enumerate(t[:-1], 1):
        top = max(top, x)
        if top == k:
            best = k
    return best


def _left_b(t):
    # the b move performed at the left end of the intervals: Ad b Ad
    return _ad(_b(_ad(t)))


def reduce_interior(p, trace=None):
    """Standard member of the extended class with irreducible interior.

    Loop: standardize, look at the interior restriction, and while it splits
    rearrange: one ``a`` move (the letters after the slot of m advance one
    step) followed by pi(m-1) - 1 ``b`` moves made from the left end.  The
    result is standard again and the rightmost split point of the interior
    strictly increases from one round to the next.  ``trace``, if given,
    collects ``(permutation, split)`` per round.
    """
    t = tuple(standardize(require_admissible(p)))
    m = len(t)
    if m < 4:
        return Permutation(t)
    last_split = 0
    for _ in range(m):
        inner = tuple(x - 1 for x in t[1:-1])
        split = _split_point(inner)
        if trace is not None:
            trace.append((Permutation(t), split))
        if split == 0:
            return Permutation(t)
        if split <= last_split:
            raise AssertionError(f"no progress in reduce_interior at {t}")
        last_split = split
        steps = t[m - 2] - 1
        t = _a(t)
        for _ in range(steps):
            t = _left_b(t)
        if not (t[0] == m and t[-1] == 1):
            raise AssertionError(f"reduce_interior left the standard set at {t}")
    raise AssertionError(f"reduce_interior did not terminate on {p}")
