"""Square-tiled surfaces: suspension, profile, winding numbers, spin parity.

A surface with ``n`` unit squares is a pair of permutations: ``h[i]`` is the
square to the right of square ``i`` and ``v[i]`` the square on top.  Labels
are 1-based in the public interface (and in JSON); the private helpers use
0-based lists.

Curves are drawn on the dual grid through square centres, so they never
meet a corner of a square and in particular never meet a cone point.
"""

import json
from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from . import gf2
from .errors import (
    Disconnected,
    NotClosed,
    OddDegreePresent,
    PathThroughConePoint,
    RadicalObstruction,
    UsageError,
)
from .perm import Permutation, omega_matrix, require_admissible, vertex_rays

# quarter-turn directions of the four ports of a square centre
EAST, NORTH, WEST, SOUTH = 0, 1, 2, 3
_MOVES = {"R": EAST, "U": NORTH, "L": WEST, "D": SOUTH}


def _inverse(f):
    inv = [0] * len(f)
    for i, x in enumerate(f):
        inv[x] = i
    return inv


def _cycles(f):
    seen = [False] * len(f)
    out = []
    for i in range(len(f)):
        if not seen[i]:
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = f[j]
            out.append(cyc)
    return out


@dataclass(frozen=True)
class StratumProfile:
    """Zero degrees, largest first, with degree-0 marked points kept."""

    degrees: tuple
    genus: int

    @property
    def stratum(self):
        """Degrees of the true zeros."""
        return tuple(k for k in self.degrees if k > 0)

    @property
    def n(self):
        return len(self.stratum)

    @property
    def all_even(self):
        return all(k % 2 == 0 for k in self.degrees)


@dataclass(frozen=True)
class SquareTiledSurface:
    n_squares: int
    h: tuple
    v: tuple

    def __post_init__(self):
        n = self.n_squares
        for name in ("h", "v"):
            perm = tuple(getattr(self, name))
            if len(perm) != n or sorted(perm) != list(range(1, n + 1)):
                raise UsageError(f"{name} is not a permutation of 1..{n}")
            object.__setattr__(self, name, perm)

    # 0-based views
    @cached_property
    def _h(self):
        return [x - 1 for x in self.h]

    @cached_property
    def _v(self):
        return [x - 1 for x in self.v]

    @cached_property
    def _hi(self):
        return _inverse(self._h)

    @cached_property
    def _vi(self):
        return _inverse(self._v)

    def is_connected(self):
        n = self.n_squares
        seen = {0}
        todo = [0]
        while todo:
            s = todo.pop()
            for t in (self._h[s], self._v[s], self._hi[s], self._vi[s]):
                if t not in seen:
                    seen.add(t)
                    todo.append(t)
        return len(seen) == n

    def corner_permutation(self):
        """Counterclockwise successor of the east ray at a lower-left corner.

        Starting at the lower-left corner of square t and turning around it
        counterclockwise one visits the lower-right corner of h^-1(t), the
        upper-right corner of v^-1 h^-1(t), the upper-left corner of
        h v^-1 h^-1(t), and then the lower-left corner of v h v^-1 h^-1(t).
        """
        h, v, hi, vi = self._h, self._v, self._hi, self._vi
        return [v[h[vi[hi[t]]]] for t in range(self.n_squares)]

    def corner_cycles(self):
        return _cycles(self.corner_permutation())

    def to_json(self):
        return json.dumps({"n": self.n_squares, "h": list(self.h), "v": list(self.v)},
                          sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        try:
            return cls(int(data["n"]), tuple(data["h"]), tuple(data["v"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"bad origami JSON: {exc}") from None


def torus():
    return SquareTiledSurface(1, (1,), (1,))


def singularity_profile(surface):
    if not surface.is_connected():
        raise Disconnected("the squares do not form a connected surface")
    cycles = surface.corner_cycles()
    degrees = tuple(sorted((len(c) - 1 for c in cycles), reverse=True))
    total = sum(degrees)
    assert total % 2 == 0
    g = total // 2 + 1
    # Euler characteristic: V - E + F with E = 2N, F = N
    assert len(cycles) - surface.n_squares == 2 - 2 * g, "Euler characteristic mismatch"
    return StratumProfile(degrees, g)


# -- suspension ---------------------------------------------------------------

# generic offset of the sample point inside each unit square; any rational
# point off the lines x in Z, y in Z and off the polygon sides would do
_DX = Fraction(1, 2) + Fraction(1, 1009)
_DY = Fraction(1, 2) + Fraction(1, 1013)


def _admissible_heights(tau, order):
    # top partial sums positive, bottom partial sums negative (except the ends)
    s = 0
    for x in tau[:-1]:
        s += x
        if s < 1:
            return False
    s = 0
    for k in order[:-1]:
        s += tau[k]
        if s > -1:
            return False
    return True


def shrink_heights(p, order=None):
    """Small integer suspension heights for ``p``.

    Starts from tau_j = pi(j) - j, which is always admissible, and walks each
    entry towards zero for as long as the partial-sum conditions hold.  The
    admissible set is convex, so every choice gives a surface in the same
    component; small entries just mean fewer squares.
    """
    m = len(p)
    if order is None:
        order = [0] * m
        for j in range(m):
            order[p[j] - 1] = j
    tau = [p[j] - (j + 1) for j in range(m)]
    changed = True
    while changed:
        changed = False
        for j in range(m):
            while tau[j]:
                step = 1 if tau[j] > 0 else -1
                tau[j] -= step
                if _admissible_heights(tau, order):
                    changed = True
                else:
                    tau[j] += step
                    break
    return tau


class _Polygon:
    """Integer suspension polygon over (pi, lambda = 1).

    Sides are zeta_j = (1, tau_j) with tau from :func:`shrink_heights`.  The top broken
    line takes the sides in domain order, the bottom one in image order; top
    side j is glued to bottom side j by a translation.  Both lines are graphs
    over [0, m], so the polygon is {bot(x) < y < top(x)}.
    """

    def __init__(self, p):
        m = len(p)
        self.m = m
        order = [0] * m  # order[k] = letter at image place k
        for j in range(m):
            order[p[j] - 1] = j
        tau = shrink_heights(p, order)
        self.tau = tau
        top = [0]
        for j in range(m):
            top.append(top[-1] + tau[j])
        bot = [0]
        for k in range(m):
            bot.append(bot[-1] + tau[order[k]])
        self.top, self.bot = top, bot
        self.place = [p[j] - 1 for j in range(m)]
        self.letter_at = order
        # translation carrying top side j onto bottom side j
        self.shift = [(self.place[j] - j, bot[self.place[j]] - top[j]) for j in range(m)]

    @staticmethod
    def _interp(line, x):
        c = int(x)  # floor, x > 0
        return line[c] + (line[c + 1] - line[c]) * (x - c)

    def top_y(self, x):
        return self._interp(self.top, x)

    def bot_y(self, x):
        return self._interp(self.bot, x)

    def move_up(self, x, y, dist):
        while True:
            t = self.top_y(x)
            if y + dist < t:
                return x, y + dist
            dist -= t - y
            j = int(x)
            dx, _ = self.shift[j]
            x = x + dx
            y = self.bot_y(x)

    def move_right(self, x, y, dist):
        end = x + dist
        while True:
            hit = None
            c = int(x)
            # crossings happen at most inside the unit columns we traverse
            while c < self.m and c <= end:
                lo, hi = max(x, Fraction(c)), min(end, Fraction(c + 1))
                for line, kind in ((self.top, "top"), (self.bot, "bot")):
                    a, b = line[c], line[c + 1]
                    if a == b:
                        continue
                    xc = c + Fraction(y - a, b - a)
                    if lo < xc <= hi and xc > x:
                        if hit is None or xc < hit[0]:
                            hit = (xc, kind, c)
                if hit is not None:
                    break
                c += 1
            if hit is None:
                return end, y
            xc, kind, c = hit
            if kind == "top":
                dx, dy = self.shift[c]
            else:
                dx, dy = self.shift[self.letter_at[c]]
                dx, dy = -dx, -dy
            x, y, end = xc + dx, y + dy, end + dx


def suspend(p):
    """Square-tiled suspension of an admissible permutation."""
    p = require_admissible(p)
    poly = _Polygon(p)
    m = poly.m
    top_at = [poly.top_y(c + _DX) for c in range(m)]
    bot_at = [poly.bot_y(c + _DX) for c in range(m)]
    cells = []
    for c in range(m):
        lo, hi = bot_at[c], top_at[c]
        for r in range(int(lo - _DY) - 1, int(hi) + 2):
            if lo < r + _DY < hi:
                cells.append((c, r))
    index = {cell: i for i, cell in enumerate(cells)}

    def crosses(line, c, r):
        # does the horizontal line y = r + DY meet the side over column c?
        if c >= m:
            return True
        a, b = line[c], line[c + 1]
        return min(a, b) <= r < max(a, b)

    n = len(cells)
    h, v = [0] * n, [0] * n
    for i, (c, r) in enumerate(cells):
        if (c + 1, r) in index and not any(
                crosses(line, cc, r) for line in (poly.top, poly.bot) for cc in (c, c + 1)):
            h[i] = index[(c + 1, r)] + 1
        else:
            xr, yr = poly.move_right(c + _DX, r + _DY, 1)
            h[i] = index[(int(xr - _DX), int(yr - _DY))] + 1
        if r + 1 + _DY < top_at[c]:
            v[i] = index[(c, r + 1)] + 1
        else:
            xu, yu = poly.move_up(c + _DX, r + _DY, 1)
            v[i] = index[(int(xu - _DX), int(yu - _DY))] + 1
    return SquareTiledSurface(n, tuple(h), tuple(v))


# -- combinatorial profile straight from the permutation ---------------------

def permutation_profile(p):
    """Zero degrees from the polygon vertex classes, without tiling."""
    rays = vertex_rays(tuple(Permutation(p)))
    degrees = tuple(c - 1 for c in rays)
    return StratumProfile(degrees, sum(degrees) // 2 + 1)


# -- dual-grid curves -----------------------------------------------------------

class _DualGrid:
    """Edges of the dual graph: ``s`` is s -> h(s), ``n + s`` is s -> v(s)."""

    def __init__(self, surface):
        self.s = surface
        self.n = surface.n_squares
        self.h, self.v = surface._h, surface._v
        self.hi, self.vi = surface._hi, surface._vi

    # ports of a square centre, as edge indices
    def port_edge(self, s, port):
        if port == EAST:
            return s
        if port == NORTH:
            return self.n + s
        if port == WEST:
            return self.hi[s]
        return self.n + self.vi[s]

    def cycle_basis(self):
        n = self.n
        parent_path = [None] * n
        parent_path[0] = 0
        tree = set()
        queue = deque([0])
        while queue:
            s = queue.popleft()
            for e, t in ((s, self.h[s]), (n + s, self.v[s]),
                         (self.hi[s], self.hi[s]), (n + self.vi[s], self.vi[s])):
                if parent_path[t] is None:
                    parent_path[t] = parent_path[s] ^ (1 << e)
                    tree.add(e)
                    queue.append(t)
        basis = []
        for e in range(2 * n):
            if e in tree:
                continue
            if e < n:
                a, b = e, self.h[e]
            else:
                a, b = e - n, self.v[e - n]
            basis.append((1 << e) ^ parent_path[a] ^ parent_path[b])
        return basis

    def face_cycles(self):
        """Boundaries of the dual cells, one per corner of the square grid."""
        out = []
        n = self.n
        for cyc in self.s.corner_cycles():
            z = 0
            for t in cyc:
                # around the lower-left corner of t: t, a = h^-1 t, b = v^-1 a,
                # c = h b, then the next square v c of the cycle
                a = self.hi[t]
                b = self.vi[a]
                c = self.h[b]
                for e in (a, n + b, b, n + c):
                    z ^= 1 << e
            out.append(z)
        return out

    def lift(self, w):
        """Linear map L with intersection(z, w) = parity(z & L(w)).

        ``w`` is pushed off by a small (+eps, +eps) translation.  Its vertical
        edge s -> v(s) then crosses the horizontal dual edge leaving v(s) just
        right of the centre, and its horizontal edge s -> h(s) crosses the
        vertical dual edge leaving h(s) just above the centre.
        """
        n = self.n
        out = 0
        while w:
            low = w & -w
            e = low.bit_length() - 1
            w ^= low
            if e < n:
                out |= 1 << (n + self.h[e])
            else:
                out |= 1 << self.v[e - n]
        return out

    def intersection(self, z, w):
        return (z & self.lift(w)).bit_count() & 1

    def quadratic(self, z):
        """Winding parity of a dual cycle: sum over components of (ind + 1).

        At a centre where all four ports are used the strands are smoothed
        as east-north and west-south, so the pieces are disjoint simple
        closed curves and no crossing correction is needed.
        """
        n = self.n
        used = z
        total = 0
        while used:
            low = used & -used
            e0 = low.bit_length() - 1
            turns, used = self._trace(z, used, e0)
            if turns % 4:
                raise AssertionError("open dual curve")
            total += turns // 4 + 1
        return total & 1

    def _pair(self, z, s, port):
        ports = [q for q in (EAST, NORTH, WEST, SOUTH) if z >> self.port_edge(s, q) & 1]
        if len(ports) == 2:
            return ports[1] if ports[0] == port else ports[0]
        return {EAST: NORTH, NORTH: EAST, WEST: SOUTH, SOUTH: WEST}[port]

    def _trace(self, z, used, e0):
        n = self.n
        # leave the tail of e0 through its forward port
        if e0 < n:
            s, out_port = e0, EAST
        else:
            s, out_port = e0 - n, NORTH
        start = (s, out_port)
        turns = 0
        while True:
            e = self.port_edge(s, out_port)
            used &= ~(1 << e)
            if out_port == EAST:
                s, in_port = self.h[s], WEST
            elif out_port == NORTH:
                s, in_port = self.v[s], SOUTH
            elif out_port == WEST:
                s, in_port = self.hi[s], EAST
            else:
                s, in_port = self.vi[s], NORTH
            nxt = self._pair(z, s, in_port)
            turn = (nxt - (in_port + 2)) % 4
            turns += {0: 0, 1: 1, 3: -1}[turn]
            out_port = nxt
            if (s, out_port) == start:
                return turns, used


def winding_number(surface, start, moves):
    """Index of a closed centre-to-centre path.

    ``start`` is a 1-based square, ``moves`` a string over R/U/L/D.  The
    turning at each centre is -1, 0 or +1 quarter turns, including the turn
    that closes the loop at ``start``.  An immediate reversal would have to
    swing around one of the square's corners, which may be a cone point, so
    it is rejected.
    """
    if not moves:
        raise NotClosed("empty path")
    s = start - 1
    if not 0 <= s < surface.n_squares:
        raise UsageError(f"no square {start}")
    dirs = []
    for ch in moves.upper():
        if ch not in _MOVES:
            raise UsageError(f"bad move {ch!r}")
        dirs.append(_MOVES[ch])
    step = {EAST: surface._h, NORTH: surface._v, WEST: surface._hi, SOUTH: surface._vi}
    for d in dirs:
        s = step[d][s]
    if s != start - 1:
        raise NotClosed(f"path ends in square {s + 1}, not {start}")
    turns = 0
    for d0, d1 in zip(dirs, dirs[1:] + dirs[:1]):
        turn = (d1 - d0) % 4
        if turn == 2:
            raise PathThroughConePoint("path reverses direction at a square centre")
        turns += {0: 0, 1: 1, 3: -1}[turn]
    if turns % 4:
        raise AssertionError("closed path with fractional turning")
    return turns // 4


def homology_form(surface):
    """Dual-grid cycle basis with intersection form and winding quadratic form."""
    grid = _DualGrid(surface)
    return grid, grid.cycle_basis()


def spin_parity_surface(surface):
    """Parity of the spin structure from winding numbers on the dual grid.

    Builds the cycle space of the dual graph, splits it into hyperbolic
    pairs for the intersection form (the leftover radical is spanned by the
    boundaries of the dual cells), evaluates (ind + 1) on each basis class
    and sums (ind a_i + 1)(ind b_i + 1).
    """
    profile = singularity_profile(surface)
    if not profile.all_even:
        raise OddDegreePresent(f"odd zero degree in {profile.degrees}")
    grid = _DualGrid(surface)
    split = gf2.symplectic_split(grid.cycle_basis(), grid.lift)
    if split.rank != 2 * profile.genus:
        raise AssertionError(f"homology rank {split.rank} != 2g = {2 * profile.genus}")
    # the radical is spanned by the dual cell boundaries and q is additive
    # on it, so checking those boundaries is enough
    for z in grid.face_cycles():
        if grid.quadratic(z):
            raise RadicalObstruction("winding form does not vanish on a cell boundary")
    return gf2.arf(split, grid.quadratic)


def spin_parity_perm(p):
    """Parity of the spin structure straight from the permutation.

    Form Omega(pi) mod 2 on F_2^m with q(e_i) = 1 (every basis cycle of the
    suspension crosses the horizontal foliation transversally, so its
    index is 0), quotient by the radical, Arf invariant.
    """
    p = require_admissible(p)
    degrees = permutation_profile(p).degrees
    if any(k % 2 for k in degrees):
        raise OddDegreePresent(f"odd zero degree in {degrees}")
    m = len(p)
    om = omega_matrix(p)
    rows = [sum(1 << j for j in range(m) if om[i][j] % 2) for i in range(m)]

    def lift(x):
        out = 0
        for i in range(m):
            if x >> i & 1:
                out ^= rows[i]
        return out

    def q(x):
        # q(sum e_i) = sum q(e_i) + sum_{i<j} Omega_ij
        idx = [i for i in range(m) if x >> i & 1]
        val = len(idx)
        for a_, i in enumerate(idx):
            for j in idx[a_ + 1:]:
                val += om[i][j] % 2
        return val & 1

    split = gf2.symplectic_split([1 << i for i in range(m)], lift)
    for z in split.radical:
        if q(z):
            raise RadicalObstruction(f"q does not vanish on the radical for {p.text()}")
    return gf2.arf(split, q)
