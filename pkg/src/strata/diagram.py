"""Separatrix diagrams: ribbon graphs of horizontal saddle connections.

A diagram is stored as
  * ``vertices``: per vertex, the half-edges in counterclockwise order, each
    a pair ``(id, dir)`` with ``dir`` in ``{"in", "out"}``;
  * ``edges``: pairs ``(out_half, in_half)``, one per saddle connection,
    oriented eastward (the direction of the horizontal foliation);
  * ``pairing``: pairs ``(positive_face, negative_face)``, one per cylinder.

Faces are the orbits of ``phi = sigma o alpha`` where ``sigma`` is the
counterclockwise successor at a vertex and ``alpha`` swaps the two ends of
an edge.  Walking ``phi`` keeps the face on the right.  Orbits of out-halves
run along the edges with the face below them (the top of the cylinder
underneath): these are the positive faces.  Orbits of in-halves run
against the edges with the face above (the bottom of the cylinder on
top): the negative faces.  A face is named by the smallest half-edge id in
it, and the sector of a vertex that starts at half ``x`` (from ``x``
counterclockwise to ``sigma(x)``) is a corner of the face containing
``sigma(x)``.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm

from . import lp
from .errors import (
    GenusTooSmall,
    InvalidDiagram,
    LoopEdge,
    MultipleVertices,
    NotAlternating,
    NotSimplePair,
    PairEquationViolated,
    SameSector,
    SignMismatchInPairing,
    UnbalancedBoundary,
    UsageError,
)
from .surface import SquareTiledSurface

OUT, IN = "out", "in"


@dataclass(frozen=True)
class SeparatrixDiagram:
    vertices: tuple
    edges: tuple
    pairing: tuple

    # -- combinatorics --------------------------------------------------------

    @cached_property
    def direction(self):
        return {h: d for vert in self.vertices for h, d in vert}

    @cached_property
    def vertex_of(self):
        return {h: i for i, vert in enumerate(self.vertices) for h, _ in vert}

    @cached_property
    def sigma(self):
        out = {}
        for vert in self.vertices:
            for k, (h, _) in enumerate(vert):
                out[h] = vert[(k + 1) % len(vert)][0]
        return out

    @cached_property
    def sigma_inv(self):
        return {b: a for a, b in self.sigma.items()}

    @cached_property
    def alpha(self):
        out = {}
        for o, i in self.edges:
            out[o], out[i] = i, o
        return out

    def phi(self, h):
        return self.sigma[self.alpha[h]]

    @cached_property
    def faces(self):
        """Face id -> tuple of halves in walking order, starting at the id."""
        seen = set()
        out = {}
        for h in sorted(self.direction):
            if h in seen:
                continue
            orbit = [h]
            seen.add(h)
            x = self.phi(h)
            while x != h:
                orbit.append(x)
                seen.add(x)
                x = self.phi(x)
            out[h] = tuple(orbit)
        return out

    @cached_property
    def face_of(self):
        return {h: f for f, orbit in self.faces.items() for h in orbit}

    def face_sign(self, face):
        return 1 if self.direction[face] == OUT else -1

    def sector_face(self, h):
        return self.face_of[self.sigma[h]]

    @cached_property
    def edge_of(self):
        """Half-edge -> its edge (out_half, in_half)."""
        out = {}
        for e in self.edges:
            out[e[0]] = out[e[1]] = e
        return out

    def face_edges(self, face):
        return [self.edge_of[h] for h in self.faces[face]]

    @property
    def valences(self):
        return tuple(len(v) for v in self.vertices)

    @property
    def degrees(self):
        return tuple(sorted((len(v) // 2 - 1 for v in self.vertices), reverse=True))

    @property
    def genus(self):
        return sum(self.degrees) // 2 + 1

    # -- serialisation ----------------------------------------------------------

    def to_dict(self):
        return {
            "vertices": [[{"half": h, "dir": d} for h, d in vert] for vert in self.vertices],
            "edges": [list(e) for e in self.edges],
            "pairing": [list(p) for p in self.pairing],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
        except ValueError as exc:
            raise InvalidDiagram(f"bad diagram JSON: {exc}") from None
        return validate_diagram(data)

    def to_dot(self):
        pair_id = {}
        for k, (p, n) in enumerate(self.pairing):
            pair_id[p] = pair_id[n] = k
        lines = ["digraph separatrix {"]
        for i, vert in enumerate(self.vertices):
            order = " ".join(f"{h}{'+' if d == OUT else '-'}" for h, d in vert)
            lines.append(f'  v{i} [label="v{i}: {order}"];')
        for o, i in self.edges:
            below = pair_id[self.face_of[o]]
            above = pair_id[self.face_of[i]]
            lines.append(f'  v{self.vertex_of[o]} -> v{self.vertex_of[i]} '
                         f'[label="{o}>{i} c{below}|c{above}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


# -- validation -----------------------------------------------------------------

def _canonical_vertices(vertices):
    out = []
    for vert in vertices:
        vert = list(vert)
        k = min(range(len(vert)), key=lambda j: vert[j][0])
        out.append(tuple(vert[k:] + vert[:k]))
    return tuple(sorted(out, key=lambda v: v[0][0]))


def _build(vertices, edges, pairing):
    """Canonicalise and check all invariants."""
    verts = []
    for vert in vertices:
        items = []
        for item in vert:
            if isinstance(item, dict):
                try:
                    h, d = item["half"], item["dir"]
                except KeyError as exc:
                    raise InvalidDiagram(f"half-edge entry missing {exc}") from None
            else:
                h, d = item
            if not isinstance(h, int) or isinstance(h, bool) or h < 1:
                raise InvalidDiagram(f"half-edge ids must be positive integers, got {h!r}")
            if d not in (IN, OUT):
                raise InvalidDiagram(f"direction must be 'in' or 'out', got {d!r}")
            items.append((h, d))
        if not items:
            raise InvalidDiagram("empty vertex")
        verts.append(items)
    ids = [h for vert in verts for h, _ in vert]
    if len(set(ids)) != len(ids):
        raise InvalidDiagram("a half-edge id is used twice")
    for k, vert in enumerate(verts):
        n = len(vert)
        if n % 2 or any(vert[j][1] == vert[(j + 1) % n][1] for j in range(n)):
            raise NotAlternating(f"vertex {k}: directions do not alternate")
    direction = {h: d for vert in verts for h, d in vert}
    edge_list = []
    used = set()
    for e in edges:
        try:
            o, i = (int(x) for x in e)
        except (TypeError, ValueError):
            raise InvalidDiagram(f"bad edge {e!r}") from None
        if o not in direction or i not in direction:
            raise InvalidDiagram(f"edge {e!r} uses an unknown half-edge")
        if direction[o] != OUT or direction[i] != IN:
            raise InvalidDiagram(f"edge {o}->{i} must join an out-half to an in-half")
        if o in used or i in used:
            raise InvalidDiagram(f"half-edge of {o}->{i} is on two edges")
        used.update((o, i))
        edge_list.append((o, i))
    if used != set(direction):
        raise InvalidDiagram("some half-edges are not on an edge")
    d = SeparatrixDiagram(_canonical_vertices(verts), tuple(sorted(edge_list)), ())
    faces = d.faces
    pos = [f for f in faces if d.face_sign(f) > 0]
    neg = [f for f in faces if d.face_sign(f) < 0]
    if len(pos) != len(neg):
        raise UnbalancedBoundary(f"{len(pos)} positive vs {len(neg)} negative boundary components")
    pairs = []
    seen = set()
    for pr in pairing:
        try:
            a, b = (int(x) for x in pr)
        except (TypeError, ValueError):
            raise InvalidDiagram(f"bad pair {pr!r}") from None
        if a not in faces or b not in faces:
            raise InvalidDiagram(f"pair {pr!r} names a face id that is not a face "
                                 f"(faces are named by their smallest half-edge)")
        if d.face_sign(a) < 0 and d.face_sign(b) > 0:
            a, b = b, a
        if d.face_sign(a) == d.face_sign(b):
            raise SignMismatchInPairing(f"faces {a} and {b} have the same orientation")
        if a in seen or b in seen:
            raise InvalidDiagram(f"face in two pairs: {pr!r}")
        seen.update((a, b))
        pairs.append((a, b))
    if seen != set(faces):
        raise InvalidDiagram("pairing does not cover every boundary component")
    return SeparatrixDiagram(d.vertices, d.edges, tuple(sorted(pairs)))


def validate_diagram(data):
    """Build a diagram from a mapping (the JSON layout) or a diagram."""
    if isinstance(data, SeparatrixDiagram):
        return _build(data.vertices, data.edges, data.pairing)
    try:
        return _build(data["vertices"], data["edges"], data["pairing"])
    except (KeyError, TypeError) as exc:
        raise InvalidDiagram(f"diagram needs vertices, edges and pairing: {exc}") from None


def _rebuild(old, vertices, edges, old_pairs, extra_pairs=()):
    """New diagram whose faces are old faces minus/plus some halves.

    Each old pair is carried over through any half of each face that still
    exists; ``extra_pairs`` are given directly in half ids.
    """
    tmp = SeparatrixDiagram(_canonical_vertices(vertices), tuple(sorted(edges)), ())
    alive = set(tmp.direction)
    pairs = []
    for p, n in old_pairs:
        hp = next((h for h in old.faces[p] if h in alive), None)
        hn = next((h for h in old.faces[n] if h in alive), None)
        if hp is None or hn is None:
            raise InvalidDiagram("surgery removed a whole boundary component")
        pairs.append((tmp.face_of[hp], tmp.face_of[hn]))
    for hp, hn in extra_pairs:
        pairs.append((tmp.face_of[hp], tmp.face_of[hn]))
    return _build(tmp.vertices, tmp.edges, pairs)


# -- realizability -----------------------------------------------------------------

@dataclass(frozen=True)
class RealizabilityCertificate:
    """Either positive lengths per edge or a separating functional.

    ``lengths`` maps each edge ``(out, in)`` to a positive rational.  When
    infeasible, ``functional`` gives one coefficient per pair such that
    the combination of pair equations has nonnegative, not all zero,
    coefficients on the edges, which rules out positive solutions.
    """

    feasible: bool
    lengths: dict = None
    functional: tuple = None
    edge_weights: dict = None

    def to_dict(self):
        fmt = lp_fmt
        if self.feasible:
            return {"feasible": True,
                    "lengths": [[o, i, fmt(x)] for (o, i), x in sorted(self.lengths.items())]}
        return {"feasible": False,
                "functional": [fmt(y) for y in self.functional],
                "edge_weights": [[o, i, fmt(x)] for (o, i), x in sorted(self.edge_weights.items())]}


def lp_fmt(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def pair_matrix(d):
    """Row per pair: +1 per edge on the positive face, -1 per edge on the negative."""
    col = {e: k for k, e in enumerate(d.edges)}
    rows = []
    for p, n in d.pairing:
        row = [0] * len(d.edges)
        for e in d.face_edges(p):
            row[col[e]] += 1
        for e in d.face_edges(n):
            row[col[e]] -= 1
        rows.append(row)
    return rows


def _positive_solution(rows, ne):
    # variables: p_0..p_{E-1}, t, s_0..s_{E-1}; maximise t
    # p_e - t - s_e = 0, sum p = 1, A p = 0
    nv = 2 * ne + 1
    a_eq, b_eq = [], []
    for e in range(ne):
        r = [0] * nv
        r[e], r[ne], r[ne + 1 + e] = 1, -1, -1
        a_eq.append(r)
        b_eq.append(0)
    a_eq.append([1] * ne + [0] * (ne + 1))
    b_eq.append(1)
    for row in rows:
        a_eq.append(list(row) + [0] * (ne + 1))
        b_eq.append(0)
    cost = [0] * ne + [1] + [0] * ne
    status, x, value = lp.maximise(cost, a_eq, b_eq)
    assert status == "optimal", status
    return x[:ne], value


def _separating_functional(rows, ne):
    # y = y+ - y-, w = A^T y >= 0 with sum w = 1
    k = len(rows)
    nv = 2 * k + ne
    a_eq, b_eq = [], []
    for e in range(ne):
        r = [0] * nv
        for j in range(k):
            r[j] = rows[j][e]
            r[k + j] = -rows[j][e]
        r[2 * k + e] = -1
        a_eq.append(r)
        b_eq.append(0)
    a_eq.append([0] * (2 * k) + [1] * ne)
    b_eq.append(1)
    x = lp.feasible_point(a_eq, b_eq, nv)
    if x is None:
        return None
    y = [x[j] - x[k + j] for j in range(k)]
    return y, x[2 * k:]


def realizability(d):
    """Decide whether the pair equations have a strictly positive solution.

    Two independent programs are solved: the primal one maximising the
    smallest length, and the alternative one looking for a combination of
    equations with nonnegative nonzero edge weights.  Exactly one of them
    succeeds; anything else is a bug and raises.
    """
    ne = len(d.edges)
    rows = pair_matrix(d)
    lengths, t = _positive_solution(rows, ne)
    alt = _separating_functional(rows, ne)
    if (t > 0) == (alt is not None):
        raise AssertionError("realizability: primal and alternative disagree")
    if t > 0:
        return RealizabilityCertificate(True, lengths=dict(zip(d.edges, lengths)))
    y, w = alt
    return RealizabilityCertificate(False, functional=tuple(y), edge_weights=dict(zip(d.edges, w)))


def is_realizable(d):
    return realizability(d).feasible


def integer_lengths(d):
    """Positive integer solution of the pair equations (all ones if that works)."""
    ones = {e: 1 for e in d.edges}
    if _equations_hold(d, ones):
        return ones
    cert = realizability(d)
    if not cert.feasible:
        raise PairEquationViolated("diagram is not realizable")
    scale = lcm(*(x.denominator for x in cert.lengths.values()))
    return {e: int(x * scale) for e, x in cert.lengths.items()}


def _equations_hold(d, lengths):
    for p, n in d.pairing:
        if sum(lengths[e] for e in d.face_edges(p)) != sum(lengths[e] for e in d.face_edges(n)):
            return False
    return True


# -- symmetry and canonical diagrams -------------------------------------------------

def reverse_arrows(d):
    flip = {IN: OUT, OUT: IN}
    vertices = [[(h, flip[x]) for h, x in vert] for vert in d.vertices]
    edges = [(i, o) for o, i in d.edges]
    # sigma and alpha are unchanged, so are the faces; only the signs swap
    return _build(vertices, edges, [(n, p) for p, n in d.pairing])


def is_hyperelliptic_diagram(d):
    """Central symmetry test for a one-vertex diagram.

    Rotation by half the valence must carry edges to edges (with arrows
    reversed) and exchange the two faces of every pair, and the number of
    cylinders must be one more than the number of edges moved by it.
    """
    if len(d.vertices) != 1:
        raise MultipleVertices(f"{len(d.vertices)} vertices")
    vert = [h for h, _ in d.vertices[0]]
    n = len(vert)
    pos = {h: k for k, h in enumerate(vert)}

    def rot(h):
        return vert[(pos[h] + n // 2) % n]

    edges = set(d.edges)
    if any(d.direction[rot(h)] == d.direction[h] for h in vert):
        return False
    for o, i in d.edges:
        if (rot(i), rot(o)) not in edges:
            return False
    for p, q in d.pairing:
        if d.face_of[rot(p)] != q or d.face_of[rot(q)] != p:
            return False
    moved = sum(1 for o, i in d.edges if (rot(i), rot(o)) != (o, i))
    return len(d.pairing) == moved // 2 + 1


def _canonical_loops(g):
    rays = 4 * g - 2
    loops = [(1, 2 * g)]
    loops += [(2 * i + 1, 2 * i) for i in range(1, g)]
    loops += [(2 * i - 1, 2 * i) for i in range(g + 1, 2 * g)]
    assert len(loops) == 2 * g - 1 and sorted(h for e in loops for h in e) == list(range(1, rays + 1))
    return rays, loops


def make_canonical(kind, g):
    """The one-vertex diagrams H, O, E of the minimal stratum in genus g.

    Rays r_1..r_{4g-2} counterclockwise from the south, odd rays outgoing.
    The g-1 petals on the east side are the sectors r_{2i} -> r_{2i+1}, the
    ones on the west side r_{2i-1} -> r_{2i} for i = g+1..2g-1; the two
    remaining faces form one more pair.
    """
    kind = str(kind).upper()
    if kind not in ("H", "O", "E"):
        raise UsageError(f"diagram type must be H, O or E, got {kind!r}")
    if g < (3 if kind == "E" else 2):
        raise GenusTooSmall(f"genus too small for diagram {kind}: g={g}")
    rays, loops = _canonical_loops(g)
    vertex = [(k, OUT if k % 2 else IN) for k in range(1, rays + 1)]
    d = SeparatrixDiagram((tuple(vertex),), tuple(sorted(loops)), ())

    def east(i):  # positive petal of loop (r_{2i+1}, r_{2i})
        return d.sector_face(2 * i)

    def west(i):  # negative petal of loop (r_{2i-1}, r_{2i})
        return d.sector_face(2 * i - 1)

    if kind == "H":
        partner = {i: i + g for i in range(1, g)}
    else:
        partner = {i: 2 * g - i for i in range(1, g)}
        if kind == "E":
            partner[1], partner[2] = 2 * g - 2, 2 * g - 1
    pairs = [(east(i), west(j)) for i, j in partner.items()]
    petals = {f for pr in pairs for f in pr}
    rest = [f for f in d.faces if f not in petals]
    assert len(rest) == 2
    pairs.append(tuple(sorted(rest, key=lambda f: -d.face_sign(f))))
    return _build(d.vertices, d.edges, pairs)


def torus_diagram():
    """One vertex (a marked regular point) and one loop."""
    return _build([[(1, OUT), (2, IN)]], [(1, 2)], [(1, 2)])


def cylinder_count(d):
    return len(d.pairing)


# -- surgeries -------------------------------------------------------------------

def _insert_loop(vert, pos, loop, direction_after):
    """Insert loop (o, i) right after position ``pos`` of ``vert``."""
    o, i = loop
    pair = [(o, OUT), (i, IN)] if direction_after == IN else [(i, IN), (o, OUT)]
    return vert[:pos + 1] + pair + vert[pos + 1:]


def bubble_handle(d, vertex, slot_a, slot_b, loops=None):
    """Add a pair of simple loops in the sectors after halves ``slot_a``, ``slot_b``.

    The sectors must have opposite orientation (one after an in-half, one
    after an out-half) so that the two petals get opposite signs; they are
    paired with each other.  ``loops`` optionally fixes the ids as
    ``((out_a, in_a), (out_b, in_b))``; by default fresh ids above the
    current maximum are used, two per sector in order of insertion.
    """
    if not 0 <= vertex < len(d.vertices):
        raise UsageError(f"no vertex {vertex}")
    vert = list(d.vertices[vertex])
    halves = [h for h, _ in vert]
    for s in (slot_a, slot_b):
        if s not in halves:
            raise UsageError(f"half-edge {s} is not at vertex {vertex}")
    if slot_a == slot_b:
        raise SameSector(f"both loops in the sector after half-edge {slot_a}")
    da, db = d.direction[slot_a], d.direction[slot_b]
    if da == db:
        raise SignMismatchInPairing("the two sectors have the same orientation; "
                                    "their petals could not be paired")
    if loops is None:
        top = max(d.direction)
        fresh = []
        for k, dd in enumerate((da, db)):
            first, second = top + 2 * k + 1, top + 2 * k + 2
            # after an in-half the loop starts with its out-half
            fresh.append((first, second) if dd == IN else (second, first))
        loops = fresh
    (la, lb) = loops
    new_ids = [la[0], la[1], lb[0], lb[1]]
    if len(set(new_ids)) != 4 or any(h in d.direction for h in new_ids):
        raise UsageError("loop ids must be new and distinct")
    # insert at the later position first so the earlier index stays valid
    order = sorted(((halves.index(slot_a), la, da), (halves.index(slot_b), lb, db)),
                   key=lambda t: -t[0])
    for pos, loop, dd in order:
        vert = _insert_loop(vert, pos, loop, dd)
    vertices = list(d.vertices)
    vertices[vertex] = tuple(vert)
    edges = list(d.edges) + [tuple(la), tuple(lb)]
    # petal of a loop inserted after an in-half is its in-half (negative)
    petal_a = la[1] if da == IN else la[0]
    petal_b = lb[1] if db == IN else lb[0]
    pos_petal, neg_petal = (petal_a, petal_b) if da == OUT else (petal_b, petal_a)
    return _rebuild(d, vertices, edges, d.pairing, [(pos_petal, neg_petal)])


def _simple_pair(d, pair):
    """Check ``pair`` is a pair of petals of simple loops at one vertex.

    Returns ``(vertex, loops)`` with the loop of the positive petal first.
    """
    try:
        p, n = (int(x) for x in pair)
    except (TypeError, ValueError):
        raise UsageError(f"bad pair {pair!r}") from None
    if (p, n) not in d.pairing:
        if (n, p) in d.pairing:
            p, n = n, p
        else:
            raise NotSimplePair(f"({p}, {n}) is not a pair of the diagram")
    loops = []
    for f in (p, n):
        orbit = d.faces[f]
        if len(orbit) != 1:
            raise NotSimplePair(f"face {f} is bounded by more than one saddle connection")
        o, i = d.edge_of[orbit[0]]
        simple = d.sigma[o] == i or d.sigma[i] == o
        if d.vertex_of[o] != d.vertex_of[i] or not simple:
            raise NotSimplePair(f"loop {o}->{i} is not simple")
        loops.append((o, i))
    v0, v1 = d.vertex_of[loops[0][0]], d.vertex_of[loops[1][0]]
    if v0 != v1:
        raise NotSimplePair("the two loops sit at different vertices")
    if len(d.vertices[v0]) <= 4:
        raise NotSimplePair("erasing would leave an empty vertex")
    return v0, loops


def handle_angle(d, pair):
    """m such that 2 pi m is the angle of a sector between the two loops.

    Measured counterclockwise from the loop of the positive petal to the
    other one; the other complementary sector has the same parity when
    the vertex has even degree.
    """
    v, loops = _simple_pair(d, pair)
    halves = [h for h, _ in d.vertices[v]]
    n = len(halves)

    def span(loop):
        a, b = halves.index(loop[0]), halves.index(loop[1])
        # the loop occupies two cyclically consecutive positions
        return (a, b) if (a + 1) % n == b else (b, a)

    _, end0 = span(loops[0])
    start1, _ = span(loops[1])
    sectors = (start1 - end0) % n
    if sectors % 2:
        raise AssertionError("odd number of sectors between the loops of a pair")
    return sectors // 2


def erase_handle(d, pair):
    """Remove a pair of simple loops; returns ``(diagram, m)``.

    ``m`` is :func:`handle_angle` of the pair, so that the parity of the spin
    structure changes by m + 1 (mod 2).
    """
    v, loops = _simple_pair(d, pair)
    m = handle_angle(d, pair)
    gone = {h for loop in loops for h in loop}
    vertices = list(d.vertices)
    vertices[v] = tuple(x for x in vertices[v] if x[0] not in gone)
    edges = [e for e in d.edges if e not in loops]
    rest = [pr for pr in d.pairing if pr != tuple(sorted_pair(d, pair))]
    return _rebuild(d, vertices, edges, rest), m


def sorted_pair(d, pair):
    p, n = pair
    return (p, n) if d.face_sign(p) > 0 else (n, p)


def rotate_handle(d, pair, steps):
    """Move a pair of simple loops ``steps`` sectors counterclockwise.

    Both loops move together, so the number of sectors between them is
    kept.  The loops keep their half-edge ids.
    """
    v, loops = _simple_pair(d, pair)
    halves = [h for h, _ in d.vertices[v]]
    n = len(halves)
    gone = {h for loop in loops for h in loop}
    anchors = []
    for loop in loops:
        a, b = halves.index(loop[0]), halves.index(loop[1])
        first = a if (a + 1) % n == b else b
        anchor = halves[(first - 1) % n]
        if anchor in gone:
            raise SameSector("the two loops are adjacent; no sector separates them")
        anchors.append(anchor)
    erased, _ = erase_handle(d, pair)
    for _ in range(steps % (n - 4)):
        anchors = [erased.sigma[a] for a in anchors]
    vindex = erased.vertex_of[anchors[0]]
    return bubble_handle(erased, vindex, anchors[0], anchors[1], loops=loops)


def contract_saddle_connection(d, edge):
    """Shrink a saddle connection joining two distinct vertices to a point.

    ``edge`` is either half-edge id of the connection.  The cyclic orders
    are spliced: the rays of the first vertex following the removed out-half,
    then those of the second following the removed in-half.
    """
    if isinstance(edge, (tuple, list)):
        edge = edge[0]
    if edge not in d.edge_of:
        raise UsageError(f"no half-edge {edge}")
    o, i = d.edge_of[edge]
    vo, vi = d.vertex_of[o], d.vertex_of[i]
    if vo == vi:
        raise LoopEdge(f"{o}->{i} is a loop")

    def after(vert, h):
        k = [x for x, _ in vert].index(h)
        return list(vert[k + 1:]) + list(vert[:k])

    merged = after(d.vertices[vo], o) + after(d.vertices[vi], i)
    vertices = [vert for k, vert in enumerate(d.vertices) if k not in (vo, vi)]
    vertices.append(tuple(merged))
    edges = [e for e in d.edges if e != (o, i)]
    return _rebuild(d, vertices, edges, d.pairing)


# -- gluing a surface ---------------------------------------------------------------

def diagram_to_surface(d, lengths=None, heights=None, twists=None):
    """Glue one cylinder per pair and tile it by unit squares.

    ``lengths`` maps edges (or out-halves) to positive integers and must
    satisfy every pair equation; the default is the smallest integer
    solution found by :func:`integer_lengths`.  ``heights`` and ``twists``
    are per pair, in the order of ``d.pairing`` (defaults 1 and 0).  The
    twist shifts the top row of a cylinder against its upper boundary.
    Squares are numbered cylinder by cylinder, bottom row first.
    """
    if lengths is None:
        lengths = integer_lengths(d)
    else:
        lengths = {(e if isinstance(e, tuple) else d.edge_of[e]): int(x)
                   for e, x in dict(lengths).items()}
        if set(lengths) != set(d.edges) or any(x <= 0 for x in lengths.values()):
            raise PairEquationViolated("need one positive integer length per edge")
        if not _equations_hold(d, lengths):
            raise PairEquationViolated("lengths do not satisfy the pair equations")
    k = len(d.pairing)
    heights = [1] * k if heights is None else [int(x) for x in heights]
    twists = [0] * k if twists is None else [int(x) for x in twists]
    if len(heights) != k or len(twists) != k or any(x <= 0 for x in heights):
        raise UsageError("need one positive height and one twist per pair")

    def segments(face, reverse):
        halves = d.faces[face]
        if reverse:
            halves = halves[::-1]
        out = []
        for h in halves:
            e = d.edge_of[h]
            out.extend((e, j) for j in range(lengths[e]))
        return out

    base, circ = [], []
    total = 0
    bottom_at = {}  # segment -> (pair index, column) on the bottom row
    tops = []
    for c, (p, n) in enumerate(d.pairing):
        top = segments(p, False)
        bottom = segments(n, True)
        assert len(top) == len(bottom)
        base.append(total)
        circ.append(len(top))
        total += len(top) * heights[c]
        tops.append(top)
        for col, seg in enumerate(bottom):
            bottom_at[seg] = (c, col)
    h = [0] * total
    v = [0] * total
    for c in range(k):
        L, H = circ[c], heights[c]
        for r in range(H):
            for col in range(L):
                s = base[c] + r * L + col
                h[s] = base[c] + r * L + (col + 1) % L
                if r + 1 < H:
                    v[s] = s + L
                else:
                    c2, col2 = bottom_at[tops[c][(col + twists[c]) % L]]
                    v[s] = base[c2] + col2
    return SquareTiledSurface(total, tuple(x + 1 for x in h), tuple(x + 1 for x in v))


# -- reading a diagram off a square-tiled surface ------------------------------------

def horizontal_diagram(surface):
    """Diagram of the horizontal foliation of a square-tiled surface.

    Vertices are the true zeros (corner classes of angle > 2 pi).  A
    saddle connection leaves the lower-left corner of square t eastward
    along the bottom sides of t, h(t), ... up to the next zero.  Around a
    zero the rays alternate: out along the bottom of t, in along the
    bottom of h^-1(t), out along the bottom of kappa(t), and so on, where
    kappa is the corner permutation.  Returns ``(diagram, lengths)``.
    """
    n = surface.n_squares
    hh, vv, hi, vi = surface._h, surface._v, surface._hi, surface._vi
    kappa = surface.corner_permutation()
    cycles = surface.corner_cycles()
    singular = [False] * n
    for cyc in cycles:
        if len(cyc) > 1:
            for t in cyc:
                singular[t] = True
    if not any(singular):
        raise InvalidDiagram("surface has no zeros; the horizontal diagram is empty")
    out_id, in_id, edge_of_seg = {}, {}, {}
    edges, lengths = [], {}
    for t in range(n):
        if not singular[t]:
            continue
        e = len(edges)
        o, i = 2 * e + 1, 2 * e + 2
        s, length = t, 0
        while True:
            edge_of_seg[s] = e
            length += 1
            s = hh[s]
            if singular[s]:
                break
        out_id[t] = o
        in_id[hi[s]] = i  # the edge ends along the bottom of h^-1(s)
        edges.append((o, i))
        lengths[(o, i)] = length
    vertices = []
    for cyc in cycles:
        if len(cyc) == 1:
            continue
        vert = []
        t = cyc[0]
        for _ in cyc:
            vert.append((out_id[t], OUT))
            vert.append((in_id[hi[t]], IN))
            t = kappa[t]
        vertices.append(vert)
    tmp = SeparatrixDiagram(_canonical_vertices(vertices), tuple(sorted(edges)), ())
    on_leaf = [False] * n  # bottom side of the square lies on a singular leaf
    for t in range(n):
        if t in edge_of_seg:
            on_leaf[t] = True
    pairs = set()
    for t in out_id:
        s = vi[t]  # square just below the first segment
        while not on_leaf[s]:
            s = vi[s]
        e = edges[edge_of_seg[s]]
        pairs.add((tmp.face_of[out_id[t]], tmp.face_of[e[1]]))
    diagram = _build(tmp.vertices, tmp.edges, sorted(pairs))
    if len(diagram.pairing) != len(pairs):
        raise AssertionError("inconsistent cylinder pairing")
    return diagram, lengths


def vertical_diagram(surface):
    """Horizontal diagram of the surface turned by a quarter turn clockwise."""
    # turning clockwise sends up to right: new h is old v, new v is old h^-1
    turned = SquareTiledSurface(surface.n_squares, surface.v,
                                tuple(x + 1 for x in surface._hi))
    return horizontal_diagram(turned)
