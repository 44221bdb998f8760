"""Link diagrams, Alexander numbering, colorings and cocycle state sums.

Diagrams are given by signed planar-diagram codes.  Each crossing lists
its four semiarcs counterclockwise starting from the incoming under-arc:

    Xp[a, b, c, d]   positive:  a = under-in, b = over-out,
                                c = under-out, d = over-in
    Xn[a, b, c, d]   negative:  a = under-in, b = over-in,
                                c = under-out, d = over-out

Faces are recovered from the counterclockwise corner rotation, so the
same code describes diagrams on surfaces; a `mod p` directive switches
the region numbering from integers (planar, needs an `outer` face) to
Z_p (solved as a linear system; no solution means the invariant is 0).

The Boltzmann weight of a colored crossing tau is the additive
contribution sign(tau) * T^{-L(tau)} * phi(x, y) where L is the number
of the source region of tau, x the color of the arc away from which the
normal of the over-arc points, and y the over-arc color; the state sum
collects exp(total weight) over all colorings in the group ring Z[A].
"""

import itertools
import re
from dataclasses import dataclass, field

from .coeff import GroupRingElem, RingError
from .chain import ComplexSpec, is_cocycle
from .exactlin import IntMatrix, solve_linear

__all__ = [
    "DiagramError",
    "Diagram",
    "parse_pd",
    "alexander_numbering",
    "colorings",
    "state_sum",
    "SurfacePresentation",
    "parse_surface",
    "surface_colorings",
    "state_sum_surface",
]


class DiagramError(ValueError):
    pass


_CROSSING_RE = re.compile(
    r"^X([pn])\s*\[\s*(\w+)\s*,\s*(\w+)\s*,\s*(\w+)\s*,\s*(\w+)\s*\]$",
    re.IGNORECASE)


@dataclass
class Diagram:
    crossings: list                      # [(sign, (a, b, c, d)), ...]
    mod_p: int = 0
    outer: str = None                    # face id (planar numbering)
    base: str = None                     # face id (mod-p numbering)
    declared_faces: dict = field(default_factory=dict)
    l_overrides: dict = field(default_factory=dict)  # crossing index -> L

    def __post_init__(self):
        self._index_semiarcs()
        self._trace_faces()
        if self.declared_faces:
            self._check_declared_faces()

    # -- structure ---------------------------------------------------------

    def _index_semiarcs(self):
        self.tails = {}
        self.heads = {}
        for ci, (sign, arcs) in enumerate(self.crossings):
            if sign > 0:
                heads, tails = (0, 3), (1, 2)
            else:
                heads, tails = (0, 1), (2, 3)
            for pos in heads:
                s = arcs[pos]
                if s in self.heads:
                    raise DiagramError(
                        "semiarc %r has two heads: orientation is ambiguous" % s)
                self.heads[s] = (ci, pos)
            for pos in tails:
                s = arcs[pos]
                if s in self.tails:
                    raise DiagramError(
                        "semiarc %r has two tails: orientation is ambiguous" % s)
                self.tails[s] = (ci, pos)
        dangling = set(self.heads) ^ set(self.tails)
        if dangling:
            raise DiagramError("dangling semiarc(s): %s"
                               % ", ".join(sorted(map(str, dangling))))
        if not self.crossings:
            raise DiagramError("diagram has no crossings")
        self.semiarcs = sorted(self.heads)

    def _spoke_other_end(self, ci, pos):
        s = self.crossings[ci][1][pos]
        t, h = self.tails[s], self.heads[s]
        return h if (ci, pos) == t else t

    def _trace_faces(self):
        """Face = orbit of corners under: corner (c, k) (the sector between
        spokes k and k+1) -> follow spoke k to its far end (c', k') -> corner
        (c', k'-1)."""
        corners = {(ci, k) for ci in range(len(self.crossings)) for k in range(4)}
        faces = []
        while corners:
            start = min(corners)
            orbit = []
            cur = start
            while True:
                orbit.append(cur)
                corners.discard(cur)
                ci, k = cur
                c2, k2 = self._spoke_other_end(ci, k)
                cur = (c2, (k2 - 1) % 4)
                if cur == start:
                    break
                if cur not in corners:
                    raise DiagramError("face tracing is not a permutation")
            faces.append(frozenset(orbit))
        self.faces = faces
        self.face_of = {}
        for fi, f in enumerate(faces):
            for corner in f:
                self.face_of[corner] = fi

    def euler_characteristic(self):
        return len(self.crossings) - len(self.semiarcs) + len(self.faces)

    def left_right_faces(self, s):
        """Face indices (left, right) of the oriented semiarc s."""
        ct, pt = self.tails[s]
        ch, ph = self.heads[s]
        left = self.face_of[(ct, pt)]
        right = self.face_of[(ct, (pt - 1) % 4)]
        if self.face_of[(ch, (ph - 1) % 4)] != left or self.face_of[(ch, ph)] != right:
            raise DiagramError("inconsistent sides along semiarc %r" % s)
        return left, right

    def source_region(self, ci):
        """The region the orientation normals of both arcs point away from:
        corner 0 at a positive crossing, corner 1 at a negative one."""
        sign = self.crossings[ci][0]
        return self.face_of[(ci, 0 if sign > 0 else 1)]

    def _face_id_index(self, name):
        if self.declared_faces and name in self._declared_index:
            return self._declared_index[name]
        raise DiagramError("unknown face id %r" % name)

    def _check_declared_faces(self):
        """Each declared face is a list of edge-side tokens like '2R';
        verify it names exactly one traced face."""
        self._declared_index = {}
        for name, sides in self.declared_faces.items():
            touched = set()
            for s, side in sides:
                left, right = self.left_right_faces(s)
                touched.add(left if side == "L" else right)
            if len(touched) != 1:
                raise DiagramError(
                    "face %r does not describe a single region" % name)
            fi = touched.pop()
            if fi in self._declared_index.values():
                raise DiagramError("face %r duplicates another declared face" % name)
            self._declared_index[name] = fi


def parse_pd(text):
    """Parse a diagram file: crossing lines Xp[...]/Xn[...] plus the
    directives 'outer <face-id>', 'base <face-id>', 'mod <p>',
    'face <id>: <edge><L|R> ...' and per-crossing numbering overrides
    'L <crossing-index> <value>'."""
    crossings = []
    outer = base = None
    mod_p = 0
    declared = {}
    overrides = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _CROSSING_RE.match(line)
        if m:
            sign = 1 if m.group(1).lower() == "p" else -1
            crossings.append((sign, tuple(m.group(i) for i in range(2, 6))))
            continue
        head, _, rest = line.partition(" ")
        head = head.lower()
        if head == "outer":
            outer = rest.strip()
        elif head == "base":
            base = rest.strip()
        elif head == "mod":
            mod_p = int(rest)
            if mod_p < 2:
                raise DiagramError("mod needs p >= 2")
        elif head == "l":
            ci_text, _, val = rest.strip().partition(" ")
            overrides[int(ci_text)] = int(val)
        elif head.startswith("face"):
            name, _, body = line[4:].partition(":")
            name = name.strip()
            if not name or not body.strip():
                raise DiagramError("malformed face line %r" % raw)
            sides = []
            for tok in body.split():
                sm = re.match(r"^(\w+)([LR])$", tok, re.IGNORECASE)
                if not sm:
                    raise DiagramError("bad edge-side token %r" % tok)
                sides.append((sm.group(1), sm.group(2).upper()))
            declared[name] = sides
        else:
            raise DiagramError("cannot parse diagram line %r" % raw)
    return Diagram(crossings, mod_p=mod_p, outer=outer, base=base,
                   declared_faces=declared, l_overrides=overrides)


def alexander_numbering(diagram):
    """Region numbering with num(left) = num(right) + 1 across every
    semiarc.  Planar diagrams get integers anchored at outer = 0;
    `mod p` diagrams get residues anchored at the base face (or face 0).
    Returns the list of face numbers, or None when no mod-p numbering
    exists."""
    nf = len(diagram.faces)
    if diagram.mod_p == 0:
        if diagram.euler_characteristic() != 2:
            raise DiagramError(
                "Euler characteristic %d != 2: not a planar diagram "
                "(declare 'mod p' for a diagram on a surface)"
                % diagram.euler_characteristic())
        if diagram.outer is None:
            raise DiagramError("planar numbering needs an 'outer' face")
        outer = diagram._face_id_index(diagram.outer)
        edges = [diagram.left_right_faces(s) for s in diagram.semiarcs]
        adj = {f: [] for f in range(nf)}
        for left, right in edges:
            adj[right].append((left, 1))
            adj[left].append((right, -1))
        num = {outer: 0}
        queue = [outer]
        while queue:
            f = queue.pop()
            for g, delta in adj[f]:
                if g not in num:
                    num[g] = num[f] + delta
                    queue.append(g)
        if len(num) != nf:
            raise DiagramError("diagram is not connected")
        for left, right in edges:
            if num[left] != num[right] + 1:
                raise DiagramError("inconsistent region numbering")
        return [num[i] for i in range(nf)]

    p = diagram.mod_p
    rows, rhs = [], []
    for s in diagram.semiarcs:
        left, right = diagram.left_right_faces(s)
        row = [0] * nf
        row[left] += 1
        row[right] -= 1
        rows.append(row)
        rhs.append(1)
    anchor = (diagram._face_id_index(diagram.base)
              if diagram.base is not None else 0)
    row = [0] * nf
    row[anchor] = 1
    rows.append(row)
    rhs.append(0)
    sol = solve_linear(IntMatrix(len(rows), nf, rows), rhs, p)
    return sol


def colorings(diagram, x):
    """All colorings of the semiarcs by the quandle x: the over-arc
    color passes through, and under-out = under-in * over at positive
    crossings (under-in = under-out * over at negative ones)."""
    arcs = diagram.semiarcs
    pos = {s: i for i, s in enumerate(arcs)}
    constraints = []
    for sign, (a, b, c, d) in diagram.crossings:
        over_in, over_out = (d, b) if sign > 0 else (b, d)
        constraints.append(("eq", pos[over_in], pos[over_out]))
        if sign > 0:
            constraints.append(("op", pos[c], pos[a], pos[over_in]))
        else:
            constraints.append(("op", pos[a], pos[c], pos[over_in]))
    out = []
    n = len(arcs)
    colors = [None] * n

    def ok(i):
        for kind, u, v, *rest in constraints:
            if kind == "eq":
                if colors[u] is not None and colors[v] is not None \
                        and colors[u] != colors[v]:
                    return False
            else:
                w = rest[0]
                if None not in (colors[u], colors[v], colors[w]) \
                        and colors[u] != x.op(colors[v], colors[w]):
                    return False
        return True

    def extend(i):
        if i == n:
            out.append({arcs[j]: colors[j] for j in range(n)})
            return
        for v in range(x.size):
            colors[i] = v
            if ok(i):
                extend(i + 1)
            colors[i] = None

    extend(0)
    return out


def _check_t_order(ring, p):
    probe = [0] * ring.degree
    for i in range(ring.degree):
        probe[i] = 1
        e = tuple(probe)
        if ring.t_pow(e, p) != e:
            raise RingError(
                "mod-%d numbering needs T^%d to act trivially on the "
                "coefficients" % (p, p))
        probe[i] = 0


def state_sum(diagram, x, ring, phi, check=True):
    """Cocycle state sum of a link diagram.

    Returns (value, colorings, per_coloring) where value is a group-ring
    element of Z[A], colorings the list of colorings, and per_coloring
    the ring-element weight of each.  For `mod p` diagrams the value is
    canonicalized under the T-action (the base region is a free choice);
    an unnumberable mod-p diagram yields 0.
    """
    if check:
        ok, witness = is_cocycle(ComplexSpec(x, ring, "TQ", 2), phi)
        if not ok:
            raise DiagramError("weight function fails the 2-cocycle "
                               "condition at %r" % (witness,))
    if diagram.mod_p:
        _check_t_order(ring, diagram.mod_p)
    if diagram.l_overrides and len(diagram.l_overrides) == len(diagram.crossings):
        num = None
        lnum = lambda ci: diagram.l_overrides[ci]
    else:
        num = alexander_numbering(diagram)
        if num is None:
            return GroupRingElem(ring), colorings(diagram, x), []
        lnum = lambda ci: diagram.l_overrides.get(
            ci, num[diagram.source_region(ci)])
    value = GroupRingElem(ring)
    cols = colorings(diagram, x)
    weights = []
    for col in cols:
        w = ring.zero()
        for ci, (sign, (a, b, c, d)) in enumerate(diagram.crossings):
            xc = col[a] if sign > 0 else col[c]
            yc = col[d] if sign > 0 else col[b]
            contrib = ring.t_pow(phi((xc, yc)), -lnum(ci))
            w = ring.add(w, contrib) if sign > 0 else ring.sub(w, contrib)
        weights.append(w)
        value.add_term(w, 1)
    if diagram.mod_p:
        value = value.canonical_under_T()
    return value, cols, weights


# -- knotted surface presentations ------------------------------------------

@dataclass
class SurfacePresentation:
    """Combinatorial data of a knotted-surface diagram: sheet names,
    broken-sheet relations 'c = a * b' along double curves, and triple
    points with sign, source-region number L and the three sheet colors
    (x bottom, y middle, z top)."""
    sheets: list
    rels: list          # [(c, a, b)]
    triples: list       # [(sign, L, x, y, z)]

    def __post_init__(self):
        known = set(self.sheets)
        for c, a, b in self.rels:
            if {c, a, b} - known:
                raise DiagramError("relation uses unknown sheet")
        for sign, L, xx, yy, zz in self.triples:
            if {xx, yy, zz} - known:
                raise DiagramError("triple point uses unknown sheet")
            if sign not in (1, -1):
                raise DiagramError("triple point sign must be +-1")


def parse_surface(text):
    """Parse 'sheets: a b c', 'rel: c = a * b' and
    'tp: sign=+1 L=0 x=a y=b z=c' lines."""
    sheets, rels, triples = [], [], []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, body = line.partition(":")
        head = head.strip().lower()
        body = body.strip()
        if head == "sheets":
            sheets.extend(body.split())
        elif head == "rel":
            m = re.match(r"^(\w+)\s*=\s*(\w+)\s*\*\s*(\w+)$", body)
            if not m:
                raise DiagramError("malformed relation %r" % raw)
            rels.append((m.group(1), m.group(2), m.group(3)))
        elif head == "tp":
            fields = {}
            for tok in body.split():
                k, _, v = tok.partition("=")
                fields[k.lower()] = v
            try:
                triples.append((int(fields["sign"]), int(fields["l"]),
                                fields["x"], fields["y"], fields["z"]))
            except KeyError as e:
                raise DiagramError("triple point missing field %s" % e)
        else:
            raise DiagramError("cannot parse surface line %r" % raw)
    if not sheets:
        raise DiagramError("surface presentation has no sheets")
    return SurfacePresentation(sheets, rels, triples)


def surface_colorings(sp, x):
    """Colorings of the sheets by the quandle x satisfying the
    broken-sheet relations."""
    idx = {s: i for i, s in enumerate(sp.sheets)}
    rels = [(idx[c], idx[a], idx[b]) for c, a, b in sp.rels]
    out = []
    n = len(sp.sheets)
    colors = [None] * n

    def ok():
        return all(
            None in (colors[c], colors[a], colors[b])
            or colors[c] == x.op(colors[a], colors[b])
            for c, a, b in rels)

    def extend(i):
        if i == n:
            out.append({sp.sheets[j]: colors[j] for j in range(n)})
            return
        for v in range(x.size):
            colors[i] = v
            if ok():
                extend(i + 1)
            colors[i] = None

    extend(0)
    return out


def state_sum_surface(sp, x, ring, theta, check=True):
    """Cocycle state sum of a knotted-surface presentation, using a
    3-cocycle theta; the value is canonicalized under the T-action.
    Returns (value, colorings, per_coloring)."""
    if check:
        ok, witness = is_cocycle(ComplexSpec(x, ring, "TQ", 3), theta)
        if not ok:
            raise DiagramError("weight function fails the 3-cocycle "
                               "condition at %r" % (witness,))
    value = GroupRingElem(ring)
    cols = surface_colorings(sp, x)
    weights = []
    for col in cols:
        w = ring.zero()
        for sign, L, xx, yy, zz in sp.triples:
            contrib = ring.t_pow(theta((col[xx], col[yy], col[zz])), -L)
            w = ring.add(w, contrib) if sign > 0 else ring.sub(w, contrib)
        weights.append(w)
        value.add_term(w, 1)
    return value.canonical_under_T(), cols, weights
