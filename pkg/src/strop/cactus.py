"""Exact combinatorial cacti: tree-like circle configurations with the
operad structure (validation, boundary traversal, symmetric group
action, composition).

A cactus here is pure combinatorial-metric data: k oriented circles
where circle i is parameterized by arc length of total r_i (the radius
doubles as the circumference since only ratios matter), Sum r_i = 1, so
the whole boundary has length exactly 1.  Circles meet at vertices whose
dual graph must be a tree; each vertex carries a cyclic order on its
incidences, and the boundary traversal switches to the next incidence in
that order.  Positions are rationals measured from each circle's marked
point (parameter 0).  No floats and no planar embedding anywhere: every
operation is exact, and equality is equality of canonical forms.
"""

from bisect import bisect_right
from fractions import Fraction

from .errors import ArityMismatch, InvalidCactus, ParseError
from .textio import emit_fields, parse_fields, require_fields


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise ParseError("boolean is not a scalar position")
    if isinstance(x, (int, str)):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError):
            raise ParseError("malformed rational %r" % (x,)) from None
    raise ParseError("cannot read %r as an exact rational" % (x,))


class Cactus:
    """k circles with radii, vertices (cyclically ordered incidence
    lists), and a basepoint (component, position).

    The constructor normalizes to canonical form: every vertex's cyclic
    incidence tuple is rotated so its smallest (circle, position) entry
    comes first, and vertices are sorted by that entry.  Equality and
    hashing act on this canonical data.
    """

    __slots__ = ("radii", "vertices", "basepoint")

    def __init__(self, radii, vertices, basepoint):
        self.radii = tuple(_frac(r) for r in radii)
        canon = []
        for inc in vertices:
            entries = tuple((int(i), _frac(t)) for i, t in inc)
            if entries:
                lead = min(range(len(entries)), key=lambda u: entries[u])
                entries = entries[lead:] + entries[:lead]
            canon.append(entries)
        self.vertices = tuple(sorted(canon))
        j0, t0 = basepoint
        self.basepoint = (int(j0), _frac(t0))

    @property
    def k(self):
        return len(self.radii)

    def _counts(self):
        # m counts distinct vertices per circle, so a vertex listed twice
        # on one circle breaks Sum mu = m rather than hiding in it
        on_circle = {}
        for vi, inc in enumerate(self.vertices):
            for i, _t in inc:
                on_circle.setdefault(i, set()).add(vi)
        m = sum(len(s) for s in on_circle.values())
        mults = tuple(len(inc) for inc in self.vertices)
        return m, len(self.vertices), mults

    def __eq__(self, other):
        if not isinstance(other, Cactus):
            return NotImplemented
        return (self.radii == other.radii
                and self.vertices == other.vertices
                and self.basepoint == other.basepoint)

    def __hash__(self):
        return hash((self.radii, self.vertices, self.basepoint))

    def __repr__(self):
        return "Cactus(k=%d, vertices=%d)" % (self.k, len(self.vertices))


class ValidationReport:
    __slots__ = ("valid", "violation", "detail", "k", "m", "n",
                 "multiplicities")

    def __init__(self, valid, violation, detail, k, m, n, multiplicities):
        self.valid = valid
        self.violation = violation
        self.detail = detail
        self.k = k
        self.m = m
        self.n = n
        self.multiplicities = multiplicities

    def document_fields(self):
        return [
            ("valid", self.valid),
            ("violation", self.violation),
            ("detail", self.detail),
            ("components", self.k),
            ("incidence_total", self.m),
            ("vertex_count", self.n),
            ("multiplicities", list(self.multiplicities)),
        ]

    def __repr__(self):
        if self.valid:
            return "ValidationReport(valid, k=%d, m=%d, n=%d)" % (
                self.k, self.m, self.n)
        return "ValidationReport(invalid: %s)" % self.violation


def validate(c):
    """Check every cactus invariant, reporting the first violated
    relation by name.  Returns a report; never raises on bad geometry.

    Check order: component count, radius positivity, radius sum,
    incidence range, position range, distinct positions, vertex
    multiplicity, vertex multiplicity sum, tree condition, vertex count
    relation, basepoint range.
    """
    k = c.k
    m, n, mults = c._counts()

    def fail(name, detail):
        return ValidationReport(False, name, detail, k, m, n, mults)

    if k < 1:
        return fail("component count", "a cactus needs at least one circle")
    for i, r in enumerate(c.radii):
        if r <= 0:
            return fail("radius positivity",
                        "circle %d has radius %s" % (i, r))
    total = sum(c.radii)
    if total != 1:
        return fail("radius sum", "radii sum to %s, not 1" % total)
    for vi, inc in enumerate(c.vertices):
        for i, _t in inc:
            if not 0 <= i < k:
                return fail("incidence range",
                            "vertex %d references circle %d" % (vi, i))
    for vi, inc in enumerate(c.vertices):
        for i, t in inc:
            if not 0 <= t < c.radii[i]:
                return fail("position range",
                            "vertex %d sits at %s on circle %d of length %s"
                            % (vi, t, i, c.radii[i]))
    seen = {}
    for vi, inc in enumerate(c.vertices):
        for i, t in inc:
            if (i, t) in seen:
                return fail("distinct positions",
                            "vertices %d and %d share position %s on "
                            "circle %d" % (seen[(i, t)], vi, t, i))
            seen[(i, t)] = vi
    for vi, inc in enumerate(c.vertices):
        if len(inc) < 2:
            return fail("vertex multiplicity",
                        "vertex %d lies on %d circle(s); an intersection "
                        "needs at least 2" % (vi, len(inc)))
    if sum(mults) != m:
        return fail("vertex multiplicity sum",
                    "multiplicities sum to %d but %d circle incidences "
                    "were counted" % (sum(mults), m))
    # dual graph: circles and vertices as nodes, incidences as edges
    parent = list(range(k + n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = 0
    for vi, inc in enumerate(c.vertices):
        for i in set(i for i, _t in inc):
            edges += 1
            a, b = find(i), find(k + vi)
            if a == b:
                return fail("tree condition", "dual graph has a cycle")
            parent[a] = b
    if len(set(find(x) for x in range(k + n))) != 1:
        return fail("tree condition", "dual graph is disconnected")
    if m - n != k - 1:
        return fail("vertex count relation",
                    "%d - %d != %d - 1" % (m, n, k))
    j0, t0 = c.basepoint
    if not 0 <= j0 < k or not 0 <= t0 < c.radii[j0]:
        return fail("basepoint range",
                    "basepoint (%s, %s) is not on a circle" % (j0, t0))
    return ValidationReport(True, None, "", k, m, n, mults)


class BoundaryWord:
    """Arc sequence of the boundary loop.  Each arc is (circle, start,
    end) with end = start + length left unreduced, so a full circle is
    unambiguous; reduce modulo the circle length to get positions.
    """

    __slots__ = ("arcs", "total_length")

    def __init__(self, arcs, total_length):
        self.arcs = tuple(arcs)
        self.total_length = total_length

    def __eq__(self, other):
        if not isinstance(other, BoundaryWord):
            return NotImplemented
        return self.arcs == other.arcs

    def __repr__(self):
        return "BoundaryWord(%d arcs, length %s)" % (len(self.arcs),
                                                     self.total_length)


def _incidence_events(c):
    events = {}
    for vi, inc in enumerate(c.vertices):
        for occ, (i, t) in enumerate(inc):
            events.setdefault(i, {})[t] = (vi, occ)
    return events


def boundary_traversal(c):
    """Walk the boundary from the basepoint: follow the current circle
    in its orientation, and at each vertex switch to the next incident
    circle in the vertex's cyclic ordering, until total length 1 is
    consumed.  Each circle is covered exactly once.
    """
    report = validate(c)
    if not report.valid:
        raise InvalidCactus("invalid cactus: %s (%s)"
                            % (report.violation, report.detail))
    events = _incidence_events(c)
    j0, t0 = c.basepoint
    circle, pos = j0, t0
    remaining = Fraction(1)
    arcs = []
    covered = {}
    for _guard in range(report.m + 5):
        r = c.radii[circle]
        ahead = [(p - pos) % r or r for p in events.get(circle, ())]
        step = min(ahead) if ahead else r
        length = min(step, remaining)
        arcs.append((circle, pos, pos + length))
        covered[circle] = covered.get(circle, Fraction(0)) + length
        remaining -= length
        end = (pos + length) % r
        if remaining == 0:
            point_ok = (circle, end) == (j0, t0)
            if not point_ok and end in events.get(circle, {}) \
                    and t0 in events.get(j0, {}):
                point_ok = events[circle][end][0] == events[j0][t0][0]
            if not point_ok:
                raise InvalidCactus(
                    "boundary traversal does not close at the basepoint")
            break
        vi, occ = events[circle][end]
        inc = c.vertices[vi]
        circle, pos = inc[(occ + 1) % len(inc)]
    else:
        raise InvalidCactus("boundary traversal does not terminate")
    if any(covered.get(i, 0) != c.radii[i] for i in range(c.k)):
        raise InvalidCactus("boundary traversal misses part of a circle")
    return BoundaryWord(arcs, sum(a[2] - a[1] for a in arcs))


def unit_cactus():
    return Cactus([Fraction(1)], [], (0, Fraction(0)))


class _Resolver:
    """Locate boundary-length parameters of one input cactus: each
    t in [0, total) is either inside an arc of its boundary word (an
    interior circle point) or at an arc switch (a vertex occurrence:
    the tour arrives via that occurrence and leaves via the next)."""

    def __init__(self, cactus, word):
        self.cactus = cactus
        self.word = word
        self.events = _incidence_events(cactus)
        self.cum = [Fraction(0)]
        for _i, s, e in word.arcs:
            self.cum.append(self.cum[-1] + (e - s))

    def resolve(self, t):
        idx = bisect_right(self.cum, t) - 1
        if self.cum[idx] == t:
            # arc boundary: the point the previous arc ends on; t = 0 is
            # the wrap seam at the input basepoint, a vertex only when
            # the basepoint sits on one
            prev = self.word.arcs[idx - 1]
            pi, ps, pe = prev
            point = (pi, pe % self.cactus.radii[pi])
            hit = self.events.get(point[0], {}).get(point[1])
            if hit is not None:
                return ("vertex",) + hit
            ai, as_, _ae = self.word.arcs[idx]
            return ("interior", ai, as_)
        ai, as_, _ae = self.word.arcs[idx]
        r = self.cactus.radii[ai]
        return ("interior", ai, (as_ + (t - self.cum[idx])) % r)


def compose(c, inputs):
    """Replace each circle of c by the glued boundary of the matching
    input cactus, scaled to its radius.

    Vertices of c are carried through the boundary identification; a
    transported vertex that lands on an input vertex merges with it.
    The merged cyclic orders fall out of the tour structure: every
    vertex occurrence has a successor (its own cyclic next, overridden
    at glue points by the jump the outer vertex dictates), and the
    composed vertices are the cycles of that successor map.
    """
    outer = validate(c)
    if not outer.valid:
        raise InvalidCactus("invalid outer cactus: %s" % outer.violation)
    if len(inputs) != c.k:
        raise ArityMismatch("cactus over %d inputs composed with %d"
                            % (c.k, len(inputs)))
    resolvers = []
    offsets = []
    off = 0
    for i, inp in enumerate(inputs):
        rep = validate(inp)
        if not rep.valid:
            raise InvalidCactus("invalid input cactus %d: %s"
                                % (i, rep.violation))
        resolvers.append(_Resolver(inp, boundary_traversal(inp)))
        offsets.append(off)
        off += inp.k

    radii = []
    for i, inp in enumerate(inputs):
        radii.extend(c.radii[i] * r for r in inp.radii)

    def global_point(i, a, pos):
        return (offsets[i] + a, c.radii[i] * pos)

    points = {}
    succ = {}
    for i, inp in enumerate(inputs):
        for vi, inc in enumerate(inp.vertices):
            for occ, (a, pos) in enumerate(inc):
                key = ("v", i, vi, occ)
                points[key] = global_point(i, a, pos)
                succ[key] = ("v", i, vi, (occ + 1) % len(inc))

    def arrival_key(i, res):
        if res[0] == "vertex":
            return ("v", i, res[1], res[2])
        key = ("p", i, res[1], res[2])
        points[key] = global_point(i, res[1], res[2])
        return key

    def departure_key(i, res):
        if res[0] == "vertex":
            _vi, _occ = res[1], res[2]
            mu = len(inputs[i].vertices[_vi])
            return ("v", i, _vi, (_occ + 1) % mu)
        return arrival_key(i, res)

    for inc in c.vertices:
        resolved = [(i, resolvers[i].resolve(t / c.radii[i])) for i, t in inc]
        for a in range(len(resolved)):
            i, res = resolved[a]
            i2, res2 = resolved[(a + 1) % len(resolved)]
            succ[arrival_key(i, res)] = departure_key(i2, res2)

    vertices = []
    consumed = set()
    for start in succ:
        if start in consumed:
            continue
        cycle = []
        key = start
        while True:
            if key in consumed:
                raise InvalidCactus("glued incidences do not close up")
            consumed.add(key)
            cycle.append(points[key])
            key = succ[key]
            if key == start:
                break
        vertices.append(cycle)

    j0, t0 = c.basepoint
    res0 = resolvers[j0].resolve(t0 / c.radii[j0])
    base = points[departure_key(j0, res0)]

    out = Cactus(radii, vertices, base)
    rep = validate(out)
    if not rep.valid:
        raise InvalidCactus("composition produced an invalid cactus: %s"
                            % rep.violation)
    return out


def permute(c, sigma):
    """Relabel components: component a of the result is component
    sigma[a] of c.  Geometry is untouched, so
    permute(permute(c, s), inverse(s)) == c.
    """
    sigma = tuple(int(s) for s in sigma)
    if sorted(sigma) != list(range(c.k)):
        raise ArityMismatch("not a permutation of %d components: %r"
                            % (c.k, sigma))
    inv = {old: new for new, old in enumerate(sigma)}
    radii = [c.radii[sigma[a]] for a in range(c.k)]
    vertices = [[(inv[i], t) for i, t in inc] for inc in c.vertices]
    j0, t0 = c.basepoint
    return Cactus(radii, vertices, (inv[j0], t0))


_CACTUS_KEYS = ("k", "radii", "vertices", "basepoint")


def cactus_fields(c):
    return [
        ("k", c.k),
        ("radii", [str(r) for r in c.radii]),
        ("vertices", [[[i, str(t)] for i, t in inc]
                      for inc in c.vertices]),
        ("basepoint", [c.basepoint[0], str(c.basepoint[1])]),
    ]


def cactus_to_text(c):
    return emit_fields(cactus_fields(c))


def cactus_from_text(text):
    fields = parse_fields(text, _CACTUS_KEYS)
    require_fields(fields, _CACTUS_KEYS)
    k = fields["k"]
    radii = fields["radii"]
    if not isinstance(k, int) or not isinstance(radii, list):
        raise ParseError("k must be an integer and radii a list")
    if len(radii) != k:
        raise ParseError("k is %r but %d radii are listed" % (k, len(radii)))
    verts = fields["vertices"]
    if not isinstance(verts, list):
        raise ParseError("vertices must be a list")
    vertices = []
    for row in verts:
        if not isinstance(row, list):
            raise ParseError("vertex %r is not an incidence list" % (row,))
        inc = []
        for pair in row:
            if not isinstance(pair, list) or len(pair) != 2 \
                    or not isinstance(pair[0], int):
                raise ParseError("incidence %r is not [circle, position]"
                                 % (pair,))
            inc.append((pair[0], _frac(pair[1])))
        vertices.append(inc)
    bp = fields["basepoint"]
    if not isinstance(bp, list) or len(bp) != 2 \
            or not isinstance(bp[0], int):
        raise ParseError("basepoint %r is not [component, position]"
                         % (bp,))
    return Cactus([_frac(r) for r in radii], vertices,
                  (bp[0], _frac(bp[1])))
