"""Exact linear algebra over Q, F_p, and Z.

Everything here is elimination-based and deterministic: ranks and kernels for
field coefficients, Smith normal form over the integers, homology
dimensions from a pair of composable differentials, and an incremental
span reducer used for quotient-space bookkeeping.

Three elimination backends, chosen by coefficient ring:
  * F_2: columns packed into python ints as bitsets, pivot by bit position.
  * F_p (p odd): dict vectors with arithmetic mod p.
  * Q: columns scaled to integer dicts, fraction-free cross-multiply
    updates with joint gcd normalization so entries stay small.
Kernel bases are canonical independently of backend: for each free column f
the unique kernel vector with coefficient 1 at f and 0 at every other free
column, emitted in ascending order of f.
"""

import heapq
from fractions import Fraction
from math import gcd, lcm

from .errors import CompositeNotZero, MismatchedComplex
from .sparse import SparseMatrix


# ---------------------------------------------------------------------------
# column echelon engines


def _columns_as_bitsets(matrix):
    bits = [0] * matrix.cols
    for (i, j) in matrix.entries:
        bits[j] |= 1 << i
    return bits


def _echelon_gf2(bit_columns, want_kernel):
    """Left-to-right elimination on bitset columns; lead = highest bit."""
    pivots = {}
    kernel = []
    for j, col in enumerate(bit_columns):
        hist = 1 << j
        while col:
            lead = col.bit_length() - 1
            piv = pivots.get(lead)
            if piv is None:
                break
            col ^= piv[0]
            hist ^= piv[1]
        if col:
            pivots[col.bit_length() - 1] = (col, hist)
        elif want_kernel:
            vec = {}
            h = hist
            while h:
                low = (h & -h).bit_length() - 1
                vec[low] = 1
                h &= h - 1
            kernel.append(vec)
    return len(pivots), kernel


def _echelon_fp(columns, p, want_kernel):
    """Dict columns mod p; lead = smallest row index."""
    pivots = {}
    kernel = []
    for j, col in enumerate(columns):
        col = dict(col)
        hist = {j: 1}
        while col:
            lead = min(col)
            piv = pivots.get(lead)
            if piv is None:
                break
            pcol, phist = piv
            f = (col[lead] * pow(pcol[lead], p - 2, p)) % p
            _submul_fp(col, f, pcol, p)
            _submul_fp(hist, f, phist, p)
        if col:
            pivots[min(col)] = (col, hist)
        elif want_kernel:
            inv = pow(hist[j], p - 2, p)
            kernel.append({k: (v * inv) % p for k, v in hist.items()})
    return len(pivots), kernel


def _submul_fp(dst, f, src, p):
    for k, v in src.items():
        s = (dst.get(k, 0) - f * v) % p
        if s:
            dst[k] = s
        else:
            dst.pop(k, None)


def _echelon_q(columns, want_kernel):
    """Fraction-free: scale each rational column to integers, cross-multiply.

    Invariant per in-progress column j: col = sum_k hist[k] * scaled_col_k,
    preserved by joint gcd normalization. A vanished column yields the
    kernel vector of the original matrix after undoing the column scales.
    """
    scaled = []
    scales = []
    for col in columns:
        m = lcm(*(v.denominator for v in col.values())) if col else 1
        scaled.append({k: int(v * m) for k, v in col.items()})
        scales.append(m)
    pivots = {}
    kernel = []
    for j, col in enumerate(scaled):
        col = dict(col)
        hist = {j: 1}
        while col:
            lead = min(col)
            piv = pivots.get(lead)
            if piv is None:
                break
            pcol, phist = piv
            a, b = pcol[lead], col[lead]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            _combine_int(col, fa, fb, pcol)
            _combine_int(hist, fa, fb, phist)
            _gcd_normalize(col, hist)
        if col:
            pivots[min(col)] = (col, hist)
        elif want_kernel:
            vec = {k: Fraction(v * scales[k]) for k, v in hist.items()}
            lead_val = vec[j]
            kernel.append({k: v / lead_val for k, v in vec.items()})
    return len(pivots), kernel


def _combine_int(dst, fa, fb, src):
    """dst := fa*dst - fb*src over the integers."""
    for k in list(dst):
        dst[k] *= fa
    for k, v in src.items():
        s = dst.get(k, 0) - fb * v
        if s:
            dst[k] = s
        else:
            dst.pop(k, None)


def _gcd_normalize(col, hist):
    g = 0
    for v in col.values():
        g = gcd(g, v)
    for v in hist.values():
        g = gcd(g, v)
    if g > 1:
        for k in col:
            col[k] //= g
        for k in hist:
            hist[k] //= g


def _echelon(matrix, ring, want_kernel):
    if ring.kind == "Fp" and ring.p == 2:
        return _echelon_gf2(_columns_as_bitsets(matrix), want_kernel)
    if ring.kind == "Fp":
        return _echelon_fp(matrix.column_dicts(), ring.p, want_kernel)
    return _echelon_q(matrix.column_dicts(), want_kernel)


def rank(matrix, ring):
    ring.require_field("rank")
    r, _ = _echelon(matrix, ring, want_kernel=False)
    return r


def kernel_basis(matrix, ring):
    """Canonical kernel basis as {column_index: scalar} dicts.

    One vector per free column f, with coefficient 1 at f and support
    otherwise only on pivot columns left of f; ordered by ascending f.
    """
    ring.require_field("kernel_basis")
    _, kernel = _echelon(matrix, ring, want_kernel=True)
    return kernel


def _rank_int_over_q(matrix):
    """Rank of an integer matrix over the rationals (internal, for Z homology)."""
    cols = [dict(c) for c in matrix.column_dicts()]
    pivots = {}
    count = 0
    for col in cols:
        while col:
            lead = min(col)
            piv = pivots.get(lead)
            if piv is None:
                break
            a, b = piv[lead], col[lead]
            g = gcd(a, b)
            _combine_int(col, a // g, b // g, piv)
            g = 0
            for v in col.values():
                g = gcd(g, v)
            if g > 1:
                for k in col:
                    col[k] //= g
        if col:
            pivots[min(col)] = col
            count += 1
    return count


def solve(matrix, target, ring):
    """One solution x of matrix * x = target, or None; x as {col: scalar}."""
    ring.require_field("solve")
    red = SpanReducer(ring, track=True)
    cols = matrix.column_dicts()
    for j, col in enumerate(cols):
        red.add(col, tag=j)
    residue, combo = red.reduce(target)
    if residue:
        return None
    return combo


# ---------------------------------------------------------------------------
# Smith normal form


class SmithForm:
    """U * A * V = D with U, V unimodular and D diagonal, d_i | d_{i+1}."""

    __slots__ = ("diagonal", "transform_left", "transform_right")

    def __init__(self, diagonal, transform_left=None, transform_right=None):
        self.diagonal = diagonal
        self.transform_left = transform_left
        self.transform_right = transform_right

    @property
    def invariant_factors(self):
        return [d for d in self.diagonal if d != 0]


def smith_normal_form(matrix, with_transforms=False):
    r, c = matrix.rows, matrix.cols
    a = [[0] * c for _ in range(r)]
    for (i, j), v in matrix.entries.items():
        assert isinstance(v, int), "Smith form needs integer entries"
        a[i][j] = v
    u = [[int(i == j) for j in range(r)] for i in range(r)] if with_transforms else None
    v = [[int(i == j) for j in range(c)] for i in range(c)] if with_transforms else None

    def row_sub(dst, src, q):
        arow, srow = a[dst], a[src]
        for k in range(c):
            arow[k] -= q * srow[k]
        if u is not None:
            urow, usrc = u[dst], u[src]
            for k in range(r):
                urow[k] -= q * usrc[k]

    def col_sub(dst, src, q):
        for row in a:
            row[dst] -= q * row[src]
        if v is not None:
            for row in v:
                row[dst] -= q * row[src]

    def row_swap(i1, i2):
        a[i1], a[i2] = a[i2], a[i1]
        if u is not None:
            u[i1], u[i2] = u[i2], u[i1]

    def col_swap(j1, j2):
        for row in a:
            row[j1], row[j2] = row[j2], row[j1]
        if v is not None:
            for row in v:
                row[j1], row[j2] = row[j2], row[j1]

    def row_negate(i):
        a[i] = [-x for x in a[i]]
        if u is not None:
            u[i] = [-x for x in u[i]]

    t = 0
    bound = min(r, c)
    while t < bound:
        best = None
        for i in range(t, r):
            for j in range(t, c):
                x = a[i][j]
                if x and (best is None or (abs(x), i, j) < best):
                    best = (abs(x), i, j)
        if best is None:
            break
        while True:
            _, bi, bj = best
            if bi != t:
                row_swap(t, bi)
            if bj != t:
                col_swap(t, bj)
            piv = a[t][t]
            dirty = False
            for i in range(t + 1, r):
                if a[i][t]:
                    q = a[i][t] // piv
                    if q:
                        row_sub(i, t, q)
                    if a[i][t]:
                        dirty = True
            if not dirty:
                for j in range(t + 1, c):
                    if a[t][j]:
                        q = a[t][j] // piv
                        if q:
                            col_sub(j, t, q)
                        if a[t][j]:
                            dirty = True
            if not dirty:
                # pivot must divide the rest of the block for the factor chain
                viol = None
                for i in range(t + 1, r):
                    for j in range(t + 1, c):
                        if a[i][j] % piv:
                            viol = i
                            break
                    if viol is not None:
                        break
                if viol is None:
                    break
                row_sub(t, viol, -1)
            best = None
            for i in range(t, r):
                for j in range(t, c):
                    x = a[i][j]
                    if x and (best is None or (abs(x), i, j) < best):
                        best = (abs(x), i, j)
        if a[t][t] < 0:
            row_negate(t)
        t += 1

    diagonal = [a[i][i] for i in range(bound)]
    if not with_transforms:
        return SmithForm(diagonal)
    from .rings import INTEGERS
    tl = SparseMatrix.from_entries(
        r, r, [(i, j, u[i][j]) for i in range(r) for j in range(r)], INTEGERS)
    tr = SparseMatrix.from_entries(
        c, c, [(i, j, v[i][j]) for i in range(c) for j in range(c)], INTEGERS)
    return SmithForm(diagonal, tl, tr)


# ---------------------------------------------------------------------------
# homology


class HomologySummary:
    __slots__ = ("ring", "free_rank", "torsion")

    def __init__(self, ring, free_rank, torsion=()):
        self.ring = ring
        self.free_rank = free_rank
        self.torsion = tuple(torsion)

    @property
    def dimension(self):
        """Over a field this is the dimension; over Z the free rank."""
        return self.free_rank

    def __eq__(self, other):
        return (isinstance(other, HomologySummary)
                and self.ring.name == other.ring.name
                and self.free_rank == other.free_rank
                and self.torsion == other.torsion)

    def __repr__(self):
        if self.torsion:
            return "HomologySummary(%s, free=%d, torsion=%s)" % (
                self.ring.name, self.free_rank, list(self.torsion))
        return "HomologySummary(%s, %d)" % (self.ring.name, self.free_rank)


def homology_dimensions(outgoing, incoming, ring):
    """Homology at the middle of incoming -> middle -> outgoing.

    outgoing: middle -> next (kernel side), incoming: previous -> middle
    (image side). The composite is checked to vanish first.
    """
    if outgoing.cols != incoming.rows:
        raise MismatchedComplex(
            "middle dimensions disagree: outgoing has %d columns, incoming has %d rows"
            % (outgoing.cols, incoming.rows))
    if not outgoing.mul(incoming, ring).is_zero():
        raise CompositeNotZero(
            "composite of consecutive differentials is nonzero (%dx%d through %d)"
            % (outgoing.rows, incoming.cols, outgoing.cols))
    mid = outgoing.cols
    if ring.is_field:
        r_out = rank(outgoing, ring)
        r_in = rank(incoming, ring)
        return HomologySummary(ring, mid - r_out - r_in)
    r_out = _rank_int_over_q(outgoing)
    r_in = _rank_int_over_q(incoming)
    torsion = [d for d in smith_normal_form(incoming).invariant_factors if d > 1]
    return HomologySummary(ring, mid - r_out - r_in, torsion)


# ---------------------------------------------------------------------------
# incremental span reduction


class SpanReducer:
    """Growing span of vectors ({index: scalar} dicts) with reduction.

    add() inserts a vector if independent of the current span; reduce()
    rewrites a vector as residue + combination of previously added ones.
    With track=True the combination is reported over the tags passed to
    add(); vectors added with tag=None are quotiented out silently, which
    is how "modulo boundaries" bookkeeping is done.
    """

    def __init__(self, ring, track=False):
        ring.require_field("span reduction")
        self.ring = ring
        self.track = track
        self.pivots = {}

    def reduce(self, vec):
        ring = self.ring
        residue = {k: v for k, v in vec.items() if not ring.is_zero(v)}
        combo = {} if self.track else None
        heap = list(residue)
        heapq.heapify(heap)
        settled = set()
        while heap:
            idx = heapq.heappop(heap)
            if idx in settled or idx not in residue:
                continue
            piv = self.pivots.get(idx)
            if piv is None:
                settled.add(idx)
                continue
            pvec, phist = piv
            f = residue[idx]  # pivot lead coefficient is normalized to 1
            for k, v in pvec.items():
                fresh = k not in residue
                s = ring.sub(residue.get(k, ring.zero()), ring.mul(f, v))
                if ring.is_zero(s):
                    residue.pop(k, None)
                else:
                    residue[k] = s
                    if fresh:
                        heapq.heappush(heap, k)
            if self.track and phist is not None:
                for tag, v in phist.items():
                    s = ring.add(combo.get(tag, ring.zero()), ring.mul(f, v))
                    if ring.is_zero(s):
                        combo.pop(tag, None)
                    else:
                        combo[tag] = s
        return residue, combo

    def add(self, vec, tag=None):
        """Reduce and insert; returns True when the vector enlarged the span."""
        residue, combo = self.reduce(vec)
        if not residue:
            return False
        ring = self.ring
        lead = min(residue)
        inv = ring.inv(residue[lead])
        pvec = {k: ring.mul(inv, v) for k, v in residue.items()}
        phist = None
        if self.track:
            # residue = orig - sum(combo); pivot history stays in orig terms
            phist = {t: ring.mul(inv, ring.neg(v)) for t, v in combo.items()}
            if tag is not None:
                phist[tag] = ring.add(phist.get(tag, ring.zero()), inv)
            phist = {t: v for t, v in phist.items() if not ring.is_zero(v)}
        self.pivots[lead] = (pvec, phist)
        return True

    def contains(self, vec):
        residue, _ = self.reduce(vec)
        return not residue

    def __len__(self):
        return len(self.pivots)


class Gf2SpanReducer:
    """Bitset SpanReducer specialization for F_2.

    Same contract as SpanReducer: reduce(v) returns (residue, combo) with
    v = residue + sum(combo[tag] * original tagged vector) modulo the span
    of the untagged additions. Histories are bitmasks over tag slots, so
    tracking stays at word speed even for wide vectors.
    """

    def __init__(self, track=False):
        self.track = track
        self.pivots = {}
        self.history = {}
        self.tags = []

    @staticmethod
    def pack(vec):
        bits = 0
        for k, v in vec.items():
            if v & 1:
                bits |= 1 << k
        return bits

    def _reduce_bits(self, bits):
        done = 0
        hist = 0
        while bits:
            low_bit = bits & -bits
            piv = self.pivots.get(low_bit)
            if piv is None:
                done |= low_bit
                bits ^= low_bit
            else:
                bits ^= piv
                if self.track:
                    hist ^= self.history[low_bit]
        return done, hist

    def reduce_bits(self, bits):
        return self._reduce_bits(bits)[0]

    def add_bits(self, bits, tag=None):
        residue, hist = self._reduce_bits(bits)
        if not residue:
            return False
        if self.track:
            if tag is not None:
                hist ^= 1 << len(self.tags)
                self.tags.append(tag)
            self.history[residue & -residue] = hist
        self.pivots[residue & -residue] = residue
        return True

    def add(self, vec, tag=None):
        return self.add_bits(self.pack(vec), tag)

    def reduce(self, vec):
        residue, hist = self._reduce_bits(self.pack(vec))
        combo = {}
        while hist:
            low = hist & -hist
            combo[self.tags[low.bit_length() - 1]] = 1
            hist ^= low
        out = {}
        while residue:
            low = residue & -residue
            out[low.bit_length() - 1] = 1
            residue ^= low
        return out, combo

    def contains(self, vec):
        return self.reduce_bits(self.pack(vec)) == 0

    def __len__(self):
        return len(self.pivots)


def make_span_reducer(ring, track=False):
    """Pick the fast F_2 reducer whenever the coefficients allow it."""
    if ring.kind == "Fp" and ring.p == 2:
        return Gf2SpanReducer(track)
    return SpanReducer(ring, track=track)
