"""Hochschild cochain complex CH^*(A; A) of a finite graded algebra.

A window holds every elementary cochain (r_1, ..., r_s) -> b whose total
degree n = s + deg(b) - sum deg(r_j) lies in a requested range, with tensor
length capped at max_tensor_length.  In normalized mode the inputs r_j run
over a basis of the unit complement A-bar; the output b always runs over all
of A.  The differential is the sum of the internal part (induced by d_A on
the output and on each input slot) and the dual-bar part (multiplication by
an extra input on either side, and merging of adjacent inputs); all signs
live in the signs module.

Degree bookkeeping across a window is only exact where the tensor-length cap
does not bite.  For each total degree the window knows the largest tensor
length that can carry cohomology (from the reduced homology of A) and
records a per-degree saturated flag; the enumeration also truncates at that
bound, which keeps e.g. sphere-sized graded computations small.  Truncation
removes a subcomplex (arities above the cap are closed under the
differential whenever the cap is non-increasing in the degree, and in the
ungraded case arity equals degree so nothing mixes), so the retained
matrices still compose to zero; that is asserted at build time.
"""

from collections import namedtuple

from . import signs
from .errors import (
    CompositeNotZero,
    DegreeOutOfWindow,
    MismatchedWindow,
    StropError,
    WindowTooSmall,
)
from .algebra import accumulate
from .linalg import kernel_basis, make_span_reducer
from .sparse import SparseMatrix

Bidegree = namedtuple("Bidegree", ["s", "t"])


def _arity_bound_profile(algebra):
    """Per-total-degree bound on tensor lengths that can carry cohomology.

    Returns (fn, flavor) where fn(m) is the bound as an int (negative means
    the degree is empty of cohomology at every arity) or None when no finite
    bound exists.  The bound argument is a homology-level count: an arity-s
    class in total degree m needs s inputs of reduced degree >= minh, so
    m >= s + 0 - s*minh, i.e. s <= (maxh - m)/(minh - 1) when minh >= 2.
    """
    if max(algebra.degrees) == 0:
        # arity equals total degree on the nose; nothing above m survives
        return (lambda m: m if m >= 0 else -1), "ungraded"
    hdims = algebra.homology_dimensions()
    maxh = max((d for d, v in hdims.items() if v), default=0)
    reduced = algebra.reduced_homology_dimensions()
    nonzero = [d for d, v in reduced.items() if v]
    if not nonzero:
        return (lambda m: 0 if 0 <= m <= maxh else -1), "acyclic-reduced"
    minh = min(nonzero)
    if minh >= 2:
        step = minh - 1
        return (lambda m: (maxh - m) // step), "simply-connected"
    return (lambda m: None), "unbounded"


class HochschildWindow:
    """Bases and differential matrices for a total-degree range.

    Immutable after construction.  Basis elements are pairs
    (input_index_tuple, output_index); per degree they are ordered by tensor
    length, then output index, then the input tuple lexicographically.
    """

    def __init__(self, algebra, max_tensor_length, degree_range,
                 normalized=True, require_saturation=False):
        algebra.ring.require_field("hochschild window")
        lo, hi = degree_range
        if lo > hi:
            raise ValueError("empty degree range %r" % (degree_range,))
        if max_tensor_length < 0:
            raise ValueError("max_tensor_length must be >= 0")
        self.algebra = algebra
        self.ring = algebra.ring
        self.normalized = bool(normalized)
        self.max_tensor_length = int(max_tensor_length)
        self.lo = int(lo)
        self.hi = int(hi)
        if self.normalized:
            self.inputs = algebra.reduced_indices
        else:
            self.inputs = tuple(range(algebra.dim))

        bound_fn, self.arity_flavor = _arity_bound_profile(algebra)
        if not self.normalized and max(algebra.degrees) > 0:
            # with unit inputs allowed, graded degrees never stop growing in
            # S; the full complex is only exact arity-by-arity when ungraded
            bound_fn, self.arity_flavor = (lambda m: None), "unbounded"
        self._bound_fn = bound_fn
        self._bounds = {}
        S = self.max_tensor_length
        self.sigma = {}
        self._saturated = {}
        # A per-degree arity cut below the chain level is only sound when
        # nothing is actually dropped: for zero-differential (and ungraded)
        # algebras the chain level obeys the homology bound on the nose.
        # With a nonzero differential, truncating an acyclic-but-nonzero
        # row manufactures cohomology at the cut edge, so the cap must be
        # uniform; the bound then only certifies where the truncated answer
        # agrees with the untruncated one.  The top reported degree is
        # never certified in that case: tensor lengths S+1 at degree hi
        # fall outside the window, hiding failures of closedness one step
        # below.
        exact_occupancy = not algebra.diff
        for m in range(self.lo, self.hi + 1):
            b = self.arity_bound(m)
            if exact_occupancy:
                self.sigma[m] = S if b is None else min(S, b)
            else:
                self.sigma[m] = S
            self._saturated[m] = all(
                self.arity_bound(mm) is not None and self.arity_bound(mm) <= S
                for mm in (m - 1, m, m + 1)) and (
                    exact_occupancy or m <= self.hi - 2)
        if require_saturation:
            for m in range(self.lo + 1,
                           self.hi if exact_occupancy else self.hi - 1):
                if not self._saturated[m]:
                    needed = [self.arity_bound(mm) for mm in (m - 1, m, m + 1)]
                    raise WindowTooSmall(
                        "degree %d needs tensor lengths beyond %d to stabilize"
                        % (m, S),
                        degree=m,
                        needed=None if None in needed else max(needed))

        self._tuple_cache = {}
        self.basis = {}
        self.index = {}
        for m in range(self.lo, self.hi + 1):
            elems = []
            for s in range(0, self.sigma[m] + 1):
                for b in range(algebra.dim):
                    total = s + algebra.degrees[b] - m
                    for tup in self._tuples(s, total):
                        elems.append((tup, b))
            self.basis[m] = tuple(elems)
            self.index[m] = {e: p for p, e in enumerate(elems)}

        self._prepare_structure()
        self._internal = {}
        self._bar = {}
        self._diff = {}
        ring = self.ring
        for m in range(self.lo, self.hi):
            cols_i = []
            cols_b = []
            cols_d = []
            for elem in self.basis[m]:
                ci, cb = self._columns_for(elem, m)
                cols_i.append(ci)
                cols_b.append(cb)
                merged = dict(ci)
                accumulate(merged, ring.one(), cb, ring)
                cols_d.append(merged)
            rows = len(self.basis[m + 1])
            self._internal[m] = SparseMatrix.from_column_dicts(rows, cols_i, ring)
            self._bar[m] = SparseMatrix.from_column_dicts(rows, cols_b, ring)
            self._diff[m] = SparseMatrix.from_column_dicts(rows, cols_d, ring)
        self._check_square_zero()
        self._cohomology = None

    # -- enumeration -------------------------------------------------------

    def _tuples(self, s, total):
        """All length-s input tuples of total degree `total`, lexicographic."""
        if s == 0:
            return ((),) if total == 0 else ()
        key = (s, total)
        got = self._tuple_cache.get(key)
        if got is None:
            out = []
            degrees = self.algebra.degrees
            for i in self.inputs:
                for rest in self._tuples(s - 1, total - degrees[i]):
                    out.append((i,) + rest)
            got = self._tuple_cache[key] = tuple(out)
        return got

    def arity_bound(self, m):
        if m not in self._bounds:
            self._bounds[m] = self._bound_fn(m)
        return self._bounds[m]

    def saturated(self, m):
        """True when dimensions at m are final: raising S cannot change
        cohomology at m (bounds hold at m and both neighbours)."""
        if m in self._saturated:
            return self._saturated[m]
        return all(
            self.arity_bound(mm) is not None
            and self.arity_bound(mm) <= self.max_tensor_length
            for mm in (m - 1, m, m + 1))

    # -- structure maps ----------------------------------------------------

    def _prepare_structure(self):
        algebra = self.algebra
        normalized = self.normalized
        # inputs whose differential hits a given input index
        self._dinto = {r: [] for r in self.inputs}
        # ordered input pairs whose product hits a given input index
        self._pairs_into = {r: [] for r in self.inputs}
        for a in self.inputs:
            if normalized:
                da = algebra.reduced_differential(a)
            else:
                da = algebra.diff.get(a, {})
            for r, c in da.items():
                self._dinto[r].append((a, c))
        for a in self.inputs:
            for a2 in self.inputs:
                if normalized:
                    comp = algebra.reduced_product(a, a2)[1]
                else:
                    comp = algebra.multiply_basis(a, a2)
                for r, c in comp.items():
                    if r in self._pairs_into:
                        self._pairs_into[r].append((a, a2, c))

    def _put(self, acc, m, elem, sign, coeff):
        pos = self.index[m].get(elem)
        if pos is None:
            # only the tensor-length cap may drop a generated term
            assert len(elem[0]) > self.sigma[m], (elem, m)
            return
        ring = self.ring
        val = coeff if sign > 0 else ring.neg(coeff)
        cur = ring.add(acc.get(pos, ring.zero()), val)
        if ring.is_zero(cur):
            acc.pop(pos, None)
        else:
            acc[pos] = cur

    def _columns_for(self, elem, m):
        """Internal and bar differential columns of one elementary cochain."""
        algebra = self.algebra
        inputs, out = elem
        g = m - 1
        norms = [signs.shifted(algebra.degrees[r]) for r in inputs]
        prefix = [0]
        for v in norms:
            prefix.append(prefix[-1] + v)
        internal = {}
        bar = {}
        tgt = m + 1
        for k, c in algebra.diff.get(out, {}).items():
            self._put(internal, tgt, (inputs, k), signs.internal_output_sign(), c)
        for i in range(len(inputs)):
            sgn = signs.internal_slot_sign(g, prefix[i])
            for a, c in self._dinto[inputs[i]]:
                self._put(internal, tgt,
                          (inputs[:i] + (a,) + inputs[i + 1:], out), sgn, c)
        for a in self.inputs:
            lsgn = signs.bar_left_sign(g, signs.shifted(algebra.degrees[a]))
            for w, c in algebra.multiply_basis(a, out).items():
                self._put(bar, tgt, ((a,) + inputs, w), lsgn, c)
        rsgn = signs.bar_right_sign(signs.shifted(algebra.degrees[out]))
        for a in self.inputs:
            for w, c in algebra.multiply_basis(out, a).items():
                self._put(bar, tgt, (inputs + (a,), w), rsgn, c)
        for i in range(len(inputs)):
            for a, a2, c in self._pairs_into[inputs[i]]:
                sgn = signs.bar_middle_sign(
                    g, prefix[i], signs.shifted(algebra.degrees[a]))
                self._put(bar, tgt,
                          (inputs[:i] + (a, a2) + inputs[i + 1:], out), sgn, c)
        return internal, bar

    def _check_square_zero(self):
        ring = self.ring
        for m in range(self.lo, self.hi - 1):
            cur = self._diff[m].column_dicts()
            nxt = self._diff[m + 1].column_dicts()
            if ring.kind == "Fp" and ring.p == 2:
                packed = []
                for col in nxt:
                    bits = 0
                    for r, v in col.items():
                        if v & 1:
                            bits |= 1 << r
                    packed.append(bits)
                for col in cur:
                    acc = 0
                    for r, v in col.items():
                        if v & 1:
                            acc ^= packed[r]
                    if acc:
                        self._square_failure(m)
            else:
                for col in cur:
                    acc = {}
                    for r, v in col.items():
                        accumulate(acc, v, nxt[r], ring)
                    if acc:
                        self._square_failure(m)

    def _square_failure(self, m):
        err = CompositeNotZero(
            "hochschild differentials from degree %d do not compose to zero"
            % m)
        err.degree = m
        raise err

    # -- views -------------------------------------------------------------

    def _require_degree(self, m, top):
        if m < self.lo or m > top:
            raise DegreeOutOfWindow(
                "degree %d outside window [%d, %d]" % (m, self.lo, top))

    def dimension(self, m):
        self._require_degree(m, self.hi)
        return len(self.basis[m])

    def basis_at(self, m):
        self._require_degree(m, self.hi)
        return self.basis[m]

    def position(self, m, inputs, output):
        self._require_degree(m, self.hi)
        key = (tuple(inputs), output)
        pos = self.index[m].get(key)
        if pos is None:
            raise ValueError("no elementary cochain %r in degree %d" % (key, m))
        return pos

    def bidegree_of(self, m, pos):
        tup, _ = self.basis[m][pos]
        return Bidegree(len(tup), m - len(tup))

    def bidegree_dimensions(self, m):
        self._require_degree(m, self.hi)
        out = {}
        for tup, _ in self.basis[m]:
            bd = Bidegree(len(tup), m - len(tup))
            out[bd] = out.get(bd, 0) + 1
        return out

    def differential_matrix(self, m):
        """Matrix of d from degree m to m + 1 over the stored bases."""
        self._require_degree(m, self.hi - 1)
        return self._diff[m]

    def internal_matrix(self, m):
        self._require_degree(m, self.hi - 1)
        return self._internal[m]

    def bar_matrix(self, m):
        self._require_degree(m, self.hi - 1)
        return self._bar[m]

    def cochain(self, degree, vector):
        return HochschildCochain(self, degree, vector)

    def elementary_cochain(self, degree, inputs, output):
        pos = self.position(degree, inputs, output)
        return HochschildCochain(self, degree, {pos: self.ring.one()})

    def unit_cochain(self):
        """The s = 0 cochain with value the unit of A; cup identity."""
        self._require_degree(0, self.hi)
        vec = {}
        for i, c in self.algebra.unit.items():
            vec[self.index[0][((), i)]] = c
        return HochschildCochain(self, 0, vec)

    def __repr__(self):
        return ("HochschildWindow(%s, S=%d, range=[%d, %d], %s)"
                % (self.algebra, self.max_tensor_length, self.lo, self.hi,
                   "normalized" if self.normalized else "full"))


class HochschildCochain:
    """Element of one total degree of a window, as a sparse basis vector."""

    __slots__ = ("window", "degree", "vector")

    def __init__(self, window, degree, vector):
        window._require_degree(degree, window.hi)
        ring = window.ring
        dim = len(window.basis[degree])
        clean = {}
        for pos, val in vector.items():
            if not 0 <= pos < dim:
                raise ValueError("position %r outside degree-%d basis"
                                 % (pos, degree))
            val = ring.add(val, ring.zero())
            if not ring.is_zero(val):
                clean[pos] = val
        self.window = window
        self.degree = degree
        self.vector = clean

    def is_zero(self):
        return not self.vector

    def plus(self, other):
        if other.window is not self.window:
            raise MismatchedWindow("cochains live in different windows")
        if other.degree != self.degree:
            raise ValueError("cannot add cochains of degrees %d and %d"
                             % (self.degree, other.degree))
        ring = self.window.ring
        vec = dict(self.vector)
        accumulate(vec, ring.one(), other.vector, ring)
        return HochschildCochain(self.window, self.degree, vec)

    def scaled(self, scalar):
        ring = self.window.ring
        return HochschildCochain(
            self.window, self.degree,
            {p: ring.mul(scalar, v) for p, v in self.vector.items()})

    def terms(self):
        """Readable (coefficient, input names, output name) triples."""
        names = self.window.algebra.names
        out = []
        for pos in sorted(self.vector):
            tup, b = self.window.basis[self.degree][pos]
            out.append((self.vector[pos],
                        tuple(names[r] for r in tup), names[b]))
        return out

    def __eq__(self, other):
        if not isinstance(other, HochschildCochain):
            return NotImplemented
        return (self.window is other.window and self.degree == other.degree
                and self.vector == other.vector)

    def __hash__(self):
        return hash((id(self.window), self.degree,
                     tuple(sorted(self.vector.items()))))

    def __repr__(self):
        return "HochschildCochain(degree=%d, %r)" % (self.degree, self.terms())


def build_window(a, max_tensor_length, degree_range, normalized=True,
                 require_saturation=False):
    """Enumerate CH^*(a; a) over a total-degree range; see HochschildWindow."""
    return HochschildWindow(a, max_tensor_length, degree_range,
                            normalized=normalized,
                            require_saturation=require_saturation)


def hochschild_differential(phi):
    """Apply d; raises DegreeOutOfWindow when the target degree is outside."""
    w = phi.window
    w._require_degree(phi.degree, w.hi - 1)
    vec = w.differential_matrix(phi.degree).apply(phi.vector, w.ring)
    return HochschildCochain(w, phi.degree + 1, vec)


def cup(phi, psi):
    """Cup product: (phi cup psi)(r_1..r_{s+u}) = ± phi(r_1..r_s)·psi(...).

    The sign is (-1)^{|psi| * sum of shifted input degrees of phi}, which
    makes the product strictly associative and the unit cochain a strict
    two-sided identity; terms whose tensor length exceeds the target cap are
    truncated away with the rest of that arity subcomplex.
    """
    if not isinstance(psi, HochschildCochain):
        raise TypeError("cup expects two hochschild cochains")
    w = phi.window
    if psi.window is not w:
        raise MismatchedWindow("cup factors live in different windows")
    n = phi.degree + psi.degree
    w._require_degree(n, w.hi)
    ring = w.ring
    algebra = w.algebra
    fb = w.basis[phi.degree]
    gb = w.basis[psi.degree]
    out = {}
    for pf, cf in phi.vector.items():
        rf, bf = fb[pf]
        left_norms = sum(signs.shifted(algebra.degrees[r]) for r in rf)
        sgn = signs.cup_sign(psi.degree, left_norms)
        base = cf if sgn > 0 else ring.neg(cf)
        for pg, cg in psi.vector.items():
            rg, bg = gb[pg]
            scale = ring.mul(base, cg)
            for v, c in algebra.multiply_basis(bf, bg).items():
                tgt = (rf + rg, v)
                pos = w.index[n].get(tgt)
                if pos is None:
                    assert len(rf) + len(rg) > w.sigma[n], (tgt, n)
                    continue
                cur = ring.add(out.get(pos, ring.zero()), ring.mul(scale, c))
                if ring.is_zero(cur):
                    out.pop(pos, None)
                else:
                    out[pos] = cur
    return HochschildCochain(w, n, out)


def dual_coface_bar_matrix(window, m):
    """Bar part of d assembled per target as a signed sum of coface duals.

    For each target (x_1..x_k -> w) the contributing sources drop x_1 (left
    face, multiplying the output by x_1), drop x_k (right face), or merge an
    adjacent pair x_j x_{j+1}.  Built independently of the per-source
    assembly in the window; equality of the two matrices is a consistency
    check on the sign convention.
    """
    window._require_degree(m, window.hi - 1)
    algebra = window.algebra
    ring = window.ring
    g = m - 1
    col_dicts = [dict() for _ in window.basis[m]]

    def put(col, row, sign, coeff):
        if col is None:
            return
        val = coeff if sign > 0 else ring.neg(coeff)
        cur = ring.add(col_dicts[col].get(row, ring.zero()), val)
        if ring.is_zero(cur):
            col_dicts[col].pop(row, None)
        else:
            col_dicts[col][row] = cur

    for row, (xs, wout) in enumerate(window.basis[m + 1]):
        k = len(xs)
        if k == 0:
            continue
        norms = [signs.shifted(algebra.degrees[x]) for x in xs]
        prefix = [0]
        for v in norms:
            prefix.append(prefix[-1] + v)
        lsgn = signs.bar_left_sign(g, norms[0])
        for b in range(algebra.dim):
            c = algebra.multiply_basis(xs[0], b).get(wout)
            if c is not None:
                put(window.index[m].get((xs[1:], b)), row, lsgn, c)
        for b in range(algebra.dim):
            c = algebra.multiply_basis(b, xs[-1]).get(wout)
            if c is not None:
                rsgn = signs.bar_right_sign(signs.shifted(algebra.degrees[b]))
                put(window.index[m].get((xs[:-1], b)), row, rsgn, c)
        for j in range(1, k):
            if window.normalized:
                merged = algebra.reduced_product(xs[j - 1], xs[j])[1]
            else:
                merged = algebra.multiply_basis(xs[j - 1], xs[j])
            sgn = signs.bar_middle_sign(g, prefix[j - 1], norms[j - 1])
            for r, c in merged.items():
                src = (xs[:j - 1] + (r,) + xs[j + 1:], wout)
                put(window.index[m].get(src), row, sgn, c)

    return SparseMatrix.from_column_dicts(
        len(window.basis[m + 1]), col_dicts, ring)


class CohomologySlot:
    """Dimension and chosen representative cocycles of one total degree."""

    __slots__ = ("degree", "dimension", "representatives", "saturated")

    def __init__(self, degree, dimension, representatives, saturated):
        self.degree = degree
        self.dimension = dimension
        self.representatives = tuple(representatives)
        self.saturated = saturated

    def __repr__(self):
        return ("CohomologySlot(degree=%d, dimension=%d, saturated=%s)"
                % (self.degree, self.dimension, self.saturated))


def _cohomology_data(window):
    """Slots plus the tracked reducers used to express classes in them."""
    if window._cohomology is not None:
        return window._cohomology
    ring = window.ring
    slots = {}
    reducers = {}
    for n in range(window.lo + 1, window.hi):
        reducer = make_span_reducer(ring, track=True)
        for col in window._diff[n - 1].column_dicts():
            reducer.add(col, tag=None)
        boundary_rank = len(reducer)
        reps = []
        for vec in kernel_basis(window._diff[n], ring):
            if reducer.add(vec, tag=len(reps)):
                reps.append(vec)
        assert len(reps) + boundary_rank == len(reducer)
        slots[n] = CohomologySlot(
            n, len(reps),
            [HochschildCochain(window, n, v) for v in reps],
            window.saturated(n))
        reducers[n] = reducer
    window._cohomology = (slots, reducers)
    return window._cohomology


def cohomology(w):
    """Exact per-degree cohomology of the interior degrees of the window.

    The first and last degrees of the window are padding for the kernel and
    image computations and are not reported.  Representatives are the first
    kernel vectors independent of the coboundary span, in the canonical
    kernel basis order, so they are deterministic across runs.
    """
    return dict(_cohomology_data(w)[0])


class GradedRingPresentation:
    """Cup product structure constants on chosen cohomology representatives.

    table maps (n1, i, n2, j) to the coordinates of class_i(n1) * class_j(n2)
    over the degree-(n1+n2) representatives; pairs of degrees whose product
    falls outside the reported range are listed in incomplete_pairs instead
    of being silently dropped.
    """

    __slots__ = ("ring", "slots", "table", "unit", "incomplete_pairs",
                 "prefix")

    def __init__(self, ring, slots, table, unit, incomplete_pairs,
                 prefix="h"):
        self.ring = ring
        self.slots = slots
        self.table = table
        self.unit = unit
        self.incomplete_pairs = incomplete_pairs
        self.prefix = prefix

    def dimensions(self):
        return {n: slot.dimension for n, slot in self.slots.items()}

    def label(self, degree, i):
        return "%s%d_%d" % (self.prefix, degree, i)

    def product(self, n1, i, n2, j):
        """Coordinates of the product, or None when outside the window."""
        if (n1, n2) in self.incomplete_pairs:
            return None
        return dict(self.table.get((n1, i, n2, j), {}))

    def document_fields(self):
        """Serializable field pairs; all scalars go through scalar_to_str."""
        ring = self.ring
        degs = sorted(self.slots)
        dims = {str(n): self.slots[n].dimension for n in degs}
        sat = {str(n): self.slots[n].saturated for n in degs}
        reps = {str(n): [self.label(n, i)
                         for i in range(self.slots[n].dimension)]
                for n in degs if self.slots[n].dimension}
        products = {}
        for (n1, i, n2, j) in sorted(self.table):
            combo = self.table[(n1, i, n2, j)]
            products["%s*%s" % (self.label(n1, i), self.label(n2, j))] = {
                self.label(n1 + n2, k): ring.scalar_to_str(c)
                for k, c in sorted(combo.items())}
        unit = {}
        if self.unit is not None:
            unit = {self.label(0, k): ring.scalar_to_str(c)
                    for k, c in sorted(self.unit.items())}
        return [
            ("dimensions", dims),
            ("saturated", sat),
            ("representatives", reps),
            ("unit", unit),
            ("products", products),
            ("incomplete_pairs", [[n1, n2] for (n1, n2)
                                  in sorted(self.incomplete_pairs)]),
        ]

    def __repr__(self):
        return ("GradedRingPresentation(dims=%r, incomplete=%r)"
                % (self.dimensions(), self.incomplete_pairs))


def class_coordinates(w, phi):
    """Coordinates of a cocycle's class over the stored representatives.

    Raises ValueError when phi is not a cocycle (its vector falls outside
    the span of coboundaries and representative cocycles)."""
    slots, reducers = _cohomology_data(w)
    if phi.degree not in reducers:
        raise DegreeOutOfWindow(
            "degree %d has no cohomology slot in [%d, %d]"
            % (phi.degree, w.lo + 1, w.hi - 1))
    residue, combo = reducers[phi.degree].reduce(dict(phi.vector))
    if residue:
        raise ValueError("cochain of degree %d is not a cocycle"
                         % phi.degree)
    return dict(combo)


def ring_presentation(w):
    """Multiplication table of cohomology classes over the window interior."""
    slots, reducers = _cohomology_data(w)
    table = {}
    incomplete = set()
    degs = sorted(n for n in slots if slots[n].dimension > 0)
    for n1 in degs:
        for n2 in degs:
            n = n1 + n2
            if n not in slots:
                incomplete.add((n1, n2))
                continue
            reducer = reducers[n]
            for i, rep1 in enumerate(slots[n1].representatives):
                for j, rep2 in enumerate(slots[n2].representatives):
                    prod = cup(rep1, rep2)
                    residue, combo = reducer.reduce(dict(prod.vector))
                    if residue:
                        raise StropError(
                            "product of classes is not a cocycle in degree %d"
                            % n)
                    if combo:
                        table[(n1, i, n2, j)] = dict(combo)
    unit = None
    if 0 in slots:
        residue, combo = reducers[0].reduce(dict(w.unit_cochain().vector))
        if residue:
            raise StropError("unit cochain is not a cocycle class")
        unit = dict(combo)
    return GradedRingPresentation(w.ring, slots, table, unit,
                                  tuple(sorted(incomplete)))
