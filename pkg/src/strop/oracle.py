"""Dense brute-force cross-check for the Hochschild pipeline.

Everything in here is deliberately written against the grain of the main
implementation: cochains are dense coefficient lists evaluated on input
tuples, the differential is computed per target tuple from the face
formula instead of per source column, and the linear algebra is a plain
dense row reduction.  Only the scalar ring helpers and the algebra basis
data are shared.  Agreement of dimensions and multiplication tables
between the two routes is the working evidence that the sign convention
and the sparse assembly are right, so this module must not import the
sparse matrices, the span reducers, or the pipeline's sign helpers.

Scope: small inputs only.  With unit inputs allowed (the full complex)
the per-degree basis is finite exactly when the algebra sits in degree 0,
where tensor length equals total degree.  For graded algebras the oracle
takes inputs from the unit complement; per-degree finiteness then needs
every reduced basis degree to be at least 2, which covers the formal
spheres used in the comparison suites.
"""

from .errors import CompositeNotZero, OracleScaleExceeded
from .hochschild import (build_window, cohomology, hochschild_differential,
                         ring_presentation)


# -- dense linear algebra (self-contained) --------------------------------

def _rref(rows, ring):
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    width = len(rows[0]) if rows else 0
    for c in range(width):
        hit = None
        for i in range(r, len(rows)):
            if not ring.is_zero(rows[i][c]):
                hit = i
                break
        if hit is None:
            continue
        rows[r], rows[hit] = rows[hit], rows[r]
        inv = ring.inv(rows[r][c])
        rows[r] = [ring.mul(inv, v) for v in rows[r]]
        for i in range(len(rows)):
            if i != r and not ring.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [ring.sub(a, ring.mul(f, b))
                           for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def _kernel(columns, height, ring):
    """Kernel of the matrix with the given columns, one vector per free
    column, unit coefficient at the free column."""
    width = len(columns)
    rows = [[col[i] for col in columns] for i in range(height)]
    rref, pivots = _rref(rows, ring)
    pivot_set = set(pivots)
    out = []
    for f in range(width):
        if f in pivot_set:
            continue
        vec = [ring.zero()] * width
        vec[f] = ring.one()
        for r, p in enumerate(pivots):
            vec[p] = ring.neg(rref[r][f])
        out.append(vec)
    return out


def _solve(columns, height, target, ring):
    """One solution of (columns) x = target, free variables at zero; None
    when the system is inconsistent."""
    rows = [[col[i] for col in columns] + [target[i]] for i in range(height)]
    rref, pivots = _rref(rows, ring)
    if len(columns) in pivots:
        return None
    x = [ring.zero()] * len(columns)
    for r, p in enumerate(pivots):
        x[p] = rref[r][-1]
    return x


def _mat_vec(columns, vec, ring, height):
    out = [ring.zero()] * height
    for c, v in enumerate(vec):
        if ring.is_zero(v):
            continue
        col = columns[c]
        for i in range(height):
            if not ring.is_zero(col[i]):
                out[i] = ring.add(out[i], ring.mul(v, col[i]))
    return out


# -- dense complex ---------------------------------------------------------

class DenseHochschildOracle:
    """Dense model of the cochain complex over a total-degree range.

    full_inputs=True enumerates Hom(A^{tensor s}, A) over the whole basis
    (degree-0 algebras only); otherwise inputs run over the unit
    complement.  A cochain of degree n is a dense list over basis[n],
    whose entries are (input tuple, output index) pairs.
    """

    def __init__(self, algebra, degree_range, full_inputs):
        algebra.ring.require_field("dense oracle")
        self.algebra = algebra
        self.ring = algebra.ring
        self.lo, self.hi = degree_range
        self.full_inputs = full_inputs
        if full_inputs:
            if max(algebra.degrees) != 0:
                raise OracleScaleExceeded(
                    "full-input enumeration needs an ungraded algebra")
            self.inputs = tuple(range(algebra.dim))
        else:
            self.inputs = algebra.reduced_indices
            if any(algebra.degrees[i] < 2 for i in self.inputs):
                raise OracleScaleExceeded(
                    "reduced inputs of degree < 2 make the complex "
                    "infinite per degree")
        self.basis = {}
        self.index = {}
        for n in range(self.lo, self.hi + 1):
            elems = []
            for s in self._arities(n):
                for tup in self._all_tuples(s):
                    weight = sum(algebra.degrees[i] for i in tup)
                    for b in range(algebra.dim):
                        if s + algebra.degrees[b] - weight == n:
                            elems.append((tup, b))
            self.basis[n] = elems
            self.index[n] = {e: p for p, e in enumerate(elems)}
        self._diff = {n: self._differential_matrix(n)
                      for n in range(self.lo, self.hi)}
        self._check_square()

    def _arities(self, n):
        if self.full_inputs:
            # every input contributes exactly 1 to the total degree
            return [n] if n >= 0 else []
        # inputs of degree >= 2 push the total degree down by at least 1
        # each, so arity is capped by the largest output degree
        top = max(self.algebra.degrees) - n
        return range(0, top + 1) if top >= 0 else []

    def _all_tuples(self, s):
        if s == 0:
            return [()]
        shorter = self._all_tuples(s - 1)
        return [t + (i,) for t in shorter for i in self.inputs]

    def _value(self, n, vec, tup):
        """Output vector of the dense cochain on one input tuple."""
        out = {}
        ring = self.ring
        for b in range(self.algebra.dim):
            pos = self.index[n].get((tup, b))
            if pos is not None and not ring.is_zero(vec[pos]):
                out[b] = vec[pos]
        return out

    def _project(self, product):
        """Restrict a product to legal slot values: drop the unit
        coordinate when inputs are reduced."""
        if self.full_inputs:
            return dict(product)
        return self.algebra.project_unit_complement(product)[1]

    def _target_tuples(self, n):
        seen = set()
        out = []
        for tup, _ in self.basis[n]:
            if tup not in seen:
                seen.add(tup)
                out.append(tup)
        return out

    def _differential_matrix(self, n):
        """One dense column per degree-n basis element, built by evaluating
        the face formula on every degree-(n+1) input tuple.

        Writing g = n - 1 and P_j for the sum of (deg t_u - 1) over the
        first j inputs, (d phi)(t_1..t_k) collects:
          -  d_A(phi(t_1..t_k));
          +  (-1)^(g + P_{i-1}) phi(..., d_A t_i, ...)   for each slot i;
          +  (-1)^((g+1)(deg t_1 - 1)) t_1 * phi(t_2..t_k);
          +  (-1)^(g + P_{k-1}) phi(t_1..t_{k-1}) * t_k;
          -  (-1)^(g + P_j) phi(..., t_j t_{j+1}, ...)   per adjacent pair,
        products entering a slot projected away from the unit in reduced
        mode.
        """
        algebra = self.algebra
        ring = self.ring
        g = n - 1
        src = self.basis[n]
        dst = self.basis[n + 1]
        cols = [[ring.zero()] * len(dst) for _ in src]
        targets = self._target_tuples(n + 1)

        def emit(col, tup, outvec, parity):
            for b, c in outvec.items():
                row = self.index[n + 1].get((tup, b))
                if row is None:
                    continue
                val = ring.neg(c) if parity % 2 else c
                col[row] = ring.add(col[row], val)

        for cpos in range(len(src)):
            vec = [ring.zero()] * len(src)
            vec[cpos] = ring.one()
            col = cols[cpos]
            for tup in targets:
                k = len(tup)
                prefix = [0]
                for t in tup:
                    prefix.append(prefix[-1] + algebra.degrees[t] - 1)
                val = self._value(n, vec, tup)
                if val:
                    emit(col, tup, algebra.differential(val), 1)
                for i in range(k):
                    dt = self._project(algebra.diff.get(tup[i], {}))
                    acc = {}
                    for r, c in dt.items():
                        inner = self._value(n, vec,
                                            tup[:i] + (r,) + tup[i + 1:])
                        for b, cv in inner.items():
                            acc[b] = ring.add(acc.get(b, ring.zero()),
                                              ring.mul(c, cv))
                    if acc:
                        emit(col, tup, acc, g + prefix[i])
                if k == 0:
                    continue
                inner = self._value(n, vec, tup[1:])
                if inner:
                    prod = algebra.multiply({tup[0]: ring.one()}, inner)
                    emit(col, tup, prod,
                         (g + 1) * (algebra.degrees[tup[0]] - 1))
                inner = self._value(n, vec, tup[:-1])
                if inner:
                    prod = algebra.multiply(inner, {tup[-1]: ring.one()})
                    emit(col, tup, prod, g + prefix[k - 1])
                for j in range(1, k):
                    merged = self._project(
                        algebra.multiply_basis(tup[j - 1], tup[j]))
                    acc = {}
                    for r, c in merged.items():
                        inner = self._value(
                            n, vec, tup[:j - 1] + (r,) + tup[j + 1:])
                        for b, cv in inner.items():
                            acc[b] = ring.add(acc.get(b, ring.zero()),
                                              ring.mul(c, cv))
                    if acc:
                        emit(col, tup, acc, 1 + g + prefix[j])
        return cols

    def _check_square(self):
        ring = self.ring
        for n in range(self.lo, self.hi - 1):
            for col in self._diff[n]:
                img = _mat_vec(self._diff[n + 1], col, ring,
                               len(self.basis[n + 2]))
                if any(not ring.is_zero(v) for v in img):
                    err = CompositeNotZero(
                        "oracle differentials from degree %d do not "
                        "compose to zero" % n)
                    err.degree = n
                    raise err

    def differential(self, n, vec):
        return _mat_vec(self._diff[n], vec, self.ring, len(self.basis[n + 1]))

    def cup(self, n1, vec1, n2, vec2):
        """Dense cup product, splitting each target tuple in every way."""
        ring = self.ring
        algebra = self.algebra
        n = n1 + n2
        out = [ring.zero()] * len(self.basis[n])
        for tup in self._target_tuples(n):
            for split in range(len(tup) + 1):
                front, back = tup[:split], tup[split:]
                v1 = self._value(n1, vec1, front)
                if not v1:
                    continue
                v2 = self._value(n2, vec2, back)
                if not v2:
                    continue
                parity = n2 * sum(algebra.degrees[t] - 1 for t in front)
                prod = algebra.multiply(v1, v2)
                for b, c in prod.items():
                    row = self.index[n].get((tup, b))
                    if row is None:
                        continue
                    val = ring.neg(c) if parity % 2 else c
                    out[row] = ring.add(out[row], val)
        return out

    def cohomology_basis(self, n):
        """(image columns, representative cocycles) at an interior degree."""
        ring = self.ring
        height = len(self.basis[n])
        image = [col for col in self._diff[n - 1]
                 if any(not ring.is_zero(v) for v in col)]
        reps = []
        for vec in _kernel(self._diff[n], len(self.basis[n + 1]), ring):
            if _solve(image + reps, height, vec, ring) is None:
                reps.append(vec)
        return image, reps

    def class_coordinates(self, n, vec, image, reps):
        """Coordinates of a cocycle over the representatives, or None when
        it is not in their span modulo the image."""
        sol = _solve(image + reps, len(self.basis[n]), vec, self.ring)
        if sol is None:
            return None
        return sol[len(image):]


# -- transport from the pipeline ------------------------------------------

def transport_to_oracle(window, oracle, cochain):
    """Precompose a pipeline cochain with the unit-complement projection in
    every slot (the identity relabeling in reduced mode).

    This is a strict chain map and strictly multiplicative for the cup
    product: unit-slot face terms cancel in pairs under the documented
    sign convention.
    """
    ring = oracle.ring
    algebra = oracle.algebra
    n = cochain.degree
    out = [ring.zero()] * len(oracle.basis[n])
    if not oracle.full_inputs:
        for pos, coeff in cochain.vector.items():
            elem = window.basis[n][pos]
            row = oracle.index[n].get(elem)
            assert row is not None, elem
            out[row] = ring.add(out[row], coeff)
        return out
    projections = [algebra.project_unit_complement({t: ring.one()})[1]
                   for t in range(algebra.dim)]
    by_shape = {}
    for tup, b in oracle.basis[n]:
        by_shape.setdefault((len(tup), b), []).append(tup)
    for pos, coeff in cochain.vector.items():
        rtup, b = window.basis[n][pos]
        s = len(rtup)
        for tup in by_shape.get((s, b), ()):
            factor = coeff
            dead = False
            for slot in range(s):
                c = projections[tup[slot]].get(rtup[slot])
                if c is None:
                    dead = True
                    break
                factor = ring.mul(factor, c)
            if dead:
                continue
            row = oracle.index[n][(tup, b)]
            out[row] = ring.add(out[row], factor)
    return out


def check_transport_chain_map(window, oracle, degree, samples=4):
    """Transport must commute with the two differentials; checked on a few
    deterministic pseudo-random cochains.  Raises AssertionError."""
    ring = window.ring
    dim = window.dimension(degree)
    for k in range(samples):
        vec = {pos: ring.from_int(1 + (pos * 7 + k * 3) % 5)
               for pos in range(dim) if (pos + k) % 2 == 0}
        phi = window.cochain(degree, vec)
        lhs = transport_to_oracle(window, oracle,
                                  hochschild_differential(phi))
        rhs = oracle.differential(degree,
                                  transport_to_oracle(window, oracle, phi))
        assert all(ring.is_zero(ring.sub(a, b)) for a, b in zip(lhs, rhs)), (
            "transport fails to commute with the differentials at degree %d"
            % degree)


# -- comparison driver -----------------------------------------------------

class DegreeRecord:
    __slots__ = ("degree", "main_dimension", "oracle_dimension", "status")

    def __init__(self, degree, main_dimension, oracle_dimension, status):
        self.degree = degree
        self.main_dimension = main_dimension
        self.oracle_dimension = oracle_dimension
        self.status = status

    def __repr__(self):
        return ("DegreeRecord(%d, main=%s, oracle=%s, %s)"
                % (self.degree, self.main_dimension, self.oracle_dimension,
                   self.status))


class OracleComparison:
    """Outcome of one pipeline-versus-dense-oracle run."""

    __slots__ = ("verdict", "located_degree", "records", "table_pairs",
                 "table_failures", "notes")

    def __init__(self, verdict, located_degree, records, table_pairs,
                 table_failures, notes):
        self.verdict = verdict
        self.located_degree = located_degree
        self.records = records
        self.table_pairs = table_pairs
        self.table_failures = tuple(table_failures)
        self.notes = tuple(notes)

    def as_fields(self):
        return {
            "verdict": self.verdict,
            "located_degree": self.located_degree,
            "degrees": [[r.degree, r.main_dimension, r.oracle_dimension,
                         r.status] for r in self.records],
            "table_pairs_checked": self.table_pairs,
            "table_failures": [list(f) if isinstance(f, tuple) else f
                               for f in self.table_failures],
            "notes": list(self.notes),
        }

    def __repr__(self):
        return ("OracleComparison(%s, located=%s, degrees=%d, tables=%d)"
                % (self.verdict, self.located_degree, len(self.records),
                   self.table_pairs))


def _guard_scale(algebra, max_tensor_length):
    if max_tensor_length > 5:
        raise OracleScaleExceeded(
            "oracle limited to tensor length 5, got %d" % max_tensor_length)
    if max(algebra.degrees) == 0:
        if algebra.dim > 3:
            raise OracleScaleExceeded(
                "ungraded oracle limited to dimension 3, got %d"
                % algebra.dim)
    elif len(algebra.reduced_indices) > 2:
        raise OracleScaleExceeded(
            "graded oracle limited to reduced dimension 2, got %d"
            % len(algebra.reduced_indices))


def oracle_compare(algebra, max_tensor_length, degree_range,
                   check_tables=True):
    """Compare the normalized pipeline against the dense oracle per degree.

    Dimensions are compared at every saturated interior degree, and (when
    they all agree) the pipeline's multiplication table is re-verified
    inside the oracle after transporting representatives.  A pipeline
    differential that fails to square to zero is reported as a diff at the
    degree where composition broke, not raised.
    """
    _guard_scale(algebra, max_tensor_length)
    notes = []
    try:
        window = build_window(algebra, max_tensor_length, degree_range,
                              normalized=True)
    except CompositeNotZero as err:
        return OracleComparison(
            "diff", getattr(err, "degree", None), [], 0, [],
            ["pipeline differential does not square to zero"])
    full = max(algebra.degrees) == 0
    oracle = DenseHochschildOracle(algebra, degree_range, full_inputs=full)

    main = cohomology(window)
    records = []
    located = None
    mismatch = False
    skipped = 0
    oracle_classes = {}
    for n in sorted(main):
        slot = main[n]
        if not slot.saturated:
            records.append(DegreeRecord(n, slot.dimension, None,
                                        "skipped-unsaturated"))
            skipped += 1
            continue
        image, reps = oracle.cohomology_basis(n)
        oracle_classes[n] = (image, reps)
        status = "equal" if slot.dimension == len(reps) else "diff"
        if status == "diff":
            mismatch = True
            if located is None:
                located = n
        records.append(DegreeRecord(n, slot.dimension, len(reps), status))
    if skipped:
        notes.append("%d unsaturated degrees not compared" % skipped)

    table_pairs = 0
    table_failures = []
    if check_tables and not mismatch:
        mid = (window.lo + window.hi) // 2
        if window.lo <= mid <= window.hi - 1:
            check_transport_chain_map(window, oracle, mid)
        pres = ring_presentation(window)
        ring = window.ring
        coords = {}
        broken = False
        for n, slot in main.items():
            if n not in oracle_classes:
                continue
            image, reps = oracle_classes[n]
            mat = []
            for rep in slot.representatives:
                dense = transport_to_oracle(window, oracle, rep)
                c = oracle.class_coordinates(n, dense, image, reps)
                if c is None:
                    table_failures.append((n, "transport-escapes-classes"))
                    broken = True
                    break
                mat.append((dense, c))
            coords[n] = mat
        if not broken:
            for n1 in sorted(coords):
                for n2 in sorted(coords):
                    n = n1 + n2
                    if n not in coords:
                        continue
                    image, reps = oracle_classes[n]
                    for i, (d1, _) in enumerate(coords[n1]):
                        for j, (d2, _) in enumerate(coords[n2]):
                            table_pairs += 1
                            prod = oracle.cup(n1, d1, n2, d2)
                            got = oracle.class_coordinates(
                                n, prod, image, reps)
                            combo = pres.table.get((n1, i, n2, j), {})
                            want = [ring.zero()] * len(reps)
                            for k, c in combo.items():
                                for t, v in enumerate(coords[n][k][1]):
                                    want[t] = ring.add(want[t],
                                                       ring.mul(c, v))
                            ok = got is not None and all(
                                ring.is_zero(ring.sub(a, b))
                                for a, b in zip(got, want))
                            if not ok:
                                table_failures.append((n1, i, n2, j))
                                if located is None:
                                    located = n
    if table_failures:
        mismatch = True
    verdict = "diff" if mismatch else "equal"
    return OracleComparison(verdict, located, records, table_pairs,
                            table_failures, notes)
