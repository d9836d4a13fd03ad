"""Finite-dimensional unital graded algebras with a degree +1 differential.

The structure is a basis with nonnegative degrees, a unit vector, sparse
structure constants, and a sparse differential. Every constructor call
re-verifies the axioms exhaustively (grading, unit, associativity on all
basis triples, d^2 = 0, Leibniz on all pairs); at the dimensions this
package works with that costs milliseconds and has caught every wiring
mistake a validation flag would have hidden.

Vectors are {basis_index: scalar} dicts with normalized nonzero entries.
"""

from .errors import ParseError
from .linalg import homology_dimensions, rank, solve
from .rings import CoefficientRing
from .sparse import SparseMatrix
from .textio import emit_fields, parse_fields, require_fields


def accumulate(acc, scalar, vec, ring):
    """acc += scalar * vec, in place, dropping entries that cancel."""
    if ring.is_zero(scalar):
        return acc
    for k, v in vec.items():
        s = ring.add(acc.get(k, ring.zero()), ring.mul(scalar, v))
        if ring.is_zero(s):
            acc.pop(k, None)
        else:
            acc[k] = s
    return acc


def scaled(vec, scalar, ring):
    out = {}
    accumulate(out, scalar, vec, ring)
    return out


class FiniteGradedAlgebra:

    def __init__(self, ring, names, degrees, unit, mul, diff=None):
        self.ring = ring
        self.names = tuple(names)
        self.degrees = tuple(degrees)
        self.unit = {k: v for k, v in unit.items() if not ring.is_zero(v)}
        self.mul = {}
        for key, vec in mul.items():
            clean = {k: v for k, v in vec.items() if not ring.is_zero(v)}
            if clean:
                self.mul[key] = clean
        self.diff = {}
        for key, vec in (diff or {}).items():
            clean = {k: v for k, v in vec.items() if not ring.is_zero(v)}
            if clean:
                self.diff[key] = clean
        self._by_degree = None
        self._validate()

    # -- bookkeeping -------------------------------------------------------

    @property
    def dim(self):
        return len(self.names)

    def index_of(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise ParseError("unknown basis name %r" % name) from None

    def degree_of_vector(self, vec):
        """Common degree of a homogeneous vector; None for the zero vector."""
        degs = {self.degrees[i] for i in vec}
        if not degs:
            return None
        assert len(degs) == 1, "vector is not homogeneous: degrees %s" % sorted(degs)
        return degs.pop()

    def basis_by_degree(self):
        if self._by_degree is None:
            buckets = {}
            for i, d in enumerate(self.degrees):
                buckets.setdefault(d, []).append(i)
            self._by_degree = buckets
        return self._by_degree

    def degree_span(self):
        if not self.degrees:
            return (0, -1)
        return (min(self.degrees), max(self.degrees))

    # -- arithmetic --------------------------------------------------------

    def multiply_basis(self, i, j):
        return self.mul.get((i, j), {})

    def multiply(self, u, v):
        ring = self.ring
        out = {}
        for i, ci in u.items():
            for j, cj in v.items():
                prod = self.mul.get((i, j))
                if prod:
                    accumulate(out, ring.mul(ci, cj), prod, ring)
        return out

    def differential(self, vec):
        out = {}
        for i, ci in vec.items():
            img = self.diff.get(i)
            if img:
                accumulate(out, ci, img, self.ring)
        return out

    # -- unit complement (reduced part) ------------------------------------

    @property
    def unit_pivot(self):
        """First basis index carrying a nonzero unit coordinate."""
        return min(self.unit)

    @property
    def reduced_indices(self):
        p = self.unit_pivot
        return tuple(i for i in range(self.dim) if i != p)

    def project_unit_complement(self, vec):
        """Split vec = lam * unit + complement; returns (lam, complement).

        The complement is supported away from the pivot index, so it is a
        canonical representative of the class of vec in A / (unit line).
        """
        ring = self.ring
        p = self.unit_pivot
        if p not in vec:
            return ring.zero(), dict(vec)
        lam = ring.div(vec[p], self.unit[p])
        out = dict(vec)
        accumulate(out, ring.neg(lam), self.unit, ring)
        assert p not in out
        return lam, out

    def reduced_differential(self, i):
        """Induced differential on A/(unit line) applied to reduced index i."""
        img = self.diff.get(i)
        if not img:
            return {}
        return self.project_unit_complement(img)[1]

    def reduced_product(self, i, j):
        """(unit coefficient, complement part) of the product e_i * e_j."""
        return self.project_unit_complement(self.multiply_basis(i, j))

    # -- homology ----------------------------------------------------------

    def _degree_matrix(self, indices_by_degree, images, m):
        src = indices_by_degree.get(m, [])
        dst = indices_by_degree.get(m + 1, [])
        pos = {idx: r for r, idx in enumerate(dst)}
        triples = []
        for c, idx in enumerate(src):
            for k, v in images.get(idx, {}).items():
                triples.append((pos[k], c, v))
        return SparseMatrix.from_entries(len(dst), len(src), triples, self.ring)

    def _complex_dims(self, indices, reduced):
        by_degree = {}
        for i in indices:
            by_degree.setdefault(self.degrees[i], []).append(i)
        if reduced:
            images = {i: self.reduced_differential(i) for i in indices}
        else:
            images = {i: self.diff.get(i, {}) for i in indices}
        lo, hi = self.degree_span()
        mats = {m: self._degree_matrix(by_degree, images, m) for m in range(lo - 1, hi + 1)}
        out = {}
        for m in range(lo, hi + 1):
            out[m] = homology_dimensions(mats[m], mats[m - 1], self.ring).dimension
        return out

    def homology_dimensions(self):
        """Dimensions of H(A, d) per degree, over the coefficient field."""
        self.ring.require_field("algebra homology")
        return self._complex_dims(list(range(self.dim)), reduced=False)

    def reduced_homology_dimensions(self):
        """Dimensions of H(A/(unit line)) per degree; drives saturation bounds."""
        self.ring.require_field("algebra homology")
        return self._complex_dims(list(self.reduced_indices), reduced=True)

    # -- validation --------------------------------------------------------

    def _check(self, cond, msg, *args):
        if not cond:
            raise ValueError("algebra axiom failure: " + (msg % args))

    def _validate(self):
        n = self.dim
        self._check(len(set(self.names)) == n, "basis names are not distinct")
        self._check(all(isinstance(nm, str) and nm for nm in self.names),
                    "basis names must be nonempty strings")
        self._check(len(self.degrees) == n, "degree list length mismatch")
        self._check(all(isinstance(d, int) and d >= 0 for d in self.degrees),
                    "degrees must be integers >= 0")
        self._check(bool(self.unit), "unit vector is zero")
        for i in self.unit:
            self._check(0 <= i < n, "unit references bad index %d", i)
            self._check(self.degrees[i] == 0, "unit has a degree-%d component",
                        self.degrees[i])
        for (i, j), vec in self.mul.items():
            self._check(0 <= i < n and 0 <= j < n, "product key out of range")
            want = self.degrees[i] + self.degrees[j]
            for k in vec:
                self._check(self.degrees[k] == want,
                            "product %s*%s lands in degree %d, expected %d",
                            self.names[i], self.names[j], self.degrees[k], want)
        for i, vec in self.diff.items():
            self._check(0 <= i < n, "differential key out of range")
            for k in vec:
                self._check(self.degrees[k] == self.degrees[i] + 1,
                            "differential of %s is not degree +1", self.names[i])
        ring = self.ring
        for j in range(n):
            e = {j: ring.one()}
            self._check(self.multiply(self.unit, e) == e,
                        "unit fails on the left of %s", self.names[j])
            self._check(self.multiply(e, self.unit) == e,
                        "unit fails on the right of %s", self.names[j])
        for i in range(n):
            for j in range(n):
                ij = self.multiply_basis(i, j)
                for k in range(n):
                    left = self.multiply(ij, {k: ring.one()})
                    right = self.multiply({i: ring.one()}, self.multiply_basis(j, k))
                    self._check(left == right, "associativity fails on (%s, %s, %s)",
                                self.names[i], self.names[j], self.names[k])
        for i, img in self.diff.items():
            self._check(self.differential(img) == {},
                        "d^2 is nonzero on %s", self.names[i])
        self._check(self.differential(self.unit) == {}, "d(unit) is nonzero")
        for i in range(n):
            sign = ring.from_int(-1 if self.degrees[i] % 2 else 1)
            for j in range(n):
                lhs = self.differential(self.multiply_basis(i, j))
                rhs = self.multiply(self.diff.get(i, {}), {j: ring.one()})
                accumulate(rhs, sign, self.multiply({i: ring.one()}, self.diff.get(j, {})),
                           ring)
                self._check(lhs == rhs, "Leibniz fails on (%s, %s)",
                            self.names[i], self.names[j])

    # -- serialization -----------------------------------------------------

    def to_text(self):
        ring = self.ring
        if len(self.unit) != 1 or not ring.is_zero(
                ring.sub(next(iter(self.unit.values())), ring.one())):
            raise ValueError("file format requires the unit to be a single "
                             "basis element with coefficient 1")
        unit_name = self.names[next(iter(self.unit))]
        basis = [[self.names[i], self.degrees[i]] for i in range(self.dim)]
        mul_rows = []
        for (i, j) in sorted(self.mul):
            for k in sorted(self.mul[(i, j)]):
                mul_rows.append([self.names[i], self.names[j], self.names[k],
                                 ring.scalar_to_str(self.mul[(i, j)][k])])
        diff_rows = []
        for i in sorted(self.diff):
            for k in sorted(self.diff[i]):
                diff_rows.append([self.names[i], self.names[k],
                                  ring.scalar_to_str(self.diff[i][k])])
        return emit_fields([
            ("ring", ring.name),
            ("basis", basis),
            ("unit", unit_name),
            ("mul", mul_rows),
            ("diff", diff_rows),
        ])

    @classmethod
    def from_text(cls, text):
        fields = parse_fields(text, {"ring", "basis", "unit", "mul", "diff"})
        require_fields(fields, ["ring", "basis", "unit", "mul"])
        ring = CoefficientRing.from_name(fields["ring"])
        basis = fields["basis"]
        if not isinstance(basis, list) or not all(
                isinstance(b, list) and len(b) == 2 for b in basis):
            raise ParseError("basis must be a list of [name, degree] pairs")
        names = [b[0] for b in basis]
        degrees = []
        for b in basis:
            if not isinstance(b[1], int):
                raise ParseError("degree of %r is not an integer" % b[0])
            degrees.append(b[1])
        if len(set(names)) != len(names):
            raise ParseError("duplicate basis names")
        index = {nm: i for i, nm in enumerate(names)}

        def look(nm):
            if nm not in index:
                raise ParseError("unknown basis name %r" % (nm,))
            return index[nm]

        unit = {look(fields["unit"]): ring.one()}
        mul = {}
        for row in fields["mul"]:
            if not isinstance(row, list) or len(row) != 4:
                raise ParseError("mul rows are [a, b, c, coeff], got %r" % (row,))
            i, j, k = look(row[0]), look(row[1]), look(row[2])
            vec = mul.setdefault((i, j), {})
            if k in vec:
                raise ParseError("duplicate mul entry %s*%s -> %s"
                                % (row[0], row[1], row[2]))
            vec[k] = ring.scalar_from_str(row[3])
        diff = {}
        for row in fields.get("diff", []):
            if not isinstance(row, list) or len(row) != 3:
                raise ParseError("diff rows are [a, b, coeff], got %r" % (row,))
            i, k = look(row[0]), look(row[1])
            vec = diff.setdefault(i, {})
            if k in vec:
                raise ParseError("duplicate diff entry %s -> %s" % (row[0], row[1]))
            vec[k] = ring.scalar_from_str(row[2])
        return cls(ring, names, degrees, unit, mul, diff)

    def __eq__(self, other):
        return (isinstance(other, FiniteGradedAlgebra)
                and self.ring == other.ring
                and self.names == other.names
                and self.degrees == other.degrees
                and self.unit == other.unit
                and self.mul == other.mul
                and self.diff == other.diff)

    def __repr__(self):
        return "FiniteGradedAlgebra(%s, dim=%d, degrees=%s)" % (
            self.ring.name, self.dim, list(self.degrees))


# ---------------------------------------------------------------------------
# stock constructions


def ground_field(ring):
    return FiniteGradedAlgebra(ring, ["1"], [0], {0: ring.one()},
                               {(0, 0): {0: ring.one()}})


def truncated_polynomial(ring, var_degree=0, truncation=2, var="x"):
    """k[x]/(x^truncation) with |x| = var_degree and zero differential."""
    assert truncation >= 2
    names = ["1"] + [var if e == 1 else "%s^%d" % (var, e)
                     for e in range(1, truncation)]
    degrees = [e * var_degree for e in range(truncation)]
    mul = {}
    for a in range(truncation):
        for b in range(truncation):
            if a + b < truncation:
                mul[(a, b)] = {a + b: ring.one()}
    return FiniteGradedAlgebra(ring, names, degrees, {0: ring.one()}, mul)


def dual_numbers(ring, degree=0):
    return truncated_polynomial(ring, var_degree=degree, truncation=2, var="e")


def exterior_algebra(ring, gen_degrees, gen_names=None):
    """Free graded-commutative algebra on generators with vanishing squares."""
    m = len(gen_degrees)
    if gen_names is None:
        gen_names = ["x%d" % g for g in range(m)]
    subsets = []
    for mask in range(1 << m):
        subsets.append(tuple(g for g in range(m) if mask >> g & 1))
    subsets.sort(key=lambda s: (len(s), s))
    index = {s: i for i, s in enumerate(subsets)}
    names = ["1" if not s else "".join(gen_names[g] for g in s) for s in subsets]
    degrees = [sum(gen_degrees[g] for g in s) for s in subsets]
    mul = {}
    for si, s in enumerate(subsets):
        for ti, t in enumerate(subsets):
            if set(s) & set(t):
                continue
            # Koszul sign from moving each generator of t left past the
            # later generators of s
            exponent = sum(gen_degrees[a] * gen_degrees[b]
                           for a in s for b in t if a > b)
            sign = ring.from_int(-1 if exponent % 2 else 1)
            mul[(si, ti)] = {index[tuple(sorted(s + t))]: sign}
    return FiniteGradedAlgebra(ring, names, degrees, {0: ring.one()}, mul)


def square_zero_extension(ring, n):
    """Span{1, y, x} with |y| = n, dy = x, and all products of x, y zero."""
    assert n >= 0
    names = ["1", "y", "x"]
    degrees = [0, n, n + 1]
    one = ring.one()
    mul = {(0, 0): {0: one}, (0, 1): {1: one}, (1, 0): {1: one},
           (0, 2): {2: one}, (2, 0): {2: one}}
    return FiniteGradedAlgebra(ring, names, degrees, {0: one}, mul, {1: {2: one}})


def tensor_product(a, b):
    """Graded tensor product, Koszul sign in both product and differential."""
    assert a.ring == b.ring
    ring = a.ring
    pairs = [(i, j) for i in range(a.dim) for j in range(b.dim)]
    index = {p: t for t, p in enumerate(pairs)}
    names = ["%s*%s" % (a.names[i], b.names[j]) for (i, j) in pairs]
    degrees = [a.degrees[i] + b.degrees[j] for (i, j) in pairs]

    def embed(va, vb, scalar):
        out = {}
        for i, ci in va.items():
            for j, cj in vb.items():
                accumulate(out, ring.mul(scalar, ring.mul(ci, cj)),
                           {index[(i, j)]: ring.one()}, ring)
        return out

    unit = embed(a.unit, b.unit, ring.one())
    mul = {}
    for t1, (i1, j1) in enumerate(pairs):
        for t2, (i2, j2) in enumerate(pairs):
            exponent = b.degrees[j1] * a.degrees[i2]
            sign = ring.from_int(-1 if exponent % 2 else 1)
            vec = embed(a.multiply_basis(i1, i2), b.multiply_basis(j1, j2), sign)
            if vec:
                mul[(t1, t2)] = vec
    diff = {}
    for t, (i, j) in enumerate(pairs):
        vec = embed(a.diff.get(i, {}), {j: ring.one()}, ring.one())
        sign = ring.from_int(-1 if a.degrees[i] % 2 else 1)
        accumulate(vec, ring.one(), embed({i: ring.one()}, b.diff.get(j, {}), sign),
                   ring)
        if vec:
            diff[t] = vec
    return FiniteGradedAlgebra(ring, names, degrees, unit, mul, diff)


def change_basis(algebra, forward):
    """Rewrite the algebra in a new basis; forward[i] = new e_i in old coordinates.

    The map must be invertible, degree-preserving on each new basis vector,
    and is applied by conjugating structure constants, differential, and unit.
    """
    ring = algebra.ring
    ring.require_field("basis change")
    n = algebra.dim
    assert len(forward) == n
    cols = []
    for i in range(n):
        vec = forward[i]
        deg = algebra.degree_of_vector(vec)
        assert deg == algebra.degrees[i], (
            "image of basis vector %d changes degree" % i)
        cols.append(dict(vec))
    p = SparseMatrix.from_column_dicts(n, cols, ring)
    assert rank(p, ring) == n, "basis change is not invertible"

    def pull(vec):
        x = solve(p, vec, ring)
        assert x is not None
        return x

    def push(vec):
        out = {}
        for i, c in vec.items():
            accumulate(out, c, cols[i], ring)
        return out

    unit = pull(algebra.unit)
    mul = {}
    for i in range(n):
        for j in range(n):
            prod = algebra.multiply(cols[i], cols[j])
            if prod:
                mul[(i, j)] = pull(prod)
    diff = {}
    for i in range(n):
        img = algebra.differential(cols[i])
        if img:
            diff[i] = pull(img)
    return FiniteGradedAlgebra(ring, algebra.names, algebra.degrees, unit, mul, diff)
