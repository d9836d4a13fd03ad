"""Finite simplicial complexes and their cochain algebra.

Simplices are strictly increasing vertex tuples, listed per dimension in
lexicographic order; that ordering is the basis ordering everywhere below.
The cup product is front-face/back-face on the increasing vertex order, so
it is strictly associative at cochain level. The cap product evaluates the
cochain on the front face and keeps the back face:

    (v_0 .. v_n) cap phi = phi(v_0 .. v_k) * (v_k .. v_n)

With the usual boundary and coboundary signs this satisfies
d(sigma cap phi) = (-1)^k ((d sigma) cap phi - sigma cap (delta phi)), so
capping a cycle against the fundamental class descends to homology. That
choice of side is a convention; only convention-independent statements
(ring axioms, dimensions) are asserted in tests.
"""

from itertools import combinations

from .algebra import FiniteGradedAlgebra, accumulate
from .errors import (MismatchedComplex, NonSimplicialInput, NotOrientable,
                     NotPure, ParseError, StropError)
from .linalg import (homology_dimensions, kernel_basis, make_span_reducer,
                     solve, SpanReducer)
from .sparse import SparseMatrix
from .textio import emit_fields, parse_fields, require_fields


class SimplicialComplexData:
    """Face closure of a facet list, with canonical per-dimension ordering."""

    def __init__(self, vertex_count, facets):
        if not isinstance(vertex_count, int) or vertex_count < 0:
            raise NonSimplicialInput("vertex count must be a nonnegative integer")
        seen = set()
        cleaned = []
        for facet in facets:
            facet = list(facet)
            if not facet:
                raise NonSimplicialInput("empty facet")
            if len(set(facet)) != len(facet):
                raise NonSimplicialInput("facet %s repeats a vertex" % (facet,))
            for v in facet:
                if not isinstance(v, int) or not 0 <= v < vertex_count:
                    raise NonSimplicialInput(
                        "vertex %r outside range 0..%d" % (v, vertex_count - 1))
            key = tuple(sorted(facet))
            if key in seen:
                raise NonSimplicialInput("facet %s listed twice" % (facet,))
            seen.add(key)
            cleaned.append(key)
        self.vertex_count = vertex_count
        self.facets = tuple(cleaned)
        closure = set()
        for facet in cleaned:
            for size in range(1, len(facet) + 1):
                closure.update(combinations(facet, size))
        by_dim = {}
        for s in closure:
            by_dim.setdefault(len(s) - 1, []).append(s)
        self._by_dim = {d: sorted(v) for d, v in by_dim.items()}
        self._index = {}
        for d, simplices in self._by_dim.items():
            for pos, s in enumerate(simplices):
                self._index[s] = pos

    @property
    def dimension(self):
        return max(self._by_dim) if self._by_dim else -1

    def simplices(self, dim):
        return self._by_dim.get(dim, [])

    def all_simplices(self):
        for d in sorted(self._by_dim):
            yield from self._by_dim[d]

    def simplex_count(self):
        return sum(len(v) for v in self._by_dim.values())

    def position(self, simplex):
        return self._index[simplex]

    def contains(self, simplex):
        return simplex in self._index

    def euler_characteristic(self):
        return sum((-1) ** d * len(v) for d, v in self._by_dim.items())

    def to_text(self):
        return emit_fields([
            ("vertices", self.vertex_count),
            ("facets", [list(f) for f in self.facets]),
        ])

    def __eq__(self, other):
        return (isinstance(other, SimplicialComplexData)
                and self.vertex_count == other.vertex_count
                and sorted(self.facets) == sorted(other.facets))

    def __repr__(self):
        return "SimplicialComplexData(%d vertices, %d facets, dim %d)" % (
            self.vertex_count, len(self.facets), self.dimension)


def load_complex(description):
    fields = parse_fields(description, {"vertices", "facets"})
    require_fields(fields, ["vertices", "facets"])
    if not isinstance(fields["facets"], list):
        raise ParseError("facets must be a list of vertex lists")
    return SimplicialComplexData(fields["vertices"], fields["facets"])


# ---------------------------------------------------------------------------
# chains and cochains


class Cochain:

    def __init__(self, complex_data, ring, degree, coefficients):
        self.complex = complex_data
        self.ring = ring
        self.degree = degree
        clean = {}
        for s, v in coefficients.items():
            s = tuple(s)
            if not complex_data.contains(s) or len(s) - 1 != degree:
                raise ValueError("simplex %s is not a %d-simplex of the complex"
                                 % (s, degree))
            v = ring.add(v, ring.zero())
            if not ring.is_zero(v):
                clean[s] = v
        self.coefficients = clean

    def value(self, simplex):
        return self.coefficients.get(tuple(simplex), self.ring.zero())

    def is_zero(self):
        return not self.coefficients

    def __eq__(self, other):
        return (isinstance(other, Cochain)
                and self.complex is other.complex
                and (self.degree, self.coefficients) == (other.degree, other.coefficients))

    def __repr__(self):
        return "Cochain(deg %d, %d terms)" % (self.degree, len(self.coefficients))


class Chain:

    def __init__(self, complex_data, ring, degree, coefficients):
        self.complex = complex_data
        self.ring = ring
        self.degree = degree
        clean = {}
        for s, v in coefficients.items():
            s = tuple(s)
            if not complex_data.contains(s) or len(s) - 1 != degree:
                raise ValueError("simplex %s is not a %d-simplex of the complex"
                                 % (s, degree))
            v = ring.add(v, ring.zero())
            if not ring.is_zero(v):
                clean[s] = v
        self.coefficients = clean

    def is_zero(self):
        return not self.coefficients

    def __eq__(self, other):
        return (isinstance(other, Chain)
                and self.complex is other.complex
                and (self.degree, self.coefficients) == (other.degree, other.coefficients))

    def __repr__(self):
        return "Chain(deg %d, %d terms)" % (self.degree, len(self.coefficients))


def coboundary(c):
    """delta c (tau) = sum_i (-1)^i c(tau with vertex i dropped)."""
    ring = c.ring
    out = {}
    for tau in c.complex.simplices(c.degree + 1):
        acc = ring.zero()
        for i in range(len(tau)):
            face = tau[:i] + tau[i + 1:]
            v = c.coefficients.get(face)
            if v is not None:
                term = v if i % 2 == 0 else ring.neg(v)
                acc = ring.add(acc, term)
        if not ring.is_zero(acc):
            out[tau] = acc
    return Cochain(c.complex, ring, c.degree + 1, out)


def boundary(c):
    ring = c.ring
    out = {}
    for s, v in c.coefficients.items():
        for i in range(len(s)):
            face = s[:i] + s[i + 1:]
            if not face:
                continue
            term = v if i % 2 == 0 else ring.neg(v)
            cur = ring.add(out.get(face, ring.zero()), term)
            if ring.is_zero(cur):
                out.pop(face, None)
            else:
                out[face] = cur
    return Chain(c.complex, ring, c.degree - 1, out)


def cup_product(a, b):
    """Front-face/back-face product on increasing vertex order."""
    if a.complex is not b.complex:
        raise MismatchedComplex("cup product across different complexes")
    ring = a.ring
    p, q = a.degree, b.degree
    out = {}
    for rho in a.complex.simplices(p + q):
        front = rho[:p + 1]
        back = rho[p:]
        va = a.coefficients.get(front)
        if va is None:
            continue
        vb = b.coefficients.get(back)
        if vb is None:
            continue
        out[rho] = ring.mul(va, vb)
    return Cochain(a.complex, ring, p + q, out)


def unit_cochain(complex_data, ring):
    return Cochain(complex_data, ring, 0,
                   {s: ring.one() for s in complex_data.simplices(0)})


def cap_product(c, phi):
    """c cap phi: evaluate phi on front faces, keep back faces."""
    if c.complex is not phi.complex:
        raise MismatchedComplex("cap product across different complexes")
    ring = c.ring
    k = phi.degree
    out = {}
    for s, v in c.coefficients.items():
        if len(s) - 1 < k:
            continue
        w = phi.coefficients.get(s[:k + 1])
        if w is None:
            continue
        back = s[k:]
        cur = ring.add(out.get(back, ring.zero()), ring.mul(w, v))
        if ring.is_zero(cur):
            out.pop(back, None)
        else:
            out[back] = cur
    return Chain(c.complex, ring, c.degree - k, out)


# ---------------------------------------------------------------------------
# matrices over the canonical simplex bases


def coboundary_matrix(complex_data, dim, ring):
    """delta: C^dim -> C^(dim+1) over the lexicographic simplex bases."""
    src = complex_data.simplices(dim)
    dst = complex_data.simplices(dim + 1)
    if dim < 0:
        return SparseMatrix.zero(len(dst), 0)
    triples = []
    for r, tau in enumerate(dst):
        for i in range(len(tau)):
            face = tau[:i] + tau[i + 1:]
            c = complex_data.position(face)
            triples.append((r, c, ring.from_int(-1 if i % 2 else 1)))
    return SparseMatrix.from_entries(len(dst), len(src), triples, ring)


def chain_boundary_matrix(complex_data, dim, ring):
    """partial: C_dim -> C_(dim-1); the transpose of the coboundary."""
    return coboundary_matrix(complex_data, dim - 1, ring).transpose()


def homology_summary(complex_data, ring):
    """Per-degree chain homology; over Z this carries torsion."""
    top = complex_data.dimension
    out = {}
    for m in range(top + 1):
        outgoing = chain_boundary_matrix(complex_data, m, ring)
        incoming = chain_boundary_matrix(complex_data, m + 1, ring)
        out[m] = homology_dimensions(outgoing, incoming, ring)
    return out


def betti_numbers(complex_data, ring):
    summary = homology_summary(complex_data, ring)
    return tuple(summary[m].free_rank for m in range(complex_data.dimension + 1))


# ---------------------------------------------------------------------------
# the cochain DGA


def _simplex_name(s):
    return "-".join(str(v) for v in s)


def build_cochain_dga(complex_data, ring):
    """Simplicial cochains as a finite DGA: cup product, coboundary."""
    ring.require_field("cochain algebra")
    order = list(complex_data.all_simplices())
    index = {s: i for i, s in enumerate(order)}
    names = [_simplex_name(s) for s in order]
    degrees = [len(s) - 1 for s in order]
    one = ring.one()
    unit = {index[s]: one for s in complex_data.simplices(0)}
    mul = {}
    for rho in order:
        d = len(rho) - 1
        for cut in range(d + 1):
            front = rho[:cut + 1]
            back = rho[cut:]
            key = (index[front], index[back])
            vec = mul.setdefault(key, {})
            vec[index[rho]] = one
    diff = {}
    for s in order:
        d = len(s) - 1
        img = {}
        for tau in complex_data.simplices(d + 1):
            for i in range(len(tau)):
                if tau[:i] + tau[i + 1:] == s:
                    img[index[tau]] = ring.from_int(-1 if i % 2 else 1)
        if img:
            diff[index[s]] = img
    return FiniteGradedAlgebra(ring, names, degrees, unit, mul, diff)


# ---------------------------------------------------------------------------
# cohomology ring and duality


class _CohomologySide:
    """Cocycle representatives and class coordinates, one degree at a time."""

    def __init__(self, complex_data, ring):
        self.complex = complex_data
        self.ring = ring
        self.reps = {}
        self.reducers = {}
        top = complex_data.dimension
        for m in range(top + 1):
            delta = coboundary_matrix(complex_data, m, ring)
            kern = kernel_basis(delta, ring)
            bound_cols = (coboundary_matrix(complex_data, m - 1, ring).column_dicts()
                          if m > 0 else [])
            sieve = make_span_reducer(ring)
            tracked = SpanReducer(ring, track=True)
            for col in bound_cols:
                sieve.add(col)
                tracked.add(col, tag=None)
            reps = []
            for vec in kern:
                if sieve.add(vec):
                    tracked.add(vec, tag=len(reps))
                    reps.append(vec)
            self.reps[m] = reps
            self.reducers[m] = tracked

    def class_coordinates(self, m, vec):
        """Coordinates of a cocycle's class over the degree-m representatives."""
        residue, combo = self.reducers[m].reduce(vec)
        if residue:
            raise StropError("vector is not a cocycle in degree %d" % m)
        return combo


def _positions_to_cochain(complex_data, ring, m, vec):
    simplices = complex_data.simplices(m)
    return Cochain(complex_data, ring, m, {simplices[i]: v for i, v in vec.items()})


def _cochain_to_positions(c):
    complex_data = c.complex
    return {complex_data.position(s): v for s, v in c.coefficients.items()}


def cohomology_ring(complex_data, ring):
    """H^*(X) as a finite graded algebra with zero differential.

    Representatives are the first kernel vectors independent of the
    coboundary span, in matrix order, so the output is reproducible.
    """
    ring.require_field("cohomology ring")
    side = _CohomologySide(complex_data, ring)
    top = complex_data.dimension
    names = []
    degrees = []
    tags = {}
    for m in range(top + 1):
        for i in range(len(side.reps[m])):
            tags[(m, i)] = len(names)
            names.append("h%d_%d" % (m, i))
            degrees.append(m)
    unit_vec = _cochain_to_positions(unit_cochain(complex_data, ring))
    unit_combo = side.class_coordinates(0, unit_vec)
    unit = {tags[(0, i)]: v for i, v in unit_combo.items()}
    mul = {}
    for (p, i), bi in tags.items():
        ci = _positions_to_cochain(complex_data, ring, p, side.reps[p][i])
        for (q, j), bj in tags.items():
            if p + q > top:
                continue
            prod = cup_product(ci, _positions_to_cochain(
                complex_data, ring, q, side.reps[q][j]))
            combo = side.class_coordinates(p + q, _cochain_to_positions(prod))
            if combo:
                mul[(bi, bj)] = {tags[(p + q, t)]: v for t, v in combo.items()}
    return FiniteGradedAlgebra(ring, names, degrees, unit, mul)


def fundamental_class(complex_data, ring):
    """Orient the top simplices by sign propagation across shared ridges.

    Works on pure complexes where every ridge bounds at most two top
    simplices; the result is verified to be a cycle, so non-orientable
    inputs fail even when propagation assigns every sign.
    """
    top = complex_data.dimension
    if top < 0:
        raise NotPure("complex has no simplices")
    tops = complex_data.simplices(top)
    # purity: every maximal simplex has the top dimension
    for d in range(top):
        for s in complex_data.simplices(d):
            in_some_facet = any(set(s) <= set(t) for t in complex_data.simplices(d + 1))
            if not in_some_facet:
                raise NotPure("maximal simplex %s has dimension %d < %d"
                              % (s, d, top))
    ring_of = {}
    for pos, s in enumerate(tops):
        for i in range(len(s)):
            ridge = s[:i] + s[i + 1:]
            ring_of.setdefault(ridge, []).append((pos, -1 if i % 2 else 1))
    for ridge, incidences in ring_of.items():
        if len(incidences) > 2:
            raise NotOrientable("ridge %s lies in %d top simplices"
                                % (ridge, len(incidences)))
    signs = {}
    for start in range(len(tops)):
        if start in signs:
            continue
        signs[start] = 1
        stack = [start]
        while stack:
            cur = stack.pop()
            s = tops[cur]
            for i in range(len(s)):
                ridge = s[:i] + s[i + 1:]
                for other, other_sign in ring_of[ridge]:
                    if other == cur or other in signs:
                        continue
                    my_sign = -1 if i % 2 else 1
                    # coefficients on the shared ridge must cancel
                    signs[other] = -signs[cur] * my_sign * other_sign
                    stack.append(other)
    fc = Chain(complex_data, ring, top,
               {s: ring.from_int(signs[pos]) for pos, s in enumerate(tops)})
    if not boundary(fc).is_zero():
        raise NotOrientable("no orientation exists over %s" % ring.name)
    return fc


class DualityContext:
    """Cap-with-fundamental-class duality and the induced intersection product."""

    def __init__(self, complex_data, ring):
        ring.require_field("intersection product")
        self.complex = complex_data
        self.ring = ring
        self.fc = fundamental_class(complex_data, ring)
        self.d = complex_data.dimension
        self.cochain_side = _CohomologySide(complex_data, ring)
        # chain side: cycle representatives modulo boundaries per degree
        self.chain_reps = {}
        self.chain_reducers = {}
        for m in range(self.d + 1):
            outgoing = chain_boundary_matrix(complex_data, m, ring)
            kern = kernel_basis(outgoing, ring)
            bound_cols = chain_boundary_matrix(complex_data, m + 1, ring).column_dicts()
            sieve = make_span_reducer(ring)
            tracked = SpanReducer(ring, track=True)
            for col in bound_cols:
                sieve.add(col)
                tracked.add(col, tag=None)
            reps = []
            for vec in kern:
                if sieve.add(vec):
                    tracked.add(vec, tag=len(reps))
                    reps.append(vec)
            self.chain_reps[m] = reps
            self.chain_reducers[m] = tracked
        # duality matrix per cochain degree k: class of (fc cap rep) in H_(d-k)
        self.pd_matrices = {}
        for k in range(self.d + 1):
            cols = []
            for vec in self.cochain_side.reps[k]:
                phi = _positions_to_cochain(complex_data, ring, k, vec)
                capped = cap_product(self.fc, phi)
                pos = {complex_data.position(s): v
                       for s, v in capped.coefficients.items()}
                residue, combo = self.chain_reducers[self.d - k].reduce(pos)
                if residue:
                    raise StropError("cap image is not a cycle class")
                cols.append(combo)
            self.pd_matrices[k] = SparseMatrix.from_column_dicts(
                len(self.chain_reps[self.d - k]), cols, ring)

    def chain_class(self, c):
        if boundary(c).is_zero() is False:
            raise ValueError("chain is not a cycle")
        pos = {self.complex.position(s): v for s, v in c.coefficients.items()}
        residue, combo = self.chain_reducers[c.degree].reduce(pos)
        if residue:
            raise StropError("cycle not recognized in its homology space")
        return combo

    def pd_inverse(self, c):
        """A cocycle phi with [fc cap phi] = [c]; c must be a cycle."""
        k = self.d - c.degree
        y = self.chain_class(c)
        x = solve(self.pd_matrices[k], y, self.ring)
        if x is None:
            raise StropError("duality system is not solvable in degree %d" % k)
        out = {}
        for i, coef in x.items():
            accumulate(out, coef, self.cochain_side.reps[k][i], self.ring)
        return _positions_to_cochain(self.complex, self.ring, k, out)

    def intersection(self, a, b):
        phi = self.pd_inverse(a)
        psi = self.pd_inverse(b)
        gamma = cup_product(phi, psi)
        target = a.degree + b.degree - self.d
        if target < 0 or gamma.degree > self.d:
            return Chain(self.complex, self.ring, target, {})
        return cap_product(self.fc, gamma)

    def homology_representatives(self, m):
        return [Chain(self.complex, self.ring, m,
                      {self.complex.simplices(m)[i]: v for i, v in vec.items()})
                for vec in self.chain_reps.get(m, [])]


def intersection_product(a, b, complex_data, ring):
    """PD^(-1)-transported cup product; unit is the fundamental class."""
    if a.complex is not complex_data or b.complex is not complex_data:
        raise MismatchedComplex("classes from a different complex")
    if not boundary(a).is_zero() or not boundary(b).is_zero():
        raise ValueError("intersection product needs cycles")
    return DualityContext(complex_data, ring).intersection(a, b)


# ---------------------------------------------------------------------------
# bundled complexes


def bundled_complex(name):
    from importlib import resources
    path = resources.files("strop").joinpath("data", "%s.txt" % name)
    try:
        text = path.read_text()
    except FileNotFoundError:
        raise ParseError("no bundled complex named %r" % name) from None
    return load_complex(text)


BUNDLED_COMPLEXES = ("point", "circle", "sphere2", "rp2", "sphere3")
