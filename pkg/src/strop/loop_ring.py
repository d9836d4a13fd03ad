"""Loop products of a closed manifold through its cochain algebra.

The degree-shifted homology of the free loop space of a closed oriented
d-manifold carries an associative product, and that ring can be read off
the Hochschild cohomology of the manifold's cochain algebra.  This
module runs the regraded pipeline: build the cochain DGA (or accept a
formal cohomology algebra in its place), compute the windowed Hochschild
ring, and reindex total degree n to loop degree q = -n, which puts the
unit in degree 0.

The loop-space reading is conditional: it needs the input to be a closed
oriented manifold and simply connected.  Orientability is enforced (the
fundamental-class solver must succeed); the rest produce warnings and
the computation proceeds, since the Hochschild ring of the cochain
algebra is well defined regardless.  Formality is never inferred: the
caller chooses the formal entry point and thereby asserts it.

Saturation: a loop-degree window [qlo, qhi] needs Hochschild degrees
-qhi..-qlo plus one padding degree on each side.  By default the tensor
cap is chosen to saturate the whole window and WindowTooSmall propagates
when none does (degree-1 classes in the input make every cap
insufficient); passing an explicit cap with require_saturation=False
computes anyway and flags the unsaturated degrees.
"""

import hashlib

from .errors import WindowTooSmall
from .hochschild import (GradedRingPresentation, _arity_bound_profile,
                         build_window, class_coordinates, cup,
                         hochschild_differential, ring_presentation)
from .simplicial import betti_numbers, build_cochain_dga, fundamental_class
from .textio import emit_fields


class LoopRingResult:
    """Loop-degree ring presentation plus the provenance needed to emit a
    result document.  hochschild_window stays available so class-level
    helpers can reduce further cochains against the same representatives.
    """

    __slots__ = ("source", "source_hash", "ring", "d", "window",
                 "presentation", "warnings", "hochschild_window")

    def __init__(self, source, source_hash, ring, d, window, presentation,
                 warnings, hochschild_window):
        self.source = source
        self.source_hash = source_hash
        self.ring = ring
        self.d = d
        self.window = window
        self.presentation = presentation
        self.warnings = tuple(warnings)
        self.hochschild_window = hochschild_window

    def dimensions(self):
        return {q: slot.dimension
                for q, slot in self.presentation.slots.items()}

    def saturation(self):
        return {q: slot.saturated
                for q, slot in self.presentation.slots.items()}

    def document_fields(self):
        head = [
            ("source", self.source),
            ("source_hash", self.source_hash),
            ("ring", self.ring.name),
            ("manifold_dimension", self.d),
            ("window", [self.window[0], self.window[1]]),
        ]
        return (head + self.presentation.document_fields()
                + [("warnings", list(self.warnings))])

    def document(self):
        return emit_fields(self.document_fields())

    def __repr__(self):
        return ("LoopRingResult(%s, %s, d=%d, window=%r, dims=%r)"
                % (self.source, self.ring.name, self.d, self.window,
                   self.dimensions()))


def _auto_tensor_cap(algebra, internal_range):
    """Smallest cap saturating every certifiable interior degree."""
    fn, _flavor = _arity_bound_profile(algebra)
    lo, hi = internal_range
    top = hi if not algebra.diff else hi - 1
    needed = 1
    for m in range(lo + 1, top):
        for mm in (m - 1, m, m + 1):
            if mm < lo or mm > hi:
                continue
            b = fn(mm)
            if b is None:
                err = WindowTooSmall(
                    "no finite tensor cap saturates degree %d; pass an "
                    "explicit max_tensor_length with "
                    "require_saturation=False to compute anyway" % m)
                err.degree = m
                err.needed = None
                raise err
            needed = max(needed, b)
    return needed


def _reindex_to_loop(pres, window):
    """Flip total degree to loop degree and trim to the requested window.

    Products that land on a padding degree are demoted to incomplete
    pairs rather than reported against uncertified representatives.
    """
    qlo, qhi = window
    slots = {-n: slot for n, slot in pres.slots.items()
             if qlo <= -n <= qhi}
    tabulated = sorted(q for q in slots if slots[q].dimension)
    table = {}
    incomplete = set((-n1, -n2) for (n1, n2) in pres.incomplete_pairs
                     if -n1 in slots and -n2 in slots)
    for (n1, i, n2, j), combo in pres.table.items():
        q1, q2 = -n1, -n2
        if q1 not in slots or q2 not in slots:
            continue
        if q1 + q2 not in slots:
            incomplete.add((q1, q2))
            continue
        table[(q1, i, q2, j)] = combo
    for q1 in tabulated:
        for q2 in tabulated:
            if q1 + q2 not in slots:
                incomplete.add((q1, q2))
    unit = pres.unit if 0 in slots else None
    return GradedRingPresentation(pres.ring, slots, table, unit,
                                  tuple(sorted(incomplete)), prefix="e")


def _run_pipeline(algebra, d, source, source_text, window,
                  max_tensor_length, require_saturation, warnings):
    qlo, qhi = window
    if qlo > qhi:
        raise ValueError("empty window %r" % (window,))
    # one padding degree each side; a nonzero differential costs one more
    # at the top, where the window edge is never certified
    internal = (-qhi - 1, -qlo + 1 + (1 if algebra.diff else 0))
    if max_tensor_length is None:
        cap = _auto_tensor_cap(algebra, internal)
        w = build_window(algebra, cap, internal, normalized=True,
                         require_saturation=True)
    else:
        w = build_window(algebra, max_tensor_length, internal,
                         normalized=True,
                         require_saturation=require_saturation)
    pres = ring_presentation(w)
    loop_pres = _reindex_to_loop(pres, (qlo, qhi))
    unsaturated = sorted(q for q, slot in loop_pres.slots.items()
                         if not slot.saturated)
    if unsaturated:
        warnings.append(
            "dimensions at loop degrees %s are lower bounds: the tensor "
            "cap does not saturate them" % (unsaturated,))
    digest = hashlib.sha256(source_text.encode("utf-8")).hexdigest()
    return LoopRingResult(source, digest, algebra.ring, d, (qlo, qhi),
                          loop_pres, warnings, w)


def _formal_input_warnings(algebra, d):
    ring = algebra.ring
    warnings = []
    commutes = True
    for i in range(algebra.dim):
        for j in range(i, algebra.dim):
            ij = algebra.multiply_basis(i, j)
            ji = algebra.multiply_basis(j, i)
            sign = -1 if (algebra.degrees[i] * algebra.degrees[j]) % 2 else 1
            flipped = {k: ring.mul(ring.from_int(sign), c)
                       for k, c in ji.items()}
            if ij != flipped:
                commutes = False
    if not commutes:
        warnings.append("product is not graded-commutative; a cohomology "
                        "ring would be")
    if algebra.diff:
        warnings.append("differential is not zero; input treated as a "
                        "cochain algebra rather than a cohomology ring")
    top = max(algebra.degrees)
    if top != d:
        warnings.append("top basis degree %d differs from the stated "
                        "manifold dimension %d" % (top, d))
    else:
        top_dim = sum(1 for t in algebra.degrees if t == d)
        if top_dim != 1:
            warnings.append("top degree %d has dimension %d; a closed "
                            "oriented manifold would give 1" % (d, top_dim))
    h1 = algebra.homology_dimensions().get(1, 0)
    if h1:
        warnings.append("degree-1 cohomology is nonzero; without simple "
                        "connectivity the output is the Hochschild ring "
                        "of the input, not certified loop homology")
    return warnings


def _algebra_source_text(algebra):
    try:
        return algebra.to_text()
    except ValueError:
        # composite unit: fall back to an explicit unit-vector field
        ring = algebra.ring
        rows = [[algebra.names[i], ring.scalar_to_str(c)]
                for i, c in sorted(algebra.unit.items())]
        mul_rows = []
        for (i, j) in sorted(algebra.mul):
            for k in sorted(algebra.mul[(i, j)]):
                mul_rows.append([algebra.names[i], algebra.names[j],
                                 algebra.names[k],
                                 ring.scalar_to_str(algebra.mul[(i, j)][k])])
        diff_rows = []
        for i in sorted(algebra.diff):
            for k in sorted(algebra.diff[i]):
                diff_rows.append([algebra.names[i], algebra.names[k],
                                  ring.scalar_to_str(algebra.diff[i][k])])
        return emit_fields([
            ("ring", ring.name),
            ("basis", [[algebra.names[i], algebra.degrees[i]]
                       for i in range(algebra.dim)]),
            ("unit_vector", rows),
            ("mul", mul_rows),
            ("diff", diff_rows),
        ])


def loop_ring_from_formal(algebra, d, window, max_tensor_length=None,
                          require_saturation=True):
    """Loop ring of a manifold given by a formal model of its cochains.

    The caller asserts that the cochain algebra is quasi-isomorphic to
    the cohomology ring passed here.  Violated expectations (product not
    graded-commutative, nonzero differential, top degree not of
    dimension one in degree d) warn and compute anyway.
    """
    algebra.ring.require_field("loop ring")
    if d < 0:
        raise ValueError("manifold dimension must be >= 0, got %d" % d)
    warnings = _formal_input_warnings(algebra, d)
    return _run_pipeline(algebra, d, "formal algebra",
                         _algebra_source_text(algebra), window,
                         max_tensor_length, require_saturation, warnings)


def loop_ring_from_complex(complex_data, ring, window, max_tensor_length=None,
                           require_saturation=True):
    """Loop ring of a triangulated closed manifold via its cochain DGA.

    Orientability over the ring is required up front (NotOrientable
    propagates from the fundamental-class solver); nonzero first
    cohomology only warns, as for the formal entry point.
    """
    ring.require_field("loop ring")
    fundamental_class(complex_data, ring)
    d = complex_data.dimension
    warnings = []
    if d >= 1 and betti_numbers(complex_data, ring)[1]:
        warnings.append("degree-1 cohomology is nonzero; without simple "
                        "connectivity the output is the Hochschild ring "
                        "of the cochain algebra, not certified loop "
                        "homology")
    algebra = build_cochain_dga(complex_data, ring)
    return _run_pipeline(algebra, d, "simplicial complex",
                         complex_data.to_text(), window, max_tensor_length,
                         require_saturation, warnings)


class ConstantLoopMap:
    """Class-level data of the map sending a cohomology class of the
    input algebra to its input-free (tensor length zero) Hochschild
    class."""

    __slots__ = ("assignments", "skipped", "unital", "pairs_checked")

    def __init__(self, assignments, skipped, unital, pairs_checked):
        self.assignments = assignments
        self.skipped = tuple(skipped)
        self.unital = unital
        self.pairs_checked = pairs_checked

    def __repr__(self):
        return ("ConstantLoopMap(%d assigned, %d skipped, unital=%s, "
                "pairs_checked=%d)" % (len(self.assignments),
                                       len(self.skipped), self.unital,
                                       self.pairs_checked))


def constant_loop_map(result):
    """Send each closed basis element of the input algebra to its loop
    class and verify the map is unital and multiplicative in-window.

    On tensor length zero the cup product is the algebra product on the
    nose, so multiplicativity is checked both at cochain level (exact
    equality) and at class level (against the result's multiplication
    table).  Basis elements whose constant cochain is not closed are
    reported in `skipped` rather than assigned.
    """
    w = result.hochschild_window
    algebra = w.algebra
    ring = w.ring
    pres = result.presentation
    interior = range(w.lo + 1, w.hi)

    assignments = {}
    cochains = {}
    skipped = []
    for b in range(algebra.dim):
        n = algebra.degrees[b]
        # the presentation may cover fewer degrees than the raw window
        # (padding degrees are computed but not reported), so gate on the
        # reported slots rather than the window interior
        if n not in interior or -n not in pres.slots:
            skipped.append((algebra.names[b], "degree outside window"))
            continue
        phi = w.elementary_cochain(n, (), b)
        if not hochschild_differential(phi).is_zero():
            skipped.append((algebra.names[b], "constant cochain not closed"))
            continue
        cochains[b] = phi
        assignments[algebra.names[b]] = (-n, class_coordinates(w, phi))

    if pres.unit is None:
        unital = None  # window omits degree 0, nothing to compare against
    else:
        unital = class_coordinates(w, w.unit_cochain()) == pres.unit

    pairs_checked = 0
    for b1 in sorted(cochains):
        for b2 in sorted(cochains):
            n = algebra.degrees[b1] + algebra.degrees[b2]
            if n not in interior:
                continue
            prod = algebra.multiply_basis(b1, b2)
            cochain_prod = cup(cochains[b1], cochains[b2])
            expect = w.cochain(n, {
                w.position(n, (), k): c for k, c in prod.items()})
            if cochain_prod != expect:
                raise AssertionError(
                    "length-zero cup disagrees with the algebra product "
                    "on %s*%s" % (algebra.names[b1], algebra.names[b2]))
            # class level: table product of the two classes
            q1 = -algebra.degrees[b1]
            q2 = -algebra.degrees[b2]
            if (q1, q2) in pres.incomplete_pairs:
                continue
            c1 = assignments[algebra.names[b1]][1]
            c2 = assignments[algebra.names[b2]][1]
            want = {}
            for i, a1 in c1.items():
                for j, a2 in c2.items():
                    combo = pres.table.get((q1, i, q2, j), {})
                    for k, c in combo.items():
                        v = ring.add(want.get(k, ring.zero()),
                                     ring.mul(ring.mul(a1, a2), c))
                        if ring.is_zero(v):
                            want.pop(k, None)
                        else:
                            want[k] = v
            got = class_coordinates(w, cochain_prod)
            if got != want:
                raise AssertionError(
                    "constant-loop classes fail multiplicativity on "
                    "%s*%s" % (algebra.names[b1], algebra.names[b2]))
            pairs_checked += 1
    return ConstantLoopMap(assignments, skipped, unital, pairs_checked)
