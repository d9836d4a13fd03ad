import random

import pytest

import strop.signs as signs
from strop.algebra import (dual_numbers, exterior_algebra, ground_field,
                           tensor_product, truncated_polynomial)
from strop.errors import (CompositeNotZero, DegreeOutOfWindow,
                          IntegerRingNotSupported, MismatchedWindow,
                          WindowTooSmall)
from strop.hochschild import (Bidegree, build_window, cohomology, cup,
                              dual_coface_bar_matrix, hochschild_differential,
                              ring_presentation)
from strop.linalg import make_span_reducer
from strop.rings import GF2, INTEGERS, RATIONALS, CoefficientRing

from dga_samples import acyclic_extension, random_dga, random_scramble

F5 = CoefficientRing.prime_field(5)


def sphere_algebra(ring):
    # one generator in degree 2 squaring to zero
    return truncated_polynomial(ring, var_degree=2, truncation=2)


def random_cochain(rng, w, degree):
    vec = {}
    for pos in range(w.dimension(degree)):
        if rng.random() < 0.6:
            vec[pos] = w.ring.from_int(rng.randint(1, 4))
    return w.cochain(degree, vec)


def test_ground_field_window():
    w = build_window(ground_field(RATIONALS), 4, (-2, 3))
    assert [w.dimension(m) for m in range(-2, 4)] == [0, 0, 1, 0, 0, 0]
    coh = cohomology(w)
    assert {n: s.dimension for n, s in coh.items()} == {-1: 0, 0: 1, 1: 0, 2: 0}
    assert all(s.saturated for s in coh.values())


def test_integer_coefficients_rejected():
    with pytest.raises(IntegerRingNotSupported):
        build_window(ground_field(INTEGERS), 2, (0, 2))


def test_window_parameter_validation():
    a = dual_numbers(GF2)
    with pytest.raises(ValueError):
        build_window(a, 2, (3, 1))
    with pytest.raises(ValueError):
        build_window(a, -1, (0, 2))


def test_sphere_algebra_basis_bidegrees():
    # one reduced generator x of degree 2: maps x^{tensor s} -> {1, x} give
    # exactly two elements per tensor length, at totals -s and 2 - s
    w = build_window(sphere_algebra(GF2), 3, (-4, 3))
    expect = {
        -4: {},
        -3: {Bidegree(3, -6): 1},
        -2: {Bidegree(2, -4): 1},
        -1: {Bidegree(1, -2): 1, Bidegree(3, -4): 1},
        0: {Bidegree(0, 0): 1, Bidegree(2, -2): 1},
        1: {Bidegree(1, 0): 1},
        2: {Bidegree(0, 2): 1},
        3: {},
    }
    for m, table in expect.items():
        assert w.bidegree_dimensions(m) == table
    for s in range(4):
        count = sum(1 for m in range(-4, 4)
                    for tup, _ in w.basis_at(m) if len(tup) == s)
        assert count == 2


def test_full_complex_hom_count():
    # dim Hom(A^{tensor 2}, A) = 2^2 * 2 for the dual numbers
    w = build_window(dual_numbers(GF2), 2, (0, 3), normalized=False)
    assert w.bidegree_dimensions(2)[Bidegree(2, 0)] == 8


def test_normalized_inputs_avoid_unit():
    rng = random.Random(31)
    for ring in (RATIONALS, F5):
        a = random_scramble(rng, dual_numbers(ring))
        w = build_window(a, 3, (-1, 4))
        for m in range(-1, 5):
            for tup, _ in w.basis_at(m):
                assert a.unit_pivot not in tup


def test_degree_out_of_window():
    w = build_window(dual_numbers(GF2), 3, (0, 3))
    with pytest.raises(DegreeOutOfWindow):
        w.dimension(4)
    with pytest.raises(DegreeOutOfWindow):
        w.differential_matrix(3)
    with pytest.raises(DegreeOutOfWindow):
        w.cochain(-1, {})
    top = random_cochain(random.Random(0), w, 3)
    with pytest.raises(DegreeOutOfWindow):
        hochschild_differential(top)
    a = w.cochain(2, {0: GF2.one()})
    b = w.cochain(2, {0: GF2.one()})
    with pytest.raises(DegreeOutOfWindow):
        cup(a, b)


def test_mismatched_window():
    w1 = build_window(dual_numbers(GF2), 3, (0, 3))
    w2 = build_window(dual_numbers(GF2), 3, (0, 3))
    u1 = w1.unit_cochain()
    u2 = w2.unit_cochain()
    with pytest.raises(MismatchedWindow):
        cup(u1, u2)
    with pytest.raises(MismatchedWindow):
        u1.plus(u2)


def test_constant_cochains_closed_for_commutative():
    # zero differential + graded commutativity kill the degree-0 commutator
    cases = [
        (dual_numbers(RATIONALS), 3, (-1, 3)),
        (sphere_algebra(F5), 3, (-2, 4)),
        (exterior_algebra(RATIONALS, [3]), 3, (-3, 5)),
        (exterior_algebra(RATIONALS, [1, 2]), 3, (-2, 4)),
    ]
    for a, S, rng_ in cases:
        w = build_window(a, S, rng_)
        for i in range(a.dim):
            m = a.degrees[i]
            if w.lo <= m <= w.hi - 1:
                d = hochschild_differential(w.elementary_cochain(m, (), i))
                assert d.is_zero(), (a, i)


def test_identity_and_counit_differentials_dual_numbers():
    # b(id)(e, e) = e*id(e) - id(e*e) + id(e)*e = 0 since e^2 = 0
    w2 = build_window(dual_numbers(GF2), 3, (-1, 3))
    e = w2.algebra.reduced_indices[0]
    ident = w2.elementary_cochain(1, (e,), e)
    assert hochschild_differential(ident).is_zero()
    # over the rationals the two surviving terms of d(e -> 1) reinforce:
    # both faces send (e, e) to e with the convention's minus sign
    wq = build_window(dual_numbers(RATIONALS), 3, (-1, 3))
    e = wq.algebra.reduced_indices[0]
    counit = wq.elementary_cochain(1, (e,), wq.algebra.unit_pivot)
    d = hochschild_differential(counit)
    pos = wq.position(2, (e, e), e)
    assert d.vector == {pos: RATIONALS.from_int(-2)}


def test_unit_cochain_is_closed():
    for a in (dual_numbers(RATIONALS), sphere_algebra(F5),
              exterior_algebra(RATIONALS, [1, 2]),
              acyclic_extension(RATIONALS, 1)):
        w = build_window(a, 3, (-1, 3))
        assert hochschild_differential(w.unit_cochain()).is_zero()


def test_cup_single_input_squares():
    # (x -> 1) cup (x -> 1) = (x tensor x -> 1), over F2 in both flavours
    for a in (dual_numbers(GF2), sphere_algebra(GF2)):
        w = build_window(a, 3, (-3, 3))
        x = a.reduced_indices[0]
        one = a.unit_pivot
        f = w.elementary_cochain(1 + 0 - a.degrees[x], (x,), one)
        sq = cup(f, f)
        assert sq == w.elementary_cochain(2 - 2 * a.degrees[x], (x, x), one)


def test_cup_unit_laws_exact():
    rng = random.Random(77)
    for a, S, span in ((dual_numbers(RATIONALS), 4, (-1, 4)),
                       (sphere_algebra(GF2), 4, (-3, 4)),
                       (exterior_algebra(F5, [3]), 3, (-3, 4))):
        w = build_window(a, S, span)
        one = w.unit_cochain()
        for _ in range(20):
            m = rng.randint(w.lo, w.hi)
            phi = random_cochain(rng, w, m)
            assert cup(one, phi) == phi
            assert cup(phi, one) == phi


def test_cup_degree_zero_is_algebra_product():
    for a in (dual_numbers(RATIONALS), sphere_algebra(GF2)):
        w = build_window(a, 3, (-3, 4))
        for i in range(a.dim):
            for j in range(a.dim):
                if not (w.lo <= a.degrees[i] + a.degrees[j] <= w.hi):
                    continue
                ci = w.elementary_cochain(a.degrees[i], (), i)
                cj = w.elementary_cochain(a.degrees[j], (), j)
                prod = cup(ci, cj)
                expect = {w.index[a.degrees[i] + a.degrees[j]][((), k)]: c
                          for k, c in a.multiply_basis(i, j).items()}
                assert prod.vector == expect


def test_cup_bilinearity():
    rng = random.Random(13)
    w = build_window(dual_numbers(F5), 4, (-1, 4))
    for _ in range(10):
        p, q = rng.randint(0, 2), rng.randint(0, 2)
        f1 = random_cochain(rng, w, p)
        f2 = random_cochain(rng, w, p)
        g = random_cochain(rng, w, q)
        lhs = cup(f1.plus(f2), g)
        assert lhs == cup(f1, g).plus(cup(f2, g))


LEIBNIZ_WINDOWS = [
    (dual_numbers(RATIONALS), 5, (-1, 5)),
    (sphere_algebra(GF2), 4, (-3, 4)),
    (exterior_algebra(RATIONALS, [3]), 4, (-4, 4)),
    (tensor_product(dual_numbers(RATIONALS), exterior_algebra(RATIONALS, [3])), 3, (-2, 3)),
    (acyclic_extension(F5, 1), 3, (-2, 3)),
]


def test_leibniz_random_pairs():
    rng = random.Random(4021)
    for a, S, span in LEIBNIZ_WINDOWS:
        w = build_window(a, S, span)
        ring = w.ring
        degrees = [m for m in range(w.lo, w.hi) if w.dimension(m)]
        checked = 0
        while checked < 30:
            p = rng.choice(degrees)
            q = rng.choice(degrees)
            if not (w.lo <= p + q <= w.hi - 1):
                continue
            phi = random_cochain(rng, w, p)
            psi = random_cochain(rng, w, q)
            lhs = hochschild_differential(cup(phi, psi))
            sgn = ring.from_int(-1 if p % 2 else 1)
            rhs = cup(hochschild_differential(phi), psi).plus(
                cup(phi, hochschild_differential(psi)).scaled(sgn))
            assert lhs == rhs
            checked += 1


def test_cup_associativity_random():
    rng = random.Random(4022)
    for a, S, span in LEIBNIZ_WINDOWS:
        w = build_window(a, S, span)
        degrees = [m for m in range(w.lo, w.hi + 1) if w.dimension(m)]
        checked = 0
        while checked < 20:
            p, q, r = (rng.choice(degrees) for _ in range(3))
            if not all(w.lo <= t <= w.hi for t in (p + q, q + r, p + q + r)):
                continue
            phi = random_cochain(rng, w, p)
            psi = random_cochain(rng, w, q)
            chi = random_cochain(rng, w, r)
            assert cup(cup(phi, psi), chi) == cup(phi, cup(psi, chi))
            checked += 1


def test_classes_graded_commute():
    for a, S, span in ((sphere_algebra(GF2), 5, (-3, 4)),
                       (exterior_algebra(RATIONALS, [3]), 4, (-4, 4))):
        w = build_window(a, S, span)
        coh = cohomology(w)
        ring = w.ring
        for n1 in coh:
            for n2 in coh:
                n = n1 + n2
                if n - 1 < w.lo or n > w.hi - 1:
                    continue
                red = make_span_reducer(ring)
                for col in w.differential_matrix(n - 1).column_dicts():
                    red.add(col)
                sgn = ring.from_int(-1 if (n1 * n2) % 2 else 1)
                for phi in coh[n1].representatives:
                    for psi in coh[n2].representatives:
                        delta = cup(phi, psi).plus(
                            cup(psi, phi).scaled(ring.neg(sgn)))
                        assert red.contains(dict(delta.vector))


def test_normalized_full_agreement():
    # interior degrees where the ungraded full complex is exact arity by arity
    for a in (ground_field(RATIONALS), dual_numbers(GF2),
              dual_numbers(RATIONALS), dual_numbers(F5)):
        wn = build_window(a, 5, (-1, 5))
        wf = build_window(a, 5, (-1, 5), normalized=False)
        dn = {n: s.dimension for n, s in cohomology(wn).items()}
        df = {n: s.dimension for n, s in cohomology(wf).items()}
        for m in range(0, 5):
            if wn.saturated(m) and wf.saturated(m):
                assert dn[m] == df[m], (a, m)


def test_full_mode_graded_never_saturates():
    w = build_window(sphere_algebra(GF2), 4, (-2, 3), normalized=False)
    assert not any(w.saturated(m) for m in range(-2, 4))


def test_cohomology_anchors_dual_numbers():
    wf2 = build_window(dual_numbers(GF2), 5, (-1, 5))
    assert {n: s.dimension for n, s in cohomology(wf2).items()} == {
        0: 2, 1: 2, 2: 2, 3: 2, 4: 2}
    wq = build_window(dual_numbers(RATIONALS), 5, (-1, 5))
    assert {n: s.dimension for n, s in cohomology(wq).items()} == {
        0: 2, 1: 1, 2: 1, 3: 1, 4: 1}


def test_cohomology_anchors_formal_spheres():
    w2 = build_window(sphere_algebra(GF2), 5, (-3, 4))
    assert {n: s.dimension for n, s in cohomology(w2).items()} == {
        -2: 2, -1: 2, 0: 2, 1: 1, 2: 1, 3: 0}
    w3 = build_window(exterior_algebra(RATIONALS, [3]), 4, (-3, 4))
    assert {n: s.dimension for n, s in cohomology(w3).items()} == {
        -2: 1, -1: 1, 0: 1, 1: 1, 2: 0, 3: 1}


def test_saturation_flags():
    w = build_window(sphere_algebra(GF2), 5, (-3, 4))
    # the bottom edge would need tensor length 6 in the degree below it
    assert not w.saturated(-3)
    assert all(s.saturated for s in cohomology(w).values())
    circle = build_window(exterior_algebra(GF2, [1]), 3, (-2, 2))
    assert not any(s.saturated for s in cohomology(circle).values())


def test_window_too_small():
    a = sphere_algebra(GF2)
    with pytest.raises(WindowTooSmall) as exc:
        build_window(a, 3, (-2, 6), require_saturation=True)
    assert exc.value.degree == -1
    assert exc.value.needed == 4
    build_window(a, 4, (-2, 6), require_saturation=True)
    with pytest.raises(WindowTooSmall) as exc2:
        build_window(exterior_algebra(GF2, [1]), 6, (-2, 2),
                     require_saturation=True)
    assert exc2.value.needed is None


def test_sign_flip_breaks_square(monkeypatch):
    poly = truncated_polynomial(RATIONALS, 0, 4)
    orig = signs.bar_middle_sign
    monkeypatch.setattr(signs, "bar_middle_sign",
                        lambda *args: -orig(*args))
    with pytest.raises(CompositeNotZero) as exc:
        build_window(poly, 3, (-1, 3))
    assert isinstance(exc.value.degree, int)
    monkeypatch.undo()
    mixed = tensor_product(acyclic_extension(RATIONALS, 1),
                           exterior_algebra(RATIONALS, [1]))
    orig2 = signs.internal_slot_sign
    monkeypatch.setattr(signs, "internal_slot_sign",
                        lambda *args: -orig2(*args))
    with pytest.raises(CompositeNotZero):
        build_window(mixed, 3, (-2, 3))


def test_dual_coface_assembly_matches_bar_matrix():
    rng = random.Random(88)
    cases = [
        build_window(dual_numbers(RATIONALS), 4, (-1, 4)),
        build_window(dual_numbers(GF2), 3, (0, 3), normalized=False),
        build_window(sphere_algebra(GF2), 4, (-3, 4)),
        build_window(exterior_algebra(RATIONALS, [3]), 4, (-3, 4)),
        build_window(random_scramble(rng, acyclic_extension(F5, 1)), 3, (-2, 3)),
    ]
    for w in cases:
        for m in range(w.lo, w.hi):
            assert dual_coface_bar_matrix(w, m) == w.bar_matrix(m)


def test_random_windows_build():
    # construction enforces d*d = 0; a pass here is the assertion
    rng = random.Random(5150)
    for ring in (GF2, F5, RATIONALS):
        for _ in range(6):
            a = random_dga(rng, ring)
            build_window(a, 3, (-2, 3))
            build_window(a, 2, (0, 3), normalized=False)


def test_representatives_deterministic_cocycles():
    def snapshot():
        w = build_window(sphere_algebra(GF2), 4, (-3, 4))
        coh = cohomology(w)
        for slot in coh.values():
            for rep in slot.representatives:
                if rep.degree <= w.hi - 1:
                    assert hochschild_differential(rep).is_zero()
        return {n: [sorted(r.vector.items()) for r in s.representatives]
                for n, s in coh.items()}

    assert snapshot() == snapshot()


def test_ring_presentation_degree_zero_column():
    w = build_window(dual_numbers(RATIONALS), 4, (-1, 4))
    pres = ring_presentation(w)
    assert pres.dimensions()[0] == 2
    assert pres.unit is not None
    # the class of the constant-at-e cochain squares to zero, like e itself
    units = [i for i, c in pres.unit.items() if not RATIONALS.is_zero(c)]
    others = [i for i in range(2) if i not in units]
    assert len(others) >= 1
    j = others[0]
    assert pres.product(0, j, 0, j) == {}


def test_ring_presentation_unit_and_symmetry():
    w = build_window(exterior_algebra(RATIONALS, [3]), 4, (-4, 5))
    pres = ring_presentation(w)
    coh = pres.slots
    ring = pres.ring
    assert pres.unit is not None and len(pres.unit) == 1
    (u_idx, u_coeff), = pres.unit.items()
    assert ring.is_zero(ring.sub(u_coeff, ring.one()))
    for n in coh:
        if coh[n].dimension == 0 or n not in coh:
            continue
        if (0, n) in pres.incomplete_pairs:
            continue
        for i in range(coh[n].dimension):
            assert pres.product(0, u_idx, n, i) == {i: ring.one()}
            assert pres.product(n, i, 0, u_idx) == {i: ring.one()}
    # graded commutation of the table entries
    for (n1, i, n2, j), combo in pres.table.items():
        flip = pres.product(n2, j, n1, i)
        if flip is None:
            continue
        sgn = ring.from_int(-1 if (n1 * n2) % 2 else 1)
        assert combo == {k: ring.mul(sgn, c) for k, c in flip.items()}


def test_ring_presentation_incomplete_pairs():
    w = build_window(exterior_algebra(RATIONALS, [3]), 4, (-3, 4))
    pres = ring_presentation(w)
    nz = sorted(n for n, s in pres.slots.items() if s.dimension)
    expect = {(n1, n2) for n1 in nz for n2 in nz
              if not (w.lo + 1 <= n1 + n2 <= w.hi - 1)}
    assert set(pres.incomplete_pairs) == expect
    for (n1, n2) in expect:
        assert pres.product(n1, 0, n2, 0) is None


def test_presentation_stable_under_larger_cap():
    def dims(S):
        w = build_window(exterior_algebra(RATIONALS, [3]), S, (-3, 4))
        return ring_presentation(w).dimensions()

    assert dims(4) == dims(5)
