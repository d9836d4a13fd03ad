"""Loop-degree ring pipeline: regrading, saturation control, the two
entry points against each other, and the constant-loop class map."""

import pytest

from strop.algebra import exterior_algebra, ground_field, truncated_polynomial
from strop.errors import NotOrientable, WindowTooSmall
from strop.loop_ring import (constant_loop_map, loop_ring_from_complex,
                             loop_ring_from_formal)
from strop.oracle import oracle_compare
from strop.rings import GF2, RATIONALS
from strop.simplicial import (SimplicialComplexData, build_cochain_dga,
                              bundled_complex)

Q = RATIONALS


def table_product(pres, q1, vec1, q2, vec2):
    ring = pres.ring
    out = {}
    for i, a in vec1.items():
        for j, b in vec2.items():
            for k, c in pres.table.get((q1, i, q2, j), {}).items():
                v = ring.add(out.get(k, ring.zero()),
                             ring.mul(ring.mul(a, b), c))
                if ring.is_zero(v):
                    out.pop(k, None)
                else:
                    out[k] = v
    return out


def test_point_is_the_ground_field_in_degree_zero():
    formal = loop_ring_from_formal(ground_field(GF2), 0, (-2, 2))
    assert formal.dimensions() == {-2: 0, -1: 0, 0: 1, 1: 0, 2: 0}
    assert all(formal.saturation().values())
    assert formal.warnings == ()
    assert formal.presentation.unit == {0: 1}

    complex_route = loop_ring_from_complex(bundled_complex("point"), Q,
                                           (-2, 2))
    assert complex_route.dimensions() == formal.dimensions()
    assert complex_route.warnings == ()

    m = constant_loop_map(formal)
    assert m.assignments == {"1": (0, {0: 1})}
    assert m.unital and m.pairs_checked == 1


def test_even_sphere_dimensions_and_class_map():
    res = loop_ring_from_formal(truncated_polynomial(GF2, 2, 2), 2, (-2, 6))
    assert res.dimensions() == {-2: 1, -1: 1, 0: 2, 1: 2, 2: 2, 3: 2,
                                4: 2, 5: 2, 6: 2}
    assert all(res.saturation().values())
    assert res.warnings == ()
    m = constant_loop_map(res)
    assert m.assignments == {"1": (0, {0: 1}), "x": (-2, {0: 1})}
    assert m.skipped == ()
    assert m.unital and m.pairs_checked == 3


def test_odd_sphere_is_free_on_two_generators():
    res = loop_ring_from_formal(exterior_algebra(Q, [3]), 3, (-3, 6))
    dims = res.dimensions()
    assert dims == {-3: 1, -2: 0, -1: 1, 0: 1, 1: 1, 2: 1, 3: 1, 4: 1,
                    5: 1, 6: 1}
    assert all(res.saturation().values())
    pres = res.presentation
    # one exterior generator in degree -3, one polynomial generator in 2
    assert pres.table[(-3, 0, 2, 0)] == {0: Q.one()}
    assert pres.table[(2, 0, 2, 0)] == {0: Q.one()}
    assert pres.table[(2, 0, -3, 0)] == {0: Q.one()}
    m = constant_loop_map(res)
    assert set(m.assignments) == {"1", "x0"}
    assert m.assignments["x0"][0] == -3


def test_loop_dimensions_match_the_dense_oracle():
    res = loop_ring_from_formal(truncated_polynomial(GF2, 2, 2), 2, (-2, 1))
    cmp = oracle_compare(truncated_polynomial(GF2, 2, 2), 5, (-2, 6))
    assert cmp.verdict == "equal"
    oracle_dims = {rec.degree: rec.oracle_dimension for rec in cmp.records}
    for q, dim in res.dimensions().items():
        assert oracle_dims[-q] == dim


def test_degree_one_classes_block_the_automatic_cap():
    rp2 = truncated_polynomial(GF2, 1, 3)
    with pytest.raises(WindowTooSmall) as excinfo:
        loop_ring_from_formal(rp2, 2, (-2, 0))
    assert excinfo.value.needed is None
    assert "explicit max_tensor_length" in str(excinfo.value)


def test_explicit_cap_computes_lower_bounds_with_warnings():
    rp2 = truncated_polynomial(GF2, 1, 3)
    res = loop_ring_from_formal(rp2, 2, (-2, 0), max_tensor_length=4,
                                require_saturation=False)
    assert res.dimensions() == {-2: 2, -1: 4, 0: 8}
    assert res.saturation() == {-2: False, -1: False, 0: False}
    assert any("degree-1 cohomology" in w for w in res.warnings)
    assert any("lower bounds" in w for w in res.warnings)

    m = constant_loop_map(res)
    assert m.assignments == {"1": (0, {0: 1}), "x": (-1, {0: 1}),
                             "x^2": (-2, {0: 1})}
    assert m.unital and m.pairs_checked == 6


def test_unorientable_input_is_rejected_over_the_rationals():
    with pytest.raises(NotOrientable):
        loop_ring_from_complex(bundled_complex("rp2"), Q, (-1, 0))


def test_triangulated_sphere_agrees_with_its_formal_model():
    from_complex = loop_ring_from_complex(bundled_complex("sphere2"), GF2,
                                          (-1, 0))
    from_formal = loop_ring_from_formal(truncated_polynomial(GF2, 2, 2), 2,
                                        (-1, 0))
    assert from_complex.dimensions() == from_formal.dimensions() == \
        {-1: 1, 0: 2}
    assert all(from_complex.saturation().values())
    assert from_complex.warnings == ()
    assert from_complex.source == "simplicial complex"
    assert from_complex.d == 2


def test_table_is_associative_and_unital():
    res = loop_ring_from_formal(exterior_algebra(Q, [3]), 3, (-3, 6))
    pres = res.presentation
    slots = pres.slots
    tabulated = sorted(q for q in slots if slots[q].dimension)
    incomplete = set(pres.incomplete_pairs)
    for q in tabulated:
        for i in range(slots[q].dimension):
            vec = {i: Q.one()}
            if (0, q) not in incomplete:
                assert table_product(pres, 0, pres.unit, q, vec) == vec
            if (q, 0) not in incomplete:
                assert table_product(pres, q, vec, 0, pres.unit) == vec
    triples = 0
    for q1 in tabulated:
        for q2 in tabulated:
            for q3 in tabulated:
                if ((q1, q2) in incomplete or (q2, q3) in incomplete
                        or (q1 + q2, q3) in incomplete
                        or (q1, q2 + q3) in incomplete):
                    continue
                if q1 + q2 not in slots or q2 + q3 not in slots \
                        or q1 + q2 + q3 not in slots:
                    continue
                for i in range(slots[q1].dimension):
                    for j in range(slots[q2].dimension):
                        for k in range(slots[q3].dimension):
                            left = table_product(
                                pres, q1 + q2,
                                table_product(pres, q1, {i: Q.one()},
                                              q2, {j: Q.one()}),
                                q3, {k: Q.one()})
                            right = table_product(
                                pres, q1, {i: Q.one()}, q2 + q3,
                                table_product(pres, q2, {j: Q.one()},
                                              q3, {k: Q.one()}))
                            assert left == right
                            triples += 1
    assert triples > 20


def test_window_without_degree_zero_has_no_unit_to_check():
    res = loop_ring_from_formal(truncated_polynomial(GF2, 2, 2), 2, (1, 3))
    assert res.presentation.unit is None
    m = constant_loop_map(res)
    assert m.unital is None
    assert m.assignments == {}
    assert set(m.skipped) == {("1", "degree outside window"),
                              ("x", "degree outside window")}


def test_document_is_deterministic_and_complete():
    def build():
        return loop_ring_from_formal(exterior_algebra(Q, [3]), 3, (-3, 4))

    doc1 = build().document()
    doc2 = build().document()
    assert doc1 == doc2
    keys = [line.split(":")[0] for line in doc1.splitlines()]
    assert keys == ["source", "source_hash", "ring", "manifold_dimension",
                    "window", "dimensions", "saturated", "representatives",
                    "unit", "products", "incomplete_pairs", "warnings"]
    assert '"e-3_0*e2_0": {"e-1_0": "1"}' in doc1

    other = loop_ring_from_formal(truncated_polynomial(GF2, 2, 2), 2,
                                  (-3, 4))
    assert other.source_hash != build().source_hash


def test_cochain_algebra_through_the_formal_door_warns_and_computes():
    # composite unit: the two-vertex interval forces the explicit
    # unit-vector serialization and a non-closed vertex cochain
    dga = build_cochain_dga(SimplicialComplexData(2, [(0, 1)]), GF2)
    assert len(dga.unit) == 2
    res = loop_ring_from_formal(dga, 1, (-1, 1), max_tensor_length=3,
                                require_saturation=False)
    assert res.dimensions() == {-1: 0, 0: 1, 1: 0}
    assert any("differential is not zero" in w for w in res.warnings)
    assert any("not graded-commutative" in w for w in res.warnings)
    assert len(res.source_hash) == 64
    m = constant_loop_map(res)
    assert m.assignments == {}
    assert m.unital is True
    assert set(reason for _, reason in m.skipped) == \
        {"constant cochain not closed"}
