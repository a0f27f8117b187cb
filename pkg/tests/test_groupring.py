import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eulertrace import (GroupMismatch, GroupRingElement, GroupRingMatrix,
                        NotIdempotent, SizeMismatch, augmentation_dim,
                        conjugate_elementary, cyclic, dihedral, hs_trace,
                        kaplansky_trace, quaternion8, restrict_matrix,
                        subgroup_average, subgroup_generated, symmetric,
                        tensor_matrix, wall_element_finite)
from eulertrace.randgen import random_idempotent, random_ring_element

S3 = symmetric(3)
C2 = cyclic(2)
C4 = cyclic(4)


def averaging_matrix(G):
    return GroupRingMatrix.from_element(subgroup_average(G))


def test_ring_multiplication_examples():
    half = Fraction(1, 2)
    x = GroupRingElement(C2, {0: half, 1: half})
    assert x * x == x  # idempotent since t^2 = 1
    g = GroupRingElement.basis(S3, 2)
    h = GroupRingElement.basis(S3, 4)
    assert g * h == GroupRingElement.basis(S3, S3.mult[2][4])
    a = GroupRingElement(C2, {0: 1, 1: -1})
    b = GroupRingElement(C2, {0: 1, 1: 1})
    assert (a * b).is_zero()


def test_ring_add_sub_scalar():
    a = GroupRingElement(C4, {0: 1, 2: Fraction(1, 3)})
    b = GroupRingElement(C4, {2: Fraction(-1, 3), 3: 2})
    assert (a + b).coeffs == {0: 1, 3: 2}
    assert (a - a).is_zero()
    assert (Fraction(3) * a).coeffs == {0: 3, 2: 1}


def test_group_mismatch():
    a = GroupRingElement.one(C2)
    b = GroupRingElement.one(C4)
    with pytest.raises(GroupMismatch):
        a * b
    with pytest.raises(SizeMismatch):
        GroupRingMatrix.identity(C2, 2) * GroupRingMatrix.identity(C2, 3)


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_ring_is_associative_and_distributive(data):
    G = data.draw(st.sampled_from([S3, C4, quaternion8()]))
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    a, b, c = (random_ring_element(rng, G, max_terms=3) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a * b).aug() == a.aug() * b.aug()


def test_is_idempotent_examples():
    assert GroupRingMatrix.identity(S3, 2).is_idempotent()
    assert averaging_matrix(S3).is_idempotent()
    not_idem = GroupRingMatrix.from_element(GroupRingElement(C2, {0: 1, 1: 1}))
    assert not not_idem.is_idempotent()  # square is twice itself


def test_hs_trace_examples():
    trace = hs_trace(averaging_matrix(S3))
    assert [trace.at(i) for i in range(3)] == [
        Fraction(1, 6), Fraction(1, 2), Fraction(1, 3)]
    ident = hs_trace(GroupRingMatrix.identity(S3, 4))
    assert ident.at(0) == 4 and ident.at(1) == 0 and ident.at(2) == 0


def test_hs_block_diag_additivity():
    M = averaging_matrix(S3)
    N = GroupRingMatrix.identity(S3, 2)
    combined = hs_trace(GroupRingMatrix.block_diag(M, N))
    lhs = {i: combined.at(i) for i in range(3)}
    rhs = {i: hs_trace(M).at(i) + hs_trace(N).at(i) for i in range(3)}
    assert lhs == rhs


def test_hs_refuses_non_idempotent():
    M = GroupRingMatrix.from_element(GroupRingElement(C2, {0: 1, 1: 1}))
    with pytest.raises(NotIdempotent):
        hs_trace(M)
    raw = hs_trace(M, raw=True)
    assert raw.at(0) == 1 and raw.at(1) == 1


def test_kaplansky_examples():
    assert kaplansky_trace(averaging_matrix(S3)) == Fraction(1, 6)
    assert kaplansky_trace(GroupRingMatrix.identity(quaternion8(), 3)) == 3
    for ell in (2, 5, 9):
        assert kaplansky_trace(averaging_matrix(cyclic(ell))) == Fraction(1, ell)


def test_augmentation_examples():
    assert augmentation_dim(averaging_matrix(C4)) == 1
    assert augmentation_dim(GroupRingMatrix.identity(S3, 5)) == 5
    block = GroupRingMatrix.block_diag(averaging_matrix(S3), GroupRingMatrix.identity(S3, 1))
    assert augmentation_dim(block) == 2


def test_sum_rule_on_random_idempotents():
    rng = random.Random(7)
    for G in (S3, C4, dihedral(4)):
        for _ in range(10):
            M = random_idempotent(rng, G, size=2, conjugations=3)
            assert M.is_idempotent()
            assert hs_trace(M).total() == augmentation_dim(M)


def test_restriction_to_whole_group_is_identity():
    M = averaging_matrix(C4)
    res = restrict_matrix(M, range(4))
    assert res.index == 1 and res.matrix.size == 1
    assert res.matrix.rows[0][0].coeffs == M.rows[0][0].coeffs


def test_restriction_z4_to_z2():
    M = averaging_matrix(C4)
    res = restrict_matrix(M, [0, 2])
    hs_h = hs_trace(res.matrix)
    involution_class = res.subgroup.class_of(1)  # local index of element 2
    assert hs_trace(M).at(C4.class_of(2)) == Fraction(1, 4)
    assert hs_h.at(involution_class) == Fraction(1, 2)  # index 2 doubles the value


def test_restriction_s3_to_c3():
    three_cycle = next(x for x in range(6) if S3.element_order(x) == 3)
    res = restrict_matrix(averaging_matrix(S3), subgroup_generated(S3, [three_cycle]))
    hs_h = hs_trace(res.matrix)
    H = res.subgroup
    for idx in range(len(H.conjugacy_classes())):
        assert hs_h.at(idx) == Fraction(1, 3)


def test_restriction_formula_random():
    rng = random.Random(11)
    D4 = dihedral(4)
    for _ in range(5):
        M = random_idempotent(rng, D4, size=2, conjugations=2)
        res = restrict_matrix(M, [0, 1, 2, 3])
        hs_g, hs_h = hs_trace(M), hs_trace(res.matrix)
        H, inc = res.subgroup, res.inclusion
        for idx, cls in enumerate(H.conjugacy_classes()):
            s = cls.representative
            factor = Fraction(D4.centralizer_order(inc(s)), H.centralizer_order(s))
            assert hs_h.at(idx) == factor * hs_g.at(D4.class_of(inc(s)))


def test_tensor_examples():
    tp = tensor_matrix(averaging_matrix(S3), averaging_matrix(C4))
    hs_t = hs_trace(tp.matrix)
    transposition = S3.conjugacy_classes()[1].representative
    cls = tp.group.class_of(tp.pair_index(transposition, 1))
    assert hs_t.at(cls) == Fraction(1, 8)

    with_one = tensor_matrix(averaging_matrix(S3), GroupRingMatrix.identity(C4, 1))
    hs_w = hs_trace(with_one.matrix)
    base = hs_trace(averaging_matrix(S3))
    for a in range(6):
        cls = with_one.group.class_of(with_one.pair_index(a, 0))
        assert hs_w.at(cls) == base.at(S3.class_of(a))

    ident = tensor_matrix(GroupRingMatrix.identity(S3, 2), GroupRingMatrix.identity(C4, 3))
    assert hs_trace(ident.matrix).at(0) == 6


def test_wall_element_examples():
    wall = wall_element_finite(S3)
    assert [wall.at(i) for i in range(3)] == [Fraction(1, 6), Fraction(1, 2), Fraction(1, 3)]
    assert wall_element_finite(cyclic(1)).at(0) == 1
    twelve = wall_element_finite(cyclic(12))
    assert all(twelve.at(i) == Fraction(1, 12) for i in range(12))


def test_similarity_invariance_small():
    rng = random.Random(3)
    for G in (S3, quaternion8()):
        M = averaging_matrix(G)
        M = GroupRingMatrix.block_diag(M, GroupRingMatrix.identity(G, 1))
        base = hs_trace(M)
        for _ in range(30):
            i, j = rng.sample(range(M.size), 2)
            M = conjugate_elementary(M, i, j, random_ring_element(rng, G))
        assert hs_trace(M) == base


def test_conjugate_elementary_matches_full_product():
    rng = random.Random(5)
    M = GroupRingMatrix.block_diag(averaging_matrix(S3), GroupRingMatrix.zero(S3, 1))
    r = random_ring_element(rng, S3)
    fast = conjugate_elementary(M, 0, 1, r)
    E = GroupRingMatrix.identity(S3, 2)
    rows = [list(row) for row in E.rows]
    rows[0][1] = r
    U = GroupRingMatrix(S3, rows)
    rows = [list(row) for row in E.rows]
    rows[0][1] = -r
    Uinv = GroupRingMatrix(S3, rows)
    assert fast == U * M * Uinv
