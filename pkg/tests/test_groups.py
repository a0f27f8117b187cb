import pytest
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from eulertrace import (ConjugacyClass, FiniteGroup, GroupHom, NotAGroup,
                        NotASubgroup, NotHomomorphism, TooLarge, alternating,
                        build_group, cyclic, dihedral, direct_product,
                        group_from_permutations, inner_automorphism, make_hom,
                        power_conjugacy_check, quaternion8, subgroup,
                        subgroup_generated, symmetric)

# Latin square with identity and inverses that fails associativity at (1,1,2)
NON_ASSOCIATIVE_LOOP = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 4, 0, 1, 3],
    [3, 2, 4, 0, 1],
    [4, 3, 1, 2, 0],
]

ZOO = [cyclic(12), symmetric(3), dihedral(4), quaternion8(), alternating(4), symmetric(4)]


def test_build_cyclic_table():
    G = build_group({"kind": "table", "table": [[(i + j) % 4 for j in range(4)] for i in range(4)]})
    assert G.order == 4
    assert G.inv == (0, 3, 2, 1)


def test_build_from_generators_gives_s3():
    G = build_group({"kind": "perm", "degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]})
    assert G.order == 6  # closure of a transposition and a 3-cycle
    assert G.element_keys[0] == (0, 1, 2)


def test_non_associative_table_rejected():
    with pytest.raises(NotAGroup, match="associativity"):
        build_group({"kind": "table", "table": NON_ASSOCIATIVE_LOOP})


def test_broken_identity_rejected():
    with pytest.raises(NotAGroup):
        FiniteGroup([[1, 0], [0, 1]])


def test_order_cap(monkeypatch):
    monkeypatch.setenv("EULER_TRACE_MAX_ORDER", "5")
    with pytest.raises(TooLarge):
        cyclic(6)
    with pytest.raises(TooLarge):
        group_from_permutations(3, [[1, 0, 2], [1, 2, 0]])
    assert cyclic(5).order == 5


@pytest.mark.parametrize("G,sizes", [
    (symmetric(3), [1, 3, 2]),
    (quaternion8(), [1, 1, 2, 2, 2]),
])
def test_class_sizes_in_order(G, sizes):
    assert [c.size for c in G.conjugacy_classes()] == sizes


def test_class_size_multisets():
    assert sorted(c.size for c in dihedral(4).conjugacy_classes()) == [1, 1, 2, 2, 2]
    assert sorted(c.size for c in symmetric(4).conjugacy_classes()) == [1, 3, 6, 6, 8]


def test_abelian_classes_are_singletons():
    G = cyclic(12)
    classes = G.conjugacy_classes()
    assert len(classes) == 12
    assert all(c.size == 1 for c in classes)


def test_identity_class_first():
    for G in ZOO:
        first = G.conjugacy_classes()[0]
        assert first == ConjugacyClass(0, (0,))


def test_centralizer_examples():
    S3 = symmetric(3)
    transposition = S3.conjugacy_classes()[1].representative
    assert S3.conjugacy_classes()[1].size == 3
    assert S3.centralizer_order(transposition) == 2
    assert S3.centralizer_order(0) == 6
    Q8 = quaternion8()
    i = next(x for x in range(8) if Q8.element_order(x) == 4)
    assert Q8.centralizer_order(i) == 4


def test_class_equation_and_orbit_stabilizer():
    for G in ZOO:
        classes = G.conjugacy_classes()
        assert sum(c.size for c in classes) == G.order
        for cls in classes:
            assert G.centralizer_order(cls.representative) * cls.size == G.order


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(ZOO), st.data())
def test_orbit_stabilizer_every_element(G, data):
    s = data.draw(st.integers(0, G.order - 1))
    cls = G.conjugacy_classes()[G.class_of(s)]
    assert G.centralizer_order(s) * cls.size == G.order


def test_power_conjugacy_examples():
    C5 = cyclic(5)
    assert power_conjugacy_check(C5, 1, 100).witness_N == 4  # p^4 = 1 mod 5
    assert power_conjugacy_check(C5, 0, 100).witness_N == 1
    S3 = symmetric(3)
    t = S3.conjugacy_classes()[1].representative
    assert power_conjugacy_check(S3, t, 100).witness_N == 1  # odd p fixes an involution


def test_power_conjugacy_always_holds():
    for G in ZOO:
        for s in range(G.order):
            assert power_conjugacy_check(G, s, 50).holds


def test_power_conjugacy_bad_bound():
    with pytest.raises(ValueError):
        power_conjugacy_check(cyclic(3), 1, 1)


def _relabeled(G, perm):
    # conjugate the table by a relabeling fixing the identity
    inverse = [0] * G.order
    for x, y in enumerate(perm):
        inverse[y] = x
    table = [[perm[G.mult[inverse[x]][inverse[y]]] for y in range(G.order)]
             for x in range(G.order)]
    return FiniteGroup(table)


def test_classes_invariant_under_automorphism_relabeling():
    for G in (symmetric(3), dihedral(4), quaternion8()):
        for g in range(G.order):
            perm = inner_automorphism(G, g).map
            H = _relabeled(G, perm)
            assert (sorted(c.size for c in H.conjugacy_classes())
                    == sorted(c.size for c in G.conjugacy_classes()))


def test_hom_validation():
    C2, C4 = cyclic(2), cyclic(4)
    ok = make_hom(C2, C4, [0, 2])
    assert ok.injective
    with pytest.raises(NotHomomorphism):
        make_hom(C2, C4, [0, 1])  # 1 has order 4
    collapse = make_hom(C2, cyclic(1), [0, 0])
    assert not collapse.injective


def test_subgroup_and_generated():
    S4 = symmetric(4)
    fix_last = [i for i, p in enumerate(S4.element_keys) if p[3] == 3]
    H, inc = subgroup(S4, fix_last)
    assert H.order == 6
    assert inc.injective and inc.validate()
    with pytest.raises(NotASubgroup):
        subgroup(S4, [0, 1, 2])  # two transpositions whose product is missing
    gen = subgroup_generated(S4, [fix_last[1]])
    assert 0 in gen and len(gen) == S4.element_order(fix_last[1])


def test_subgroup_must_contain_identity():
    with pytest.raises(NotASubgroup):
        subgroup(cyclic(4), [1, 3])


def test_direct_product_indexing():
    P = direct_product(symmetric(3), cyclic(4))
    assert P.order == 24
    assert P.mult[0][5] == 5
    # (a,b)*(c,d) = (ac, bd) under index a*4+b
    a, b, c, d = 2, 1, 3, 2
    S3, C4 = symmetric(3), cyclic(4)
    assert (P.mult[a * 4 + b][c * 4 + d]
            == S3.mult[a][c] * 4 + C4.mult[b][d])


def test_element_order_and_power():
    D4 = dihedral(4)
    assert D4.element_order(1) == 4  # the rotation r
    assert D4.element_order(4) == 2  # a reflection
    assert D4.power(1, 3) == 3
    assert D4.power(1, -1) == 3
