import random
from fractions import Fraction

import pytest

from eulertrace import (Disconnected, GraphEdge, GraphOfFiniteGroups, GroupHom,
                        NotHomomorphism, NotInjective, chi2_centralizer,
                        complete_euler_char, cyclic, dihedral, dinfty_graph,
                        e_of_graph, fusion_classes, inner_automorphism,
                        psl2z_graph, sl2z_graph, symmetric, validate_graph,
                        verify_formula1_graph)
from eulertrace.randgen import random_graph_of_groups


def trivial_edge(A, B, u=0, v=1):
    T = cyclic(1)
    return GraphEdge(T, (u, v), (GroupHom(T, A, (0,)), GroupHom(T, B, (0,))))


def test_validate_accepts_model_graphs():
    for g in (psl2z_graph(), sl2z_graph(), dinfty_graph()):
        assert validate_graph(g) is g


def test_validate_rejects_non_injective():
    C2, C3 = cyclic(2), cyclic(3)
    bad = GraphOfFiniteGroups(
        [C2, C3],
        [GraphEdge(C2, (0, 1), (GroupHom(C2, C2, (0, 1)), GroupHom(C2, C3, (0, 0))))])
    with pytest.raises(NotInjective):
        validate_graph(bad)


def test_validate_rejects_non_homomorphism():
    C2, C4 = cyclic(2), cyclic(4)
    bad = GraphOfFiniteGroups(
        [C4, C4],
        [GraphEdge(C2, (0, 1), (GroupHom(C2, C4, (0, 1)), GroupHom(C2, C4, (0, 2))))])
    with pytest.raises(NotHomomorphism):
        validate_graph(bad)  # 1 has order 4, not 2


def test_validate_rejects_disconnected():
    with pytest.raises(Disconnected):
        validate_graph(GraphOfFiniteGroups([cyclic(2), cyclic(3)], []))


def test_fusion_class_counts():
    assert fusion_classes(psl2z_graph()).size == 4
    assert fusion_classes(sl2z_graph()).size == 8
    assert fusion_classes(dinfty_graph()).size == 3


def test_fusion_representatives_are_least_nodes():
    table = fusion_classes(sl2z_graph())
    reps = [cls.representative for cls in table.classes]
    assert reps == sorted(reps)
    assert reps[0] == (0, 0)


def test_e_of_graph_values():
    assert e_of_graph(psl2z_graph()) == Fraction(-1, 6)
    assert e_of_graph(sl2z_graph()) == Fraction(-1, 12)
    assert e_of_graph(dinfty_graph()) == 0
    single = GraphOfFiniteGroups([symmetric(3)], [])
    assert e_of_graph(single) == Fraction(1, 6)


def test_complete_euler_psl2z():
    g = psl2z_graph()
    euler = complete_euler_char(g)
    assert euler.at(0) == Fraction(-1, 6)
    others = sorted(euler.at(i) for i in range(1, 4))
    assert others == [Fraction(1, 3), Fraction(1, 3), Fraction(1, 2)]


def test_complete_euler_sl2z_central_element():
    g = sl2z_graph()
    table = fusion_classes(g)
    euler = complete_euler_char(g)
    central = table.class_of_element(0, 2)  # x^2 = y^3 is central
    assert euler.at(central) == Fraction(-1, 12) == e_of_graph(g)
    assert euler.at(table.class_of_element(0, 1)) == Fraction(1, 4)
    assert euler.at(table.class_of_element(1, 1)) == Fraction(1, 6)


def test_chi2_centralizer_examples():
    g = sl2z_graph()
    table = fusion_classes(g)
    assert chi2_centralizer(g, table.class_of_element(0, 2)) == Fraction(-1, 12)
    assert chi2_centralizer(g, table.class_of_element(0, 1)) == Fraction(1, 4)
    d = dinfty_graph()
    dt = fusion_classes(d)
    assert chi2_centralizer(d, dt.class_of_element(0, 1)) == Fraction(1, 2)


def test_verification_report():
    for g, e in ((psl2z_graph(), Fraction(-1, 6)),
                 (sl2z_graph(), Fraction(-1, 12)),
                 (dinfty_graph(), Fraction(0))):
        v = verify_formula1_graph(g)
        assert v.all_equal
        assert v.e_value == e
        assert v.global_sum == 1
        assert not v.warnings


def test_single_vertex_sums_to_one():
    for G in (symmetric(3), dihedral(4), cyclic(7)):
        v = verify_formula1_graph(GraphOfFiniteGroups([G], []))
        assert v.e_value == Fraction(1, G.order)
        assert v.global_sum == 1
        assert v.all_equal


def test_hnn_loop_flagged_and_consistent():
    C2 = cyclic(2)
    g = GraphOfFiniteGroups([C2], [trivial_edge(C2, C2, 0, 0)])
    v = verify_formula1_graph(g)
    assert any("HNN" in w for w in v.warnings)
    assert v.e_value == Fraction(-1, 2)
    assert v.global_sum == 0  # one vertex, one edge
    assert v.all_equal


def test_loop_identifying_different_classes():
    # HNN edge gluing the rotation class of D4 to a reflection class
    D4 = dihedral(4)
    C2 = cyclic(2)
    loop = GraphEdge(C2, (0, 0), (GroupHom(C2, D4, (0, 2)), GroupHom(C2, D4, (0, 4))))
    g = GraphOfFiniteGroups([D4], [loop])
    table = fusion_classes(g)
    assert table.class_of_element(0, 2) == table.class_of_element(0, 4)
    v = verify_formula1_graph(g)
    assert v.global_sum == 0 and v.all_equal


def test_identity_coherence_and_global_sum_random():
    rng = random.Random(42)
    for _ in range(15):
        g = random_graph_of_groups(rng, max_vertices=3, order_cap=24)
        v = verify_formula1_graph(g)
        assert v.identity_matches_e
        assert v.global_sum == v.expected_global
        assert v.all_equal


def test_twisting_edge_embedding_by_automorphism_preserves_values():
    S3, C3 = symmetric(3), cyclic(3)
    r = next(x for x in range(6) if S3.element_order(x) == 3)
    into_c3 = GroupHom(C3, C3, (0, 1, 2))
    embed = GroupHom(C3, S3, (0, r, S3.mult[r][r]))
    base_graph = GraphOfFiniteGroups([S3, C3], [GraphEdge(C3, (0, 1), (embed, into_c3))])
    base = sorted(complete_euler_char(base_graph).values.values())
    for g in range(6):
        auto = inner_automorphism(S3, g)
        twisted = GroupHom(C3, S3, tuple(auto(x) for x in embed.map))
        h = GraphOfFiniteGroups([S3, C3], [GraphEdge(C3, (0, 1), (twisted, into_c3))])
        assert sorted(complete_euler_char(h).values.values()) == base
