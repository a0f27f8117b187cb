"""Worked graph-of-groups models with well-known Euler data."""

from __future__ import annotations

from .graphs import GraphEdge, GraphOfFiniteGroups
from .groups import GroupHom, cyclic


def free_product_graph(A, B) -> GraphOfFiniteGroups:
    """A * B: two vertices joined by an edge with trivial group."""
    T = cyclic(1)
    return GraphOfFiniteGroups(
        [A, B],
        [GraphEdge(T, (0, 1), (GroupHom(T, A, (0,)), GroupHom(T, B, (0,))))],
    )


def psl2z_graph() -> GraphOfFiniteGroups:
    """C2 * C3, the modular quotient model: e = -1/6."""
    return free_product_graph(cyclic(2), cyclic(3))


def sl2z_graph() -> GraphOfFiniteGroups:
    """C4 amalgamated with C6 over C2 (x^2 = y^3): e = -1/12."""
    C4, C6, C2 = cyclic(4), cyclic(6), cyclic(2)
    edge = GraphEdge(C2, (0, 1), (GroupHom(C2, C4, (0, 2)), GroupHom(C2, C6, (0, 3))))
    return GraphOfFiniteGroups([C4, C6], [edge])


def dinfty_graph() -> GraphOfFiniteGroups:
    """C2 * C2, the infinite dihedral model: e = 0."""
    return free_product_graph(cyclic(2), cyclic(2))
