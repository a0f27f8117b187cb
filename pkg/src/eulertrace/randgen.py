"""Seeded random generators for the property sweeps.

Random idempotents are similarity conjugates of block idempotents, so
they are idempotent by construction; the test suites then verify the
trace identities on them. Everything takes an explicit random.Random so
sweeps are reproducible from a seed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .graphs import GraphEdge, GraphOfFiniteGroups
from .groups import (FiniteGroup, GroupHom, alternating, cyclic, dihedral,
                     quaternion8, subgroup_generated, symmetric)
from .groupring import (GroupRingElement, GroupRingMatrix, conjugate_elementary,
                        subgroup_average)

COEFF_POOL = (Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 2), Fraction(2))


def random_ring_element(rng: random.Random, G: FiniteGroup, max_terms: int = 2) -> GroupRingElement:
    coeffs = {}
    for _ in range(rng.randint(1, max_terms)):
        coeffs[rng.randrange(G.order)] = rng.choice(COEFF_POOL)
    return GroupRingElement(G, coeffs)


def random_block_idempotent(rng: random.Random, G: FiniteGroup, size: int = 2) -> GroupRingMatrix:
    """Diagonal of 0, 1, and averaging idempotents of random cyclic subgroups."""
    zero = GroupRingElement.zero(G)
    diag = []
    for _ in range(size):
        kind = rng.randrange(4)
        if kind == 0:
            diag.append(zero)
        elif kind == 1:
            diag.append(GroupRingElement.one(G))
        else:
            g = rng.randrange(G.order)
            e_h = subgroup_average(G, subgroup_generated(G, [g]))
            diag.append(e_h if kind == 2 else GroupRingElement.one(G) - e_h)
    rows = [[diag[i] if i == j else zero for j in range(size)] for i in range(size)]
    return GroupRingMatrix(G, rows)


def random_conjugation(rng: random.Random, M: GroupRingMatrix) -> GroupRingMatrix:
    """One random elementary similarity conjugation."""
    i = rng.randrange(M.size)
    j = rng.randrange(M.size - 1)
    if j >= i:
        j += 1
    r = random_ring_element(rng, M.group, max_terms=1)
    return conjugate_elementary(M, i, j, r)


def random_idempotent(rng: random.Random, G: FiniteGroup, size: int = 2,
                      conjugations: int = 3) -> GroupRingMatrix:
    M = random_block_idempotent(rng, G, size)
    for _ in range(conjugations):
        M = random_conjugation(rng, M)
    return M


# -- random graphs of groups -------------------------------------------------


def small_group_pool(order_cap: int = 24):
    pool = [cyclic(n) for n in range(1, 13)]
    pool += [dihedral(n) for n in range(3, 7)]
    pool += [symmetric(3), symmetric(4), alternating(4), quaternion8()]
    return [G for G in pool if G.order <= order_cap]


def _cyclic_edge(rng: random.Random, Gu: FiniteGroup, Gv: FiniteGroup):
    """Edge group = a random cyclic group embedding into both endpoints."""
    g = rng.randrange(Gu.order)
    m = Gu.element_order(g)
    candidates = [h for h in range(Gv.order) if Gv.element_order(h) == m]
    if not candidates:
        g, m, candidates = 0, 1, [0]
    h = rng.choice(candidates)
    C = cyclic(m)
    into_u = GroupHom(C, Gu, tuple(Gu.power(g, t) for t in range(m)))
    into_v = GroupHom(C, Gv, tuple(Gv.power(h, t) for t in range(m)))
    return C, into_u, into_v


def random_graph_of_groups(rng: random.Random, max_vertices: int = 3,
                           order_cap: int = 24, extra_edges: int = 2) -> GraphOfFiniteGroups:
    """Connected random graph of small groups with injective cyclic edges."""
    pool = small_group_pool(order_cap)
    n = rng.randint(1, max_vertices)
    vertices = [rng.choice(pool) for _ in range(n)]
    edges = []
    for v in range(1, n):  # spanning tree keeps it connected
        u = rng.randrange(v)
        C, hu, hv = _cyclic_edge(rng, vertices[u], vertices[v])
        edges.append(GraphEdge(C, (u, v), (hu, hv)))
    for _ in range(rng.randint(0, extra_edges)):  # extra edges, loops allowed
        u, v = rng.randrange(n), rng.randrange(n)
        C, hu, hv = _cyclic_edge(rng, vertices[u], vertices[v])
        edges.append(GraphEdge(C, (u, v), (hu, hv)))
    return GraphOfFiniteGroups(vertices, edges)


def random_betti_vector(rng: random.Random, max_len: int = 5) -> tuple[Fraction, ...]:
    length = rng.randint(1, max_len)
    return tuple(Fraction(rng.randint(0, 12), rng.randint(1, 8)) for _ in range(length))
