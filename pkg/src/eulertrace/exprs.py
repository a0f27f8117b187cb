"""Symbolic calculus of group constructions and their L2-Euler data.

Expression nodes describe groups built from finite groups, free groups,
direct products, graphs of groups, a distinguished "times Z" constructor,
and opaque groups known only through declared properties. Evaluation
assigns Betti vectors and chi2 values by closed-form structural rules and
refuses to guess: whenever a rule's hypotheses cannot be certified from
the structure or the declarations, the result is Undefined (for chi2-like
values) or UNKNOWN (for Betti vectors), never a default.

The evaluators never compute Betti numbers from operator algebras; every
vector comes from the rule table below.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .graphs import (GraphOfFiniteGroups, chi2_centralizer, complete_euler_char,
                     e_of_graph, fusion_classes, validate_graph)
from .groups import FiniteGroup, cyclic
from .groupring import wall_element_finite


class _Unknown:
    __slots__ = ()

    def __repr__(self):
        return "Unknown"


UNKNOWN = _Unknown()


@dataclass(frozen=True)
class Undefined:
    """Evaluation refused: the reason names the missing hypothesis."""

    reason: str


def is_undefined(x) -> bool:
    return isinstance(x, Undefined)


# -- expression nodes -------------------------------------------------------
# eq=False: nodes compare and hash by identity, which makes the lru_cache
# memoization per node.


class GroupExpr:
    """Base class for expression nodes."""


@dataclass(frozen=True, eq=False)
class Trivial(GroupExpr):
    pass


@dataclass(frozen=True, eq=False)
class Finite(GroupExpr):
    group: FiniteGroup


@dataclass(frozen=True, eq=False)
class Free(GroupExpr):
    rank: int

    def __post_init__(self):
        if self.rank < 2:
            raise ValueError("Free rank must be >= 2; use free_expr for small ranks")


@dataclass(frozen=True, eq=False)
class InfiniteCyclic(GroupExpr):
    pass


@dataclass(frozen=True, eq=False)
class DirectProduct(GroupExpr):
    factors: tuple[GroupExpr, ...]

    def __post_init__(self):
        if len(self.factors) < 1:
            raise ValueError("DirectProduct needs at least one factor")


@dataclass(frozen=True, eq=False)
class GraphNode(GroupExpr):
    graph: GraphOfFiniteGroups


@dataclass(frozen=True)
class SymbolicEdge:
    """Edge of a symbolic graph: a chi2 value, optionally backed by a finite group."""

    chi2: Fraction | None = None
    group: FiniteGroup | None = None
    fp: bool | None = None

    def resolved_chi2(self):
        if self.group is not None:
            value = Fraction(1, self.group.order)
            if self.chi2 is not None and self.chi2 != value:
                raise ValueError("declared edge chi2 contradicts the edge group order")
            return value
        return self.chi2

    def is_fp(self) -> bool:
        if self.group is not None:
            return True
        return bool(self.fp)


@dataclass(frozen=True, eq=False)
class SymbolicGraph(GroupExpr):
    """Finite graph of groups whose vertices are expressions and whose edges are declared."""

    vertices: tuple[GroupExpr, ...]
    edges: tuple[SymbolicEdge, ...]

    def __post_init__(self):
        if len(self.vertices) < 1:
            raise ValueError("SymbolicGraph needs at least one vertex")


@dataclass(frozen=True, eq=False)
class CrossZ(GroupExpr):
    """The child group times the infinite cyclic group."""

    child: GroupExpr


@dataclass(frozen=True, eq=False)
class Opaque(GroupExpr):
    """A group known only through declarations; it is never evaluated beyond them."""

    name: str
    type_fp: bool = False
    beta: tuple[Fraction, ...] | None = None
    chi2: Fraction | None = None
    has_infinite_normal_amenable: bool = False


def free_expr(rank: int) -> GroupExpr:
    """Free group of any rank; rank 0 is the trivial group, rank 1 is Z."""
    if rank < 0:
        raise ValueError("rank must be non-negative")
    if rank == 0:
        return Trivial()
    if rank == 1:
        return InfiniteCyclic()
    return Free(rank)


# -- Betti vectors -----------------------------------------------------------


def beta_convolve(u, v):
    out = [Fraction(0)] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        if a == 0:
            continue
        for j, b in enumerate(v):
            out[i + j] += a * b
    return tuple(out)


def beta_alt_sum(u) -> Fraction:
    return sum(((-1) ** i * x for i, x in enumerate(u)), Fraction(0))


def _frac_tuple(values):
    out = tuple(Fraction(x) for x in values)
    if any(x < 0 for x in out):
        raise ValueError("Betti numbers are non-negative")
    return out


# -- evaluation --------------------------------------------------------------


@lru_cache(maxsize=None)
def eval_beta(e: GroupExpr):
    """Betti vector of the expression, or UNKNOWN.

    Rule table: Trivial (1); Finite(G) (1/|G|); Free(n) (0, n-1);
    InfiniteCyclic (0); CrossZ (0) by Cheeger-Gromov vanishing (an infinite
    normal amenable subgroup kills every Betti number); DirectProduct by
    Kunneth convolution; graph nodes carry no vector (only the alternating
    sum is determined); Opaque nodes only what they declare.

    The zeroth entry of every infinite node is 0; that convention is what
    lets Free(n) carry chi2 = 1 - n as a concrete vector.
    """
    if isinstance(e, Trivial):
        return (Fraction(1),)
    if isinstance(e, Finite):
        return (Fraction(1, e.group.order),)
    if isinstance(e, Free):
        return (Fraction(0), Fraction(e.rank - 1))
    if isinstance(e, InfiniteCyclic):
        return (Fraction(0),)
    if isinstance(e, CrossZ):
        return (Fraction(0),)
    if isinstance(e, DirectProduct):
        vec = (Fraction(1),)
        for f in e.factors:
            b = eval_beta(f)
            if b is UNKNOWN:
                return UNKNOWN
            vec = beta_convolve(vec, b)
        return vec
    if isinstance(e, (GraphNode, SymbolicGraph)):
        return UNKNOWN
    if isinstance(e, Opaque):
        return _frac_tuple(e.beta) if e.beta is not None else UNKNOWN
    raise TypeError(f"not an expression node: {e!r}")


@lru_cache(maxsize=None)
def has_inas(e: GroupExpr) -> bool:
    """Does the structure certify an infinite normal amenable subgroup?

    Such a subgroup forces all Betti numbers to vanish, hence chi2 = 0,
    with no other hypotheses. A factor's witness is normal in the whole
    product; nothing is inferred for graph nodes.
    """
    if isinstance(e, (InfiniteCyclic, CrossZ)):
        return True
    if isinstance(e, DirectProduct):
        return any(has_inas(f) for f in e.factors)
    if isinstance(e, Opaque):
        return e.has_infinite_normal_amenable
    return False


@lru_cache(maxsize=None)
def betti_sum_certified(e: GroupExpr) -> bool:
    """Is the total Betti sum certified convergent?

    Needed as the hypothesis for the product and graph formulas. Known
    finite vectors qualify; so do vanishing vectors forced by an infinite
    normal amenable subgroup, and graph nodes whose pieces all qualify.
    Opaque nodes with only a declared chi2 do not.
    """
    if eval_beta(e) is not UNKNOWN:
        return True
    if has_inas(e):
        return True
    if isinstance(e, GraphNode):
        return True
    if isinstance(e, SymbolicGraph):
        return all(betti_sum_certified(v) for v in e.vertices)
    if isinstance(e, DirectProduct):
        return all(betti_sum_certified(f) for f in e.factors)
    return False


@lru_cache(maxsize=None)
def is_fp(e: GroupExpr) -> bool:
    """Certify type FP over the complex group ring, from structure and declarations."""
    if isinstance(e, (Trivial, Finite, Free, InfiniteCyclic)):
        return True
    if isinstance(e, DirectProduct):
        return all(is_fp(f) for f in e.factors)
    if isinstance(e, CrossZ):
        return is_fp(e.child)
    if isinstance(e, GraphNode):
        return True
    if isinstance(e, SymbolicGraph):
        return (all(is_fp(v) for v in e.vertices)
                and all(edge.is_fp() for edge in e.edges))
    if isinstance(e, Opaque):
        return e.type_fp
    raise TypeError(f"not an expression node: {e!r}")


@lru_cache(maxsize=None)
def eval_chi2(e: GroupExpr):
    """L2-Euler characteristic, or Undefined with the missing hypothesis.

    When the Betti vector is known the value is its alternating sum. A
    product multiplies factor values provided every factor has a certified
    convergent Betti sum (or some factor has an infinite normal amenable
    subgroup, which forces 0). A graph node uses the alternating vertex/edge
    sum, with the same certification required of every vertex.
    """
    beta = eval_beta(e)
    if beta is not UNKNOWN:
        return beta_alt_sum(beta)
    if isinstance(e, DirectProduct):
        if has_inas(e):
            return Fraction(0)
        total = Fraction(1)
        for f in e.factors:
            v = eval_chi2(f)
            if is_undefined(v):
                return Undefined(f"product factor: {v.reason}")
            if not betti_sum_certified(f):
                return Undefined("product factor has no certified convergent Betti sum")
            total *= v
        return total
    if isinstance(e, GraphNode):
        return e_of_graph(validate_graph(e.graph))
    if isinstance(e, SymbolicGraph):
        total = Fraction(0)
        for v in e.vertices:
            value = eval_chi2(v)
            if is_undefined(value):
                return Undefined(f"graph vertex: {value.reason}")
            if not betti_sum_certified(v):
                return Undefined("graph vertex has no certified convergent Betti sum")
            total += value
        for edge in e.edges:
            value = edge.resolved_chi2()
            if value is None:
                return Undefined("graph edge without a chi2 declaration")
            total -= value
        return total
    if isinstance(e, Opaque):
        if e.chi2 is not None:
            return Fraction(e.chi2)
        if has_inas(e):
            return Fraction(0)
        return Undefined(f"opaque group {e.name!r} declares neither beta nor chi2")
    raise TypeError(f"not an expression node: {e!r}")


def eval_e(e: GroupExpr):
    """Euler characteristic e(G) = chi2(G), defined only when type FP is certified."""
    if not is_fp(e):
        return Undefined("not certified type FP over C")
    return eval_chi2(e)


# -- marked elements ---------------------------------------------------------


@dataclass(frozen=True)
class FiniteMark:
    """An element of a Finite node, by index."""

    element: int


@dataclass(frozen=True)
class GraphMark:
    """An element of a vertex group of a GraphNode."""

    vertex: int
    element: int


@dataclass(frozen=True)
class ProductMark:
    """Tuple of marks, one per factor; None means the identity there."""

    components: tuple


@dataclass(frozen=True)
class CrossZMark:
    """Finite-order element (u, 0) of child x Z; ``child`` marks u (None = identity)."""

    child: object = None


@dataclass(frozen=True)
class UnspecifiedMark:
    """Some finite-order element, not pinned down.

    Only usable where the value does not depend on the choice (a CrossZ
    node, where both invariants vanish identically).
    """

    order: int | None = None


@dataclass(frozen=True)
class VertexRef:
    """Reference to a symbolic-graph vertex inside a fixed-tree declaration."""

    index: int


@dataclass(frozen=True)
class SymbolicMark:
    """Finite-order element of a SymbolicGraph, with its declared centralizer data.

    ``vertex_terms``/``edge_terms`` describe the centralizer's action on the
    fixed subtree: chi2 values of the vertex and edge stabilizers, one per
    orbit (values, or VertexRef into the graph's vertices). ``vertex_hits``/
    ``edge_hits`` describe fusion: which vertex children contain classes
    fusing to the mark (with a mark inside the child), and which edge-group
    elements do. Either half may be omitted (None); evaluation of the
    corresponding side is then refused.
    """

    name: str
    order: int
    vertex_terms: tuple | None = None
    edge_terms: tuple | None = None
    vertex_hits: tuple | None = None  # ((vertex index, mark-in-child), ...)
    edge_hits: tuple | None = None  # ((edge index, element index), ...)


@dataclass(frozen=True)
class OpaqueMark:
    """Marked element of an Opaque node; both sides must be declared to evaluate."""

    order: int
    euler_value: Fraction | None = None
    centralizer_chi2: Fraction | None = None


def _mark_error(e, m):
    raise TypeError(f"mark {m!r} does not fit expression node {type(e).__name__}")


def _component_summable(f: GroupExpr, m) -> bool:
    # Betti-sum certification for the centralizer of the marked element.
    if m is None:
        return betti_sum_certified(f)
    if isinstance(m, FiniteMark) or isinstance(m, GraphMark):
        return True
    if isinstance(m, (CrossZMark, UnspecifiedMark)):
        return True  # centralizer contains the central Z, so beta vanishes
    if isinstance(m, SymbolicMark):
        return m.vertex_terms is not None  # declared fixed-tree data certifies it
    if isinstance(m, OpaqueMark):
        return m.centralizer_chi2 is not None
    if isinstance(m, ProductMark):
        return all(_component_summable(g, c) for g, c in zip(f.factors, m.components))
    return False


def _component_inas(f: GroupExpr, m) -> bool:
    # Does the centralizer of the marked element contain an infinite normal
    # amenable subgroup? For (u, 0) in H x Z the centralizer is C_H(u) x Z.
    if m is None:
        return has_inas(f)
    if isinstance(f, CrossZ):
        return True
    if isinstance(f, DirectProduct) and isinstance(m, ProductMark):
        return any(_component_inas(g, c) for g, c in zip(f.factors, m.components))
    return False


def chi2_centralizer_at(e: GroupExpr, m=None):
    """chi2 of the centralizer of the marked element; None marks the identity.

    Structural rules: brute-force counting in finite groups, factorwise
    products (centralizers of products split), 0 for CrossZ nodes, fusion
    fibers for graph nodes, and the declared fixed-tree data for symbolic
    graphs.
    """
    if m is None:
        return eval_chi2(e)
    if isinstance(e, Finite) and isinstance(m, FiniteMark):
        return Fraction(1, e.group.centralizer_order(m.element))
    if isinstance(e, DirectProduct) and isinstance(m, ProductMark):
        if len(m.components) != len(e.factors):
            raise ValueError("mark arity does not match the product")
        if any(_component_inas(f, c) for f, c in zip(e.factors, m.components)):
            return Fraction(0)
        total = Fraction(1)
        for f, c in zip(e.factors, m.components):
            v = chi2_centralizer_at(f, c)
            if is_undefined(v):
                return Undefined(f"product factor: {v.reason}")
            if not _component_summable(f, c):
                return Undefined("factor centralizer has no certified convergent Betti sum")
            total *= v
        return total
    if isinstance(e, CrossZ) and isinstance(m, (CrossZMark, UnspecifiedMark)):
        return Fraction(0)  # the centralizer contains the central Z
    if isinstance(e, GraphNode) and isinstance(m, GraphMark):
        table = fusion_classes(validate_graph(e.graph))
        return chi2_centralizer(e.graph, table.class_of_element(m.vertex, m.element))
    if isinstance(e, SymbolicGraph) and isinstance(m, SymbolicMark):
        if m.vertex_terms is None or m.edge_terms is None:
            return Undefined(f"mark {m.name!r} has no fixed-tree declaration")
        total = Fraction(0)
        for term in m.vertex_terms:
            if isinstance(term, VertexRef):
                v = eval_chi2(e.vertices[term.index])
                if is_undefined(v):
                    return Undefined(f"fixed-tree vertex term: {v.reason}")
                total += v
            else:
                total += Fraction(term)
        for term in m.edge_terms:
            total -= Fraction(term)
        return total
    if isinstance(e, Opaque) and isinstance(m, OpaqueMark):
        if m.centralizer_chi2 is None:
            return Undefined(f"opaque group {e.name!r}: centralizer chi2 not declared")
        return Fraction(m.centralizer_chi2)
    if isinstance(m, UnspecifiedMark):
        return Undefined("unspecified mark outside a CrossZ node")
    _mark_error(e, m)


def complete_euler_at(e: GroupExpr, m=None):
    """Component of the complete Euler characteristic at the marked element.

    Defined only for certified type-FP expressions, since the invariant is
    the trace of a Wall element. Finite nodes go through the group-ring
    trace; products multiply componentwise; CrossZ nodes vanish identically
    (their Wall element is zero); graph nodes push vertex and edge values
    into fusion classes, symbolically via the declared incidences.
    """
    if not is_fp(e):
        return Undefined("not certified type FP over C")
    if m is None:
        return eval_chi2(e)
    if isinstance(e, Finite) and isinstance(m, FiniteMark):
        G = e.group
        return wall_element_finite(G).at(G.class_of(m.element))
    if isinstance(e, DirectProduct) and isinstance(m, ProductMark):
        if len(m.components) != len(e.factors):
            raise ValueError("mark arity does not match the product")
        total = Fraction(1)
        for f, c in zip(e.factors, m.components):
            v = complete_euler_at(f, c)
            if is_undefined(v):
                return Undefined(f"product factor: {v.reason}")
            total *= v
        return total
    if isinstance(e, CrossZ) and isinstance(m, (CrossZMark, UnspecifiedMark)):
        return Fraction(0)  # Wall element of child x Z vanishes
    if isinstance(e, GraphNode) and isinstance(m, GraphMark):
        table = fusion_classes(validate_graph(e.graph))
        return complete_euler_char(e.graph).at(table.class_of_element(m.vertex, m.element))
    if isinstance(e, SymbolicGraph) and isinstance(m, SymbolicMark):
        if m.vertex_hits is None or m.edge_hits is None:
            return Undefined(f"mark {m.name!r} has no fusion declaration")
        total = Fraction(0)
        for vi, child_mark in m.vertex_hits:
            v = complete_euler_at(e.vertices[vi], child_mark)
            if is_undefined(v):
                return Undefined(f"fusion vertex hit: {v.reason}")
            total += v
        for ei, element in m.edge_hits:
            edge = e.edges[ei]
            if edge.group is None:
                return Undefined("fusion edge hit on an edge without an explicit group")
            E = edge.group
            total -= wall_element_finite(E).at(E.class_of(element))
        return total
    if isinstance(e, Opaque) and isinstance(m, OpaqueMark):
        if m.euler_value is None:
            return Undefined(f"opaque group {e.name!r}: Euler component not declared")
        return Fraction(m.euler_value)
    if isinstance(m, UnspecifiedMark):
        return Undefined("unspecified mark outside a CrossZ node")
    _mark_error(e, m)


# -- constructions -----------------------------------------------------------


def free_product_times_cyclic(n: int, k: int, ell: int) -> GroupExpr:
    """((F_2 x F_(n+1)) * F_k) x Z/ell, whose chi2 is exactly (n - k)/ell.

    The free product is a graph of groups on two vertices joined by an edge
    with trivial group (chi2 = 1). For ell = 1 the finite factor is omitted.
    """
    if n < 0 or k < 0 or ell < 1:
        raise ValueError("need n, k >= 0 and ell >= 1")
    left = DirectProduct((Free(2), free_expr(n + 1)))
    base = SymbolicGraph(
        vertices=(left, free_expr(k)),
        edges=(SymbolicEdge(group=cyclic(1)),),
    )
    if ell == 1:
        return base
    return DirectProduct((base, Finite(cyclic(ell))))


def involution_amalgam() -> tuple[SymbolicGraph, SymbolicMark]:
    """Two copies of (opaque FP group) x Z glued along an order-2 subgroup.

    The opaque vertex group declares type FP and contains an involution
    whose centralizer is not finitely generated; crossing with Z makes both
    invariants of the vertices vanish identically, so at the glued
    involution t everything is carried by the edge:

      chi2 of the centralizer = 0 + 0 - 1/2   (fixed-tree declaration)
      Euler component         = 0 + 0 - 1/2   (fusion declaration)
    """
    core = Opaque(
        name="FP group with an involution whose centralizer is not finitely generated",
        type_fp=True,
    )
    vertex0 = CrossZ(core)
    vertex1 = CrossZ(core)
    half = Fraction(1, 2)
    expr = SymbolicGraph(
        vertices=(vertex0, vertex1),
        edges=(SymbolicEdge(group=cyclic(2)),),
    )
    mark = SymbolicMark(
        name="t",
        order=2,
        vertex_terms=(Fraction(0), Fraction(0)),
        edge_terms=(half,),
        vertex_hits=((0, UnspecifiedMark(order=2)), (1, UnspecifiedMark(order=2))),
        edge_hits=((0, 1),),
    )
    return expr, mark


@dataclass
class Realization:
    """A marked expression realizing a prescribed rational value."""

    rho: Fraction
    expr: GroupExpr
    mark: ProductMark
    amalgam: SymbolicGraph
    amalgam_mark: SymbolicMark
    factor: GroupExpr
    euler_value: Fraction
    centralizer_chi2: Fraction
    amalgam_centralizer_chi2: Fraction
    annotations: tuple[str, ...]


def realize_rational(rho) -> Realization:
    """Marked type-FP expression with Euler component = centralizer chi2 = rho.

    The expression is (involution amalgam) x (group with chi2 = -2*rho);
    the mark is (t, identity). The centralizer of the mark is declared not
    of type FP (it surjects onto a non-finitely-generated group), which is
    what makes the construction interesting: the value rho is still
    realized exactly. Every rational is realizable.
    """
    rho = Fraction(rho)
    target = -2 * rho
    p, q = target.numerator, target.denominator
    factor = free_product_times_cyclic(max(p, 0), max(-p, 0), q)
    amalgam, t = involution_amalgam()
    expr = DirectProduct((amalgam, factor))
    mark = ProductMark((t, None))
    euler = complete_euler_at(expr, mark)
    chi2 = chi2_centralizer_at(expr, mark)
    amalgam_chi2 = chi2_centralizer_at(amalgam, t)
    assert not is_undefined(euler) and not is_undefined(chi2)
    return Realization(
        rho=rho,
        expr=expr,
        mark=mark,
        amalgam=amalgam,
        amalgam_mark=t,
        factor=factor,
        euler_value=euler,
        centralizer_chi2=chi2,
        amalgam_centralizer_chi2=amalgam_chi2,
        annotations=(
            "centralizer of the mark is not of type FP over C "
            "(declared: it is not finitely generated)",
        ),
    )
