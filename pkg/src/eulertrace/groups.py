"""Finite groups presented by multiplication tables.

Elements are dense indices 0..n-1 with 0 the identity; labels are cosmetic.
Derived data (inverses, conjugacy classes, centralizer orders) is computed
lazily and cached. Groups are immutable after construction, so all query
methods are safe for concurrent readers.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotAGroup, NotASubgroup, NotHomomorphism, TooLarge

DEFAULT_MAX_ORDER = 2000
FULL_ASSOC_LIMIT = 512  # the O(n^3) associativity sweep stops here
SPOT_CHECK_TRIPLES = 20000


def max_group_order() -> int:
    """Order cap for group construction; EULER_TRACE_MAX_ORDER overrides it."""
    value = os.environ.get("EULER_TRACE_MAX_ORDER", "").strip()
    return int(value) if value else DEFAULT_MAX_ORDER


@dataclass(frozen=True)
class ConjugacyClass:
    representative: int  # least member
    members: tuple[int, ...]  # sorted ascending

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass
class ClassFunction:
    """Rational-valued function on a finite set of class indices.

    Absent entries are exactly zero. ``domain`` is whatever object owns the
    class indexing (a FiniteGroup or a fusion table).
    """

    domain: object
    values: dict[int, Fraction]

    def at(self, class_id: int) -> Fraction:
        return self.values.get(class_id, Fraction(0))

    def total(self) -> Fraction:
        return sum(self.values.values(), Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.domain is other.domain and dict(self._nonzero()) == dict(other._nonzero())

    def _nonzero(self):
        return ((k, v) for k, v in self.values.items() if v != 0)


class FiniteGroup:
    """A finite group given by its full multiplication table on 0..n-1."""

    def __init__(self, mult, labels=None, name="G", _trusted=False):
        table = tuple(tuple(row) for row in mult)
        n = len(table)
        if n == 0:
            raise NotAGroup("empty multiplication table")
        cap = max_group_order()
        if n > cap:
            raise TooLarge(f"order {n} exceeds the configured cap {cap}")
        self.mult = table
        self.order = n
        self.name = name
        self.labels = tuple(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != n:
            raise NotAGroup(f"{len(self.labels)} labels for {n} elements")
        self.element_keys = None  # underlying objects (e.g. permutation tuples)
        self.assoc_fully_checked = True
        if _trusted:
            self.inv = self._find_inverses()
        else:
            self._validate()
        self._classes = None
        self._class_of = None

    # -- validation ------------------------------------------------------

    def _validate(self):
        n, table = self.order, self.mult
        full = range(n)
        for x, row in enumerate(table):
            if len(row) != n:
                raise NotAGroup(f"row {x} has length {len(row)}, expected {n}")
            for y in row:
                if not isinstance(y, int) or not 0 <= y < n:
                    raise NotAGroup(f"row {x} contains invalid element index {y!r}")
        for x in full:
            if table[0][x] != x or table[x][0] != x:
                raise NotAGroup(f"element 0 is not a two-sided identity at {x}")
        ref = list(full)
        for x in full:
            if sorted(table[x]) != ref:
                raise NotAGroup(f"row {x} is not a permutation")
        for y in full:
            if sorted(table[x][y] for x in full) != ref:
                raise NotAGroup(f"column {y} is not a permutation")
        self.inv = self._find_inverses()
        if n <= FULL_ASSOC_LIMIT:
            self._check_assoc_full()
        else:
            self._check_assoc_spot()
            self.assoc_fully_checked = False

    def _find_inverses(self):
        inv = []
        for x in range(self.order):
            y = self.mult[x].index(0)
            if self.mult[y][x] != 0:
                raise NotAGroup(f"element {x} has no two-sided inverse")
            inv.append(y)
        return tuple(inv)

    def _check_assoc_full(self):
        n, table = self.order, self.mult
        rng = range(n)
        for a in rng:
            row_a = table[a]
            for b in rng:
                row_ab = table[row_a[b]]
                row_b = table[b]
                for c in rng:
                    if row_ab[c] != row_a[row_b[c]]:
                        raise NotAGroup(f"associativity fails at ({a},{b},{c})")

    def _check_assoc_spot(self):
        n, table = self.order, self.mult
        rng = random.Random(0)  # deterministic spot check
        for _ in range(SPOT_CHECK_TRIPLES):
            a, b, c = rng.randrange(n), rng.randrange(n), rng.randrange(n)
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise NotAGroup(f"associativity fails at ({a},{b},{c})")

    # -- arithmetic ------------------------------------------------------

    def mul(self, x: int, y: int) -> int:
        return self.mult[x][y]

    def conjugate(self, g: int, x: int) -> int:
        """g * x * g^-1."""
        return self.mult[self.mult[g][x]][self.inv[g]]

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv[x], -k
        acc = 0
        for _ in range(k):
            acc = self.mult[acc][x]
        return acc

    def element_order(self, x: int) -> int:
        k, acc = 1, x
        while acc != 0:
            acc = self.mult[acc][x]
            k += 1
        return k

    def element_label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    # -- conjugacy data ---------------------------------------------------

    def conjugacy_classes(self) -> tuple[ConjugacyClass, ...]:
        """Classes sorted by least member, so the identity class comes first."""
        if self._classes is None:
            n = self.order
            class_of = [-1] * n
            classes = []
            for s in range(n):
                if class_of[s] >= 0:
                    continue
                members = sorted({self.conjugate(g, s) for g in range(n)})
                idx = len(classes)
                for m in members:
                    class_of[m] = idx
                classes.append(ConjugacyClass(members[0], tuple(members)))
            assert sum(c.size for c in classes) == n  # class equation
            self._classes = tuple(classes)
            self._class_of = tuple(class_of)
        return self._classes

    def class_of(self, x: int) -> int:
        self.conjugacy_classes()
        return self._class_of[x]

    def centralizer_order(self, s: int) -> int:
        count = sum(1 for g in range(self.order) if self.mult[g][s] == self.mult[s][g])
        cls = self.conjugacy_classes()[self.class_of(s)]
        assert count * cls.size == self.order  # orbit-stabilizer
        return count

    def is_abelian(self) -> bool:
        return all(c.size == 1 for c in self.conjugacy_classes())

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism between finite groups, as an element-index table."""

    source: FiniteGroup
    target: FiniteGroup
    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    @property
    def injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    def validate(self) -> "GroupHom":
        if len(self.map) != self.source.order:
            raise NotHomomorphism(
                f"map has {len(self.map)} entries for a group of order {self.source.order}")
        for v in self.map:
            if not isinstance(v, int) or not 0 <= v < self.target.order:
                raise NotHomomorphism(f"image {v!r} is not a target element")
        if self.map[0] != 0:
            raise NotHomomorphism("identity is not sent to the identity")
        smul, tmul, f = self.source.mult, self.target.mult, self.map
        for x in range(self.source.order):
            fx = f[x]
            for y in range(self.source.order):
                if f[smul[x][y]] != tmul[fx][f[y]]:
                    raise NotHomomorphism(f"map breaks multiplication at ({x},{y})")
        return self


def make_hom(source: FiniteGroup, target: FiniteGroup, images) -> GroupHom:
    return GroupHom(source, target, tuple(images)).validate()


def inner_automorphism(G: FiniteGroup, g: int) -> GroupHom:
    return GroupHom(G, G, tuple(G.conjugate(g, x) for x in range(G.order)))


# -- construction ----------------------------------------------------------


def build_group(spec: dict, name: str = "G") -> FiniteGroup:
    """Build a group from a table or permutation-generator description."""
    kind = spec.get("kind")
    if kind == "table":
        return FiniteGroup(spec["table"], labels=spec.get("labels"), name=name)
    if kind == "perm":
        return group_from_permutations(
            spec["degree"], spec["generators"], labels=spec.get("labels"), name=name)
    raise NotAGroup(f"unknown group spec kind {kind!r}")


def group_from_table(table, labels=None, name="G") -> FiniteGroup:
    return FiniteGroup(table, labels=labels, name=name)


def group_from_permutations(degree: int, generators, labels=None, name="G") -> FiniteGroup:
    """Close permutation generators under composition and build the table.

    Elements end up sorted as tuples, which puts the identity at index 0.
    Associativity is inherited from function composition, so the table
    validation is skipped.
    """
    if degree <= 0:
        raise NotAGroup("degree must be positive")
    gens = []
    for g in generators:
        p = tuple(g)
        if sorted(p) != list(range(degree)):
            raise NotAGroup(f"{g!r} is not a permutation of 0..{degree - 1}")
        gens.append(p)
    identity = tuple(range(degree))
    cap = max_group_order()
    elements = {identity}
    frontier = [identity]
    while frontier:
        fresh = []
        for p in frontier:
            for g in gens:
                q = tuple(g[p[i]] for i in range(degree))
                if q not in elements:
                    elements.add(q)
                    fresh.append(q)
                    if len(elements) > cap:
                        raise TooLarge(f"closure exceeds the configured cap {cap}")
        frontier = fresh
    ordered = sorted(elements)
    index = {p: i for i, p in enumerate(ordered)}
    mult = [
        [index[tuple(p[q[i]] for i in range(degree))] for q in ordered]
        for p in ordered
    ]
    if labels is None:
        labels = [perm_cycle_label(p) for p in ordered]
    G = FiniteGroup(mult, labels=labels, name=name, _trusted=True)
    G.element_keys = tuple(ordered)
    return G


def perm_cycle_label(p) -> str:
    seen, out = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc, j = [i], p[i]
        while j != i:
            seen.add(j)
            cyc.append(j)
            j = p[j]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) if out else "e"


def subgroup(G: FiniteGroup, elements) -> tuple[FiniteGroup, GroupHom]:
    """Carve the subgroup on the given element subset, with its inclusion."""
    subset = sorted(set(elements))
    for x in subset:
        if not isinstance(x, int) or not 0 <= x < G.order:
            raise NotASubgroup(f"{x!r} is not an element index")
    if not subset or subset[0] != 0:
        raise NotASubgroup("subset does not contain the identity")
    inside = set(subset)
    for x in subset:
        if G.inv[x] not in inside:
            raise NotASubgroup(f"inverse of {x} is missing")
        for y in subset:
            if G.mult[x][y] not in inside:
                raise NotASubgroup(f"product {x}*{y} leaves the subset")
    local = {g: i for i, g in enumerate(subset)}
    mult = [[local[G.mult[x][y]] for y in subset] for x in subset]
    labels = [G.element_label(g) for g in subset] if G.labels else None
    H = FiniteGroup(mult, labels=labels, name=f"{G.name}|{len(subset)}", _trusted=True)
    if G.element_keys is not None:
        H.element_keys = tuple(G.element_keys[g] for g in subset)
    return H, GroupHom(H, G, tuple(subset))


def subgroup_generated(G: FiniteGroup, generators) -> tuple[int, ...]:
    """Element indices of the subgroup generated by the given elements."""
    closure = {0}
    frontier = [0]
    gens = list(generators)
    while frontier:
        fresh = []
        for x in frontier:
            for g in gens:
                y = G.mult[x][g]
                if y not in closure:
                    closure.add(y)
                    fresh.append(y)
        frontier = fresh
    return tuple(sorted(closure))


def direct_product(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    """Direct product with element (a, b) stored at index a*|B| + b."""
    nA, nB = A.order, B.order
    if nA * nB > max_group_order():
        raise TooLarge(f"product order {nA * nB} exceeds the configured cap")
    mult = [
        [A.mult[a][c] * nB + B.mult[b][d] for c in range(nA) for d in range(nB)]
        for a in range(nA) for b in range(nB)
    ]
    labels = None
    if A.labels and B.labels:
        labels = [f"({A.labels[a]},{B.labels[b]})" for a in range(nA) for b in range(nB)]
    G = FiniteGroup(mult, labels=labels, name=f"{A.name}x{B.name}", _trusted=True)
    G.element_keys = tuple((a, b) for a in range(nA) for b in range(nB))
    return G


# -- standard groups -------------------------------------------------------


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise NotAGroup("cyclic group needs order >= 1")
    if n > max_group_order():
        raise TooLarge(f"order {n} exceeds the configured cap")
    mult = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(mult, labels=[str(i) for i in range(n)], name=f"C{n}", _trusted=True)


def symmetric(n: int) -> FiniteGroup:
    if n == 1:
        return cyclic(1)
    gens = [(1, 0) + tuple(range(2, n)), tuple(range(1, n)) + (0,)]
    return group_from_permutations(n, gens, name=f"S{n}")


def alternating(n: int) -> FiniteGroup:
    if n < 3:
        return cyclic(1)
    gens = [(1, 2, 0) + tuple(range(3, n))]
    for i in range(1, n - 2):
        c = list(range(n))
        c[i], c[i + 1], c[i + 2] = c[i + 1], c[i + 2], c[i]
        gens.append(tuple(c))
    return group_from_permutations(n, gens, name=f"A{n}")


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n; index a + n*x encodes r^a s^x."""
    if n < 1:
        raise NotAGroup("dihedral group needs n >= 1")
    size = 2 * n

    def mul(i, j):
        a, x = i % n, i // n
        b, y = j % n, j // n
        c = (a + b) % n if x == 0 else (a - b) % n
        return c + n * ((x + y) % 2)

    mult = [[mul(i, j) for j in range(size)] for i in range(size)]
    labels = [f"r{a}" for a in range(n)] + [f"sr{a}" for a in range(n)]
    return FiniteGroup(mult, labels=labels, name=f"D{n}", _trusted=True)


_QUAT_TABLE = {
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}


def quaternion8() -> FiniteGroup:
    """Quaternion group of order 8 on the units {±1, ±i, ±j, ±k}."""
    units = [(1, "1"), (-1, "1"), (1, "i"), (-1, "i"),
             (1, "j"), (-1, "j"), (1, "k"), (-1, "k")]
    index = {u: i for i, u in enumerate(units)}

    def mul(u, v):
        s, a = _QUAT_TABLE[(u[1], v[1])]
        return index[(s * u[0] * v[0], a)]

    mult = [[mul(u, v) for v in units] for u in units]
    labels = [("" if s > 0 else "-") + a for s, a in units]
    return FiniteGroup(mult, labels=labels, name="Q8", _trusted=True)


def klein_four() -> FiniteGroup:
    return direct_product(cyclic(2), cyclic(2))


# -- diagnostics -----------------------------------------------------------


@dataclass(frozen=True)
class PowerConjugacy:
    holds: bool
    witness_N: int | None
    primes: tuple[int, ...]


def _primes_upto(bound: int) -> list[int]:
    sieve = bytearray([1]) * (bound + 1)
    sieve[:2] = b"\x00\x00"
    for p in range(2, int(bound ** 0.5) + 1):
        if sieve[p]:
            sieve[p * p::p] = b"\x00" * len(sieve[p * p::p])
    return [p for p in range(2, bound + 1) if sieve[p]]


def power_conjugacy_check(G: FiniteGroup, s: int, prime_bound: int = 100) -> PowerConjugacy:
    """Least N with s^(p^N) conjugate to s for every prime p <= bound, p coprime to |G|.

    Such an N always exists for a finite group (the exponent of the unit
    group mod the order of s works), so holds=False signals a bug.
    """
    if prime_bound < 2:
        raise ValueError("prime_bound must be at least 2")
    primes = tuple(p for p in _primes_upto(prime_bound) if G.order % p != 0)
    m = G.element_order(s)
    target = G.class_of(s)
    for N in range(1, G.order + 1):
        if all(G.class_of(G.power(s, pow(p, N, m))) == target for p in primes):
            return PowerConjugacy(True, N, primes)
    return PowerConjugacy(False, None, primes)
