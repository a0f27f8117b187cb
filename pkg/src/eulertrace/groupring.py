"""Exact arithmetic in rational group rings QG.

Ring elements are sparse maps {element index -> Fraction}; matrices are
dense grids of sparse elements. Scalars are exact rationals throughout,
never floats, so every identity below is a bit-exact test. Equality is
structural, which works because normalization drops zero coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import GroupMismatch, NotIdempotent, SizeMismatch
from .groups import ClassFunction, FiniteGroup, GroupHom, direct_product, subgroup


class GroupRingElement:
    __slots__ = ("group", "coeffs")

    def __init__(self, group: FiniteGroup, coeffs=None):
        self.group = group
        clean = {}
        for g, c in (coeffs or {}).items():
            if not 0 <= g < group.order:
                raise GroupMismatch(f"{g!r} is not an element of {group!r}")
            c = Fraction(c)
            if c != 0:
                clean[g] = c
        self.coeffs = clean

    @classmethod
    def zero(cls, group):
        return cls(group)

    @classmethod
    def basis(cls, group, g: int):
        return cls(group, {g: Fraction(1)})

    @classmethod
    def one(cls, group):
        return cls.basis(group, 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def aug(self) -> Fraction:
        """Sum of all coefficients (image under the augmentation map)."""
        return sum(self.coeffs.values(), Fraction(0))

    def _check(self, other):
        if self.group is not other.group:
            raise GroupMismatch("operands live over different groups")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out.get(g, Fraction(0)) + c
        return GroupRingElement(self.group, out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out.get(g, Fraction(0)) - c
        return GroupRingElement(self.group, out)

    def __neg__(self):
        return GroupRingElement(self.group, {g: -c for g, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, GroupRingElement):
            self._check(other)
            mult = self.group.mult
            out = {}
            for g, cg in self.coeffs.items():
                row = mult[g]
                for h, ch in other.coeffs.items():
                    k = row[h]
                    prev = out.get(k)
                    out[k] = cg * ch if prev is None else prev + cg * ch
            return GroupRingElement(self.group, out)
        return self._scaled(other)

    def __rmul__(self, scalar):
        return self._scaled(scalar)

    def _scaled(self, scalar):
        s = Fraction(scalar)
        return GroupRingElement(self.group, {g: s * c for g, c in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.group is other.group and self.coeffs == other.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = [f"{c}*[{self.group.element_label(g)}]"
                 for g, c in sorted(self.coeffs.items())]
        return " + ".join(terms)


def subgroup_average(G: FiniteGroup, elements=None) -> GroupRingElement:
    """The idempotent (1/|H|) * sum of [h] over a subgroup H (default: all of G)."""
    if elements is None:
        members = range(G.order)
    else:
        _, inc = subgroup(G, elements)  # validates subgroup-ness
        members = inc.map
    share = Fraction(1, len(members))
    return GroupRingElement(G, {h: share for h in members})


class GroupRingMatrix:
    """Square matrix over QG."""

    __slots__ = ("group", "size", "rows", "_idem")

    def __init__(self, group: FiniteGroup, rows):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        for r in rows:
            if len(r) != n:
                raise SizeMismatch("matrix is not square")
            for x in r:
                if x.group is not group:
                    raise GroupMismatch("entry over a different group")
        self.group = group
        self.size = n
        self.rows = rows
        self._idem = None

    @classmethod
    def identity(cls, group, n):
        one, zero = GroupRingElement.one(group), GroupRingElement.zero(group)
        return cls(group, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, group, n):
        zero = GroupRingElement.zero(group)
        return cls(group, [[zero] * n for _ in range(n)])

    @classmethod
    def from_element(cls, x: GroupRingElement):
        return cls(x.group, [[x]])

    @classmethod
    def block_diag(cls, M: "GroupRingMatrix", N: "GroupRingMatrix"):
        if M.group is not N.group:
            raise GroupMismatch("blocks over different groups")
        zero = GroupRingElement.zero(M.group)
        n = M.size + N.size
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                if i < M.size and j < M.size:
                    row.append(M.rows[i][j])
                elif i >= M.size and j >= M.size:
                    row.append(N.rows[i - M.size][j - M.size])
                else:
                    row.append(zero)
            rows.append(row)
        return cls(M.group, rows)

    def entry(self, i, j) -> GroupRingElement:
        return self.rows[i][j]

    def _check(self, other):
        if self.group is not other.group:
            raise GroupMismatch("matrices over different groups")
        if self.size != other.size:
            raise SizeMismatch(f"sizes {self.size} and {other.size} differ")

    def __add__(self, other):
        self._check(other)
        return GroupRingMatrix(self.group, [
            [a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._check(other)
        return GroupRingMatrix(self.group, [
            [a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __mul__(self, other):
        self._check(other)
        n = self.size
        cols = list(zip(*other.rows))
        out = []
        for i in range(n):
            row = self.rows[i]
            out.append([_dot(row, cols[j]) for j in range(n)])
        return GroupRingMatrix(self.group, out)

    def __eq__(self, other):
        if not isinstance(other, GroupRingMatrix):
            return NotImplemented
        return (self.group is other.group and self.size == other.size
                and all(a == b for ra, rb in zip(self.rows, other.rows)
                        for a, b in zip(ra, rb)))

    def is_idempotent(self) -> bool:
        if self._idem is None:
            self._idem = (self * self) == self
        return self._idem

    def __repr__(self):
        return f"GroupRingMatrix({self.group.name}, {self.size}x{self.size})"


def _dot(row, col):
    acc = None
    for a, b in zip(row, col):
        term = a * b
        acc = term if acc is None else acc + term
    return acc


def conjugate_elementary(M: GroupRingMatrix, i: int, j: int, r: GroupRingElement) -> GroupRingMatrix:
    """(I + r*E_ij) M (I - r*E_ij) for i != j, via row and column updates.

    Elementary conjugation preserves idempotency and the whole trace class
    function; it is the building block for similarity sweeps.
    """
    if i == j:
        raise ValueError("elementary conjugation needs i != j")
    rows = [list(row) for row in M.rows]
    rows[i] = [x + r * y for x, y in zip(rows[i], rows[j])]
    for k in range(M.size):
        rows[k][j] = rows[k][j] - rows[k][i] * r
    return GroupRingMatrix(M.group, rows)


# -- traces ----------------------------------------------------------------


def _require_idempotent(M: GroupRingMatrix, raw: bool):
    if not raw and not M.is_idempotent():
        raise NotIdempotent(
            "matrix is not idempotent; pass raw=True to evaluate the formula anyway")


def _augmentation_trace(M: GroupRingMatrix) -> Fraction:
    return sum((M.rows[i][i].aug() for i in range(M.size)), Fraction(0))


def hs_trace(M: GroupRingMatrix, raw: bool = False) -> ClassFunction:
    """Hattori-Stallings trace: class function s -> sum of diagonal t-coefficients over t ~ s.

    Only defined as a module invariant for idempotent matrices, so
    idempotency is enforced unless raw=True.
    """
    _require_idempotent(M, raw)
    G = M.group
    diag = {}
    for i in range(M.size):
        for g, c in M.rows[i][i].coeffs.items():
            diag[g] = diag.get(g, Fraction(0)) + c
    values = {}
    for idx, cls in enumerate(G.conjugacy_classes()):
        v = sum((diag.get(t, Fraction(0)) for t in cls.members), Fraction(0))
        if v != 0:
            values[idx] = v
    out = ClassFunction(G, values)
    assert out.total() == _augmentation_trace(M)  # diagonal coefficients, counted per class
    return out


def kaplansky_trace(M: GroupRingMatrix, raw: bool = False) -> Fraction:
    """Identity-class component of the trace (a rational by exactness)."""
    return hs_trace(M, raw=raw).at(0)


def augmentation_dim(M: GroupRingMatrix, raw: bool = False) -> Fraction:
    """Ordinary trace of the augmented matrix; equals the trace class sum."""
    _require_idempotent(M, raw)
    return _augmentation_trace(M)


@dataclass
class Restriction:
    """Matrix of the same projective seen over a finite-index subgroup."""

    matrix: GroupRingMatrix
    subgroup: FiniteGroup
    inclusion: GroupHom
    coset_reps: tuple[int, ...]

    @property
    def index(self) -> int:
        return len(self.coset_reps)


def restrict_matrix(M: GroupRingMatrix, elements) -> Restriction:
    """Rewrite an n x n matrix over QG as an nk x nk matrix over QH, k = [G:H].

    QG is a free left QH-module on right-coset representatives (the least
    element index of each coset H*g). Right multiplication by M is QH-linear;
    its matrix in that basis is returned, rows indexed coset-major. For every
    s in H the trace satisfies the finite-index restriction formula
    hs_H(s) = [C_G(s) : C_H(s)] * hs_G(s).
    """
    G = M.group
    H, inc = subgroup(G, elements)
    img = inc.map
    local = {g: h for h, g in enumerate(img)}
    coset_of = [-1] * G.order
    reps = []
    for g in range(G.order):
        if coset_of[g] < 0:
            idx = len(reps)
            reps.append(g)
            for h in img:
                coset_of[G.mult[h][g]] = idx
    k, n = len(reps), M.size
    size = k * n
    grids = [[dict() for _ in range(size)] for _ in range(size)]
    for j in range(n):
        for l in range(n):
            entry = M.rows[j][l].coeffs
            if not entry:
                continue
            for i, gi in enumerate(reps):
                row = G.mult[gi]
                bucket_row = grids[i * n + j]
                for t, c in entry.items():
                    x = row[t]
                    i2 = coset_of[x]
                    h = local[G.mult[x][G.inv[reps[i2]]]]
                    bucket = bucket_row[i2 * n + l]
                    bucket[h] = bucket.get(h, Fraction(0)) + c
    rows = [[GroupRingElement(H, grid) for grid in grid_row] for grid_row in grids]
    return Restriction(GroupRingMatrix(H, rows), H, inc, tuple(reps))


@dataclass
class TensorProduct:
    """Kronecker product over the direct-product group."""

    matrix: GroupRingMatrix
    group: FiniteGroup
    left_order: int
    right_order: int

    def pair_index(self, a: int, b: int) -> int:
        return a * self.right_order + b

    def split_index(self, g: int) -> tuple[int, int]:
        return divmod(g, self.right_order)


def tensor_matrix(M: GroupRingMatrix, N: GroupRingMatrix) -> TensorProduct:
    """Tensor of projectives: trace at a class [(a, b)] is the product of traces.

    Entries of QA and QB commute inside Q(AxB), so the Kronecker product of
    idempotents is idempotent.
    """
    A, B = M.group, N.group
    P = direct_product(A, B)
    nB = B.order
    size = M.size * N.size
    rows = []
    for i1 in range(M.size):
        for i2 in range(N.size):
            row = []
            for j1 in range(M.size):
                for j2 in range(N.size):
                    a = M.rows[i1][j1].coeffs
                    b = N.rows[i2][j2].coeffs
                    coeffs = {}
                    for g, cg in a.items():
                        base = g * nB
                        for h, ch in b.items():
                            coeffs[base + h] = cg * ch
                    row.append(GroupRingElement(P, coeffs))
            rows.append(row)
    assert len(rows) == size
    return TensorProduct(GroupRingMatrix(P, rows), P, A.order, B.order)


def wall_element_finite(G: FiniteGroup) -> ClassFunction:
    """Complete Euler characteristic of a finite group, via the averaging idempotent.

    QG is semisimple, so the trivial module is projective and is represented
    by the 1 x 1 matrix (e_G). The value at each class is checked against the
    independent brute-force count 1/|C_G(s)|.
    """
    M = GroupRingMatrix.from_element(subgroup_average(G))
    out = hs_trace(M)
    for idx, cls in enumerate(G.conjugacy_classes()):
        assert out.at(idx) == Fraction(1, G.centralizer_order(cls.representative))
    return out
