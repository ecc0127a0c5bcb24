"""Exact integer linear algebra.

Smith normal form with transforms, finitely generated abelian groups in
invariant-factor form, homomorphisms between them, image membership and
cokernels.  Matrices are lists of lists of Python ``int``; nothing here
touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, prod
from typing import Sequence

from .errors import DimensionMismatch, ElementShapeMismatch

Matrix = list[list[int]]


def _shape(M: Sequence[Sequence[int]], rows: int | None = None, cols: int | None = None) -> tuple[int, int]:
    r = len(M) if rows is None else rows
    c = (len(M[0]) if M else 0) if cols is None else cols
    if len(M) != r or any(len(row) != c for row in M):
        raise DimensionMismatch("ragged integer matrix")
    return r, c


def as_int_matrix(M, rows: int | None = None, cols: int | None = None) -> Matrix:
    out = []
    for row in M:
        new = []
        for a in row:
            if isinstance(a, bool) or int(a) != a:
                raise TypeError(f"matrix entries must be integers, got {a!r}")
            new.append(int(a))
        out.append(new)
    _shape(out, rows, cols)
    return out


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix, inner: int | None = None) -> Matrix:
    k = len(B) if inner is None else inner
    cols = len(B[0]) if B else 0
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(cols)] for i in range(len(A))]


def matvec(A: Matrix, x: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def determinant(M: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [row[:] for row in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def smith_normal_form(M) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``D = U M V`` in Smith normal form.

    ``U`` and ``V`` are unimodular, ``D`` is diagonal with nonnegative
    entries ``d_1 | d_2 | ...``.
    """
    A = as_int_matrix(M)
    m, n = len(A), (len(A[0]) if A else 0)
    U, V = identity(m), identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):  # row_dst += c * row_src
        A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, c):  # col_dst += c * col_src
        for row in A:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    for t in range(min(m, n)):
        while True:
            nonzero = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not nonzero:
                break
            _, pi, pj = min(nonzero)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // p))
                    clean &= A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // p))
                    clean &= A[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            # pull the offending row into the pivot row; the next sweep shrinks the pivot
            add_row(bad[0], t, 1)
        if t < m and t < n and A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return U, A, V


def invariant_factors(M) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form."""
    _, D, _ = smith_normal_form(M)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


@dataclass(frozen=True)
class FgAbelianGroup:
    """``Z^rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k`` with ``t_1 | t_2 | ... | t_k`` and ``t_i >= 2``.

    Elements are integer coordinate vectors of length ``rank + k``; the
    torsion coordinates are reduced modulo their order.
    """

    rank: int = 0
    torsion: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        torsion = tuple(int(t) for t in self.torsion)
        object.__setattr__(self, "torsion", torsion)
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        if any(t < 2 for t in torsion):
            raise ValueError(f"torsion coefficients must be >= 2, got {torsion}")
        if any(b % a for a, b in zip(torsion, torsion[1:])):
            raise ValueError(f"torsion coefficients must form a divisibility chain, got {torsion}")

    @classmethod
    def from_orders(cls, rank: int, orders: Sequence[int]) -> "FgAbelianGroup":
        """Normalize ``Z^rank ⊕ ⊕ Z/orders`` (any orders, zeros meaning Z) to invariant form."""
        free = rank + sum(1 for o in orders if o == 0)
        finite = [abs(o) for o in orders if o not in (0, 1, -1)]
        if not finite:
            return cls(free, ())
        diag = [[finite[i] if i == j else 0 for j in range(len(finite))] for i in range(len(finite))]
        return cls(free, tuple(d for d in invariant_factors(diag) if d > 1))

    @property
    def ngens(self) -> int:
        return self.rank + len(self.torsion)

    @property
    def moduli(self) -> tuple[int, ...]:
        """Per-coordinate modulus, 0 for free coordinates."""
        return (0,) * self.rank + self.torsion

    @property
    def is_trivial(self) -> bool:
        return self.ngens == 0

    @property
    def order(self) -> int | None:
        """Group order, or ``None`` when infinite."""
        return None if self.rank else prod(self.torsion)

    def element(self, coords: Sequence[int]) -> tuple[int, ...]:
        coords = list(coords)
        if len(coords) != self.ngens:
            raise ElementShapeMismatch(f"{self} elements have {self.ngens} coordinates, got {len(coords)}")
        if any(isinstance(c, bool) or int(c) != c for c in coords):
            raise ElementShapeMismatch("element coordinates must be integers")
        return tuple(int(c) % m if m else int(c) for c, m in zip(coords, self.moduli))

    def is_zero(self, coords: Sequence[int]) -> bool:
        return not any(self.element(coords))

    def direct_sum(self, other: "FgAbelianGroup") -> "FgAbelianGroup":
        return FgAbelianGroup.from_orders(self.rank + other.rank, self.torsion + other.torsion)

    def __str__(self) -> str:
        parts = [f"Z/{t}" for t in self.torsion]
        if self.rank == 1:
            parts.append("Z")
        elif self.rank:
            parts.append(f"Z^{self.rank}")
        return " ⊕ ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism given by an integer matrix on the chosen generators.

    Column ``j`` is the image of the ``j``-th domain generator.  Construction
    checks that a generator of order ``k`` is sent to an element whose order
    divides ``k``.
    """

    domain: FgAbelianGroup
    codomain: FgAbelianGroup
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        M = as_int_matrix(self.matrix, rows=self.codomain.ngens, cols=self.domain.ngens) if self.codomain.ngens else []
        if not self.codomain.ngens and any(len(r) for r in self.matrix):
            raise DimensionMismatch("homomorphism into the trivial group must have no rows")
        object.__setattr__(self, "matrix", tuple(tuple(r) for r in M))
        for j, order in enumerate(self.domain.moduli):
            if order == 0:
                continue
            image = [order * row[j] for row in M]
            if not self.codomain.is_zero(image):
                raise ValueError(f"generator {j} has order {order} but its image does not")

    @classmethod
    def from_matrix(cls, domain: FgAbelianGroup, codomain: FgAbelianGroup, matrix) -> "GroupHom":
        return cls(domain, codomain, tuple(tuple(r) for r in matrix))

    def __call__(self, x: Sequence[int]) -> tuple[int, ...]:
        x = self.domain.element(x)
        return self.codomain.element(matvec([list(r) for r in self.matrix], x))

    def _with_relations(self) -> Matrix:
        """``[A | R]``: the matrix augmented with a column ``k e_i`` per torsion coordinate."""
        rows = [list(r) for r in self.matrix]
        for i, mod in enumerate(self.codomain.moduli):
            if mod:
                for r, row in enumerate(rows):
                    row.append(mod if r == i else 0)
        return rows

    def in_image(self, y: Sequence[int]) -> bool:
        y = self.codomain.element(y)
        B = self._with_relations()
        if not B:
            return True
        cols = len(B[0])
        if cols == 0:
            return not any(y)
        U, D, _ = smith_normal_form(B)
        c = matvec(U, y)
        for i, ci in enumerate(c):
            d = D[i][i] if i < cols else 0
            if (d == 0 and ci != 0) or (d and ci % d):
                return False
        return True

    def cokernel(self) -> FgAbelianGroup:
        B = self._with_relations()
        m = self.codomain.ngens
        if m == 0:
            return FgAbelianGroup()
        factors = invariant_factors(B) if B and B[0] else []
        return FgAbelianGroup.from_orders(m - len(factors), factors)

    def to_json(self) -> dict:
        return {"matrix": [list(r) for r in self.matrix]}


def in_image(h: GroupHom, y: Sequence[int]) -> bool:
    """True iff ``y = h(x)`` for some ``x``; decided exactly with Smith normal form."""
    return h.in_image(y)


def cokernel(h: GroupHom) -> FgAbelianGroup:
    return h.cokernel()


def zero_hom(domain: FgAbelianGroup, codomain: FgAbelianGroup) -> GroupHom:
    return GroupHom(domain, codomain, tuple((0,) * domain.ngens for _ in range(codomain.ngens)))


def gcd_all(values: Sequence[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
