"""Exact integer linear algebra: Smith normal form, homology, signatures.

Everything here works on Python ints, so entries never overflow and
torsion is computed exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, prod
from typing import Iterable, Sequence


class ChainError(ValueError):
    """Raised for malformed matrices or complexes."""


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ChainError("negative matrix dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ChainError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}")
        for e in self.entries:
            if not isinstance(e, int) or isinstance(e, bool):
                raise ChainError(f"non-integer entry {e!r}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ChainError("ragged rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ChainError(f"cannot multiply {self.shape} by {other.shape}")
        a, b = self.to_rows(), other.to_rows()
        out = [[sum(a[i][k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)]
               for i in range(self.rows)]
        return IntMatrix(self.rows, other.cols, tuple(x for r in out for x in r))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i))

    def column(self, j: int) -> list[int]:
        return [self[i, j] for i in range(self.rows)]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMatrix":
        return IntMatrix(len(rows), len(cols), tuple(self[i, j] for i in rows for j in cols))


def as_matrix(m) -> IntMatrix:
    if isinstance(m, IntMatrix):
        return m
    return IntMatrix.from_rows(m)


# -- Smith normal form --------------------------------------------------------

@dataclass(frozen=True)
class SmithForm:
    """``left @ M @ right == diagonal`` with ``left``, ``right`` unimodular."""
    diagonal: IntMatrix
    left: IntMatrix
    right: IntMatrix
    factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.factors)


def smith_form(m) -> SmithForm:
    m = as_matrix(m)
    nr, nc = m.shape
    a = m.to_rows()
    u = IntMatrix.identity(nr).to_rows()
    v = IntMatrix.identity(nc).to_rows()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst += q * row src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    t = 0
    while t < min(nr, nc):
        # smallest nonzero |entry| in the trailing block, ties broken by (row, col)
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                x = abs(a[i][j])
                if x and (best is None or x < best[0]):
                    best = (x, i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        dirty = False
        for i in range(t + 1, nr):
            q = a[i][t] // a[t][t]
            if q:
                add_row(i, t, -q)
            dirty = dirty or a[i][t] != 0
        for j in range(t + 1, nc):
            q = a[t][j] // a[t][t]
            if q:
                add_col(j, t, -q)
            dirty = dirty or a[t][j] != 0
        if dirty:
            continue  # a smaller remainder appeared; pick it as the next pivot
        p = a[t][t]
        bad = next((i for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % p), None)
        if bad is not None:
            add_row(t, bad, 1)
            continue
        if p < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    factors = tuple(a[i][i] for i in range(min(nr, nc)) if a[i][i])
    return SmithForm(IntMatrix.from_rows(a, nc), IntMatrix.from_rows(u, nr),
                     IntMatrix.from_rows(v, nc), factors)


def smith_normal_form(m) -> tuple[tuple[int, ...], int]:
    """Invariant factors (each dividing the next) and rank of an integer matrix."""
    sf = smith_form(m)
    return sf.factors, sf.rank


def kernel_basis(m) -> IntMatrix:
    """Columns form a Z-basis of the integer kernel of ``m``."""
    m = as_matrix(m)
    sf = smith_form(m)
    cols = list(range(sf.rank, m.cols))
    return sf.right.submatrix(range(m.cols), cols)


def determinant(m) -> int:
    m = as_matrix(m)
    if m.rows != m.cols:
        raise ChainError("determinant of a non-square matrix")
    return int(_rational_det(m.to_rows()))


def _rational_det(rows) -> Fraction:
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


# -- abelian groups and homology --------------------------------------------------

@dataclass(frozen=True)
class AbelianGroup:
    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ChainError("negative free rank")
        t = tuple(self.torsion)
        if any(d < 2 for d in t):
            raise ChainError(f"torsion factors must be >= 2, got {t}")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ChainError(f"torsion factors {t} do not form a divisibility chain")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_factors(cls, free_rank: int, factors: Iterable[int]) -> "AbelianGroup":
        fs = [abs(f) for f in factors if abs(f) != 1]
        if any(f == 0 for f in fs):
            raise ChainError("zero invariant factor; count it in the free rank")
        return cls(free_rank, tuple(_canonical_factors(fs)))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def torsion_order(self) -> int:
        return prod(self.torsion)

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " ⊕ ".join(parts) if parts else "0"


def _canonical_factors(fs: list[int]) -> list[int]:
    """Rewrite any list of orders as a divisibility chain of the same group."""
    if not fs:
        return []
    n = len(fs)
    diag = IntMatrix(n, n, tuple(fs[i] if i == j else 0 for i in range(n) for j in range(n)))
    return [f for f in smith_normal_form(diag)[0] if f != 1]


@dataclass(frozen=True)
class DisorientedComplex:
    """Bounded complex of free abelian groups on degrees ``lo..hi``.

    ``boundaries[k]`` is the matrix of the map from degree ``k`` to
    ``k - 1``; it has shape ``(rank[k-1], rank[k])`` and is present for
    ``lo < k <= hi``.
    """
    lo: int
    hi: int
    ranks: dict
    boundaries: dict
    labels: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.hi < self.lo:
            raise ChainError("empty degree range")
        for k in range(self.lo, self.hi + 1):
            if self.ranks.get(k, -1) < 0:
                raise ChainError(f"missing rank in degree {k}")
        for k in range(self.lo + 1, self.hi + 1):
            d = self.boundaries.get(k)
            if d is None:
                raise ChainError(f"missing boundary from degree {k}")
            if d.shape != (self.ranks[k - 1], self.ranks[k]):
                raise ChainError(
                    f"boundary {k}->{k - 1} has shape {d.shape}, expected "
                    f"{(self.ranks[k - 1], self.ranks[k])}")
        for k in range(self.lo + 2, self.hi + 1):
            if not (self.boundaries[k - 1] @ self.boundaries[k]).is_zero():
                raise ChainError(f"boundary composite {k}->{k - 2} is not zero")

    def boundary(self, k: int) -> IntMatrix:
        """Matrix of the map out of degree ``k`` (zero map at the bottom)."""
        if k == self.lo:
            return IntMatrix.zeros(0, self.ranks[k])
        return self.boundaries[k]

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)


def homology_at(c: DisorientedComplex, k: int) -> AbelianGroup:
    if not c.lo <= k <= c.hi:
        raise ChainError(f"degree {k} outside [{c.lo}, {c.hi}]")
    out_rank = smith_normal_form(c.boundary(k))[1]
    if k < c.hi:
        factors, in_rank = smith_normal_form(c.boundaries[k + 1])
    else:
        factors, in_rank = (), 0
    return AbelianGroup.from_factors(c.ranks[k] - out_rank - in_rank, factors)


def all_homology(c: DisorientedComplex) -> dict:
    return {k: homology_at(c, k) for k in c.degrees()}


# -- signature -------------------------------------------------------------------

@dataclass(frozen=True)
class FormSignature:
    positive: int
    negative: int
    null: int

    @property
    def signature(self) -> int:
        return self.positive - self.negative

    @property
    def dimension(self) -> int:
        return self.positive + self.negative + self.null


def signature_of_form(s) -> FormSignature:
    """Inertia of a symmetric integer matrix by rational congruence diagonalization."""
    s = as_matrix(s)
    if not s.is_symmetric():
        raise ChainError("signature requires a symmetric matrix")
    a = [[Fraction(x) for x in r] for r in s.to_rows()]
    pos = neg = 0
    n = len(a)
    active = list(range(n))
    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i < j and a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # replace e_i by e_i + e_j: new diagonal 2 a_ij != 0
            for r in range(n):
                a[r][i] += a[r][j]
            for r in range(n):
                a[i][r] += a[j][r]
            piv = i
        p = a[piv][piv]
        active.remove(piv)
        for r in active:
            f = a[r][piv] / p
            if f:
                for col in range(n):
                    a[r][col] -= f * a[piv][col]
                for row in range(n):
                    a[row][r] -= f * a[row][piv]
        if p > 0:
            pos += 1
        else:
            neg += 1
    return FormSignature(pos, neg, n - pos - neg)
