"""
Exact integer linear algebra.

Integer matrices, Smith normal form with unimodular transforms, rank,
fraction-free determinants, characteristic polynomials, cokernels and the
integer kernel/solve helpers the homology computations are built on.
All values are immutable; every function is pure.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import sympy as sp
from pydantic import BaseModel, Field, field_validator

from .errors import NotDivisibleError, ShapeError

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


class IntMatrix:
    """Arbitrary-precision integer matrix stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[int]):
        entries = tuple(int(e) for e in entries)
        if rows < 0 or cols < 0:
            raise ShapeError(f"negative dimensions {rows}x{cols}")
        if len(entries) != rows * cols:
            raise ShapeError(f"{len(entries)} entries for a {rows}x{cols} matrix")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        """Build from a list of rows; ``cols`` is needed only when there are no rows."""
        data = [list(r) for r in data]
        if cols is None:
            cols = len(data[0]) if data else 0
        for r in data:
            if len(r) != cols:
                raise ShapeError("ragged rows")
        return cls(len(data), cols, (e for r in data for e in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        """Build from a list of column vectors of length ``rows``."""
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)], cols=len(columns))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, (1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def block_diag(cls, blocks: Sequence["IntMatrix"]) -> "IntMatrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = [[0] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r0 + i][c0 + j] = b[i, j]
            r0 += b.rows
            c0 += b.cols
        return cls.from_rows(out, cols=cols)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"index {ij} out of range for {self.rows}x{self.cols}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> List[List[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows([list(self.col(j)) for j in range(self.cols)], cols=self.rows)

    @property
    def T(self) -> "IntMatrix":
        return self.transpose()

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMatrix":
        return IntMatrix.from_rows([[self[i, j] for j in cols] for i in rows], cols=len(cols))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        other_cols = [other.col(j) for j in range(other.cols)]
        return IntMatrix(
            self.rows,
            other.cols,
            (sum(a * b for a, b in zip(self.row(i), c)) for i in range(self.rows) for c in other_cols),
        )

    def apply(self, v: Sequence[int]) -> Vector:
        """Matrix-vector product M·v."""
        if len(v) != self.cols:
            raise ShapeError(f"vector of length {len(v)} for {self.shape} matrix")
        return tuple(sum(a * b for a, b in zip(self.row(i), v)) for i in range(self.rows))

    def _zip(self, other: "IntMatrix", op) -> "IntMatrix":
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")
        return IntMatrix(self.rows, self.cols, (op(a, b) for a, b in zip(self.entries, other.entries)))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, (-a for a in self.entries))

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def diagonal(self) -> Vector:
        return tuple(self[i, i] for i in range(min(self.rows, self.cols)))

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_rows()!r})" if self.rows else f"IntMatrix(0x{self.cols})"


@dataclass(frozen=True)
class SmithForm:
    """Smith normal form U·M·V = D with unimodular U, V."""

    D: IntMatrix
    U: IntMatrix
    V: IntMatrix
    source_rows: int
    source_cols: int

    @property
    def invariant_factors(self) -> Vector:
        return self.D.diagonal()

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d)


class AbelianGroupSpec(BaseModel):
    """Finitely generated abelian group ℤ^r ⊕ ⊕ ℤ/dᵢ with d₁ | d₂ | …"""

    free_rank: int = Field(ge=0)
    torsion_coefficients: List[int] = Field(default_factory=list)

    @field_validator("torsion_coefficients")
    @classmethod
    def _divisibility_chain(cls, value: List[int]) -> List[int]:
        for d in value:
            if d <= 1:
                raise ValueError(f"torsion coefficient {d} must be > 1")
        for d, e in zip(value, value[1:]):
            if e % d:
                raise ValueError(f"torsion coefficients {value} do not form a divisibility chain")
        return value

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion_coefficients)
        return " + ".join(parts) if parts else "0"


def _swap_rows(a: List[List[int]], i: int, j: int) -> None:
    a[i], a[j] = a[j], a[i]


def _swap_cols(a: List[List[int]], i: int, j: int) -> None:
    for row in a:
        row[i], row[j] = row[j], row[i]


def _add_row(a: List[List[int]], target: int, source: int, k: int) -> None:
    """row[target] += k * row[source]"""
    src = a[source]
    a[target] = [x + k * y for x, y in zip(a[target], src)]


def _add_col(a: List[List[int]], target: int, source: int, k: int) -> None:
    """col[target] += k * col[source]"""
    for row in a:
        row[target] += k * row[source]


def snf(m: IntMatrix) -> SmithForm:
    """Smith normal form with transforms.

    Pivots on the smallest nonzero absolute value of the remaining block,
    clears its row and column by floor division, and repairs divisibility by
    folding an offending row into the pivot row.

    Args:
        m: any integer matrix, empty allowed.

    Returns:
        SmithForm with U·m·V = D, nonnegative diagonal d₁ | d₂ | …
    """
    r, c = m.rows, m.cols
    a = m.to_rows()
    u = IntMatrix.identity(r).to_rows()
    v = IntMatrix.identity(c).to_rows()

    for t in range(min(r, c)):
        pivot = None
        for i in range(t, r):
            for j in range(t, c):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        _swap_rows(a, t, pivot[0])
        _swap_rows(u, t, pivot[0])
        _swap_cols(a, t, pivot[1])
        _swap_cols(v, t, pivot[1])

        while True:
            p = a[t][t]
            for i in range(t + 1, r):
                q = a[i][t] // p
                if q:
                    _add_row(a, i, t, -q)
                    _add_row(u, i, t, -q)
            for j in range(t + 1, c):
                q = a[t][j] // p
                if q:
                    _add_col(a, j, t, -q)
                    _add_col(v, j, t, -q)

            # remainders are strictly smaller than |p|; move the smallest into place
            best = None
            for i in range(t + 1, r):
                if a[i][t] and (best is None or abs(a[i][t]) < abs(best[2])):
                    best = ("row", i, a[i][t])
            for j in range(t + 1, c):
                if a[t][j] and (best is None or abs(a[t][j]) < abs(best[2])):
                    best = ("col", j, a[t][j])
            if best is not None:
                if best[0] == "row":
                    _swap_rows(a, t, best[1])
                    _swap_rows(u, t, best[1])
                else:
                    _swap_cols(a, t, best[1])
                    _swap_cols(v, t, best[1])
                continue

            offender = next(
                (i for i in range(t + 1, r) for j in range(t + 1, c) if a[i][j] % p),
                None,
            )
            if offender is None:
                break
            _add_row(a, t, offender, 1)
            _add_row(u, t, offender, 1)

        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    logger.debug("snf of %dx%d matrix: invariant factors %s", r, c, [row[i] for i, row in enumerate(a[:min(r, c)])])
    return SmithForm(
        D=IntMatrix.from_rows(a, cols=c),
        U=IntMatrix.from_rows(u, cols=r),
        V=IntMatrix.from_rows(v, cols=c),
        source_rows=r,
        source_cols=c,
    )


def rank(m: IntMatrix) -> int:
    """Rank over the rationals."""
    return snf(m).rank


def nullity(m: IntMatrix) -> int:
    """Dimension of the right kernel, cols − rank."""
    return m.cols - rank(m)


def det(m: IntMatrix) -> int:
    """Exact determinant via sympy's fraction-free Bareiss elimination.

    Raises:
        ShapeError: m is not square.
    """
    if not m.is_square:
        raise ShapeError(f"determinant of non-square {m.rows}x{m.cols} matrix")
    if m.rows == 0:
        return 1
    return int(sp.Matrix(m.to_rows()).det(method="bareiss"))


def char_poly(m: IntMatrix, var: str = "t"):
    """det(t·I − M) as a univariate LaurentPoly with no negative exponents.

    Raises:
        ShapeError: m is not square.
    """
    from .laurent import LaurentPoly

    if not m.is_square:
        raise ShapeError(f"characteristic polynomial of non-square {m.rows}x{m.cols} matrix")
    if m.rows == 0:
        return LaurentPoly.from_coefficients([1], var)
    lam = sp.Symbol("lambda")
    cp = sp.Matrix(m.to_rows()).charpoly(lam)
    # all_coeffs is highest degree first
    return LaurentPoly.from_coefficients([int(c) for c in reversed(cp.all_coeffs())], var)


def cokernel(m: IntMatrix) -> AbelianGroupSpec:
    """Structure of ℤ^rows / image(m)."""
    diag = snf(m).invariant_factors
    nonzero = [d for d in diag if d]
    return AbelianGroupSpec(
        free_rank=m.rows - len(nonzero),
        torsion_coefficients=[d for d in nonzero if d > 1],
    )


def hermite_rows(vectors: Sequence[Sequence[int]], width: Optional[int] = None) -> List[Vector]:
    """Row Hermite normal form of the lattice spanned by ``vectors``.

    Returns a basis in echelon form: positive pivots, entries above each pivot
    reduced into [0, pivot). Zero rows are dropped.
    """
    a = [list(v) for v in vectors]
    if width is None:
        width = len(a[0]) if a else 0
    top = 0
    pivots = []
    for col in range(width):
        if top >= len(a):
            break
        while True:
            live = [i for i in range(top, len(a)) if a[i][col]]
            if not live:
                break
            i = min(live, key=lambda k: abs(a[k][col]))
            _swap_rows(a, top, i)
            done = True
            for k in range(top + 1, len(a)):
                q = a[k][col] // a[top][col]
                if q:
                    _add_row(a, k, top, -q)
                if a[k][col]:
                    done = False
            if done:
                break
        if top < len(a) and a[top][col]:
            if a[top][col] < 0:
                a[top] = [-x for x in a[top]]
            pivots.append((top, col))
            top += 1
    for row, col in pivots:
        for k in range(row):
            q = a[k][col] // a[row][col]
            if q:
                _add_row(a, k, row, -q)
    return [tuple(a[i]) for i in range(top)]


def kernel_basis(m: IntMatrix) -> List[Vector]:
    """Hermite-normalized basis of the integer right kernel {x : m·x = 0}."""
    form = snf(m)
    v = form.V
    raw = [v.col(j) for j in range(form.rank, m.cols)]
    return hermite_rows(raw, width=m.cols)


def solve_integer(m: IntMatrix, b: Sequence[int]) -> Vector:
    """An integer solution x of m·x = b.

    Free coordinates of the Smith form are set to zero.

    Raises:
        ShapeError: b has the wrong length.
        NotDivisibleError: no integer solution exists.
    """
    if len(b) != m.rows:
        raise ShapeError(f"right-hand side of length {len(b)} for {m.rows} equations")
    form = snf(m)
    ub = form.U.apply(b)
    diag = form.invariant_factors
    y = [0] * m.cols
    for i, value in enumerate(ub):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if value:
                raise NotDivisibleError(f"system has no solution: {m!r} x = {tuple(b)}")
            continue
        if value % d:
            raise NotDivisibleError(f"system has no integer solution: {m!r} x = {tuple(b)}")
        y[i] = value // d
    return form.V.apply(y)
