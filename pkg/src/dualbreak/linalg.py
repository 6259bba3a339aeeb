"""Dense exact matrices over Q and fraction-free Gaussian elimination.

Rational input is cleared of denominators row by row, then eliminated with
Bareiss' one-step fraction-free scheme (integer entries throughout, exact
division by the previous pivot).  No floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

__all__ = ["ExactMatrix", "SingularMatrixError", "bareiss", "parse_rational", "format_rational"]


class SingularMatrixError(ArithmeticError):
    pass


def parse_rational(text: str | int | Fraction) -> Fraction:
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    return Fraction(text.strip())


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def bareiss(rows: list[list[int]], ncols: int | None = None) -> tuple[int, list[int], int]:
    """In-place fraction-free row reduction of an integer matrix.

    Only the first ``ncols`` columns are used for pivoting (all by default);
    further columns are carried along, which is how augmented systems are
    solved.  Partial pivoting picks the row with the smallest nonzero
    absolute pivot.  Returns ``(rank, pivot_columns, sign)`` where ``sign``
    is the parity of the row swaps.  After the call the last pivot equals
    ``sign * det`` for a square nonsingular block.
    """
    m = len(rows)
    if m == 0:
        return 0, [], 1
    width = len(rows[0])
    ncols = width if ncols is None else ncols
    prev = 1
    r = 0
    sign = 1
    pivots: list[int] = []
    for c in range(ncols):
        if r == m:
            break
        best = None
        for i in range(r, m):
            v = rows[i][c]
            if v and (best is None or abs(v) < abs(rows[best][c])):
                best = i
        if best is None:
            continue
        if best != r:
            rows[r], rows[best] = rows[best], rows[r]
            sign = -sign
        piv_row = rows[r]
        piv = piv_row[c]
        for i in range(r + 1, m):
            row = rows[i]
            f = row[c]
            for j in range(c + 1, width):
                row[j] = (piv * row[j] - f * piv_row[j]) // prev
            row[c] = 0
        # rows above the pivot stay untouched; columns left of c are zero below
        prev = piv
        pivots.append(c)
        r += 1
    return r, pivots, sign


class ExactMatrix:
    """Immutable dense matrix of Fractions.

    ``block`` optionally records the orbit-frame the matrix is indexed by
    (set by :func:`dualbreak.structured.build_A`), and ``source`` the
    invariant function it was built from.
    """

    __slots__ = ("_rows", "nrows", "ncols", "block", "source")

    def __init__(self, rows: Iterable[Iterable], *, block=None, source=None):
        self._rows = tuple(tuple(_as_fraction(x) for x in row) for row in rows)
        self.nrows = len(self._rows)
        self.ncols = len(self._rows[0]) if self._rows else 0
        if any(len(r) != self.ncols for r in self._rows):
            raise ValueError("ragged rows")
        self.block = block
        self.source = source

    # ---- constructors
    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_function(cls, n: int, m: int, f) -> "ExactMatrix":
        return cls([[f(i, j) for j in range(m)] for i in range(n)])

    # ---- access
    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def __getitem__(self, idx):
        i, j = idx
        return self._rows[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def column(self, j: int) -> list[Fraction]:
        return [r[j] for r in self._rows]

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "ExactMatrix":
        return ExactMatrix([row[c0:c1] for row in self._rows[r0:r1]])

    def row_sums(self) -> list[Fraction]:
        return [sum(r, Fraction(0)) for r in self._rows]

    def column_sums(self) -> list[Fraction]:
        return [sum(self.column(j), Fraction(0)) for j in range(self.ncols)]

    # ---- arithmetic
    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def scale(self, c) -> "ExactMatrix":
        c = _as_fraction(c)
        src = self.source.scaled(c) if hasattr(self.source, "scaled") else None
        return ExactMatrix([[c * a for a in r] for r in self._rows], block=self.block, source=src)

    def __rmul__(self, c) -> "ExactMatrix":
        return self.scale(c)

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            # integer arithmetic over one common denominator per factor
            da = lcm(*(x.denominator for r in self._rows for x in r)) if self._rows else 1
            db = lcm(*(x.denominator for r in other._rows for x in r)) if other._rows else 1
            A = [[int(x * da) for x in r] for r in self._rows]
            cols = [[int(x * db) for x in c] for c in zip(*other._rows)]
            d = da * db
            return ExactMatrix(
                [[Fraction(sum(a * b for a, b in zip(r, c)), d) for c in cols] for r in A],
                block=self.block if self.block is other.block else None,
            )
        vec = [_as_fraction(x) for x in other]
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        return [sum((a * b for a, b in zip(r, vec)), Fraction(0)) for r in self._rows]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(zip(*self._rows), block=self.block)

    T = property(transpose)

    def is_symmetric(self) -> bool:
        return self.nrows == self.ncols and all(
            self._rows[i][j] == self._rows[j][i] for i in range(self.nrows) for j in range(i)
        )

    # ---- elimination
    def _integer_rows(self) -> tuple[list[list[int]], list[int]]:
        out, scales = [], []
        for r in self._rows:
            d = lcm(*(x.denominator for x in r)) if r else 1
            out.append([int(x * d) for x in r])
            scales.append(d)
        return out, scales

    def rank(self) -> int:
        rows, _ = self._integer_rows()
        return bareiss(rows)[0]

    def det(self) -> Fraction:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        if n == 0:
            return Fraction(1)
        rows, scales = self._integer_rows()
        r, _, sign = bareiss(rows)
        if r < n:
            return Fraction(0)
        d = 1
        for s in scales:
            d *= s
        return Fraction(sign * rows[n - 1][n - 1], d)

    def solve(self, rhs: "ExactMatrix | Sequence") -> "ExactMatrix | list[Fraction]":
        """Solve ``self @ X = rhs`` exactly for a square nonsingular ``self``."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("solve needs a square matrix")
        vector = not isinstance(rhs, ExactMatrix)
        B = ExactMatrix([[x] for x in rhs]) if vector else rhs
        aug = [list(a) + list(b) for a, b in zip(self._rows, B.rows)]
        rows, _ = ExactMatrix(aug)._integer_rows()
        r, piv, _ = bareiss(rows, ncols=n)
        if r < n:
            raise SingularMatrixError("matrix is singular over Q")
        k = B.ncols
        X = [[Fraction(0)] * k for _ in range(n)]
        for i in range(n - 1, -1, -1):
            row = rows[i]
            d = row[i]
            for c in range(k):
                s = Fraction(row[n + c])
                for j in range(i + 1, n):
                    if row[j]:
                        s -= row[j] * X[j][c]
                X[i][c] = s / d
        if vector:
            return [x[0] for x in X]
        return ExactMatrix(X)

    def inverse(self) -> "ExactMatrix":
        inv = self.solve(ExactMatrix.identity(self.nrows))
        inv.block = self.block
        return inv

    def kernel_vector(self) -> list[Fraction] | None:
        """A nonzero vector ``v`` with ``self @ v = 0``, or None at full column rank."""
        rows, _ = self._integer_rows()
        r, piv, _ = bareiss(rows)
        free = [c for c in range(self.ncols) if c not in piv]
        if not free:
            return None
        f = free[0]
        v = [Fraction(0)] * self.ncols
        v[f] = Fraction(1)
        for i in range(r - 1, -1, -1):
            c = piv[i]
            row = rows[i]
            s = sum((row[j] * v[j] for j in range(c + 1, self.ncols)), Fraction(0))
            v[c] = -s / row[c]
        return v

    # ---- text
    def dump(self) -> str:
        return "\n".join(" ".join(format_rational(x) for x in r) for r in self._rows)

    @classmethod
    def parse(cls, text: str) -> "ExactMatrix":
        return cls([[parse_rational(tok) for tok in line.split()] for line in text.strip().splitlines()])

    def __repr__(self) -> str:
        return f"ExactMatrix({self.nrows}x{self.ncols})"
