"""Exact dense linear algebra over the rationals.

Scalars are ``fractions.Fraction``: arbitrary-precision, always in lowest
terms, positive denominator.  Every rank, kernel and solution below is
exact; no floating point enters the package anywhere.

Rank and codimension statements about rational matrices are insensitive
to field extension, so computing over Q decides the same statements over
any algebraically closed field containing it.  That is why exact rational
arithmetic is enough even though the underlying geometry is usually set
up over an algebraically closed field.

Matrices stay small (well under 50x50 for every supported degree), so a
dense row-major layout is used.  Pivots are chosen by smallest bit size
among the nonzero candidates in a column, which keeps coefficient swell
in check without changing the (unique) reduced row echelon form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def rat_from_str(text: str) -> Fraction:
    """Parse a rational literal "p/q" or "p" with optional sign."""
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in rational literal {text!r}") from None
    except ValueError:
        raise ValueError(f"bad rational literal {text!r}") from None


def rat_to_str(value) -> str:
    """Canonical serialization: "p/q", or "p" when the denominator is 1."""
    return str(Fraction(value))


@dataclass(frozen=True)
class QMatrix:
    """Immutable dense matrix of Fractions, row-major."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"entry count {len(self.entries)} does not match "
                f"{self.rows}x{self.cols}"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], cols: Optional[int] = None) -> "QMatrix":
        rows = [list(r) for r in rows]
        if rows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise ValueError("ragged rows")
        else:
            if cols is None:
                raise ValueError("cols required for a matrix with no rows")
            ncols = cols
        flat = tuple(Fraction(x) for r in rows for x in r)
        return cls(len(rows), ncols, flat)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, tuple(_ONE if i == j else _ZERO for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols, (_ZERO,) * (rows * cols))

    def get(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols : (i + 1) * self.cols])

    def col(self, j: int) -> list:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def row_lists(self) -> list:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "QMatrix":
        return QMatrix(
            self.cols,
            self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    def matmul(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(sum((ri[k] * other.entries[k * other.cols + j] for k in range(self.cols)), _ZERO))
        return QMatrix(self.rows, other.cols, tuple(out))

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        return self.matmul(other)

    def apply(self, vec: Sequence) -> list:
        """Matrix-vector product."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        vec = [Fraction(x) for x in vec]
        return [
            sum((self.entries[i * self.cols + k] * vec[k] for k in range(self.cols)), _ZERO)
            for i in range(self.rows)
        ]

    def stack(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.cols:
            raise ValueError("column count mismatch in stack")
        return QMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)


def stack_rows(mats: Sequence[QMatrix]) -> QMatrix:
    if not mats:
        raise ValueError("nothing to stack")
    out = mats[0]
    for m in mats[1:]:
        out = out.stack(m)
    return out


def _bits(q: Fraction) -> int:
    return q.numerator.bit_length() + q.denominator.bit_length()


def _rref_rows(rows: list) -> tuple:
    """In-place reduced row echelon form on a list of row lists.

    Returns (rows, pivot_columns).  Pivot selection: smallest bit size
    among the nonzero candidates, a cheap guard against coefficient swell.
    The result is the canonical RREF whatever the pivot choice.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        best = None
        best_bits = None
        for i in range(r, nrows):
            e = rows[i][c]
            if e != 0:
                b = _bits(e)
                if best is None or b < best_bits:
                    best, best_bits = i, b
        if best is None:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        pv = rows[r][c]
        if pv != 1:
            inv = 1 / pv
            rows[r] = [x * inv for x in rows[r]]
        pivot_row = rows[r]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f != 0:
                    rows[i] = [a - f * b for a, b in zip(rows[i], pivot_row)]
        pivots.append(c)
        r += 1
    return rows, tuple(pivots)


def rref(m: QMatrix) -> tuple:
    """Reduced row echelon form.  Returns (QMatrix, pivot column tuple)."""
    rows, pivots = _rref_rows(m.row_lists())
    return QMatrix.from_rows(rows, cols=m.cols), pivots


def rank(m: QMatrix) -> int:
    _, pivots = _rref_rows(m.row_lists())
    return len(pivots)


def rank_of_rows(rows: Sequence[Sequence]) -> int:
    """Rank of a list of row vectors (no QMatrix allocation).

    Rows are cleared of denominators and eliminated over the integers
    with cross-multiplication, normalizing each updated row by its gcd
    to limit growth.  Plain int arithmetic here is much faster than
    Fractions on the many small rank queries this package issues.
    """
    work = []
    for r in rows:
        vals = [Fraction(x) for x in r]
        scale = 1
        for v in vals:
            scale = scale * v.denominator // gcd(scale, v.denominator)
        row = [int(v * scale) for v in vals]
        if any(row):
            work.append(row)
    if not work:
        return 0
    ncols = len(work[0])
    rank_found = 0
    for c in range(ncols):
        piv = None
        for i in range(rank_found, len(work)):
            if work[i][c]:
                piv = i
                break
        if piv is None:
            continue
        work[rank_found], work[piv] = work[piv], work[rank_found]
        top = work[rank_found]
        p = top[c]
        for i in range(rank_found + 1, len(work)):
            row = work[i]
            factor = row[c]
            if not factor:
                continue
            g = 0
            for j in range(c + 1, ncols):
                row[j] = p * row[j] - factor * top[j]
                g = gcd(g, row[j])
            row[c] = 0
            if g > 1:
                for j in range(c + 1, ncols):
                    row[j] //= g
        rank_found += 1
        if rank_found == len(work):
            break
    return rank_found


def kernel(m: QMatrix) -> QMatrix:
    """Basis of the right null space, one basis vector per column.

    The returned matrix K has m.cols rows and nullity(m) columns, and
    satisfies m @ K = 0.  Basis vectors are indexed by the free columns
    of the RREF in increasing order, each with a 1 in its free slot.
    """
    rows, pivots = _rref_rows(m.row_lists())
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis_cols = []
    for f in free:
        v = [_ZERO] * m.cols
        v[f] = _ONE
        for k, p in enumerate(pivots):
            v[p] = -rows[k][f]
        basis_cols.append(v)
    entries = tuple(basis_cols[j][i] for i in range(m.cols) for j in range(len(free)))
    return QMatrix(m.cols, len(free), entries)


def solve(m: QMatrix, b: Sequence) -> Optional[list]:
    """One exact solution of m x = b, or None when the system is inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    if len(b) != m.rows:
        raise ValueError("right-hand side length mismatch")
    aug = [row + [Fraction(bv)] for row, bv in zip(m.row_lists(), b)]
    if not aug:
        return [_ZERO] * m.cols
    rows, pivots = _rref_rows(aug)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [_ZERO] * m.cols
    for k, p in enumerate(pivots):
        x[p] = rows[k][m.cols]
    return x


def inverse(m: QMatrix) -> QMatrix:
    """Inverse of a square matrix; ValueError when singular."""
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    aug = [m.row(i) + QMatrix.identity(n).row(i) for i in range(n)]
    rows, pivots = _rref_rows(aug)
    if list(pivots) != list(range(n)):
        raise ValueError("singular matrix has no inverse")
    return QMatrix.from_rows([r[n:] for r in rows], cols=n)


def det(m: QMatrix) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    work = m.row_lists()
    sign = 1
    acc = _ONE
    for c in range(n):
        piv = None
        piv_bits = None
        for i in range(c, n):
            if work[i][c] != 0:
                b = _bits(work[i][c])
                if piv is None or b < piv_bits:
                    piv, piv_bits = i, b
        if piv is None:
            return _ZERO
        if piv != c:
            work[c], work[piv] = work[piv], work[c]
            sign = -sign
        pv = work[c][c]
        acc *= pv
        for i in range(c + 1, n):
            f = work[i][c]
            if f != 0:
                f = f / pv
                work[i] = [a - f * b for a, b in zip(work[i], work[c])]
    return acc if sign == 1 else -acc
