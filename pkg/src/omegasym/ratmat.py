"""Exact rational scalars and dense matrices.

Scalars are :class:`fractions.Fraction` (always normalised, denominator
positive, zero stored as ``0/1``).  :class:`RationalMatrix` is an immutable
dense row-major matrix of fractions.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DimensionError, SchemaError, SingularMatrixError

Rational = Fraction
Scalar = Union[int, Fraction]


def to_rational(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are rejected: they would silently smuggle binary rounding into an
    exact computation.
    """
    if isinstance(value, bool):
        raise SchemaError(f"boolean is not a rational number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise SchemaError(f"expected int, Fraction or rational string, got {type(value).__name__}")


def parse_rational(text: str) -> Fraction:
    """Parse ``"int"`` or ``"int/int"``; anything else is a schema error."""
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise SchemaError(f"not a rational literal: {text!r}") from None
    if q == 0:
        raise SchemaError(f"zero denominator: {text!r}")
    return Fraction(p, q)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class RationalMatrix:
    """Immutable dense matrix over the rationals."""

    __slots__ = ("nrows", "ncols", "_rows", "_hash")

    def __init__(self, rows: Iterable[Iterable]):
        data = tuple(tuple(to_rational(v) for v in row) for row in rows)
        if data and any(len(r) != len(data[0]) for r in data):
            raise DimensionError("ragged matrix rows")
        self._rows = data
        self.nrows = len(data)
        self.ncols = len(data[0]) if data else 0
        self._hash = None

    @classmethod
    def _wrap(cls, rows: tuple, nrows: int, ncols: int) -> "RationalMatrix":
        # rows must already be tuples of Fractions
        m = object.__new__(cls)
        m._rows = rows
        m.nrows = nrows
        m.ncols = ncols
        m._hash = None
        return m

    # --- access -----------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self._rows[i][j]

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._rows)

    def rows(self) -> tuple:
        return self._rows

    def entries(self) -> tuple:
        """Row-major flat tuple of entries."""
        return tuple(v for r in self._rows for v in r)

    # --- algebra ----------------------------------------------------------
    @property
    def T(self) -> "RationalMatrix":
        return RationalMatrix._wrap(tuple(zip(*self._rows)) if self._rows else (), self.ncols, self.nrows)

    def transpose(self) -> "RationalMatrix":
        return self.T

    def __add__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        _same_shape(self, other)
        return RationalMatrix._wrap(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)),
            self.nrows, self.ncols,
        )

    def __sub__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        _same_shape(self, other)
        return RationalMatrix._wrap(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)),
            self.nrows, self.ncols,
        )

    def __neg__(self):
        return RationalMatrix._wrap(tuple(tuple(-a for a in r) for r in self._rows), self.nrows, self.ncols)

    def __mul__(self, scalar):
        if isinstance(scalar, RationalMatrix):
            return NotImplemented
        try:
            c = to_rational(scalar)
        except SchemaError:
            return NotImplemented
        return RationalMatrix._wrap(tuple(tuple(c * a for a in r) for r in self._rows), self.nrows, self.ncols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return mat_mul(self, other)

    def apply(self, vec: Sequence) -> tuple:
        """Matrix-vector product with an exact rational vector."""
        if len(vec) != self.ncols:
            raise DimensionError(f"vector of length {len(vec)} for {self.nrows}x{self.ncols} matrix")
        v = [to_rational(x) for x in vec]
        return tuple(sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self._rows)

    def trace(self) -> Fraction:
        _require_square(self)
        return sum((self._rows[i][i] for i in range(self.nrows)), Fraction(0))

    def is_zero(self) -> bool:
        return all(v == 0 for r in self._rows for v in r)

    # --- comparison / misc --------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self._rows))
        return self._hash

    def __repr__(self):
        body = ", ".join("[" + ", ".join(format_rational(v) for v in r) + "]" for r in self._rows)
        return f"RationalMatrix([{body}])"

    def to_float(self):
        import numpy as np

        return np.array([[float(v) for v in r] for r in self._rows], dtype=float).reshape(self.nrows, self.ncols)

    def to_json(self) -> dict:
        return {"rows": [[format_rational(v) for v in r] for r in self._rows]}

    @classmethod
    def from_json(cls, doc) -> "RationalMatrix":
        if not isinstance(doc, dict) or "rows" not in doc:
            raise SchemaError('matrix document must be an object with a "rows" key')
        rows = doc["rows"]
        if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
            raise SchemaError('"rows" must be a non-empty list of lists')
        try:
            return cls(rows)
        except DimensionError as exc:
            raise SchemaError(str(exc)) from None


def _same_shape(a: RationalMatrix, b: RationalMatrix) -> None:
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")


def _require_square(m: RationalMatrix) -> None:
    if not m.is_square:
        raise DimensionError(f"expected a square matrix, got {m.nrows}x{m.ncols}")


# --- constructors -------------------------------------------------------------

def identity(n: int) -> RationalMatrix:
    one, zero = Fraction(1), Fraction(0)
    return RationalMatrix._wrap(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)), n, n)


def zeros(nrows: int, ncols: int | None = None) -> RationalMatrix:
    ncols = nrows if ncols is None else ncols
    z = Fraction(0)
    return RationalMatrix._wrap(tuple((z,) * ncols for _ in range(nrows)), nrows, ncols)


def diag(values: Sequence) -> RationalMatrix:
    vals = [to_rational(v) for v in values]
    n = len(vals)
    return RationalMatrix([[vals[i] if i == j else 0 for j in range(n)] for i in range(n)])


def block_diag(*blocks: RationalMatrix) -> RationalMatrix:
    n = sum(b.nrows for b in blocks)
    m = sum(b.ncols for b in blocks)
    out = [[Fraction(0)] * m for _ in range(n)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.nrows):
            for j in range(b.ncols):
                out[r0 + i][c0 + j] = b[i, j]
        r0 += b.nrows
        c0 += b.ncols
    return RationalMatrix(out)


def from_blocks(grid: Sequence[Sequence[RationalMatrix]]) -> RationalMatrix:
    """Assemble a matrix from a 2-D grid of conforming blocks."""
    rows = []
    for block_row in grid:
        h = block_row[0].nrows
        if any(b.nrows != h for b in block_row):
            raise DimensionError("blocks in one row must share a height")
        for i in range(h):
            rows.append([v for b in block_row for v in b.row(i)])
    return RationalMatrix(rows)


# --- operations -----------------------------------------------------------------

def mat_mul(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    if a.ncols != b.nrows:
        raise DimensionError(f"cannot multiply {a.nrows}x{a.ncols} by {b.nrows}x{b.ncols}")
    bt = tuple(zip(*b._rows)) if b._rows else ()
    zero = Fraction(0)
    rows = tuple(
        tuple(sum((x * y for x, y in zip(r, c) if x and y), zero) for c in bt)
        for r in a._rows
    )
    return RationalMatrix._wrap(rows, a.nrows, b.ncols)


def det(m: RationalMatrix) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination.

    Rows are first cleared of denominators, so the elimination runs on
    Python integers and every division in the recurrence is exact.
    """
    _require_square(m)
    n = m.nrows
    if n == 0:
        return Fraction(1)
    a = []
    scale = 1
    for r in m.rows():
        lcm = 1
        for v in r:
            lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
        scale *= lcm
        a.append([int(v * lcm) for v in r])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return Fraction(sign * a[n - 1][n - 1], scale)


def inverse(m: RationalMatrix) -> RationalMatrix:
    """Exact inverse by Gauss-Jordan elimination with lowest-index pivots."""
    _require_square(m)
    n = m.nrows
    a = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m.rows())]
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            raise SingularMatrixError("matrix is singular")
        if p != k:
            a[k], a[p] = a[p], a[k]
        inv_piv = 1 / a[k][k]
        a[k] = [v * inv_piv for v in a[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return RationalMatrix._wrap(tuple(tuple(r[n:]) for r in a), n, n)


def is_skew_symmetric(m: RationalMatrix) -> bool:
    _require_square(m)
    n = m.nrows
    return all(m[i, j] == -m[j, i] for i in range(n) for j in range(i, n))


def is_symmetric(m: RationalMatrix) -> bool:
    _require_square(m)
    n = m.nrows
    return all(m[i, j] == m[j, i] for i in range(n) for j in range(i + 1, n))
