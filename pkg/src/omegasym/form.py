"""Symplectic forms on Q^{2n} and Darboux (symplectic) bases."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import ratmat
from .errors import Degenerate, DimensionError, InputError, NotSkewSymmetric, OddDimension
from .ratmat import RationalMatrix, to_rational


@dataclass(frozen=True)
class SymplecticForm:
    """A validated matrix ``omega`` of an alternating non-degenerate form.

    Build instances through :func:`validate_form` or :func:`standard_form`;
    the constructor itself does not re-check the invariants.
    """

    omega: RationalMatrix

    @property
    def dim(self) -> int:
        return self.omega.nrows

    @property
    def n(self) -> int:
        return self.omega.nrows // 2

    @property
    def omega_inv(self) -> RationalMatrix:
        inv = self.__dict__.get("_omega_inv")
        if inv is None:
            inv = ratmat.inverse(self.omega)
            object.__setattr__(self, "_omega_inv", inv)
        return inv

    @property
    def field_matrix(self) -> RationalMatrix:
        """``(omega^{-1})^T``, the matrix turning gradients into fields."""
        return self.omega_inv.T

    def __call__(self, u, v) -> Fraction:
        return evaluate(self, u, v)


@dataclass(frozen=True)
class DarbouxTransform:
    """Change of basis ``p`` with ``p^T omega p = J``."""

    p: RationalMatrix
    form: SymplecticForm

    @property
    def p_inv(self) -> RationalMatrix:
        inv = self.__dict__.get("_p_inv")
        if inv is None:
            inv = ratmat.inverse(self.p)
            object.__setattr__(self, "_p_inv", inv)
        return inv

    def residual(self) -> RationalMatrix:
        """``p^T omega p - J``; all zero for a correct transform."""
        return self.p.T @ self.form.omega @ self.p - standard_matrix(self.form.n)


def validate_form(m: RationalMatrix) -> SymplecticForm:
    if not m.is_square:
        raise DimensionError(f"form matrix must be square, got {m.nrows}x{m.ncols}")
    if m.nrows == 0 or m.nrows % 2:
        raise OddDimension(f"form dimension must be even and positive, got {m.nrows}")
    if not ratmat.is_skew_symmetric(m):
        raise NotSkewSymmetric("form matrix is not skew-symmetric")
    if ratmat.det(m) == 0:
        raise Degenerate("form matrix is singular (det = 0)")
    return SymplecticForm(m)


def standard_matrix(n: int) -> RationalMatrix:
    """The block matrix J = [[0, I_n], [-I_n, 0]]."""
    if n < 1:
        raise InputError("n must be at least 1")
    return ratmat.from_blocks([
        [ratmat.zeros(n), ratmat.identity(n)],
        [-ratmat.identity(n), ratmat.zeros(n)],
    ])


def standard_form(n: int) -> SymplecticForm:
    return SymplecticForm(standard_matrix(n))


def evaluate(f: SymplecticForm, u: Sequence, v: Sequence) -> Fraction:
    """``u^T omega v``."""
    if len(u) != f.dim or len(v) != f.dim:
        raise DimensionError(f"vectors must have length {f.dim}")
    u = [to_rational(x) for x in u]
    wv = f.omega.apply(v)
    return sum((a * b for a, b in zip(u, wv)), Fraction(0))


def is_minus_identity_square(f: SymplecticForm) -> bool:
    return f.omega @ f.omega == -ratmat.identity(f.dim)


def darboux_basis(f: SymplecticForm) -> DarbouxTransform:
    """Symplectic basis by skew Gram-Schmidt with lowest-index tie-breaking.

    Starting from the standard basis, repeatedly take the first remaining
    vector u, pair it with the first remaining w having omega(u, w) != 0,
    rescale v = w / omega(u, w), and project the pair out of every other
    remaining vector.  Columns are ordered (u_1..u_n, v_1..v_n).
    """
    om = f.omega
    dim = f.dim

    def pair(a, b):
        ob = om.apply(b)
        return sum((x * y for x, y in zip(a, ob) if x and y), Fraction(0))

    work = [[Fraction(int(i == j)) for i in range(dim)] for j in range(dim)]
    us, vs = [], []
    while work:
        u = work.pop(0)
        k = next((k for k, w in enumerate(work) if pair(u, w) != 0), None)
        if k is None:
            # unreachable for a validated form
            raise Degenerate("form is degenerate on the remaining complement")
        w = work.pop(k)
        c = pair(u, w)
        v = [x / c for x in w]
        rest = []
        for z in work:
            zv, zu = pair(z, v), pair(z, u)
            rest.append([zi - zv * ui + zu * vi for zi, ui, vi in zip(z, u, v)])
        work = rest
        us.append(u)
        vs.append(v)
    cols = us + vs
    p = RationalMatrix([[cols[j][i] for j in range(dim)] for i in range(dim)])
    return DarbouxTransform(p, f)


def random_form(dim: int, seed=None, max_entry: int = 3, rng: random.Random | None = None) -> SymplecticForm:
    """Random valid form with small integer (and occasional half-integer) entries.

    Used to generate test instances; ``seed`` makes the draw reproducible.
    """
    if dim < 2 or dim % 2:
        raise OddDimension(f"dimension must be even and positive, got {dim}")
    rng = rng or random.Random(seed)
    while True:
        rows = [[Fraction(0)] * dim for _ in range(dim)]
        for i in range(dim):
            for j in range(i + 1, dim):
                x = Fraction(rng.randint(-max_entry, max_entry), rng.choice((1, 1, 1, 2)))
                rows[i][j] = x
                rows[j][i] = -x
        m = RationalMatrix(rows)
        if ratmat.det(m) != 0:
            return SymplecticForm(m)
