"""λ-symplectic matrices, the ω-symplectic group and the semisymplectic group.

A matrix ``B`` is λ-symplectic for ``omega`` when ``B^T omega B = λ omega``.
The semisymplectic group is the union of the λ = 1 group and the λ = -1
coset; :func:`sigma` is the sign homomorphism onto {+1, -1}.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import ratmat
from .errors import DimensionError, NotInOmegaN, UnreachableLambda
from .form import SymplecticForm, darboux_basis
from .poly import PolyMatrix, PolyVectorField, jacobian
from .ratmat import RationalMatrix, to_rational

SYMPLECTIC = "symplectic"
ANTISYMPLECTIC = "antisymplectic"
LAMBDA_SYMPLECTIC = "lambda_symplectic"
OUTSIDE = "outside"


@dataclass(frozen=True)
class GroupClass:
    kind: str
    lam: Optional[Fraction] = None

    def __post_init__(self):
        expected = {SYMPLECTIC: Fraction(1), ANTISYMPLECTIC: Fraction(-1)}
        if self.kind in expected and self.lam != expected[self.kind]:
            raise ValueError(f"{self.kind} requires lambda = {expected[self.kind]}")
        if self.kind == LAMBDA_SYMPLECTIC and (self.lam is None or self.lam in (0, 1, -1)):
            raise ValueError("lambda_symplectic requires lambda not in {0, 1, -1}")
        if self.kind == OUTSIDE and self.lam is not None:
            raise ValueError("outside carries no lambda")

    @classmethod
    def from_lambda(cls, lam: Optional[Fraction]) -> "GroupClass":
        if lam is None:
            return cls(OUTSIDE)
        if lam == 1:
            return cls(SYMPLECTIC, Fraction(1))
        if lam == -1:
            return cls(ANTISYMPLECTIC, Fraction(-1))
        return cls(LAMBDA_SYMPLECTIC, Fraction(lam))

    @property
    def in_omega_n(self) -> bool:
        return self.kind in (SYMPLECTIC, ANTISYMPLECTIC)


def _check_dims(f: SymplecticForm, b: RationalMatrix) -> None:
    if b.shape != (f.dim, f.dim):
        raise DimensionError(f"matrix of shape {b.shape} for a form of dimension {f.dim}")


def lambda_of(f: SymplecticForm, b: RationalMatrix) -> Optional[Fraction]:
    """The λ != 0 with ``b^T omega b = λ omega``, or None if there is none."""
    _check_dims(f, b)
    pulled = b.T @ f.omega @ b
    om = f.omega
    lam = None
    for i in range(f.dim):
        for j in range(f.dim):
            if om[i, j] != 0:
                lam = pulled[i, j] / om[i, j]
                break
        if lam is not None:
            break
    if not lam:
        return None
    if pulled != om * lam:
        return None
    return lam


def classify(f: SymplecticForm, b: RationalMatrix) -> GroupClass:
    return GroupClass.from_lambda(lambda_of(f, b))


def sigma(f: SymplecticForm, b: RationalMatrix) -> int:
    cls = classify(f, b)
    if not cls.in_omega_n:
        raise NotInOmegaN(f"matrix is {cls.kind}, not in the semisymplectic group")
    return 1 if cls.kind == SYMPLECTIC else -1


# --- generators -----------------------------------------------------------------

def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    if x <= 0:
        return None
    p, q = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if p * p == x.numerator and q * q == x.denominator:
        return Fraction(p, q)
    return None


def _rand_small(rng: random.Random, bound: int = 2) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.choice((1, 1, 2)))


def _random_symmetric(n: int, rng: random.Random) -> RationalMatrix:
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = _rand_small(rng)
    return RationalMatrix(rows)


def _random_invertible(n: int, rng: random.Random) -> RationalMatrix:
    # unit triangular factors times a diagonal keep entries small and det != 0
    lower = [[Fraction(int(i == j)) if j >= i else _rand_small(rng, 1) for j in range(n)] for i in range(n)]
    upper = [[Fraction(int(i == j)) if j <= i else _rand_small(rng, 1) for j in range(n)] for i in range(n)]
    d = ratmat.diag([rng.choice((1, -1, 2, Fraction(1, 2))) for _ in range(n)])
    return RationalMatrix(lower) @ d @ RationalMatrix(upper)


def _standard_generator(n: int, rng: random.Random) -> RationalMatrix:
    z, eye = ratmat.zeros(n), ratmat.identity(n)
    kind = rng.randrange(3)
    if kind == 0:
        return ratmat.from_blocks([[eye, _random_symmetric(n, rng)], [z, eye]])
    if kind == 1:
        return ratmat.from_blocks([[eye, z], [_random_symmetric(n, rng), eye]])
    a = _random_invertible(n, rng)
    return ratmat.from_blocks([[a, z], [z, ratmat.inverse(a.T)]])


def swap_matrix(n: int) -> RationalMatrix:
    """[[0, I], [I, 0]], antisymplectic for the standard form."""
    z, eye = ratmat.zeros(n), ratmat.identity(n)
    return ratmat.from_blocks([[z, eye], [eye, z]])


def random_standard_symplectic(n: int, rng: random.Random, factors: int = 3) -> RationalMatrix:
    m = ratmat.identity(2 * n)
    for _ in range(factors):
        m = m @ _standard_generator(n, rng)
    return m


def random_member(f: SymplecticForm, lam, seed=None, *, rng: random.Random | None = None,
                  factors: int = 3) -> RationalMatrix:
    """Random matrix ``B`` with ``B^T omega B = lam * omega``.

    Products of elementary symplectic generators in Darboux coordinates are
    conjugated back to ``omega``; the swap matrix supplies the antisymplectic
    coset and a scalar ``mu`` gives ``lam = +-mu^2``.  Only those λ are
    reachable; others raise :class:`UnreachableLambda`.
    """
    lam = to_rational(lam)
    mu = _rational_sqrt(abs(lam)) if lam else None
    if mu is None:
        raise UnreachableLambda(f"lambda = {lam} is not of the form +-mu^2 with mu rational and nonzero")
    rng = rng or random.Random(seed)
    n = f.n
    m = random_standard_symplectic(n, rng, factors)
    if lam < 0:
        m = m @ swap_matrix(n)
    d = darboux_basis(f)
    return (d.p @ m @ d.p_inv) * mu


# --- polynomial maps ---------------------------------------------------------------

def pullback_matrix(f: SymplecticForm, xi: PolyVectorField) -> PolyMatrix:
    """``(d xi)^T omega (d xi)`` as a matrix of polynomials."""
    if xi.nvars != f.dim or len(xi) != f.dim:
        raise DimensionError(f"map must have {f.dim} components in {f.dim} variables")
    d = jacobian(xi)
    return d.T @ f.omega @ d


def is_lambda_symplectic_polymap(f: SymplecticForm, xi: PolyVectorField, lam) -> bool:
    lam = to_rational(lam)
    target = PolyMatrix.constant(f.omega * lam, f.dim)
    return pullback_matrix(f, xi) == target
