"""Polynomial ω-Hamiltonian vector fields.

The field of a Hamiltonian ``H`` is ``X_H = (omega^{-1})^T grad H``.  A
polynomial field ``X`` with ``X(0) = 0`` is ω-Hamiltonian exactly when its
Jacobian ``M`` satisfies ``M^T omega + omega M = 0`` identically; in that case
``H`` is recovered degree by degree from ``omega^T X``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

from . import ratmat
from .errors import (
    ConstantPartPresent,
    DimensionError,
    InternalError,
    JacobianNotSymmetric,
    JetConditionViolated,
    NotHamiltonian,
    NotLambdaSymplectic,
    NotSkewSymmetric,
    SingularMatrixError,
)
from .form import SymplecticForm, validate_form
from .group import lambda_of
from .liealg import HamiltonianMatrix, hamiltonian_matrix, is_hamiltonian_matrix
from .poly import (
    MultiPoly,
    PolyMatrix,
    PolyVectorField,
    euler_integrate,
    grad,
    homogeneous_parts,
    jacobian,
    push_linear,
    transform,
)
from .ratmat import RationalMatrix

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class HamiltonianField:
    form: SymplecticForm
    field: PolyVectorField
    hamiltonian: MultiPoly


@dataclass(frozen=True)
class FieldCheck:
    """Outcome of :func:`is_hamiltonian_field`.

    ``entry`` and ``residual`` locate the first (row-major) nonzero entry of
    ``M^T omega + omega M``; ``trace_at_zero`` is ``trace(dX_0)``, which on its
    own disproves membership when nonzero.
    """

    hamiltonian: bool
    trace_at_zero: Fraction
    residual_matrix: PolyMatrix = dc_field(repr=False)
    entry: Optional[tuple] = None
    residual: Optional[MultiPoly] = None

    def __bool__(self):
        return self.hamiltonian

    @property
    def linear_part_hamiltonian(self) -> bool:
        """Whether the linearization at 0 passes the matrix test."""
        return self.residual_matrix.homogeneous_part(0).is_zero()

    @property
    def failing_degrees(self) -> list:
        """Field degrees j whose part X^j breaks the identity (residual degree j - 1)."""
        degs = set()
        for _, p in self.residual_matrix.nonzero_entries():
            degs |= {d + 1 for d in p.degrees()}
        return sorted(degs)

    def to_json(self) -> dict:
        out = {"hamiltonian": self.hamiltonian}
        if not self.hamiltonian:
            witness = {"trace_at_zero": ratmat.format_rational(self.trace_at_zero)}
            if self.entry is not None:
                witness["entry"] = list(self.entry)
                witness["residual"] = self.residual.to_json()
            out["witness"] = witness
        return out


def _check_field(f: SymplecticForm, x: PolyVectorField) -> None:
    if x.nvars != f.dim or len(x) != f.dim:
        raise DimensionError(f"field must have {f.dim} components in {f.dim} variables")


def field_from_hamiltonian(f: SymplecticForm, h: MultiPoly) -> HamiltonianField:
    if h.nvars != f.dim:
        raise DimensionError(f"Hamiltonian in {h.nvars} variables for a form of dimension {f.dim}")
    c = h.constant_term
    if c:
        log.info("dropping constant term %s of the Hamiltonian", ratmat.format_rational(c))
        h = h - c
    return HamiltonianField(f, transform(f.field_matrix, grad(h)), h)


def field_residual(f: SymplecticForm, x: PolyVectorField) -> PolyMatrix:
    """``M^T omega + omega M`` with ``M`` the Jacobian of ``x``."""
    _check_field(f, x)
    m = jacobian(x)
    return m.T @ f.omega + f.omega @ m


def is_hamiltonian_field(f: SymplecticForm, x: PolyVectorField, allow_constant: bool = False) -> FieldCheck:
    _check_field(f, x)
    if not allow_constant and any(x.constant_part()):
        raise ConstantPartPresent("field has a constant part; pass allow_constant to accept it")
    m = jacobian(x)
    res = m.T @ f.omega + f.omega @ m
    trace0 = m.evaluate([0] * f.dim).trace()
    first = next(res.nonzero_entries(), None)
    if first is None:
        return FieldCheck(True, trace0, res)
    (i, j), p = first
    return FieldCheck(False, trace0, res, (i, j), p)


def recover_hamiltonian(f: SymplecticForm, x: PolyVectorField, allow_constant: bool = False) -> HamiltonianField:
    """Hamiltonian ``H`` with ``H(0) = 0`` whose field is ``x``.

    Each homogeneous part ``X^j`` is turned into the gradient field
    ``omega^T X^j`` and integrated with the Euler formula.  With
    ``allow_constant`` a constant part ``c`` contributes the linear term
    ``(omega^T c) . x``.
    """
    check = is_hamiltonian_field(f, x, allow_constant=allow_constant)
    if not check:
        raise NotHamiltonian("field is not omega-Hamiltonian", check)
    om_t = f.omega.T
    h = MultiPoly.zero(f.dim)
    for j, part in homogeneous_parts(x):
        if j == 0:
            h = h + MultiPoly.linear_form(om_t.apply(part.constant_part()))
            continue
        try:
            h = h + euler_integrate(transform(om_t, part), j)
        except JacobianNotSymmetric as exc:
            raise InternalError(f"degree {j} part passed recognition but omega^T X^{j} is not a gradient") from exc
    hf = field_from_hamiltonian(f, h)
    if hf.field != x:
        raise InternalError("recovered Hamiltonian does not reproduce the field")
    return hf


@dataclass(frozen=True)
class Pushforward:
    field: PolyVectorField
    lam: Fraction
    hamiltonian: MultiPoly  # H composed with s^{-1}


def pushforward(hf: HamiltonianField, s: RationalMatrix) -> Pushforward:
    """Push ``hf.field`` forward by the linear λ-symplectic map ``s``.

    The result is checked exactly against ``λ X_{H o s^{-1}}``.
    """
    f = hf.form
    lam = lambda_of(f, s)
    if lam is None:
        raise NotLambdaSymplectic("map is not lambda-symplectic for this form")
    pushed = push_linear(hf.field, s)
    h_new = hf.hamiltonian.substitute_linear(ratmat.inverse(s))
    expected = field_from_hamiltonian(f, h_new).field.scale(lam)
    if pushed != expected:
        raise InternalError("pushforward identity failed")
    return Pushforward(pushed, lam, h_new)


def construct_family(f: SymplecticForm, l: HamiltonianMatrix, fpoly: MultiPoly) -> HamiltonianField:
    """Field of ``H = 1/2 x^T (omega^T L) x + F`` whose linearization at 0 is ``L``.

    ``F`` must have no terms of degree below 3.
    """
    if l.form.omega != f.omega:
        raise DimensionError("Hamiltonian matrix belongs to a different form")
    if fpoly.nvars != f.dim:
        raise DimensionError(f"remainder in {fpoly.nvars} variables for dimension {f.dim}")
    if 0 <= fpoly.min_degree <= 2:
        raise JetConditionViolated("remainder has terms of degree <= 2")
    b = f.omega.T @ l.l
    hf = field_from_hamiltonian(f, MultiPoly.quadratic_form(b) + fpoly)
    if jacobian(hf.field).evaluate([0] * f.dim) != l.l:
        raise InternalError("constructed field does not linearize to L")
    return hf


def adapted_form_for_skew(l: RationalMatrix) -> SymplecticForm:
    """The form ``omega = -l^{-1}`` for which a skew invertible ``l`` is Hamiltonian."""
    if not l.is_square or not ratmat.is_skew_symmetric(l):
        raise NotSkewSymmetric("matrix must be square and skew-symmetric")
    if ratmat.det(l) == 0:
        raise SingularMatrixError("matrix must be invertible")
    form = validate_form(-ratmat.inverse(l))
    if not is_hamiltonian_matrix(form, l):
        raise InternalError("skew matrix is not Hamiltonian for -l^{-1}")
    return form


def linear_field_check(f: SymplecticForm, l: RationalMatrix) -> bool:
    """Whether ``x -> l x`` is ω-Hamiltonian; same as the matrix test."""
    return is_hamiltonian_matrix(f, l)


def linear_hamiltonian(f: SymplecticForm, l: RationalMatrix) -> MultiPoly:
    """``1/2 x^T (omega^T l) x`` for a Hamiltonian matrix ``l``."""
    h = hamiltonian_matrix(f, l)
    return MultiPoly.quadratic_form(f.omega.T @ h.l)
