"""The Lie algebra of ω-Hamiltonian matrices, ``L^T omega + omega L = 0``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.linalg import expm

from . import ratmat
from .errors import DimensionError, InputError, NotHamiltonian, NotSymmetric
from .form import DarbouxTransform, SymplecticForm
from .ratmat import RationalMatrix

DEFAULT_EXP_SAMPLES = (0.1, 0.5, 1.0)
DEFAULT_EXP_TOL = 1e-8


@dataclass(frozen=True)
class HamiltonianMatrix:
    l: RationalMatrix
    form: SymplecticForm


def _check_dims(f: SymplecticForm, l: RationalMatrix) -> None:
    if l.shape != (f.dim, f.dim):
        raise DimensionError(f"matrix of shape {l.shape} for a form of dimension {f.dim}")


def hamiltonian_residual(f: SymplecticForm, l: RationalMatrix) -> RationalMatrix:
    _check_dims(f, l)
    return l.T @ f.omega + f.omega @ l


def is_hamiltonian_matrix(f: SymplecticForm, l: RationalMatrix) -> bool:
    _check_dims(f, l)
    # a nonzero trace already rules membership out
    if l.trace() != 0:
        return False
    return hamiltonian_residual(f, l).is_zero()


def hamiltonian_matrix(f: SymplecticForm, l: RationalMatrix) -> HamiltonianMatrix:
    """Wrap ``l`` after checking membership."""
    if not is_hamiltonian_matrix(f, l):
        raise NotHamiltonian("matrix is not omega-Hamiltonian")
    return HamiltonianMatrix(l, f)


def from_symmetric(f: SymplecticForm, b: RationalMatrix) -> HamiltonianMatrix:
    """``L = (omega^{-1})^T b`` for symmetric ``b``."""
    _check_dims(f, b)
    if not ratmat.is_symmetric(b):
        raise NotSymmetric("expected a symmetric matrix")
    return HamiltonianMatrix(f.field_matrix @ b, f)


def to_symmetric(h: HamiltonianMatrix) -> RationalMatrix:
    """``B = omega^T L``, the inverse of :func:`from_symmetric`."""
    return h.form.omega.T @ h.l


def conjugate_to_standard(h: HamiltonianMatrix, d: DarbouxTransform) -> RationalMatrix:
    """``P^{-1} L P``, a Hamiltonian matrix for the standard form."""
    if d.form.omega != h.form.omega:
        raise InputError("Darboux transform belongs to a different form")
    return d.p_inv @ h.l @ d.p


def commutator(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    return a @ b - b @ a


def exp_check(h: HamiltonianMatrix, t_samples: Sequence[float] = DEFAULT_EXP_SAMPLES,
              tol: float = DEFAULT_EXP_TOL) -> bool:
    """Floating-point check that ``exp(tL)`` preserves ``omega`` at each sample t.

    A diagnostic only; membership is decided exactly by
    :func:`is_hamiltonian_matrix`.
    """
    if tol <= 0:
        raise InputError("tol must be positive")
    return exp_defect(h.l, h.form, t_samples) <= tol


def exp_defect(l: RationalMatrix, f: SymplecticForm, t_samples: Sequence[float] = DEFAULT_EXP_SAMPLES) -> float:
    """``max_t ||exp(tL)^T omega exp(tL) - omega||_inf`` (max row sum)."""
    lf = l.to_float()
    om = f.omega.to_float()
    worst = 0.0
    for t in t_samples:
        e = expm(t * lf)
        r = e.T @ om @ e - om
        worst = max(worst, float(np.abs(r).sum(axis=1).max()))
    return worst
