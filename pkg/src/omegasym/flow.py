"""Floating-point flows of polynomial fields with conservation diagnostics.

Exact data is rounded to doubles on entry and nothing computed here flows
back into the exact modules.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionError, InputError, NonFiniteState
from .form import SymplecticForm
from .hamfield import HamiltonianField
from .poly import MultiPoly, PolyVectorField, jacobian

DEFAULT_DT = 1e-3
DEFAULT_T_END = 10.0
DEFAULT_TOL_ENERGY = 1e-8
DEFAULT_TOL_FORM = 1e-6


class CompiledPolys:
    """A batch of polynomials evaluated together in floating point.

    All monomials are collected once; one evaluation is a power-product over
    the exponent table followed by a coefficient matrix product.
    """

    def __init__(self, polys: Sequence[MultiPoly], nvars: int):
        monos = sorted({e for p in polys for e in p.terms})
        index = {e: k for k, e in enumerate(monos)}
        self.nvars = nvars
        self.exps = np.array(monos, dtype=np.int64).reshape(len(monos), nvars)
        self.coef = np.zeros((len(polys), len(monos)))
        for r, p in enumerate(polys):
            for e, c in p.items():
                self.coef[r, index[e]] = float(c)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        if self.exps.shape[0] == 0:
            return np.zeros(self.coef.shape[0])
        monos = np.prod(x ** self.exps, axis=1)
        return self.coef @ monos

    def batch(self, xs: np.ndarray) -> np.ndarray:
        """Evaluate at every row of ``xs``; returns shape (len(xs), npolys)."""
        if self.exps.shape[0] == 0:
            return np.zeros((xs.shape[0], self.coef.shape[0]))
        monos = np.prod(xs[:, None, :] ** self.exps[None, :, :], axis=2)
        return monos @ self.coef.T


@dataclass
class FlowTrace:
    times: np.ndarray
    states: np.ndarray
    energy: np.ndarray
    energy_drift: float
    form_drift: float
    tracked_pairs: list

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["t"] + [f"x{i + 1}" for i in range(self.states.shape[1])] + ["H"])
            for t, x, e in zip(self.times, self.states, self.energy):
                w.writerow([repr(float(t))] + [repr(float(v)) for v in x] + [repr(float(e))])


@dataclass(frozen=True)
class PreservationReport:
    passed: bool
    energy_drift: float
    form_drift: float
    tol_energy: float
    tol_form: float

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        return {
            "energy_drift": self.energy_drift,
            "form_drift": self.form_drift,
            "pass": self.passed,
            "tol_energy": self.tol_energy,
            "tol_form": self.tol_form,
        }


def integrate(hf: HamiltonianField, x0: Sequence[float], dt: float = DEFAULT_DT,
              t_end: float = DEFAULT_T_END) -> FlowTrace:
    return integrate_field(hf.form, hf.field, hf.hamiltonian, x0, dt, t_end)


def integrate_field(form: SymplecticForm, field: PolyVectorField, hamiltonian: MultiPoly,
                    x0: Sequence[float], dt: float = DEFAULT_DT, t_end: float = DEFAULT_T_END) -> FlowTrace:
    """Classical RK4 on the state and the fundamental matrix of the variational equation.

    ``field`` need not be the field of ``hamiltonian``; that is how the
    diagnostics are shown to detect non-Hamiltonian dynamics.  Tangent pairs
    (e_i, e_j), i < j, with ``omega[i, j] != 0`` are tracked and the form drift
    is the largest deviation of ``omega(Phi e_i, Phi e_j)`` from its initial value.
    """
    if dt <= 0 or t_end <= 0:
        raise InputError("dt and t_end must be positive")
    d = form.dim
    if field.nvars != d or len(field) != d or hamiltonian.nvars != d:
        raise DimensionError(f"field and Hamiltonian must live in dimension {d}")
    x = np.asarray(x0, dtype=float)
    if x.shape != (d,):
        raise DimensionError(f"initial state must have length {d}")

    jac = jacobian(field)
    rhs_polys = CompiledPolys(list(field.components) + [p for r in jac.rows() for p in r], d)
    energy_fn = CompiledPolys([hamiltonian], d)
    om = form.omega.to_float()
    pairs = [(i, j) for i in range(d) for j in range(i + 1, d) if om[i, j] != 0]
    ii = np.array([p[0] for p in pairs], dtype=int)
    jj = np.array([p[1] for p in pairs], dtype=int)

    def rhs(x, phi):
        v = rhs_polys(x)
        return v[:d], v[d:].reshape(d, d) @ phi

    nsteps = int(round(t_end / dt))
    times = np.arange(nsteps + 1) * dt
    states = np.empty((nsteps + 1, d))
    states[0] = x
    phi = np.eye(d)
    form_drift = 0.0
    for k in range(nsteps):
        # overflow is caught by the finiteness check below
        with np.errstate(over="ignore", invalid="ignore"):
            k1x, k1p = rhs(x, phi)
            k2x, k2p = rhs(x + 0.5 * dt * k1x, phi + 0.5 * dt * k1p)
            k3x, k3p = rhs(x + 0.5 * dt * k2x, phi + 0.5 * dt * k2p)
            k4x, k4p = rhs(x + dt * k3x, phi + dt * k3p)
            x = x + (dt / 6.0) * (k1x + 2 * k2x + 2 * k3x + k4x)
            phi = phi + (dt / 6.0) * (k1p + 2 * k2p + 2 * k3p + k4p)
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(phi))):
            raise NonFiniteState(f"state left the finite range at t = {times[k + 1]:g}")
        states[k + 1] = x
        if pairs:
            pulled = phi.T @ om @ phi
            form_drift = max(form_drift, float(np.abs(pulled[ii, jj] - om[ii, jj]).max()))

    energy = energy_fn.batch(states)[:, 0]
    energy_drift = float(np.abs(energy - energy[0]).max())
    return FlowTrace(times, states, energy, energy_drift, form_drift, pairs)


def preservation_report(trace: FlowTrace, tol_energy: float = DEFAULT_TOL_ENERGY,
                        tol_form: float = DEFAULT_TOL_FORM) -> PreservationReport:
    passed = trace.energy_drift <= tol_energy and trace.form_drift <= tol_form
    return PreservationReport(passed, trace.energy_drift, trace.form_drift, tol_energy, tol_form)
