"""Command-line front end.

Every command prints one JSON document on stdout.  Exit codes: 0 when the
computation ran (whatever the mathematical answer), 2 for usage errors,
3 for malformed or invalid input, 4 when a resource cap is hit.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import flow, group, hamfield, liealg, ratmat
from .errors import InputError, InvalidForm, NonFiniteState, ResourceLimitError, SchemaError
from .form import darboux_basis, is_minus_identity_square, validate_form
from .poly import MultiPoly, PolyVectorField
from .ratmat import RationalMatrix, format_rational

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_RESOURCE = 4


class UsageError(Exception):
    pass


def _load_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc.msg})") from None


def _need(args, name: str):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name.replace('_', '-')} is required for {args.command}")
    return value


def _matrix(args, name: str) -> RationalMatrix:
    return RationalMatrix.from_json(_load_json(_need(args, name)))


def _form(args):
    return validate_form(_matrix(args, "form"))


def _field(args) -> PolyVectorField:
    return PolyVectorField.from_json(_load_json(_need(args, "field")))


def _poly(args, name: str) -> MultiPoly:
    return MultiPoly.from_json(_load_json(_need(args, name)))


# --- commands ------------------------------------------------------------------

def cmd_validate_form(args) -> dict:
    m = _matrix(args, "form")
    try:
        f = validate_form(m)
    except InvalidForm as exc:
        return {"valid": False, "reason": type(exc).__name__, "message": str(exc)}
    return {"valid": True, "dim": f.dim, "det": format_rational(ratmat.det(m)),
            "minus_identity_square": is_minus_identity_square(f)}


def cmd_darboux(args) -> dict:
    d = darboux_basis(_form(args))
    return {"p": d.p.to_json(), "residual": d.residual().to_json()}


def cmd_classify(args) -> dict:
    f = _form(args)
    out = {}
    if args.matrix is not None:
        b = _matrix(args, "matrix")
    else:
        if args.seed is None:
            raise UsageError("classify needs --matrix, or --seed (with optional --lambda) to generate one")
        if not 0 <= args.seed < 2 ** 64:
            raise UsageError("--seed must be an unsigned 64-bit integer")
        lam = ratmat.parse_rational(args.lambda_) if args.lambda_ is not None else 1
        b = group.random_member(f, lam, args.seed)
        out["matrix"] = b.to_json()
    if b.shape != (f.dim, f.dim):
        raise SchemaError(f"matrix shape {b.shape} does not match form dimension {f.dim}")
    cls = group.classify(f, b)
    out.update({
        "kind": cls.kind,
        "lambda": None if cls.lam is None else format_rational(cls.lam),
        "sigma": group.sigma(f, b) if cls.in_omega_n else None,
        "det": format_rational(ratmat.det(b)),
    })
    return out


def cmd_check_matrix(args) -> dict:
    f = _form(args)
    l = _matrix(args, "matrix")
    if l.shape != (f.dim, f.dim):
        raise SchemaError(f"matrix shape {l.shape} does not match form dimension {f.dim}")
    return {"hamiltonian": liealg.is_hamiltonian_matrix(f, l), "trace": format_rational(l.trace())}


def _check_field_dims(f, x) -> None:
    if x.nvars != f.dim or len(x) != f.dim:
        raise SchemaError(f"field must have {f.dim} components in {f.dim} variables")


def cmd_check_field(args) -> dict:
    f = _form(args)
    x = _field(args)
    _check_field_dims(f, x)
    return hamfield.is_hamiltonian_field(f, x, allow_constant=args.allow_constant).to_json()


def cmd_recover(args) -> dict:
    f = _form(args)
    x = _field(args)
    _check_field_dims(f, x)
    check = hamfield.is_hamiltonian_field(f, x, allow_constant=args.allow_constant)
    if not check:
        return check.to_json()
    hf = hamfield.recover_hamiltonian(f, x, allow_constant=args.allow_constant)
    return {"hamiltonian": True, "H": hf.hamiltonian.to_json()}


def cmd_construct(args) -> dict:
    f = _form(args)
    l = _matrix(args, "matrix")
    if l.shape != (f.dim, f.dim):
        raise SchemaError(f"matrix shape {l.shape} does not match form dimension {f.dim}")
    rem = _poly(args, "remainder") if args.remainder is not None else MultiPoly.zero(f.dim)
    hf = hamfield.construct_family(f, liealg.hamiltonian_matrix(f, l), rem)
    return hf.field.to_json()


def cmd_adapted_form(args) -> dict:
    l = _matrix(args, "matrix")
    return hamfield.adapted_form_for_skew(l).omega.to_json()


def _parse_x0(text: str) -> list:
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"--x0 must be comma-separated numbers, got {text!r}") from None


def cmd_simulate(args) -> dict:
    f = _form(args)
    h = _poly(args, "hamiltonian")
    if h.nvars != f.dim:
        raise SchemaError(f"Hamiltonian has {h.nvars} variables, form dimension is {f.dim}")
    x0 = _parse_x0(_need(args, "x0"))
    if len(x0) != f.dim:
        raise UsageError(f"--x0 needs {f.dim} values")
    if args.dt <= 0 or args.t <= 0:
        raise UsageError("--dt and --t must be positive")
    hf = hamfield.field_from_hamiltonian(f, h)
    try:
        trace = flow.integrate(hf, x0, args.dt, args.t)
    except NonFiniteState as exc:
        return {"pass": False, "error": "NonFiniteState", "message": str(exc), "dt": args.dt, "t": args.t}
    if args.csv:
        trace.to_csv(args.csv)
    report = flow.preservation_report(trace, args.tol_energy, args.tol_form)
    out = report.to_json()
    out.update({"dt": args.dt, "t": args.t, "steps": len(trace.times) - 1})
    return out


COMMANDS = {
    "validate-form": cmd_validate_form,
    "darboux": cmd_darboux,
    "classify": cmd_classify,
    "check-matrix": cmd_check_matrix,
    "check-field": cmd_check_field,
    "recover": cmd_recover,
    "construct": cmd_construct,
    "adapted-form": cmd_adapted_form,
    "simulate": cmd_simulate,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="omegasym", description="Exact omega-symplectic linear algebra and Hamiltonian fields.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--form")
    p.add_argument("--matrix")
    p.add_argument("--field")
    p.add_argument("--hamiltonian")
    p.add_argument("--remainder")
    p.add_argument("--lambda", dest="lambda_")
    p.add_argument("--allow-constant", action="store_true")
    p.add_argument("--seed", type=int)
    p.add_argument("--dt", type=float, default=flow.DEFAULT_DT)
    p.add_argument("--t", type=float, default=flow.DEFAULT_T_END)
    p.add_argument("--x0")
    p.add_argument("--tol-energy", type=float, default=flow.DEFAULT_TOL_ENERGY)
    p.add_argument("--tol-form", type=float, default=flow.DEFAULT_TOL_FORM)
    p.add_argument("--csv", help="write the trajectory of simulate to this file")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=stderr)
        result = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=stderr)
        return EXIT_RESOURCE
    except InputError as exc:
        print(f"invalid input ({type(exc).__name__}): {exc}", file=stderr)
        return EXIT_INPUT
    stdout.write(json.dumps(result, sort_keys=True) + "\n")
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
