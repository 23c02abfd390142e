"""Exact multivariate polynomials, polynomial vector fields and matrices.

Terms are stored as ``{exponent tuple: Fraction}`` with no zero
coefficients.  Canonical order (printing and JSON) is graded lexicographic:
ascending total degree, and within a degree x_1 > x_2 > ... lexicographically,
so ``x1^2`` precedes ``x1*x2`` precedes ``x2^2``.
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import ratmat
from .errors import (
    DimensionError,
    JacobianNotSymmetric,
    NotHomogeneous,
    ResourceLimitError,
    SchemaError,
    SingularMatrixError,
)
from .ratmat import RationalMatrix, format_rational, to_rational

MAX_NVARS = 32
DEFAULT_MAX_DEGREE = 64


def max_degree() -> int:
    """Degree cap; ``OMEGA_MAX_DEGREE`` in the environment overrides it."""
    raw = os.environ.get("OMEGA_MAX_DEGREE")
    if raw is None:
        return DEFAULT_MAX_DEGREE
    try:
        return int(raw)
    except ValueError:
        raise ResourceLimitError(f"OMEGA_MAX_DEGREE is not an integer: {raw!r}") from None


def _check_nvars(nvars: int) -> None:
    if nvars < 0:
        raise DimensionError("nvars must be non-negative")
    if nvars > MAX_NVARS:
        raise ResourceLimitError(f"{nvars} variables exceeds the cap of {MAX_NVARS}")


def _check_degree(deg: int) -> None:
    cap = max_degree()
    if deg > cap:
        raise ResourceLimitError(f"total degree {deg} exceeds the cap of {cap}")


def grlex_key(exps: tuple) -> tuple:
    return (sum(exps), tuple(-e for e in exps))


class MultiPoly:
    """Polynomial in ``nvars`` variables with rational coefficients."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping | Iterable = ()):
        _check_nvars(nvars)
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict = {}
        for exps, c in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise DimensionError(f"exponent vector {exps} does not have length {nvars}")
            if any(e < 0 for e in exps):
                raise DimensionError(f"negative exponent in {exps}")
            c = to_rational(c)
            clean[exps] = clean.get(exps, Fraction(0)) + c
        clean = {e: c for e, c in clean.items() if c != 0}
        if clean:
            _check_degree(max(sum(e) for e in clean))
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "MultiPoly":
        # terms must be canonical already: tuple keys, nonzero Fraction values
        p = object.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, c, nvars: int) -> "MultiPoly":
        c = to_rational(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, i: int, nvars: int) -> "MultiPoly":
        if not 0 <= i < nvars:
            raise DimensionError(f"variable index {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def linear_form(cls, coeffs: Sequence) -> "MultiPoly":
        """``sum_i coeffs[i] * x_i``."""
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            c = to_rational(c)
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = c
        return cls._raw(n, terms)

    @classmethod
    def quadratic_form(cls, b: RationalMatrix, scale=Fraction(1, 2)) -> "MultiPoly":
        """``scale * x^T b x``; the default gives the Hamiltonian of a linear field."""
        n = b.nrows
        terms: dict = {}
        for i in range(n):
            for j in range(n):
                c = b[i, j]
                if c:
                    e = [0] * n
                    e[i] += 1
                    e[j] += 1
                    e = tuple(e)
                    terms[e] = terms.get(e, Fraction(0)) + scale * c
        return cls._raw(n, {e: c for e, c in terms.items() if c})

    # --- inspection -----------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def sorted_terms(self) -> list:
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]))

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    @property
    def min_degree(self) -> int:
        return min((sum(e) for e in self._terms), default=-1)

    def degrees(self) -> set:
        return {sum(e) for e in self._terms}

    def is_homogeneous(self, degree: int | None = None) -> bool:
        ds = self.degrees()
        if not ds:
            return True
        return len(ds) == 1 and (degree is None or degree in ds)

    def coefficient(self, exps: Sequence) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    @property
    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def homogeneous_part(self, degree: int) -> "MultiPoly":
        return MultiPoly._raw(self.nvars, {e: c for e, c in self._terms.items() if sum(e) == degree})

    def truncate_below(self, degree: int) -> "MultiPoly":
        """Drop every term of total degree < ``degree``."""
        return MultiPoly._raw(self.nvars, {e: c for e, c in self._terms.items() if sum(e) >= degree})

    # --- arithmetic ---------------------------------------------------------------
    def _coerce(self, other) -> "MultiPoly | None":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise DimensionError(f"nvars mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return MultiPoly.constant(other, self.nvars)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self._terms)
        for e, c in o._terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return MultiPoly._raw(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c) -> "MultiPoly":
        c = to_rational(c)
        if not c:
            return MultiPoly.zero(self.nvars)
        return MultiPoly._raw(self.nvars, {e: c * v for e, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self._terms or not o._terms:
            return MultiPoly.zero(self.nvars)
        _check_degree(self.degree + o.degree)
        terms: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MultiPoly._raw(self.nvars, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        if self._terms:
            _check_degree(self.degree * k)
        result = MultiPoly.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # --- calculus / evaluation --------------------------------------------------------
    def diff(self, i: int) -> "MultiPoly":
        if not 0 <= i < self.nvars:
            raise DimensionError(f"variable index {i} out of range")
        terms = {}
        for e, c in self._terms.items():
            k = e[i]
            if k:
                terms[e[:i] + (k - 1,) + e[i + 1:]] = c * k
        return MultiPoly._raw(self.nvars, terms)

    def __call__(self, point: Sequence):
        return self.evaluate(point)

    def evaluate(self, point: Sequence):
        """Value at ``point``; exact for rational input, float for float input."""
        if len(point) != self.nvars:
            raise DimensionError(f"point has length {len(point)}, expected {self.nvars}")
        total = 0
        for e, c in self._terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * x ** k
            total = total + t
        if not isinstance(total, Fraction) and isinstance(total, int):
            total = Fraction(total)
        return total

    def substitute_linear(self, s: RationalMatrix) -> "MultiPoly":
        """The polynomial ``v -> self(s v)``."""
        if s.nrows != self.nvars:
            raise DimensionError(f"substitution matrix has {s.nrows} rows for {self.nvars} variables")
        forms = [MultiPoly.linear_form(s.row(i)) for i in range(self.nvars)]
        return _substitute(self, forms, s.ncols)

    # --- comparison / output ------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == ({(0,) * self.nvars: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            if not mono:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{format_rational(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [{"c": format_rational(c), "e": list(e)} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, doc) -> "MultiPoly":
        if not isinstance(doc, dict) or "nvars" not in doc or "terms" not in doc:
            raise SchemaError('polynomial document needs "nvars" and "terms"')
        nvars = doc["nvars"]
        if not isinstance(nvars, int) or isinstance(nvars, bool) or nvars < 0:
            raise SchemaError('"nvars" must be a non-negative integer')
        _check_nvars(nvars)
        terms = doc["terms"]
        if not isinstance(terms, list):
            raise SchemaError('"terms" must be a list')
        pairs = []
        for t in terms:
            if not isinstance(t, dict) or "c" not in t or "e" not in t:
                raise SchemaError('each term needs "c" and "e"')
            e = t["e"]
            if not isinstance(e, list) or not all(isinstance(k, int) and not isinstance(k, bool) and k >= 0 for k in e):
                raise SchemaError(f"bad exponent vector {e!r}")
            if len(e) != nvars:
                raise SchemaError(f"exponent vector {e!r} does not have length {nvars}")
            pairs.append((e, to_rational(t["c"])))
        if pairs:
            _check_degree(max(sum(e) for e, _ in pairs))
        return cls(nvars, pairs)


def _substitute(p: MultiPoly, forms: Sequence[MultiPoly], nvars_out: int) -> MultiPoly:
    powers: dict = {}

    def power(i, k):
        key = (i, k)
        if key not in powers:
            powers[key] = forms[i] if k == 1 else power(i, k - 1) * forms[i]
        return powers[key]

    result = MultiPoly.zero(nvars_out)
    for e, c in p.items():
        term = MultiPoly.constant(c, nvars_out)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        result = result + term
    return result


class PolyVectorField:
    """Polynomial map Q^n -> Q^n given by its component polynomials."""

    __slots__ = ("nvars", "components")

    def __init__(self, components: Sequence[MultiPoly], nvars: int | None = None):
        comps = tuple(components)
        if nvars is None:
            if not comps:
                raise DimensionError("cannot infer nvars of an empty field")
            nvars = comps[0].nvars
        if any(c.nvars != nvars for c in comps):
            raise DimensionError("all components must share nvars")
        self.nvars = nvars
        self.components = comps

    @classmethod
    def zero(cls, nvars: int, ncomps: int | None = None) -> "PolyVectorField":
        ncomps = nvars if ncomps is None else ncomps
        return cls([MultiPoly.zero(nvars) for _ in range(ncomps)], nvars)

    @classmethod
    def linear(cls, m: RationalMatrix) -> "PolyVectorField":
        """The field ``x -> m x``."""
        return cls([MultiPoly.linear_form(m.row(i)) for i in range(m.nrows)], m.ncols)

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i) -> MultiPoly:
        return self.components[i]

    @property
    def degree(self) -> int:
        return max((c.degree for c in self.components), default=-1)

    def degrees(self) -> set:
        out = set()
        for c in self.components:
            out |= c.degrees()
        return out

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def constant_part(self) -> tuple:
        return tuple(c.constant_term for c in self.components)

    def homogeneous_part(self, degree: int) -> "PolyVectorField":
        return PolyVectorField([c.homogeneous_part(degree) for c in self.components], self.nvars)

    def _check(self, other: "PolyVectorField") -> None:
        if other.nvars != self.nvars or len(other) != len(self):
            raise DimensionError("vector field shape mismatch")

    def __add__(self, other):
        if not isinstance(other, PolyVectorField):
            return NotImplemented
        self._check(other)
        return PolyVectorField([a + b for a, b in zip(self, other)], self.nvars)

    def __sub__(self, other):
        if not isinstance(other, PolyVectorField):
            return NotImplemented
        self._check(other)
        return PolyVectorField([a - b for a, b in zip(self, other)], self.nvars)

    def __neg__(self):
        return PolyVectorField([-a for a in self], self.nvars)

    def scale(self, c) -> "PolyVectorField":
        return PolyVectorField([a.scale(c) for a in self], self.nvars)

    def __mul__(self, c):
        if isinstance(c, (int, Fraction)) and not isinstance(c, bool):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def __rmatmul__(self, m):
        if not isinstance(m, RationalMatrix):
            return NotImplemented
        return transform(m, self)

    def evaluate(self, point: Sequence) -> tuple:
        return tuple(c.evaluate(point) for c in self.components)

    __call__ = evaluate

    def __eq__(self, other):
        if not isinstance(other, PolyVectorField):
            return NotImplemented
        return self.nvars == other.nvars and self.components == other.components

    def __hash__(self):
        return hash((self.nvars, self.components))

    def __repr__(self):
        return "PolyVectorField(" + ", ".join(str(c) for c in self.components) + ")"

    def to_json(self) -> dict:
        return {"nvars": self.nvars, "components": [c.to_json() for c in self.components]}

    @classmethod
    def from_json(cls, doc) -> "PolyVectorField":
        if not isinstance(doc, dict) or "nvars" not in doc or "components" not in doc:
            raise SchemaError('vector field document needs "nvars" and "components"')
        nvars = doc["nvars"]
        if not isinstance(nvars, int) or isinstance(nvars, bool) or nvars < 0:
            raise SchemaError('"nvars" must be a non-negative integer')
        comps = doc["components"]
        if not isinstance(comps, list):
            raise SchemaError('"components" must be a list')
        polys = []
        for c in comps:
            if isinstance(c, dict) and "nvars" not in c:
                c = dict(c, nvars=nvars)
            p = MultiPoly.from_json(c)
            if p.nvars != nvars:
                raise SchemaError("component nvars disagrees with field nvars")
            polys.append(p)
        return cls(polys, nvars)


class PolyMatrix:
    """Dense matrix of polynomials sharing one variable count."""

    __slots__ = ("nrows", "ncols", "nvars", "_rows")

    def __init__(self, rows: Sequence[Sequence[MultiPoly]], nvars: int | None = None):
        data = tuple(tuple(r) for r in rows)
        if data and any(len(r) != len(data[0]) for r in data):
            raise DimensionError("ragged polynomial matrix")
        if nvars is None:
            if not data or not data[0]:
                raise DimensionError("cannot infer nvars of an empty matrix")
            nvars = data[0][0].nvars
        if any(p.nvars != nvars for r in data for p in r):
            raise DimensionError("entries must share nvars")
        self._rows = data
        self.nrows = len(data)
        self.ncols = len(data[0]) if data else 0
        self.nvars = nvars

    @classmethod
    def constant(cls, m: RationalMatrix, nvars: int) -> "PolyMatrix":
        return cls([[MultiPoly.constant(v, nvars) for v in m.row(i)] for i in range(m.nrows)], nvars)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij) -> MultiPoly:
        i, j = ij
        return self._rows[i][j]

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def rows(self) -> tuple:
        return self._rows

    @property
    def T(self) -> "PolyMatrix":
        return PolyMatrix(list(zip(*self._rows)), self.nvars)

    def __add__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if other.shape != self.shape:
            raise DimensionError("shape mismatch")
        return PolyMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)], self.nvars)

    def __sub__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if other.shape != self.shape:
            raise DimensionError("shape mismatch")
        return PolyMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)], self.nvars)

    def __neg__(self):
        return PolyMatrix([[-a for a in r] for r in self._rows], self.nvars)

    def scale(self, c) -> "PolyMatrix":
        return PolyMatrix([[a.scale(c) for a in r] for r in self._rows], self.nvars)

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.ncols != other.nrows:
                raise DimensionError("inner dimensions differ")
            return PolyMatrix(
                [[_lincomb(r, other.col(j), self.nvars) for j in range(other.ncols)] for r in self._rows],
                self.nvars,
            )
        if isinstance(other, PolyMatrix):
            if self.ncols != other.nrows:
                raise DimensionError("inner dimensions differ")
            cols = list(zip(*other._rows))
            out = []
            for r in self._rows:
                row = []
                for c in cols:
                    acc = MultiPoly.zero(self.nvars)
                    for a, b in zip(r, c):
                        if not a.is_zero() and not b.is_zero():
                            acc = acc + a * b
                    row.append(acc)
                out.append(row)
            return PolyMatrix(out, self.nvars)
        return NotImplemented

    def __rmatmul__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        if other.ncols != self.nrows:
            raise DimensionError("inner dimensions differ")
        cols = list(zip(*self._rows))
        return PolyMatrix(
            [[_lincomb(c, other.row(i), self.nvars) for c in cols] for i in range(other.nrows)],
            self.nvars,
        )

    def evaluate(self, point: Sequence) -> RationalMatrix:
        return RationalMatrix([[p.evaluate(point) for p in r] for r in self._rows])

    def evaluate_float(self, point: Sequence):
        import numpy as np

        return np.array([[float(p.evaluate(point)) for p in r] for r in self._rows])

    def trace(self) -> MultiPoly:
        acc = MultiPoly.zero(self.nvars)
        for i in range(min(self.nrows, self.ncols)):
            acc = acc + self._rows[i][i]
        return acc

    def is_zero(self) -> bool:
        return all(p.is_zero() for r in self._rows for p in r)

    def is_symmetric(self) -> bool:
        if self.nrows != self.ncols:
            return False
        return all(self._rows[i][j] == self._rows[j][i] for i in range(self.nrows) for j in range(i + 1, self.ncols))

    def nonzero_entries(self):
        """Yield ``((i, j), poly)`` for nonzero entries in row-major order."""
        for i, r in enumerate(self._rows):
            for j, p in enumerate(r):
                if not p.is_zero():
                    yield (i, j), p

    def homogeneous_part(self, degree: int) -> "PolyMatrix":
        return PolyMatrix([[p.homogeneous_part(degree) for p in r] for r in self._rows], self.nvars)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.nvars == other.nvars and self._rows == other._rows

    def __hash__(self):
        return hash((self.nvars, self._rows))

    def __repr__(self):
        body = "; ".join(", ".join(str(p) for p in r) for r in self._rows)
        return f"PolyMatrix([{body}])"


def _lincomb(polys: Sequence[MultiPoly], coeffs: Sequence[Fraction], nvars: int) -> MultiPoly:
    terms: dict = {}
    for p, c in zip(polys, coeffs):
        if not c:
            continue
        for e, v in p.items():
            terms[e] = terms.get(e, 0) + c * v
    return MultiPoly._raw(nvars, {e: v for e, v in terms.items() if v})


# --- operations ----------------------------------------------------------------------

def transform(m: RationalMatrix, x: PolyVectorField) -> PolyVectorField:
    """Pointwise matrix action ``v -> m x(v)``."""
    if m.ncols != len(x):
        raise DimensionError(f"{m.nrows}x{m.ncols} matrix cannot act on a field with {len(x)} components")
    return PolyVectorField([_lincomb(x.components, m.row(i), x.nvars) for i in range(m.nrows)], x.nvars)


def grad(h: MultiPoly) -> PolyVectorField:
    return PolyVectorField([h.diff(i) for i in range(h.nvars)], h.nvars)


def jacobian(x: PolyVectorField) -> PolyMatrix:
    return PolyMatrix([[c.diff(j) for j in range(x.nvars)] for c in x.components], x.nvars)


def homogeneous_parts(x: PolyVectorField) -> list[tuple[int, PolyVectorField]]:
    """``[(degree, part), ...]`` in ascending degree, only nonzero parts."""
    return [(d, x.homogeneous_part(d)) for d in sorted(x.degrees())]


def euler_integrate(fvec: PolyVectorField, k: int) -> MultiPoly:
    """Potential of a homogeneous gradient field of degree ``k``.

    For ``fvec`` with symmetric Jacobian, ``H = (x . fvec) / (k + 1)`` is the
    unique homogeneous polynomial of degree k+1 with ``grad H = fvec``.
    """
    if k < 1:
        raise NotHomogeneous("degree must be at least 1")
    if len(fvec) != fvec.nvars:
        raise DimensionError("gradient fields need one component per variable")
    for c in fvec.components:
        if not c.is_homogeneous(k):
            raise NotHomogeneous(f"component {c} is not homogeneous of degree {k}")
    if not jacobian(fvec).is_symmetric():
        raise JacobianNotSymmetric("field is not a gradient: Jacobian is not symmetric")
    n = fvec.nvars
    acc = MultiPoly.zero(n)
    for i, c in enumerate(fvec.components):
        acc = acc + MultiPoly.var(i, n) * c
    return acc / (k + 1)


def compose_linear(x: PolyVectorField, s: RationalMatrix) -> PolyVectorField:
    """The field ``v -> x(s v)``."""
    if not s.is_square or s.nrows != x.nvars:
        raise DimensionError("substitution matrix must be square of size nvars")
    if ratmat.det(s) == 0:
        raise SingularMatrixError("substitution matrix is singular")
    forms = [MultiPoly.linear_form(s.row(i)) for i in range(x.nvars)]
    return PolyVectorField([_substitute(c, forms, x.nvars) for c in x.components], x.nvars)


def push_linear(x: PolyVectorField, s: RationalMatrix) -> PolyVectorField:
    """Pushforward by the linear map ``s``: ``v -> s x(s^{-1} v)``."""
    if not s.is_square or s.nrows != x.nvars or len(x) != x.nvars:
        raise DimensionError("pushforward needs a square matrix matching the field")
    s_inv = ratmat.inverse(s)
    return transform(s, compose_linear(x, s_inv))
