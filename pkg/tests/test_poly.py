import json
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from omegasym import ratmat
from omegasym.errors import (
    DimensionError,
    JacobianNotSymmetric,
    NotHomogeneous,
    ResourceLimitError,
    SchemaError,
    SingularMatrixError,
)
from omegasym.poly import (
    MultiPoly,
    PolyMatrix,
    PolyVectorField,
    compose_linear,
    euler_integrate,
    grad,
    homogeneous_parts,
    jacobian,
    push_linear,
)
from omegasym.ratmat import RationalMatrix, identity

from conftest import quartic_field_components, random_matrix, random_poly, random_symmetric, six_dim_field_components, xs
from oracles import central_difference, from_sympy, to_sympy

X, Y = xs(2)


@st.composite
def polys(draw, nvars=3, max_degree=4):
    terms = draw(st.dictionaries(
        st.lists(st.integers(0, max_degree), min_size=nvars, max_size=nvars).map(tuple).filter(lambda e: sum(e) <= max_degree),
        st.fractions(min_value=-5, max_value=5, max_denominator=3),
        max_size=6,
    ))
    return MultiPoly(nvars, terms)


def test_ring_basics():
    assert (X + Y) + (X - Y) == 2 * X
    assert X * X == MultiPoly(2, {(2, 0): 1})
    assert (X ** 2).scale(0).terms == {}
    assert (X - X).is_zero()
    assert X ** 0 == 1
    with pytest.raises(DimensionError):
        X + MultiPoly.var(0, 3)


def test_canonical_terms_drop_zeros():
    p = MultiPoly(2, [((1, 0), 1), ((1, 0), -1), ((0, 1), 0)])
    assert p.is_zero() and p.degree == -1


def test_grad_examples():
    assert grad((X ** 2 + Y ** 2) / 2) == PolyVectorField([X, Y])
    assert grad(X ** 3) == PolyVectorField([3 * X ** 2, MultiPoly.zero(2)])
    rng = random.Random(5)
    b = random_symmetric(3, rng)
    h = MultiPoly.quadratic_form(b)
    assert grad(h) == PolyVectorField.linear(b)


def test_jacobian_linear_field(rng):
    m = random_matrix(3, rng)
    assert jacobian(PolyVectorField.linear(m)) == PolyMatrix.constant(m, 3)


def test_quartic_jacobian_matches_display():
    field = PolyVectorField(quartic_field_components())
    jac = jacobian(field)
    x1, x2, x3, x4 = xs(4)
    displayed = [
        [2 * x1 * x3 + x2 * x4, x1 * x4, x1 ** 2, x1 * x2],
        [x2 * x3, 2 * x2 * x4 + x1 * x3, x1 * x2, x2 ** 2],
        [x3 ** 2, x3 * x4, 2 * x1 * x3 + x2 * x4, x2 * x3],
        [x3 * x4, x4 ** 2, x1 * x4, 2 * x2 * x4 + x1 * x3],
    ]
    assert jac == PolyMatrix(displayed)
    at = jac.evaluate([1, -1, 1, 2])
    assert at == RationalMatrix([[0, 2, 1, -1], [-1, -3, -1, 1], [1, 2, 0, -1], [2, 4, 2, -3]])
    assert at.trace() == -6


def test_jacobian_agrees_with_sympy():
    syms = sympy.symbols("a b c d e f")
    for comps in (quartic_field_components(), six_dim_field_components()):
        n = len(comps)
        s = syms[:n]
        jac = jacobian(PolyVectorField(comps))
        for i, c in enumerate(comps):
            for j in range(n):
                expected = from_sympy(sympy.diff(to_sympy(c, s), s[j]), s)
                assert jac[i, j].terms == expected


def test_homogeneous_parts():
    parts = homogeneous_parts(PolyVectorField([Y, -X]))
    assert [d for d, _ in parts] == [1]
    parts = dict(homogeneous_parts(PolyVectorField([Y + X ** 2, -X])))
    assert parts[1] == PolyVectorField([Y, -X])
    assert parts[2] == PolyVectorField([X ** 2, MultiPoly.zero(2)])
    six = PolyVectorField(six_dim_field_components())
    assert [d for d, _ in homogeneous_parts(six)] == [1, 2, 3]


@settings(max_examples=50, deadline=None)
@given(st.lists(polys(), min_size=3, max_size=3))
def test_homogeneous_parts_reassemble(comps):
    field = PolyVectorField(comps, 3)
    total = PolyVectorField.zero(3)
    for d, part in homogeneous_parts(field):
        assert all(c.is_homogeneous(d) for c in part)
        total = total + part
    assert total == field


@pytest.mark.parametrize("fvec, k, expected", [
    ([X, Y], 1, (X ** 2 + Y ** 2) / 2),
    ([3 * X ** 2, MultiPoly.zero(2)], 2, X ** 3),
    ([Y, X], 1, X * Y),
])
def test_euler_integrate_examples(fvec, k, expected):
    assert euler_integrate(PolyVectorField(fvec, 2), k) == expected


def test_euler_integrate_errors():
    with pytest.raises(JacobianNotSymmetric):
        euler_integrate(PolyVectorField([Y, -X]), 1)
    with pytest.raises(NotHomogeneous):
        euler_integrate(PolyVectorField([X + X ** 2, Y]), 1)


@settings(max_examples=50, deadline=None)
@given(polys(nvars=3, max_degree=5))
def test_euler_identity_and_integration(p):
    n = p.nvars
    for m in p.degrees():
        h = p.homogeneous_part(m)
        lhs = MultiPoly.zero(n)
        for i in range(n):
            lhs = lhs + MultiPoly.var(i, n) * h.diff(i)
        assert lhs == h * m
        if m >= 2:
            assert euler_integrate(grad(h), m - 1) == h


@settings(max_examples=50, deadline=None)
@given(polys(nvars=3, max_degree=5))
def test_hessian_is_symmetric(p):
    assert jacobian(grad(p)).is_symmetric()


def test_compose_and_push_identity(rng):
    field = PolyVectorField([Y + X ** 2, -X * Y])
    assert compose_linear(field, identity(2)) == field
    assert push_linear(field, identity(2)) == field


def test_push_linear_diagonal_scaling():
    s = ratmat.diag([2, Fraction(1, 2)])
    # S X(S^-1 v) with S^-1 v = (v1/2, 2 v2)
    assert push_linear(PolyVectorField([Y, -X]), s) == PolyVectorField([4 * Y, -X / 4])
    # the field of xy is invariant under this scaling
    assert push_linear(PolyVectorField([X, -Y]), s) == PolyVectorField([X, -Y])


def test_push_linear_against_sympy(rng):
    a, b = sympy.symbols("a b")
    syms = (a, b)
    for _ in range(10):
        comps = [random_poly(2, rng, max_degree=3, nterms=3) for _ in range(2)]
        s = random_matrix(2, rng, bound=2)
        if ratmat.det(s) == 0:
            continue
        sm = sympy.Matrix(2, 2, lambda i, j: sympy.Rational(s[i, j].numerator, s[i, j].denominator))
        w = sm.inv() * sympy.Matrix(syms)
        inner = sympy.Matrix([to_sympy(c, syms).subs({a: w[0], b: w[1]}, simultaneous=True) for c in comps])
        expected = sm * inner
        got = push_linear(PolyVectorField(comps, 2), s)
        for i in range(2):
            assert got[i].terms == from_sympy(sympy.expand(expected[i]), syms)


def test_push_linear_singular():
    with pytest.raises(SingularMatrixError):
        push_linear(PolyVectorField([Y, -X]), RationalMatrix([[1, 1], [1, 1]]))


def test_compose_linear_against_sympy(rng):
    a, b, c = sympy.symbols("a b c")
    syms = (a, b, c)
    for _ in range(10):
        p = random_poly(3, rng, max_degree=3, nterms=4)
        s = random_matrix(3, rng, bound=2)
        if ratmat.det(s) == 0:
            continue
        composed = compose_linear(PolyVectorField([p, p, p]), s)[0]
        subs = {syms[i]: sum(sympy.Rational(s[i, j].numerator, s[i, j].denominator) * syms[j] for j in range(3))
                for i in range(3)}
        expected = from_sympy(to_sympy(p, syms).subs(subs, simultaneous=True), syms)
        assert composed.terms == expected


def test_chain_rule_for_composition(rng):
    """grad(H o S) = S^T (grad H)(S v), checked exactly and by finite differences."""
    for _ in range(10):
        h = random_poly(2, rng, max_degree=4, nterms=4)
        s = random_matrix(2, rng, bound=2)
        if ratmat.det(s) == 0:
            continue
        hs = h.substitute_linear(s)
        lhs = grad(hs)
        rhs = s.T @ compose_linear(grad(h), s)
        assert lhs == rhs
        point = [Fraction(rng.randint(-3, 3), 2), Fraction(rng.randint(-3, 3), 3)]
        for i in range(2):
            fd = central_difference(hs.evaluate, point, i)
            assert abs(float(fd - rhs[i].evaluate(point))) < 1e-9


def test_evaluate_exact_and_float():
    p = X ** 2 * Y - Fraction(1, 3) * Y
    assert p.evaluate([2, 3]) == 11
    assert isinstance(p.evaluate([2, 3]), Fraction)
    assert p.evaluate([2.0, 3.0]) == pytest.approx(11.0)


def test_json_encoding_canonical_order():
    p = MultiPoly(2, {(0, 2): Fraction(1, 2), (2, 0): Fraction(1, 2)})
    doc = p.to_json()
    assert doc == {"nvars": 2, "terms": [{"c": "1/2", "e": [2, 0]}, {"c": "1/2", "e": [0, 2]}]}
    q = MultiPoly(3, {(0, 0, 1): 1, (1, 1, 0): 1, (2, 0, 0): 1, (1, 0, 0): 1, (0, 0, 0): 7})
    assert [t["e"] for t in q.to_json()["terms"]] == [[0, 0, 0], [1, 0, 0], [0, 0, 1], [2, 0, 0], [1, 1, 0]]
    assert MultiPoly.from_json(json.loads(json.dumps(doc))) == p
    field = PolyVectorField([X, Y])
    assert PolyVectorField.from_json(field.to_json()) == field


@pytest.mark.parametrize("doc", [
    {"nvars": 2, "terms": [{"c": "1", "e": [1]}]},
    {"nvars": 2, "terms": [{"c": "x", "e": [1, 0]}]},
    {"nvars": 2, "terms": [{"e": [1, 0]}]},
    {"nvars": -1, "terms": []},
    {"terms": []},
    {"nvars": 2, "terms": [{"c": "1", "e": [-1, 0]}]},
])
def test_json_rejects_malformed(doc):
    with pytest.raises(SchemaError):
        MultiPoly.from_json(doc)


def test_resource_caps(monkeypatch):
    with pytest.raises(ResourceLimitError):
        MultiPoly(33, {})
    with pytest.raises(ResourceLimitError):
        MultiPoly(1, {(65,): 1})
    with pytest.raises(ResourceLimitError):
        MultiPoly.var(0, 1) ** 65
    monkeypatch.setenv("OMEGA_MAX_DEGREE", "4")
    with pytest.raises(ResourceLimitError):
        X ** 5
    with pytest.raises(ResourceLimitError):
        MultiPoly.from_json({"nvars": 1, "terms": [{"c": "1", "e": [5]}]})
    monkeypatch.setenv("OMEGA_MAX_DEGREE", "100")
    assert (MultiPoly.var(0, 1) ** 80).degree == 80


def test_str_rendering():
    assert str(2 * X * Y - Y ** 2 + 1) == "1 + 2*x1*x2 - x2^2"
    assert str(MultiPoly.zero(3)) == "0"
