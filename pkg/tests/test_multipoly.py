import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from conftest import random_poly
from gausscert.multipoly import (
    ExponentOverflowError,
    Monomial,
    Poly,
    PolySyntaxError,
    TermLimitError,
    UnboundVariableError,
    VarRef,
    degree_in_family,
    family_degrees,
    poly_add,
    poly_const,
    poly_eval,
    poly_mul,
    poly_parse,
    poly_render,
    poly_sub,
    poly_var,
    term_limit,
)
from gausscert.ring import RingCtx

Z = RingCtx.integers()
a0, a1, b0, b1 = (poly_var(f, i) for f, i in [("a", 0), ("a", 1), ("b", 0), ("b", 1)])
A0, A1, B0, B1 = (poly_var(f, i) for f, i in [("A", 0), ("A", 1), ("B", 0), ("B", 1)])


def naive_mul(p: Poly, q: Poly) -> dict:
    """Second implementation: dicts of {VarRef: exp} frozensets, no packing."""
    out = {}
    for m1, c1 in p.terms():
        for m2, c2 in q.terms():
            e = dict(m1.as_dict())
            for v, k in m2.items():
                e[v] = e.get(v, 0) + k
            key = frozenset(e.items())
            out[key] = out.get(key, 0) + c1 * c2
    return {k: c for k, c in out.items() if c}


def as_naive(p: Poly) -> dict:
    return {frozenset(m.as_dict().items()): c for m, c in p.terms()}


def to_sympy(p: Poly):
    expr = sympy.Integer(0)
    for mono, c in p.terms():
        t = sympy.Integer(c)
        for v, e in mono.items():
            t *= sympy.Symbol(str(v)) ** e
        expr += t
    return expr


def test_constructors():
    assert len(poly_const(0)) == 0
    assert poly_const(1).is_one()
    assert poly_render(poly_var(VarRef("a", 0))) == "a0"
    assert poly_var("a", 0) == poly_var(VarRef("a", 0))


def test_arithmetic_examples():
    assert poly_add(a0 + b0, -a0) == b0
    assert poly_mul(a0 * A0, b0 * B0) == poly_parse("a0*b0*A0*B0")
    prod = poly_mul(1 - a0 * A0, 1 + a0 * A0)
    assert prod == poly_parse("1 - a0^2*A0^2")
    assert as_naive(prod) == naive_mul(1 - a0 * A0, 1 + a0 * A0)
    assert poly_sub(a0, a0).is_zero()


def test_degree_examples():
    p = a0 * b1 + a0 * a1
    assert degree_in_family(p, "a") == 2
    assert all(degree_in_family(poly_const(1), f) == 0 for f in "abAB")
    assert all(degree_in_family(poly_const(0), f) == -1 for f in "abAB")
    with pytest.raises(ValueError):
        degree_in_family(p, "x")


def test_eval_examples():
    F5 = RingCtx(5)
    assert poly_eval(1 - a0 * A0, Z, {VarRef("a", 0): Z(1), VarRef("A", 0): Z(1)}) == Z(0)
    env5 = {VarRef(f, 0): F5(1) for f in "abAB"}
    assert poly_eval(a0 * b0 * A0 * B0, F5, env5) == F5(1)
    env = {VarRef("a", 0): Z(-1), VarRef("a", 1): Z(1), VarRef("A", 0): Z(2), VarRef("A", 1): Z(3)}
    assert poly_eval(a0 * A0 + a1 * A1, Z, env) == Z(1)


def test_eval_missing_variable_lists_it():
    with pytest.raises(UnboundVariableError) as err:
        poly_eval(a0 * B1, Z, {VarRef("a", 0): Z(1)})
    assert err.value.missing == [VarRef("B", 1)]
    assert "B1" in str(err.value)


def test_render_examples():
    assert poly_render(poly_const(0)) == "0"
    assert poly_render(1 - a0 * A0) == "1 - a0*A0"
    assert poly_render(A0 * B1 + A1 * B0) == "A0*B1 + A1*B0"
    assert poly_render(b1 - a1 * b0 * A0) == "b1 - a1*b0*A0"
    assert poly_render(-3 * a0**2 + 7) == "7 - 3*a0^2"
    assert poly_render(-a0) == "-a0"
    assert poly_render(poly_const(-1)) == "-1"


def test_parse_examples():
    p = poly_parse("b1 - a1*b0*A0")
    assert len(p) == 2
    assert p == b1 - a1 * b0 * A0
    assert poly_parse("1 - a1*b0*A0*B1 + b1*B1") == 1 - a1 * b0 * A0 * B1 + b1 * B1
    assert poly_parse("  -2*a0 ^ 2 +a0*a0*3 ") == a0**2
    assert poly_parse("0").is_zero()


@pytest.mark.parametrize(
    "text,pos",
    [("", 0), ("a0 +", 4), ("a0 * ", 5), ("2 a0", 2), ("x1", 0), ("a0^", 3), ("a", 0)],
)
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(PolySyntaxError) as err:
        poly_parse(text)
    assert err.value.pos == pos


def test_canonical_order_is_degree_then_lex():
    p = poly_parse("B0 + a0 + a0*a1 + a0^2 + 1 + b0*A0")
    assert poly_render(p) == "1 + a0 + B0 + a0^2 + a0*a1 + b0*A0"


def test_monomial_canonical_iteration():
    m = Monomial({VarRef("B", 0): 1, VarRef("a", 3): 2, VarRef("A", 0): 1, VarRef("a", 1): 1})
    assert [str(v) for v, _ in m.items()] == ["a1", "a3", "A0", "B0"]
    assert str(m) == "a1*a3^2*A0*B0"


def test_sortorder_of_varrefs():
    vs = [VarRef("B", 0), VarRef("a", 2), VarRef("A", 1), VarRef("b", 5), VarRef("a", 0)]
    assert [str(v) for v in sorted(vs)] == ["a0", "a2", "b5", "A1", "B0"]


def test_exponent_cap():
    with pytest.raises(ExponentOverflowError):
        poly_var("a", 0) ** 200 * poly_var("a", 0) ** 100
    assert degree_in_family(poly_var("a", 0) ** 255, "a") == 255


def test_term_guard():
    p = sum((poly_var("a", i) for i in range(10)), poly_const(0))
    with term_limit(50):
        with pytest.raises(TermLimitError):
            p * p * p
    with term_limit(None):
        assert len(p * p) == 55


def test_mul_agrees_with_sympy(rng):
    for _ in range(50):
        p, q = random_poly(rng), random_poly(rng)
        assert sympy.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0


def test_mul_agrees_with_naive(rng):
    for _ in range(100):
        p, q = random_poly(rng), random_poly(rng)
        assert as_naive(p * q) == naive_mul(p, q)


def test_family_degrees_matches_per_family(rng):
    for _ in range(100):
        p = random_poly(rng, max_index=9)
        assert family_degrees(p) == {f: degree_in_family(p, f) for f in "abAB"}


polys = st.builds(random_poly, st.randoms(use_true_random=False))


@settings(max_examples=200)
@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    one, zero = poly_const(1), poly_const(0)
    assert (p + q) + r == p + (q + r)
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r
    assert p * one == p
    assert p + zero == p
    assert p - p == zero


@settings(max_examples=200)
@given(polys, polys, st.sampled_from([None, 2, 6, 30, 2**31 - 1]), st.randoms(use_true_random=False))
def test_eval_is_homomorphism(p, q, modulus, r):
    ctx = RingCtx(modulus)
    env = {VarRef(f, i): ctx(r.randint(-50, 50)) for f in "abAB" for i in range(3)}
    assert poly_eval(p * q, ctx, env) == poly_eval(p, ctx, env) * poly_eval(q, ctx, env)
    assert poly_eval(p + q, ctx, env) == poly_eval(p, ctx, env) + poly_eval(q, ctx, env)


@settings(max_examples=200)
@given(polys, polys)
def test_degree_subadditive(p, q):
    if p.is_zero() or q.is_zero():
        return
    for f in "abAB":
        assert degree_in_family(p * q, f) <= degree_in_family(p, f) + degree_in_family(q, f)


@settings(max_examples=300)
@given(polys)
def test_render_parse_round_trip(p):
    text = poly_render(p)
    assert poly_parse(text) == p
    assert poly_render(poly_parse(text)) == text


def test_poly_is_hashable_and_immutable_value():
    p = 1 - a0 * A0
    q = poly_parse("1 - a0*A0")
    assert hash(p) == hash(q)
    assert {p: 1}[q] == 1
    p2 = p + a0
    assert p == q and p2 != p
