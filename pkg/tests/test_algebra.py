from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polycontact.algebra import (
    EVEN,
    ODD,
    ContextMismatchError,
    Generator,
    GeneratorContext,
    Kind,
    ParityError,
    SubstitutionError,
    UnknownGeneratorError,
    make_context,
)
from polycontact.scalars import I, format_scalar, qi


@pytest.fixture(scope="module")
def ctx():
    return make_context(
        [("x", EVEN), ("y", EVEN, {"invertible": True}), ("l", EVEN, {"exponential": True}), ("a", ODD), ("b", ODD)],
        [("e", ODD)],
        name="t",
    )


def test_declaration_order_and_fibers(ctx):
    names = [g.name for g in ctx]
    assert names == ["x", "y", "l", "a", "b", "dx", "dy", "dl", "da", "db", "e"]
    assert ctx["dx"].parity is ODD and ctx["da"].parity is EVEN
    assert ctx.fiber_of("a").name == "da"


def test_odd_generators_anticommute(ctx):
    a, b = ctx.gens("a", "b")
    assert b * a == -(a * b)
    assert a * a == 0
    assert (a * b).to_plain() == "a*b"
    assert (b * a).to_plain() == "-a*b"


def test_even_odd_mixing(ctx):
    x, a, da = ctx.gens("x", "a", "da")
    assert x * a == a * x
    assert da * da != 0  # even differentials are polynomial variables
    assert (x + a).parity() is None
    assert (x * a).parity() is ODD
    assert ctx.zero.parity() is EVEN


def test_left_derivative_signs(ctx):
    a, b, x = ctx.gens("a", "b", "x")
    assert (a * b).derivative("a") == b
    assert (a * b).derivative("b") == -a
    assert (x ** 3 * a).derivative("x") == x ** 2 * a * 3


def test_exponential_atoms(ctx):
    el = ctx.exp("l")
    x = ctx.gen("x")
    assert el * el == ctx.exp("l", 2)
    assert (el * x).derivative("l") == el * x
    assert ctx.exp("l", 2).derivative("l") == ctx.exp("l", 2) * 2
    assert ctx.exp("l", 0) == 1
    assert el * ctx.exp("l", -1) == 1


def test_exponential_substitution_policy(ctx):
    l, a, b = ctx.gens("l", "a", "b")
    el = ctx.exp("l")
    assert el.substitute({"l": l * 3}) == ctx.exp("l", 3)
    assert el.substitute({"l": l + a * b}) == el + el * a * b
    assert el.substitute({"l": 0}) == 1
    with pytest.raises(SubstitutionError):
        el.substitute({"l": l + 1})


def test_inverse(ctx):
    y, a, b, x = ctx.gens("y", "a", "b", "x")
    assert y ** -1 * y == 1
    u = y * 2 + a * b
    assert u.inverse() * u == 1
    with pytest.raises(ArithmeticError):
        x.inverse()
    with pytest.raises(ArithmeticError):
        (y + x).inverse()


def test_substitution_is_simultaneous_and_parity_checked(ctx):
    x, y, a, b, e = ctx.gens("x", "y", "a", "b", "e")
    assert (a * b).substitute({"a": b, "b": a}) == b * a
    assert (a * b).substitute({"a": a + e}) == a * b + e * b
    with pytest.raises(ParityError):
        x.substitute({"x": a})
    with pytest.raises(ParityError):
        x.substitute({"x": x + a})


def test_split_absorbs_koszul_sign(ctx):
    a, b, da, x = ctx.gens("a", "b", "da", "x")
    p = b * a * x
    parts = p.split(["a"])
    assert len(parts) == 1
    (mono, rest), = parts.items()
    assert ctx.gen("a") * rest == p


def test_body_and_nilpotency(ctx):
    x, a, b = ctx.gens("x", "a", "b")
    p = x + a * b + x * a
    assert p.body() == x
    assert (a * b).is_nilpotent()
    assert not p.is_nilpotent()


def test_context_errors(ctx):
    with pytest.raises(UnknownGeneratorError):
        ctx.gen("nope")
    other = make_context([("x", EVEN)], name="other")
    with pytest.raises(ContextMismatchError):
        ctx.gen("x") + other.gen("x")
    with pytest.raises(ParityError):
        Generator("o", ODD, Kind.BASE_ODD, invertible=True)
    with pytest.raises(ValueError):
        GeneratorContext([Generator("x", EVEN, Kind.BASE_EVEN)] * 2)


def test_scalars():
    assert format_scalar(qi(Fraction(1, 2))) == "1/2"
    assert format_scalar(I) == "I"
    assert format_scalar(-I) == "-I"
    assert format_scalar(I * 2) == "2*I"
    assert format_scalar(qi((Fraction(1, 2), 3))) == "(1/2+3*I)"
    assert format_scalar(qi((1, -3))) == "(1-3*I)"
    with pytest.raises(TypeError):
        qi(0.5)
    with pytest.raises(TypeError):
        qi(True)


@settings(max_examples=60, deadline=None)
@given(st.integers(-5, 5), st.integers(-5, 5), st.integers(1, 4))
def test_ring_with_constants(ctx, p, q, k):
    x, a = ctx.gens("x", "a")
    f = x * p + a * q
    assert (f ** k) == ((x * p) ** k + (x * p) ** (k - 1) * a * q * k)
