"""Evaluation of parsed expressions over the superspace context."""

from __future__ import annotations

from functools import lru_cache
from typing import Union

from ..algebra import EVEN, AlgebraError, SuperPoly
from ..calculus import (
    VectorField,
    VectorValuedForm,
    _FrameValued,
    exterior_derivative,
    graded_commutator,
    interior_product,
    lie_derivative,
)
from ..polysymplectic import cone_form, symplectic_form
from ..scalars import I
from ..susy import build_generators, context, dalpha, polycontact_form, universal_chart
from .grammar import (
    Apply,
    BinOp,
    Bracket,
    Diff,
    Exp,
    ExpressionError,
    Frame,
    Imag,
    Interior,
    Lie,
    Name,
    Neg,
    Node,
    Num,
    Pow,
    parse_expression,
)

Value = Union[SuperPoly, VectorField, VectorValuedForm]


class EvaluationError(ExpressionError):
    pass


def eval_chart():
    return universal_chart()


@lru_cache(maxsize=None)
def named_objects() -> dict[str, Value]:
    chart = eval_chart()
    out: dict[str, Value] = {
        "alpha": polycontact_form().with_chart(chart),
        "dalpha": dalpha().with_chart(chart),
        "omega": symplectic_form().with_chart(chart),
        "varpi": cone_form().with_chart(chart),
    }
    for name, f in build_generators().named().items():
        out[name] = f.with_chart(chart)
    return out


def _fail(node: Node, message: str):
    raise EvaluationError(message, *getattr(node, "pos", (0, 0)))


def evaluate(node: Node) -> Value:
    try:
        return _eval(node)
    except ExpressionError:
        raise
    except (AlgebraError, ArithmeticError, TypeError, ValueError) as exc:
        _fail(node, str(exc))


def evaluate_text(text: str) -> Value:
    return evaluate(parse_expression(text))


def _as_field(node: Node, value: Value) -> VectorField:
    if isinstance(value, _FrameValued):
        return VectorField(value.chart, value.components)
    _fail(node, "expected a vector field")


def _as_form(value: Value) -> Value:
    if isinstance(value, VectorField):
        return VectorValuedForm(value.chart, value.components)
    return value


def _eval(node: Node) -> Value:
    ctx = context()
    if isinstance(node, Num):
        return ctx.scalar(node.value)
    if isinstance(node, Imag):
        return ctx.scalar(I)
    if isinstance(node, Name):
        objects = named_objects()
        if node.name in objects:
            return objects[node.name]
        if node.name in ctx:
            return ctx.gen(node.name)
        _fail(node, f"unknown identifier {node.name!r}")
    if isinstance(node, Frame):
        chart = eval_chart()
        if not chart.has_base(node.name):
            _fail(node, f"@{node.name} is not a coordinate frame field")
        return chart.partial(node.name)
    if isinstance(node, Neg):
        return -_eval(node.operand)
    if isinstance(node, BinOp):
        return _binop(node, _eval(node.left), _eval(node.right))
    if isinstance(node, Pow):
        base = _eval(node.base)
        if not isinstance(base, SuperPoly):
            _fail(node, "only functions can be raised to powers")
        try:
            return base ** node.exponent
        except ArithmeticError as exc:
            _fail(node, str(exc))
    if isinstance(node, Exp):
        return _exp(node, _eval(node.arg))
    if isinstance(node, Diff):
        value = _eval(node.arg)
        if isinstance(value, _FrameValued):
            return exterior_derivative(_as_form(value))
        return exterior_derivative(value, eval_chart())
    if isinstance(node, (Interior, Lie)):
        X = _as_field(node.field, _eval(node.field))
        form = _as_form(_eval(node.form))
        try:
            if isinstance(node, Interior):
                return interior_product(X, form)
            return lie_derivative(X, form)
        except (AlgebraError, ValueError) as exc:
            _fail(node, str(exc))
    if isinstance(node, Bracket):
        X = _as_field(node.left, _eval(node.left))
        Y = _as_field(node.right, _eval(node.right))
        try:
            return graded_commutator(X, Y)
        except (AlgebraError, ValueError) as exc:
            _fail(node, str(exc))
    if isinstance(node, Apply):
        X = _as_field(node.field, _eval(node.field))
        f = _eval(node.arg)
        if not isinstance(f, SuperPoly):
            _fail(node.arg, "a vector field acts on functions")
        return X(f)
    _fail(node, f"cannot evaluate {type(node).__name__}")


def _binop(node: BinOp, a: Value, b: Value) -> Value:
    op = node.op
    if op in "+-":
        if isinstance(a, SuperPoly) != isinstance(b, SuperPoly):
            _fail(node, "cannot add a function and a tangent-valued object")
        if isinstance(a, _FrameValued) and type(a) is not type(b):
            a, b = _as_form(a), _as_form(b)
        return a + b if op == "+" else a - b
    if op == "*":
        if isinstance(a, SuperPoly):
            return a * b
        if isinstance(b, SuperPoly) and b.is_scalar():
            return a * b.scalar_value()
        _fail(node, "tangent-valued objects are multiplied by functions from the left")
    if op == "/":
        if not isinstance(b, SuperPoly):
            _fail(node, "cannot divide by a tangent-valued object")
        try:
            inv = b ** -1
        except ArithmeticError as exc:
            _fail(node, str(exc))
        if isinstance(a, SuperPoly):
            return a * inv
        return inv * a
    _fail(node, f"unknown operator {op!r}")


def _exp(node: Node, value: Value) -> SuperPoly:
    """``e^value`` for value = sum c_g g over exponential generators plus an even nilpotent."""
    ctx = context()
    if not isinstance(value, SuperPoly):
        _fail(node, "exp takes a function")
    if value.parity() is not EVEN:
        _fail(node, "exp of a non-even element")
    result = ctx.one
    rest = value
    for m, c in value.terms.items():
        if m.odds or m.exps or not m.evens:
            continue
        if len(m.evens) == 1 and m.evens[0][1] == 1 and ctx.generators[m.evens[0][0]].exponential:
            g = m.evens[0][0]
            result = result * ctx.exp(g, c)
            rest = rest - ctx.gen(g) * c
    if not rest.is_nilpotent():
        _fail(node, f"exp only supports c*l plus nilpotent terms, got {value}")
    if rest:
        result = result * rest.exp_nilpotent()
    return result


def equivalent(a: Value, b: Value) -> bool:
    """Equality up to the field/form distinction (same components on the same legs).

    Every zero renders as ``0``, so zeros of all kinds are equivalent.
    """
    if not a and not b:
        return True
    if isinstance(a, SuperPoly) or isinstance(b, SuperPoly):
        return isinstance(a, SuperPoly) and isinstance(b, SuperPoly) and a == b
    return a.components == b.components
