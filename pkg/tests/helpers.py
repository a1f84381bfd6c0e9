"""Independent oracles shared by several test modules."""

from __future__ import annotations

import sympy

from polycontact.algebra import SuperPoly


def to_sympy(poly: SuperPoly, symbols: dict | None = None):
    """Commutative (odd-free) element as a sympy expression; exponential atoms become sympy.exp."""
    ctx = poly.ctx
    symbols = symbols if symbols is not None else {}

    def sym(i):
        name = ctx.generators[i].name
        if name not in symbols:
            symbols[name] = sympy.Symbol(name)
        return symbols[name]

    total = sympy.Integer(0)
    for m, c in poly.terms.items():
        if m.odds:
            raise ValueError("odd generators have no commutative image")
        term = sympy.Rational(int(c.x.numerator), int(c.x.denominator)) + sympy.I * sympy.Rational(
            int(c.y.numerator), int(c.y.denominator)
        )
        for i, e in m.evens:
            term *= sym(i) ** e
        for i, k in m.exps:
            term *= sympy.exp(sympy.Rational(int(k.x.numerator), int(k.x.denominator)) * sym(i))
        total += term
    return total


def symbolic_rank(matrix) -> int:
    """Generic rank with sympy over the rational-function field."""
    rows = [[to_sympy(p) for p in row] for row in matrix]
    if not rows or not rows[0]:
        return 0
    return sympy.Matrix(rows).rank(simplify=True)
