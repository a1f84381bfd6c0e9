"""Gaussian-rational scalars.

All coefficients live in Q(i), represented by sympy's ``QQ_I`` domain
elements (gmpy2-backed when available).  This module only adds coercion
and printing helpers around them.
"""

from __future__ import annotations

from fractions import Fraction

from sympy.polys.domains import QQ, QQ_I

Scalar = type(QQ_I.one)

ZERO = QQ_I.zero
ONE = QQ_I.one
I = QQ_I(0, 1)


def qi(value) -> Scalar:
    """Coerce ``value`` into Q(i).

    Accepts ints, Fractions, ``(re, im)`` pairs of those, and existing
    ``QQ_I`` elements.  Floats are rejected on purpose.
    """
    if isinstance(value, Scalar):
        return value
    if isinstance(value, bool):
        raise TypeError("refusing to coerce a bool into Q(i)")
    if isinstance(value, int):
        return QQ_I(value, 0)
    if isinstance(value, Fraction):
        return QQ_I(QQ(value.numerator, value.denominator), 0)
    if isinstance(value, tuple) and len(value) == 2:
        return QQ_I(_rational(value[0]), _rational(value[1]))
    if isinstance(value, complex):
        re, im = Fraction(value.real), Fraction(value.imag)
        if re.denominator != 1 or im.denominator != 1:
            raise TypeError(f"non-integral complex literal {value!r}")
        return QQ_I(int(re), int(im))
    raise TypeError(f"cannot coerce {type(value).__name__} into Q(i)")


def _rational(value):
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    return QQ.convert(value)


def real(p: int, q: int = 1) -> Scalar:
    return QQ_I(QQ(p, q), 0)


def conjugate(c: Scalar) -> Scalar:
    return QQ_I(c.x, -c.y)


def is_real(c: Scalar) -> bool:
    return not c.y


def as_fraction(c: Scalar) -> Fraction:
    if c.y:
        raise ValueError(f"{format_scalar(c)} is not real")
    return Fraction(int(c.x.numerator), int(c.x.denominator))


def _fmt_rational(q) -> str:
    num, den = int(q.numerator), int(q.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


def format_scalar(c: Scalar) -> str:
    """Plain-text form parseable by the expression grammar, e.g. ``(1/2+3*I)``."""
    re, im = c.x, c.y
    if not im:
        return _fmt_rational(re)
    if im == 1:
        imag = "I"
    elif im == -1:
        imag = "-I"
    else:
        imag = f"{_fmt_rational(im)}*I"
    if not re:
        return imag
    sign = "-" if imag.startswith("-") else "+"
    return f"({_fmt_rational(re)}{sign}{imag.lstrip('-')})"


def format_scalar_latex(c: Scalar) -> str:
    def frac(q):
        num, den = int(q.numerator), int(q.denominator)
        if den == 1:
            return str(num)
        sign = "-" if num < 0 else ""
        return f"{sign}\\frac{{{abs(num)}}}{{{den}}}"

    re, im = c.x, c.y
    if not im:
        return frac(re)
    imag = "i" if im == 1 else "-i" if im == -1 else f"{frac(im)}i"
    if not re:
        return imag
    sign = "-" if imag.startswith("-") else "+"
    return f"\\left({frac(re)}{sign}{imag.lstrip('-')}\\right)"
