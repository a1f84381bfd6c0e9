"""Plain-text and LaTeX rendering."""

from __future__ import annotations

import re

from ..algebra import SuperPoly, monomial_factors
from ..calculus import _FrameValued
from ..scalars import ONE, format_scalar_latex

SIGMA = r"(\sigma^{\mu})_{a}^{\;\dot{b}}"
DX_LEG = r"\frac{\partial}{\partial x^{\mu}}"

# index-notation templates for the named objects
TEMPLATES = {
    "alpha": rf"\left(dx^{{\mu}} + i\left(\theta^{{a}}{SIGMA}d\bar{{\theta}}_{{\dot{{b}}}} + d\theta^{{a}}{SIGMA}\bar{{\theta}}_{{\dot{{b}}}}\right)\right){DX_LEG}",
    "dalpha": rf"2i\left(d\theta^{{a}}{SIGMA}d\bar{{\theta}}_{{\dot{{b}}}}\right){DX_LEG}",
    "omega": rf"e^{{\lambda}}\left(d\lambda\,dx^{{\mu}} + i\,d\lambda\left(\theta^{{a}}{SIGMA}d\bar{{\theta}}_{{\dot{{b}}}} + d\theta^{{a}}{SIGMA}\bar{{\theta}}_{{\dot{{b}}}}\right) + 2i\,d\theta^{{a}}{SIGMA}d\bar{{\theta}}_{{\dot{{b}}}}\right){DX_LEG}",
    "varpi": rf"d\left(r^{{2}}\left(dx^{{\mu}} + i\left(\theta^{{a}}{SIGMA}d\bar{{\theta}}_{{\dot{{b}}}} + d\theta^{{a}}{SIGMA}\bar{{\theta}}_{{\dot{{b}}}}\right)\right)\right){DX_LEG}",
}

_LATEX_NAMES = [
    (re.compile(r"^x(\d)$"), r"x^{\1}"),
    (re.compile(r"^y(\d)$"), r"y^{\1}"),
    (re.compile(r"^a(\d)$"), r"a^{\1}"),
    (re.compile(r"^th(\d)$"), r"\\theta^{\1}"),
    (re.compile(r"^thb(\d)$"), r"\\bar{\\theta}_{\\dot{\1}}"),
    (re.compile(r"^eta(\d)$"), r"\\eta^{\1}"),
    (re.compile(r"^etab(\d)$"), r"\\bar{\\eta}_{\\dot{\1}}"),
    (re.compile(r"^eps(\d)$"), r"\\epsilon^{\1}"),
    (re.compile(r"^epsb(\d)$"), r"\\bar{\\epsilon}_{\\dot{\1}}"),
    (re.compile(r"^l$"), r"\\lambda"),
]


def latex_name(name: str, ctx=None) -> str:
    if ctx is not None and name in ctx:
        g = ctx[name]
        if g.base is not None:
            return "d" + latex_name(g.base, ctx)
    for pattern, repl in _LATEX_NAMES:
        if pattern.match(name):
            return pattern.sub(repl, name)
    return name


def _poly_terms_latex(poly: SuperPoly) -> list[str]:
    out = []
    ctx = poly.ctx
    for m, c in poly.sorted_terms():
        pieces = []
        for g, e in monomial_factors(ctx, m):
            base = latex_name(g.name, ctx)
            pieces.append(base if e == 1 else f"{base}^{{{e}}}")
        for i, mult in m.exps:
            k = "" if mult == ONE else format_scalar_latex(mult)
            pieces.append(f"e^{{{k}{latex_name(ctx.generators[i].name)}}}")
        body = " ".join(pieces)
        if not body:
            out.append(format_scalar_latex(c))
        elif c == ONE:
            out.append(body)
        elif c == -ONE:
            out.append("-" + body)
        else:
            out.append(f"{format_scalar_latex(c)}\\,{body}")
    return out


def _join(terms: list[str]) -> str:
    if not terms:
        return "0"
    text = terms[0]
    for t in terms[1:]:
        text += " - " + t[1:] if t.startswith("-") else " + " + t
    return text


def poly_latex(poly: SuperPoly) -> str:
    return _join(_poly_terms_latex(poly))


def frame_valued_latex(value: _FrameValued) -> str:
    parts = []
    ctx = value.chart.ctx
    for leg, comp in value.components.items():
        leg_tex = rf"\frac{{\partial}}{{\partial {latex_name(leg, ctx)}}}"
        terms = _poly_terms_latex(comp)
        inner = terms[0] if len(terms) == 1 else rf"\left({_join(terms)}\right)"
        parts.append(leg_tex if inner == "1" else ("-" + leg_tex if inner == "-1" else f"{inner}{leg_tex}"))
    return _join(parts)


def render(value, fmt: str = "plain", name: str | None = None) -> str:
    """Deterministic rendering; ``name`` selects an index-notation LaTeX template when one exists."""
    if fmt == "plain":
        return value.to_plain()
    if fmt != "latex":
        raise ValueError(f"unknown format {fmt!r}")
    if name is None:
        name = _recognize(value)
    if name in TEMPLATES:
        return TEMPLATES[name]
    if isinstance(value, SuperPoly):
        return poly_latex(value)
    return frame_valued_latex(value)


def _recognize(value):
    if isinstance(value, SuperPoly):
        return None
    from .evaluate import equivalent, named_objects

    for key in TEMPLATES:
        if equivalent(value, named_objects()[key]):
            return key
    return None
