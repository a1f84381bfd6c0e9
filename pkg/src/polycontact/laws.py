"""Random objects on a small (2|2) chart and the algebraic laws they must satisfy.

Used by the ``calculus-laws`` catalogue entry with a fixed seed; the test
suite drives the same law functions from hypothesis.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import Optional

from .algebra import EVEN, ODD, Monomial, Parity, SuperPoly, make_context, merge_odds, sign_of
from .calculus import (
    Chart,
    SuperMap,
    VectorField,
    VectorValuedForm,
    exterior_derivative,
    graded_commutator,
    lie_derivative,
    lie_derivative_cartan,
    pullback,
)
from .report import CheckReport, Evidence, run_check
from .scalars import qi

BASES = ("u0", "u1", "z1", "z2")


@lru_cache(maxsize=None)
def small_chart() -> Chart:
    ctx = make_context([("u0", EVEN), ("u1", EVEN), ("z1", ODD), ("z2", ODD)], name="laws")
    return Chart.build(ctx, BASES, name="R2|2")


def random_scalar(rng: random.Random):
    return qi((rng.randint(-3, 3), rng.randint(-2, 2)))


def random_poly(
    rng: random.Random,
    parity: Optional[Parity] = None,
    terms: int = 3,
    with_fibers: bool = True,
    max_exp: int = 2,
) -> SuperPoly:
    """Random element; homogeneous of ``parity`` when given."""
    chart = small_chart()
    ctx = chart.ctx
    pool = list(chart.bases) + (list(chart.fibers) if with_fibers else [])
    evens = [g for g in pool if g.parity is EVEN]
    odds = [g for g in pool if g.parity is ODD]
    out = ctx.zero
    for _ in range(rng.randint(0, terms)):
        m = ctx.one
        for g in evens:
            k = rng.randint(0, max_exp) if rng.random() < 0.4 else 0
            if k:
                m = m * ctx.gen(g) ** k
        chosen = [g for g in odds if rng.random() < 0.4]
        if parity is not None and len(chosen) % 2 != int(parity):
            if chosen and rng.random() < 0.5:
                chosen.pop(rng.randrange(len(chosen)))
            else:
                rest = [g for g in odds if g not in chosen]
                if rest:
                    chosen.append(rng.choice(rest))
                else:
                    chosen.pop()
        rng.shuffle(chosen)
        for g in chosen:
            m = m * ctx.gen(g)
        out = out + m * random_scalar(rng)
    return out


def random_parity(rng: random.Random) -> Parity:
    return EVEN if rng.random() < 0.5 else ODD


def random_field(rng: random.Random, parity: Parity, with_fibers: bool = False) -> VectorField:
    chart = small_chart()
    comps = {}
    for g in chart.bases:
        comps[g.name] = random_poly(rng, parity + g.parity, terms=2, with_fibers=with_fibers)
    return VectorField(chart, comps)


def random_vv_form(rng: random.Random, parity: Parity) -> VectorValuedForm:
    chart = small_chart()
    comps = {}
    for g in chart.bases:
        comps[g.name] = random_poly(rng, parity + g.parity, terms=2)
    return VectorValuedForm(chart, comps)


def random_elementary_map(rng: random.Random) -> SuperMap:
    """A triangular change of coordinates: one coordinate shifted by a function of the others.

    Optionally the shifted coordinate is also rescaled by a nonzero rational.
    """
    chart = small_chart()
    ctx = chart.ctx
    target = rng.choice(chart.bases)
    others = [g for g in chart.bases if g != target]
    shift = ctx.zero
    for _ in range(rng.randint(1, 2)):
        m = ctx.one
        for g in others:
            if g.parity is EVEN and rng.random() < 0.5:
                m = m * ctx.gen(g) ** rng.randint(1, 2)
        odd = [g for g in others if g.parity is ODD and rng.random() < 0.5]
        if len(odd) % 2 != int(target.parity):
            pool = [g for g in others if g.parity is ODD]
            odd = pool[:1] if target.parity is ODD else []
        for g in odd:
            m = m * ctx.gen(g)
        shift = shift + m * random_scalar(rng)
    scale = qi(rng.choice([1, 1, 2, -3]))
    x = ctx.gen(target)
    fwd = {target.name: x * scale + shift}
    inv = {target.name: (x - shift) * (1 / scale)}
    return SuperMap(chart, chart, fwd, inv, name=f"shift-{target.name}")


def random_map(rng: random.Random, depth: int = 2) -> SuperMap:
    phi = random_elementary_map(rng)
    for _ in range(depth - 1):
        phi = phi.compose(random_elementary_map(rng))
    return phi


# -- individual laws (each returns a witness string on failure, else None) ---------


def law_d_squared(rng) -> Optional[str]:
    chart = small_chart()
    f = random_poly(rng)
    if exterior_derivative(exterior_derivative(f, chart), chart):
        return f"d d ({f}) != 0"
    omega = random_vv_form(rng, random_parity(rng))
    if exterior_derivative(exterior_derivative(omega)):
        return f"d d ({omega}) != 0"
    return None


def law_leibniz(rng) -> Optional[str]:
    chart = small_chart()
    gen = rng.choice(list(chart.bases) + list(chart.fibers))
    pf = random_parity(rng)
    f, g = random_poly(rng, pf), random_poly(rng)
    lhs = (f * g).derivative(gen.name)
    rhs = f.derivative(gen.name) * g + (f * g.derivative(gen.name)) * sign_of(int(gen.parity) * int(pf))
    return None if lhs == rhs else f"d/d{gen.name} of ({f})({g})"


def law_supercommutativity(rng) -> Optional[str]:
    pf, pg = random_parity(rng), random_parity(rng)
    f, g = random_poly(rng, pf), random_poly(rng, pg)
    ok = f * g == (g * f) * sign_of(int(pf) * int(pg))
    return None if ok else f"({f}) and ({g}) do not supercommute"


def law_lie_lines_agree(rng) -> Optional[str]:
    X = random_field(rng, random_parity(rng))
    if rng.random() < 0.5:
        omega = random_vv_form(rng, random_parity(rng))
    else:
        omega = random_poly(rng, random_parity(rng))
    if lie_derivative(X, omega) != lie_derivative_cartan(X, omega):
        return f"L_X omega lines differ for X = {X}, omega = {omega}"
    return None


def law_pullback_d(rng) -> Optional[str]:
    chart = small_chart()
    phi = random_map(rng, depth=rng.randint(1, 2))
    f = random_poly(rng)
    lhs = pullback(phi, exterior_derivative(f, chart))
    rhs = exterior_derivative(pullback(phi, f), chart)
    return None if lhs == rhs else f"pullback and d disagree on {f}"


def law_functoriality(rng) -> Optional[str]:
    phi, psi = random_map(rng, 1), random_map(rng, 1)
    f = random_poly(rng)
    lhs = pullback(phi.compose(psi), f)
    rhs = pullback(psi, pullback(phi, f))
    return None if lhs == rhs else f"functoriality fails on {f}"


def law_bracket_antisymmetry(rng) -> Optional[str]:
    px, py = random_parity(rng), random_parity(rng)
    X, Y = random_field(rng, px), random_field(rng, py)
    lhs = graded_commutator(X, Y)
    rhs = -graded_commutator(Y, X) * sign_of(int(px) * int(py))
    return None if lhs == rhs else f"[X,Y] antisymmetry fails for X = {X}, Y = {Y}"


def law_jacobi(rng) -> Optional[str]:
    ps = [random_parity(rng) for _ in range(3)]
    X, Y, Z = (random_field(rng, p) for p in ps)
    px, py, pz = (int(p) for p in ps)
    total = (
        graded_commutator(X, graded_commutator(Y, Z)) * sign_of(px * pz)
        + graded_commutator(Y, graded_commutator(Z, X)) * sign_of(py * px)
        + graded_commutator(Z, graded_commutator(X, Y)) * sign_of(pz * py)
    )
    return None if not total else f"Jacobi fails: {total}"


LAWS = {
    "d-squared": law_d_squared,
    "graded-leibniz": law_leibniz,
    "supercommutativity": law_supercommutativity,
    "lie-lines-agree": law_lie_lines_agree,
    "pullback-commutes-with-d": law_pullback_d,
    "pullback-functoriality": law_functoriality,
    "bracket-antisymmetry": law_bracket_antisymmetry,
    "bracket-jacobi": law_jacobi,
}


# -- canonical product oracle ------------------------------------------------------------


def naive_odd_product(a: tuple, b: tuple):
    """Sign and sorted tuple of the odd word ``a + b`` by adjacent transpositions."""
    word = list(a) + list(b)
    sign = 1
    changed = True
    while changed:
        changed = False
        for k in range(len(word) - 1):
            if word[k] == word[k + 1]:
                return 0, ()
            if word[k] > word[k + 1]:
                word[k], word[k + 1] = word[k + 1], word[k]
                sign = -sign
                changed = True
    if len(set(word)) != len(word):
        return 0, ()
    return sign, tuple(word)


def odd_words(generators: int = 8, max_degree: int = 4) -> list[tuple]:
    return [c for k in range(max_degree + 1) for c in itertools.combinations(range(generators), k)]


def product_oracle_mismatches(generators: int = 8, max_degree: int = 4) -> list:
    bad = []
    words = odd_words(generators, max_degree)
    for a in words:
        for b in words:
            fast = merge_odds(a, b)
            slow = naive_odd_product(a, b)
            if (fast[0] or 0) != slow[0] or (slow[0] and tuple(fast[1]) != slow[1]):
                bad.append((a, b, fast, slow))
    return bad


def run_laws(cases: int = 200, seed: int = 11) -> CheckReport:
    def body(ev: Evidence):
        for name, law in LAWS.items():
            rng = random.Random(f"{seed}:{name}")
            for k in range(cases):
                witness = law(rng)
                if not ev.expect(f"{name} case {k}", witness is None, witness):
                    break
        bad = product_oracle_mismatches()
        ev.expect("canonical product agrees with adjacent-transposition sorting", not bad, bad[:1])

    return run_check(
        "calculus-laws",
        f"d^2 = 0, graded Leibniz, supercommutativity, both Lie-derivative lines, pullback laws and bracket identities on {cases} seeded cases each",
        body,
    )
