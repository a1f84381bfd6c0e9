"""Exact linear algebra over Q(i), backed by sympy's DomainMatrix.

Large ansatz systems are split into connected components (rows linked by
shared columns) before elimination; the systems built by the verification
layer are block diagonal in the x-monomials, so this keeps every dense
elimination small.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Mapping, Sequence

from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix

from .algebra import SuperPoly
from .scalars import ONE, ZERO, Scalar, qi


def as_matrix(rows: Sequence[Sequence], ncols: int | None = None) -> DomainMatrix:
    rows = [[qi(v) for v in row] for row in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    return DomainMatrix(rows, (len(rows), ncols), QQ_I)


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    if not rows:
        return 0
    return as_matrix(rows, ncols).rank()


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Scalar]]:
    """Basis of the right kernel ``{v : M v = 0}`` from the reduced row echelon form."""
    if not rows:
        return [[ONE if i == j else ZERO for i in range(ncols)] for j in range(ncols)]
    basis = as_matrix(rows, ncols).nullspace()
    return [list(r) for r in basis.to_list()]


def left_kernel(rows: Sequence[Sequence], ncols: int) -> list[list[Scalar]]:
    """Basis of ``{w : w M = 0}``."""
    nrows = len(rows)
    if ncols == 0:
        return nullspace([], nrows)
    transposed = [[rows[r][c] for r in range(nrows)] for c in range(ncols)]
    return nullspace(transposed, nrows)


def inverse(rows: Sequence[Sequence]) -> list[list[Scalar]]:
    return [list(r) for r in as_matrix(rows).inv().to_list()]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list[Scalar]]:
    return [list(r) for r in (as_matrix(a) * as_matrix(b)).to_list()]


def sparse_nullspace(rows: Sequence[Mapping[int, Scalar]], ncols: int) -> list[dict[int, Scalar]]:
    """Right kernel of a sparse system given as ``{column: value}`` rows.

    Columns untouched by any row contribute unit kernel vectors.
    """
    parent = list(range(ncols))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    live_rows = [r for r in rows if any(v for v in r.values())]
    for r in live_rows:
        cols = [c for c, v in r.items() if v]
        for c in cols[1:]:
            ra, rb = find(cols[0]), find(c)
            if ra != rb:
                parent[rb] = ra

    touched: set[int] = set()
    groups: dict[int, list[int]] = {}
    for r_index, r in enumerate(live_rows):
        cols = [c for c, v in r.items() if v]
        touched.update(cols)
        groups.setdefault(find(cols[0]), []).append(r_index)

    kernel: list[dict[int, Scalar]] = [{c: ONE} for c in range(ncols) if c not in touched]
    for root in sorted(groups):
        row_ids = groups[root]
        cols = sorted({c for i in row_ids for c, v in live_rows[i].items() if v})
        local = {c: k for k, c in enumerate(cols)}
        dense = []
        for i in row_ids:
            row = [ZERO] * len(cols)
            for c, v in live_rows[i].items():
                if v:
                    row[local[c]] = v
            dense.append(row)
        for vec in nullspace(dense, len(cols)):
            kernel.append({cols[k]: v for k, v in enumerate(vec) if v})
    kernel.sort(key=lambda v: min(v))
    return kernel


# -- ranks of matrices with polynomial entries ---------------------------------


def evaluate(poly: SuperPoly, values: Mapping[int, Scalar], exp_values: Mapping[int, Scalar]) -> Scalar:
    """Value of an element free of odd generators at a point.

    ``exp_values[i]`` is the value assigned to ``e^{g_i}``; exponential
    multipliers must be integers.
    """
    total = ZERO
    for m, c in poly.terms.items():
        if m.odds:
            raise ValueError("cannot evaluate an element with odd generators")
        v = c
        for i, e in m.evens:
            base = values[i]
            v = v * (base ** e if e > 0 else ONE / base ** (-e))
        for i, mult in m.exps:
            k = Fraction(int(mult.x.numerator), int(mult.x.denominator))
            if mult.y or k.denominator != 1:
                raise ValueError("only integer exponential multipliers can be sampled")
            w = exp_values[i]
            v = v * (w ** int(k) if k > 0 else ONE / w ** int(-k))
        total += v
    return total


def function_field_rank(entries: Sequence[Sequence[SuperPoly]], samples: int = 3, seed: int = 20110901):
    """Rank over the field of functions of the even generators occurring in ``entries``.

    Rank at any point is a lower bound for the generic rank, and a full rank
    at one point proves full rank.  Deficiency at every sampled point is
    reported as deficiency (Schwartz-Zippel).  Exponentials ``e^{g}`` are
    sampled as independent nonzero values.  Returns ``(rank, numeric rows)``
    where the numeric rows are those of the best sample.
    """
    nrows = len(entries)
    ncols = len(entries[0]) if nrows else 0
    gens: set[int] = set()
    exp_gens: set[int] = set()
    for row in entries:
        for p in row:
            for m in p.terms:
                gens.update(i for i, _ in m.evens)
                exp_gens.update(i for i, _ in m.exps)
    rng = random.Random(seed)
    best = (-1, None)
    rounds = samples if (gens or exp_gens) else 1
    for _ in range(rounds):
        values = {i: qi(Fraction(rng.randint(1, 97), rng.randint(1, 13))) for i in gens}
        exp_values = {i: qi(Fraction(rng.randint(2, 97), rng.randint(1, 13))) for i in exp_gens}
        numeric = [[evaluate(p, values, exp_values) for p in row] for row in entries]
        r = rank(numeric, ncols)
        if r > best[0]:
            best = (r, numeric)
        if r == min(nrows, ncols):
            break
    return best
