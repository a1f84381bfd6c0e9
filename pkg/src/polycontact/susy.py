"""N=1 superspace R^{4|4}: supercharges, covariant derivatives and the polycontact form.

Spinor index conventions: an undotted index contracts from the left of
``sigma[mu]`` and a dotted one from the right, so ``sandwich(u, mu, v)`` is
``u^a (sigma^mu)_a^b v_b``.  Indices are never raised or lowered.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Optional, Sequence

from .algebra import EVEN, ODD, GeneratorContext, Monomial, SuperPoly, make_context
from .calculus import (
    Chart,
    SuperMap,
    VectorField,
    VectorValuedForm,
    _d_scalar,
    exterior_derivative,
    graded_commutator,
    interior_product,
    lie_derivative,
    nondegeneracy_check,
    transform_vector_valued,
)
from .linalg import inverse as matrix_inverse
from .linalg import sparse_nullspace
from .report import CheckReport, Evidence, run_check
from .scalars import I, ONE, ZERO, conjugate, qi

X = ("x0", "x1", "x2", "x3")
TH = ("th1", "th2")
THB = ("thb1", "thb2")
Y = ("y0", "y1", "y2", "y3")
ETA = ("eta1", "eta2")
ETAB = ("etab1", "etab2")
EPS = ("eps1", "eps2")
EPSB = ("epsb1", "epsb2")
SHIFT = ("a0", "a1", "a2", "a3")


class PreconditionError(ValueError):
    pass


# -- sigma matrices --------------------------------------------------------------


def _m(rows):
    return tuple(tuple(qi(v) for v in row) for row in rows)


SIGMA = (
    _m([[1, 0], [0, 1]]),
    _m([[0, 1], [1, 0]]),
    _m([[0, (0, -1)], [(0, 1), 0]]),
    _m([[1, 0], [0, -1]]),
)


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return tuple(tuple(sum((a[i][j] * b[j][c] for j in range(k)), ZERO) for c in range(m)) for i in range(n))


def dagger(a):
    """Transpose with i -> -i on the entries."""
    return tuple(tuple(conjugate(a[j][i]) for j in range(len(a))) for i in range(len(a[0])))


def check_sigma_table() -> list[str]:
    """Violations of the Pauli anticommutator relations (empty when the table is right)."""
    bad = []
    identity = SIGMA[0]
    for i in range(1, 4):
        for j in range(1, 4):
            ij, ji = mat_mul(SIGMA[i], SIGMA[j]), mat_mul(SIGMA[j], SIGMA[i])
            want = 2 if i == j else 0
            for r in range(2):
                for c in range(2):
                    if ij[r][c] + ji[r][c] != identity[r][c] * want:
                        bad.append(f"sigma{i} sigma{j} + sigma{j} sigma{i} at ({r},{c})")
    return bad


# -- context and charts ----------------------------------------------------------


@lru_cache(maxsize=None)
def context() -> GeneratorContext:
    """The shared generator context for every chart in this package.

    Bases: space-time and spinor coordinates, the symplectization coordinate
    ``l`` (exponentials allowed), the cone coordinate ``r`` (invertible), and
    an auxiliary copy ``y, eta, etab`` on which the coset frame acts.
    Parameters: SUSY shifts, translation shifts, the R-phase ``u`` and the
    dilation ``t``.
    """
    bases = (
        [(n, EVEN) for n in X]
        + [(n, ODD) for n in TH + THB]
        + [("l", EVEN, {"exponential": True}), ("r", EVEN, {"invertible": True})]
        + [(n, EVEN) for n in Y]
        + [(n, ODD) for n in ETA + ETAB]
    )
    params = (
        [(n, ODD) for n in EPS + EPSB]
        + [(n, EVEN) for n in SHIFT]
        + [("u", EVEN, {"invertible": True}), ("t", EVEN, {"invertible": True})]
    )
    return make_context(bases, params, name="superspace")


@lru_cache(maxsize=None)
def build_chart() -> Chart:
    return Chart.build(context(), X + TH + THB, EPS + EPSB + SHIFT + ("u",), name="R4|4")


@lru_cache(maxsize=None)
def aux_chart() -> Chart:
    return Chart.build(context(), Y + ETA + ETAB, name="coset-frame")


@lru_cache(maxsize=None)
def lambda_chart() -> Chart:
    return Chart.build(context(), X + TH + THB + ("l",), name="R4|4 x R")


@lru_cache(maxsize=None)
def cone_chart() -> Chart:
    return Chart.build(context(), X + TH + THB + ("r",), ("t",), name="R4|4 x (0,oo)")


@lru_cache(maxsize=None)
def full_chart() -> Chart:
    return Chart.build(context(), X + TH + THB + ("l", "r"), name="R4|4 x R x (0,oo)")


@lru_cache(maxsize=None)
def universal_chart() -> Chart:
    """Every base coordinate of the context; used by the expression evaluator."""
    ctx = context()
    names = [g.name for g in ctx if g.kind.name.startswith("BASE")]
    return Chart.build(ctx, names, name="all coordinates")


def gens(names: Sequence[str]) -> list[SuperPoly]:
    ctx = context()
    return [ctx.gen(n) for n in names]


def diffs(names: Sequence[str]) -> list[SuperPoly]:
    ctx = context()
    return [ctx.gen(ctx.fiber_of(n)) for n in names]


def sandwich(left: Sequence[SuperPoly], mu: int, right: Sequence[SuperPoly]) -> SuperPoly:
    out = context().zero
    for a in range(2):
        for b in range(2):
            s = SIGMA[mu][a][b]
            if s:
                out = out + left[a] * right[b] * s
    return out


# -- generators ------------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorSet:
    Q: tuple
    Qb: tuple
    D: tuple
    Db: tuple
    P: tuple
    R: VectorField

    def named(self) -> dict[str, VectorField]:
        out = {}
        for prefix, fields in (("Q", self.Q), ("Qb", self.Qb), ("D", self.D), ("Db", self.Db)):
            for k, f in enumerate(fields, start=1):
                out[f"{prefix}{k}"] = f
        for k, f in enumerate(self.P):
            out[f"P{k}"] = f
        out["R"] = self.R
        return out


def spinor_fields(chart: Chart, xs, ths, thbs, sign: int):
    """``d/dth_a + sign*i (sigma th-bar)_a d/dx`` and the barred partner.

    ``sign = +1`` gives the supercharges, ``-1`` the covariant derivatives.
    """
    ctx = chart.ctx
    th, thb = gens(ths), gens(thbs)
    coeff = I if sign > 0 else -I
    unbarred, barred = [], []
    for a in range(2):
        comps = {ths[a]: ctx.one}
        for mu in range(4):
            comps[xs[mu]] = sum((thb[b] * SIGMA[mu][a][b] for b in range(2)), ctx.zero) * coeff
        unbarred.append(VectorField(chart, comps, ODD))
    for a in range(2):
        comps = {thbs[a]: ctx.one}
        for mu in range(4):
            comps[xs[mu]] = sum((th[b] * SIGMA[mu][b][a] for b in range(2)), ctx.zero) * coeff
        barred.append(VectorField(chart, comps, ODD))
    return tuple(unbarred), tuple(barred)


@lru_cache(maxsize=None)
def build_generators(chart: Optional[Chart] = None) -> GeneratorSet:
    """Q, Qb, D, Db, P, R on the SUSY chart, or on any chart containing its coordinates."""
    chart = chart or build_chart()
    ctx = chart.ctx
    Q, Qb = spinor_fields(chart, X, TH, THB, +1)
    D, Db = spinor_fields(chart, X, TH, THB, -1)
    P = tuple(chart.partial(x) for x in X)
    th, thb = gens(TH), gens(THB)
    R = VectorField(chart, {**{TH[a]: th[a] * (-I) for a in range(2)}, **{THB[a]: thb[a] * I for a in range(2)}}, EVEN)
    return GeneratorSet(Q, Qb, D, Db, P, R)


# -- the polycontact form --------------------------------------------------------


def alpha_component(mu: int) -> SuperPoly:
    th, thb, dx, dth, dthb = gens(TH), gens(THB), diffs(X), diffs(TH), diffs(THB)
    return dx[mu] + (sandwich(th, mu, dthb) + sandwich(dth, mu, thb)) * I


@lru_cache(maxsize=None)
def polycontact_form(chart: Optional[Chart] = None) -> VectorValuedForm:
    chart = chart or build_chart()
    return VectorValuedForm(chart, {X[mu]: alpha_component(mu) for mu in range(4)}, ODD)


@lru_cache(maxsize=None)
def dalpha(chart: Optional[Chart] = None) -> VectorValuedForm:
    return exterior_derivative(polycontact_form(chart))


def dalpha_display() -> VectorValuedForm:
    """``2i dth sigma dthb`` per leg, assembled directly from the sigma table."""
    dth, dthb = diffs(TH), diffs(THB)
    return VectorValuedForm(build_chart(), {X[mu]: sandwich(dth, mu, dthb) * (2 * I) for mu in range(4)})


def contraction_displays() -> dict[str, VectorValuedForm]:
    """Expected contractions of the covariant derivatives into d(alpha)."""
    dth, dthb = diffs(TH), diffs(THB)
    chart = build_chart()
    out = {}
    for a in range(2):
        out[f"D{a + 1}"] = VectorValuedForm(
            chart, {X[mu]: sum((dthb[b] * SIGMA[mu][a][b] for b in range(2)), context().zero) * (-2 * I) for mu in range(4)}
        )
        out[f"Db{a + 1}"] = VectorValuedForm(
            chart, {X[mu]: sum((dth[b] * SIGMA[mu][b][a] for b in range(2)), context().zero) * (-2 * I) for mu in range(4)}
        )
    return out


def zero_spinors(value):
    """Restrict to th = thb = 0."""
    z = {n: 0 for n in TH + THB}
    return value.substitute(z)


# -- coordinate changes ------------------------------------------------------------


def susy_map(eps: Sequence[str] = EPS, epsb: Sequence[str] = EPSB) -> SuperMap:
    """x' = x + i(eps sigma thb - th sigma epsb), th' = th + eps, thb' = thb + epsb."""
    chart = build_chart()
    e, eb = gens(eps), gens(epsb)
    return SuperMap(chart, chart, _susy_images(e, eb, +1), _susy_images(e, eb, -1), name="susy")


def _susy_images(e, eb, sign):
    x, th, thb = gens(X), gens(TH), gens(THB)
    e = [v * sign for v in e]
    eb = [v * sign for v in eb]
    out = {}
    for mu in range(4):
        out[X[mu]] = x[mu] + (sandwich(e, mu, thb) - sandwich(th, mu, eb)) * I
    for a in range(2):
        out[TH[a]] = th[a] + e[a]
        out[THB[a]] = thb[a] + eb[a]
    return out


def susy_fiber_display() -> dict[str, SuperPoly]:
    """Induced transformation of the differentials under the SUSY map."""
    e, eb = gens(EPS), gens(EPSB)
    dx, dth, dthb = diffs(X), diffs(TH), diffs(THB)
    out = {}
    for mu in range(4):
        out["d" + X[mu]] = dx[mu] - (sandwich(dth, mu, eb) + sandwich(e, mu, dthb)) * I
    for a in range(2):
        out["d" + TH[a]] = dth[a]
        out["d" + THB[a]] = dthb[a]
    return out


def translation_map(shift: Sequence[str] = SHIFT) -> SuperMap:
    chart = build_chart()
    x, a = gens(X), gens(shift)
    return SuperMap(
        chart,
        chart,
        {X[mu]: x[mu] + a[mu] for mu in range(4)},
        {X[mu]: x[mu] - a[mu] for mu in range(4)},
        name="translation",
    )


def r_phase_map(unit: str = "u") -> SuperMap:
    chart = build_chart()
    ctx = context()
    u = ctx.gen(unit)
    uinv = u ** -1
    th, thb = gens(TH), gens(THB)
    fwd = {**{TH[a]: u * th[a] for a in range(2)}, **{THB[a]: uinv * thb[a] for a in range(2)}}
    inv = {**{TH[a]: uinv * th[a] for a in range(2)}, **{THB[a]: u * thb[a] for a in range(2)}}
    return SuperMap(chart, chart, fwd, inv, name="r-phase")


def boost_pair():
    """Rational z-boost: cosh = 17/8, sinh = 15/8, with spinor matrix diag(2, 1/2)."""
    c, s = Fraction(17, 8), Fraction(15, 8)
    lam = _m([[c, 0, 0, s], [0, 1, 0, 0], [0, 0, 1, 0], [s, 0, 0, c]])
    spin = _m([[2, 0], [0, Fraction(1, 2)]])
    return lam, spin


def intertwining_residual(lam, spin) -> list:
    """``S sigma^mu S^dagger - sum_nu lam[nu][mu] sigma^nu`` for each mu (all zero when compatible)."""
    out = []
    for mu in range(4):
        lhs = mat_mul(mat_mul(spin, SIGMA[mu]), dagger(spin))
        res = tuple(
            tuple(lhs[r][c] - sum((lam[nu][mu] * SIGMA[nu][r][c] for nu in range(4)), ZERO) for c in range(2))
            for r in range(2)
        )
        out.append(res)
    return out


def lorentz_map(lam, spin) -> SuperMap:
    """x'^mu = x^nu lam[nu][mu], th'^a = th^c S[c][a], thb'_b = thb_d conj(S)[d][b]."""
    residual = intertwining_residual(lam, spin)
    if any(v for m in residual for row in m for v in row):
        raise PreconditionError(f"(Lambda, S) do not intertwine sigma: residual {residual}")
    chart = build_chart()
    lam_inv = matrix_inverse(lam)
    spin_inv = matrix_inverse(spin)
    spin_bar = tuple(tuple(conjugate(v) for v in row) for row in spin)
    spin_bar_inv = matrix_inverse(spin_bar)
    x, th, thb = gens(X), gens(TH), gens(THB)

    def linear(coords, matrix, names):
        n = len(names)
        return {
            names[j]: sum((coords[i] * matrix[i][j] for i in range(n) if matrix[i][j]), context().zero)
            for j in range(n)
        }

    fwd = {**linear(x, lam, X), **linear(th, spin, TH), **linear(thb, spin_bar, THB)}
    inv = {**linear(x, lam_inv, X), **linear(th, spin_inv, TH), **linear(thb, spin_bar_inv, THB)}
    return SuperMap(chart, chart, fwd, inv, name="lorentz")


# -- decomposition -----------------------------------------------------------------


def decompose(field: VectorField):
    """Split into the part along D, Db and the remainder along the translations."""
    g = build_generators()
    X_D = sum(
        (field.component(TH[a]) * g.D[a] for a in range(2)),
        VectorField(field.chart, {}),
    )
    for a in range(2):
        X_D = X_D + field.component(THB[a]) * g.Db[a]
    return X_D, field - X_D


def decomposition_displays() -> dict[str, tuple[VectorField, VectorField]]:
    """Expected splits of Q_a, Qb^a and R."""
    g = build_generators()
    th, thb = gens(TH), gens(THB)
    out = {}
    for a in range(2):
        q_p = VectorField(build_chart(), {})
        for mu in range(4):
            coeff = sum((thb[b] * SIGMA[mu][a][b] for b in range(2)), context().zero) * (2 * I)
            q_p = q_p + coeff * g.P[mu]
        out[f"Q{a + 1}"] = (g.D[a], q_p)
        qb_p = VectorField(build_chart(), {})
        for mu in range(4):
            coeff = sum((th[b] * SIGMA[mu][b][a] for b in range(2)), context().zero) * (2 * I)
            qb_p = qb_p + coeff * g.P[mu]
        out[f"Qb{a + 1}"] = (g.Db[a], qb_p)
    r_d = VectorField(build_chart(), {})
    for a in range(2):
        r_d = r_d + (thb[a] * I) * g.Db[a] - (th[a] * I) * g.D[a]
    r_p = VectorField(build_chart(), {})
    for mu in range(4):
        r_p = r_p + (sandwich(th, mu, thb) * (-2 * I) * I) * g.P[mu]
    out["R"] = (r_d, r_p)
    return out


# -- Maurer-Cartan form -----------------------------------------------------------


@dataclass
class CosetFrame:
    """A realization of the coset generator on the auxiliary chart.

    ``A = scale * (x^mu T_mu + th^a F_a + thb_b Fb^b)``; the form is read
    back as ``scale * (c^mu T_mu + c^a F_a + cb_b Fb^b)``.
    """

    name: str
    scale: object
    spinor: tuple
    antispinor: tuple

    @property
    def translations(self):
        return tuple(aux_chart().partial(y) for y in Y)

    def generator(self) -> VectorField:
        ctx = context()
        x, th, thb = gens(X), gens(TH), gens(THB)
        A = VectorField(aux_chart(), {})
        for mu in range(4):
            A = A + x[mu] * self.translations[mu]
        for a in range(2):
            A = A + th[a] * self.spinor[a] + thb[a] * self.antispinor[a]
        return A * self.scale if self.scale != ONE else A


def coset_frame(kind: str = "covariant") -> CosetFrame:
    """``covariant``: i P -> d/dy, i Q -> D(aux); ``literal``: the supercharges themselves with an overall i."""
    if kind == "covariant":
        D, Db = spinor_fields(aux_chart(), Y, ETA, ETAB, -1)
        return CosetFrame(kind, ONE, D, Db)
    if kind == "literal":
        Q, Qb = spinor_fields(aux_chart(), Y, ETA, ETAB, +1)
        return CosetFrame(kind, I, Q, Qb)
    raise ValueError(f"unknown coset frame {kind!r}")


def hadamard_series(A: VectorField, dA: VectorField, depth: int = 8):
    """``sum_n (-1)^n/(n+1)! ad_A^n(dA)``; returns the sum and the list of ``ad_A^n(dA)``."""
    terms = [dA]
    total = dA
    current = dA
    for n in range(1, depth + 1):
        current = graded_commutator(A, current)
        if not current:
            return total, terms
        terms.append(current)
        total = total + current * (qi(Fraction((-1) ** n, factorial(n + 1))))
    raise ArithmeticError(f"Hadamard series did not terminate within depth {depth}")


@dataclass
class MaurerCartan:
    frame: CosetFrame
    i_omega: VectorField  # realized on the auxiliary chart
    terms: list  # ad_A^n(dA), n = 0, 1, ...
    translation: VectorValuedForm  # c^mu on the SUSY chart
    spinor: tuple  # c^a
    antispinor: tuple  # cb_b


def maurer_cartan(frame: Optional[CosetFrame] = None, depth: int = 8) -> MaurerCartan:
    frame = frame or coset_frame()
    A = frame.generator()
    dA = A.map(lambda c: _d_scalar(build_chart(), c))
    total, terms = hadamard_series(A, dA, depth)
    inv_scale = ONE / qi(frame.scale)
    c_spin = tuple(total.component(ETA[a]) * inv_scale for a in range(2))
    c_anti = tuple(total.component(ETAB[a]) * inv_scale for a in range(2))
    trans = {}
    for mu in range(4):
        value = total.component(Y[mu]) * inv_scale
        for a in range(2):
            value = value - c_spin[a] * frame.spinor[a].component(Y[mu])
            value = value - c_anti[a] * frame.antispinor[a].component(Y[mu])
        trans[X[mu]] = value
    return MaurerCartan(frame, total, terms, VectorValuedForm(build_chart(), trans), c_spin, c_anti)


def maurer_cartan_display(frame: Optional[CosetFrame] = None) -> VectorField:
    """The expected realized form: alpha^mu T_mu + dth^a F_a + dthb_b Fb^b (times the frame scale)."""
    frame = frame or coset_frame()
    out = VectorField(aux_chart(), {})
    dth, dthb = diffs(TH), diffs(THB)
    for mu in range(4):
        out = out + alpha_component(mu) * frame.translations[mu]
    for a in range(2):
        out = out + dth[a] * frame.spinor[a] + dthb[a] * frame.antispinor[a]
    return out * frame.scale if frame.scale != ONE else out


# -- bounded ansatz solves ----------------------------------------------------------


def odd_monomials() -> list[SuperPoly]:
    """All 16 products of distinct spinor coordinates, in canonical order."""
    out = []
    names = TH + THB
    for k in range(5):
        for combo in itertools.combinations(names, k):
            m = context().one
            for n in combo:
                m = m * context().gen(n)
            out.append(m)
    return out


def x_monomials(max_degree: int) -> list[SuperPoly]:
    x = gens(X)
    out = []
    for deg in range(max_degree + 1):
        for combo in itertools.combinations_with_replacement(range(4), deg):
            m = context().one
            for i in combo:
                m = m * x[i]
            out.append(m)
    return out


def ansatz_basis(max_degree: int) -> list[VectorField]:
    """One elementary field ``m d/dz`` per base coordinate z and monomial m."""
    chart = build_chart()
    monos = [o * xm for xm in x_monomials(max_degree) for o in odd_monomials()]
    return [VectorField(chart, {z: m}) for z in chart.base_names for m in monos]


def _flatten(tag, value) -> dict:
    out = {}
    comps = value.components if isinstance(value, VectorValuedForm) else {None: value}
    for leg, poly in comps.items():
        for m, c in poly.terms.items():
            out[(tag, leg, m)] = c
    return out


def _rows_from_images(images: list[dict], extra: Sequence[dict] = ()) -> list[dict]:
    """Transpose per-unknown images ``{equation key: coeff}`` into sparse rows."""
    rows: dict = {}
    for col, image in enumerate(list(images) + list(extra)):
        for key, c in image.items():
            rows.setdefault(key, {})[col] = c
    return list(rows.values())


def _combine(basis: Sequence[VectorField], vector: dict) -> VectorField:
    out = VectorField(basis[0].chart, {})
    for col, c in vector.items():
        if col < len(basis):
            out = out + basis[col] * c
    return out


@dataclass
class KernelSolution:
    unknowns: int
    dimension: int
    expected_dimension: int
    residuals: list  # nonzero residual fields (empty on success)
    basis: list


def solve_alpha_kernel(max_degree: int = 2) -> KernelSolution:
    """All ansatz fields with ``i_X alpha = 0``, compared against the span of D, Db."""
    alpha = polycontact_form()
    basis = ansatz_basis(max_degree)
    images = [_flatten("a", interior_product(b, alpha)) for b in basis]
    kernel = sparse_nullspace(_rows_from_images(images), len(basis))
    residuals = []
    solutions = []
    for vec in kernel:
        field = _combine(basis, vec)
        solutions.append(field)
        X_D, rest = decompose(field)
        if rest:
            residuals.append(rest)
    nx = len(x_monomials(max_degree))
    return KernelSolution(len(basis), len(kernel), 4 * 16 * nx, residuals, solutions)


@dataclass
class ReebSolution:
    mu: int
    dimension: int
    field: Optional[VectorField]


def reeb_solve(max_degree: int = 1) -> list[ReebSolution]:
    """Solve ``i_P alpha = d/dx^mu`` and ``i_P dalpha = 0`` over the bounded ansatz."""
    alpha, da = polycontact_form(), dalpha()
    basis = ansatz_basis(max_degree)
    images = []
    for b in basis:
        image = _flatten("a", interior_product(b, alpha))
        image.update(_flatten("da", interior_product(b, da)))
        images.append(image)
    out = []
    unit = Monomial((), (), ())
    for mu in range(4):
        source = {("a", X[mu], unit): -ONE}
        kernel = sparse_nullspace(_rows_from_images(images, [source]), len(basis) + 1)
        s_col = len(basis)
        field = None
        if len(kernel) == 1 and kernel[0].get(s_col):
            vec = kernel[0]
            scale = ONE / vec[s_col]
            field = _combine(basis, {k: v * scale for k, v in vec.items()})
        out.append(ReebSolution(mu, len(kernel), field))
    return out


# -- verification catalogue entries -------------------------------------------------


def verify_kernel_theorem(max_degree: int = 2) -> CheckReport:
    def body(ev: Evidence):
        g = build_generators()
        alpha = polycontact_form()
        for name, f in (("D1", g.D[0]), ("D2", g.D[1]), ("Db1", g.Db[0]), ("Db2", g.Db[1])):
            ev.expect_zero(f"i_{name} alpha", interior_product(f, alpha))
        ev.expect("i_P0 alpha != 0", bool(interior_product(g.P[0], alpha)))
        sol = solve_alpha_kernel(max_degree)
        ev.note(f"{sol.unknowns} unknowns, kernel dimension {sol.dimension}")
        ev.expect_equal("kernel dimension", sol.dimension, sol.expected_dimension)
        ev.expect("general solution lies in span(D, Db)", not sol.residuals, sol.residuals[:1])

    return run_check(
        "kernel-theorem",
        f"ker(alpha) = span(D_a, Db^a): i_D alpha = 0 and every ansatz solution (x-degree <= {max_degree}) lies in the span",
        body,
    )


def verify_nondegeneracy() -> CheckReport:
    def body(ev: Evidence):
        g = build_generators()
        da = dalpha()
        ev.expect_equal("d alpha", da, dalpha_display())
        shown = contraction_displays()
        for name, f in (("D1", g.D[0]), ("D2", g.D[1]), ("Db1", g.Db[0]), ("Db2", g.Db[1])):
            ev.expect_equal(f"i_{name} d alpha", interior_product(f, da), shown[name])
        check = nondegeneracy_check(da, list(g.D + g.Db))
        ev.expect("body rank of i_D dalpha is full", check.full, check.witness)
        ev.expect("alpha degenerate on D", not nondegeneracy_check(polycontact_form(), list(g.D)).full)

    return run_check("nondegeneracy", "d(alpha) = 2i dth sigma dthb d/dx is non-degenerate on span(D, Db)", body)


def verify_invariance(kind: str) -> CheckReport:
    statements = {
        "susy": "alpha is invariant under SUSY shifts with formal odd parameters",
        "translation": "alpha is invariant under space-time translations with formal shifts",
        "lorentz": "alpha is invariant under the rational z-boost paired with spinor matrix diag(2, 1/2)",
        "r_phase": "alpha is invariant under the R-phase th -> u th, thb -> thb/u",
    }
    if kind not in statements:
        raise ValueError(f"unknown invariance kind {kind!r}")

    def body(ev: Evidence):
        if kind == "susy":
            phi = susy_map()
            sub = phi.substitution()
            for name, want in susy_fiber_display().items():
                ev.expect_equal(f"induced {name}", sub[name], want)
        elif kind == "translation":
            phi = translation_map()
        elif kind == "lorentz":
            lam, spin = boost_pair()
            residual = intertwining_residual(lam, spin)
            ev.expect("intertwining precheck", not any(v for m in residual for row in m for v in row), residual)
            phi = lorentz_map(lam, spin)
        else:
            phi = r_phase_map()
        alpha = polycontact_form()
        ev.expect_equal("transformed alpha", transform_vector_valued(phi, alpha), alpha)
        ev.expect_equal("pullback commutes with d", _pull_d(phi, alpha), _d_pull(phi, alpha))

    return run_check(f"invariance-{kind.replace('_', '')}", statements[kind], body)


def _pull_d(phi, form):
    from .calculus import pullback

    return [pullback(phi, _d_scalar(phi.target, c)) for c in form.components.values()]


def _d_pull(phi, form):
    from .calculus import pullback

    return [_d_scalar(phi.source, pullback(phi, c)) for c in form.components.values()]


def verify_strict_contact_fields() -> CheckReport:
    def body(ev: Evidence):
        g = build_generators()
        alpha = polycontact_form()
        for name, f in g.named().items():
            if name.startswith(("Q", "P", "R")):
                ev.expect_zero(f"L_{name} alpha", lie_derivative(f, alpha))
        chart = build_chart()
        control = VectorField(chart, {"th1": context().gen("th1")})
        ev.expect("L_(th1 d/dth1) alpha != 0", bool(lie_derivative(control, alpha)))

    return run_check("strict-contact", "Q_a, Qb^a, P_mu and R preserve alpha; th1 d/dth1 does not", body)


def verify_reeb(max_degree: int = 1) -> CheckReport:
    def body(ev: Evidence):
        g = build_generators()
        for sol in reeb_solve(max_degree):
            ev.expect_equal(f"solution dimension for mu={sol.mu}", sol.dimension, 1)
            ev.expect_equal(f"Reeb field {sol.mu}", sol.field, g.P[sol.mu])

    return run_check("reeb", "the unique fields with i_P alpha = d/dx^mu, i_P dalpha = 0 are P_mu = d/dx^mu", body)


def algebra_table() -> list[tuple[str, VectorField, VectorField]]:
    """(label, computed bracket, expected) for every tabulated identity."""
    g = build_generators()
    chart = build_chart()
    zero = VectorField(chart, {})

    def sigma_p(a, b, factor):
        out = zero
        for mu in range(4):
            if SIGMA[mu][a][b]:
                out = out + g.P[mu] * (SIGMA[mu][a][b] * factor)
        return out

    rows = []
    for a in range(2):
        for b in range(2):
            rows.append((f"[Q{a+1},Qb{b+1}]", graded_commutator(g.Q[a], g.Qb[b]), sigma_p(a, b, 2 * I)))
            rows.append((f"[D{a+1},Db{b+1}]", graded_commutator(g.D[a], g.Db[b]), sigma_p(a, b, -2 * I)))
            rows.append((
                f"[Q{a+1},Qb{b+1}] + [D{a+1},Db{b+1}]",
                graded_commutator(g.Q[a], g.Qb[b]) + graded_commutator(g.D[a], g.Db[b]),
                zero,
            ))
            rows.append((f"[Q{a+1},Q{b+1}]", graded_commutator(g.Q[a], g.Q[b]), zero))
            rows.append((f"[Qb{a+1},Qb{b+1}]", graded_commutator(g.Qb[a], g.Qb[b]), zero))
            for left_name, left in (("Q", g.Q[a]), ("Qb", g.Qb[a])):
                for right_name, right in (("D", g.D[b]), ("Db", g.Db[b])):
                    rows.append((f"[{left_name}{a+1},{right_name}{b+1}]", graded_commutator(left, right), zero))
    for a in range(2):
        for mu in range(4):
            rows.append((f"[Q{a+1},P{mu}]", graded_commutator(g.Q[a], g.P[mu]), zero))
            rows.append((f"[Qb{a+1},P{mu}]", graded_commutator(g.Qb[a], g.P[mu]), zero))
        rows.append((f"[R,Q{a+1}]", graded_commutator(g.R, g.Q[a]), g.Q[a] * I))
        rows.append((f"[R,Qb{a+1}]", graded_commutator(g.R, g.Qb[a]), g.Qb[a] * (-I)))
    for mu in range(4):
        rows.append((f"[R,P{mu}]", graded_commutator(g.R, g.P[mu]), zero))
    rows.append(("[R,R]", graded_commutator(g.R, g.R), zero))
    return rows


def verify_algebra_table() -> CheckReport:
    def body(ev: Evidence):
        ev.expect("sigma anticommutators", not check_sigma_table(), check_sigma_table())
        for label, got, want in algebra_table():
            ev.expect_equal(label, got, want)

    return run_check(
        "algebra-table",
        "supertranslation, covariant-derivative and R-symmetry bracket tables hold exactly",
        body,
    )


def random_field(rng, chart: Optional[Chart] = None, terms: int = 4) -> VectorField:
    """A random field on the SUSY chart with small Gaussian-integer coefficients."""
    chart = chart or build_chart()
    monos = [o * xm for xm in x_monomials(1) for o in odd_monomials()]
    comps = {}
    for z in chart.base_names:
        value = context().zero
        for _ in range(rng.randint(0, terms)):
            value = value + monos[rng.randrange(len(monos))] * qi((rng.randint(-3, 3), rng.randint(-3, 3)))
        comps[z] = value
    return VectorField(chart, comps)


def verify_decomposition(samples: int = 50, seed: int = 4) -> CheckReport:
    import random

    def body(ev: Evidence):
        g = build_generators()
        alpha, da = polycontact_form(), dalpha()
        for name, (want_d, want_p) in decomposition_displays().items():
            got_d, got_p = decompose(g.named()[name])
            ev.expect_equal(f"{name} along D", got_d, want_d)
            ev.expect_equal(f"{name} along P", got_p, want_p)
        for mu in range(4):
            got_d, got_p = decompose(g.P[mu])
            ev.expect("P{mu} lies along P".format(mu=mu), not got_d and got_p == g.P[mu], got_d)
        rng = random.Random(seed)
        for k in range(samples):
            f1, f2 = random_field(rng), random_field(rng)
            c = qi((rng.randint(-4, 4), rng.randint(-4, 4)))
            d1, p1 = decompose(f1)
            d2, p2 = decompose(f2)
            ds, ps = decompose(f1 + f2 * c)
            ev.expect(f"linearity sample {k}", ds == d1 + d2 * c and ps == p1 + p2 * c, f1)
            ev.expect(f"sum sample {k}", d1 + p1 == f1, f1)
            ev.expect(f"idempotent on D part {k}", decompose(d1) == (d1, VectorField(d1.chart, {})), d1)
            ev.expect(f"idempotent on P part {k}", decompose(p1) == (VectorField(p1.chart, {}), p1), p1)
            ev.expect_zero(f"i_(X_D) alpha {k}", interior_product(d1, alpha))
            ev.expect_zero(f"i_(X_P) dalpha {k}", interior_product(p1, da))

    return run_check(
        "decomposition",
        f"Vect = ker(alpha) + ker(dalpha): displayed splits of Q, Qb, R; linear and idempotent on {samples} random fields",
        body,
    )


def verify_maurer_cartan() -> CheckReport:
    def body(ev: Evidence):
        frame = coset_frame()
        mc = maurer_cartan(frame)
        ev.expect_equal("series length (dA, ad_A dA)", len(mc.terms), 2)
        A = frame.generator()
        ev.expect_zero("ad_A^2 dA", graded_commutator(A, mc.terms[1]))
        ev.expect_equal("realized i*Omega", mc.i_omega, maurer_cartan_display(frame))
        ev.expect_equal("translation part", mc.translation, polycontact_form())
        ev.expect_equal(
            "translation part rendering", mc.translation.to_plain(), polycontact_form().to_plain()
        )
        ev.expect_equal("spinor part", list(mc.spinor), diffs(TH))
        ev.expect_equal("antispinor part", list(mc.antispinor), diffs(THB))
        flat = zero_spinors(mc.i_omega)
        ev.expect_equal("flat limit", flat, zero_spinors(maurer_cartan_display(frame)))

    return run_check(
        "maurer-cartan",
        "the terminating Hadamard series for the coset Maurer-Cartan form has translation part alpha",
        body,
    )
