import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polycontact.algebra import EVEN, ODD
from polycontact.calculus import (
    VectorField,
    VectorValuedForm,
    apply_field,
    exterior_derivative,
    interior_product,
    lie_derivative,
    nondegeneracy_check,
    pullback,
    transform_vector_valued,
)
from polycontact.linalg import nullspace
from polycontact.scalars import I, ONE, qi
from polycontact.susy import (
    SIGMA,
    TH,
    THB,
    X,
    PreconditionError,
    ansatz_basis,
    boost_pair,
    build_chart,
    check_sigma_table,
    context,
    coset_frame,
    dalpha,
    dalpha_display,
    decompose,
    diffs,
    gens,
    lorentz_map,
    maurer_cartan,
    maurer_cartan_display,
    polycontact_form,
    r_phase_map,
    reeb_solve,
    solve_alpha_kernel,
    susy_map,
    translation_map,
    zero_spinors,
    _flatten,
)

from helpers import symbolic_rank


def test_chart_parities():
    ctx = context()
    assert ctx["dx0"].parity is ODD
    assert ctx["dth1"].parity is EVEN
    assert build_chart().dimension == (4, 4)


def test_sigma_table():
    assert SIGMA[0] == ((ONE, 0 * ONE), (0 * ONE, ONE))
    assert check_sigma_table() == []


def test_susy_map_examples():
    phi = susy_map()
    th, eps = gens(TH), gens(("eps1", "eps2"))
    assert phi.forward["th1"] == th[0] + eps[0]
    assert phi.forward["th2"] == th[1] + eps[1]
    assert not phi.round_trip_residual()
    dx, dth, dthb = diffs(X), diffs(TH), diffs(THB)
    epsb = gens(("epsb1", "epsb2"))
    # dx'^0: sigma^0 is the identity, so the display reads dx0 - i(dth^a epsb_a + eps^a dthb_a)
    want = dx[0] - (dth[0] * epsb[0] + dth[1] * epsb[1] + eps[0] * dthb[0] + eps[1] * dthb[1]) * I
    assert phi.substitution()["dx0"] == want


def test_generator_examples(g):
    ctx = context()
    for a, th_a in enumerate(TH):
        for b, th_b in enumerate(TH):
            assert g.Q[a](ctx.gen(th_b)) == (1 if a == b else 0)
    thb = gens(THB)
    for a in range(2):
        for mu in range(4):
            want = sum((thb[b] * SIGMA[mu][a][b] for b in range(2)), ctx.zero) * (-I)
            assert g.D[a](ctx.gen(X[mu])) == want
    for name in TH:
        assert g.R(ctx.gen(name)) == ctx.gen(name) * (-I)
    for f in g.Q + g.Qb + g.D + g.Db:
        assert f.parity is ODD
    assert g.R.parity is EVEN and all(p.parity is EVEN for p in g.P)


def test_alpha_flat_limit_and_nowhere_vanishing(alpha):
    flat = zero_spinors(alpha)
    chart = build_chart()
    assert flat == VectorValuedForm(chart, {x: context().gen("d" + x) for x in X})
    from polycontact.calculus import contraction_matrix

    matrix, _ = contraction_matrix(alpha, chart.frame())
    assert any(e for row in matrix for e in row)
    assert alpha.parity is ODD


def _superfield(rng):
    ctx = context()
    out = ctx.zero
    names = X + TH + THB
    for _ in range(rng.randint(1, 5)):
        m = ctx.scalar(qi((rng.randint(-3, 3), rng.randint(-3, 3))))
        for n in names:
            if rng.random() < 0.35:
                m = m * ctx.gen(n)
        out = out + m
    return out


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False))
def test_alpha_is_d_minus_covariant_part(alpha, g, rng):
    f = _superfield(rng)
    chart = build_chart()
    dth, dthb = diffs(TH), diffs(THB)
    lhs = apply_field(VectorField(chart, alpha.components), f)
    rhs = exterior_derivative(f, chart)
    for a in range(2):
        rhs = rhs - dth[a] * g.D[a](f) - dthb[a] * g.Db[a](f)
    assert lhs == rhs


def test_kernel_examples(g, alpha):
    for f in g.D + g.Db:
        assert not interior_product(f, alpha)
    assert interior_product(g.P[0], alpha) == VectorValuedForm(build_chart(), {"x0": context().one})


def test_kernel_solution_small_degree_against_dense_oracle(alpha):
    """Kernel dimension at x-degree 0 from a dense elimination of the same system."""
    basis = ansatz_basis(0)
    images = [_flatten("a", interior_product(b, alpha)) for b in basis]
    keys = sorted({k for im in images for k in im}, key=repr)
    dense = [[im.get(k, 0 * ONE) for im in images] for k in keys]
    assert len(nullspace(dense, len(basis))) == 4 * 16
    sol = solve_alpha_kernel(0)
    assert sol.dimension == sol.expected_dimension == 64
    assert not sol.residuals


def test_dalpha_display_and_contractions(g):
    da = dalpha()
    assert da == dalpha_display()
    assert da.parity is EVEN
    chart = build_chart()
    dth, dthb = diffs(TH), diffs(THB)
    # D_1 against d(alpha) on the x0 leg: -2i dthb_1 (sigma^0 = identity)
    assert interior_product(g.D[0], da).component("x0") == dthb[0] * (-2 * I)
    assert interior_product(g.Db[1], da).component("x0") == dth[1] * (-2 * I)
    # x2 leg of D_1: sigma^2_{12} = -i, so -2i * (-i) dthb_2 = -2 dthb_2
    assert interior_product(g.D[0], da).component("x2") == dthb[1] * (-2)


def test_nondegeneracy_examples(g, alpha):
    da = dalpha()
    check = nondegeneracy_check(da, list(g.D + g.Db))
    assert check.full and check.rank == 4
    bad = nondegeneracy_check(alpha, list(g.D))
    assert not bad and bad.witness is not None and bad.rank == 0


def test_nondegeneracy_rank_against_sympy(g):
    from polycontact.calculus import contraction_matrix

    matrix, _ = contraction_matrix(dalpha(), list(g.D + g.Db))
    assert symbolic_rank(matrix) == 4


@pytest.mark.parametrize("make", [susy_map, translation_map, r_phase_map, lambda: lorentz_map(*boost_pair())])
def test_invariance_and_pullback_commutes_with_d(make, alpha):
    phi = make()
    chart = build_chart()
    assert transform_vector_valued(phi, alpha) == alpha
    rng = random.Random(3)
    for _ in range(5):
        f = _superfield(rng) * context().gen("dth1")
        assert pullback(phi, exterior_derivative(f, chart)) == exterior_derivative(pullback(phi, f), chart)


def test_lorentz_precheck_rejects_unpaired_boost():
    lam, _ = boost_pair()
    identity = ((ONE, 0 * ONE), (0 * ONE, ONE))
    with pytest.raises(PreconditionError):
        lorentz_map(lam, identity)


def test_x_only_boost_breaks_invariance(alpha):
    """Boosting x without rotating the spinors does not preserve alpha."""
    lam, spin = boost_pair()
    phi = lorentz_map(lam, spin)
    chart = build_chart()
    from polycontact.calculus import SuperMap

    x_only = SuperMap(chart, chart, {k: v for k, v in phi.forward.items() if k in X},
                      {k: v for k, v in phi.inverse.items() if k in X})
    assert transform_vector_valued(x_only, alpha) != alpha


def test_strict_contact_examples(g, alpha):
    assert not lie_derivative(g.Q[0], alpha)
    assert not lie_derivative(g.P[0], alpha)
    control = VectorField(build_chart(), {"th1": context().gen("th1")})
    assert lie_derivative(control, alpha)


def test_reeb_solution(g, alpha):
    solutions = reeb_solve(1)
    for sol in solutions:
        assert sol.dimension == 1
        assert sol.field == g.P[sol.mu]
        assert not interior_product(sol.field, dalpha())
        assert interior_product(sol.field, alpha) == VectorValuedForm(build_chart(), {X[sol.mu]: context().one})


def test_brackets(g):
    from polycontact.calculus import graded_commutator as br

    assert br(g.Q[0], g.Qb[0]) == (g.P[0] + g.P[3]) * (2 * I)
    assert not br(g.Q[0], g.D[1])
    assert not br(g.R, g.R)
    for a in range(2):
        for b in range(2):
            assert not (br(g.Q[a], g.Qb[b]) + br(g.D[a], g.Db[b]))


def test_decomposition_examples(g):
    thb, th = gens(THB), gens(TH)
    d_part, p_part = decompose(g.Q[0])
    assert d_part == g.D[0]
    want = VectorField(build_chart(), {})
    for mu in range(4):
        want = want + (sum((thb[b] * SIGMA[mu][0][b] for b in range(2)), context().zero) * (2 * I)) * g.P[mu]
    assert p_part == want
    assert decompose(g.P[2]) == (VectorField(build_chart(), {}), g.P[2])
    r_d, r_p = decompose(g.R)
    assert r_d == (thb[0] * I) * g.Db[0] + (thb[1] * I) * g.Db[1] - (th[0] * I) * g.D[0] - (th[1] * I) * g.D[1]


def test_maurer_cartan_series():
    mc = maurer_cartan()
    assert len(mc.terms) == 2
    assert mc.translation == polycontact_form()
    assert mc.i_omega == maurer_cartan_display()
    flat = zero_spinors(mc.i_omega)
    frame = coset_frame()
    want = VectorField(flat.chart, {})
    for mu in range(4):
        want = want + context().gen("d" + X[mu]) * frame.translations[mu]
    for a in range(2):
        want = want + diffs(TH)[a] * frame.spinor[a] + diffs(THB)[a] * frame.antispinor[a]
    assert flat == want


def test_supercharge_realization_misses_factor_i():
    """Exponentiating i(x P + th Q + thb Qb) with the supercharges themselves as the frame.

    The translation part comes out as dx + (th sigma dthb + dth sigma thb),
    i.e. without the factor i in front of the spinor bilinears.
    """
    mc = maurer_cartan(coset_frame("literal"))
    th, thb, dx, dth, dthb = gens(TH), gens(THB), diffs(X), diffs(TH), diffs(THB)
    from polycontact.susy import sandwich

    want = VectorValuedForm(
        build_chart(),
        {X[mu]: dx[mu] + sandwich(th, mu, dthb) + sandwich(dth, mu, thb) for mu in range(4)},
    )
    assert mc.translation == want
    assert mc.translation != polycontact_form()
    assert list(mc.spinor) == dth and list(mc.antispinor) == dthb
