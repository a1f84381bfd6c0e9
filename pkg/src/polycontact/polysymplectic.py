"""Symplectization of the polycontact form and its cone version."""

from __future__ import annotations

from functools import lru_cache

from .algebra import EVEN
from .calculus import (
    SuperMap,
    VectorField,
    VectorValuedForm,
    exterior_derivative,
    interior_product,
    nondegeneracy_check,
    pullback,
    transform_vector_valued,
)
from .report import CheckReport, Evidence, run_check
from .scalars import I
from .susy import (
    TH,
    THB,
    X,
    build_generators,
    cone_chart,
    context,
    dalpha,
    diffs,
    gens,
    lambda_chart,
    polycontact_form,
    sandwich,
)


def lift(form: VectorValuedForm, chart) -> VectorValuedForm:
    """Pull back along the projection that forgets the extra coordinate."""
    return form.with_chart(chart)


def lift_field(field: VectorField, chart) -> VectorField:
    return field.with_chart(chart)


@lru_cache(maxsize=None)
def symplectic_form() -> VectorValuedForm:
    """``d(e^l pi*alpha)`` on the lambda chart."""
    chart = lambda_chart()
    return exterior_derivative(context().exp("l") * lift(polycontact_form(), chart))


def symplectic_leibniz() -> VectorValuedForm:
    """``e^l (dl pi*alpha + pi*dalpha)``."""
    chart = lambda_chart()
    ctx = context()
    dl = ctx.gen("dl")
    alpha, da = lift(polycontact_form(), chart), lift(dalpha(), chart)
    return ctx.exp("l") * ((dl * alpha) + da)


def symplectic_display() -> VectorValuedForm:
    """Coordinate expression of the symplectic form, built from the sigma table."""
    ctx = context()
    th, thb, dx, dth, dthb = gens(TH), gens(THB), diffs(X), diffs(TH), diffs(THB)
    dl, el = ctx.gen("dl"), ctx.exp("l")
    comps = {}
    for mu in range(4):
        inner = (
            dl * dx[mu]
            + dl * (sandwich(th, mu, dthb) + sandwich(dth, mu, thb)) * I
            + sandwich(dth, mu, dthb) * (2 * I)
        )
        comps[X[mu]] = el * inner
    return VectorValuedForm(lambda_chart(), comps)


def symplectic_frame() -> list[VectorField]:
    chart = lambda_chart()
    return chart.frame()


@lru_cache(maxsize=None)
def cone_form() -> VectorValuedForm:
    """``d(r^2 alpha)`` on the cone chart."""
    chart = cone_chart()
    r = context().gen("r")
    return exterior_derivative((r * r) * lift(polycontact_form(), chart))


def dilation(parameter: str = "t") -> SuperMap:
    chart = cone_chart()
    ctx = context()
    r, t = ctx.gen("r"), ctx.gen(parameter)
    return SuperMap(chart, chart, {"r": t * r}, {"r": t ** -1 * r}, name="dilation")


def symplectize() -> tuple[VectorValuedForm, CheckReport]:
    omega = symplectic_form()

    def body(ev: Evidence):
        ev.expect_equal("parity of omega", omega.parity, EVEN)
        ev.expect_zero("d omega", exterior_derivative(omega))
        ev.expect_equal("Leibniz form", omega, symplectic_leibniz())
        ev.expect_equal("coordinate display", omega, symplectic_display())
        check = nondegeneracy_check(omega, symplectic_frame())
        ev.expect("body rank on the full frame", check.full, check.witness)
        flat = omega.substitute({"l": 0, "dl": 0})
        ev.expect_equal("l = 0, dl = 0 recovers pi*dalpha", flat, lift(dalpha(), lambda_chart()))

    report = run_check(
        "symplectize",
        "omega = d(e^l pi*alpha) is even, closed, equal to its coordinate display and non-degenerate",
        body,
    )
    return omega, report


def cone() -> tuple[VectorValuedForm, CheckReport]:
    varpi = cone_form()

    def body(ev: Evidence):
        ctx = context()
        t = ctx.gen("t")
        ev.expect_equal("parity of varpi", varpi.parity, EVEN)
        ev.expect_zero("d varpi", exterior_derivative(varpi))
        phi = dilation()
        ev.expect_equal("Phi_t* varpi", pullback(phi, varpi), (t * t) * varpi)
        ev.expect_equal("Phi_t transform", transform_vector_valued(phi, varpi), (t * t) * varpi)
        check = nondegeneracy_check(varpi, cone_chart().frame())
        ev.expect("body rank on the full frame", check.full, check.witness)

    report = run_check("cone", "varpi = d(r^2 alpha) is closed, non-degenerate and Phi_t* varpi = t^2 varpi", body)
    return varpi, report


def verify_block_decomposition() -> CheckReport:
    def body(ev: Evidence):
        chart = lambda_chart()
        g = build_generators()
        block_d = [lift_field(f, chart) for f in g.D + g.Db]
        block_p = [lift_field(f, chart) for f in g.P]
        block_l = [chart.partial("l")]
        alpha, da = lift(polycontact_form(), chart), lift(dalpha(), chart)
        dl = context().gen("dl")
        for k, f in enumerate(block_d):
            ev.expect_zero(f"pi*alpha on D-block {k}", interior_product(f, alpha))
        for k, f in enumerate(block_p):
            ev.expect_zero(f"pi*dalpha on P-block {k}", interior_product(f, da))
        for k, f in enumerate(block_d + block_p):
            ev.expect_zero(f"dl on block {k}", interior_product(f, dl))
        ev.expect_equal("i_(d/dl) dl", interior_product(block_l[0], dl), context().one)
        for label, form, block in (
            ("pi*alpha on P-block", alpha, block_p),
            ("pi*dalpha on D-block", da, block_d),
            ("dl on l-block", dl, block_l),
        ):
            check = nondegeneracy_check(form, block)
            ev.expect(f"{label} non-degenerate", check.full, check.witness)

    return run_check(
        "block-decomposition",
        "TM = ker(alpha) + ker(dalpha) + R: alpha, dalpha and dl pair non-degenerately with their blocks",
        body,
    )
