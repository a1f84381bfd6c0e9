from polycontact.algebra import EVEN
from polycontact.calculus import SuperMap, exterior_derivative, interior_product, nondegeneracy_check, pullback
from polycontact.polysymplectic import (
    cone,
    cone_form,
    dilation,
    lift,
    lift_field,
    symplectic_display,
    symplectic_form,
    symplectic_leibniz,
    symplectize,
    verify_block_decomposition,
)
from polycontact.susy import cone_chart, context, dalpha, lambda_chart

from helpers import symbolic_rank


def test_symplectic_form_properties():
    omega = symplectic_form()
    assert omega.parity is EVEN
    assert not exterior_derivative(omega)
    assert omega == symplectic_leibniz() == symplectic_display()


def test_lambda_zero_recovers_dalpha():
    flat = symplectic_form().substitute({"l": 0, "dl": 0})
    assert flat == lift(dalpha(), lambda_chart())


def test_symplectic_nondegenerate_and_rank_oracle():
    from polycontact.calculus import contraction_matrix

    frame = lambda_chart().frame()
    assert nondegeneracy_check(symplectic_form(), frame).full
    matrix, _ = contraction_matrix(symplectic_form(), frame)
    assert symbolic_rank(matrix) == len(frame)


def test_cone_dilation():
    varpi = cone_form()
    t = context().gen("t")
    assert not exterior_derivative(varpi)
    assert pullback(dilation(), varpi) == (t * t) * varpi
    chart = cone_chart()
    identity = SuperMap(chart, chart, {"r": context().gen("r")}, {"r": context().gen("r")})
    assert pullback(identity, varpi) == varpi


def test_block_examples(g, alpha):
    chart = lambda_chart()
    dl = context().gen("dl")
    assert not interior_product(lift_field(g.D[0], chart), lift(alpha, chart))
    assert not interior_product(lift_field(g.P[1], chart), lift(dalpha(), chart))
    assert interior_product(chart.partial("l"), dl) == 1


def test_reports_pass():
    assert symplectize()[1].passed
    assert cone()[1].passed
    assert verify_block_decomposition().passed
