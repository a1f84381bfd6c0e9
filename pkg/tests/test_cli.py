import json
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polycontact.cli.catalogue import CATALOGUE
from polycontact.cli.corpus import EXAMPLES, display_corpus
from polycontact.cli.evaluate import EvaluationError, equivalent, evaluate_text
from polycontact.cli.grammar import (
    Apply,
    BinOp,
    Bracket,
    Diff,
    Exp,
    Frame,
    Imag,
    Interior,
    Lie,
    Name,
    Neg,
    Num,
    ParseError,
    Pow,
    parse_expression,
    to_source,
)
from polycontact.cli.main import main
from polycontact.cli.render import render
from polycontact.report import RECORD_FIELDS, CheckReport
from polycontact.scalars import I
from polycontact.susy import context


def test_parse_examples():
    node = parse_expression("dth1 * thb1")
    assert node == BinOp("*", Name("dth1"), Name("thb1"))
    assert evaluate_text("dth1 * thb1") == context().gen("dth1") * context().gen("thb1")
    assert isinstance(parse_expression("i_(D1, alpha)"), Interior)
    assert not evaluate_text("i_(D1, alpha)")
    assert isinstance(parse_expression("[Q1, Qb1]"), Bracket)
    assert render(evaluate_text("[Q1, Qb1]")) == "2*I*@x0 + 2*I*@x3"


def test_precedence():
    assert parse_expression("-x0^2*x1 + x2") == BinOp(
        "+", Neg(BinOp("*", Pow(Name("x0"), 2), Name("x1"))), Name("x2")
    )
    assert parse_expression("x0 - x1 - x2") == BinOp("-", BinOp("-", Name("x0"), Name("x1")), Name("x2"))
    assert parse_expression("t^-1") == Pow(Name("t"), -1)


@pytest.mark.parametrize(
    "text, line, column",
    [("2 x0", 1, 3), ("x0 +", 1, 5), ("x0 $ x1", 1, 4), ("i_(D1 alpha)", 1, 7), ("x0 *\n  (x1", 2, 6), ("x0^y", 1, 4)],
)
def test_parse_errors_carry_positions(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_expression(text)
    assert (info.value.line, info.value.column) == (line, column)


@pytest.mark.parametrize(
    "text, line, column",
    [("nope + x0", 1, 1), ("x0 + L_(Q1 + R, alpha)", 1, 6), ("@foo", 1, 1), ("exp(th1)", 1, 1), ("x0^-1", 1, 3)],
)
def test_evaluation_errors_carry_positions(text, line, column):
    with pytest.raises(EvaluationError) as info:
        evaluate_text(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_render_examples(alpha):
    assert render(context().zero) == "0"
    assert render(context().gen("dth1") * (2 * I)) == "2*I*dth1"
    latex = render(alpha, "latex")
    assert "dx^{\\mu}" in latex and "\\sigma^{\\mu}" in latex
    assert render(alpha) == alpha.to_plain()


def test_evaluator_features():
    ctx = context()
    assert evaluate_text("exp(2*l)*exp(-1*l)") == ctx.exp("l")
    assert evaluate_text("exp(l + th1*th2)") == ctx.exp("l") * (1 + ctx.gen("th1") * ctx.gen("th2"))
    assert evaluate_text("Q1(th1)") == 1
    assert evaluate_text("@x0(x0^2)") == ctx.gen("x0") * 2
    assert evaluate_text("d(dx0 + x1*dx2)") == ctx.gen("dx1") * ctx.gen("dx2")
    assert evaluate_text("1/2*x0") == ctx.gen("x0") * ctx.scalar(1) / 2
    assert equivalent(evaluate_text("L_(Q1, alpha)"), context().zero)


def test_corpus_round_trip():
    for name, value in display_corpus().items():
        text = render(value)
        assert equivalent(evaluate_text(text), value), name
    for text, shown in EXAMPLES.items():
        assert render(evaluate_text(text)) == shown


# -- AST round trip ------------------------------------------------------------------

NAMES = st.sampled_from(["x0", "th1", "thb2", "dx1", "dth2", "l", "r", "alpha", "Q1", "R", "t"])
FRAMES = st.sampled_from(["x0", "th1", "l"])


def _ast():
    leaves = st.one_of(
        st.integers(0, 20).map(Num), st.just(Imag()), NAMES.map(Name), FRAMES.map(Frame)
    )

    def extend(children):
        heads = st.one_of(NAMES.map(Name), FRAMES.map(Frame), st.builds(Bracket, children, children))
        return st.one_of(
            children.map(Neg),
            st.builds(BinOp, st.sampled_from("+-*/"), children, children),
            st.builds(Pow, children, st.integers(-3, 3)),
            children.map(Exp),
            children.map(Diff),
            st.builds(Interior, children, children),
            st.builds(Lie, children, children),
            st.builds(Bracket, children, children),
            st.builds(Apply, heads, children),
        )

    return st.recursive(leaves, extend, max_leaves=12)


@settings(max_examples=300, deadline=None)
@given(_ast())
def test_print_parse_identity(node):
    assert parse_expression(to_source(node)) == node


# -- command line ----------------------------------------------------------------------


def test_verify_single_check_structured(capsys):
    assert main(["verify", "reeb", "--format", "structured"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 1
    record = json.loads(lines[0])
    assert tuple(record) == RECORD_FIELDS
    assert record["check_id"] == "reeb" and record["status"] == "pass" and record["witness"] is None


def test_verify_unknown_id_is_usage_error(capsys):
    assert main(["verify", "bogus"]) == 2
    assert "bogus" in capsys.readouterr().err


def test_usage_errors_exit_2():
    with pytest.raises(SystemExit) as info:
        main(["verify"])
    assert info.value.code == 2
    assert main(["eval", "2 x0"]) == 2
    assert main(["show", "nothing"]) == 2


def test_verify_order_is_catalogue_order(capsys):
    assert main(["verify", "cone,nondegeneracy", "--format", "structured"]) == 0
    ids = [json.loads(l)["check_id"] for l in capsys.readouterr().out.splitlines()]
    assert ids == ["nondegeneracy", "cone"]


def test_structured_output_is_deterministic(capsys):
    outs = []
    for _ in range(2):
        main(["verify", "algebra-table,maurer-cartan", "--format", "structured"])
        records = [json.loads(l) for l in capsys.readouterr().out.splitlines()]
        for r in records:
            r.pop("elapsed_ms")
        outs.append(records)
    assert outs[0] == outs[1]


def test_failing_report_needs_witness():
    with pytest.raises(ValueError):
        CheckReport("x", "claim", "fail")
    assert CheckReport("x", "claim", "fail", "w").to_record()["witness"] == "w"


def test_show_latex(capsys):
    assert main(["show", "alpha", "--latex"]) == 0
    assert "\\sigma^{\\mu}" in capsys.readouterr().out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "polycontact", "eval", "[Q1, Qb1]"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "2*I*@x0 + 2*I*@x3"


def test_catalogue_has_fifteen_entries():
    assert len(CATALOGUE) == 15
