"""One block per acceptance criterion; the terminal summary prints a PASS/FAIL line for each."""

import json
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polycontact import laws, polysymplectic, susy
from polycontact.calculus import (
    exterior_derivative,
    graded_commutator,
    interior_product,
    lie_derivative,
    nondegeneracy_check,
    pullback,
    transform_vector_valued,
)
from polycontact.cli.corpus import display_corpus
from polycontact.cli.evaluate import equivalent, evaluate_text
from polycontact.cli.render import render
from polycontact.report import RECORD_FIELDS
from polycontact.scalars import I


def crit(number, title):
    return pytest.mark.criterion(number, title)


# 1 ------------------------------------------------------------------------------------

K1 = crit(1, "kernel of alpha is span{D, Db}")


@K1
def test_kernel_spinor_derivatives_annihilate(g, alpha):
    for f in g.D + g.Db:
        assert not interior_product(f, alpha)


@K1
def test_kernel_general_solution_xdeg2():
    sol = susy.solve_alpha_kernel(2)
    assert sol.dimension == sol.expected_dimension == 960
    assert sol.residuals == []


@K1
def test_kernel_report():
    assert susy.verify_kernel_theorem(2).passed


# 2 ------------------------------------------------------------------------------------

K2 = crit(2, "dalpha display and non-degeneracy")


@K2
def test_dalpha_display(alpha):
    assert exterior_derivative(alpha) == susy.dalpha_display()


@K2
def test_contraction_displays(g):
    shown = susy.contraction_displays()
    da = susy.dalpha()
    for a in range(2):
        assert interior_product(g.D[a], da) == shown[f"D{a + 1}"]
        assert interior_product(g.Db[a], da) == shown[f"Db{a + 1}"]


@K2
def test_body_rank_full(g):
    assert nondegeneracy_check(susy.dalpha(), g.D + g.Db).full
    assert susy.verify_nondegeneracy().passed


# 3 ------------------------------------------------------------------------------------

K3 = crit(3, "Maurer-Cartan series and translation part")


@K3
def test_hadamard_terminates():
    mc = susy.maurer_cartan()
    assert len(mc.terms) == 2
    A = mc.frame.generator()
    assert not graded_commutator(A, mc.terms[-1])


@K3
def test_mc_display_and_translation(alpha):
    mc = susy.maurer_cartan()
    assert mc.i_omega == susy.maurer_cartan_display()
    assert render(mc.translation) == render(alpha)
    assert susy.verify_maurer_cartan().passed


# 4 ------------------------------------------------------------------------------------

K4 = crit(4, "invariance of alpha")


@K4
@pytest.mark.parametrize("kind", ["susy", "translation", "r_phase", "lorentz"])
def test_invariance(kind):
    assert susy.verify_invariance(kind).passed


@K4
def test_boost_pair_intertwines_and_preserves(alpha):
    lam, spin = susy.boost_pair()
    residual = susy.intertwining_residual(lam, spin)
    assert not any(v for m in residual for row in m for v in row)
    assert transform_vector_valued(susy.lorentz_map(lam, spin), alpha) == alpha


# 5 ------------------------------------------------------------------------------------

K5 = crit(5, "strict contact fields")


@K5
def test_strict_contact(g, alpha):
    for f in (*g.Q, *g.Qb, *g.P, g.R):
        assert not lie_derivative(f, alpha)
    chart = susy.build_chart()
    control = susy.context().gen("th1") * chart.partial("th1")
    assert lie_derivative(control, alpha)
    assert susy.verify_strict_contact_fields().passed


# 6 ------------------------------------------------------------------------------------


@crit(6, "Reeb fields are the translations")
def test_reeb(g):
    sols = susy.reeb_solve(1)
    assert [s.dimension for s in sols] == [1, 1, 1, 1]
    assert [s.field for s in sols] == list(g.P)
    assert susy.verify_reeb(1).passed


# 7 ------------------------------------------------------------------------------------


@crit(7, "bracket table")
def test_algebra_table():
    rows = susy.algebra_table()
    assert len(rows) >= 20
    for label, got, want in rows:
        assert got == want, label
    assert susy.verify_algebra_table().passed


# 8 ------------------------------------------------------------------------------------


@crit(8, "decomposition into D-part and translation part")
def test_decomposition():
    named = susy.build_generators().named()
    for name, (d_part, p_part) in susy.decomposition_displays().items():
        assert susy.decompose(named[name]) == (d_part, p_part), name
    assert susy.verify_decomposition(samples=50).passed


# 9 ------------------------------------------------------------------------------------


@crit(9, "polysymplectization")
def test_polysymplectization():
    omega, report = polysymplectic.symplectize()
    assert report.passed, report.witness
    assert omega == polysymplectic.symplectic_display()
    assert polysymplectic.verify_block_decomposition().passed


# 10 -----------------------------------------------------------------------------------


@crit(10, "cone dilation")
def test_cone():
    varpi, report = polysymplectic.cone()
    t = susy.context().gen("t")
    assert pullback(polysymplectic.dilation(), varpi) == (t * t) * varpi
    assert not exterior_derivative(varpi)
    assert report.passed


# 11 -----------------------------------------------------------------------------------

LAW_CASES = 200
_RUNS: dict = {}


@crit(11, "calculus laws, 200+ cases each")
@pytest.mark.parametrize("name", sorted(laws.LAWS))
def test_law_200_cases(name):
    _RUNS[name] = 0

    @settings(max_examples=LAW_CASES, deadline=None, database=None)
    @given(rng=st.randoms(use_true_random=False))
    def run(rng):
        _RUNS[name] += 1
        witness = laws.LAWS[name](rng)
        assert witness is None, witness

    run()
    assert _RUNS[name] >= LAW_CASES


@crit(11, "calculus laws, 200+ cases each")
def test_product_oracle_degree4():
    assert laws.product_oracle_mismatches(generators=8, max_degree=4) == []


# 12 -----------------------------------------------------------------------------------

K12 = crit(12, "command line contract")


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "polycontact", *args], capture_output=True, text=True, check=False)


@K12
def test_verify_all_text():
    proc = _cli("verify", "all")
    assert proc.returncode == 0, proc.stdout + proc.stderr
    lines = [l for l in proc.stdout.splitlines() if l.startswith("[")]
    assert len(lines) == 15
    assert all(l.startswith("[PASS]") for l in lines)


@K12
def test_verify_all_structured():
    proc = _cli("verify", "all", "--format", "structured")
    assert proc.returncode == 0
    records = [json.loads(l) for l in proc.stdout.splitlines()]
    assert len(records) == 15
    for r in records:
        assert tuple(r) == RECORD_FIELDS
        assert r["status"] == "pass" and r["witness"] is None
        assert isinstance(r["elapsed_ms"], (int, float))


@K12
def test_display_corpus_round_trip():
    corpus = display_corpus()
    assert corpus
    for name, value in corpus.items():
        assert equivalent(evaluate_text(render(value)), value), name
