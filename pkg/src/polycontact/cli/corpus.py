"""Displayed identities shipped as a round-trip corpus for the expression language."""

from __future__ import annotations

from .. import polysymplectic, susy
from ..calculus import VectorValuedForm

# expression strings from the command-line contract, with their expected plain rendering
EXAMPLES = {
    "dth1 * thb1": "thb1*dth1",
    "i_(D1, alpha)": "0",
    "[Q1, Qb1]": "2*I*@x0 + 2*I*@x3",
    "2*I*dth1": "2*I*dth1",
}


def display_corpus() -> dict:
    """Name -> value for every displayed object the verification layer reproduces."""
    g = susy.build_generators()
    out = {
        "alpha": susy.polycontact_form(),
        "dalpha": susy.dalpha_display(),
        "omega": polysymplectic.symplectic_display(),
        "omega-leibniz": polysymplectic.symplectic_leibniz(),
        "varpi": polysymplectic.cone_form(),
        "maurer-cartan": susy.maurer_cartan_display(),
        "maurer-cartan-flat": susy.zero_spinors(susy.maurer_cartan_display()),
    }
    out.update(g.named())
    for name, form in susy.contraction_displays().items():
        out[f"i_{name}(dalpha)"] = form
    for name, (along_d, along_p) in susy.decomposition_displays().items():
        out[f"{name}|D"] = along_d
        out[f"{name}|P"] = along_p
    for label, _, want in susy.algebra_table():
        out[label] = want
    phi = susy.susy_map()
    for name, image in phi.forward.items():
        out[f"susy:{name}"] = image
    for name, image in susy.susy_fiber_display().items():
        out[f"susy:{name}"] = image
    for mu in range(4):
        out[f"alpha^{mu}"] = susy.alpha_component(mu)
    return out
