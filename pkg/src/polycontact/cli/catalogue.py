"""The published verification catalogue, in report order."""

from __future__ import annotations

from typing import Callable

from .. import laws, polysymplectic, susy
from ..report import CheckReport

Runner = Callable[[int], CheckReport]

CATALOGUE: dict[str, Runner] = {
    "kernel-theorem": lambda xdeg: susy.verify_kernel_theorem(xdeg),
    "nondegeneracy": lambda xdeg: susy.verify_nondegeneracy(),
    "invariance-susy": lambda xdeg: susy.verify_invariance("susy"),
    "invariance-translation": lambda xdeg: susy.verify_invariance("translation"),
    "invariance-lorentz": lambda xdeg: susy.verify_invariance("lorentz"),
    "invariance-rphase": lambda xdeg: susy.verify_invariance("r_phase"),
    "strict-contact": lambda xdeg: susy.verify_strict_contact_fields(),
    "reeb": lambda xdeg: susy.verify_reeb(min(xdeg, 1)),
    "algebra-table": lambda xdeg: susy.verify_algebra_table(),
    "decomposition": lambda xdeg: susy.verify_decomposition(),
    "maurer-cartan": lambda xdeg: susy.verify_maurer_cartan(),
    "symplectize": lambda xdeg: polysymplectic.symplectize()[1],
    "cone": lambda xdeg: polysymplectic.cone()[1],
    "block-decomposition": lambda xdeg: polysymplectic.verify_block_decomposition(),
    "calculus-laws": lambda xdeg: laws.run_laws(),
}


class UnknownCheckError(KeyError):
    pass


def select(ids: list[str]) -> list[str]:
    """Resolve a selection (``all`` or check ids, comma or space separated) into catalogue order."""
    wanted: list[str] = []
    for item in ids:
        wanted.extend(p for p in item.split(",") if p)
    if not wanted:
        raise UnknownCheckError("no checks selected")
    if "all" in wanted:
        return list(CATALOGUE)
    unknown = [w for w in wanted if w not in CATALOGUE]
    if unknown:
        raise UnknownCheckError(f"unknown check id(s): {', '.join(unknown)}")
    return [c for c in CATALOGUE if c in wanted]


def run_checks(ids: list[str], xdeg: int = 2):
    """Yield reports in catalogue order."""
    for check_id in select(ids):
        report = CATALOGUE[check_id](xdeg)
        assert report.check_id == check_id, (report.check_id, check_id)
        yield report
