import json
from fractions import Fraction
from pathlib import Path
from types import SimpleNamespace

from hypothesis import strategies as st

from nordenlie import curvature as cv
from nordenlie import family as fm

DATA_DIR = Path(__file__).parent / "data"
GOLDEN_DIR = Path(__file__).parent / "golden"

# verdict lines appended by the acceptance suite, echoed after the run
ACCEPTANCE_VERDICTS: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_VERDICTS:
            terminalreporter.write_line(line)

# same draw ranges the verify harness uses
rationals = st.fractions(
    min_value=Fraction(-9), max_value=Fraction(9), max_denominator=3
)


def parameter_lists(n: int):
    return st.lists(rationals, min_size=4 * n, max_size=4 * n)


_STRUCTURES: dict[int, fm.AlmostNordenStructure] = {}


def structure_for(n: int) -> fm.AlmostNordenStructure:
    if n not in _STRUCTURES:
        _STRUCTURES[n] = fm.build_structure(n)
    return _STRUCTURES[n]


def pipeline(n: int, lam) -> SimpleNamespace:
    """Build one family member and compute everything the tests compare."""
    p = fm.ParameterVector.of(n, [Fraction(v) for v in lam])
    st_ = structure_for(n)
    C = fm.build_brackets(p)
    conn = fm.levi_civita_killing(C, st_.metric)
    F = cv.fundamental_tensor(st_.j_tensor, st_.metric, conn)
    theta = cv.lee_form(F, st_.metric_inv)
    R = cv.curvature_tensor(C, st_.metric, conn)
    ricci, tau = cv.ricci_and_scalar(R, st_.metric_inv)
    return SimpleNamespace(
        p=p,
        structure=st_,
        g=st_.metric,
        g_inv=st_.metric_inv,
        J=st_.j_tensor,
        C=C,
        conn=conn,
        F=F,
        theta=theta,
        R=R,
        ricci=ricci,
        tau=tau,
    )


def load_perturbation_catalog() -> dict:
    with open(DATA_DIR / "perturbation_catalog.json", "r", encoding="utf-8") as fh:
        return json.load(fh)
