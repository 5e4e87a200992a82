import pathlib

import pytest

from causalupd.lang import ELP, lit, parse_sequence
from causalupd.solver import set_atom_cap

DATA = pathlib.Path(__file__).parent / "data"


def load(*names, mode=ELP):
    """Sequence built from data files; a single file may hold several programs."""
    return parse_sequence([(DATA / n).read_text() for n in names], mode, sources=list(names))


def lits(*texts):
    return frozenset(lit(t) for t in texts)


@pytest.fixture(autouse=True)
def _default_cap():
    yield
    set_atom_cap(None)


def pytest_terminal_summary(terminalreporter):
    # acceptance lines are collected by tests/test_acceptance.py while it runs
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        ok, detail = RESULTS[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
