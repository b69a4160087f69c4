import json
from fractions import Fraction
from pathlib import Path

import pytest

from padic_lattices import PadicContext, from_generators

DERIVED = Path(__file__).parent / "fixtures" / "derived.json"


@pytest.fixture(scope="session")
def derived():
    return json.loads(DERIVED.read_text())


def lat(p, *gens):
    """Lattice spanned by ``gens`` (ints or "m/d" strings)."""
    gens = [[Fraction(x) for x in g] for g in gens]
    return from_generators(PadicContext(p), len(gens[0]), gens)


def rows(M):
    return [[str(x) for x in r] for r in M.tolist()]


# acceptance criteria record one line each; printed at the end of the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
