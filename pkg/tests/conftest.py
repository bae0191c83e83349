import sys
import time
from pathlib import Path
from types import SimpleNamespace

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from keithlab.keith_engine import search_fast, search_naive  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"

EQUIVALENCE_CASES = [(b, n) for b in (3, 4, 10) for n in range(2, 7)] + [
    (2, n) for n in range(2, 13)
]


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def equivalence_runs():
    """search_fast and search_naive on every (base, n) of the equivalence gate.

    ``runs`` maps (base, n) to (fast, naive); ``elapsed`` is the wall time in seconds.
    """
    start = time.perf_counter()
    runs = {}
    for base, n in EQUIVALENCE_CASES:
        runs[(base, n)] = (search_fast(base, n), search_naive(base, n))
    return SimpleNamespace(runs=runs, elapsed=time.perf_counter() - start)


_criteria = {}


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        prev = _criteria.get(crit)
        if prev is None or report.outcome != "passed":
            _criteria[crit] = (report.outcome, report.nodeid)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_criteria, key=lambda c: int(c)):
        outcome, nodeid = _criteria[crit]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {crit:>2}: {verdict}  ({nodeid.split('::')[-1]})")
