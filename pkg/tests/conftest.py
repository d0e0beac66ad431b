import re
import sys

import pytest

from fastkh import parse_pd
from fastkh.corpus import load_corpus

FIGURE_EIGHT = "PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]"
TREFOIL = "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]"
HOPF = "PD[X[4,1,3,2],X[2,3,1,4]]"


@pytest.fixture
def figure_eight():
    return parse_pd(FIGURE_EIGHT)


@pytest.fixture
def trefoil():
    return parse_pd(TREFOIL)


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


def pytest_terminal_summary(terminalreporter):
    """Print one verdict line per acceptance criterion that was run."""
    module = next((m for n, m in sys.modules.items() if n.endswith("test_acceptance")), None)
    results = dict(getattr(module, "RESULTS", {}))
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            m = re.search(r"test_ac(\d)", getattr(rep, "nodeid", ""))
            if m and rep.when == "call" and f"AC{m.group(1)}" not in results:
                verdict = "PASS" if outcome == "passed" else "FAIL"
                results[f"AC{m.group(1)}"] = f"AC{m.group(1)} {verdict}: {rep.longreprtext[-200:]}"
    if results:
        terminalreporter.section("acceptance criteria")
        for name in sorted(results):
            terminalreporter.write_line(results[name])
