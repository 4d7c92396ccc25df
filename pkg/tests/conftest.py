import pytest

from divfrob.corpus import example_curve
from divfrob.froblift import frobenius_lift

# Lines recorded by the acceptance suite, echoed once at the end of the run.
ACCEPTANCE_LINES: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: int(k[1:])):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])


@pytest.fixture(scope="session")
def curves():
    """The four example curves keyed by p, each with its lift."""
    out = {}
    for p, n in [(17, 3), (31, 3), (41, 3), (13, 4)]:
        d = example_curve(p, n)
        out[p] = (d, frobenius_lift(d))
    return out
