import pytest

from stscreen.modular import PrimeContext
from stscreen.rootdata import build_root_system


@pytest.fixture(scope="session")
def ctx_of():
    def make(name: str, p: int, r: int = 1) -> PrimeContext:
        return PrimeContext(build_root_system(name[0], int(name[1:])), p, r)
    return make


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import CRITERIA, RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for c in CRITERIA:
        if c.cid in RESULTS:
            terminalreporter.write_line(RESULTS[c.cid])
