import numpy as np
import pytest

from ssd_engine.engine import EngineParams

# results recorded by the acceptance suite, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def random_params(n, seed=2024, lo=-3.0, hi=3.0):
    """``n`` parameter sets, every field log-uniform on ``[10**lo, 10**hi]``."""
    rng = np.random.default_rng(seed)
    return [EngineParams(*10.0 ** rng.uniform(lo, hi, 7)) for _ in range(n)]


@pytest.fixture(scope="session")
def sample_params():
    return random_params(1000)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
