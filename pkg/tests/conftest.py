import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", parent=settings.get_profile("default"), derandomize=True)
settings.load_profile("ci")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def disk_points(radius=0.95):
    """Complex numbers with modulus at most ``radius``."""
    return st.builds(
        lambda r, t: radius * np.sqrt(r) * np.exp(2j * np.pi * t),
        st.floats(0.0, 1.0),
        st.floats(0.0, 1.0),
    )


def sequences(min_size=0, max_size=10, radius=0.95):
    return st.lists(disk_points(radius), min_size=min_size, max_size=max_size).map(
        lambda xs: np.array(xs, dtype=complex)
    )


# one line per acceptance criterion, collected by tests/test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE[criterion] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
