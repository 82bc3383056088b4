import random

import pytest
from hypothesis import HealthCheck, settings

from chenlie.holonomy import QuadraticPresentation

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def random_quadratic(rng: random.Random, n_max: int = 4, m_max: int = 3,
                     values=(0, 0, 0, 1, -1, 2, -2, 3, 4, 6)) -> QuadraticPresentation:
    n = rng.randint(2, n_max)
    m = rng.randint(0, m_max)
    size = n * (n - 1) // 2
    return QuadraticPresentation(n, tuple(tuple(rng.choice(values) for _ in range(size)) for _ in range(m)))


def random_linking_matrix(rng: random.Random, n_max: int = 4, bound: int = 5) -> list[list[int]]:
    n = rng.randint(1, n_max)
    L = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            L[i][j] = L[j][i] = rng.randint(-bound, bound)
    return L


@pytest.fixture
def rng():
    return random.Random(20261016)


_ACCEPTANCE: dict[str, tuple[str, float]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" in report.nodeid and report.when == "call":
        _ACCEPTANCE[report.nodeid.split("::")[-1]] = (report.outcome, report.duration)
    elif "test_acceptance.py::test_criterion_" in report.nodeid and report.failed:
        _ACCEPTANCE[report.nodeid.split("::")[-1]] = ("failed", report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE):
        outcome, duration = _ACCEPTANCE[name]
        num = int(name.split("_")[2])
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d}: {status}  [{duration:.1f}s]  {name[18:]}")
