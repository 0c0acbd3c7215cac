import os

from hypothesis import HealthCheck, settings

from hypsep.graph_core import Graph

settings.register_profile(
    "default",
    max_examples=int(os.environ.get("HYPSEP_EXAMPLES", "40")),
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def cycle(k: int) -> Graph:
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def complete(k: int) -> Graph:
    return Graph(k, [(a, b) for a in range(k) for b in range(a + 1, k)])


def path(k: int) -> Graph:
    return Graph(k, [(i, i + 1) for i in range(k - 1)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def grid(rows: int, cols: int) -> Graph:
    edges = [(a * cols + b, a * cols + b + 1) for a in range(rows) for b in range(cols - 1)]
    edges += [(a * cols + b, (a + 1) * cols + b) for a in range(rows - 1) for b in range(cols)]
    return Graph(rows * cols, edges)


ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
