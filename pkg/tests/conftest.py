import networkx as nx
import pytest

from profile_lab.graphs import from_networkx


def atlas(max_nodes, connected=False, min_nodes=1):
    """Every graph on ``min_nodes..max_nodes`` vertices, up to isomorphism."""
    out = []
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if n < min_nodes or n > max_nodes:
            continue
        if connected and not nx.is_connected(g):
            continue
        out.append(from_networkx(g))
    return out


@pytest.fixture(scope="session")
def small_graphs():
    return atlas(5)


# acceptance criteria report one line each at the end of the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}")
