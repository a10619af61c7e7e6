from itertools import product

import numpy as np
import pytest

from cliquerad.graph import Graph

_ACCEPTANCE: list[tuple[str, bool, str]] = []


def record_criterion(name: str, ok: bool, detail: str = "") -> None:
    _ACCEPTANCE.append((name, ok, detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}  {detail}")


def bowtie() -> Graph:
    return Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])


def two_triangles() -> Graph:
    return Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


def disjoint_union(*graphs: Graph) -> Graph:
    edges, offset = [], 0
    for g in graphs:
        edges += [(u + offset, v + offset) for u, v in g.edges()]
        offset += g.n
    return Graph.from_edges(offset, edges)


def dense_tensor(tensor) -> np.ndarray:
    """Materialise every entry through the entry accessor."""
    a = np.zeros((tensor.n,) * tensor.t)
    for idx in product(range(tensor.n), repeat=tensor.t):
        a[idx] = tensor.entry(idx)
    return a


def dense_apply(a: np.ndarray, x: np.ndarray) -> np.ndarray:
    out = a
    for _ in range(a.ndim - 1):
        out = out @ x
    return out


@pytest.fixture
def bow():
    return bowtie()


def adjacency_power_mu(a: np.ndarray, max_steps: int = 200_000) -> float:
    """Largest adjacency eigenvalue by power iteration on A + D*I.

    The Gershgorin shift D = max degree makes A + D*I positive semidefinite,
    so the Rayleigh quotient rises monotonically from the all-ones start.
    """
    n = a.shape[0]
    d = float(a.sum(axis=1).max())
    if d == 0.0:
        return 0.0
    m = a + d * np.eye(n)
    x = np.ones(n) / np.sqrt(n)
    rq = x @ m @ x
    still = 0
    for _ in range(max_steps):
        y = m @ x
        x = y / np.linalg.norm(y)
        new = x @ m @ x
        still = still + 1 if new - rq <= 1e-16 * new else 0
        rq = new
        if still >= 20:
            break
    return float(rq - d)
