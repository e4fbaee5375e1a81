import random
from collections import deque

import numpy as np
import pytest

from wormhole.access import AccessSession
from wormhole.chunglu import ChungLuParams, generate
from wormhole.graph import Graph


def ref_bfs(adj, s):
    """Plain dict BFS, independent of the package's numpy BFS."""
    dist = {s: 0}
    q = deque([s])
    while q:
        u = q.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def adjacency(n, edges):
    adj = [set() for _ in range(n)]
    for a, b in edges:
        if a != b:
            adj[a].add(b)
            adj[b].add(a)
    return adj


def random_edges(rng, n, p):
    return [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]


def random_graph(seed, n_max=200, connected_bias=True):
    """Mixed-density random graph on [0, n); may be disconnected."""
    rng = random.Random(seed)
    n = rng.randint(2, n_max)
    p = rng.choice([1.5, 2.5, 4.0, 8.0]) / n
    edges = random_edges(rng, n, min(p, 1.0))
    if connected_bias and rng.random() < 0.5:
        # random spanning tree so many pairs are connected
        edges += [(i, rng.randrange(i)) for i in range(1, n)]
    if not edges:
        edges = [(0, 1)]
    u, v = zip(*edges)
    return Graph.from_edges(u, v, n=n)


def path_graph(n):
    return Graph.from_edges(np.arange(n - 1), np.arange(1, n), n=n)


def star_graph(leaves):
    return Graph.from_edges(np.zeros(leaves, dtype=int), np.arange(1, leaves + 1), n=leaves + 1)


def triangle():
    return Graph.from_edges([0, 1, 2], [1, 2, 0])


@pytest.fixture(scope="session")
def chunglu_10k():
    return generate(ChungLuParams(10_000, 2.5, 10.0, rng_seed=7))


ACCEPTANCE_LINES = []


def acceptance_line(tag, ok, detail, capsys=None):
    """Record and print one pass/fail line for an acceptance criterion."""
    line = f"{tag} {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    if capsys is not None:
        with capsys.disabled():
            print("\n" + line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
