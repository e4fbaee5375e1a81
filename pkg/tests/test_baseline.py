import numpy as np
import pytest

from wormhole.access import AccessSession
from wormhole.baseline import UNREACHABLE, bfs_distance, bfs_distances, bibfs
from wormhole.errors import Disconnected
from wormhole.graph import Graph
from wormhole.router import EXACT, SAME_NODE, is_valid_path

from conftest import path_graph, random_graph, ref_bfs, triangle


def test_bfs_examples():
    assert bfs_distances(path_graph(5), 0).tolist() == [0, 1, 2, 3, 4]
    g = Graph.from_edges([0], [1], n=3)
    assert bfs_distances(g, 0)[2] == UNREACHABLE
    assert bfs_distance(g, 0, 2) is None
    assert bfs_distances(triangle(), 1).tolist() == [1, 0, 1]


def test_bibfs_same_node():
    r = bibfs(AccessSession(path_graph(3)), 1, 1)
    assert (r.length, r.case, r.path) == (0, SAME_NODE, [1])


def test_bibfs_disconnected():
    g = Graph.from_edges([0, 2], [1, 3])
    with pytest.raises(Disconnected):
        bibfs(AccessSession(g), 0, 3)


def test_bibfs_out_of_range():
    with pytest.raises(ValueError):
        bibfs(AccessSession(path_graph(3)), 0, 3)


@pytest.mark.parametrize("seed", range(10))
def test_bibfs_exact(seed):
    g = random_graph(300 + seed, n_max=200)
    adj = [g.neighbors(v).tolist() for v in range(g.n)]
    for s in range(0, g.n, 4):
        truth = ref_bfs(adj, s)
        dist = bfs_distances(g, s)
        assert all(dist[v] == truth.get(v, UNREACHABLE) for v in range(g.n))
        for t in range(0, g.n, 7):
            if t not in truth:
                with pytest.raises(Disconnected):
                    bibfs(AccessSession(g), s, t)
                continue
            session = AccessSession(g)
            r = bibfs(session, s, t)
            assert r.length == truth[t]
            assert is_valid_path(g, r.path, s, t)
            assert r.case in (EXACT, SAME_NODE)
            assert r.queries_used == session.query_count
            assert bibfs(AccessSession(g), t, s).length == r.length


def test_bibfs_counts_through_session():
    g = path_graph(7)
    s = AccessSession(g)
    bibfs(s, 0, 6)
    # meets in the middle: each side expands three levels
    assert s.query_count == 6


def test_early_stop_matches_full():
    g = random_graph(8, n_max=150)
    full = bfs_distances(g, 0)
    for t in range(g.n):
        assert bfs_distances(g, 0, target=t)[t] == full[t]


@pytest.mark.xfail(strict=True, reason="measured ~0.10 on Chung-Lu n=1e5 with smaller-frontier BiBFS; see notes")
@pytest.mark.slow
def test_bibfs_sees_half_after_few_hundred():
    from wormhole.chunglu import ChungLuParams, generate

    g = generate(ChungLuParams(100_000, 2.5, 10.0, rng_seed=0))
    s = AccessSession(g)
    rng = np.random.default_rng(0)
    for a, b in rng.integers(g.n, size=(300, 2)).tolist():
        try:
            bibfs(s, a, b)
        except Disconnected:
            pass
    assert s.fraction_seen() >= 0.5
