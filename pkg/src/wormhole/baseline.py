"""Exact baselines: full-graph bidirectional BFS and single-source BFS."""

from __future__ import annotations

import numpy as np

from .errors import Disconnected
from .router import EXACT, SAME_NODE, PathResult

UNREACHABLE = -1


def bibfs(session, s, t):
    """Exact shortest path by bidirectional BFS through ``session``.

    The side with the smaller frontier expands one full level at a time;
    among the meeting nodes found in that level the one closest to the
    other root wins.
    """
    n = session.graph.n
    if not (0 <= s < n and 0 <= t < n):
        raise ValueError(f"inquiry ({s}, {t}) out of range for graph with n={n}")
    if s == t:
        return PathResult([s], 0, 0, SAME_NODE)
    query = session.query
    pa, pb = {s: -1}, {t: -1}
    da, db = {s: 0}, {t: 0}
    fa, fb = [s], [t]
    queried = 0
    while fa and fb:
        if len(fa) <= len(fb):
            px, dx, dy, front = pa, da, db, fa
        else:
            px, dx, dy, front = pb, db, da, fb
        level = dx[front[0]] + 1
        nxt = []
        best = None
        for u in front:
            queried += 1
            for w in query(u):
                if w in px:
                    continue
                px[w] = u
                dx[w] = level
                nxt.append(w)
                e = dy.get(w)
                if e is not None and (best is None or e < dy[best]):
                    best = w
        if px is pa:
            fa = nxt
        else:
            fb = nxt
        if best is not None:
            left = _walk(pa, best)
            left.reverse()
            path = left + _walk(pb, best)[1:]
            return PathResult(path, len(path) - 1, queried, EXACT)
    raise Disconnected(s, t)


def _walk(parent, x):
    out = []
    while x != -1:
        out.append(x)
        x = parent[x]
    return out


def _expand(g, frontier):
    starts = g.offsets[frontier]
    lens = g.offsets[frontier + 1] - starts
    pos = np.repeat(starts - np.cumsum(lens) + lens, lens) + np.arange(int(lens.sum()))
    return g.indices[pos]


def bfs_distances(g, s, target=None):
    """Hop distances from ``s``; unreachable nodes hold ``UNREACHABLE``.

    Reads the graph directly, never through a session.  With ``target`` the
    search stops after the level that labels it.
    """
    dist = np.full(g.n, UNREACHABLE, dtype=np.int64)
    dist[s] = 0
    frontier = np.array([s], dtype=np.int64)
    level = 0
    while frontier.size:
        if target is not None and dist[target] >= 0:
            break
        level += 1
        nb = _expand(g, frontier)
        nb = nb[dist[nb] < 0]
        frontier = np.unique(nb).astype(np.int64)
        dist[frontier] = level
    return dist


def bfs_distance(g, s, t):
    """Single-pair hop distance, or ``None`` when disconnected."""
    d = int(bfs_distances(g, s, target=t)[t])
    return None if d < 0 else d
