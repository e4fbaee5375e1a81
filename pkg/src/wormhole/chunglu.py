"""Chung-Lu random graphs with power-law expected degrees.

Node ``i`` gets expected degree ``w_i = c * (i + i0) ** (-1 / (beta - 1))``
and each pair ``i < j`` is joined independently with probability
``w_i * w_j / W`` where ``W = sum(w)``.  ``c`` fixes the mean weight at
``avg_degree``; ``i0`` is the smallest offset keeping ``w_0 ** 2 <= W`` so
every pair probability stays at most one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph

EXACT_MAX_N = 30_000


@dataclass(frozen=True)
class ChungLuParams:
    n: int
    beta: float = 2.5
    avg_degree: float = 10.0
    rng_seed: int = 0

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 2:
            raise ValueError(f"n must be an integer >= 2, got {self.n!r}")
        if not 2.0 < self.beta < 3.0:
            raise ValueError(f"beta must lie in (2, 3), got {self.beta}")
        if not self.avg_degree > 1.0:
            raise ValueError(f"avg_degree must exceed 1, got {self.avg_degree}")


def expected_weights(params):
    """Non-increasing weight array with mean ``avg_degree`` and ``w_0**2 <= W``."""
    n, d = params.n, params.avg_degree
    a = 1.0 / (params.beta - 1.0)
    i = np.arange(n, dtype=np.float64)
    total = d * n

    def top_sq_ratio(i0):
        ranks = (i + i0) ** -a
        return (total / ranks.sum() * i0 ** -a) ** 2 / total

    lo, hi = 1e-12, 1e15
    # near-flat weights approach the cap from above; allow rounding slack
    if top_sq_ratio(hi) > 1.0 + 1e-9:
        raise ValueError(f"avg_degree {d} is infeasible for n={n}: no offset keeps w_0**2 <= W")
    # the ratio decreases in i0; bisect in log space
    for _ in range(200):
        mid = math.sqrt(lo * hi)
        if top_sq_ratio(mid) > 1.0:
            lo = mid
        else:
            hi = mid
    ranks = (i + hi) ** -a
    w = ranks * (total / ranks.sum())
    # renormalize so the mean is exact to rounding
    return w * (d / w.mean())


def max_degree_condition(g):
    """Whether the graph's max degree exceeds ``log n / log log n``."""
    n = g.n
    return int(g.degrees().max(initial=0)) > math.log(n) / math.log(math.log(n))


def generate(params, method="auto"):
    """Sample a Chung-Lu graph; deterministic given ``params.rng_seed``.

    ``method`` is ``"exact"`` (every pair drawn), ``"blocked"`` (geometric
    skips inside weight blocks with rejection) or ``"auto"`` (exact up to
    ``EXACT_MAX_N`` nodes).  Both samplers realize the same distribution.
    """
    w = expected_weights(params)
    rng = np.random.default_rng(params.rng_seed)
    if method == "auto":
        method = "exact" if params.n <= EXACT_MAX_N else "blocked"
    if method == "exact":
        u, v = _sample_exact(w, rng)
    elif method == "blocked":
        u, v = _sample_blocked(w, rng)
    else:
        raise ValueError(f"unknown method {method!r}")
    return Graph.from_edges(u, v, n=params.n)


def _sample_exact(w, rng):
    n = len(w)
    total = w.sum()
    us, vs = [], []
    for i in range(n - 1):
        p = w[i] * w[i + 1:] / total
        hit = np.flatnonzero(rng.random(n - i - 1) < p)
        if hit.size:
            us.append(np.full(hit.size, i, dtype=np.int64))
            vs.append(hit + (i + 1))
    if not us:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    return np.concatenate(us), np.concatenate(vs)


def _weight_blocks(w):
    # contiguous index ranges whose weights lie within a factor of two
    bounds = [0]
    n = len(w)
    while bounds[-1] < n:
        top = w[bounds[-1]]
        end = int(np.searchsorted(-w, -top / 2.0, side="right"))
        bounds.append(max(end, bounds[-1] + 1))
    return bounds


def _bernoulli_positions(rng, count, p):
    """Sorted positions in ``[0, count)`` hit by independent ``p``-coins."""
    if p <= 0.0 or count == 0:
        return np.empty(0, np.int64)
    if p >= 1.0:
        return np.arange(count, dtype=np.int64)
    chunks = []
    pos = -1
    expect = count * p
    while True:
        k = int(expect + 5.0 * math.sqrt(expect) + 16)
        gaps = rng.geometric(p, size=k)
        hits = pos + np.cumsum(gaps)
        chunks.append(hits)
        pos = int(hits[-1])
        if pos >= count:
            break
        expect = (count - pos) * p
    hits = np.concatenate(chunks)
    return hits[hits < count]


def _sample_blocked(w, rng):
    total = w.sum()
    bounds = _weight_blocks(w)
    us, vs = [], []
    nb = len(bounds) - 1
    for a in range(nb):
        a0, a1 = bounds[a], bounds[a + 1]
        for b in range(a, nb):
            b0, b1 = bounds[b], bounds[b + 1]
            width = b1 - b0
            pmax = min(w[a0] * w[b0] / total, 1.0)
            hits = _bernoulli_positions(rng, (a1 - a0) * width, pmax)
            i = a0 + hits // width
            j = b0 + hits % width
            if a == b:
                # the square block covers each unordered pair twice; keep i < j
                keep = i < j
                i, j = i[keep], j[keep]
            accept = rng.random(i.size) * pmax < w[i] * w[j] / total
            us.append(i[accept])
            vs.append(j[accept])
    return np.concatenate(us), np.concatenate(vs)
