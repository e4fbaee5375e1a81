"""Node-query access model.

All adjacency reads made by decomposition, routing and the BiBFS baseline
go through an :class:`AccessSession`.  Cost is charged per distinct node:
the first read of a node's neighbor list is one query, repeats are free.
"""

from __future__ import annotations

import threading

import numpy as np


class AccessSession:
    def __init__(self, graph):
        self.graph = graph
        self._seen = bytearray(graph.n)
        self._seen_np = np.frombuffer(self._seen, dtype=np.uint8)
        self.query_count = 0
        self.phase_marks = []
        self._lock = threading.Lock()
        self._adj = graph.adj

    def query(self, v):
        """Neighbor list of ``v``; charges one query the first time."""
        if not 0 <= v < len(self._seen):
            raise IndexError(f"node {v} out of range for graph with n={len(self._seen)}")
        if not self._seen[v]:
            with self._lock:
                if not self._seen[v]:
                    self._seen[v] = 1
                    self.query_count += 1
        return self._adj[v]

    def absorb(self, nodes):
        """Charge ``nodes`` as queried without reading them.

        Used to replay a stored decomposition's preprocessing cost into a
        fresh session.
        """
        nodes = np.asarray(nodes, dtype=np.int64)
        with self._lock:
            fresh = np.unique(nodes[self._seen_np[nodes] == 0])
            self._seen_np[fresh] = 1
            self.query_count += len(fresh)

    def is_seen(self, v):
        return bool(self._seen[v])

    @property
    def seen(self):
        return np.flatnonzero(self._seen_np)

    def fraction_seen(self):
        n = len(self._seen)
        return self.query_count / n if n else 0.0

    def mark_phase(self, label):
        self.phase_marks.append((label, self.query_count))

    def phase_costs(self):
        """Queries charged between consecutive marks, as ``[(label, cost)]``.

        Each label owns the queries made before it was marked and after the
        previous mark.
        """
        out, prev = [], 0
        for label, count in self.phase_marks:
            out.append((label, count - prev))
            prev = count
        return out
