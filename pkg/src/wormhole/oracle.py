"""Shortest-path oracles restricted to the inner ring G[L0].

Two interchangeable oracles answer ``core_path(sources, targets)`` in
core-local IDs:

* :class:`BiBFSOracle` runs a multi-source bidirectional BFS on demand.
* :class:`LabelIndexOracle` answers from a pruned landmark labeling built
  once over the core, recovering paths by greedy descent on indexed
  distances.

Neither oracle touches an :class:`~wormhole.access.AccessSession`: every L0
node was queried while the ring was grown.
"""

from __future__ import annotations

import struct

import numpy as np

from .errors import FormatError, MismatchError

INDEX_MAGIC = b"WHPLL1\0"
_LABEL_DTYPE = np.dtype([("hub", "<u4"), ("dist", "<u2")])


def _search(adj, sources, targets):
    """Level-synchronous BiBFS between node sets.

    Returns ``(length, meet, parent_a, parent_b)`` or ``None`` when the
    sets are disconnected.  The side with the smaller frontier expands a
    full level at a time; the best meeting node of that level wins (first
    discovered on ties).
    """
    pa = dict.fromkeys(sorted(sources), -1)
    pb = dict.fromkeys(sorted(targets), -1)
    common = pa.keys() & pb.keys()
    if common:
        x = min(common)
        return 0, x, pa, pb
    da = dict.fromkeys(pa, 0)
    db = dict.fromkeys(pb, 0)
    fa, fb = list(pa), list(pb)
    ka = kb = 0
    while fa and fb:
        if len(fa) <= len(fb):
            px, dx, dy, front = pa, da, db, fa
            depth = ka + 1
        else:
            px, dx, dy, front = pb, db, da, fb
            depth = kb + 1
        nxt = []
        best = None
        for u in front:
            for w in adj[u]:
                if w in px:
                    continue
                px[w] = u
                dx[w] = depth
                nxt.append(w)
                if w in dy and (best is None or dy[w] < dy[best]):
                    best = w
        if px is pa:
            fa, ka = nxt, depth
        else:
            fb, kb = nxt, depth
        if best is not None:
            return depth + dy[best], best, pa, pb
    return None


def _walk(parent, x):
    out = []
    while x != -1:
        out.append(x)
        x = parent[x]
    return out


def bibfs_core(dec, sources, targets):
    """Shortest core path from any of ``sources`` to any of ``targets``.

    Both sets hold core-local IDs.  Returns the node list or ``None``.
    """
    sources, targets = list(sources), list(targets)
    if not sources or not targets:
        raise ValueError("source and target sets must be nonempty")
    found = _search(dec.core_graph.adj, sources, targets)
    if found is None:
        return None
    _, meet, pa, pb = found
    left = _walk(pa, meet)
    left.reverse()
    return left + _walk(pb, meet)[1:]


def bibfs_core_distance(dec, sources, targets):
    sources, targets = list(sources), list(targets)
    if not sources or not targets:
        raise ValueError("source and target sets must be nonempty")
    found = _search(dec.core_graph.adj, sources, targets)
    return None if found is None else found[0]


class BiBFSOracle:
    def __init__(self, dec):
        self.dec = dec

    def core_path(self, sources, targets):
        return bibfs_core(self.dec, sources, targets)

    def core_distance(self, sources, targets):
        return bibfs_core_distance(self.dec, sources, targets)


class CoreLabelIndex:
    """Pruned 2-hop labels over the core graph.

    ``hub_order`` lists core nodes by descending core degree (ties by ID).
    Each node's label is a ``{hub: distance}`` dict filled in hub order.
    """

    def __init__(self, labels, hub_order=None):
        self.labels = labels
        self.hub_order = hub_order

    @property
    def size(self):
        return len(self.labels)

    def entries(self, u):
        """Label of ``u`` as ``[(hub, dist)]`` in insertion (hub) order."""
        return list(self.labels[u].items())

    def num_entries(self):
        return sum(len(lab) for lab in self.labels)

    def distance(self, u, v):
        """Indexed distance, or ``None`` when no hub is shared."""
        a, b = self.labels[u], self.labels[v]
        if len(a) > len(b):
            a, b = b, a
        best = None
        for h, d in a.items():
            e = b.get(h)
            if e is not None and (best is None or d + e < best):
                best = d + e
        return best

    def nbytes(self):
        return len(INDEX_MAGIC) + 8 + 4 * self.size + _LABEL_DTYPE.itemsize * self.num_entries()


def build_core_index(dec):
    """Pruned landmark labeling of ``dec.core_graph``.

    One BFS per hub in degree order; a node reached at distance ``d`` is
    labelled only if the labels gathered so far cannot already certify a
    distance at most ``d``, and the BFS does not continue past pruned nodes.
    """
    g = dec.core_graph
    adj = g.adj
    n = g.n
    deg = g.degrees().tolist()
    order = sorted(range(n), key=lambda v: (-deg[v], v))
    hubs = [[] for _ in range(n)]
    dists = [[] for _ in range(n)]
    tmp = [None] * n
    seen = [-1] * n
    for k, h in enumerate(order):
        for r, d in zip(hubs[h], dists[h]):
            tmp[r] = d
        seen[h] = 0
        frontier = [h]
        visited = [h]
        d = 0
        while frontier:
            nxt = []
            for u in frontier:
                pruned = False
                for r, du in zip(hubs[u], dists[u]):
                    t = tmp[r]
                    if t is not None and t + du <= d:
                        pruned = True
                        break
                if pruned:
                    continue
                hubs[u].append(h)
                dists[u].append(d)
                for w in adj[u]:
                    if seen[w] < 0:
                        seen[w] = d + 1
                        nxt.append(w)
                        visited.append(w)
            frontier = nxt
            d += 1
        for v in visited:
            seen[v] = -1
        for r in hubs[h]:
            tmp[r] = None
    labels = [dict(zip(hs, ds)) for hs, ds in zip(hubs, dists)]
    return CoreLabelIndex(labels, order)


def index_core_path(index, dec, u, v):
    """Shortest core path ``u -> v`` by greedy descent on indexed distance.

    From ``x`` step to the lowest-ID neighbor ``w`` with
    ``dist(w, v) = dist(x, v) - 1``.
    """
    if u == v:
        return [u]
    remaining = index.distance(u, v)
    if remaining is None:
        return None
    adj = dec.core_graph.adj
    target = index.labels[v]
    path = [u]
    x = u
    while x != v:
        want = remaining - 1
        for w in adj[x]:
            if w == v and want == 0:
                break
            if _reaches(index.labels[w], target, want):
                break
        else:
            raise AssertionError("label index is not a 2-hop cover")
        path.append(w)
        x, remaining = w, want
    return path


def _reaches(lab, target, bound):
    # neighbor of a node at distance bound+1, so "<= bound" means "== bound"
    for h, d in lab.items():
        if d > bound:
            continue
        e = target.get(h)
        if e is not None and d + e <= bound:
            return True
    return False


class LabelIndexOracle:
    def __init__(self, dec, index=None):
        self.dec = dec
        self.index = build_core_index(dec) if index is None else index
        if self.index.size != dec.core_graph.n:
            raise MismatchError("index size does not match the core")

    def _best_pair(self, sources, targets):
        best = None
        for a in sorted(set(sources)):
            for b in sorted(set(targets)):
                d = self.index.distance(a, b)
                if d is not None and (best is None or d < best[0]):
                    best = (d, a, b)
        return best

    def core_path(self, sources, targets):
        sources, targets = list(sources), list(targets)
        if not sources or not targets:
            raise ValueError("source and target sets must be nonempty")
        best = self._best_pair(sources, targets)
        if best is None:
            return None
        return index_core_path(self.index, self.dec, best[1], best[2])

    def core_distance(self, sources, targets):
        sources, targets = list(sources), list(targets)
        if not sources or not targets:
            raise ValueError("source and target sets must be nonempty")
        best = self._best_pair(sources, targets)
        return None if best is None else best[0]


def save_index(index, path):
    counts = np.array([len(lab) for lab in index.labels], dtype="<u4")
    pairs = np.empty(int(counts.sum()), dtype=_LABEL_DTYPE)
    i = 0
    for lab in index.labels:
        for h, d in lab.items():
            if d > 0xFFFF:
                raise OverflowError("label distance exceeds 16 bits")
            pairs[i] = (h, d)
            i += 1
    with open(path, "wb") as fh:
        fh.write(INDEX_MAGIC)
        fh.write(struct.pack("<Q", index.size))
        fh.write(counts.tobytes())
        fh.write(pairs.tobytes())


def load_index(path, dec=None):
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:len(INDEX_MAGIC)] != INDEX_MAGIC:
        raise FormatError(f"{path}: not a label index file (bad magic)")
    pos = len(INDEX_MAGIC)
    if len(data) < pos + 8:
        raise FormatError(f"{path}: truncated header")
    (size,) = struct.unpack_from("<Q", data, pos)
    pos += 8
    if len(data) < pos + 4 * size:
        raise FormatError(f"{path}: truncated label counts")
    counts = np.frombuffer(data, dtype="<u4", count=size, offset=pos)
    pos += 4 * size
    total = int(counts.sum())
    if len(data) != pos + _LABEL_DTYPE.itemsize * total:
        raise FormatError(f"{path}: label payload size mismatch")
    pairs = np.frombuffer(data, dtype=_LABEL_DTYPE, count=total, offset=pos)
    if dec is not None and size != dec.core_graph.n:
        raise MismatchError(f"{path}: index covers {size} core nodes, core has {dec.core_graph.n}")
    hubs = pairs["hub"].tolist()
    dists = pairs["dist"].tolist()
    labels = []
    i = 0
    for c in counts.tolist():
        labels.append(dict(zip(hubs[i:i + c], dists[i:i + c])))
        i += c
    return CoreLabelIndex(labels)
