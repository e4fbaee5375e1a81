"""Immutable undirected graphs in compressed sparse row form.

Node IDs are dense integers in ``[0, n)``.  Each node's neighbor slice is
sorted strictly ascending, the adjacency is symmetric and there are no
self-loops or parallel edges.  Graphs built from edge lists keep the
original label of every dense ID so callers can translate at the boundary.
"""

from __future__ import annotations

import io
import os
import struct

import numpy as np

from .errors import FormatError, ParseError

NODE_DTYPE = np.dtype("<u4")
OFFSET_DTYPE = np.dtype("<u8")

CSR_MAGIC = b"WHCSR1\0"
LABELS_MAGIC = b"WHLBL1\0"
_HEADER = struct.Struct("<QQ")


class Graph:
    """CSR adjacency over dense node IDs.

    Construct through :meth:`from_edges`, :func:`ingest_edge_list` or
    :func:`load_csr`; the raw constructor trusts its arrays.
    """

    __slots__ = ("offsets", "indices", "labels", "_adj", "_label_index")

    def __init__(self, offsets, indices, labels=None):
        self.offsets = np.ascontiguousarray(offsets, dtype=np.int64)
        self.indices = np.ascontiguousarray(indices, dtype=NODE_DTYPE)
        self.offsets.setflags(write=False)
        self.indices.setflags(write=False)
        if labels is not None:
            labels = np.ascontiguousarray(labels, dtype=np.int64)
            labels.setflags(write=False)
        self.labels = labels
        self._adj = None
        self._label_index = None

    @classmethod
    def from_edges(cls, u, v, n=None, labels=None):
        """Build from endpoint arrays over dense IDs.

        Edges are symmetrized; self-loops and duplicates are dropped.  ``n``
        defaults to one past the largest endpoint.
        """
        u = np.asarray(u, dtype=np.int64).ravel()
        v = np.asarray(v, dtype=np.int64).ravel()
        if u.shape != v.shape:
            raise ValueError("endpoint arrays differ in length")
        if n is None:
            n = int(max(u.max(initial=-1), v.max(initial=-1))) + 1
        if u.size and (min(u.min(), v.min()) < 0 or max(u.max(), v.max()) >= n):
            raise ValueError("endpoint outside [0, n)")
        if n >= 2**32:
            raise ValueError("node count exceeds 32-bit IDs")
        keep = u != v
        u, v = u[keep], v[keep]
        src = np.concatenate([u, v])
        dst = np.concatenate([v, u])
        key = np.unique(src * n + dst)
        src, dst = np.divmod(key, n)
        counts = np.bincount(src, minlength=n)
        offsets = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=offsets[1:])
        return cls(offsets, dst, labels)

    @property
    def n(self):
        return len(self.offsets) - 1

    @property
    def m(self):
        return int(self.offsets[-1]) // 2

    def degree(self, v):
        self._check(v)
        return int(self.offsets[v + 1] - self.offsets[v])

    def degrees(self):
        return np.diff(self.offsets)

    def neighbors(self, v):
        """Sorted neighbor slice of ``v`` as a read-only array."""
        self._check(v)
        return self.indices[self.offsets[v]:self.offsets[v + 1]]

    @property
    def adj(self):
        """Neighbor lists as Python lists, built once on first use.

        Hot traversal loops iterate these instead of numpy slices.
        """
        if self._adj is None:
            flat = self.indices.tolist()
            off = self.offsets.tolist()
            self._adj = [flat[off[i]:off[i + 1]] for i in range(self.n)]
        return self._adj

    def has_edge(self, u, v):
        nb = self.neighbors(u)
        i = np.searchsorted(nb, v)
        return bool(i < len(nb) and nb[i] == v)

    def edges(self):
        """Return ``(u, v)`` arrays with ``u < v``, one row per edge."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees())
        dst = self.indices.astype(np.int64)
        keep = src < dst
        return src[keep], dst[keep]

    def induced_subgraph(self, nodes):
        """Subgraph induced on ``nodes``; returns ``(graph, members)``.

        ``members`` is the sorted array of original IDs, so core ID ``i``
        corresponds to ``members[i]``.
        """
        members = np.unique(np.asarray(nodes, dtype=np.int64))
        local = np.full(self.n, -1, dtype=np.int64)
        local[members] = np.arange(len(members))
        starts = self.offsets[members]
        lens = self.offsets[members + 1] - starts
        total = int(lens.sum())
        pos = np.repeat(starts - np.cumsum(lens) + lens, lens) + np.arange(total)
        src = np.repeat(np.arange(len(members)), lens)
        dst = local[self.indices[pos]]
        keep = dst >= 0
        src, dst = src[keep], dst[keep]
        counts = np.bincount(src, minlength=len(members))
        offsets = np.zeros(len(members) + 1, dtype=np.int64)
        np.cumsum(counts, out=offsets[1:])
        # src is already grouped and each group ascending, so dst stays sorted
        return Graph(offsets, dst), members

    # label translation -------------------------------------------------

    def label_of(self, v):
        self._check(v)
        return v if self.labels is None else int(self.labels[v])

    def node_of(self, label):
        """Dense ID for an original label; ``KeyError`` when absent."""
        if self.labels is None:
            if isinstance(label, (int, np.integer)) and 0 <= label < self.n:
                return int(label)
            raise KeyError(label)
        if self._label_index is None:
            self._label_index = {lab: i for i, lab in enumerate(self.labels.tolist())}
        return self._label_index[int(label)]

    def _check(self, v):
        if not 0 <= v < self.n:
            raise IndexError(f"node {v} out of range for graph with n={self.n}")

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (np.array_equal(self.offsets, other.offsets)
                and np.array_equal(self.indices, other.indices))

    __hash__ = None

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def _open_text(source):
    if isinstance(source, (bytes, bytearray)):
        return io.StringIO(bytes(source).decode())
    if isinstance(source, (str, os.PathLike)):
        return open(source, "r", encoding="utf-8", errors="strict")
    if isinstance(source, io.TextIOBase):
        return source
    return io.TextIOWrapper(source, encoding="utf-8")


def ingest_edge_list(source):
    """Parse a whitespace-separated edge list into a :class:`Graph`.

    ``source`` is a path, a bytes object or a readable stream.  Lines
    starting with ``#`` or ``%`` are comments; columns after the second are
    ignored.  Labels are remapped to dense IDs in ascending label order.
    """
    own = isinstance(source, (str, os.PathLike))
    fh = _open_text(source)
    us, vs = [], []
    try:
        for lineno, line in enumerate(fh, 1):
            s = line.strip()
            if not s or s[0] in "#%":
                continue
            parts = s.split()
            if len(parts) < 2:
                raise ParseError(f"expected two node labels, got {s!r}", lineno)
            try:
                a, b = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(f"malformed token in {s!r}", lineno) from None
            if a < 0 or b < 0:
                raise ParseError(f"negative node label in {s!r}", lineno)
            us.append(a)
            vs.append(b)
    finally:
        if own:
            fh.close()
    if not us:
        raise ParseError("edge list is empty")
    return _from_labelled(np.array(us, dtype=np.int64), np.array(vs, dtype=np.int64))


def _from_labelled(u, v):
    keep = u != v
    u, v = u[keep], v[keep]
    if not u.size:
        raise ParseError("edge list has no edges besides self-loops")
    labels, inv = np.unique(np.concatenate([u, v]), return_inverse=True)
    k = len(u)
    return Graph.from_edges(inv[:k], inv[k:], n=len(labels), labels=labels)


def write_edge_list(g, target, labels=True):
    """Write one ``u v`` line per edge (``u < v``), using original labels."""
    u, v = g.edges()
    if labels and g.labels is not None:
        u, v = g.labels[u], g.labels[v]
    own = isinstance(target, (str, os.PathLike))
    fh = open(target, "w") if own else target
    try:
        fh.write(f"# n={g.n} m={g.m}\n")
        fh.writelines(f"{a} {b}\n" for a, b in zip(u.tolist(), v.tolist()))
    finally:
        if own:
            fh.close()


def save_csr(g, path):
    """Write the binary CSR file; non-identity labels go to ``path + '.labels'``."""
    with open(path, "wb") as fh:
        fh.write(CSR_MAGIC)
        fh.write(_HEADER.pack(g.n, g.m))
        fh.write(g.offsets.astype(OFFSET_DTYPE).tobytes())
        fh.write(g.indices.astype(NODE_DTYPE).tobytes())
    side = os.fspath(path) + ".labels"
    if g.labels is not None and not np.array_equal(g.labels, np.arange(g.n)):
        with open(side, "wb") as fh:
            fh.write(LABELS_MAGIC)
            fh.write(struct.pack("<Q", g.n))
            fh.write(g.labels.astype("<i8").tobytes())
    elif os.path.exists(side):
        os.remove(side)


def load_csr(path):
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:len(CSR_MAGIC)] != CSR_MAGIC:
        raise FormatError(f"{path}: not a CSR file (bad magic)")
    pos = len(CSR_MAGIC)
    if len(data) < pos + _HEADER.size:
        raise FormatError(f"{path}: truncated header")
    n, m = _HEADER.unpack_from(data, pos)
    pos += _HEADER.size
    need = pos + (n + 1) * 8 + 2 * m * 4
    if len(data) != need:
        raise FormatError(f"{path}: expected {need} bytes, found {len(data)}")
    offsets = np.frombuffer(data, dtype=OFFSET_DTYPE, count=n + 1, offset=pos)
    indices = np.frombuffer(data, dtype=NODE_DTYPE, count=2 * m, offset=pos + (n + 1) * 8)
    if offsets[0] != 0 or offsets[-1] != 2 * m or np.any(np.diff(offsets.astype(np.int64)) < 0):
        raise FormatError(f"{path}: inconsistent offsets")
    labels = _load_labels(os.fspath(path) + ".labels", n)
    return Graph(offsets.astype(np.int64), indices.copy(), labels)


def _load_labels(path, n):
    if not os.path.exists(path):
        return None
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:len(LABELS_MAGIC)] != LABELS_MAGIC:
        raise FormatError(f"{path}: bad label file magic")
    (count,) = struct.unpack_from("<Q", data, len(LABELS_MAGIC))
    if count != n or len(data) != len(LABELS_MAGIC) + 8 + 8 * n:
        raise FormatError(f"{path}: label file does not match graph with n={n}")
    return np.frombuffer(data, dtype="<i8", offset=len(LABELS_MAGIC) + 8).copy()
