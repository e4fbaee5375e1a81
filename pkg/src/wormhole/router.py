"""Answer SP(s, t) inquiries by routing through the inner ring.

Two BFS trees grow from ``s`` and ``t`` one level at a time, alternating.
A tree stops for good the first time its newest level contains L0 nodes;
those nodes are its contact set.  The inquiry ends as soon as the trees
share a node, or once both have contact sets, in which case a core oracle
joins the contact sets inside G[L0].

Variants differ only in what the oracle is asked:

* ``E`` -- shortest path between the full contact sets.
* ``H`` -- shortest path between the highest-degree contact on each side.
* ``M`` -- as ``H``, answered by a :class:`~wormhole.oracle.LabelIndexOracle`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ExhaustedComponent, RoutingError
from .oracle import BiBFSOracle, LabelIndexOracle

INTERSECT_OUTSIDE = "intersect_outside"
THROUGH_CORE = "through_core"
SAME_NODE = "same_node"
DIRECT_EDGE = "direct_edge"
EXHAUSTED = "exhausted_component"
EXACT = "exact"

VARIANTS = ("E", "H", "M")


@dataclass
class PathResult:
    path: list
    length: int
    queries_used: int
    case: str


@dataclass
class SearchTree:
    root: int
    parent: dict = field(default_factory=dict)
    depth: dict = field(default_factory=dict)
    frontier: list = field(default_factory=list)
    contact: list = field(default_factory=list)
    level: int = 0

    @classmethod
    def rooted(cls, root):
        return cls(root, {root: -1}, {root: 0}, [root])

    def __contains__(self, v):
        return v in self.depth

    def path_to(self, x):
        """Tree path ``root -> x``."""
        out = []
        parent = self.parent
        while x != -1:
            out.append(x)
            x = parent[x]
        out.reverse()
        return out


def splice(seq):
    """Drop the cycle between any two occurrences of a node."""
    out, pos = [], {}
    for x in seq:
        i = pos.get(x)
        if i is None:
            pos[x] = len(out)
            out.append(x)
        else:
            for y in out[i + 1:]:
                del pos[y]
            del out[i + 1:]
    return out


def best_meeting(tree_s, tree_t):
    """Common node with the least combined depth (lowest ID on ties)."""
    a, b = tree_s.depth, tree_t.depth
    if len(a) > len(b):
        a, b = b, a
    best = None
    for v in a:
        if v in b:
            key = (a[v] + b[v], v)
            if best is None or key < best:
                best = key
    return None if best is None else best[1]


def stitch(tree_s, core_path, tree_t):
    """Join ``root(s) -> core_path -> root(t)`` into one simple path.

    ``core_path`` must start at a node of ``tree_s`` and end at a node of
    ``tree_t``; an empty ``core_path`` means the trees meet directly.
    """
    if not core_path:
        m = best_meeting(tree_s, tree_t)
        if m is None:
            raise RoutingError("trees do not meet and no core path was given")
        core_path = [m]
    a, b = core_path[0], core_path[-1]
    if a not in tree_s or b not in tree_t:
        raise RoutingError(f"core path endpoints ({a}, {b}) are not in the search trees")
    head = tree_s.path_to(a)
    tail = tree_t.path_to(b)
    tail.reverse()
    if len(core_path) == 1:
        return splice(head + tail[1:])
    return splice(head + list(core_path[1:-1]) + tail)


class _Inquiry:
    """Per-inquiry state of the alternating outer expansion."""

    __slots__ = ("session", "dec", "ts", "tt", "meet", "queried")

    def __init__(self, session, dec, s, t):
        self.session = session
        self.dec = dec
        self.ts = SearchTree.rooted(s)
        self.tt = SearchTree.rooted(t)
        self.meet = None
        self.queried = 0
        for tree in (self.ts, self.tt):
            if dec.l0_mask[tree.root]:
                tree.contact = [tree.root]

    def run(self):
        ts, tt = self.ts, self.tt
        while not (ts.contact and tt.contact):
            for tree, other, side in ((ts, tt, "s"), (tt, ts, "t")):
                if tree.contact:
                    continue
                if not tree.frontier:
                    raise ExhaustedComponent(side, ts.root, tt.root)
                self._expand(tree, other)
                if self.meet is not None:
                    return self
        return self

    def _expand(self, tree, other):
        query = self.session.query
        parent, depth, odepth = tree.parent, tree.depth, other.depth
        mask = self.dec.l0_mask
        level = tree.level + 1
        nxt, contact = [], []
        best = None
        for u in tree.frontier:
            self.queried += 1
            for w in query(u):
                if w in depth:
                    continue
                parent[w] = u
                depth[w] = level
                nxt.append(w)
                if mask[w]:
                    contact.append(w)
                d = odepth.get(w)
                if d is not None and (best is None or d < odepth[best]):
                    best = w
        tree.frontier = nxt
        tree.level = level
        if contact:
            contact.sort()
            tree.contact = contact
        if best is not None:
            self.meet = best

    def core_ends(self, variant):
        dec = self.dec
        cs, ct = self.ts.contact, self.tt.contact
        if variant == "E":
            return [dec.to_core(v) for v in cs], [dec.to_core(v) for v in ct]
        return [dec.to_core(_top_degree(dec.graph, cs))], [dec.to_core(_top_degree(dec.graph, ct))]


def _top_degree(g, nodes):
    off = g.offsets
    best = None
    for v in nodes:
        key = (-(int(off[v + 1]) - int(off[v])), v)
        if best is None or key < best:
            best = key
    return best[1]


def _prepare(session, dec, s, t, oracle, variant):
    n = session.graph.n
    if not (0 <= s < n and 0 <= t < n):
        raise ValueError(f"inquiry ({s}, {t}) out of range for graph with n={n}")
    if dec.graph is not session.graph and dec.graph.n != n:
        raise ValueError("decomposition was built over a different graph")
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if oracle is None:
        if variant == "M":
            raise ValueError("variant M needs a LabelIndexOracle")
        oracle = BiBFSOracle(dec)
    elif variant == "M" and not isinstance(oracle, LabelIndexOracle):
        raise ValueError("variant M needs a LabelIndexOracle")
    return oracle


def _tag(length, case):
    return DIRECT_EDGE if length == 1 else case


def route(session, dec, s, t, oracle=None, variant="E"):
    """Route one inquiry; returns a :class:`PathResult`.

    Raises :class:`~wormhole.errors.ExhaustedComponent` when a side runs
    out of nodes before meeting the other side or reaching L0, or when the
    contact sets are disconnected inside the core (``side='core'``).
    """
    oracle = _prepare(session, dec, s, t, oracle, variant)
    if s == t:
        return PathResult([s], 0, 0, SAME_NODE)
    inq = _Inquiry(session, dec, s, t).run()
    if inq.meet is not None:
        path = stitch(inq.ts, [inq.meet], inq.tt)
        # trees that meet on an inner-ring node have met inside the core
        case = THROUGH_CORE if dec.l0_mask[inq.meet] else INTERSECT_OUTSIDE
        return PathResult(path, len(path) - 1, inq.queried, _tag(len(path) - 1, case))
    sources, targets = inq.core_ends(variant)
    core = oracle.core_path(sources, targets)
    if core is None:
        raise ExhaustedComponent("core", s, t)
    path = stitch(inq.ts, [dec.to_graph(c) for c in core], inq.tt)
    return PathResult(path, len(path) - 1, inq.queried, _tag(len(path) - 1, THROUGH_CORE))


def distance_only(session, dec, s, t, oracle=None, variant="E"):
    """Length of the path :func:`route` would return, without building it.

    Tree branches outside L0 hold no inner-ring node besides their contact,
    and the core path is simple, so stitching never splices and the length
    is the plain sum of the three legs.
    """
    oracle = _prepare(session, dec, s, t, oracle, variant)
    if s == t:
        return 0
    inq = _Inquiry(session, dec, s, t).run()
    if inq.meet is not None:
        return inq.ts.depth[inq.meet] + inq.tt.depth[inq.meet]
    sources, targets = inq.core_ends(variant)
    d = oracle.core_distance(sources, targets)
    if d is None:
        raise ExhaustedComponent("core", s, t)
    return inq.ts.level + d + inq.tt.level


def is_valid_path(g, path, s, t):
    """Independent check: endpoints, simple, every hop an edge of ``g``."""
    if not path or path[0] != s or path[-1] != t:
        return False
    if len(set(path)) != len(path):
        return False
    return all(g.has_edge(a, b) for a, b in zip(path, path[1:]))
