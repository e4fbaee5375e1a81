"""Batch inquiry harness and the error/cost metrics it reports.

A run samples uniform ``(s, t)`` pairs, answers them with one method against
a fresh :class:`~wormhole.access.AccessSession` and records the returned
length, per-inquiry query count, wall time and the session's running
``fraction_seen``.  Ground-truth distances come from a plain BFS over the
graph, outside the session, so they never change the query-cost curve.
"""

from __future__ import annotations

import csv
import math
import os
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .access import AccessSession
from .baseline import bfs_distance, bibfs
from .coregen import decomposition_nbytes
from .errors import Disconnected, ExhaustedComponent
from .oracle import BiBFSOracle, LabelIndexOracle
from .router import EXHAUSTED, SAME_NODE, route

METHODS = ("wormhole_E", "wormhole_H", "wormhole_M", "bibfs")
DISCONNECTED = "disconnected"

RECORD_COLUMNS = (
    "inquiry_idx", "s", "t", "case", "est_len", "true_len", "additive_err",
    "relative_err", "queries_used", "wall_time_ns", "fraction_seen_after",
)
AGGREGATE_COLUMNS = (
    "method", "n", "m", "core_fraction", "setup_time_s", "setup_bytes", "num_valid",
    "pct_exact", "pct_le1", "pct_le2", "mean_rel_err", "mean_inquiry_time_us",
    "median_inquiry_time_us", "total_fraction_seen",
)


def relative_error(est_len, true_len):
    """``(est - true) / true``; undefined for ``true_len < 1``."""
    if true_len < 1:
        raise ValueError("relative error needs a true distance of at least 1")
    return (est_len - true_len) / true_len


def breakeven(setup_fast, setup_slow, mit_fast, mit_slow, mit_unit=1.0):
    """Inquiries after which the slow-setup method wins on total time.

    ``setup_fast``/``mit_fast`` belong to the method with cheap setup and
    slower inquiries.  ``mit_unit`` converts inquiry times into the unit of
    the setup times (``1e-6`` for seconds vs. microseconds).  Returns
    ``inf`` when the indexed method is never faster per inquiry.
    """
    gain = (mit_fast - mit_slow) * mit_unit
    if gain <= 0:
        return math.inf
    return (setup_slow - setup_fast) / gain


@dataclass
class InquiryRecord:
    idx: int
    s: int
    t: int
    case: str
    est_len: int | None
    true_len: int | None
    queries_used: int
    wall_time_ns: int
    fraction_seen_after: float

    @property
    def valid(self):
        return self.est_len is not None and self.case not in (SAME_NODE, EXHAUSTED, DISCONNECTED)

    @property
    def additive_err(self):
        if self.est_len is None or self.true_len is None:
            return None
        return self.est_len - self.true_len

    @property
    def relative_err(self):
        if self.est_len is None or self.true_len is None or self.true_len < 1:
            return None
        return relative_error(self.est_len, self.true_len)


@dataclass
class BenchReport:
    method: str
    n: int
    m: int
    core_fraction: float | None
    setup_time_s: float | None
    setup_bytes: int | None
    records: list = field(default_factory=list)
    total_fraction_seen: float = 0.0
    threads: int = 1

    def valid_records(self):
        return [r for r in self.records if r.valid]

    @property
    def num_valid(self):
        return len(self.valid_records())

    def _pct(self, bound):
        judged = [r for r in self.valid_records() if r.true_len is not None]
        if not judged:
            return None
        return 100.0 * sum(r.additive_err <= bound for r in judged) / len(judged)

    @property
    def pct_exact(self):
        return self._pct(0)

    @property
    def pct_le1(self):
        return self._pct(1)

    @property
    def pct_le2(self):
        return self._pct(2)

    @property
    def mean_rel_err(self):
        errs = [r.relative_err for r in self.valid_records() if r.relative_err is not None]
        return statistics.fmean(errs) if errs else None

    def _times_us(self):
        return [r.wall_time_ns / 1000.0 for r in self.valid_records()]

    @property
    def mean_inquiry_time_us(self):
        t = self._times_us()
        return statistics.fmean(t) if t else None

    @property
    def median_inquiry_time_us(self):
        t = self._times_us()
        return statistics.median(t) if t else None

    def fraction_seen_curve(self):
        return np.array([r.fraction_seen_after for r in self.records])

    def aggregates(self):
        return {c: getattr(self, c) for c in AGGREGATE_COLUMNS}


def _sampler(n, rng_seed):
    rng = np.random.default_rng(rng_seed)
    while True:
        s, t = rng.integers(n, size=2).tolist()
        yield s, t


def _answer(method, session, dec, oracle, s, t):
    """Returns ``(case, est_len, queries_used)``."""
    try:
        if method == "bibfs":
            r = bibfs(session, s, t)
        else:
            r = route(session, dec, s, t, oracle=oracle, variant=method[-1])
    except ExhaustedComponent:
        return EXHAUSTED, None, 0
    except Disconnected:
        return DISCONNECTED, None, 0
    return r.case, r.length, r.queries_used


def run_bench(g, dec, method, num_inquiries, rng_seed=0, ground_truth=True, *,
              index=None, setup_time=None, setup_bytes=None, count_valid=False,
              threads=1, truth_cache=None):
    """Answer ``num_inquiries`` uniform inquiries and collect a report.

    With ``count_valid`` sampling continues until that many valid inquiries
    have been answered (at most twenty times as many draws).  ``index`` is a
    prebuilt :class:`~wormhole.oracle.CoreLabelIndex` for ``wormhole_M``.
    ``truth_cache`` may be a dict shared across runs on the same graph.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    wormhole = method != "bibfs"
    if wormhole and dec is None:
        raise ValueError(f"{method} needs a decomposition")
    if not wormhole and dec is not None:
        raise ValueError("bibfs runs without a decomposition")
    if dec is not None and dec.graph.n != g.n:
        raise ValueError("decomposition does not match the graph")
    if threads > 1 and count_valid:
        raise ValueError("count_valid is only supported single-threaded")

    oracle = None
    if wormhole:
        oracle = LabelIndexOracle(dec, index) if method == "wormhole_M" else BiBFSOracle(dec)
        if setup_bytes is None:
            setup_bytes = decomposition_nbytes(g.n)
            if method == "wormhole_M":
                setup_bytes += oracle.index.nbytes()

    report = BenchReport(method, g.n, g.m, dec.target_fraction if dec is not None else None,
                         setup_time, setup_bytes if wormhole else (setup_bytes or 0),
                         threads=threads)
    session = AccessSession(g)
    if wormhole:
        session.absorb(np.flatnonzero(dec.l0))
    session.mark_phase("preprocessing")
    if num_inquiries <= 0:
        report.total_fraction_seen = session.fraction_seen()
        return report

    # warm-up on a throwaway session so it cannot perturb the cost curve
    _answer(method, AccessSession(g), dec, oracle, 0, g.n - 1)
    cache = {} if truth_cache is None else truth_cache

    def truth(s, t):
        if not ground_truth or s == t:
            return None
        key = (s, t) if s < t else (t, s)
        if key not in cache:
            cache[key] = bfs_distance(g, s, t)
        return cache[key]

    def one(idx, s, t):
        t0 = time.perf_counter_ns()
        case, est, q = _answer(method, session, dec, oracle, s, t)
        dt = time.perf_counter_ns() - t0
        session.mark_phase(f"inquiry {idx}")
        return InquiryRecord(idx, s, t, case, est, None, q, dt, session.fraction_seen())

    pairs = _sampler(g.n, rng_seed)
    if threads > 1:
        batch = [next(pairs) for _ in range(num_inquiries)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(lambda a: one(a[0], *a[1]), enumerate(batch)))
        records.sort(key=lambda r: r.idx)
    else:
        records = []
        valid = 0
        limit = 20 * num_inquiries if count_valid else num_inquiries
        while len(records) < limit:
            s, t = next(pairs)
            rec = one(len(records), s, t)
            records.append(rec)
            valid += rec.valid
            if count_valid and valid >= num_inquiries:
                break
    for rec in records:
        if rec.valid:
            rec.true_len = truth(rec.s, rec.t)
    report.records = records
    report.total_fraction_seen = session.fraction_seen()
    return report


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def export_csv(report, prefix, include_timing=False):
    """Write ``<prefix>_records.csv`` and ``<prefix>_aggregates.csv``.

    Per-inquiry wall times vary run to run, so the records file leaves
    ``wall_time_ns`` blank unless ``include_timing``; the aggregates always
    carry mean and median inquiry times.  Returns both paths.
    """
    prefix = os.fspath(prefix)
    rec_path, agg_path = f"{prefix}_records.csv", f"{prefix}_aggregates.csv"
    with open(rec_path, "w", newline="") as fh:
        if report.threads > 1:
            fh.write(f"# fraction_seen_after depends on completion order across {report.threads} threads\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(RECORD_COLUMNS)
        for r in report.records:
            w.writerow([_fmt(x) for x in (
                r.idx, r.s, r.t, r.case, r.est_len, r.true_len, r.additive_err,
                r.relative_err, r.queries_used, r.wall_time_ns if include_timing else None,
                r.fraction_seen_after)])
    with open(agg_path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(AGGREGATE_COLUMNS)
        if report.records:
            agg = report.aggregates()
            w.writerow([_fmt(agg[c]) for c in AGGREGATE_COLUMNS])
    return rec_path, agg_path


def read_csv(path):
    """Rows of a CSV written by :func:`export_csv` as dicts (comments skipped)."""
    with open(path, newline="") as fh:
        lines = [line for line in fh if not line.startswith("#")]
    return list(csv.DictReader(lines))
