"""Fraction of the graph seen versus number of inquiries.

Runs WormHole (variant E, preprocessing included) and BiBFS on the same
inquiry sequence over one Chung-Lu graph and writes one CSV row per
inquiry with both running fractions.
"""

import csv
import os
from dataclasses import dataclass

from _config import parse_config

from wormhole import AccessSession, ChungLuParams, core_gen, generate, run_bench


@dataclass
class Config:
    n: int = 100_000
    beta: float = 2.5
    avg_degree: float = 10.0
    fractions: tuple = (0.01, 0.04, 0.06)
    inquiries: int = 2000
    seed: int = 0
    out: str = "results/query_cost.csv"


def main(cfg):
    g = generate(ChungLuParams(cfg.n, cfg.beta, cfg.avg_degree, cfg.seed))
    curves = {}
    for f in cfg.fractions:
        dec = core_gen(AccessSession(g), None, f, rng_seed=cfg.seed)
        rep = run_bench(g, dec, "wormhole_E", cfg.inquiries, rng_seed=cfg.seed, ground_truth=False)
        curves[f"wormhole_E_{f:g}"] = rep.fraction_seen_curve()
    curves["bibfs"] = run_bench(g, None, "bibfs", cfg.inquiries, rng_seed=cfg.seed,
                                ground_truth=False).fraction_seen_curve()
    os.makedirs(os.path.dirname(cfg.out) or ".", exist_ok=True)
    with open(cfg.out, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["inquiry_idx", *curves])
        for i in range(cfg.inquiries):
            w.writerow([i, *(repr(float(c[i])) for c in curves.values())])
    for name, c in curves.items():
        print(f"{name:>18}: after {cfg.inquiries} inquiries fraction_seen={c[-1]:.4f}")
    print(f"wrote {cfg.out}")


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
