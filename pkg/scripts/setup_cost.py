"""Setup time and on-disk footprint of the ring decomposition.

For each graph size: CoreGen wall time, bitmap file size, core label index
build time and size, and the breakeven number of inquiries after which
the core index (variant M) beats variant E on total time.
"""

import os
import tempfile
import time
from dataclasses import dataclass

from _config import parse_config

from wormhole import (
    AccessSession,
    ChungLuParams,
    breakeven,
    build_core_index,
    core_gen,
    default_fraction,
    generate,
    run_bench,
    save_decomposition,
)


@dataclass
class Config:
    sizes: tuple = (10_000, 75_879)
    beta: float = 2.5
    avg_degree: float = 13.4
    inquiries: int = 1000
    seed: int = 0


def main(cfg):
    print(f"{'n':>8} {'m':>9} {'frac':>5} {'coregen s':>9} {'bitmaps MB':>10} "
          f"{'index s':>8} {'index MB':>8} {'breakeven':>10}")
    for n in cfg.sizes:
        g = generate(ChungLuParams(n, cfg.beta, cfg.avg_degree, cfg.seed))
        f = default_fraction(g.n, g.m)
        t0 = time.perf_counter()
        dec = core_gen(AccessSession(g), None, f, rng_seed=cfg.seed)
        setup_e = time.perf_counter() - t0
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "d.dec")
            save_decomposition(dec, path)
            mb = os.path.getsize(path) / 1e6
        t0 = time.perf_counter()
        index = build_core_index(dec)
        setup_m = setup_e + time.perf_counter() - t0
        e = run_bench(g, dec, "wormhole_E", cfg.inquiries, rng_seed=cfg.seed, ground_truth=False)
        m = run_bench(g, dec, "wormhole_M", cfg.inquiries, rng_seed=cfg.seed, ground_truth=False, index=index)
        be = breakeven(setup_e, setup_m, e.mean_inquiry_time_us, m.mean_inquiry_time_us, mit_unit=1e-6)
        print(f"{n:>8} {g.m:>9} {f:>5.2f} {setup_e:>9.3f} {mb:>10.4f} {setup_m - setup_e:>8.3f} "
              f"{index.nbytes() / 1e6:>8.3f} {be:>10.0f}")


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
