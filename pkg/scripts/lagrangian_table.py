"""Lagrangian of every pattern with KKT residual and grid-oracle gap."""

import argparse
import time
from dataclasses import dataclass

from turan.constructions import CATALOG, PATTERN_NAMES, graph
from turan.lagrangian import grid_oracle, lagrangian, polynomial_form


@dataclass
class TableConfig:
    small_res: int = 600   # resolution for patterns with at most 3 vertices
    large_res: int = 120
    oracle: bool = True


def row(name, cfg):
    H = graph(name)
    t0 = time.perf_counter()
    r = lagrangian(H, check_oracle=False)
    elapsed = time.perf_counter() - t0
    gap = float("nan")
    if cfg.oracle:
        p = polynomial_form(H)
        best, _ = grid_oracle(p, cfg.small_res if p.num_vars <= 3 else cfg.large_res)
        gap = r.value - float(best)
    x = " ".join(f"{w:.6f}" for w in r.maximizer.weights)
    return f"{name:<4} {r.value:.12f}  {str(CATALOG[name].known_density):<24} [{x}]  {r.kkt_residual:.1e}  {gap:.1e}  {elapsed:.2f}s"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--no-oracle", action="store_true")
    a = ap.parse_args(argv)
    cfg = TableConfig(oracle=not a.no_oracle)
    print("name value           closed form              maximizer  kkt  value-oracle  time")
    for name in PATTERN_NAMES:
        print(row(name, cfg))


if __name__ == "__main__":
    main()
