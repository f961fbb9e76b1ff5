"""Exact pi_n for a few forbidden families, written as CSV.

    python3 scripts/pi_n_trend.py --out trend.csv
"""

import argparse
import sys
import time
from dataclasses import dataclass, field

from turan.report import trend_csv


@dataclass
class TrendConfig:
    families: list = field(default_factory=lambda: [["C13"], ["K3_bb"], ["K3_bb", "G4_b"], ["H5_13"]])
    n_min: int = 3
    n_max: int = 6
    out: str = "-"


def parse_args(argv=None) -> TrendConfig:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--forbid", action="append", help="comma-separated catalog names; repeatable")
    ap.add_argument("--n-min", type=int, default=TrendConfig.n_min)
    ap.add_argument("--n-max", type=int, default=TrendConfig.n_max)
    ap.add_argument("--out", default="-")
    a = ap.parse_args(argv)
    cfg = TrendConfig(n_min=a.n_min, n_max=a.n_max, out=a.out)
    if a.forbid:
        cfg.families = [f.split(",") for f in a.forbid]
    return cfg


def main(argv=None):
    cfg = parse_args(argv)
    start = time.perf_counter()
    text = trend_csv(cfg.families, range(cfg.n_min, cfg.n_max + 1))
    if cfg.out == "-":
        sys.stdout.write(text)
    else:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    print(f"# {len(cfg.families)} families, n={cfg.n_min}..{cfg.n_max}, {time.perf_counter() - start:.1f}s",
          file=sys.stderr)


if __name__ == "__main__":
    main()
