"""Where the small-p reduced gap attains its maximum, as the scan is refined.

The maximiser sits on r = 1 at t = pi - pi/p; the table reports its distance
to that point and to (1, pi) in grid cells.
"""

import argparse
import math
from dataclasses import dataclass, field

from riesz_sharp.minorants import scan
from riesz_sharp.params import ParamSpace


@dataclass
class Config:
    ps: list = field(default_factory=lambda: [1.1, 4 / 3, 1.5, 1.8])
    resolutions: list = field(default_factory=lambda: [250, 500, 1000, 2000, 4000])
    s_factor: float = 1.0


def run(cfg: Config):
    print(f"{'p':>6} {'N':>5} {'max gap':>11} {'r*':>9} {'t*':>9} {'cells to pi-pi/p':>17} {'cells to pi':>12}")
    for p in cfg.ps:
        for n in cfg.resolutions:
            rep = scan("eq3", ParamSpace(p, cfg.s_factor * p), (n, n))
            r, t = rep.argmax
            cell = math.pi / n
            print(f"{p:6.4g} {n:5d} {rep.max_gap:11.3e} {r:9.5f} {t:9.5f} "
                  f"{abs(t - (math.pi - math.pi / p)) / cell:17.1f} {abs(t - math.pi) / cell:12.1f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--s-factor", type=float, default=1.0, help="scan at s = factor * p")
    args = ap.parse_args()
    run(Config(s_factor=args.s_factor))


if __name__ == "__main__":
    main()
