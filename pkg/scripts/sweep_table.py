"""Table of the lower bound for B_{p,s} over a (p, s) lattice, with case and regime flag."""

import argparse
from dataclasses import dataclass

import numpy as np

from riesz_sharp.constants import lower_bound, regime_flag
from riesz_sharp.params import ParamSpace


@dataclass
class Config:
    ps: tuple = (1.1, 1.25, 1.5, 1.75, 2.0, 3.0, 4.0, 9.0, 12.0, 20.0)
    s_min: float = 0.5
    s_max: float = 4.0
    s_count: int = 8
    check: bool = True


def run(cfg: Config):
    ss = np.linspace(cfg.s_min, cfg.s_max, cfg.s_count)
    print(f"{'p':>6} {'s':>6} {'value':>10} {'case':>4}  regime")
    for p in cfg.ps:
        for s in ss:
            ps = ParamSpace(p, float(s))
            res = lower_bound(ps, check=cfg.check)
            print(f"{p:6.3g} {s:6.3g} {res.value:10.6f} {res.case_label:4d}  {regime_flag(ps, res)}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--no-check", action="store_true", help="skip the grid cross-check")
    args = ap.parse_args()
    run(Config(check=not args.no_check))


if __name__ == "__main__":
    main()
