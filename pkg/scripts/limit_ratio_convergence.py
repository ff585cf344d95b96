"""Deviation of the test-family ratio from its closed form under refinement.

Runs two angle targets side by side: the integrability edge pi/(2p), where
|g|^p stops being integrable, and pi/p.
"""

import argparse
import math
from dataclasses import dataclass, field

from riesz_sharp.params import ParamSpace
from riesz_sharp.testfam import TestFamilyParams, critical_gamma, limit_ratio_check, refine


@dataclass
class Config:
    cases: list = field(default_factory=lambda: [(1.5, 1.5, 1.0, 0.0), (1.5, 1.5, 0.0, 1.0),
                                                 (10.0, 10 / 9, 1.0, 0.0), (10.0, 10 / 9, 0.0, 1.0)])
    offset: float = 1e-3
    rho: float = 0.999
    size: int = 2**15
    steps: int = 4


def run(cfg: Config):
    print(f"{'p':>6} {'s':>7} {'a':>4} {'b':>4} {'target':>10}  deviations")
    for p, s, a, b in cfg.cases:
        ps = ParamSpace(p, s)
        for name, target in (("pi/2p", critical_gamma(p)), ("pi/p", math.pi / p)):
            gamma = target - cfg.offset
            if not gamma < math.pi / 2:
                print(f"{p:6.3g} {s:7.4g} {a:4g} {b:4g} {name:>10}  (angle outside (0, pi/2))")
                continue
            tp, size, devs = TestFamilyParams(a, b, gamma, cfg.rho), cfg.size, []
            for _ in range(cfg.steps):
                devs.append(limit_ratio_check(tp, ps, size))
                tp, size = refine(tp, size, target)
            print(f"{p:6.3g} {s:7.4g} {a:4g} {b:4g} {name:>10}  " + "  ".join(f"{d:.4f}" for d in devs))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--steps", type=int, default=Config.steps)
    ap.add_argument("--size", type=int, default=Config.size)
    args = ap.parse_args()
    run(Config(steps=args.steps, size=args.size))


if __name__ == "__main__":
    main()
