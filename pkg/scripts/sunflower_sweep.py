"""Sunflower extraction rate as the family shrinks below the f-bound.

For each (s, n) random s-uniform families of size frac * f(s, n) are drawn
and the fraction of successful extractions is reported.

    python3 scripts/sunflower_sweep.py --trials 200 --seed 1
"""
from __future__ import annotations

import argparse
import random
from dataclasses import dataclass
from math import comb

from spikelab.bits import mask_of
from spikelab.errors import Insufficient
from spikelab.extremal import SetFamily, f_bound, sunflower_extract


@dataclass
class SweepConfig:
    s_values: tuple[int, ...] = (2, 3)
    n_values: tuple[int, ...] = (3, 4)
    fractions: tuple[float, ...] = (0.1, 0.25, 0.5, 1.0)
    trials: int = 200
    seed: int = 0
    slack: int = 4  # universe size as a multiple of the minimum


def _family(rng: random.Random, s: int, size: int, slack: int) -> SetFamily:
    u = next(u for u in range(s, 256) if comb(u, s) >= size)
    u = max(u, slack * s)
    members = set()
    while len(members) < size:
        members.add(mask_of(rng.sample(range(u), s)))
    return SetFamily(u, tuple(sorted(members)))


def run(cfg: SweepConfig) -> list[tuple]:
    rng = random.Random(cfg.seed)
    rows = []
    for s in cfg.s_values:
        for n in cfg.n_values:
            f = f_bound(s, n)
            for frac in cfg.fractions:
                size = max(1, int(frac * f))
                ok = 0
                for _ in range(cfg.trials):
                    try:
                        sunflower_extract(_family(rng, s, size, cfg.slack), n)
                        ok += 1
                    except Insufficient:
                        pass
                rows.append((s, n, f, frac, size, ok / cfg.trials))
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=SweepConfig.trials)
    ap.add_argument("--seed", type=int, default=SweepConfig.seed)
    a = ap.parse_args()
    print(f"{'s':>3} {'n':>3} {'f(s,n)':>8} {'frac':>6} {'size':>6} {'success':>8}")
    for s, n, f, frac, size, rate in run(SweepConfig(trials=a.trials, seed=a.seed)):
        print(f"{s:>3} {n:>3} {f:>8} {frac:>6.2f} {size:>6} {rate:>8.2%}")


if __name__ == "__main__":
    main()
