"""Walk a spike up the t ladder and back down on fixed arms.

At each rung the certificate is rechecked, and the round trip
down(up(M)) is compared with M (equality is not expected in general).

    python3 scripts/spike_ladder.py --order 7 --t-max 3
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from spikelab import are_isomorphic, make_spike
from spikelab.errors import SpikelabError
from spikelab.spikes import spike_down, spike_up


@dataclass
class LadderConfig:
    order: int = 7
    t_start: int = 1
    t_max: int = 3


def run(cfg: LadderConfig) -> None:
    M, pi, _ = make_spike(cfg.t_start, cfg.order)
    t = cfg.t_start
    print(f"start: free {t}-spike of order {cfg.order}, {len(M.circuits)} circuits")
    while t < cfg.t_max:
        try:
            up, cert = spike_up(M, pi, t)
        except SpikelabError as exc:
            print(f"  up from t={t}: {type(exc).__name__}: {exc}")
            return
        down, back = spike_down(up, pi, t + 1)
        same = down == M
        iso = same or (M.n <= 12 and are_isomorphic(down, M))
        print(f"  t={t} -> {cert.t}: {len(up.circuits)} circuits, "
              f"{cert.verified_circuit_unions} circuit unions; "
              f"down again certifies t={back.t}, equal={same}, isomorphic={iso}")
        M, t = up, t + 1


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--order", type=int, default=LadderConfig.order)
    ap.add_argument("--t-start", type=int, default=LadderConfig.t_start)
    ap.add_argument("--t-max", type=int, default=LadderConfig.t_max)
    a = ap.parse_args()
    run(LadderConfig(a.order, a.t_start, a.t_max))


if __name__ == "__main__":
    main()
