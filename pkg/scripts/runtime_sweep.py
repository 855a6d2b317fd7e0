"""Runtime sweep on Chung-Lu hypergraphs, one parameter varied at a time.

    python scripts/runtime_sweep.py --vary m --methods hlrc,hfrc --out sweep_m.csv

HORC on the larger cells can take many minutes; pass --timeout to cap it.
"""

import argparse
from dataclasses import dataclass, field

from hypercurv.bench import BASELINE, SWEEPS, power_law_exponent, records_to_csv, run_bench


@dataclass
class SweepConfig:
    vary: str = "m"
    methods: tuple[str, ...] = ("hlrc", "hfrc", "horc")
    seeds: tuple[int, ...] = (0, 1, 2)
    timeout: float | None = 600.0
    baseline: dict = field(default_factory=lambda: dict(BASELINE))
    out: str = "runtime_sweep.csv"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--vary", choices=tuple(SWEEPS), default="m")
    ap.add_argument("--methods", default="hlrc,hfrc,horc")
    ap.add_argument("--seeds", default="0,1,2")
    ap.add_argument("--timeout", type=float, default=600.0)
    ap.add_argument("--out", default="runtime_sweep.csv")
    args = ap.parse_args()
    cfg = SweepConfig(
        vary=args.vary,
        methods=tuple(args.methods.split(",")),
        seeds=tuple(int(s) for s in args.seeds.split(",")),
        timeout=args.timeout,
        out=args.out,
    )

    records = run_bench(cfg.vary, methods=cfg.methods, seeds=cfg.seeds, timeout=cfg.timeout, baseline=cfg.baseline)
    with open(cfg.out, "w", encoding="utf-8") as fh:
        fh.write(records_to_csv(records))

    for method in cfg.methods:
        done = [r for r in records if r.method == method and r.status == "ok"]
        print(f"{method}: {len(done)} ok cells")
        for value in SWEEPS[cfg.vary]:
            times = [r.ms for r in done if getattr(r, cfg.vary) == value]
            if times:
                print(f"  {cfg.vary}={value:>6}  mean {sum(times) / len(times):10.1f} ms")
        xs = sorted({getattr(r, cfg.vary) for r in done})
        if len(xs) >= 2:
            ys = [min(r.ms for r in done if getattr(r, cfg.vary) == x) for x in xs]
            print(f"  power-law exponent in {cfg.vary}: {power_law_exponent(xs, ys):.3f}")
    print(f"wrote {cfg.out}")


if __name__ == "__main__":
    main()
