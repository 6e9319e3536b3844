"""Write stability-region sweep data for plotting with plot_region.gp."""
import argparse
from pathlib import Path

from photokam.report import Axis, SweepSpec, region_sweep, render


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", type=Path, default=Path("results"))
    ap.add_argument("--count", type=int, default=41)
    ap.add_argument("--workers", type=int, default=4)
    args = ap.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    n = args.count
    runs = {
        "sweep_a2": SweepSpec((Axis("a2", 0.0, 0.7, n),)),
        "sweep_q1": SweepSpec((Axis("q1", 0.95, 1.0, n),)),
        # verdict map over (q1, mu) for the classical oblateness A2 = 0
        "grid_q1_mu": SweepSpec((Axis("q1", 0.95, 1.0, n), Axis("mu", 0.001, 0.045, n)),
                                workers=args.workers),
    }
    for name, spec in runs.items():
        rows = region_sweep(spec)
        (args.outdir / f"{name}.csv").write_text(render(rows, "csv"))
        print(f"{name}: {len(rows)} rows")


if __name__ == "__main__":
    main()
