"""Transmission feature against anisotropy, ribbon distance and pump intensity.

Each sweep is written as a sweep CSV; the table printed at the end shows
how the feature prominence and width move along each axis.
"""
import argparse
import warnings
from pathlib import Path

from anisosense.config import SweepSpec, preset
from anisosense.outputs import write_csv
from anisosense.sensing import SWEEP_COLUMNS, run_sweep

SWEEPS = {
    "anisotropy": ("silver-iso", SweepSpec("AR_inf", (1.0, 0.1, 0.01, 0.002))),
    "distance": ("aniso-AR0.002", SweepSpec("r_m", (20e-9, 17e-9, 14e-9, 12e-9, 11e-9))),
    "pump": ("aniso-AR0.002", SweepSpec("pump_intensity", (1e8, 5e8, 1e9, 2e9, 4e9))),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("results/transmission_sweeps"))
    ap.add_argument("--workers", type=int, default=4)
    ap.add_argument("--low-plasma", action="store_true",
                    help="use the 0.19 PHz variants of the presets")
    args = ap.parse_args()
    warnings.simplefilter("ignore")
    for label, (base, spec) in SWEEPS.items():
        name = f"{base}-0.19PHz" if args.low_plasma else base
        rows = run_sweep(spec, preset(name), workers=args.workers)
        write_csv(args.out / f"{label}.csv", list(SWEEP_COLUMNS), rows, "sweep")
        print(f"{label} ({name}, axis {spec.axis})")
        print(f"  {'value':>12} {'g_op':>12} {'prominence':>12} {'fwhm':>12}  error")
        for r in rows:
            print(f"  {r['value']:12.4g} {r['g_op']:12.4e} {_num(r['peak_prominence'])} "
                  f"{_num(r['fwhm'])}  {r['error']}")


def _num(v):
    return f"{v:12.4e}" if v is not None else f"{'-':>12}"


if __name__ == "__main__":
    main()
