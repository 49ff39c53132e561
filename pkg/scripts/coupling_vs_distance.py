"""Optomechanical coupling g_op(r_m) for the first modes, and the r_m below
which the quadrupole overtakes the dipole."""
import argparse
import warnings
from pathlib import Path

import numpy as np
from scipy.optimize import brentq

from anisosense.config import preset
from anisosense.geometry import Geometry
from anisosense.plasmon import coupling_strength


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--preset", default="aniso-AR0.01")
    ap.add_argument("--n-max", type=int, default=4)
    ap.add_argument("--out", type=Path, default=Path("results/coupling_vs_distance.csv"))
    args = ap.parse_args()
    warnings.simplefilter("ignore")

    cfg = preset(args.preset)
    R = cfg.geometry.R
    r_m = np.linspace(1.05 * R, 4.0 * R, 300)
    g = np.array([[coupling_strength(cfg.material, Geometry(R, r), cfg.mech, n)
                   for n in range(1, args.n_max + 1)] for r in r_m])
    args.out.parent.mkdir(parents=True, exist_ok=True)
    header = "r_m_m," + ",".join(f"g_{n}" for n in range(1, args.n_max + 1))
    np.savetxt(args.out, np.column_stack([r_m, g]), delimiter=",", header=header, comments="")

    def diff(r):
        geo = Geometry(R, r)
        return (coupling_strength(cfg.material, geo, cfg.mech, 2)
                - coupling_strength(cfg.material, geo, cfg.mech, 1))

    r_star = brentq(diff, r_m[0], r_m[-1])
    print(f"{args.preset}: g_2 = g_1 at r_m = {r_star * 1e9:.2f} nm; wrote {args.out}")


if __name__ == "__main__":
    main()
