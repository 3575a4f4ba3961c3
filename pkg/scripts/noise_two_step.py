"""How gate noise and Trotter depth wash out the phi = 0 / phi = pi contrast.

Prints the contrast at tau = 1 for a ladder of two-qubit error rates at one
and two Trotter steps, then sweeps the full tau grid at both depths.
"""
from dataclasses import replace
from pathlib import Path

import numpy as np

from _common import CONFIGS, parser, sweep
from centralspin.harness import contrast, load_config, single_point
from centralspin.noise import NoiseParams


def main():
    ap = parser(__doc__.splitlines()[0])
    ap.add_argument("--trajectories", type=int, default=20_000)
    args = ap.parse_args()
    base = replace(load_config(CONFIGS / "noisy_two_pes.json"), seed=args.seed, shots=0)
    print("p2     steps=1          steps=2")
    for p2 in (0.0, 0.01, 0.03, 0.05, 0.1):
        cells = []
        for steps in (1, 2):
            cfg = replace(base, steps=steps, noise=replace(base.noise, p2=p2, trajectories=args.trajectories))
            val, se = contrast(single_point(cfg, 1.0, 0.0), single_point(cfg, 1.0, np.pi), with_stderr=True)
            cells.append(f"{val:.3f} +- {se:.3f}")
        print(f"{p2:<6} {cells[0]:<16} {cells[1]}")
    out = Path(args.out_dir)
    for steps in (1, 2):
        sweep(replace(base, steps=steps, shots=4096), out, f"noisy_two_pes_s{steps}")
    sweep(replace(base, backend="trotter", noise=NoiseParams.noiseless()), out, "ideal_two_pes_s1")


if __name__ == "__main__":
    main()
