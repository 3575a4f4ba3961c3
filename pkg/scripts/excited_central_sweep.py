"""Excited central spin over an unexcited bath for L = 1..4.

The population oscillates as cos^2(sqrt(L) tau); the script prints the first
zero of each exact curve next to pi / (2 sqrt L).
"""
from dataclasses import replace
from pathlib import Path

import numpy as np

from _common import CONFIGS, parser
from centralspin.harness import load_config, run, write_csv
from centralspin.plot import emit_plot


def main():
    ap = parser(__doc__.splitlines()[0])
    ap.add_argument("--backend", default="exact", choices=["exact", "trotter", "noisy"])
    args = ap.parse_args()
    base = replace(load_config(CONFIGS / "excited_central.json"), backend=args.backend, seed=args.seed)
    if args.backend == "noisy":
        base = replace(base, shots=4096)
    rows = []
    for L in range(1, 5):
        part = run(replace(base, L=L))
        rows += part
        est = np.array([r.estimate for r in part])
        # first local minimum along tau
        i = next((k for k in range(1, len(est) - 1) if est[k] <= est[k + 1]), len(est) - 1)
        print(f"L={L}: first grid minimum {est[i]:.3g} at tau={part[i].tau:.2f}; pi/(2 sqrt L) = {np.pi / (2 * np.sqrt(L)):.3f}")
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / f"excited_central_{args.backend}.csv"
    write_csv(rows, csv_path)
    emit_plot(csv_path, csv_path.with_suffix(".svg"))
    print(f"wrote {csv_path} and {csv_path.with_suffix('.svg')}")


if __name__ == "__main__":
    main()
