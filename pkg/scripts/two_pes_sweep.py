"""Central-spin population for the two-particle entangled bath, one curve per phase.

Runs the exact, one-step Trotter and noisy backends over the default phase and
tau grids and writes one CSV + SVG pair per backend.
"""
from dataclasses import replace
from pathlib import Path

from _common import CONFIGS, parser, sweep
from centralspin.harness import load_config


def main():
    ap = parser(__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, default=1)
    args = ap.parse_args()
    base = replace(load_config(CONFIGS / "two_pes.json"), steps=args.steps, seed=args.seed)
    out = Path(args.out_dir)
    sweep(replace(base, backend="exact"), out, "two_pes_exact")
    sweep(base, out, f"two_pes_trotter_s{args.steps}")
    sweep(replace(base, backend="noisy", shots=4096), out, f"two_pes_noisy_s{args.steps}")


if __name__ == "__main__":
    main()
