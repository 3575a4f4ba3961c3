"""Central-spin population for the three-particle entangled bath, one curve per chi.

chi = 0 is dark: the exact curve stays flat at zero while the one-step Trotter
curve picks up a small spurious population at large tau.
"""
from dataclasses import replace
from pathlib import Path

from _common import CONFIGS, parser, sweep
from centralspin.harness import load_config


def main():
    args = parser(__doc__.splitlines()[0]).parse_args()
    base = replace(load_config(CONFIGS / "three_pes.json"), seed=args.seed)
    out = Path(args.out_dir)
    sweep(replace(base, backend="exact"), out, "three_pes_exact")
    sweep(base, out, "three_pes_trotter")
    sweep(replace(base, backend="noisy", shots=4096), out, "three_pes_noisy")


if __name__ == "__main__":
    main()
