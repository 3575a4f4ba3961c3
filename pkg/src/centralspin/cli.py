"""Command line: ``centralspin {run,plot,export-qasm,oracle,compare}``."""
from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from . import harness
from .harness import ExperimentConfig, load_config
from .plot import emit_plot


class _Parser(argparse.ArgumentParser):
    """Report usage errors as a single line rather than a usage block."""

    def error(self, message):
        self.exit(2, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="experiment config (JSON)")
    p.add_argument("--out", help="output path (stdout when omitted, where applicable)")
    p.add_argument("--seed", type=int)
    p.add_argument("--backend", choices=harness.BACKENDS)
    p.add_argument("--steps", type=int)
    p.add_argument("--shots", type=int)
    p.add_argument("--topology", help="device topology JSON (bundled five-qubit chip by default)")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="centralspin", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="sweep a config and write the result CSV")
    _common(p)

    p = sub.add_parser("plot", help="render a result CSV as an SVG line chart")
    p.add_argument("csv")
    p.add_argument("--out", required=True)

    p = sub.add_parser("export-qasm", help="write the legalized circuit for one sweep point")
    _common(p)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--phase", type=float, default=0.0)

    p = sub.add_parser("oracle", help="closed-form population table")
    _common(p)

    p = sub.add_parser("compare", help="trotter minus exact population table")
    _common(p)
    return ap


def _config(args) -> ExperimentConfig:
    cfg = load_config(args.config) if args.config else ExperimentConfig()
    overrides = {
        "seed": args.seed,
        "backend": args.backend,
        "steps": args.steps,
        "shots": args.shots,
        "topology_path": args.topology,
    }
    return replace(cfg, **{k: v for k, v in overrides.items() if v is not None})


def _emit_table(rows, out):
    if out:
        with open(out, "w", newline="") as fh:
            harness.write_table(rows, fh)
    else:
        harness.write_table(rows, sys.stdout)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "plot":
            emit_plot(args.csv, args.out)
            return 0
        cfg = _config(args)
        if args.command == "run":
            rows = harness.run(cfg)
            if args.out:
                harness.write_csv(rows, args.out)
            else:
                _emit_table([vars(r) for r in rows], None)
        elif args.command == "export-qasm":
            text = harness.export_circuit(cfg, args.tau, args.phase, args.out)
            if not args.out:
                sys.stdout.write(text)
        elif args.command == "oracle":
            _emit_table(harness.oracle_rows(cfg), args.out)
        elif args.command == "compare":
            _emit_table(harness.compare_rows(cfg), args.out)
    except (ValueError, OSError, KeyError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"centralspin {args.command}: error: {msg}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
