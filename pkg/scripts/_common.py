"""Shared plumbing for the sweep scripts: output directory handling and a run-and-save step."""
from __future__ import annotations

import argparse
from pathlib import Path

from centralspin.harness import ExperimentConfig, run, write_csv
from centralspin.plot import emit_plot

CONFIGS = Path(__file__).resolve().parent / "configs"


def parser(description: str) -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(description=description)
    ap.add_argument("--out-dir", default="results", help="directory for CSV and SVG output")
    ap.add_argument("--seed", type=int, default=0)
    return ap


def sweep(config: ExperimentConfig, out_dir: Path, stem: str) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{stem}.csv"
    write_csv(run(config), csv_path)
    emit_plot(csv_path, out_dir / f"{stem}.svg")
    print(f"wrote {csv_path} and {csv_path.with_suffix('.svg')}")
    return csv_path
