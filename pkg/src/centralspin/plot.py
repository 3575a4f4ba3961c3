"""Static SVG line charts of harness CSV output."""
from __future__ import annotations

import warnings
from collections import defaultdict
from pathlib import Path
from xml.sax.saxutils import escape

from .harness import read_csv

WIDTH, HEIGHT = 640, 400
MARGIN = dict(left=60, right=150, top=20, bottom=45)
COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#17becf"]


def _label(phase: float, L: int, backend: str, many_L: bool, many_backends: bool) -> str:
    parts = [f"phase={phase:.4g}"]
    if many_L:
        parts.append(f"L={L}")
    if many_backends:
        parts.append(backend)
    return " ".join(parts)


def render_svg(rows) -> str:
    groups: dict[tuple, list] = defaultdict(list)
    for r in rows:
        groups[(r.phase, r.L, r.backend)].append((r.tau, r.estimate))
    many_L = len({k[1] for k in groups}) > 1
    many_backends = len({k[2] for k in groups}) > 1

    taus = [r.tau for r in rows] or [0.0, 1.0]
    x0, x1 = min(taus), max(taus)
    if x1 == x0:
        x1 = x0 + 1.0
    pw = WIDTH - MARGIN["left"] - MARGIN["right"]
    ph = HEIGHT - MARGIN["top"] - MARGIN["bottom"]

    clamped = 0

    def sx(t):
        return MARGIN["left"] + (t - x0) / (x1 - x0) * pw

    def sy(p):
        nonlocal clamped
        if p < 0.0 or p > 1.0:
            clamped += 1
            p = min(max(p, 0.0), 1.0)
        return MARGIN["top"] + (1.0 - p) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{MARGIN["left"]}" y="{MARGIN["top"]}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for i in range(6):
        p = i / 5
        y = sy(p)
        out.append(f'<line x1="{MARGIN["left"] - 4}" y1="{y:.2f}" x2="{MARGIN["left"]}" y2="{y:.2f}" stroke="black"/>')
        out.append(f'<text x="{MARGIN["left"] - 8}" y="{y + 4:.2f}" font-size="11" text-anchor="end">{p:.1f}</text>')
    for i in range(6):
        t = x0 + i * (x1 - x0) / 5
        x = sx(t)
        yb = MARGIN["top"] + ph
        out.append(f'<line x1="{x:.2f}" y1="{yb}" x2="{x:.2f}" y2="{yb + 4}" stroke="black"/>')
        out.append(f'<text x="{x:.2f}" y="{yb + 17}" font-size="11" text-anchor="middle">{t:.3g}</text>')
    out.append(f'<text x="{MARGIN["left"] + pw / 2:.1f}" y="{HEIGHT - 8}" font-size="12" text-anchor="middle">tau</text>')
    out.append(
        f'<text x="14" y="{MARGIN["top"] + ph / 2:.1f}" font-size="12" text-anchor="middle" '
        f'transform="rotate(-90 14 {MARGIN["top"] + ph / 2:.1f})">central excited population</text>'
    )

    for i, (key, pts) in enumerate(sorted(groups.items())):
        color = COLORS[i % len(COLORS)]
        pts = sorted(pts)
        coords = " ".join(f"{sx(t):.2f},{sy(p):.2f}" for t, p in pts)
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{coords}"/>')
        ly = MARGIN["top"] + 12 + 18 * i
        lx = WIDTH - MARGIN["right"] + 10
        out.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 18}" y2="{ly - 4}" stroke="{color}" stroke-width="2"/>')
        label = escape(_label(*key, many_L, many_backends))
        out.append(f'<text class="legend" x="{lx + 24}" y="{ly}" font-size="11">{label}</text>')
    out.append("</svg>")
    if clamped:
        warnings.warn(f"clamped {clamped} estimate(s) outside [0, 1] onto the probability axis", stacklevel=2)
    return "\n".join(out) + "\n"


def emit_plot(csv_path, svg_path) -> None:
    svg = render_svg(read_csv(csv_path))
    Path(svg_path).write_text(svg)
