"""Static SVG figures written directly, no plotting dependency.

Two figure kinds: log-log tail curves with Wilson error bars plus an optional
fitted power law, and root scatter plots with the unit circle and annulus
bands.  Each data series lives in one ``<g class="series">`` element so the
structure is testable.
"""

from __future__ import annotations

import math

_W, _H = 640, 480
_ML, _MR, _MT, _MB = 70, 20, 36, 50
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2")


def _esc(s: str) -> str:
    return (str(s).replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;"))


def _axis_map(lo: float, hi: float, a: float, b: float):
    span = (hi - lo) or 1.0
    return lambda v: a + (v - lo) / span * (b - a)


def svg_tail_curves(path, series, title="", fit=None) -> None:
    """Write p-hat vs parameter curves on log-log axes.

    ``series`` is a list of dicts with keys ``label`` and ``points``, the
    points being (param, p_hat, ci_lo, ci_hi) tuples; zero rates are clamped
    to the smallest positive value drawn.  ``fit`` is an optional
    (slope, intercept) pair drawn as a straight reference line.
    """
    xs, ys = [], []
    for s in series:
        for x, p, lo, hi in s["points"]:
            if x > 0:
                xs.append(math.log10(x))
                for v in (p, lo, hi):
                    if v > 0:
                        ys.append(math.log10(v))
    if not xs or not ys:
        xs, ys = [0.0, 1.0], [0.0, 1.0]
    pad = 0.15
    x0, x1 = min(xs) - pad, max(xs) + pad
    y0, y1 = min(ys) - pad, max(ys) + pad
    mx = _axis_map(x0, x1, _ML, _W - _MR)
    my = _axis_map(y0, y1, _H - _MB, _MT)
    floor = 10.0 ** y0
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
           f'viewBox="0 0 {_W} {_H}">',
           f'<rect width="{_W}" height="{_H}" fill="white"/>',
           f'<text x="{_W/2}" y="20" text-anchor="middle" font-size="14">'
           f'{_esc(title)}</text>',
           f'<line x1="{_ML}" y1="{_H-_MB}" x2="{_W-_MR}" y2="{_H-_MB}" stroke="black"/>',
           f'<line x1="{_ML}" y1="{_MT}" x2="{_ML}" y2="{_H-_MB}" stroke="black"/>',
           f'<text x="{_W/2}" y="{_H-12}" text-anchor="middle" font-size="12">'
           'log10 parameter</text>',
           f'<text x="16" y="{_H/2}" font-size="12" transform="rotate(-90 16 {_H/2})" '
           'text-anchor="middle">log10 p-hat</text>']
    for i, s in enumerate(series):
        color = _COLORS[i % len(_COLORS)]
        pts, bars, marks = [], [], []
        for x, p, lo, hi in s["points"]:
            if x <= 0:
                continue
            px = mx(math.log10(x))
            py = my(math.log10(max(p, floor)))
            pts.append(f"{px:.1f},{py:.1f}")
            ylo = my(math.log10(max(lo, floor)))
            yhi = my(math.log10(max(hi, floor)))
            bars.append(f'<line x1="{px:.1f}" y1="{ylo:.1f}" x2="{px:.1f}" '
                        f'y2="{yhi:.1f}" stroke="{color}"/>')
            marks.append(f'<circle cx="{px:.1f}" cy="{py:.1f}" r="3" fill="{color}"/>')
        out.append(f'<g class="series" data-label="{_esc(s["label"])}">')
        out.append(f'<polyline points="{" ".join(pts)}" fill="none" stroke="{color}"/>')
        out.extend(bars)
        out.extend(marks)
        out.append('</g>')
        out.append(f'<text x="{_W-_MR-6}" y="{_MT+14*(i+1)}" text-anchor="end" '
                   f'font-size="11" fill="{color}">{_esc(s["label"])}</text>')
    if fit is not None:
        slope, intercept = fit
        pts = []
        for lx in (x0 + pad, x1 - pad):
            ly = (slope * lx * math.log(10) + intercept) / math.log(10)
            pts.append(f"{mx(lx):.1f},{my(min(max(ly, y0), y1)):.1f}")
        out.append(f'<g class="fit"><polyline points="{" ".join(pts)}" fill="none" '
                   'stroke="#444" stroke-dasharray="6 3"/></g>')
    out.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(out) + "\n")


def svg_root_scatter(path, roots, widths=(), title="") -> None:
    """Scatter of complex roots with the unit circle and annulus band overlays."""
    rmax = max([1.25] + [abs(z) * 1.05 for z in roots])
    scale = min(_W, _H) / (2.0 * rmax) * 0.92
    cx, cy = _W / 2.0, _H / 2.0
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
           f'viewBox="0 0 {_W} {_H}">',
           f'<rect width="{_W}" height="{_H}" fill="white"/>',
           f'<text x="{cx}" y="20" text-anchor="middle" font-size="14">'
           f'{_esc(title)}</text>',
           f'<g class="unit-circle"><circle cx="{cx}" cy="{cy}" r="{scale:.2f}" '
           'fill="none" stroke="black"/></g>']
    for w in widths:
        for r in (1.0 - w, 1.0 + w):
            if r > 0:
                out.append(f'<circle class="band" cx="{cx}" cy="{cy}" '
                           f'r="{r * scale:.2f}" fill="none" stroke="#999" '
                           'stroke-dasharray="4 4"/>')
    out.append('<g class="series" data-label="roots">')
    for z in roots:
        out.append(f'<circle cx="{cx + z.real * scale:.2f}" '
                   f'cy="{cy - z.imag * scale:.2f}" r="2" fill="#1f77b4" '
                   'fill-opacity="0.7"/>')
    out.append('</g></svg>')
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(out) + "\n")
