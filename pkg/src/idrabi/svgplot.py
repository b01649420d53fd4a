"""Tiny deterministic SVG line plots.

Hand-rolled on purpose: the CLI promises byte-identical outputs for identical
configs, so the emitter avoids libraries that embed generated ids or version
strings.  Only what the sweep and evolution figures need: shared-x stacked
panels, polylines with optional dashing, nice ticks, a small legend.
"""

from __future__ import annotations

import math

_MARGIN_L = 64.0
_MARGIN_R = 16.0
_MARGIN_T = 34.0
_MARGIN_B = 44.0


def _nice_step(span: float, target: int) -> float:
    raw = span / max(target, 1)
    power = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        if raw <= mult * power:
            return mult * power
    return 10.0 * power


def _ticks(lo: float, hi: float, target: int = 5):
    if hi <= lo:
        return [lo]
    step = _nice_step(hi - lo, target)
    first = math.ceil(lo / step - 1e-9) * step
    ticks = []
    value = first
    while value <= hi + 1e-9 * step:
        ticks.append(0.0 if abs(value) < 1e-12 * step else value)
        value += step
    return ticks


def _bounds(values):
    lo = min(values)
    hi = max(values)
    if hi == lo:
        lo -= 0.5
        hi += 0.5
    pad = 0.04 * (hi - lo)
    return lo - pad, hi + pad


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _label(value: float) -> str:
    return f"{value:.6g}"


def _esc(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def render_figure(panels, *, width: int = 760, panel_height: int = 300, title: str = "") -> str:
    """Render stacked panels sharing an x axis to an SVG string.

    Each panel is a dict with keys:
      series : list of {x, y, color, dash (opt), label (opt)}
      ylabel : axis caption
      xlabel : caption under the panel (usually only the last one)
    """
    height = _MARGIN_T + len(panels) * panel_height
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height:.0f}" viewBox="0 0 {width} {height:.0f}">',
        f'<rect width="{width}" height="{height:.0f}" fill="white"/>',
    ]
    if title:
        out.append(
            f'<text x="{width / 2:.1f}" y="20" font-family="sans-serif" font-size="14" '
            f'text-anchor="middle">{_esc(title)}</text>'
        )

    for p_idx, panel in enumerate(panels):
        top = _MARGIN_T + p_idx * panel_height
        plot_w = width - _MARGIN_L - _MARGIN_R
        plot_h = panel_height - _MARGIN_B
        series = panel["series"]
        xs = [float(v) for s in series for v in s["x"]]
        ys = [float(v) for s in series for v in s["y"]]
        x_lo, x_hi = _bounds(xs)
        y_lo, y_hi = _bounds(ys)

        def px(x):
            return _MARGIN_L + (x - x_lo) / (x_hi - x_lo) * plot_w

        def py(y):
            return top + (y_hi - y) / (y_hi - y_lo) * plot_h

        out.append(
            f'<rect x="{_MARGIN_L}" y="{top:.1f}" width="{plot_w}" height="{plot_h:.1f}" '
            'fill="none" stroke="#444" stroke-width="1"/>'
        )
        for tick in _ticks(x_lo, x_hi):
            x = px(tick)
            out.append(
                f'<line x1="{_fmt(x)}" y1="{top + plot_h:.1f}" x2="{_fmt(x)}" '
                f'y2="{top + plot_h + 5:.1f}" stroke="#444" stroke-width="1"/>'
            )
            out.append(
                f'<text x="{_fmt(x)}" y="{top + plot_h + 18:.1f}" font-family="sans-serif" '
                f'font-size="11" text-anchor="middle">{_label(tick)}</text>'
            )
        for tick in _ticks(y_lo, y_hi):
            y = py(tick)
            out.append(
                f'<line x1="{_MARGIN_L - 5}" y1="{_fmt(y)}" x2="{_MARGIN_L}" '
                f'y2="{_fmt(y)}" stroke="#444" stroke-width="1"/>'
            )
            out.append(
                f'<text x="{_MARGIN_L - 8}" y="{y + 4:.2f}" '
                f'font-family="sans-serif" font-size="11" '
                f'text-anchor="end">{_label(tick)}</text>'
            )
        for s in series:
            points = " ".join(
                f"{_fmt(px(float(x)))},{_fmt(py(float(y)))}" for x, y in zip(s["x"], s["y"])
            )
            dash = f' stroke-dasharray="{s["dash"]}"' if s.get("dash") else ""
            out.append(
                f'<polyline points="{points}" fill="none" stroke="{s["color"]}" '
                f'stroke-width="1.4"{dash}/>'
            )
        if panel.get("ylabel"):
            cy = top + plot_h / 2
            out.append(
                f'<text x="16" y="{cy:.1f}" font-family="sans-serif" font-size="12" '
                f'text-anchor="middle" transform="rotate(-90 16 {cy:.1f})">'
                f"{_esc(panel['ylabel'])}</text>"
            )
        if panel.get("xlabel"):
            out.append(
                f'<text x="{_MARGIN_L + plot_w / 2:.1f}" y="{top + plot_h + 34:.1f}" '
                f'font-family="sans-serif" font-size="12" text-anchor="middle">'
                f"{_esc(panel['xlabel'])}</text>"
            )
        labeled = [s for s in series if s.get("label")]
        for l_idx, s in enumerate(labeled):
            ly = top + 14 + 16 * l_idx
            lx = _MARGIN_L + plot_w - 132
            dash = f' stroke-dasharray="{s["dash"]}"' if s.get("dash") else ""
            out.append(
                f'<line x1="{lx:.1f}" y1="{ly:.1f}" x2="{lx + 26:.1f}" y2="{ly:.1f}" '
                f'stroke="{s["color"]}" stroke-width="1.4"{dash}/>'
            )
            out.append(
                f'<text x="{lx + 32:.1f}" y="{ly + 4:.1f}" font-family="sans-serif" '
                f'font-size="11">{_esc(s["label"])}</text>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
