"""Deterministic figure output: SVG text, or binary PGM rasters.

Nothing here depends on a plotting library; the same input always gives
the same bytes.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .diffraction import BraggAmplitude
from .errors import UnsupportedDimensionError, UsageError
from .lattice import Lattice


@dataclass(frozen=True)
class DotPlotSpec:
    canvas_size: tuple[int, int] = (600, 600)
    dot_scale: float = 20.0  # radius in pixels per unit amplitude
    point_radius: float = 2.0  # fixed radius for render_points
    background: str = "white"
    foreground: str = "black"
    margin: int = 30


@dataclass(frozen=True)
class _Dot:
    x: float
    y: float
    r: float
    filled: bool = True


def _fmt(v: float) -> str:
    # shortest round-trip repr, so scaled radii stay exactly scaled in text
    return repr(float(v))


def _coord(v: float) -> str:
    return f"{v:.3f}"


def _svg(spec: DotPlotSpec, dots: list[_Dot], extra: Sequence[str] = ()) -> bytes:
    w, h = spec.canvas_size
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
        f'<rect x="0" y="0" width="{w}" height="{h}" fill="{spec.background}"/>',
    ]
    lines.extend(extra)
    for d in dots:
        if d.filled:
            style = f'fill="{spec.foreground}"'
        else:
            style = f'fill="none" stroke="{spec.foreground}" stroke-width="1"'
        lines.append(f'<circle cx="{_coord(d.x)}" cy="{_coord(d.y)}" r="{_fmt(d.r)}" {style}/>')
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode("utf-8")


def _pgm(spec: DotPlotSpec, dots: list[_Dot]) -> bytes:
    """Binary PGM (P5): background 255, dots 0; open dots get a 1.5px ring."""
    w, h = spec.canvas_size
    img = np.full((h, w), 255, dtype=np.uint8)
    for d in dots:
        r = max(d.r, 0.5)
        x0, x1 = max(int(np.floor(d.x - r - 1)), 0), min(int(np.ceil(d.x + r + 1)), w - 1)
        y0, y1 = max(int(np.floor(d.y - r - 1)), 0), min(int(np.ceil(d.y + r + 1)), h - 1)
        if x0 > x1 or y0 > y1:
            continue
        yy, xx = np.mgrid[y0 : y1 + 1, x0 : x1 + 1]
        dist = np.hypot(xx + 0.5 - d.x, yy + 0.5 - d.y)
        mask = dist <= r if d.filled else np.abs(dist - r) <= 0.75
        img[y0 : y1 + 1, x0 : x1 + 1][mask] = 0
    return f"P5\n{w} {h}\n255\n".encode("ascii") + img.tobytes()


def _emit(spec: DotPlotSpec, dots: list[_Dot], fmt: str, extra: Sequence[str] = ()) -> bytes:
    if fmt == "svg":
        return _svg(spec, dots, extra)
    if fmt == "pgm":
        return _pgm(spec, dots)
    raise UsageError(f"unknown image format {fmt!r}")


def _plot_area(spec: DotPlotSpec) -> tuple[float, float, float, float]:
    w, h = spec.canvas_size
    m = spec.margin
    return m, m, w - 2 * m, h - 2 * m


def render_points(points, lat: Lattice, spec: DotPlotSpec = DotPlotSpec(), fmt: str = "svg") -> bytes:
    """One fixed-radius dot per point, centred on the origin of the canvas."""
    if lat.dimension != 2:
        raise UnsupportedDimensionError(f"render_points draws 2D lattices only, got n={lat.dimension}")
    pts = np.asarray(points, dtype=np.int64).reshape(-1, 2)
    pos = lat.positions(pts)
    pos = pos[np.lexsort((pos[:, 1], pos[:, 0]))] if len(pos) else pos
    extent = float(np.abs(pos).max()) if len(pos) else 1.0
    extent = extent or 1.0
    x0, y0, pw, ph = _plot_area(spec)
    cx, cy = x0 + pw / 2, y0 + ph / 2
    scale = min(pw, ph) / (2 * extent)
    dots = [_Dot(cx + px * scale, cy - py * scale, spec.point_radius) for px, py in pos]
    return _emit(spec, dots, fmt)


def _bragg_key(b: BraggAmplitude):
    return (b.k.denominators, b.k.numerators)


def render_bragg(amplitudes: Sequence[BraggAmplitude], spec: DotPlotSpec = DotPlotSpec(),
                 fmt: str = "svg") -> bytes:
    """Dots at (p1/q1, p2/q2) in the unit cell with radius dot_scale*|H|.

    Zero amplitudes are left out, which is what produces the empty lines.
    Negative amplitudes are drawn as open circles.
    """
    amps = sorted(amplitudes, key=_bragg_key)
    if any(b.k.dimension != 2 for b in amps):
        raise UnsupportedDimensionError("render_bragg draws 2D maps only")
    x0, y0, pw, ph = _plot_area(spec)
    dots = []
    for b in amps:
        if b.value == 0:
            continue
        u, v = b.k.dual_coords()
        dots.append(_Dot(x0 + u * pw, y0 + ph - v * ph, spec.dot_scale * abs(b.value), b.value > 0))
    legend = [
        f'<rect x="{x0}" y="{y0}" width="{pw}" height="{ph}" fill="none" stroke="{spec.foreground}" stroke-width="0.5"/>',
        f'<text x="{x0}" y="{y0 - 8}" font-size="11" fill="{spec.foreground}">'
        "radius ~ |amplitude|; filled: positive, open: negative</text>",
    ]
    return _emit(spec, dots, fmt, legend)


def render_density_curve(curve: Sequence[tuple[int, float]], spec: DotPlotSpec = DotPlotSpec(),
                         fmt: str = "svg") -> bytes:
    """Markers and a polyline of density against dimension, y axis fixed to [0, 1]."""
    if not curve:
        raise UsageError("density curve is empty")
    pts = sorted((int(n), min(max(float(v), 0.0), 1.0)) for n, v in curve)
    x0, y0, pw, ph = _plot_area(spec)
    n_lo, n_hi = pts[0][0], pts[-1][0]
    span = (n_hi - n_lo) or 1

    def to_px(n: int, v: float) -> tuple[float, float]:
        return x0 + (n - n_lo) / span * pw, y0 + ph - v * ph

    xy = [to_px(n, v) for n, v in pts]
    fg = spec.foreground
    extra = [
        f'<line x1="{x0}" y1="{y0 + ph}" x2="{x0 + pw}" y2="{y0 + ph}" stroke="{fg}"/>',
        f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y0 + ph}" stroke="{fg}"/>',
        f'<polyline points="{" ".join(f"{_coord(x)},{_coord(y)}" for x, y in xy)}" fill="none" stroke="{fg}"/>',
    ]
    for tick in (0.0, 0.5, 1.0):
        _, ty = to_px(n_lo, tick)
        extra.append(f'<text x="{x0 - 26}" y="{_coord(ty + 4)}" font-size="10" fill="{fg}">{tick:.1f}</text>')
    for n, _ in pts:
        tx, _ = to_px(n, 0.0)
        extra.append(f'<text x="{_coord(tx - 3)}" y="{y0 + ph + 14}" font-size="10" fill="{fg}">{n}</text>')
    extra.append(f'<text x="{x0 + pw / 2 - 30}" y="{y0 + ph + 27}" font-size="11" fill="{fg}">dimension n</text>')
    dots = [_Dot(x, y, 3.0) for x, y in xy]
    return _emit(spec, dots, fmt, extra)
