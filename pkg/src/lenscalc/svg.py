"""Deterministic SVG rendering of almost toric base diagrams: polygon
outline, crosses at nodes, dashed cuts, and lens-space readout labels.
The exact JSON form of the diagram is embedded as a metadata comment."""

from __future__ import annotations

import json
from fractions import Fraction

from .atf import AtfDiagram, check_consistency, node_boundary_lens
from .errors import UnsupportedConfigurationError

_SCALE = 80
_MARGIN = 40


def _fmt(x: float) -> str:
    return f"{x:.3f}"


def render_svg(d: AtfDiagram) -> str:
    xs = [v[0] for v in d.vertices]
    ys = [v[1] for v in d.vertices]
    for n in d.nodes:
        xs.extend((n.position[0], n.cut_end[0]))
        ys.extend((n.position[1], n.cut_end[1]))
    minx, maxx = min(xs), max(xs)
    miny, maxy = min(ys), max(ys)
    width = float(maxx - minx) * _SCALE + 2 * _MARGIN
    height = float(maxy - miny) * _SCALE + 2 * _MARGIN

    def project(p: tuple[Fraction, Fraction]) -> tuple[float, float]:
        # flip y so the mathematical orientation is upright on screen
        return (
            float(p[0] - minx) * _SCALE + _MARGIN,
            height - (float(p[1] - miny) * _SCALE + _MARGIN),
        )

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        f"<!-- lenscalc:diagram {json.dumps(d.to_json_obj(), separators=(',', ':'))} -->",
    ]
    points = " ".join(
        f"{_fmt(px)},{_fmt(py)}" for px, py in (project(v) for v in d.vertices)
    )
    lines.append(
        f'<polygon points="{points}" fill="none" stroke="black" stroke-width="1.5"/>'
    )
    reports = check_consistency(d)
    for i, node in enumerate(d.nodes):
        nx, ny = project(node.position)
        cx, cy = project(node.cut_end)
        lines.append(
            f'<line x1="{_fmt(nx)}" y1="{_fmt(ny)}" x2="{_fmt(cx)}" y2="{_fmt(cy)}" '
            'stroke="black" stroke-width="1" stroke-dasharray="4 3"/>'
        )
        r = 4.0
        lines.append(
            f'<line x1="{_fmt(nx - r)}" y1="{_fmt(ny - r)}" x2="{_fmt(nx + r)}" y2="{_fmt(ny + r)}" '
            'stroke="black" stroke-width="1.5"/>'
        )
        lines.append(
            f'<line x1="{_fmt(nx - r)}" y1="{_fmt(ny + r)}" x2="{_fmt(nx + r)}" y2="{_fmt(ny - r)}" '
            'stroke="black" stroke-width="1.5"/>'
        )
        if reports[i].passed:
            try:
                label = str(node_boundary_lens(d, i))
            except UnsupportedConfigurationError:
                continue
            lines.append(
                f'<text x="{_fmt(cx + 6)}" y="{_fmt(cy - 6)}" font-size="12" '
                f'font-family="monospace">{label}</text>'
            )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
