"""
SVG phase portrait of the ratio system: arrows scaled by asinh(speed),
catalog fixed points overlaid as circles.
"""
import math
from xml.sax.saxutils import escape

from .normalized import m_fixed_points, m_region, NormalizedState, vector_field_grid

# ============================================================================
# CONFIGURATION
# ============================================================================
CANVAS_SIZE = 640
MARGIN = 40
ARROW_FILL = 0.8  # longest arrow as a fraction of the grid spacing
HEAD_SIZE = 4.0
FIXED_POINT_RADIUS = 5.0

ARROW_COLOR = '#2a5599'
AXIS_COLOR = '#999999'
POINT_COLOR = '#cc2222'


def _plot_mapper(bounds):
    x0, x1, y0, y1 = bounds
    span = CANVAS_SIZE - 2 * MARGIN

    def to_canvas(m2, m3):
        px = MARGIN + (m2 - x0) / (x1 - x0) * span
        py = MARGIN + (y1 - m3) / (y1 - y0) * span
        return px, py
    return to_canvas


def _arrow(x, y, dx, dy):
    tip_x, tip_y = x + dx, y + dy
    length = math.hypot(dx, dy)
    if length == 0.0:
        return f'<circle cx="{x:.2f}" cy="{y:.2f}" r="1.00" fill="{ARROW_COLOR}"/>'
    ux, uy = dx / length, dy / length
    head = min(HEAD_SIZE, 0.5 * length)
    left = (tip_x - head * ux + 0.5 * head * uy, tip_y - head * uy - 0.5 * head * ux)
    right = (tip_x - head * ux - 0.5 * head * uy, tip_y - head * uy + 0.5 * head * ux)
    return (f'<line x1="{x:.2f}" y1="{y:.2f}" x2="{tip_x:.2f}" y2="{tip_y:.2f}" '
            f'stroke="{ARROW_COLOR}" stroke-width="1"/>'
            f'<polygon points="{tip_x:.2f},{tip_y:.2f} {left[0]:.2f},{left[1]:.2f} '
            f'{right[0]:.2f},{right[1]:.2f}" fill="{ARROW_COLOR}"/>')


def render_portrait(beta, bounds, n):
    """
    Render the vector field on an n x n grid plus the fixed-point catalog.

    Args:
        beta (float): coupling of the ratio system (nonzero for the catalog).
        bounds (tuple): (m2_min, m2_max, m3_min, m3_max).
        n (int): samples per axis.

    Returns:
        str: a standalone SVG document.
    """
    samples = vector_field_grid(beta, bounds, n)
    to_canvas = _plot_mapper(bounds)
    x0, x1, y0, y1 = bounds
    cell = (CANVAS_SIZE - 2 * MARGIN) / (n - 1)
    speeds = [math.hypot(s.dm2, s.dm3) for s in samples]
    top = math.asinh(max(speeds)) if max(speeds) > 0 else 1.0

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS_SIZE}" height="{CANVAS_SIZE}" '
        f'viewBox="0 0 {CANVAS_SIZE} {CANVAS_SIZE}">',
        f'<title>ratio-system portrait, beta={beta:.17g}</title>',
        f'<rect x="0" y="0" width="{CANVAS_SIZE}" height="{CANVAS_SIZE}" fill="white"/>',
    ]
    if x0 <= 0.0 <= x1:
        px, _ = to_canvas(0.0, y0)
        parts.append(f'<line x1="{px:.2f}" y1="{MARGIN}" x2="{px:.2f}" y2="{CANVAS_SIZE - MARGIN}" '
                     f'stroke="{AXIS_COLOR}" stroke-width="1"/>')
    if y0 <= 0.0 <= y1:
        _, py = to_canvas(x0, 0.0)
        parts.append(f'<line x1="{MARGIN}" y1="{py:.2f}" x2="{CANVAS_SIZE - MARGIN}" y2="{py:.2f}" '
                     f'stroke="{AXIS_COLOR}" stroke-width="1"/>')

    for sample, speed in zip(samples, speeds):
        px, py = to_canvas(sample.m2, sample.m3)
        if speed == 0.0:
            parts.append(_arrow(px, py, 0.0, 0.0))
            continue
        length = ARROW_FILL * cell * math.asinh(speed) / top
        # canvas y grows downward
        parts.append(_arrow(px, py, length * sample.dm2 / speed, -length * sample.dm3 / speed))

    if beta != 0:
        for point in m_fixed_points(beta):
            if not (x0 <= point.m2 <= x1 and y0 <= point.m3 <= y1):
                continue
            px, py = to_canvas(point.m2, point.m3)
            group = m_region(NormalizedState(point.m2, point.m3, beta)).name
            label = escape(f"{', '.join(point.labels)} [{group}]")
            parts.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="{FIXED_POINT_RADIUS:.1f}" '
                         f'fill="none" stroke="{POINT_COLOR}" stroke-width="2">'
                         f'<title>{label}</title></circle>')
    parts.append('</svg>')
    return '\n'.join(parts) + '\n'
