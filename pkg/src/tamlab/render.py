"""Deterministic text and SVG renders of windowed assemblies.

Both renders use y-up orientation: the window's top row prints first and
SVG rows are flipped so larger y sits higher.  Output is byte-stable for a
given assembly and window.
"""

from __future__ import annotations

from .model import Assembly, Pos, Window

_CELL = 10


def render_ascii(assembly: Assembly, window: Window, glyphs: str = "compact") -> str:
    """Character grid: '.' empty; with compact glyphs '#' black and '*'
    non-black, otherwise the first character of the tile name."""
    if glyphs not in ("compact", "names"):
        raise ValueError(f"unknown glyph mode {glyphs!r}")
    rows = []
    for y in range(window.y_max, window.y_min - 1, -1):
        row = []
        for x in range(window.x_min, window.x_max + 1):
            tile = assembly.get((x, y))
            if tile is None:
                row.append(".")
            elif glyphs == "compact":
                row.append("#" if tile.black else "*")
            else:
                row.append(tile.name[0])
        rows.append("".join(row))
    return "\n".join(rows) + "\n"


def render_svg(assembly: Assembly, window: Window, seed_positions: frozenset[Pos]) -> str:
    """One unit square per tile; black tiles filled black, seed outlined."""
    width = window.width * _CELL
    height = window.height * _CELL
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
    ]
    for pos, tile in assembly.items():
        if not window.contains(pos):
            continue
        x = (pos[0] - window.x_min) * _CELL
        y = (window.y_max - pos[1]) * _CELL
        fill = "#000000" if tile.black else "#e6e6e6"
        lines.append(
            f'<rect x="{x}" y="{y}" width="{_CELL}" height="{_CELL}" '
            f'fill="{fill}" stroke="#999999" stroke-width="1"/>'
        )
    for pos in sorted(seed_positions):
        if not window.contains(pos):
            continue
        x = (pos[0] - window.x_min) * _CELL
        y = (window.y_max - pos[1]) * _CELL
        lines.append(
            f'<rect x="{x}" y="{y}" width="{_CELL}" height="{_CELL}" '
            f'fill="none" stroke="#cc2200" stroke-width="2"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
