"""Point-set text format: one ``x y`` integer pair per line, ``#`` comments,
order irrelevant."""

from __future__ import annotations

from typing import Iterable

from .errors import ParseError
from .model import Pos


def parse_points(text: str) -> set[Pos]:
    points: set[Pos] = set()
    for i, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        if len(tokens) != 2:
            raise ParseError(i, f"expected two integers, got {len(tokens)} tokens")
        try:
            x, y = int(tokens[0], 10), int(tokens[1], 10)
        except ValueError:
            raise ParseError(i, f"expected two integers, got {raw.strip()!r}") from None
        points.add((x, y))
    return points


def serialize_points(points: Iterable[Pos]) -> str:
    lines = [f"{x} {y}" for x, y in sorted(set(points))]
    return "\n".join(lines) + ("\n" if lines else "")
