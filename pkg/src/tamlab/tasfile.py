"""The TAS tile-system file format.

Line oriented, whitespace tokens, ``#`` starts a comment anywhere::

    temperature <int>
    tile <name> [black]
      north <label|-> <strength>
      east  <label|-> <strength>
      south <label|-> <strength>
      west  <label|-> <strength>
    end
    seed <x> <y> <name>

``-`` is the null glue and must carry strength 0; a labeled glue must carry
strength at least 1.  Every tile block needs all four sides (any order) and
at least one seed line is required.  Parsing then serializing then parsing
again reproduces the same document.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError
from .model import (
    Assembly,
    Direction,
    Glue,
    NULL_GLUE,
    Placement,
    Pos,
    TileAssemblySystem,
    TileType,
)

_SIDE_NAMES = ("north", "east", "south", "west")


@dataclass(frozen=True)
class TasDocument:
    """Parsed form of a TAS file."""

    temperature: int
    tiles: tuple[TileType, ...]
    seed: tuple[tuple[Pos, str], ...]


def _parse_int(token: str, line: int, what: str) -> int:
    try:
        return int(token, 10)
    except ValueError:
        raise ParseError(line, f"{what} must be an integer, got {token!r}") from None


def parse_tas(text: str) -> TasDocument:
    """Parse and fully validate a TAS document."""
    temperature: int | None = None
    tiles: list[TileType] = []
    tile_names: set[str] = set()
    seed: list[tuple[Pos, str]] = []
    seed_positions: set[Pos] = set()

    lines = text.splitlines()
    i = 0
    while i < len(lines):
        lineno = i + 1
        tokens = lines[i].split("#", 1)[0].split()
        i += 1
        if not tokens:
            continue
        head = tokens[0]
        if head == "temperature":
            if temperature is not None:
                raise ParseError(lineno, "duplicate temperature line")
            if len(tokens) != 2:
                raise ParseError(lineno, "expected: temperature <int>")
            temperature = _parse_int(tokens[1], lineno, "temperature")
            if temperature < 1:
                raise ParseError(lineno, f"temperature must be >= 1, got {temperature}")
        elif head == "tile":
            if len(tokens) not in (2, 3) or (len(tokens) == 3 and tokens[2] != "black"):
                raise ParseError(lineno, "expected: tile <name> [black]")
            name = tokens[1]
            if name in tile_names:
                raise ParseError(lineno, f"duplicate tile name {name!r}")
            black = len(tokens) == 3
            sides: dict[str, Glue] = {}
            while True:
                if i >= len(lines):
                    raise ParseError(lineno, f"tile {name!r} is missing its end line")
                side_lineno = i + 1
                side_tokens = lines[i].split("#", 1)[0].split()
                i += 1
                if not side_tokens:
                    continue
                if side_tokens[0] == "end":
                    if len(side_tokens) != 1:
                        raise ParseError(side_lineno, "end takes no arguments")
                    break
                if side_tokens[0] not in _SIDE_NAMES:
                    raise ParseError(
                        side_lineno,
                        f"expected a side line or end, got {side_tokens[0]!r}",
                    )
                if len(side_tokens) != 3:
                    raise ParseError(side_lineno, "expected: <side> <label|-> <strength>")
                side, label, strength_tok = side_tokens
                if side in sides:
                    raise ParseError(side_lineno, f"duplicate side {side!r} in tile {name!r}")
                strength = _parse_int(strength_tok, side_lineno, "glue strength")
                if strength < 0:
                    raise ParseError(side_lineno, f"glue strength must be >= 0, got {strength}")
                if label == "-":
                    if strength != 0:
                        raise ParseError(side_lineno, "the null glue '-' must have strength 0")
                    sides[side] = NULL_GLUE
                else:
                    if strength == 0:
                        raise ParseError(
                            side_lineno, f"labeled glue {label!r} must have strength >= 1"
                        )
                    sides[side] = Glue(label, strength)
            missing = [s for s in _SIDE_NAMES if s not in sides]
            if missing:
                raise ParseError(lineno, f"tile {name!r} is missing sides: {', '.join(missing)}")
            tiles.append(
                TileType(
                    name=name,
                    north=sides["north"],
                    east=sides["east"],
                    south=sides["south"],
                    west=sides["west"],
                    black=black,
                )
            )
            tile_names.add(name)
        elif head == "seed":
            if len(tokens) != 4:
                raise ParseError(lineno, "expected: seed <x> <y> <name>")
            x = _parse_int(tokens[1], lineno, "seed x")
            y = _parse_int(tokens[2], lineno, "seed y")
            if (x, y) in seed_positions:
                raise ParseError(lineno, f"duplicate seed position ({x}, {y})")
            seed_positions.add((x, y))
            seed.append(((x, y), tokens[3]))
        else:
            raise ParseError(lineno, f"unknown directive {head!r}")

    if temperature is None:
        raise ParseError(len(lines) or 1, "missing temperature line")
    if not seed:
        raise ParseError(len(lines) or 1, "at least one seed line is required")
    for (pos, name) in seed:
        if name not in tile_names:
            raise ParseError(len(lines) or 1, f"seed references undefined tile {name!r}")
    return TasDocument(temperature=temperature, tiles=tuple(tiles), seed=tuple(seed))


def _glue_tokens(glue: Glue) -> str:
    if glue.is_null:
        return "- 0"
    return f"{glue.label} {glue.strength}"


def serialize_tas(doc: TasDocument) -> str:
    """Canonical text for a document; parses back to an equal document."""
    out = [f"temperature {doc.temperature}"]
    for tile in doc.tiles:
        out.append(f"tile {tile.name} black" if tile.black else f"tile {tile.name}")
        out.append(f"  north {_glue_tokens(tile.north)}")
        out.append(f"  east {_glue_tokens(tile.east)}")
        out.append(f"  south {_glue_tokens(tile.south)}")
        out.append(f"  west {_glue_tokens(tile.west)}")
        out.append("end")
    for (x, y), name in doc.seed:
        out.append(f"seed {x} {y} {name}")
    return "\n".join(out) + "\n"


def to_system(doc: TasDocument) -> TileAssemblySystem:
    """Build the live system; system-level invariants are validated there."""
    by_name = {t.name: t for t in doc.tiles}
    placements = [Placement(pos, by_name[name]) for pos, name in doc.seed]
    return TileAssemblySystem(
        tiles=doc.tiles, seed=Assembly(placements), temperature=doc.temperature
    )
