"""Static vocabulary of square-tile self-assembly.

Tiles are unit squares with labeled, strength-weighted glues on their four
sides.  They cannot rotate or reflect; they only translate.  An assembly is a
finite partial map from integer lattice points to tile types, and a system is
a tile set plus a seed assembly plus a temperature.  Everything here is
immutable and safe to share between workers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Mapping, Optional

from .errors import OccupiedPosition, UnknownTileType

Pos = tuple[int, int]


class Direction(Enum):
    """The four cardinal sides of a tile, as (dx, dy) steps with y up."""

    NORTH = (0, 1)
    EAST = (1, 0)
    SOUTH = (0, -1)
    WEST = (-1, 0)

    @property
    def dx(self) -> int:
        return self.value[0]

    @property
    def dy(self) -> int:
        return self.value[1]

    @property
    def opposite(self) -> "Direction":
        return _OPPOSITE[self]

    def step(self, pos: Pos) -> Pos:
        return (pos[0] + self.value[0], pos[1] + self.value[1])


_OPPOSITE = {
    Direction.NORTH: Direction.SOUTH,
    Direction.SOUTH: Direction.NORTH,
    Direction.EAST: Direction.WEST,
    Direction.WEST: Direction.EAST,
}

DIRECTIONS = (Direction.NORTH, Direction.EAST, Direction.SOUTH, Direction.WEST)


@dataclass(frozen=True)
class Glue:
    """A side marking: a label plus an integer strength.

    The null glue is ``Glue(None, 0)``.  A labeled glue must have strength at
    least 1; the null glue must have strength 0.
    """

    label: Optional[str]
    strength: int

    def __post_init__(self):
        if self.label is None:
            if self.strength != 0:
                raise ValueError("null glue must have strength 0")
        else:
            if not self.label or any(c.isspace() for c in self.label):
                raise ValueError(f"glue label must be a non-empty token: {self.label!r}")
            if self.strength < 1:
                raise ValueError(f"labeled glue {self.label!r} must have strength >= 1")

    @property
    def is_null(self) -> bool:
        return self.label is None


NULL_GLUE = Glue(None, 0)


@dataclass(frozen=True)
class TileType:
    """A named, un-rotatable square tile with one glue per side.

    ``black`` marks the tile as part of the painted output set.
    """

    name: str
    north: Glue = NULL_GLUE
    east: Glue = NULL_GLUE
    south: Glue = NULL_GLUE
    west: Glue = NULL_GLUE
    black: bool = False

    def __post_init__(self):
        if not self.name or any(c.isspace() for c in self.name):
            raise ValueError(f"tile name must be a non-empty token: {self.name!r}")

    def side(self, d: Direction) -> Glue:
        if d is Direction.NORTH:
            return self.north
        if d is Direction.EAST:
            return self.east
        if d is Direction.SOUTH:
            return self.south
        return self.west


@dataclass(frozen=True)
class Placement:
    """A tile type at a lattice position."""

    pos: Pos
    tile: TileType


class Assembly:
    """An immutable finite partial map from positions to tile types."""

    __slots__ = ("_placements", "_key")

    def __init__(self, placements: Mapping[Pos, TileType] | Iterable[Placement] = ()):
        if isinstance(placements, Mapping):
            data = dict(placements)
        else:
            data = {}
            for pl in placements:
                if pl.pos in data:
                    raise OccupiedPosition(f"duplicate placement at {pl.pos}")
                data[pl.pos] = pl.tile
        self._placements: dict[Pos, TileType] = data
        self._key: tuple | None = None

    def __len__(self) -> int:
        return len(self._placements)

    def __bool__(self) -> bool:
        return bool(self._placements)

    def __contains__(self, pos: Pos) -> bool:
        return pos in self._placements

    def get(self, pos: Pos) -> Optional[TileType]:
        return self._placements.get(pos)

    def __getitem__(self, pos: Pos) -> TileType:
        return self._placements[pos]

    def positions(self) -> frozenset[Pos]:
        return frozenset(self._placements)

    def items(self) -> Iterator[tuple[Pos, TileType]]:
        """Placements in deterministic (y, x) order."""
        return iter(sorted(self._placements.items(), key=lambda kv: (kv[0][1], kv[0][0])))

    def placements(self) -> Iterator[Placement]:
        for pos, tile in self.items():
            yield Placement(pos, tile)

    def with_placement(self, pos: Pos, tile: TileType) -> "Assembly":
        """A new assembly extended by one tile; self is unchanged."""
        if pos in self._placements:
            raise OccupiedPosition(f"position {pos} already holds a tile")
        data = dict(self._placements)
        data[pos] = tile
        return Assembly(data)

    def canonical_key(self) -> tuple:
        """Hashable canonical form: the sorted placement list."""
        if self._key is None:
            self._key = tuple(sorted((p[0], p[1], t.name) for p, t in self._placements.items()))
        return self._key

    def __eq__(self, other) -> bool:
        if not isinstance(other, Assembly):
            return NotImplemented
        return self.canonical_key() == other.canonical_key()

    def __hash__(self) -> int:
        return hash(self.canonical_key())

    def __repr__(self) -> str:
        return f"Assembly({len(self._placements)} tiles)"


@dataclass(frozen=True)
class Window:
    """A finite axis-aligned rectangle of lattice points, bounds inclusive."""

    x_min: int
    y_min: int
    x_max: int
    y_max: int

    def __post_init__(self):
        if self.x_min > self.x_max or self.y_min > self.y_max:
            raise ValueError(f"empty window {self}")

    def contains(self, pos: Pos) -> bool:
        return self.x_min <= pos[0] <= self.x_max and self.y_min <= pos[1] <= self.y_max

    def contains_window(self, other: "Window") -> bool:
        return (
            self.x_min <= other.x_min
            and self.y_min <= other.y_min
            and self.x_max >= other.x_max
            and self.y_max >= other.y_max
        )

    @property
    def width(self) -> int:
        return self.x_max - self.x_min + 1

    @property
    def height(self) -> int:
        return self.y_max - self.y_min + 1

    @property
    def count(self) -> int:
        return self.width * self.height

    def points(self) -> Iterator[Pos]:
        """All points, row-major from the south-west corner."""
        for y in range(self.y_min, self.y_max + 1):
            for x in range(self.x_min, self.x_max + 1):
                yield (x, y)


def interaction_strength(a: TileType, b: TileType, d: Direction) -> int:
    """Bond strength between tile a and tile b sitting in direction d from a.

    The abutting glues interact only on an exact match of both label and
    strength; everything else contributes 0.
    """
    ga = a.side(d)
    gb = b.side(d.opposite)
    if ga.is_null or gb.is_null:
        return 0
    if ga.label == gb.label and ga.strength == gb.strength:
        return ga.strength
    return 0


def attach_strength(assembly: Assembly, pos: Pos, tile: TileType) -> int:
    """Total bond strength tile would gain if placed at pos."""
    if pos in assembly:
        raise OccupiedPosition(f"position {pos} already holds a tile")
    total = 0
    for d in DIRECTIONS:
        neighbor = assembly.get(d.step(pos))
        if neighbor is not None:
            total += interaction_strength(tile, neighbor, d)
    return total


class TileAssemblySystem:
    """A tile set, a seed assembly and a temperature.

    The seed must be nonempty, connected under adjacency, stable at the
    system's temperature, and use only tiles from the set.
    """

    __slots__ = ("tiles", "seed", "temperature", "_by_name")

    def __init__(self, tiles: Iterable[TileType], seed: Assembly, temperature: int):
        tiles = tuple(tiles)
        if temperature < 1:
            raise ValueError("temperature must be a positive integer")
        by_name: dict[str, TileType] = {}
        for t in tiles:
            if t.name in by_name:
                raise ValueError(f"duplicate tile type name {t.name!r}")
            by_name[t.name] = t
        if not seed:
            raise ValueError("seed assembly must be nonempty")
        for pos, tile in seed.items():
            known = by_name.get(tile.name)
            if known is None or known != tile:
                raise UnknownTileType(f"seed tile {tile.name!r} at {pos} is not in the tile set")
        if not _adjacency_connected(seed.positions()):
            raise ValueError("seed assembly must be connected")
        if not is_tau_stable(seed, temperature):
            raise ValueError("seed assembly must be stable at the system temperature")
        self.tiles = tiles
        self.seed = seed
        self.temperature = temperature
        self._by_name = by_name

    def tile(self, name: str) -> TileType:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownTileType(f"no tile type named {name!r}") from None

    def has_tile(self, tile: TileType) -> bool:
        return self._by_name.get(tile.name) == tile

    def tiles_sorted(self) -> tuple[TileType, ...]:
        return tuple(sorted(self.tiles, key=lambda t: t.name))

    def __repr__(self) -> str:
        return (
            f"TileAssemblySystem({len(self.tiles)} tile types, "
            f"|seed|={len(self.seed)}, temperature={self.temperature})"
        )


def can_attach(system: TileAssemblySystem, assembly: Assembly, pos: Pos, tile: TileType) -> bool:
    """True iff pos is empty and the tile binds with total strength >= tau."""
    if not system.has_tile(tile):
        raise UnknownTileType(f"tile {tile.name!r} is not in the system's tile set")
    if pos in assembly:
        return False
    return attach_strength(assembly, pos, tile) >= system.temperature


def _adjacency_connected(positions: frozenset[Pos]) -> bool:
    if len(positions) <= 1:
        return True
    start = next(iter(positions))
    seen = {start}
    stack = [start]
    while stack:
        p = stack.pop()
        for d in DIRECTIONS:
            q = d.step(p)
            if q in positions and q not in seen:
                seen.add(q)
                stack.append(q)
    return len(seen) == len(positions)


def _binding_graph(assembly: Assembly) -> tuple[list[Pos], list[tuple[int, int, int]]]:
    nodes = sorted(assembly.positions())
    index = {p: i for i, p in enumerate(nodes)}
    edges = []
    for p in nodes:
        tp = assembly[p]
        for d in (Direction.EAST, Direction.NORTH):
            q = d.step(p)
            tq = assembly.get(q)
            if tq is None:
                continue
            s = interaction_strength(tp, tq, d)
            if s >= 1:
                edges.append((index[p], index[q], s))
    return nodes, edges


def is_tau_stable(assembly: Assembly, tau: int) -> bool:
    """True iff every 2-partition of the assembly is crossed by bonds of
    total strength >= tau.

    Empty and singleton assemblies are stable.  For tau = 1 this is
    connectivity of the binding graph; for larger tau the global min cut is
    computed.
    """
    n = len(assembly)
    if n <= 1 or tau <= 0:
        return True
    nodes, edges = _binding_graph(assembly)
    adj: dict[int, list[tuple[int, int]]] = {i: [] for i in range(n)}
    for i, j, s in edges:
        adj[i].append((j, s))
        adj[j].append((i, s))
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j, _ in adj[i]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    if len(seen) != n:
        return False
    if tau == 1:
        return True
    import networkx as nx

    g = nx.Graph()
    g.add_nodes_from(range(n))
    for i, j, s in edges:
        if g.has_edge(i, j):
            g[i][j]["weight"] += s
        else:
            g.add_edge(i, j, weight=s)
    cut, _ = nx.stoer_wagner(g)
    return cut >= tau


def neighbors(pos: Pos) -> Iterator[Pos]:
    for d in DIRECTIONS:
        yield d.step(pos)
