"""Temperature-1 tile paths: enumeration, repetitions and pumping verdicts.

A tile path is a simple sequence of adjacent bonded placements rooted at a
seed tile.  A repetition is a pair of indices carrying the same tile type;
the segment between them can be translated ("pumped") along the offset of
the repetition, and the question is whether infinitely many translated
copies stay clear of every position laid down before them.  That infinite
question reduces to a finite one: copies further apart than the diameters
involved can never touch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

from .errors import InvalidRepetition, WrongTemperature
from .model import (
    DIRECTIONS,
    Placement,
    Pos,
    TileAssemblySystem,
    interaction_strength,
)


@dataclass(frozen=True)
class TilePath:
    """A simple path of placements; consecutive steps abut and bond."""

    steps: tuple[Placement, ...]

    def __post_init__(self):
        seen = set()
        prev: Optional[Placement] = None
        for pl in self.steps:
            if pl.pos in seen:
                raise ValueError(f"path revisits position {pl.pos}")
            seen.add(pl.pos)
            if prev is not None:
                dx = pl.pos[0] - prev.pos[0]
                dy = pl.pos[1] - prev.pos[1]
                d = _DELTA_TO_DIR.get((dx, dy))
                if d is None:
                    raise ValueError(f"non-adjacent step {prev.pos} -> {pl.pos}")
                if interaction_strength(prev.tile, pl.tile, d) < 1:
                    raise ValueError(
                        f"steps {prev.pos} -> {pl.pos} do not bond across their shared edge"
                    )
            prev = pl

    def __len__(self) -> int:
        """Number of placements on the path."""
        return len(self.steps)

    def positions(self) -> frozenset[Pos]:
        return frozenset(pl.pos for pl in self.steps)

    def tile_names(self) -> tuple[str, ...]:
        return tuple(pl.tile.name for pl in self.steps)


_DELTA_TO_DIR = {d.value: d for d in DIRECTIONS}


def producible_paths(system: TileAssemblySystem, max_len: int) -> Iterator[TilePath]:
    """Every simple bonded path with at most max_len growth steps.

    Paths start at a seed placement and extend from the head only; each
    extension is a legal temperature-1 attachment given just the path laid
    so far.  Raises WrongTemperature unless the system has temperature 1.
    """
    for path, _ in _paths_with_maximality(system, max_len):
        yield path


def _paths_with_maximality(
    system: TileAssemblySystem, max_len: int
) -> Iterator[tuple[TilePath, bool]]:
    """Paths plus a flag marking paths with no yielded extension.

    A path truncated by max_len counts as maximal for reporting purposes.
    """
    if system.temperature != 1:
        raise WrongTemperature(
            f"path enumeration needs temperature 1, got {system.temperature}"
        )
    seed_positions = system.seed.positions()
    tiles = system.tiles_sorted()

    def extensions(head: Placement, used: frozenset[Pos]) -> list[Placement]:
        out = []
        for d in DIRECTIONS:
            q = d.step(head.pos)
            if q in seed_positions or q in used:
                continue
            for tile in tiles:
                if interaction_strength(head.tile, tile, d) >= 1:
                    out.append(Placement(q, tile))
        return out

    def walk(steps: tuple[Placement, ...], used: frozenset[Pos]) -> Iterator[tuple[TilePath, bool]]:
        head = steps[-1]
        exts = extensions(head, used) if len(steps) - 1 < max_len else []
        yield TilePath(steps), not exts
        for pl in exts:
            yield from walk(steps + (pl,), used | {pl.pos})

    for pos, tile in sorted(system.seed.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        root = Placement(pos, tile)
        yield from walk((root,), frozenset({pos}))


def repetitions(path: TilePath) -> list[tuple[int, int]]:
    """All index pairs i < j with equal tile types, ordered by (j - i, i)."""
    names = path.tile_names()
    pairs = [
        (i, j)
        for i in range(len(names))
        for j in range(i + 1, len(names))
        if names[i] == names[j]
    ]
    pairs.sort(key=lambda ij: (ij[1] - ij[0], ij[0]))
    return pairs


@dataclass(frozen=True)
class Pumpable:
    """The segment's translated copies never touch anything laid before."""


@dataclass(frozen=True)
class Blocked:
    """Pumping collides: first colliding copy index and one hit position."""

    copy_index: int
    collision_pos: Pos


PumpVerdict = Union[Pumpable, Blocked]


def _check_repetition(path: TilePath, i: int, j: int) -> None:
    if not (0 <= i < j < len(path.steps)):
        raise InvalidRepetition(f"indices ({i}, {j}) out of range for path of {len(path)}")
    if path.steps[i].tile.name != path.steps[j].tile.name:
        raise InvalidRepetition(
            f"tile types at {i} and {j} differ "
            f"({path.steps[i].tile.name!r} vs {path.steps[j].tile.name!r})"
        )


def pump_k(path: TilePath, i: int, j: int, k: int) -> Union[list[Placement], Blocked]:
    """The path prefix up to j plus k translated copies of segment [i, j).

    Copy c is the segment shifted by c times the repetition offset.  If some
    copy lands on a position already laid (by the prefix or an earlier
    copy), returns Blocked at the first such copy instead.
    """
    _check_repetition(path, i, j)
    if k < 0:
        raise ValueError("k must be nonnegative")
    pi = path.steps[i].pos
    pj = path.steps[j].pos
    d = (pj[0] - pi[0], pj[1] - pi[1])
    out = list(path.steps[:j])
    occupied = {pl.pos for pl in out}
    segment = path.steps[i:j]
    for c in range(1, k + 1):
        for pl in segment:
            q = (pl.pos[0] + c * d[0], pl.pos[1] + c * d[1])
            if q in occupied:
                return Blocked(copy_index=c, collision_pos=q)
            occupied.add(q)
            out.append(Placement(q, pl.tile))
    return out


def _diameter(points: list[Pos]) -> int:
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    return max(max(xs) - min(xs), max(ys) - min(ys))


def is_pumpable(path: TilePath, i: int, j: int) -> PumpVerdict:
    """Decide infinite pumping of repetition (i, j) by a finite check.

    With d the repetition offset, copies c and c' can only touch when
    |c - c'| * |d| is at most the segment diameter, and a copy can only
    touch the prefix when c * |d| is at most the prefix diameter (all in the
    max norm, since copies are exact translates).  Checking copies up to
    K = ceil((diam(segment) + diam(prefix)) / |d|) + 1 therefore decides
    every copy count; over-checking is harmless.
    """
    _check_repetition(path, i, j)
    pi = path.steps[i].pos
    pj = path.steps[j].pos
    d = (pj[0] - pi[0], pj[1] - pi[1])
    norm = max(abs(d[0]), abs(d[1]))
    seg = [pl.pos for pl in path.steps[i:j]]
    prefix = [pl.pos for pl in path.steps[:j]]
    k_bound = math.ceil((_diameter(seg) + _diameter(prefix)) / norm) + 1
    result = pump_k(path, i, j, k_bound)
    if isinstance(result, Blocked):
        return result
    return Pumpable()


def pump_bound(path: TilePath, i: int, j: int) -> int:
    """The copy count that is_pumpable actually checks."""
    _check_repetition(path, i, j)
    pi = path.steps[i].pos
    pj = path.steps[j].pos
    norm = max(abs(pj[0] - pi[0]), abs(pj[1] - pi[1]))
    seg = [pl.pos for pl in path.steps[i:j]]
    prefix = [pl.pos for pl in path.steps[:j]]
    return math.ceil((_diameter(seg) + _diameter(prefix)) / norm) + 1


def find_pumpable(path: TilePath) -> Optional[tuple[int, int]]:
    """First repetition (in repetitions order) with a Pumpable verdict."""
    for i, j in repetitions(path):
        if isinstance(is_pumpable(path, i, j), Pumpable):
            return (i, j)
    return None


@dataclass
class PumpScanReport:
    """Aggregate result of scanning every producible path of a system.

    c_estimate is the least path length (in placements) such that every
    scanned path at least that long had some pumpable repetition.
    violations are scanned paths longer than the tile set that had
    repetitions but none pumpable; they are counterexample candidates.
    blocked_examples collects Blocked verdicts found on maximal paths.
    """

    max_len_scanned: int
    paths_scanned: int = 0
    c_estimate: int = 1
    tile_type_count: int = 0
    pigeonhole_reached: bool = False
    longest_path: int = 0
    violations: list[TilePath] = field(default_factory=list)
    blocked_examples: list[tuple[TilePath, int, int, Blocked]] = field(default_factory=list)


def pumpability_scan(system: TileAssemblySystem, max_len: int) -> PumpScanReport:
    """Evaluate every repetition of every producible path up to max_len.

    Fills the scan report: violations, the empirical length bound, and the
    Blocked repetitions encountered on maximal paths.  Raises
    WrongTemperature unless the system has temperature 1.
    """
    report = PumpScanReport(max_len_scanned=max_len, tile_type_count=len(system.tiles))
    longest_without_pumpable = 0
    for path, maximal in _paths_with_maximality(system, max_len):
        report.paths_scanned += 1
        report.longest_path = max(report.longest_path, len(path))
        any_pumpable = False
        blocked_here: list[tuple[int, int, Blocked]] = []
        for i, j in repetitions(path):
            verdict = is_pumpable(path, i, j)
            if isinstance(verdict, Pumpable):
                any_pumpable = True
            else:
                blocked_here.append((i, j, verdict))
        if not any_pumpable:
            longest_without_pumpable = max(longest_without_pumpable, len(path))
            if len(path) > len(system.tiles):
                report.violations.append(path)
        if len(path) > len(system.tiles):
            report.pigeonhole_reached = True
        if maximal:
            for i, j, verdict in blocked_here:
                report.blocked_examples.append((path, i, j, verdict))
    report.c_estimate = longest_without_pumpable + 1
    return report
