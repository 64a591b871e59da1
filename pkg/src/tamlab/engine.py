"""Growth of assemblies by single-tile attachments.

The engine computes frontiers, runs a system to quiescence inside a finite
window, extracts the black set, enumerates every producible assembly at desk
scale, and decides directedness of the windowed growth.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .errors import BudgetExceeded, IllegalAttachment, SeedOutsideWindow
from .model import (
    DIRECTIONS,
    Assembly,
    Direction,
    Placement,
    Pos,
    TileAssemblySystem,
    TileType,
    Window,
    attach_strength,
    can_attach,
    interaction_strength,
)

# One attachment step: position plus tile type name.
TraceStep = tuple[Pos, str]


def frontier(system: TileAssemblySystem, assembly: Assembly) -> list[Placement]:
    """All attachable (position, tile) pairs, sorted by (y, x, tile name).

    Positions may repeat with different tile types.
    """
    out = []
    candidates: set[Pos] = set()
    for pos, _ in assembly.items():
        for d in DIRECTIONS:
            q = d.step(pos)
            if q not in assembly:
                candidates.add(q)
    for q in sorted(candidates, key=lambda p: (p[1], p[0])):
        for tile in system.tiles_sorted():
            if attach_strength(assembly, q, tile) >= system.temperature:
                out.append(Placement(q, tile))
    return out


def attach(system: TileAssemblySystem, assembly: Assembly, pos: Pos, tile: TileType) -> Assembly:
    """One legal growth step; returns the extended assembly, input unchanged."""
    if not can_attach(system, assembly, pos, tile):
        raise IllegalAttachment(f"tile {tile.name!r} cannot attach at {pos}")
    return assembly.with_placement(pos, tile)


def _attachable_names(
    system: TileAssemblySystem, placed: dict[Pos, TileType], pos: Pos
) -> list[str]:
    tau = system.temperature
    names = []
    for tile in system.tiles_sorted():
        total = 0
        for d in DIRECTIONS:
            nb = placed.get(d.step(pos))
            if nb is not None:
                total += interaction_strength(tile, nb, d)
        if total >= tau:
            names.append(tile.name)
    return names


def run_to_quiescence(
    system: TileAssemblySystem,
    window: Window,
    step_budget: Optional[int] = None,
    tie_break: str = "lex",
) -> tuple[Assembly, bool]:
    """Grow inside the window until no attachment is possible.

    Each step picks the attachable candidate that is least under the
    (y, x, tile name) order, so runs are reproducible; with
    ``tie_break="revlex"`` the greatest candidate is chosen instead.  For
    directed systems the final in-window placements do not depend on this
    choice.  Growth is only blocked by the window boundary, never altered by
    it; positions outside the window are never filled.

    Returns the final assembly and whether the step budget cut growth short.
    """
    if tie_break not in ("lex", "revlex"):
        raise ValueError(f"unknown tie_break {tie_break!r}")
    for pos, _ in system.seed.items():
        if not window.contains(pos):
            raise SeedOutsideWindow(f"seed tile at {pos} is outside {window}")

    sign = 1 if tie_break == "lex" else -1

    def heap_key(pos: Pos, name: str):
        if sign == 1:
            return (pos[1], pos[0], name)
        return (-pos[1], -pos[0], _RevStr(name))

    placed: dict[Pos, TileType] = {pos: tile for pos, tile in system.seed.items()}
    heap: list[tuple] = []
    queued: set[tuple[Pos, str]] = set()

    def consider_neighbors(pos: Pos) -> None:
        for d in DIRECTIONS:
            q = d.step(pos)
            if q in placed or not window.contains(q):
                continue
            for name in _attachable_names(system, placed, q):
                if (q, name) not in queued:
                    queued.add((q, name))
                    heapq.heappush(heap, (heap_key(q, name), q, name))

    for pos in placed:
        consider_neighbors(pos)

    steps = 0
    exhausted = False
    while heap:
        _, pos, name = heapq.heappop(heap)
        if pos in placed:
            continue
        # Attachability is monotone, so a queued candidate at an empty
        # position is still attachable.
        if step_budget is not None and steps >= step_budget:
            exhausted = True
            break
        placed[pos] = system.tile(name)
        steps += 1
        consider_neighbors(pos)
    return Assembly(placed), exhausted


class _RevStr(str):
    """String wrapper that reverses comparison order inside heap keys."""

    def __lt__(self, other):  # pragma: no cover - trivial
        return str.__gt__(self, other)


def black_set(assembly: Assembly) -> frozenset[Pos]:
    """Positions of the assembly that hold black tile types."""
    return frozenset(pos for pos, tile in assembly.items() if tile.black)


def _windowed_frontier(
    system: TileAssemblySystem, placed: dict[Pos, TileType], window: Window
) -> list[tuple[Pos, str]]:
    candidates: set[Pos] = set()
    for pos in placed:
        for d in DIRECTIONS:
            q = d.step(pos)
            if q not in placed and window.contains(q):
                candidates.add(q)
    out = []
    for q in sorted(candidates, key=lambda p: (p[1], p[0])):
        for name in _attachable_names(system, placed, q):
            out.append((q, name))
    return out


def _producible_walk(
    system: TileAssemblySystem,
    window: Window,
    max_size: Optional[int],
    dedup_cap: int,
) -> Iterator[tuple[dict[Pos, TileType], tuple[TraceStep, ...]]]:
    """Breadth-first walk over all windowed producible assemblies.

    Yields each distinct assembly once, as a placement dict plus one
    attachment trace that produces it from the seed.
    """
    seed_placed = {pos: tile for pos, tile in system.seed.items()}
    seen: set[tuple] = set()

    def key_of(placed: dict[Pos, TileType]) -> tuple:
        return tuple(sorted((p[0], p[1], t.name) for p, t in placed.items()))

    queue: deque[tuple[dict[Pos, TileType], tuple[TraceStep, ...]]] = deque()
    queue.append((seed_placed, ()))
    seen.add(key_of(seed_placed))
    while queue:
        placed, trace = queue.popleft()
        yield placed, trace
        if max_size is not None and len(placed) >= max_size:
            continue
        for pos, name in _windowed_frontier(system, placed, window):
            child = dict(placed)
            child[pos] = system.tile(name)
            k = key_of(child)
            if k in seen:
                continue
            if len(seen) >= dedup_cap:
                raise BudgetExceeded(
                    f"deduplication table outgrew the cap of {dedup_cap} assemblies"
                )
            seen.add(k)
            queue.append((child, trace + ((pos, name),)))


def enumerate_producible(
    system: TileAssemblySystem,
    window: Window,
    max_size: Optional[int] = None,
    dedup_cap: int = 1_000_000,
) -> Iterator[Assembly]:
    """Every producible assembly inside the window with at most max_size
    tiles, each exactly once (canonical form: the sorted placement list).

    Raises BudgetExceeded if the deduplication table outgrows dedup_cap.
    """
    for placed, _ in _producible_walk(system, window, max_size, dedup_cap):
        yield Assembly(placed)


@dataclass(frozen=True)
class DirectednessVerdict:
    """Outcome of a windowed directedness check.

    kind is "directed", "conflict" or "inconclusive".  A conflict carries the
    position, the two tile type names, and two attachment traces that each
    grow the seed into a producible assembly placing the respective tile at
    the position.
    """

    kind: str
    pos: Optional[Pos] = None
    tile_a: Optional[str] = None
    tile_b: Optional[str] = None
    trace_a: tuple[TraceStep, ...] = ()
    trace_b: tuple[TraceStep, ...] = ()
    reason: Optional[str] = None

    @staticmethod
    def directed() -> "DirectednessVerdict":
        return DirectednessVerdict(kind="directed")

    @staticmethod
    def conflict(pos, tile_a, tile_b, trace_a, trace_b) -> "DirectednessVerdict":
        return DirectednessVerdict(
            kind="conflict",
            pos=pos,
            tile_a=tile_a,
            tile_b=tile_b,
            trace_a=tuple(trace_a),
            trace_b=tuple(trace_b),
        )

    @staticmethod
    def inconclusive(reason: str) -> "DirectednessVerdict":
        return DirectednessVerdict(kind="inconclusive", reason=reason)


class _Budget:
    __slots__ = ("left",)

    def __init__(self, limit: int):
        self.left = limit

    def spend(self, n: int = 1) -> None:
        self.left -= n
        if self.left < 0:
            raise _BudgetUp()


class _BudgetUp(Exception):
    pass


class _BondTables:
    """Precomputed interaction strengths between tile types.

    bond[t][d][s] is the bond a tile of index t placed at p forms with a
    tile of index s sitting in direction d from p.
    """

    def __init__(self, system: TileAssemblySystem):
        self.tiles = system.tiles_sorted()
        self.index = {t.name: i for i, t in enumerate(self.tiles)}
        n = len(self.tiles)
        self.bond = [
            [
                [interaction_strength(t, s, d) for s in self.tiles]
                for d in DIRECTIONS
            ]
            for t in self.tiles
        ]
        self.names = [t.name for t in self.tiles]
        self.count = n


def _reachable_placements(
    system: TileAssemblySystem,
    tables: _BondTables,
    window: Window,
    banned: set[tuple[Pos, int]],
    blocked: Optional[Pos],
    budget: _Budget,
) -> dict[Pos, set[int]]:
    """Least fixed point of the single-placement reachability relation.

    Every placement of any windowed producible assembly (avoiding ``blocked``
    if given) is contained in the result, so the result is an upper bound on
    what can really grow.  Seed positions never receive alternatives: they
    are occupied in every producible assembly.  Tile types are reported as
    indices into the tables.

    Support is tracked incrementally: for each open position and tile type,
    the best bond seen per direction is kept, so that each new placement
    costs O(neighbors x tile types).
    """
    tau = system.temperature
    n_tiles = tables.count
    placed: dict[Pos, set[int]] = {}
    seed_positions: set[Pos] = set()
    stack: list[tuple[Pos, int]] = []
    # best[pos] is a flat list [tile][direction] of best bonds; total[pos]
    # the per-tile sums.
    best: dict[Pos, list[int]] = {}
    total: dict[Pos, list[int]] = {}

    for pos, tile in system.seed.items():
        placed[pos] = {tables.index[tile.name]}
        seed_positions.add(pos)

    def propagate(q: Pos, s_idx: int) -> None:
        for d_idx, d in enumerate(DIRECTIONS):
            p = d.opposite.step(q)  # q sits in direction d from p
            if p in seed_positions or p == blocked or not window.contains(p):
                continue
            b = best.get(p)
            if b is None:
                b = [0] * (n_tiles * 4)
                best[p] = b
                total[p] = [0] * n_tiles
            tot = total[p]
            here = placed.get(p)
            for t_idx in range(n_tiles):
                nb = tables.bond[t_idx][d_idx][s_idx]
                if nb == 0:
                    continue
                slot = t_idx * 4 + d_idx
                if nb > b[slot]:
                    tot[t_idx] += nb - b[slot]
                    b[slot] = nb
                    if tot[t_idx] >= tau and (here is None or t_idx not in here):
                        if (p, t_idx) in banned:
                            continue
                        if here is None:
                            here = set()
                            placed[p] = here
                        here.add(t_idx)
                        budget.spend()
                        stack.append((p, t_idx))

    for pos, tile in system.seed.items():
        propagate(pos, tables.index[tile.name])
    while stack:
        q, s_idx = stack.pop()
        propagate(q, s_idx)
    return placed


def _support_from(
    tables: _BondTables, placed: dict[Pos, set[int]], pos: Pos, t_idx: int
) -> int:
    total = 0
    for d_idx, d in enumerate(DIRECTIONS):
        here = placed.get(d.step(pos))
        if not here:
            continue
        row = tables.bond[t_idx][d_idx]
        contribution = 0
        for s_idx in here:
            if row[s_idx] > contribution:
                contribution = row[s_idx]
        total += contribution
    return total


def _conflict_positions(placed: dict[Pos, set[int]]) -> list[Pos]:
    return sorted(
        (p for p, names in placed.items() if len(names) >= 2),
        key=lambda p: (p[1], p[0]),
    )


def _local_determinism_certificate(
    system: TileAssemblySystem, window: Window, budget: _Budget
) -> bool:
    """Certify directedness from one terminal assembly.

    Grows the windowed terminal assembly in deterministic order, recording
    each tile's input sides (the sides through which it bound when it
    attached).  The certificate holds when every attachment binds with
    exactly the temperature, and for every grown position, removing the
    tile together with the tiles that used it as an input leaves no other
    tile type able to reach the temperature there.  A system with such a
    growth sequence never offers two tile types for one position, so a True
    result is conclusive; False only means this certificate does not apply.
    """
    tau = system.temperature
    placed: dict[Pos, TileType] = {pos: tile for pos, tile in system.seed.items()}
    seed_positions = set(placed)
    inputs: dict[Pos, list[Direction]] = {}
    heap: list[tuple] = []
    queued: set[tuple[Pos, str]] = set()

    def consider_neighbors(pos: Pos) -> None:
        for d in DIRECTIONS:
            q = d.step(pos)
            if q in placed or not window.contains(q):
                continue
            for name in _attachable_names(system, placed, q):
                if (q, name) not in queued:
                    queued.add((q, name))
                    heapq.heappush(heap, ((q[1], q[0], name), q, name))

    for pos in placed:
        consider_neighbors(pos)
    while heap:
        _, pos, name = heapq.heappop(heap)
        if pos in placed:
            continue
        budget.spend()
        tile = system.tile(name)
        strength = 0
        sides = []
        for d in DIRECTIONS:
            nb = placed.get(d.step(pos))
            if nb is not None:
                s = interaction_strength(tile, nb, d)
                if s > 0:
                    strength += s
                    sides.append(d)
        if strength != tau:
            return False
        placed[pos] = tile
        inputs[pos] = sides
        consider_neighbors(pos)

    dependents: dict[Pos, set[Pos]] = {}
    for q, sides in inputs.items():
        for d in sides:
            dependents.setdefault(d.step(q), set()).add(q)
    tiles = system.tiles_sorted()
    for pos, tile in placed.items():
        if pos in seed_positions:
            continue
        removed = {pos} | dependents.get(pos, set())
        for other in tiles:
            if other.name == tile.name:
                continue
            budget.spend()
            strength = 0
            for d in DIRECTIONS:
                q = d.step(pos)
                nb = placed.get(q)
                if nb is not None and q not in removed:
                    strength += interaction_strength(other, nb, d)
            if strength >= tau:
                return False
    return True


def _path_conflict_search(
    system: TileAssemblySystem, window: Window, budget: _Budget
) -> Optional[DirectednessVerdict]:
    """Exact temperature-1 search over simple bonded paths from the seed.

    At temperature 1 a placement occurs in some producible assembly iff a
    simple path of single bonds reaches it from a seed tile through fresh
    positions, so recording the first tile type seen per position and
    comparing against later arrivals decides directedness exactly.  Returns
    None if the exhaustive search finds no conflict.
    """
    seed_positions = system.seed.positions()
    first: dict[Pos, tuple[str, tuple[TraceStep, ...]]] = {}
    stack: list[tuple[Pos, TileType, tuple[TraceStep, ...], frozenset[Pos]]] = []
    for pos, tile in sorted(system.seed.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        stack.append((pos, tile, (), frozenset()))
    tiles = system.tiles_sorted()
    while stack:
        head_pos, head_tile, trace, used = stack.pop()
        budget.spend()
        for d in DIRECTIONS:
            q = d.step(head_pos)
            if q in seed_positions or q in used or not window.contains(q):
                continue
            for tile in tiles:
                if interaction_strength(head_tile, tile, d) < 1:
                    continue
                step: TraceStep = (q, tile.name)
                prev = first.get(q)
                if prev is None:
                    first[q] = (tile.name, trace + (step,))
                elif prev[0] != tile.name:
                    return DirectednessVerdict.conflict(
                        q, prev[0], tile.name, prev[1], trace + (step,)
                    )
                stack.append((q, tile, trace + (step,), used | {q}))
    return None


def _assembly_conflict_search(
    system: TileAssemblySystem, window: Window, budget: _Budget
) -> Optional[DirectednessVerdict]:
    """Exhaustive search over windowed producible assemblies for a position
    that can receive two tile types.  Returns None if none exists."""
    first: dict[Pos, tuple[str, tuple[TraceStep, ...]]] = {}
    cap = max(budget.left, 1)
    walk = _producible_walk(system, window, max_size=None, dedup_cap=cap)
    for placed, trace in walk:
        budget.spend()
        for pos, name in _windowed_frontier(system, placed, window):
            prev = first.get(pos)
            if prev is None:
                first[pos] = (name, trace + ((pos, name),))
            elif prev[0] != name:
                return DirectednessVerdict.conflict(
                    pos, prev[0], name, prev[1], trace + ((pos, name),)
                )
    return None


def check_directed(
    system: TileAssemblySystem, window: Window, budget: int = 10_000_000
) -> DirectednessVerdict:
    """Decide whether windowed growth ever offers two tile types for one
    position.

    Four stages, each exact in what it asserts:

    1. A reachability fixed point over single placements.  It over-counts
       (it ignores that supports must coexist in one assembly), so a clean
       result proves directedness at any temperature.
    2. At temperature 2 and above, a local-determinism certificate of the
       windowed terminal assembly; when it holds, growth is directed.
    3. Conflicted positions are re-examined with the position itself
       forbidden; tile types whose support collapses cannot occur in any
       producible assembly and are discarded.  This repeats to a fixed point.
    4. Surviving conflicts go to exhaustive search: over simple bonded paths
       at temperature 1, over all producible assemblies otherwise.  Both
       produce replayable attachment traces for a genuine conflict.

    The budget caps total work across all stages; exceeding it yields an
    inconclusive verdict.
    """
    counter = _Budget(budget)
    tables = _BondTables(system)
    banned: set[tuple[Pos, int]] = set()
    tau = system.temperature
    try:
        first_pass = True
        while True:
            placed = _reachable_placements(system, tables, window, banned, None, counter)
            conflicts = _conflict_positions(placed)
            if not conflicts:
                return DirectednessVerdict.directed()
            if first_pass and tau >= 2:
                first_pass = False
                if _local_determinism_certificate(system, window, counter):
                    return DirectednessVerdict.directed()
            new_bans = []
            for pos in conflicts:
                alt = _reachable_placements(system, tables, window, banned, pos, counter)
                for t_idx in sorted(placed[pos]):
                    if _support_from(tables, alt, pos, t_idx) < tau:
                        new_bans.append((pos, t_idx))
            if not new_bans:
                break
            banned.update(new_bans)
        if tau == 1:
            found = _path_conflict_search(system, window, counter)
        else:
            found = _assembly_conflict_search(system, window, counter)
        if found is not None:
            return found
        return DirectednessVerdict.directed()
    except _BudgetUp:
        return DirectednessVerdict.inconclusive(f"budget of {budget} exhausted")
    except BudgetExceeded:
        return DirectednessVerdict.inconclusive(f"budget of {budget} exhausted")
