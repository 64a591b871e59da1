"""Exact algebra for semi-doubly periodic point sets and their finite unions.

A part is three integer vectors (b, u, v) and denotes
``{b + n*u + m*v : n, m >= 0}``; zero follows the usual convention, so the
base point itself always belongs.  Membership, window readout, row structure
and bounded fitting are all exact integer computations; no floating point
decides anything.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

import numpy as np

from .errors import DegenerateRange, ProbeTooNarrow, SearchSpaceExceeded, WindowNotNested
from .model import Pos, Window

Vec2 = tuple[int, int]


@dataclass(frozen=True)
class SDPSet:
    """One semi-doubly periodic part: base point b and periods u, v."""

    b: Vec2
    u: Vec2 = (0, 0)
    v: Vec2 = (0, 0)

    def key(self) -> tuple:
        return (self.b, self.u, self.v)

    def contains(self, p: Pos) -> bool:
        return contains_sdp(self, p)


@dataclass(frozen=True)
class SDPUnion:
    """A finite union of parts; order-insensitive, duplicates removable."""

    parts: tuple[SDPSet, ...] = ()

    @staticmethod
    def of(parts: Iterable[SDPSet]) -> "SDPUnion":
        return SDPUnion(tuple(parts))

    def dedup(self) -> "SDPUnion":
        seen = set()
        out = []
        for part in self.parts:
            if part.key() not in seen:
                seen.add(part.key())
                out.append(part)
        return SDPUnion(tuple(out))

    def contains(self, p: Pos) -> bool:
        return contains_union(self, p)


def _primitive(vec: Vec2) -> Vec2:
    g = math.gcd(abs(vec[0]), abs(vec[1]))
    gx, gy = vec[0] // g, vec[1] // g
    if gx < 0 or (gx == 0 and gy < 0):
        gx, gy = -gx, -gy
    return (gx, gy)


def _scalar_of(vec: Vec2, g: Vec2) -> Optional[int]:
    """t with vec == t*g, or None if vec is not an integer multiple of g."""
    if g[0] != 0:
        if vec[0] % g[0]:
            return None
        t = vec[0] // g[0]
    else:
        if vec[0] != 0:
            return None
        if vec[1] % g[1]:
            return None
        t = vec[1] // g[1]
    if (t * g[0], t * g[1]) != vec:
        return None
    return t


def _semigroup_contains(a: int, c: int, t: int) -> bool:
    """Whether n*a + m*c == t has a solution in nonnegative integers."""
    if a == 0 and c == 0:
        return t == 0
    if a == 0:
        return t % c == 0 and t // c >= 0
    if c == 0:
        return t % a == 0 and t // a >= 0
    if a < 0 and c < 0:
        a, c, t = -a, -c, -t
    if a > 0 and c > 0:
        if t < 0:
            return False
        g = math.gcd(a, c)
        if t % g:
            return False
        # if any solution exists, one has m < a // g
        for m in range(a // g):
            r = t - m * c
            if r < 0:
                break
            if r % a == 0:
                return True
        return False
    # Opposite signs: shifting any integer solution by the kernel vector
    # (c/g, -a/g) moves n and m in opposite directions without bound, so a
    # nonnegative solution exists exactly when gcd(a, c) divides t.
    return t % math.gcd(abs(a), abs(c)) == 0


def contains_sdp(sdp: SDPSet, p: Pos) -> bool:
    """Exact membership of p in {b + n*u + m*v : n, m >= 0}."""
    b, u, v = sdp.b, sdp.u, sdp.v
    w = (p[0] - b[0], p[1] - b[1])
    cross = u[0] * v[1] - u[1] * v[0]
    if cross != 0:
        n_num = w[0] * v[1] - w[1] * v[0]
        m_num = u[0] * w[1] - u[1] * w[0]
        if n_num % cross or m_num % cross:
            return False
        return n_num // cross >= 0 and m_num // cross >= 0
    if u == (0, 0) and v == (0, 0):
        return w == (0, 0)
    g = _primitive(u if u != (0, 0) else v)
    a = _scalar_of(u, g)
    c = _scalar_of(v, g)
    t = _scalar_of(w, g)
    if t is None:
        return False
    assert a is not None and c is not None
    return _semigroup_contains(a, c, t)


def contains_union(union: SDPUnion, p: Pos) -> bool:
    return any(contains_sdp(part, p) for part in union.parts)


def _axis_steps(coef: int, lo: int, hi: int) -> Optional[tuple[int, int]]:
    """Integer n range with n*coef in [lo, hi]; None means unconstrained."""
    if coef == 0:
        return None if lo <= 0 <= hi else (1, 0)
    if coef > 0:
        return (-((-lo) // coef), hi // coef)
    return (-((-hi) // coef), lo // coef)


def _intersect(r1: Optional[tuple[int, int]], r2: Optional[tuple[int, int]]):
    if r1 is None:
        return r2
    if r2 is None:
        return r1
    return (max(r1[0], r2[0]), min(r1[1], r2[1]))


def _cone_points(b: Vec2, u: Vec2, v: Vec2, window: Window, cap: int) -> Iterator[Pos]:
    """All window points of the part, by direct forward generation.

    Exact for every shape of (u, v): independent, parallel with any signs,
    or degenerate.  Raises DegenerateRange when the generation bounds exceed
    the cap.
    """
    lx, hx = window.x_min - b[0], window.x_max - b[0]
    ly, hy = window.y_min - b[1], window.y_max - b[1]
    cross = u[0] * v[1] - u[1] * v[0]
    if cross != 0:
        # m = cross(u, q - b) / cross(u, v), so window points bound m.
        dx = max(abs(lx), abs(hx))
        dy = max(abs(ly), abs(hy))
        m_bound = (abs(u[0]) * dy + abs(u[1]) * dx) // abs(cross)
        if m_bound + 1 > cap:
            raise DegenerateRange(
                f"generation bound {m_bound} for part (b={b}, u={u}, v={v}) exceeds cap {cap}"
            )
        emitted = 0
        seen_feasible = False
        for m in range(m_bound + 1):
            # real feasibility of the n interval is contiguous over m, so
            # one truly empty slice after a nonempty one ends the sweep;
            # with small period coordinates the 1e-6 slack is exact
            real_lo, real_hi = 0.0, float(m_bound) * 4 + 4
            for coef, lo, hi in (
                (u[0], lx - m * v[0], hx - m * v[0]),
                (u[1], ly - m * v[1], hy - m * v[1]),
            ):
                if coef == 0:
                    if not lo <= 0 <= hi:
                        real_lo, real_hi = 1.0, 0.0
                elif coef > 0:
                    real_lo = max(real_lo, lo / coef)
                    real_hi = min(real_hi, hi / coef)
                else:
                    real_lo = max(real_lo, hi / coef)
                    real_hi = min(real_hi, lo / coef)
            if real_hi - real_lo < -1e-6:
                if seen_feasible:
                    break
                continue
            seen_feasible = True
            rng = _intersect(
                _axis_steps(u[0], lx - m * v[0], hx - m * v[0]),
                _axis_steps(u[1], ly - m * v[1], hy - m * v[1]),
            )
            n_lo = 0 if rng is None else max(0, rng[0])
            n_hi = m_bound * 4 if rng is None else rng[1]
            for n in range(n_lo, n_hi + 1):
                emitted += 1
                if emitted > cap:
                    raise DegenerateRange(f"part (b={b}, u={u}, v={v}) exceeds cap {cap}")
                yield (b[0] + n * u[0] + m * v[0], b[1] + n * u[1] + m * v[1])
        return
    if u == (0, 0) and v == (0, 0):
        if window.contains(b):
            yield b
        return
    g = _primitive(u if u != (0, 0) else v)
    a = _scalar_of(u, g)
    c = _scalar_of(v, g)
    assert a is not None and c is not None
    rng = _intersect(_axis_steps(g[0], lx, hx), _axis_steps(g[1], ly, hy))
    assert rng is not None  # g is nonzero
    t_lo, t_hi = rng
    if t_hi - t_lo + 1 > cap:
        raise DegenerateRange(f"part (b={b}, u={u}, v={v}) range exceeds cap {cap}")
    for t in range(t_lo, t_hi + 1):
        if _semigroup_contains(a, c, t):
            yield (b[0] + t * g[0], b[1] + t * g[1])


def part_window_points(part: SDPSet, window: Window, cap: int = 5_000_000) -> set[Pos]:
    """Window readout of one part by forward generation."""
    return set(_cone_points(part.b, part.u, part.v, window, cap))


def window_points(union: SDPUnion, window: Window, cap: int = 5_000_000) -> set[Pos]:
    """All window points of the union, by per-part forward generation."""
    out: set[Pos] = set()
    for part in union.parts:
        out |= part_window_points(part, window, cap)
    return out


def window_mismatch(u1: SDPUnion, u2: SDPUnion, window: Window) -> Optional[Pos]:
    """Lexicographically least window point where the unions disagree."""
    p1 = window_points(u1, window)
    p2 = window_points(u2, window)
    diff = p1 ^ p2
    return min(diff) if diff else None


def equal_on_window(u1: SDPUnion, u2: SDPUnion, window: Window) -> bool:
    return window_mismatch(u1, u2, window) is None


@dataclass(frozen=True)
class EventuallyPeriodicRow:
    """Finite description of one horizontal row of a union.

    Membership of (x, y) for x >= left_bound reads prefix bits for the first
    preperiod cells and then cycles; this is exactly a unary automaton with
    preperiod states leading into a period-long cycle.
    """

    y: int
    left_bound: int
    preperiod: int
    period: int
    prefix_members: tuple[bool, ...]
    cycle_members: tuple[bool, ...]

    def contains_x(self, x: int) -> bool:
        idx = x - self.left_bound
        if idx < 0:
            raise ValueError(f"x={x} is left of the described range")
        if idx < self.preperiod:
            return self.prefix_members[idx]
        return self.cycle_members[(idx - self.preperiod) % self.period]


def row_slice(
    union: SDPUnion, y: int, left_bound: int, probe_width: int
) -> EventuallyPeriodicRow:
    """Fit the least (preperiod, period) description to a probed row.

    The probe reads probe_width membership bits starting at left_bound; a
    candidate description must hold on the whole probe with at least two full
    cycles visible, and is then certified against direct membership on three
    further periods.  Raises ProbeTooNarrow if no candidate with period at
    most probe_width / 3 survives.
    """
    if probe_width < 3:
        raise ProbeTooNarrow(f"probe width {probe_width} is too small")
    bits = [contains_union(union, (x, y)) for x in range(left_bound, left_bound + probe_width)]
    max_period = probe_width // 3
    for preperiod in range(probe_width + 1):
        for period in range(1, max_period + 1):
            if preperiod + 2 * period > probe_width:
                break
            if any(
                bits[x] != bits[x + period] for x in range(preperiod, probe_width - period)
            ):
                continue
            row = EventuallyPeriodicRow(
                y=y,
                left_bound=left_bound,
                preperiod=preperiod,
                period=period,
                prefix_members=tuple(bits[:preperiod]),
                cycle_members=tuple(bits[preperiod : preperiod + period]),
            )
            probe_end = left_bound + probe_width
            if all(
                row.contains_x(x) == contains_union(union, (x, y))
                for x in range(probe_end, probe_end + 3 * period)
            ):
                return row
    raise ProbeTooNarrow(
        f"no eventually periodic description with period <= {max_period} fits the probe"
    )


# ---------------------------------------------------------------------------
# Bounded fitting of observed point sets.
# ---------------------------------------------------------------------------


class _FitFrame:
    """Numpy scratch state for one fit: grids indexed [y][x]."""

    def __init__(self, sample: frozenset[Pos], window: Window):
        self.window = window
        self.x0 = window.x_min
        self.y0 = window.y_min
        self.shape = (window.height, window.width)
        grid = np.zeros(self.shape, dtype=bool)
        for (x, y) in sample:
            grid[y - self.y0, x - self.x0] = True
        self.sample_grid = grid
        self._rays: dict[Vec2, np.ndarray] = {}

    def shift(self, arr: np.ndarray, dx: int, dy: int, fill) -> np.ndarray:
        """out[y, x] = arr[y + dy, x + dx] where defined, else fill."""
        h, w = arr.shape
        out = np.full_like(arr, fill)
        y0, y1 = max(0, -dy), min(h, h - dy)
        x0, x1 = max(0, -dx), min(w, w - dx)
        if y0 < y1 and x0 < x1:
            out[y0:y1, x0:x1] = arr[y0 + dy : y1 + dy, x0 + dx : x1 + dx]
        return out

    def _steps_in_window(self, u: Vec2) -> int:
        h, w = self.shape
        bounds = []
        if u[0]:
            bounds.append((w - 1) // abs(u[0]))
        if u[1]:
            bounds.append((h - 1) // abs(u[1]))
        return min(bounds)

    def ray_all(self, u: Vec2) -> np.ndarray:
        """R[b]: every in-window point of the u-ray from b is a sample point."""
        cached = self._rays.get(u)
        if cached is not None:
            return cached
        if u == (0, 0):
            r = self.sample_grid
        else:
            r = self.sample_grid.copy()
            n_max = self._steps_in_window(u)
            k, off = 1, u
            while k <= n_max:
                r &= self.shift(r, off[0], off[1], True)
                k *= 2
                off = (off[0] * 2, off[1] * 2)
        self._rays[u] = r
        return r

    def scan_all(self, base: np.ndarray, v: Vec2) -> np.ndarray:
        """out[b] = AND of base over the whole in-window v-ray from b."""
        if v == (0, 0):
            return base
        r = base.copy()
        n_max = self._steps_in_window(v)
        k, off = 1, v
        while k <= n_max:
            r &= self.shift(r, off[0], off[1], True)
            k *= 2
            off = (off[0] * 2, off[1] * 2)
        return r

    def scan_sum(self, base: np.ndarray, v: Vec2) -> np.ndarray:
        """out[b] = sum of base over the whole in-window v-ray from b."""
        r = base.astype(np.int32)
        if v == (0, 0):
            return r
        n_max = self._steps_in_window(v)
        k, off = 1, v
        while k <= n_max:
            r = r + self.shift(r, off[0], off[1], 0)
            k *= 2
            off = (off[0] * 2, off[1] * 2)
        return r

    def to_pos(self, iy: int, ix: int) -> Pos:
        return (ix + self.x0, iy + self.y0)


def _period_vectors(max_coord: int) -> list[Vec2]:
    rng = range(-max_coord, max_coord + 1)
    return sorted((x, y) for x in rng for y in rng)


def _greedy_pairs(max_coord: int) -> list[tuple[Vec2, Vec2]]:
    """Period pairs the greedy stage evaluates with exact vectorized sweeps.

    These are the pairs whose quadrant cone never leaves and re-enters the
    window: single rays (v = 0) and linearly independent pairs with no
    componentwise sign opposition.  Everything else is left to the
    exhaustive stage.
    """
    vecs = _period_vectors(max_coord)
    pairs = [(u, (0, 0)) for u in vecs]
    for i, u in enumerate(vecs):
        if u == (0, 0):
            continue
        for v in vecs[i + 1 :]:
            if u[0] * v[1] - u[1] * v[0] == 0:
                continue
            if u[0] * v[0] >= 0 and u[1] * v[1] >= 0:
                pairs.append((u, v))
    return pairs


def _canonical_pairs(max_coord: int) -> list[tuple[Vec2, Vec2]]:
    """All unordered period pairs up to the coordinate bound."""
    vecs = _period_vectors(max_coord)
    out = []
    for i, u in enumerate(vecs):
        for v in vecs[i:]:
            out.append((u, v))
    return out


def _coverage_if_valid(
    b: Vec2, u: Vec2, v: Vec2, window: Window, sample: frozenset[Pos], cap: int
) -> Optional[frozenset[Pos]]:
    """The part's window points if they all lie in the sample, else None."""
    points = []
    for q in _cone_points(b, u, v, window, cap):
        if q not in sample:
            return None
        points.append(q)
    return frozenset(points)


def greedy_cover(
    sample: frozenset[Pos],
    window: Window,
    max_parts: int,
    max_coord: int,
) -> tuple[list[SDPSet], set[Pos]]:
    """Repeatedly pick the valid part covering the most uncovered points.

    Only parts whose candidate evaluation vectorizes exactly are considered
    here (see _greedy_pairs); the exhaustive fit stage considers every part
    shape.  Returns the chosen parts and the points they cover.
    """
    frame = _FitFrame(sample, window)
    pairs = _greedy_pairs(max_coord)
    valid_grids: list[tuple[Vec2, Vec2, np.ndarray]] = []
    for u, v in pairs:
        valid = frame.scan_all(frame.ray_all(u), v)
        if valid.any():
            valid_grids.append((u, v, valid))

    chosen: list[SDPSet] = []
    covered: set[Pos] = set()
    unc_grid = frame.sample_grid.copy()
    for _ in range(max_parts):
        if not unc_grid.any():
            break
        best_gain = 0
        best: Optional[tuple[Pos, Vec2, Vec2]] = None
        for u, v, valid in valid_grids:
            gains = frame.scan_sum(frame.scan_sum(unc_grid, u), v)
            gains = np.where(valid, gains, 0)
            top = int(gains.max())
            if top < best_gain or top == 0:
                continue
            ys, xs = np.nonzero(gains == top)
            base = min(frame.to_pos(int(y), int(x)) for y, x in zip(ys, xs))
            # ties prefer the smallest base then the smallest periods, which
            # keeps fitted cones rooted like the structures that grew them
            key = (base, u, v)
            if top > best_gain or (best is not None and key < best):
                best_gain = top
                best = key
        if best is None:
            break
        b, u, v = best
        part = SDPSet(b=b, u=u, v=v)
        pts = part_window_points(part, window)
        chosen.append(part)
        covered |= pts
        for (x, y) in pts:
            unc_grid[y - frame.y0, x - frame.x0] = False
    return chosen, covered


class _ExhaustiveScan:
    """Result of streaming the whole bounded candidate space once.

    top_sizes holds the largest coverage sizes seen (possibly from
    overlapping or duplicate coverages, which only loosens the bound).
    candidates dedups coverages up to the cap; overflowed notes that the
    cap was hit, in which case candidates is incomplete but top_sizes is
    still exhaustive.
    """

    def __init__(self, keep: int):
        self.top_sizes: list[int] = []
        self._keep = keep
        self.candidates: dict[frozenset[Pos], SDPSet] = {}
        self.overflowed = False

    def add(self, cov: frozenset[Pos], part: SDPSet, cap: int) -> None:
        size = len(cov)
        if len(self.top_sizes) < self._keep:
            self.top_sizes.append(size)
            self.top_sizes.sort(reverse=True)
        elif size > self.top_sizes[-1]:
            self.top_sizes[-1] = size
            self.top_sizes.sort(reverse=True)
        if self.overflowed:
            return
        prev = self.candidates.get(cov)
        if prev is None:
            if len(self.candidates) >= cap:
                self.overflowed = True
                return
            self.candidates[cov] = part
        elif part.key() < prev.key():
            self.candidates[cov] = part


def _exhaustive_scan(
    sample: frozenset[Pos],
    window: Window,
    max_parts: int,
    max_coord: int,
    candidate_cap: int,
    work_cap: int,
) -> _ExhaustiveScan:
    """Stream every valid part (coverage inside the sample) in the bounded
    space.  Bases range over the sample points."""
    frame = _FitFrame(sample, window)
    scan = _ExhaustiveScan(keep=max_parts)
    work = 0
    for u, v in _canonical_pairs(max_coord):
        screen = frame.ray_all(u) & frame.ray_all(v)
        if not screen.any():
            continue
        ys, xs = np.nonzero(screen)
        bases = sorted(frame.to_pos(int(y), int(x)) for y, x in zip(ys, xs))
        for b in bases:
            work += 1
            if work > work_cap:
                raise SearchSpaceExceeded(
                    f"fit enumeration exceeded the work cap of {work_cap}"
                )
            cov = _coverage_if_valid(b, u, v, window, sample, cap=window.count + 1)
            if cov is not None:
                scan.add(cov, SDPSet(b=b, u=u, v=v), candidate_cap)
    return scan


def _exact_cover_search(
    sample: frozenset[Pos],
    candidates: dict[frozenset[Pos], SDPSet],
    max_parts: int,
) -> Optional[list[SDPSet]]:
    """Exhaustive bounded set-cover over deduplicated candidates."""
    cand_list = sorted(candidates.items(), key=lambda kv: (-len(kv[0]), kv[1].key()))
    sizes = [len(cov) for cov, _ in cand_list]
    point_to_cands: dict[Pos, list[int]] = {p: [] for p in sample}
    for idx, (cov, _) in enumerate(cand_list):
        for p in cov:
            point_to_cands[p].append(idx)
    sizes_desc = sorted(sizes, reverse=True)

    def dfs(uncovered: frozenset[Pos], k_left: int, chosen: list[int]) -> Optional[list[int]]:
        if not uncovered:
            return chosen
        if k_left == 0:
            return None
        if sum(sizes_desc[:k_left]) < len(uncovered):
            return None
        pivot = min(uncovered, key=lambda p: (len(point_to_cands[p]), p))
        options = point_to_cands[pivot]
        if not options:
            return None
        ranked = sorted(
            options, key=lambda i: (-len(cand_list[i][0] & uncovered), cand_list[i][1].key())
        )
        for idx in ranked:
            res = dfs(uncovered - cand_list[idx][0], k_left - 1, chosen + [idx])
            if res is not None:
                return res
        return None

    found = dfs(frozenset(sample), max_parts, [])
    if found is None:
        return None
    return [cand_list[i][1] for i in found]


def fit_union(
    sample: Iterable[Pos],
    window: Window,
    max_parts: int,
    max_coord: int,
    *,
    candidate_cap: int = 300_000,
    work_cap: int = 60_000_000,
) -> Optional[SDPUnion]:
    """Search for a union of at most max_parts parts whose window points
    equal the sample exactly.

    Period coordinates are bounded by max_coord; base points range over the
    sample itself (any fitting part re-bases onto its first generated sample
    point, which widens the effective base bound by the window diameter).
    A greedy cover runs first; if it does not finish the job, an exhaustive
    bounded search over all deduplicated valid parts decides the question.
    Returns None only after that search exhausts the bounded space.  Raises
    SearchSpaceExceeded when the candidate count or enumeration work exceeds
    the caps.
    """
    sample = frozenset(sample)
    for p in sample:
        if not window.contains(p):
            raise ValueError(f"sample point {p} lies outside the fit window")
    if not sample:
        return SDPUnion(())

    parts, covered = greedy_cover(sample, window, max_parts, max_coord)
    if covered == sample:
        union = SDPUnion(tuple(parts)).dedup()
        assert window_points(union, window) == set(sample)
        return union

    scan = _exhaustive_scan(sample, window, max_parts, max_coord, candidate_cap, work_cap)
    if sum(scan.top_sizes) < len(sample):
        # even the largest parts cannot jointly reach the sample size, so
        # the bounded space holds no exact cover
        return None
    if scan.overflowed:
        raise SearchSpaceExceeded(
            f"fit candidate count exceeded the cap of {candidate_cap}"
        )
    found = _exact_cover_search(sample, scan.candidates, max_parts)
    if found is None:
        return None
    union = SDPUnion(tuple(found)).dedup()
    assert window_points(union, window) == set(sample)
    return union


def predictive_check(
    union: SDPUnion,
    observed: Iterable[Pos],
    fit_window: Window,
    predict_window: Window,
) -> bool:
    """Whether a union fitted on fit_window reproduces the observed set on
    the larger predict_window exactly.

    observed must contain the full observed set on predict_window.  Raises
    WindowNotNested if the prediction window does not contain the fit
    window.
    """
    if not predict_window.contains_window(fit_window):
        raise WindowNotNested(f"{fit_window} is not contained in {predict_window}")
    expected = {p for p in observed if predict_window.contains(p)}
    return window_points(union, predict_window) == expected
