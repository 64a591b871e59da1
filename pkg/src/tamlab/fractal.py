"""Discrete self-similar fractals defined by digit-pair generators.

A spec is a base c >= 2 and a generator G inside {0..c-1} squared; a point
of the first quadrant belongs to the fractal iff every base-c digit pair of
its coordinates lies in G.  The origin always belongs (its expansion is
empty).  The classic instance is c = 2 with G omitting (1, 1), whose points
are exactly the pairs with disjoint binary digits.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

from .errors import NegativeWindow, TrivialFractal
from .model import Pos, Window
from .periodic import SDPSet, SDPUnion, fit_union, greedy_cover

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FractalSpec:
    """Base and digit-pair generator of a discrete self-similar fractal."""

    base: int
    generator: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.base < 2:
            raise ValueError("base must be at least 2")
        for (dx, dy) in self.generator:
            if not (0 <= dx < self.base and 0 <= dy < self.base):
                raise ValueError(f"generator digit pair {(dx, dy)} out of range")

    def contains(self, p: Pos) -> bool:
        x, y = p
        if x < 0 or y < 0:
            return False
        c = self.base
        while x > 0 or y > 0:
            if (x % c, y % c) not in self.generator:
                return False
            x //= c
            y //= c
        return True


SIERPINSKI = FractalSpec(base=2, generator=frozenset({(0, 0), (0, 1), (1, 0)}))


def fractal_points(spec: FractalSpec, window: Window) -> set[Pos]:
    """All window points whose digit pairs all lie in the generator.

    Raises NegativeWindow when the window leaves the first quadrant, where
    digit expansions are undefined.
    """
    if window.x_min < 0 or window.y_min < 0:
        raise NegativeWindow(f"{window} leaves the first quadrant")
    return {p for p in window.points() if spec.contains(p)}


def is_nontrivial(spec: FractalSpec) -> bool:
    """Working non-triviality test: the generator is a proper nonempty
    subset, the point set is infinite, and it is not contained in one line.

    The point set contains the origin, so it lies on a line iff all
    generator digit pairs are pairwise collinear with the origin; and it is
    infinite iff some generator pair is nonzero.
    """
    size = len(spec.generator)
    if size == 0 or size == spec.base * spec.base:
        return False
    nonzero = [g for g in spec.generator if g != (0, 0)]
    if not nonzero:
        return False
    first = nonzero[0]
    return any(first[0] * g[1] - first[1] * g[0] != 0 for g in nonzero[1:])


@dataclass
class MismatchReport:
    """Outcome of trying to describe a fractal window as a bounded union.

    outcome is "nofit" (the exhaustive bounded search completed with no
    exact fit) or "fit" (a union was found; loud, since it demands
    inspection).  nearest_miss_parts is the best greedy partial cover, with
    uncovered_count points left over and a few of them listed.
    """

    window: Window
    max_parts: int
    max_coord: int
    outcome: str
    union: Optional[SDPUnion] = None
    nearest_miss_parts: list[SDPSet] = field(default_factory=list)
    uncovered_count: int = 0
    uncovered_examples: list[Pos] = field(default_factory=list)


def mismatch_witness(
    spec: FractalSpec, window: Window, max_parts: int, max_coord: int
) -> MismatchReport:
    """Run the bounded fit against a fractal window and report the outcome.

    Raises TrivialFractal when the spec fails the non-triviality test.  A
    fit on a non-degenerate window is logged loudly: it refutes nothing by
    itself (the bounds may be generous for the window) but wants a look.
    """
    if not is_nontrivial(spec):
        raise TrivialFractal(f"{spec} fails the non-triviality test")
    sample = frozenset(fractal_points(spec, window))
    union = fit_union(sample, window, max_parts, max_coord)
    if union is not None:
        logger.warning(
            "fractal window %s fitted by %d parts within coordinate bound %d; "
            "inspect the window and bounds",
            window,
            len(union.parts),
            max_coord,
        )
        return MismatchReport(
            window=window,
            max_parts=max_parts,
            max_coord=max_coord,
            outcome="fit",
            union=union,
        )
    parts, covered = greedy_cover(sample, window, max_parts, max_coord)
    uncovered = sorted(sample - covered)
    return MismatchReport(
        window=window,
        max_parts=max_parts,
        max_coord=max_coord,
        outcome="nofit",
        nearest_miss_parts=parts,
        uncovered_count=len(uncovered),
        uncovered_examples=uncovered[:10],
    )
