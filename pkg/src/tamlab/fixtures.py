"""Bundled tile systems used by the test suite and handy for CLI demos.

Each fixture is a TAS-format text; ``fixture_system`` parses one into a
live system.  The temperature-1 fixtures (row, comb, two_arm) are directed
and their black sets are clean periodic cones, which makes them the
reference inputs for the fit-and-predict harness.  ``blocked_spiral`` is a
temperature-1 system whose long paths walk east, climb, then descend a
staircase back toward their own first row: the staircase repetitions pump
into the row and collide, while the straight runs pump freely.  The system
branches (several climbs can grow in one assembly), so it is not directed;
only its path structure matters.
"""

from __future__ import annotations

from .model import TileAssemblySystem
from .tasfile import parse_tas, to_system

ROW = """\
# one-way east row; every tile black
temperature 1
tile start black
  north - 0
  east g 1
  south - 0
  west - 0
end
tile cell black
  north - 0
  east g 1
  south - 0
  west g 1
end
seed 0 0 start
"""

COMB = """\
# east spine with a black tooth column over every even x
temperature 1
tile root
  north t 1
  east s1 1
  south - 0
  west - 0
end
tile spine_odd
  north - 0
  east s0 1
  south - 0
  west s1 1
end
tile spine_even
  north t 1
  east s1 1
  south - 0
  west s0 1
end
tile tooth black
  north t 1
  east - 0
  south t 1
  west - 0
end
seed 0 0 root
"""

TWO_ARM = """\
# two arms from the origin, black at odd offsets along each
temperature 1
tile core
  north n0 1
  east e0 1
  south - 0
  west - 0
end
tile east_on black
  north - 0
  east e1 1
  south - 0
  west e0 1
end
tile east_off
  north - 0
  east e0 1
  south - 0
  west e1 1
end
tile north_on black
  north n1 1
  east - 0
  south n0 1
  west - 0
end
tile north_off
  north n0 1
  east - 0
  south n1 1
  west - 0
end
seed 0 0 core
"""

SIERPINSKI = """\
# cooperative parity construction over the first quadrant; a rule tile's
# west and south sides read its neighbors' bits, its north and east sides
# carry their xor, and tiles carrying bit 1 are black
temperature 2
tile seed black
  north bu 2
  east br 2
  south - 0
  west - 0
end
tile edge_e black
  north v1 1
  east br 2
  south - 0
  west br 2
end
tile edge_n black
  north bu 2
  east h1 1
  south bu 2
  west - 0
end
tile r00
  north v0 1
  east h0 1
  south v0 1
  west h0 1
end
tile r01 black
  north v1 1
  east h1 1
  south v1 1
  west h0 1
end
tile r10 black
  north v1 1
  east h1 1
  south v0 1
  west h1 1
end
tile r11
  north v0 1
  east h0 1
  south v1 1
  west h1 1
end
seed 0 0 seed
"""

TWO_CHOICE = """\
# two tile types compete for the seed's east side
temperature 1
tile base
  north - 0
  east g 1
  south - 0
  west - 0
end
tile pick_a black
  north - 0
  east - 0
  south - 0
  west g 1
end
tile pick_b
  north - 0
  east - 0
  south - 0
  west g 1
end
seed 0 0 base
"""

BLOCKED_SPIRAL = """\
# east run (pumpable), optional climb at odd columns, then a south-west
# staircase that descends back onto the run's row and jams
temperature 1
tile origin
  north - 0
  east r0 1
  south - 0
  west - 0
end
tile run_odd
  north c0 1
  east r1 1
  south - 0
  west r0 1
end
tile run_even
  north - 0
  east r0 1
  south - 0
  west r1 1
end
tile climb_odd
  north c1 1
  east - 0
  south c0 1
  west - 0
end
tile climb_even
  north c0 1
  east - 0
  south c1 1
  west sw0 1
end
tile step_west
  north - 0
  east sw0 1
  south sw1 1
  west - 0
end
tile step_down
  north sw1 1
  east - 0
  south - 0
  west sw0 1
end
seed 0 0 origin
"""

_FIXTURES = {
    "row": ROW,
    "comb": COMB,
    "two_arm": TWO_ARM,
    "sierpinski": SIERPINSKI,
    "two_choice": TWO_CHOICE,
    "blocked_spiral": BLOCKED_SPIRAL,
}


def fixture_names() -> list[str]:
    return sorted(_FIXTURES)


def fixture_text(name: str) -> str:
    try:
        return _FIXTURES[name]
    except KeyError:
        raise KeyError(f"no fixture named {name!r}; known: {', '.join(fixture_names())}")


def fixture_system(name: str) -> TileAssemblySystem:
    return to_system(parse_tas(fixture_text(name)))
