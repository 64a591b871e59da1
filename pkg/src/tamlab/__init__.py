"""tamlab: a simulator and analysis lab for square-tile self-assembly.

Square tiles with labeled, strength-weighted glue sides attach one at a
time to a seeded assembly whenever their total binding strength meets the
ambient temperature.  The package simulates that growth in finite windows,
analyzes temperature-1 paths for pumpable repetitions, provides exact
algebra for semi-doubly periodic point sets with a fit-and-predict harness,
generates discrete self-similar fractals, and ships a deterministic CLI.
"""

from .engine import (
    DirectednessVerdict,
    attach,
    black_set,
    check_directed,
    enumerate_producible,
    frontier,
    run_to_quiescence,
)
from .errors import TamlabError
from .fractal import (
    SIERPINSKI,
    FractalSpec,
    MismatchReport,
    fractal_points,
    is_nontrivial,
    mismatch_witness,
)
from .model import (
    Assembly,
    Direction,
    Glue,
    NULL_GLUE,
    Placement,
    TileAssemblySystem,
    TileType,
    Window,
    attach_strength,
    can_attach,
    interaction_strength,
    is_tau_stable,
)
from .paths import (
    Blocked,
    Pumpable,
    PumpScanReport,
    TilePath,
    find_pumpable,
    is_pumpable,
    producible_paths,
    pump_k,
    pumpability_scan,
    repetitions,
)
from .periodic import (
    EventuallyPeriodicRow,
    SDPSet,
    SDPUnion,
    contains_sdp,
    contains_union,
    equal_on_window,
    fit_union,
    greedy_cover,
    predictive_check,
    row_slice,
    window_mismatch,
    window_points,
)

__version__ = "0.1.0"

__all__ = [
    "Assembly",
    "Blocked",
    "Direction",
    "DirectednessVerdict",
    "EventuallyPeriodicRow",
    "FractalSpec",
    "Glue",
    "MismatchReport",
    "NULL_GLUE",
    "Placement",
    "PumpScanReport",
    "Pumpable",
    "SDPSet",
    "SDPUnion",
    "SIERPINSKI",
    "TamlabError",
    "TileAssemblySystem",
    "TilePath",
    "TileType",
    "Window",
    "attach",
    "attach_strength",
    "black_set",
    "can_attach",
    "check_directed",
    "contains_sdp",
    "contains_union",
    "enumerate_producible",
    "equal_on_window",
    "find_pumpable",
    "fit_union",
    "fractal_points",
    "frontier",
    "greedy_cover",
    "interaction_strength",
    "is_nontrivial",
    "is_pumpable",
    "is_tau_stable",
    "mismatch_witness",
    "predictive_check",
    "producible_paths",
    "pump_k",
    "pumpability_scan",
    "repetitions",
    "row_slice",
    "run_to_quiescence",
    "window_mismatch",
    "window_points",
]
