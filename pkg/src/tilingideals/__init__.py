"""Domino tilings of cubiculated regions and their binomial ideals."""

from .binomial import (
    Binomial,
    DecompositionCertificate,
    DecompositionError,
    Term,
    binomial_of_cycle,
    binomial_of_tilings,
    cycle_decomposition,
    parse_certificate,
    quadratic_decomposition,
    verify_certificate,
)
from .graph import Cycle, TilingGraph, build_graph, chordless_cycles, chords, incidence_matrix
from .ideal import (
    IdealPresentation,
    binomial_in_binomial_ideal,
    export_cas,
    flip_ideal_generators,
    tiling_ideal_generators,
    tiling_subset_flip,
    toric_generators,
)
from .moves import (
    FiberGraph,
    Move,
    apply_move,
    connection_path,
    cycle_moves,
    fiber_graph,
    flip_moves,
    is_connected_by,
    trit_moves,
)
from .region import Region, RegionError, bounding_box, is_simply_connected, parse_region, serialize_region
from .sampler import ChainConfig, empirical_distribution, random_walk
from .tiling import Tiling, count_rectangle_kasteleyn, cycle_cover, enumerate_tilings

__version__ = "0.1.0"
