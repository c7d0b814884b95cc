"""Exact ECH combinatorics for convex toric domains.

Convex generators, their index and action, ECH capacities, the pairwise
embedding criterion, and a decision procedure for polydisk-into-ball
obstructions.  All arithmetic is exact.
"""

from .criterion import (
    CriterionConfig,
    LeqWitness,
    ObstructionReport,
    candidates,
    leq,
    run_criterion,
    subset_oracle,
    verify_witness,
)
from .domains import (
    Ball,
    ConvexPolygon,
    Ellipsoid,
    Polydisk,
    Rational,
    ToricDomain,
    action,
    compare_a_to_sqrt7_threshold,
    format_rational,
    parse_domain,
    parse_rational,
    support,
)
from .enumeration import (
    EnumBounds,
    capacities,
    capacity,
    construct_Y_sequence,
    count_concave_paths,
    enumerate_generators,
    is_minimal,
    minimal_generators,
    y_sequence,
)
from .errors import *  # noqa: F401,F403
from .generators import (
    ONE,
    ConvexGenerator,
    Edge,
    GeneratorStats,
    LatticeCount,
    e,
    format_generator,
    h,
    lattice_count,
    parse_generator,
    product,
    product_index_formula,
    self_product_doubled_area,
    stats,
)
from .pipeline import (
    PipelineParams,
    PipelineReport,
    compute_d_a,
    large_d_witness,
    no_repeats_check,
    sharpness_witness,
    obstruction_pipeline,
    xy_upper_bounds,
)

__version__ = "0.1.0"
