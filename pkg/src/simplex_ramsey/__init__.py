"""Exact-arithmetic engine for pattern copies, box-union rank and dichotomy
certificates in the 2- and 3-dimensional simplex."""

from ._backend import BACKEND
from .geometry import (
    Box,
    BoxUnionSet,
    EssentialSimplex,
    arrangement_coords,
    contains_box,
    eps_dense,
    in_boundary_nbhd,
    in_essential_simplex,
    in_simplex,
    interior_union_contains,
    sample_complement,
)
from .matching import (
    CopyAssignment,
    EssentialityReport,
    essential_at_depth,
    find_copy,
    find_copy_in_complement,
    verify_copy,
)
from .patterns import (
    IndexMap,
    Pattern,
    chain,
    enumerate_patterns,
    grid_pattern,
    insert,
    is_grid,
    make_pattern,
    min_grid_width,
    oplus,
    ordered_blocks,
    pair_extend,
    pattern_embeds,
    stage_embedding,
    validate_chain_stages,
)
from .plmaps import PLHomeo, densify_from_grid, identity_homeo, thin_from_witness, through_points
from .rank import (
    RankReport,
    RankWitness2D,
    RankWitness3D,
    brute_force_rank,
    nested_box_witness,
    rank,
    rank_at_least,
    verify_witness,
    verify_witness2,
    verify_witness3,
)
from .dichotomy import (
    DichotomyOutcome,
    chain_staircase_set,
    pair_dichotomy,
    pair_extension_loop,
    triple_augment,
    triple_dichotomy,
)

__version__ = "0.1.0"
