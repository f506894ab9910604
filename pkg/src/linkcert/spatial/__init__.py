"""Embeddings, exact linking numbers and chain arithmetic."""

from .chains import (
    Chain,
    ChainError,
    canonical,
    canonical_orientation,
    chain_add,
    chain_as_cycle,
    chain_of,
    fuse,
    reverse,
)
from .geometry import (
    DegenerateDirection,
    Embedding,
    EmbeddingError,
    ProjectionDirection,
    check_direction,
    direction_candidates,
    generic_direction,
    is_valid_embedding,
    validate_embedding,
)
from .linking import (
    Crossing,
    LinkingError,
    LinkingKernel,
    check_cycle,
    crossing_diagram,
    cycle_edges,
    gauss_estimate,
    incidence_vector,
    kernel_for,
    linking_number,
)
