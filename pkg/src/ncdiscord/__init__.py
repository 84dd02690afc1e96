"""Non-commutativity measures of quantum discord for bipartite states."""

__version__ = "0.1.0"

from .blocks import BlockGrid, a_blocks, b_blocks, reassemble
from .discord import DiscordResult, MeasurementAxis, discord_numeric, mutual_information, von_neumann_entropy
from .measures import (
    MeasureResult,
    NormKind,
    bell_diagonal_closed,
    d_n,
    d_n_prime,
    d_n_pure_closed,
    d_n_symmetric,
    isotropic_closed_paper,
    pair_set,
    total_non_commutativity,
    werner_closed_paper,
)
from .states import (
    BellCoefficients,
    DensityMatrix,
    SchmidtVector,
    bell_diagonal,
    bell_mixture,
    isotropic,
    max_entangled,
    pure_from_schmidt,
    quantum_classical,
    random_density,
    validate,
    werner,
)
