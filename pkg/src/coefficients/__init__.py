from .cochains import (
    EquivariantCochain,
    constant_cochain,
    pair_cochain_cycle,
    random_cochain,
    random_value,
)
from .products import cup_on_bar, cup_power, cup_product, diagonal_pullback
from .sequences import (
    ShortExactSeq,
    augmentation_power_sequence,
    augmentation_sequence,
    berstein_schwarz,
    connecting_cohomology,
    connecting_homology,
)
from .universality import (
    CoinvariantRanks,
    ModuleMap,
    basis_tensor,
    character_cochain,
    coinvariants_rank,
    pushforward,
    solve_coefficient_hom,
    solve_with_retry,
)
