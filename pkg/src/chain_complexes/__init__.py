from .cellfile import load_cell_complex, parse_cell_complex
from .matrices import (
    ChainComplex,
    HomologyGroup,
    determinant,
    homology,
    int_matrix,
    invariant_factors,
    rank,
    smith_normal_form,
    solve_integer_system,
    sparse_invariant_factors,
)
from .resolutions import (
    BarResolution,
    BoundaryTerm,
    CellularResolution,
    FreeZGComplex,
    ResolutionChain,
    TensorComplex,
    cellular_resolution,
    diagonal_chain,
    diagonal_terms,
    fundamental_cycles,
    torus_resolution,
    wedge_resolution,
)
from .simplicial import (
    Face,
    InvariantChain,
    OrbitCell,
    SimplicialGammaComplex,
    Stabilizer,
    coordinate_cycle,
    fundamental_cycle,
    invariant_boundary,
    kuhn_complex,
    line_complex,
    point_complex,
)


def tensor_complex(left, right, radius=None):
    return TensorComplex(left, right, radius)
