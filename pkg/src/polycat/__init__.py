"""Wigner functions and tomograms of cyclic and dihedral Gaussian superpositions."""
from ._kernels import BACKEND
from .errors import (
    BoundaryWarning, ConsistencyError, ConvergenceError, DegenerateState, DomainError, NumericalInstability,
    ParseError, RangeError, ValidationError,
)
from .gaussian import (
    ComplexGaussian, SuperposedState, coherent_gaussian, gaussian_integral, inner, normalize, overlap,
    state_norm,
)
from .groups import (
    GroupSpec, SeedGaussian, cat_state, character, cyclic_terms, dihedral_terms, gram_matrix, rotate_params,
    rotated_gaussian, symmetric_state,
)
from .tomogram import (
    TomogramGrid, inverse_radon, optical_tomogram, radon_oracle, symplectic_tomogram, tomogram_grid,
    tomogram_pair_kernel,
)
from .wigner import (
    FieldGrid, PhaseSpaceGrid, negativity_volume, wigner_grid, wigner_oracle, wigner_pair_kernel, wigner_point,
    wigner_values,
)

__version__ = "0.1.0"
