"""Space-time boundary element tools for the 1D wave equation on (0, 1)."""

from .boundary import BoundaryDensity, BoundaryFunction, BoundaryGrid, CauchyData, PowerProfile, WaveField
from .errors import (
    ContractError,
    DomainError,
    InputError,
    ParameterError,
    SingularityError,
    SolverError,
    StbemError,
    UnsupportedError,
)
from .hilbert import ht_apply, ht_gram, ht_inverse, time_reversal
from .operators import (
    assemble_energetic,
    assemble_ht_weighted,
    assemble_K,
    assemble_Kp,
    assemble_mass,
    assemble_V,
    assemble_W,
    calderon_residuals,
)
from .potentials import double_layer_eval, potential_trace, representation_formula, single_layer_eval
from .solvers import reconstruct_field, solve_dirichlet, solve_neumann, steklov_poincare
from .spectral import QuarterWaveSeries, TimeInterval, analyze_time, sobolev_norm, synthesize_time

__version__ = "0.1.0"
