"""Energy-preserving HBVM(k, s) Runge-Kutta methods for canonical Hamiltonian systems."""

from .integrator import (
    OrderStudy,
    SolverError,
    SolveSettings,
    StepResult,
    Trajectory,
    convergence_order,
    integrate,
    step,
    symmetry_check,
)
from .legendre import OrthonormalBasis, eval_antiderivative, eval_basis, xi_coefficient
from .problems import HamiltonianSystem, State, builtin, vector_field
from .quadrature import QuadratureRule, check_exactness, gauss_rule, lobatto_rule, make_rule
from .spectral import SpectralReport, build_Xs, isospectral_report, subspace_residual
from .tableau import (
    CollocationTableau,
    ConfigurationError,
    HbvmTableau,
    build_collocation,
    build_hbvm,
    filter_collocation,
)

__version__ = "0.1.0"
