"""Numerics for the logarithmic Gross-Pitaevskii equation
``i u_t + u_xx = lam u ln|u|^2`` with ``|u| -> 1`` at infinity: wave profiles
and their energies, plus two independent time integrators (split-step Fourier
and Hermite-Galerkin)."""
from .energy import (
    EnergyReport,
    energy_report,
    equivalence_ratio,
    h1_modulus_distance,
    log_field_norm,
    modulus_gap_l2,
)
from .errors import (
    BasisTruncationError,
    ConfigError,
    CsvFormatError,
    DomainError,
    EvolutionError,
    GluingError,
    LogGPError,
    NoInteriorRoot,
    TrivialModulus,
    VelocityAboveThreshold,
    WrongBranch,
)
from .evolution import (
    EvolutionConfig,
    Nonlinearity,
    SplitStepper,
    Trajectory,
    evolve,
    frequency_probe,
    l2_distance,
    make_pair_box,
    strang_step,
)
from .galerkin import (
    GalerkinState,
    HermiteBasis,
    galerkin_energy,
    galerkin_evolve,
    galerkin_rhs,
    galerkin_state,
    hermite_basis,
    holder_constant,
)
from .grid import BC, Grid, GridFunction, derivative, integrate, quadrature_weights, read_csv, write_csv
from .profiles import (
    WaveProfile,
    black_soliton,
    eta_identity_residual,
    first_integral_residual,
    gp_dark_soliton,
    stationary_residual,
    traveling_modulus,
    traveling_phase,
    traveling_wave,
)
from .scalars import (
    CriticalPoints,
    Params,
    f_c,
    f_c_prime,
    find_critical_points,
    g_c,
    h_c,
    log_nonlinearity,
    potential_F,
)

__version__ = "0.1.0"
