"""Two-qubit metrology in a correlated squeezed-thermal reservoir.

Evolves a two-qubit entangled probe through independent and collective
squeezed-reservoir channels, computes the quantum Fisher information
matrix over the encoded phase and the channel correlation factor, and
locates the squeezing phases that optimize estimation precision.
"""

__version__ = "0.1.0"

from .core import (
    PhysicalConfig,
    ReservoirDerived,
    analytic_partials,
    analytic_state,
    derive_reservoir,
    initial_state,
)
from .errors import AllInvalidGridError, NumericError, SingularQfimError
from .lindblad import (
    KERNEL_BACKEND,
    IntegratorSettings,
    integrate,
    rhs_correlated,
    rhs_uncorrelated,
)
from .metrics import EstimationMetrics, improvements, variance_bounds
from .qfi import (
    Qfim2,
    SpectralDecomposition,
    closed_form_f_mu,
    closed_form_f_muphi,
    closed_form_f_phi,
    eig_hermitian_4x4,
    g_terms,
    qfim,
    qfim_generic,
)
from .scan import (
    AxisSpec,
    ScanResult,
    ScanSpec,
    Table1Report,
    predicted_phase,
    scan,
    verify_table1,
)

__all__ = [
    "__version__",
    "AllInvalidGridError",
    "AxisSpec",
    "EstimationMetrics",
    "IntegratorSettings",
    "KERNEL_BACKEND",
    "NumericError",
    "PhysicalConfig",
    "Qfim2",
    "ReservoirDerived",
    "ScanResult",
    "ScanSpec",
    "SingularQfimError",
    "SpectralDecomposition",
    "Table1Report",
    "analytic_partials",
    "analytic_state",
    "closed_form_f_mu",
    "closed_form_f_muphi",
    "closed_form_f_phi",
    "derive_reservoir",
    "eig_hermitian_4x4",
    "g_terms",
    "improvements",
    "initial_state",
    "integrate",
    "predicted_phase",
    "qfim",
    "qfim_generic",
    "rhs_correlated",
    "rhs_uncorrelated",
    "scan",
    "variance_bounds",
    "verify_table1",
]
