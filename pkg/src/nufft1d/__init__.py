"""nufft1d: 1-D nonuniform FFT with non-iterative inversion.

Forward transforms move between a nonuniform delta train and uniform
spectrum samples (type 1) or a trigonometric polynomial and its values at
arbitrary instants (type 2). The inverse transforms (types 4 and 5) solve
the corresponding square linear systems without iteration, through a
per-grid plan built from the nodes' Lagrange kernel, plus an optional
residual-refinement pass. Dense-elimination and conjugate-gradient
reference solvers, analytic flop accounting, and a Monte-Carlo benchmark
harness round out the package.
"""

__version__ = "0.1.0"

from .baselines import CGResult, DenseSystem, cg_solve, ge_solve, type4_system, type5_system
from .bench import (
    TrialConfig,
    TrialResult,
    generate_trial,
    relative_error,
    run_figure,
    run_sweep,
)
from .errors import (
    AmplificationWarning,
    DuplicateNodeError,
    KernelOverflowError,
    LengthMismatchError,
    NonConvergenceError,
    NonPositiveDampingError,
    NufftError,
    OutOfRangeError,
    SingularDerivativeError,
    SingularMatrixError,
    SizeMismatchError,
    ZeroReferenceError,
)
from .fftops import dft, hadamard, idft
from .flops import FlopCounter, FlopReport, tally
from .forward import (
    nfft_type1,
    nfft_type1_direct,
    nfft_type2,
    nfft_type2_direct,
    nonuniform_conv,
)
from .grid import (
    MethodParams,
    NonuniformGrid,
    as_complex_vector,
    damping_from_mu,
    mu_from_damping,
    validate_grid,
)
from .gridding import GriddingKernel, kernel_for_size
from .inverse import InversePlan, build_plan, refine_type4, refine_type5, type4, type5
from .lagrange import (
    KernelData,
    compute_v_samples,
    derivative_samples,
    kernel_coefficients,
    kernel_samples_from_v,
)

__all__ = [
    "AmplificationWarning",
    "CGResult",
    "DenseSystem",
    "DuplicateNodeError",
    "FlopCounter",
    "FlopReport",
    "GriddingKernel",
    "InversePlan",
    "KernelData",
    "KernelOverflowError",
    "LengthMismatchError",
    "MethodParams",
    "NonConvergenceError",
    "NonPositiveDampingError",
    "NonuniformGrid",
    "NufftError",
    "OutOfRangeError",
    "SingularDerivativeError",
    "SingularMatrixError",
    "SizeMismatchError",
    "TrialConfig",
    "TrialResult",
    "ZeroReferenceError",
    "as_complex_vector",
    "build_plan",
    "cg_solve",
    "compute_v_samples",
    "damping_from_mu",
    "derivative_samples",
    "dft",
    "generate_trial",
    "ge_solve",
    "hadamard",
    "idft",
    "kernel_coefficients",
    "kernel_for_size",
    "kernel_samples_from_v",
    "mu_from_damping",
    "nfft_type1",
    "nfft_type1_direct",
    "nfft_type2",
    "nfft_type2_direct",
    "nonuniform_conv",
    "refine_type4",
    "refine_type5",
    "relative_error",
    "run_figure",
    "run_sweep",
    "tally",
    "type4",
    "type4_system",
    "type5",
    "type5_system",
    "validate_grid",
]
