"""Node-polynomial (trigonometric Lagrange kernel) quantities.

For nodes t_p the kernel is the degree-P polynomial
L(z) = prod_p (z - e^{2 pi i t_p}) with unit leading coefficient. The
inversion pipeline needs four derived quantities per grid: the log-sum
v(q/P), the damped kernel samples L(e^{2 pi i (q/P + i a)}), the
coefficients L_0..L_{P-1}, and the derivative values L'(e^{2 pi i t_p}).
Everything here is computed through FFT-sized operations; the O(P^2)
brute-force counterparts live in the test suite as oracles.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import AmplificationWarning, KernelOverflowError, SingularDerivativeError
from .flops import FlopCounter
from .forward import nfft_type2, nonuniform_conv
from .grid import MethodParams, NonuniformGrid, as_complex_vector
from .gridding import GriddingKernel, kernel_for_size

# exp(|Re v|) must stay clear of the double-precision overflow threshold
OVERFLOW_MARGIN = 16.0
RE_V_LIMIT = float(np.log(np.finfo(np.float64).max)) - OVERFLOW_MARGIN

DERIVATIVE_FLOOR = 1e-300


@dataclass(frozen=True, eq=False)
class KernelData:
    """Per-grid kernel quantities; immutable and shareable."""

    v_samples: np.ndarray           # v(q/P), length P
    kernel_samples: np.ndarray      # L(e^{2 pi i (q/P + i a)}), length P
    coefficients: np.ndarray        # L_0..L_{P-1}; L_P = 1 implicit
    derivative_samples: np.ndarray  # L'(e^{2 pi i t_p}), length P


def series_coefficients(damping_a: float, R: int, flops: FlopCounter | None = None) -> np.ndarray:
    """Truncated log-kernel series: Lambda_0 = 0, Lambda_p = -e^{-2 pi p a} / p.

    These are the R retained spectral coefficients of log(1 - e^{2 pi i (t + i a)});
    the first neglected one has the ratio mu of the method parameters.
    """
    p = np.arange(1, R)
    lam = np.zeros(R)
    lam[1:] = -np.exp(-2.0 * np.pi * p * damping_a) / p
    if flops is not None:
        flops.complex_exp(R - 1)
        flops.real_mul(R - 1)
    return lam


def compute_v_samples(
    grid: NonuniformGrid,
    params: MethodParams,
    kernel: GriddingKernel | None = None,
    flops: FlopCounter | None = None,
) -> np.ndarray:
    """v(q/P) = sum_p log(1 - e^{2 pi i (q/P - t_p + i a)}), via one nonuniform
    convolution of the truncated series against the node delta train.

    Truncation error is of order mu per node (the tail of the series past
    index eta P - 1).
    """
    P = grid.size
    R = params.eta * P
    if R < 2:
        raise ValueError("need eta * P >= 2 so the truncated series has at least one term")
    lam = series_coefficients(params.damping_a, R, flops=flops)
    ones = np.ones(P, dtype=np.complex128)
    return nonuniform_conv(grid, ones, lam, P, kernel=kernel, flops=flops)


def kernel_samples_from_v(
    v_samples,
    grid: NonuniformGrid,
    flops: FlopCounter | None = None,
) -> np.ndarray:
    """Damped kernel samples L(e^{2 pi i (q/P + i a)}) = exp(i pi P + 2 pi i sum(t) + v)."""
    v = as_complex_vector(v_samples, length=grid.size, name="v samples")
    worst = float(np.abs(v.real).max())
    if worst > RE_V_LIMIT:
        raise KernelOverflowError(
            f"|Re v| reaches {worst:.1f}, beyond the exp() overflow margin "
            f"({RE_V_LIMIT:.1f}); the grid is too strongly clustered for this damping"
        )
    P = grid.size
    const = 1j * np.pi * P + 2j * np.pi * float(np.sum(grid.instants))
    if flops is not None:
        flops.real_add(P)       # instant sum
        flops.complex_add(P)    # constant shift of v
        flops.complex_exp(P)
    return np.exp(const + v)


def kernel_coefficients(
    kernel_samples,
    params: MethodParams,
    flops: FlopCounter | None = None,
) -> np.ndarray:
    """Recover L_0..L_{P-1} from the damped samples.

    DFT of P samples of the degree-P polynomial folds the leading term
    (weight e^{-2 pi P a}) onto bin 0; subtract it exactly there, then undo
    the per-coefficient damping. The undamping factor e^{2 pi (P-1) a} is
    the method's intrinsic roundoff amplifier; warn when it exceeds 1/eps
    and nothing of the high coefficients can survive in double precision.
    """
    ks = as_complex_vector(kernel_samples, name="kernel samples")
    P = ks.size
    a = params.damping_a
    boost_top = 2.0 * np.pi * (P - 1) * a
    if boost_top > -np.log(np.finfo(np.float64).eps):
        warnings.warn(
            f"coefficient undamping e^(2 pi (P-1) a) = e^{boost_top:.1f} exceeds 1/eps; "
            "high kernel coefficients are below roundoff (damping too strong)",
            AmplificationWarning,
            stacklevel=2,
        )
    boost = np.exp(2.0 * np.pi * np.arange(P) * a)
    spectrum = np.fft.fft(ks)
    spectrum[0] -= P * np.exp(-2.0 * np.pi * P * a)
    if flops is not None:
        flops.complex_exp(P)        # boost table
        flops.fft(P)
        flops.complex_exp(1)        # alias weight e^{-2 pi P a}
        flops.real_mul(1 + P)       # alias scale by P, boost/P table
        flops.complex_add(1)
        flops.real_mul(2 * P)       # apply boost/P
    return spectrum * (boost / P)


def derivative_samples(
    coefficients,
    grid: NonuniformGrid,
    kernel: GriddingKernel | None = None,
    flops: FlopCounter | None = None,
) -> np.ndarray:
    """L'(e^{2 pi i t_p}) by evaluating the differentiated coefficients.

    With L_P = 1 known, the derivative's coefficient vector is
    {(k+1) L_{k+1}} for k = 0..P-1, a type-2 transform away from the nodes.
    """
    L = as_complex_vector(coefficients, length=grid.size, name="kernel coefficients")
    P = L.size
    dcoef = np.empty(P, dtype=np.complex128)
    dcoef[: P - 1] = np.arange(1, P) * L[1:]
    dcoef[P - 1] = P  # P * L_P
    if flops is not None:
        flops.real_mul(2 * P)
    if kernel is None:
        kernel = kernel_for_size(P)
    out = nfft_type2(dcoef, grid, kernel=kernel, flops=flops)
    smallest = float(np.abs(out).min())
    if smallest < DERIVATIVE_FLOOR:
        raise SingularDerivativeError(
            f"derivative sample magnitude {smallest:.3e} below {DERIVATIVE_FLOOR:.0e}; "
            "interpolation weights would overflow"
        )
    return out


def build_kernel_data(
    grid: NonuniformGrid,
    params: MethodParams,
    kernel_fine: GriddingKernel | None = None,
    kernel_base: GriddingKernel | None = None,
    flops: FlopCounter | None = None,
) -> KernelData:
    """Compute all four kernel quantities for one grid/parameter pair."""
    v = compute_v_samples(grid, params, kernel=kernel_fine, flops=flops)
    ks = kernel_samples_from_v(v, grid, flops=flops)
    coeffs = kernel_coefficients(ks, params, flops=flops)
    dL = derivative_samples(coeffs, grid, kernel=kernel_base, flops=flops)
    for arr in (v, ks, coeffs, dL):
        arr.setflags(write=False)
    return KernelData(v_samples=v, kernel_samples=ks, coefficients=coeffs, derivative_samples=dL)
