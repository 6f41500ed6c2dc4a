"""Forward nonuniform transforms (types 1 and 2) and nonuniform convolution.

The fast paths use Gaussian gridding with oversampling factor two; the
_direct variants are exact O(PQ) summations kept as oracles for tests and
residual checks. Both transform families are linear and are exact
Hermitian transposes of one another.
"""

from __future__ import annotations

import numpy as np

from .errors import SizeMismatchError
from .flops import FlopCounter
from .grid import NonuniformGrid, as_complex_vector
from .gridding import GriddingKernel, cis_cycles, kernel_for_size

_DIRECT_BLOCK = 256


def _idft_unnormalized(V: np.ndarray) -> np.ndarray:
    """sum_p V_p e^{+2 pi i p q / N} without the 1/N factor (single FFT)."""
    return np.conj(np.fft.fft(np.conj(V)))


def nfft_type1(
    grid: NonuniformGrid,
    amplitudes,
    R: int,
    kernel: GriddingKernel | None = None,
    flops: FlopCounter | None = None,
) -> np.ndarray:
    """Spectrum samples A(p) = sum_q a_q e^{-2 pi i p t_q} for p = 0..R-1.

    O(R log R + Q) via gridding; relative l2 error is at the kernel's
    accuracy target (~5e-15 at the default spread width).
    """
    if R < 1:
        raise ValueError(f"output length must be >= 1, got {R}")
    a = as_complex_vector(amplitudes, length=grid.size, name="amplitudes")
    if kernel is None:
        kernel = kernel_for_size(R)
    elif kernel.size != R:
        raise SizeMismatchError(f"kernel built for size {kernel.size}, transform needs {R}")
    t = grid.instants
    Q = t.size
    amod = a * cis_cycles(-kernel.band_shift * np.asarray(t, dtype=np.longdouble))
    idx, dist = kernel.spread_geometry(t)
    w = kernel.weights(dist)
    src = (amod[:, None] * w).ravel()
    flat = idx.ravel()
    n = kernel.fine_size
    H = np.bincount(flat, weights=src.real, minlength=n) \
        + 1j * np.bincount(flat, weights=src.imag, minlength=n)
    spectrum = np.fft.fft(H)
    if flops is not None:
        flops.complex_exp(Q)            # band-shift modulation phases
        flops.complex_mul(Q)
        flops.complex_exp(Q * kernel.taps)   # pulse evaluations
        flops.real_mul(2 * Q * kernel.taps)  # amplitude * real weight
        flops.complex_add(Q * kernel.taps)   # scatter accumulation
        flops.fft(n)
        flops.real_mul(2 * R)           # deconvolution
    return spectrum[kernel.bins] * kernel.deconv


def nfft_type2(
    coefficients,
    grid: NonuniformGrid,
    kernel: GriddingKernel | None = None,
    flops: FlopCounter | None = None,
) -> np.ndarray:
    """Polynomial values s(t_q) = sum_p S_p e^{+2 pi i p t_q} at the grid.

    Implemented as the exact Hermitian transpose of nfft_type1: deconvolve
    on the coefficient side, one unnormalized inverse FFT, then a windowed
    gather at each instant.
    """
    S = as_complex_vector(coefficients, name="coefficients")
    P = S.size
    if kernel is None:
        kernel = kernel_for_size(P)
    elif kernel.size != P:
        raise SizeMismatchError(f"kernel built for size {kernel.size}, transform needs {P}")
    t = grid.instants
    Q = t.size
    n = kernel.fine_size
    F = np.zeros(n, dtype=np.complex128)
    F[kernel.bins] = S * kernel.deconv
    y = _idft_unnormalized(F)
    idx, dist = kernel.spread_geometry(t)
    w = kernel.weights(dist)
    out = np.einsum("qj,qj->q", w, y[idx])
    if flops is not None:
        flops.real_mul(2 * P)           # deconvolution
        flops.fft(n)
        flops.complex_exp(Q * kernel.taps)
        flops.real_mul(2 * Q * kernel.taps)
        flops.complex_add(Q * kernel.taps)
        flops.complex_exp(Q)
        flops.complex_mul(Q)
    return out * cis_cycles(kernel.band_shift * np.asarray(t, dtype=np.longdouble))


def nfft_type1_direct(grid: NonuniformGrid, amplitudes, R: int) -> np.ndarray:
    """Exact summation of the type-1 transform; O(RQ), oracle quality.

    Phases are reduced mod 1 in extended precision so the oracle stays a
    digit or two more accurate than the fast path it checks.
    """
    a = as_complex_vector(amplitudes, length=grid.size, name="amplitudes")
    t = np.asarray(grid.instants, dtype=np.longdouble)
    out = np.empty(R, dtype=np.complex128)
    for lo in range(0, R, _DIRECT_BLOCK):
        hi = min(lo + _DIRECT_BLOCK, R)
        p = np.arange(lo, hi, dtype=np.longdouble)
        out[lo:hi] = cis_cycles(-np.outer(p, t)) @ a
    return out


def nfft_type2_direct(coefficients, grid: NonuniformGrid) -> np.ndarray:
    """Exact summation of the type-2 transform; O(PQ), oracle quality."""
    S = as_complex_vector(coefficients, name="coefficients")
    p = np.arange(S.size, dtype=np.longdouble)
    t = np.asarray(grid.instants, dtype=np.longdouble)
    out = np.empty(t.size, dtype=np.complex128)
    for lo in range(0, t.size, _DIRECT_BLOCK):
        hi = min(lo + _DIRECT_BLOCK, t.size)
        out[lo:hi] = cis_cycles(np.outer(t[lo:hi], p)) @ S
    return out


def nonuniform_conv(
    grid: NonuniformGrid,
    amplitudes,
    lam_coefficients,
    P: int,
    kernel: GriddingKernel | None = None,
    flops: FlopCounter | None = None,
) -> np.ndarray:
    """Samples of gamma(t) = sum_q a_q lam(t - t_q) on the regular grid {q/P}.

    ``lam_coefficients`` holds the R spectral coefficients of the kernel
    polynomial, R an integer multiple of P. One type-1 transform of length
    R, an aliasing fold down to length P, and one unnormalized inverse FFT.
    """
    lam = np.asarray(lam_coefficients)
    R = lam.size
    if R % P != 0:
        raise SizeMismatchError(f"kernel length {R} is not a multiple of output length {P}")
    eta = R // P
    A = nfft_type1(grid, amplitudes, R, kernel=kernel, flops=flops)
    prod = lam * A
    folded = prod.reshape(eta, P).sum(axis=0) if eta > 1 else prod
    if flops is not None:
        if np.isrealobj(lam):
            flops.real_mul(2 * R)
        else:
            flops.complex_mul(R)
        flops.complex_add((eta - 1) * P)
        flops.fft(P)
    return _idft_unnormalized(folded.astype(np.complex128, copy=False))
