"""Uniform DFT/IDFT with the unnormalized-forward convention, plus helpers.

dft and idft wrap numpy's FFT (O(N log N) for any length, including
primes), pinned to the convention forward = sum v_q e^{-2 pi i p q / N}
and inverse = (1/N) sum V_p e^{+2 pi i p q / N}, so dft(idft(v)) = v.
"""

from __future__ import annotations

import numpy as np

from .errors import LengthMismatchError
from .flops import FlopCounter
from .grid import as_complex_vector


def dft(v, flops: FlopCounter | None = None) -> np.ndarray:
    """Unnormalized forward transform: output p = sum_q v_q e^{-2 pi i p q / N}."""
    arr = as_complex_vector(v, name="dft input")
    if flops is not None:
        flops.fft(arr.size)
    return np.fft.fft(arr)


def idft(V, flops: FlopCounter | None = None) -> np.ndarray:
    """Normalized inverse: output q = (1/N) sum_p V_p e^{+2 pi i p q / N}."""
    arr = as_complex_vector(V, name="idft input")
    if flops is not None:
        flops.fft(arr.size)
    return np.fft.ifft(arr)


def hadamard(v, w, flops: FlopCounter | None = None) -> np.ndarray:
    """Element-by-element product of two equal-length vectors."""
    a = as_complex_vector(v, name="hadamard left operand")
    b = as_complex_vector(w, name="hadamard right operand")
    if a.size != b.size:
        raise LengthMismatchError(f"operand lengths differ: {a.size} vs {b.size}")
    if flops is not None:
        flops.complex_mul(a.size)
    return a * b
