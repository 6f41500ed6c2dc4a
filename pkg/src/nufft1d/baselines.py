"""Reference solvers: dense Gaussian elimination and conjugate gradient.

Both invert the same square systems the fast inverse transforms solve.
GE is a hand-rolled right-looking LU with partial pivoting, vectorized
over the trailing block so desk-scale problems stay fast while the flop
counters track the textbook operation counts. CG runs on the normal
equations with matrix-vector products supplied by one type-2 plus one
type-1 fast transform per iteration.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingularMatrixError
from .flops import FlopCounter
from .forward import nfft_type1, nfft_type2
from .grid import NonuniformGrid, as_complex_vector
from .gridding import cis_cycles, kernel_for_size

PIVOT_FLOOR = 1e-300
_BLOCK = 256


@dataclass(frozen=True, eq=False)
class DenseSystem:
    """One dense P x P system; the type-4 and type-5 matrices for a grid
    are Hermitian transposes of each other."""

    matrix: np.ndarray
    rhs: np.ndarray


def _phase_matrix(grid: NonuniformGrid, sign: int, flops: FlopCounter | None) -> np.ndarray:
    """Entries e^{sign * 2 pi i p t_q}, rows p, columns q; built blockwise."""
    P = grid.size
    t = np.asarray(grid.instants, dtype=np.longdouble)
    M = np.empty((P, P), dtype=np.complex128)
    for lo in range(0, P, _BLOCK):
        hi = min(lo + _BLOCK, P)
        p = np.arange(lo, hi, dtype=np.longdouble)
        M[lo:hi] = cis_cycles(sign * np.outer(p, t))
    if flops is not None:
        flops.real_mul(P * P)       # phase products p * t
        flops.complex_exp(P * P)
    return M


def type4_system(grid: NonuniformGrid, spectrum, flops: FlopCounter | None = None) -> DenseSystem:
    """System whose solution is the delta-train amplitudes."""
    rhs = as_complex_vector(spectrum, length=grid.size, name="spectrum")
    return DenseSystem(matrix=_phase_matrix(grid, -1, flops), rhs=rhs)


def type5_system(grid: NonuniformGrid, samples, flops: FlopCounter | None = None) -> DenseSystem:
    """System whose solution is the polynomial coefficients."""
    rhs = as_complex_vector(samples, length=grid.size, name="samples")
    return DenseSystem(matrix=_phase_matrix(grid, +1, flops).T.copy(), rhs=rhs)


def ge_solve(system: DenseSystem, flops: FlopCounter | None = None) -> np.ndarray:
    """Gaussian elimination with partial pivoting.

    Raises SingularMatrixError when a pivot magnitude falls below 1e-300.
    """
    A = np.array(system.matrix, dtype=np.complex128)
    b = np.array(system.rhs, dtype=np.complex128)
    n = A.shape[0]
    if A.shape != (n, n) or b.shape != (n,):
        raise ValueError("system must be square with a matching right-hand side")
    for k in range(n - 1):
        piv = k + int(np.argmax(np.abs(A[k:, k])))
        if abs(A[piv, k]) < PIVOT_FLOOR:
            raise SingularMatrixError(f"pivot {abs(A[piv, k]):.3e} below {PIVOT_FLOOR:.0e}")
        if piv != k:
            A[[k, piv]] = A[[piv, k]]
            b[[k, piv]] = b[[piv, k]]
        mult = A[k + 1:, k] / A[k, k]
        A[k + 1:, k + 1:] -= np.outer(mult, A[k, k + 1:])
        b[k + 1:] -= mult * b[k]
        if flops is not None:
            r = n - 1 - k
            flops.complex_div(r)
            flops.complex_mul(r * r + r)
            flops.complex_add(r * r + r)
    if abs(A[n - 1, n - 1]) < PIVOT_FLOOR:
        raise SingularMatrixError("matrix is numerically singular")
    x = np.zeros(n, dtype=np.complex128)
    for i in range(n - 1, -1, -1):
        x[i] = (b[i] - A[i, i + 1:] @ x[i + 1:]) / A[i, i]
        if flops is not None:
            flops.complex_mul(n - 1 - i)
            flops.complex_add(n - 1 - i)
            flops.complex_div(1)
    return x


@dataclass(frozen=True, eq=False)
class CGResult:
    solution: np.ndarray
    iterations: int
    converged: bool
    relative_residual: float


def cg_solve(
    grid: NonuniformGrid,
    rhs,
    which: str = "type4",
    tol: float = 1e-15,
    max_iter: int | None = None,
    spread_width: int | None = None,
    flops: FlopCounter | None = None,
) -> CGResult:
    """Conjugate gradient on the normal equations (CGNR), unpreconditioned.

    Each iteration applies the system matrix and its Hermitian transpose,
    one type-1 and one type-2 fast transform, so the per-iteration cost is
    FFT-order. Stops at relative recurred residual <= tol or at max_iter
    (default 4P), returning the best iterate with a convergence flag.
    """
    if tol <= 0.0:
        raise ValueError("tolerance must be positive")
    if which not in ("type4", "type5"):
        raise ValueError(f"unknown system kind {which!r}")
    b = as_complex_vector(rhs, length=grid.size, name="rhs")
    P = grid.size
    kernel = kernel_for_size(P, spread_width) if spread_width else kernel_for_size(P)
    if max_iter is None:
        max_iter = 4 * P

    if which == "type4":
        apply_A = lambda x: nfft_type1(grid, x, P, kernel=kernel, flops=flops)
        apply_AH = lambda y: nfft_type2(y, grid, kernel=kernel, flops=flops)
    else:
        apply_A = lambda x: nfft_type2(x, grid, kernel=kernel, flops=flops)
        apply_AH = lambda y: nfft_type1(grid, y, P, kernel=kernel, flops=flops)

    bnorm = float(np.linalg.norm(b))
    if bnorm == 0.0:
        return CGResult(np.zeros(P, dtype=np.complex128), 0, True, 0.0)

    x = np.zeros(P, dtype=np.complex128)
    r = b.copy()
    z = apply_AH(r)
    p = z.copy()
    zz = float(np.vdot(z, z).real)
    if flops is not None:
        flops.real_mul(2 * P)
        flops.real_add(2 * P)
    rnorm = bnorm
    iterations = 0
    for iterations in range(1, max_iter + 1):
        w = apply_A(p)
        ww = float(np.vdot(w, w).real)
        if ww == 0.0:
            iterations -= 1
            break
        alpha = zz / ww
        x = x + alpha * p
        r = r - alpha * w
        if flops is not None:
            flops.real_mul(2 * P + 1)   # |w|^2 and the division
            flops.real_add(2 * P)
            flops.real_mul(4 * P)       # two real-scalar axpys
            flops.complex_add(2 * P)
        rnorm = float(np.linalg.norm(r))
        if rnorm <= tol * bnorm:
            return CGResult(x, iterations, True, rnorm / bnorm)
        z = apply_AH(r)
        zz_new = float(np.vdot(z, z).real)
        p = z + (zz_new / zz) * p
        zz = zz_new
        if flops is not None:
            flops.real_mul(2 * P + 1)
            flops.real_add(2 * P)
            flops.real_mul(2 * P)
            flops.complex_add(P)
    return CGResult(x, iterations, rnorm <= tol * bnorm, rnorm / bnorm)
