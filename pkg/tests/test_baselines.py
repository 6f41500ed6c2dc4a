import numpy as np
import pytest

from nufft1d import (
    DenseSystem,
    SingularMatrixError,
    cg_solve,
    ge_solve,
    generate_trial,
    nfft_type1_direct,
    relative_error,
    type4_system,
    type5_system,
    validate_grid,
)


def randc(n, rng):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def test_ge_scalar_system():
    sys1 = DenseSystem(matrix=np.array([[2.0 + 1j]]), rhs=np.array([4.0 - 2j]))
    x = ge_solve(sys1)
    assert abs(x[0] - (4.0 - 2j) / (2.0 + 1j)) < 1e-15


def test_ge_uniform_grid_is_idft():
    rng = np.random.default_rng(0)
    P = 16
    grid = validate_grid(np.arange(P) / P)
    b = randc(P, rng)
    x = ge_solve(type4_system(grid, b))
    assert relative_error(np.fft.ifft(b), x) < 1e-13


def test_ge_residual():
    rng = np.random.default_rng(1)
    P = 32
    grid, _ = generate_trial(P, 7)
    b = randc(P, rng)
    system = type4_system(grid, b)
    x = ge_solve(system)
    resid = np.linalg.norm(system.matrix @ x - b) / np.linalg.norm(b)
    assert resid < 1e-12


def test_ge_singular_matrix():
    M = np.array([[1.0, 2.0], [0.5, 1.0]], dtype=complex)  # rank one
    with pytest.raises(SingularMatrixError):
        ge_solve(DenseSystem(matrix=M, rhs=np.array([1.0, 1.0], dtype=complex)))


def test_dense_systems_are_hermitian_duals():
    grid, _ = generate_trial(16, 3)
    rng = np.random.default_rng(2)
    data = randc(16, rng)
    m4 = type4_system(grid, data).matrix
    m5 = type5_system(grid, data).matrix
    assert np.abs(m5 - m4.conj().T).max() < 1e-14


def test_ge_solve_duality_relation():
    # inverse of the Hermitian transpose is the Hermitian transpose of the
    # inverse: <solve5(c), b> == <c, solve4(b)>
    rng = np.random.default_rng(3)
    P = 24
    grid, _ = generate_trial(P, 11)
    b, c = randc(P, rng), randc(P, rng)
    x4 = ge_solve(type4_system(grid, b))
    x5 = ge_solve(type5_system(grid, c))
    lhs = np.vdot(x5, b)
    rhs = np.vdot(c, x4)
    assert abs(lhs - rhs) / abs(rhs) < 1e-10


def test_cg_zero_rhs():
    grid, _ = generate_trial(16, 5)
    res = cg_solve(grid, np.zeros(16, dtype=complex))
    assert res.iterations == 0 and res.converged
    assert np.all(res.solution == 0)


def test_cg_uniform_grid_single_iteration():
    rng = np.random.default_rng(4)
    P = 32
    grid = validate_grid(np.arange(P) / P)
    b = randc(P, rng)
    res = cg_solve(grid, b, tol=1e-12)
    assert res.converged and res.iterations == 1
    assert relative_error(np.fft.ifft(b), res.solution) < 1e-12


def test_cg_matches_ge():
    rng = np.random.default_rng(5)
    P = 256
    grid, a_true = generate_trial(P, 17)
    b = nfft_type1_direct(grid, a_true, P)
    x_ge = ge_solve(type4_system(grid, b))
    res = cg_solve(grid, b, "type4", tol=1e-14)
    assert res.converged
    assert relative_error(x_ge, res.solution) < 1e-10
    assert res.iterations > 1


def test_cg_type5_route():
    rng = np.random.default_rng(6)
    P = 64
    grid, _ = generate_trial(P, 19)
    s = randc(P, rng)
    x_ge = ge_solve(type5_system(grid, s))
    res = cg_solve(grid, s, "type5", tol=1e-14)
    assert res.converged
    assert relative_error(x_ge, res.solution) < 1e-10


def test_cg_iteration_cap():
    grid, a_true = generate_trial(128, 23)
    b = nfft_type1_direct(grid, a_true, 128)
    res = cg_solve(grid, b, tol=1e-15, max_iter=2)
    assert not res.converged
    assert res.iterations == 2
    assert np.linalg.norm(res.solution) > 0  # best iterate returned
    assert res.relative_residual > 0


def test_cg_rejects_bad_arguments():
    grid, _ = generate_trial(8, 1)
    with pytest.raises(ValueError):
        cg_solve(grid, np.ones(8), tol=0.0)
    with pytest.raises(ValueError):
        cg_solve(grid, np.ones(8), which="type3")
