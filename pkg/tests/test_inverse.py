import numpy as np
import pytest

from nufft1d import (
    FlopCounter,
    MethodParams,
    NonConvergenceError,
    build_plan,
    ge_solve,
    generate_trial,
    nfft_type1_direct,
    nfft_type2_direct,
    refine_type4,
    refine_type5,
    relative_error,
    type4,
    type4_system,
    type5,
    type5_system,
    validate_grid,
)


def jittered(P, rng, jitter=0.6):
    return validate_grid(np.arange(P) / P + rng.uniform(0, jitter / P, P))


def randc(n, rng):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def std_params(P, mu=1e-11, eta=2, **kw):
    return MethodParams.from_mu(mu, P, eta, **kw)


# --- plan construction --------------------------------------------------------

def test_plan_uniform_closed_forms():
    P = 16
    grid = validate_grid(np.arange(P) / P)
    params = MethodParams.from_mu(1e-14, P, eta=6)
    plan = build_plan(grid, params)
    a = params.damping_a
    p = np.arange(P)
    h = 1.0 / (np.exp(-2 * np.pi * P * a) - 1.0)  # e^{-2 pi i P p/P} = 1
    expected = h / (P * np.exp(-2j * np.pi * p / P) * np.exp(2j * np.pi * p / P))
    assert relative_error(expected, plan.node_weights) < 1e-11
    decay = np.exp(-2 * np.pi * p * a)
    assert relative_error(decay, plan.h1_coefficients) < 1e-14
    assert np.all(np.diff(plan.h1_coefficients) < 0) and np.all(plan.h1_coefficients > 0)


def test_plan_rebuild_deterministic():
    rng = np.random.default_rng(0)
    grid = jittered(32, rng)
    params = std_params(32)
    p1 = build_plan(grid, params)
    p2 = build_plan(grid, params)
    assert np.array_equal(p1.node_weights, p2.node_weights)
    assert np.array_equal(p1.kernel_data.kernel_samples, p2.kernel_data.kernel_samples)
    assert np.array_equal(p1.kernel_data.derivative_samples, p2.kernel_data.derivative_samples)


def test_plan_fields_match_small_scale_oracles():
    rng = np.random.default_rng(1)
    P = 8
    grid = jittered(P, rng)
    params = std_params(P)
    plan = build_plan(grid, params)
    a = params.damping_a
    z = np.exp(2j * np.pi * grid.instants)
    dL = np.array([np.prod(z[j] - np.delete(z, j)) for j in range(P)])
    h = 1.0 / (np.exp(-2j * np.pi * P * grid.instants) * np.exp(-2 * np.pi * P * a) - 1.0)
    expected = h / (dL * z)
    assert relative_error(expected, plan.node_weights) < 1e-9
    assert np.all(np.isfinite(plan.node_weights)) and np.all(plan.node_weights != 0)


# --- type 5 ---------------------------------------------------------------------

def test_type5_constant_samples():
    rng = np.random.default_rng(2)
    P = 16
    grid = jittered(P, rng)
    plan = build_plan(grid, std_params(P))
    c = 1.5 - 0.5j
    S = type5(plan, np.full(P, c))
    expected = np.zeros(P, dtype=complex)
    expected[0] = c
    assert np.abs(S - expected).max() < 1e-9


def test_type5_uniform_grid_is_scaled_dft():
    rng = np.random.default_rng(3)
    P = 16
    grid = validate_grid(np.arange(P) / P)
    plan = build_plan(grid, MethodParams.from_mu(1e-14, P, eta=6))
    s = randc(P, rng)
    assert relative_error(np.fft.fft(s) / P, type5(plan, s)) < 1e-12


def test_type5_against_dense_solve():
    rng = np.random.default_rng(4)
    P = 8
    grid = jittered(P, rng)
    plan = build_plan(grid, std_params(P))
    s = randc(P, rng)
    want = ge_solve(type5_system(grid, s))
    assert relative_error(want, type5(plan, s)) < 1e-10


# --- type 4 ---------------------------------------------------------------------

def test_type4_impulse_consistency():
    rng = np.random.default_rng(5)
    P = 16
    grid = jittered(P, rng)
    plan = build_plan(grid, std_params(P))
    a_true = np.zeros(P, dtype=complex)
    a_true[3] = 1.0
    spectrum = np.exp(-2j * np.pi * np.arange(P) * grid.instants[3])
    got = type4(plan, spectrum)
    assert np.abs(got - a_true).max() < 1e-9


def test_type4_uniform_grid_is_idft():
    rng = np.random.default_rng(6)
    P = 16
    grid = validate_grid(np.arange(P) / P)
    plan = build_plan(grid, MethodParams.from_mu(1e-14, P, eta=6))
    A = randc(P, rng)
    assert relative_error(np.fft.ifft(A), type4(plan, A)) < 1e-12


def test_type4_against_dense_solve():
    rng = np.random.default_rng(7)
    P = 8
    grid = jittered(P, rng)
    plan = build_plan(grid, std_params(P))
    A = randc(P, rng)
    want = ge_solve(type4_system(grid, A))
    assert relative_error(want, type4(plan, A)) < 1e-10


# --- invariants -----------------------------------------------------------------

def test_round_trip_residuals():
    rng = np.random.default_rng(8)
    P = 64
    grid = jittered(P, rng)
    plan = build_plan(grid, std_params(P))
    s = randc(P, rng)
    S = type5(plan, s)
    assert relative_error(s, nfft_type2_direct(S, grid)) < 1e-9
    A = randc(P, rng)
    x = type4(plan, A)
    assert relative_error(A, nfft_type1_direct(grid, x, P)) < 1e-9


def test_linearity():
    rng = np.random.default_rng(9)
    P = 32
    grid = jittered(P, rng)
    plan = build_plan(grid, std_params(P))
    x, y = randc(P, rng), randc(P, rng)
    alpha, beta = 1.5 - 2j, -0.25 + 1j
    lhs = type4(plan, alpha * x + beta * y)
    rhs = alpha * type4(plan, x) + beta * type4(plan, y)
    assert relative_error(rhs, lhs) < 1e-12
    lhs = type5(plan, alpha * x + beta * y)
    rhs = alpha * type5(plan, x) + beta * type5(plan, y)
    assert relative_error(rhs, lhs) < 1e-12


def test_plan_reuse_bitwise():
    rng = np.random.default_rng(10)
    P = 32
    grid = jittered(P, rng)
    params = std_params(P)
    plan = build_plan(grid, params)
    s1, s2 = randc(P, rng), randc(P, rng)
    out1, out2 = type5(plan, s1), type5(plan, s2)
    fresh1 = type5(build_plan(grid, params), s1)
    fresh2 = type5(build_plan(grid, params), s2)
    assert np.array_equal(out1, fresh1)
    assert np.array_equal(out2, fresh2)


def test_flop_duality():
    rng = np.random.default_rng(11)
    P = 64
    grid = jittered(P, rng)
    plan = build_plan(grid, std_params(P))
    c4, c5 = FlopCounter(), FlopCounter()
    type4(plan, randc(P, rng), flops=c4)
    type5(plan, randc(P, rng), flops=c5)
    assert c4.report() == c5.report()
    # refined solves stay duals as well
    c4r, c5r = FlopCounter(), FlopCounter()
    refine_type4(plan, randc(P, rng), passes=1, flops=c4r)
    refine_type5(plan, randc(P, rng), passes=1, flops=c5r)
    assert c4r.report() == c5r.report()


# --- refinement -----------------------------------------------------------------

def test_refine_zero_passes_is_plain():
    rng = np.random.default_rng(12)
    P = 32
    grid = jittered(P, rng)
    plan = build_plan(grid, std_params(P))
    A = randc(P, rng)
    assert np.array_equal(refine_type4(plan, A, passes=0), type4(plan, A))
    s = randc(P, rng)
    assert np.array_equal(refine_type5(plan, s, passes=0), type5(plan, s))


def test_refine_type4_contracts_error_exponent():
    P = 256
    params = MethodParams.from_mu(1e-6, P, eta=1)
    wins = 0
    for trial in range(4):
        grid, a_true = generate_trial(P, 100 + trial)
        spectrum = nfft_type1_direct(grid, a_true, P)
        plan = build_plan(grid, params)
        e_plain = relative_error(a_true, type4(plan, spectrum))
        e_ref = relative_error(a_true, refine_type4(plan, spectrum, passes=1))
        if np.log10(e_ref) <= 1.5 * np.log10(e_plain):
            wins += 1
    assert wins >= 3


def test_refine_type5_residual_shrinks_every_trial():
    P = 256
    params = MethodParams.from_mu(1e-6, P, eta=1)
    for trial in range(10):
        grid, S_true = generate_trial(P, 200 + trial)
        samples = nfft_type2_direct(S_true, grid)
        plan = build_plan(grid, params)
        r0 = relative_error(samples, nfft_type2_direct(type5(plan, samples), grid))
        x1 = refine_type5(plan, samples, passes=1)
        r1 = relative_error(samples, nfft_type2_direct(x1, grid))
        assert r1 < r0


def test_refine_default_passes_from_params():
    rng = np.random.default_rng(13)
    P = 64
    grid = jittered(P, rng)
    plan = build_plan(grid, std_params(P, refine_passes=1))
    A = randc(P, rng)
    assert np.array_equal(refine_type4(plan, A), refine_type4(plan, A, passes=1))


def test_nonconvergence_detection():
    # truncation ratio near 1: plain error far above one, residual grows
    P = 64
    grid, _ = generate_trial(P, 42)
    params = MethodParams.from_mu(1e-2, P, eta=1)
    plan = build_plan(grid, params)
    rng = np.random.default_rng(14)
    A = randc(P, rng)
    with pytest.raises(NonConvergenceError):
        refine_type4(plan, A, passes=4)


def test_concurrent_solves_share_one_plan():
    from concurrent.futures import ThreadPoolExecutor

    rng = np.random.default_rng(15)
    P = 128
    grid = jittered(P, rng)
    plan = build_plan(grid, std_params(P))
    inputs = [randc(P, rng) for _ in range(8)]
    serial = [type4(plan, x) for x in inputs]
    with ThreadPoolExecutor(max_workers=4) as pool:
        threaded = list(pool.map(lambda x: type4(plan, x), inputs))
    for s, t in zip(serial, threaded):
        assert np.array_equal(s, t)
