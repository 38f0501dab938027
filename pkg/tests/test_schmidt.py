import numpy as np
import pytest

from conftest import synthetic_decomposition
from tpaopt import (
    LevelSystem,
    asymmetric_decomposition,
    asymptotic_bounds,
    decompose,
    entropy,
    make_grid,
    optimal_separable,
    optimal_state_kernel,
    pairing_check,
    quadrature_weights,
    quantum_enhancement,
    reconstruct,
    sample_kernel,
)


def small_kernel(delta=2.0, dev=-1.0, half=60.0, step=0.25):
    sys = LevelSystem(delta_detuning=delta, delta_deviation=dev)
    grid = make_grid(sys.omega_f / 2.0, half, step)
    return sys, optimal_state_kernel(sys, grid)


def test_rank_one_kernel_single_coefficient():
    g = make_grid(0.0, 10.0, 0.1)
    k = sample_kernel(lambda a, b: np.exp(-(a**2)) / (b**2 + 1.0) + 0j, g)
    d = decompose(k)
    assert d.coefficients[1] <= 1e-12 * d.coefficients[0]


def test_entropy_trivial_spectra():
    assert entropy(synthetic_decomposition([1.0])) == 0.0
    two = synthetic_decomposition([1 / np.sqrt(2), 1 / np.sqrt(2)])
    assert entropy(two) == pytest.approx(1.0, abs=1e-14)
    with_zero = synthetic_decomposition([1.0, 0.0, 0.0])
    assert entropy(with_zero) == 0.0


def test_enhancement_trivial_spectra():
    two = synthetic_decomposition([1 / np.sqrt(2), 1 / np.sqrt(2)])
    assert quantum_enhancement(two) == pytest.approx(2.0, rel=1e-14)
    with pytest.raises(ValueError):
        quantum_enhancement(synthetic_decomposition([0.0]))


def test_requires_weight_embedded_kernel():
    g = make_grid(0.0, 5.0, 0.5)
    k = sample_kernel(lambda a, b: a * b + 0j, g, embed_weights=False)
    with pytest.raises(ValueError):
        decompose(k)


def test_rank_clipping_warns():
    g = make_grid(0.0, 2.0, 0.5)
    k = sample_kernel(lambda a, b: 1.0 / (a + b + 2j), g)
    with pytest.warns(RuntimeWarning):
        d = decompose(k, rank=99)
    assert d.truncation_rank == k.grid1.count


def test_modes_orthonormal_under_quadrature():
    _, k = small_kernel()
    d = decompose(k, rank=6)
    w = quadrature_weights(d.grid1)
    gram = np.einsum("kn,n,ln->kl", np.conj(d.modes_1), w, d.modes_1)
    assert np.max(np.abs(gram - np.eye(6))) < 1e-8
    gram2 = np.einsum("kn,n,ln->kl", np.conj(d.modes_2), w, d.modes_2)
    assert np.max(np.abs(gram2 - np.eye(6))) < 1e-8


def test_phase_convention_deterministic():
    _, k = small_kernel()
    d1 = decompose(k, rank=4)
    d2 = decompose(k, rank=4)
    np.testing.assert_array_equal(d1.modes_1, d2.modes_1)
    for k_idx in range(4):
        m = np.argmax(np.abs(d1.modes_1[k_idx]))
        lead = d1.modes_1[k_idx][m]
        assert abs(lead.imag) <= 1e-12 * abs(lead)
        assert lead.real > 0


def test_full_rank_reconstruction():
    _, k = small_kernel(half=30.0, step=0.5)
    d = decompose(k)
    rec = reconstruct(d)
    err = np.linalg.norm(rec - k.entries) / np.linalg.norm(k.entries)
    assert err < 1e-6
    assert d.residual <= 1e-10


def test_truncation_residual_and_soundness():
    _, k = small_kernel(half=30.0, step=0.5)
    full = decompose(k)
    total = np.sum(full.coefficients**2)
    r1_values = []
    for m in (2, 4, 8):
        dm = decompose(k, rank=m)
        assert np.sum(dm.coefficients**2) <= total + 1e-12
        assert dm.residual == pytest.approx(
            np.sqrt(total - np.sum(dm.coefficients**2)), abs=1e-9)
        r1_values.append(dm.coefficients[0])
    assert np.all(np.diff(r1_values) >= -1e-10)
    np.testing.assert_allclose(r1_values, full.coefficients[0], rtol=1e-9)


def test_spectrum_invariant_under_transpose():
    from tpaopt import KernelMatrix

    _, k = small_kernel(half=30.0, step=0.5)
    kt = KernelMatrix(k.grid2, k.grid1, np.ascontiguousarray(k.entries.T), True)
    s = decompose(k, rank=12).coefficients
    st = decompose(kt, rank=12).coefficients
    np.testing.assert_allclose(s, st, atol=1e-10)


def test_renormalization_sums_to_one():
    _, k = small_kernel()
    d = decompose(k, rank=8, renormalize=True)
    assert abs(np.sum(d.coefficients**2) - 1.0) < 1e-12


def test_separable_point_is_rank_one():
    sys = LevelSystem()  # Delta = delta = 0: kernel factorizes exactly
    grid = make_grid(0.0, 50.0, 0.25)
    d = decompose(optimal_state_kernel(sys, grid), rank=4, renormalize=True)
    assert d.coefficients[0] ** 2 >= 0.999
    assert entropy(d) <= 0.02
    assert quantum_enhancement(d) <= 1.01


def test_optimal_separable_overlap_and_normalization():
    sys, k = small_kernel()
    d = decompose(k, rank=4)
    m1, m2 = optimal_separable(d)
    w = quadrature_weights(d.grid1)
    assert np.sum(w * np.abs(m1) ** 2) == pytest.approx(1.0, abs=1e-8)
    assert np.sum(w * np.abs(m2) ** 2) == pytest.approx(1.0, abs=1e-8)
    # overlap with the full amplitude equals the leading coefficient
    phi = k.entries / np.sqrt(np.outer(w, w))
    sep = np.outer(m1, m2)
    overlap = np.sum(np.outer(w, w) * np.conj(sep) * phi)
    assert abs(overlap) ** 2 == pytest.approx(d.coefficients[0] ** 2, abs=1e-8)


def test_optimal_separable_matches_state_when_separable():
    sys = LevelSystem()
    grid = make_grid(0.0, 50.0, 0.25)
    k = optimal_state_kernel(sys, grid)
    d = decompose(k, rank=2, renormalize=True)
    m1, m2 = optimal_separable(d)
    w = quadrature_weights(grid)
    phi = k.entries / np.sqrt(np.outer(w, w))
    sep = np.outer(m1, m2)
    norm_phi = np.sum(np.outer(w, w) * np.abs(phi) ** 2)
    overlap = np.abs(np.sum(np.outer(w, w) * np.conj(sep) * phi)) ** 2 / norm_phi
    assert overlap >= 0.999


def test_fig3_anchor_coarse():
    # squared coefficients on the half-resolution validation grid
    sys = LevelSystem(delta_detuning=100.0, delta_deviation=-1.5)
    grid = make_grid(0.0, 500.0, 0.5)
    d = decompose(optimal_state_kernel(sys, grid), rank=8)
    lam = d.coefficients**2
    assert lam[0] == pytest.approx(0.272557, abs=2e-3)
    assert lam[1] == pytest.approx(0.272348, abs=2e-3)


def test_pairing_gap_fig3_scale():
    sys = LevelSystem(delta_detuning=100.0, delta_deviation=-1.5)
    grid = make_grid(0.0, 500.0, 0.5)
    d = decompose(optimal_state_kernel(sys, grid), rank=8)
    r = d.coefficients
    assert (r[0] - r[1]) / r[0] < 1e-3  # leading near-degenerate pair
    assert pairing_check(d) < 5e-3      # all retained pairs stay close


def test_pairing_gap_informational_at_zero_detuning():
    # no pairing claim at small detuning; the operation still reports a gap
    sys = LevelSystem()
    grid = make_grid(0.0, 50.0, 0.25)
    d = decompose(optimal_state_kernel(sys, grid), rank=4)
    gap = pairing_check(d)
    assert 0.0 <= gap <= 1.0  # near 1: the kernel is essentially rank one


def test_pairing_check_synthetic():
    exact = synthetic_decomposition(np.repeat([0.6, 0.3], 2))
    assert pairing_check(exact) == 0.0
    odd = synthetic_decomposition([0.8, 0.5, 0.33])  # trailing value has no partner
    assert pairing_check(odd) == pytest.approx((0.8 - 0.5) / 0.8)
    assert pairing_check(synthetic_decomposition([0.9])) == 0.0


def test_pairing_entropy_identity_exact():
    s = np.array([0.7, 0.5, np.sqrt(1 - 0.49 - 0.25)])
    paired = np.repeat(s / np.sqrt(2.0), 2)
    s_sym = entropy(synthetic_decomposition(paired))
    s_asym = entropy(synthetic_decomposition(s))
    assert abs(s_sym - (1.0 + s_asym)) < 1e-12


def test_asymptotic_bounds_independent_of_detuning():
    grid = make_grid(0.0, 80.0, 0.25)
    a = asymptotic_bounds(LevelSystem(delta_detuning=100.0, delta_deviation=-1.5), grid, rank=40)
    b = asymptotic_bounds(LevelSystem(delta_detuning=37.0, delta_deviation=-1.5), grid, rank=40)
    assert abs(a[0] - b[0]) < 1e-6
    assert abs(a[1] - b[1]) < 1e-6


def test_asymmetric_decomposition_grids_follow_lines():
    sys = LevelSystem(delta_detuning=40.0, delta_deviation=-1.5)
    grid = make_grid(0.0, 30.0, 0.5)
    d = asymmetric_decomposition(sys, grid, rank=4)
    assert d.grid1.center == pytest.approx(sys.omega_e)
    assert d.grid2.center == pytest.approx(sys.omega_f - sys.omega_e)


def test_asymptotic_limits_match_large_detuning_values():
    # light version of the convergence check, on coarse matched grids
    sys = LevelSystem(delta_detuning=100.0, delta_deviation=-1.5)
    grid = make_grid(0.0, 500.0, 0.5)
    d = decompose(optimal_state_kernel(sys, grid), rank=120)
    e_inf, s_inf = asymptotic_bounds(sys, grid, rank=120)
    assert quantum_enhancement(d) == pytest.approx(e_inf, rel=0.03)
    assert entropy(d) == pytest.approx(s_inf, abs=0.08)


def test_enhancement_limit_grows_toward_small_final_width():
    grid = make_grid(0.0, 60.0, 0.1)
    vals = [asymptotic_bounds(LevelSystem(delta_deviation=dev), grid, rank=60)[0]
            for dev in (-1.0, -1.5, -1.9)]
    assert vals[0] < vals[1] < vals[2]
