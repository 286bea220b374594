"""Projector algebra, the concentration operator, and its bounds."""

import numpy as np
import pytest

from subgap import (
    Interval,
    NotBandlimitedError,
    SampledSignal,
    band_project,
    band_spill_ratio,
    complement_gate,
    concentration_ratio,
    eps_grid,
    inner_product,
    l2_norm,
    make_demo_signal,
    operator_norm_sq,
    out_of_band_fraction,
    prolate_eigenvalues,
    prolate_matrix,
    segment_compatibility,
    smear_response,
    time_gate,
)

# (W, T) pairs realizing WT in {0.1, 0.25, 0.5, 0.9} on the default grid
SWEEP = [(1.6, 1.0 / 16), (1.0, 0.25), (2.0, 0.25), (3.6, 0.25)]


def _random_signal(grid, seed):
    rng = np.random.default_rng(seed)
    return SampledSignal(
        grid, rng.standard_normal(grid.n) + 1j * rng.standard_normal(grid.n)
    )


def test_projectors_idempotent(grid, band):
    s = _random_signal(grid, 0)
    window = Interval(0.0, 0.25)
    once = band_project(s, band)
    np.testing.assert_allclose(
        band_project(once, band).values, once.values, atol=1e-12
    )
    gated = time_gate(s, window)
    np.testing.assert_array_equal(time_gate(gated, window).values, gated.values)


def test_projectors_self_adjoint(grid, band):
    a = _random_signal(grid, 1)
    b = _random_signal(grid, 2)
    window = Interval(0.0, 0.25)
    scale = l2_norm(a) * l2_norm(b)
    for proj in (lambda s: band_project(s, band), lambda s: time_gate(s, window)):
        lhs = inner_product(proj(a), b)
        rhs = inner_product(a, proj(b))
        assert abs(lhs - rhs) <= 1e-12 * scale


def test_gate_and_complement_partition(grid):
    s = _random_signal(grid, 3)
    window = Interval(0.3, 0.7)
    total = time_gate(s, window).values + complement_gate(s, window).values
    np.testing.assert_array_equal(total, s.values)


def test_out_of_band_fraction_extremes(grid, band, s_w):
    assert out_of_band_fraction(s_w, band) <= 1e-15
    # a tone outside the band has all of its energy out of band
    tone = SampledSignal(grid, np.exp(-2j * np.pi * 1.5 * grid.times))
    assert out_of_band_fraction(tone, Interval(0.0, 1.0)) == pytest.approx(1.0)


def test_smear_response_matches_quadrature():
    band = Interval(0.3, 1.2)
    w = np.linspace(band.lo, band.hi, (1 << 12) + 1)
    weights = np.ones(w.size)
    weights[1:-1:2] = 4.0
    weights[2:-1:2] = 2.0
    for dt in (0.0, 0.1, 0.7, -1.3):
        oracle = band.width / (w.size - 1) / 3.0 * np.sum(
            weights * np.exp(-2j * np.pi * w * dt)
        )
        assert abs(smear_response(band, dt) - oracle) <= 1e-9
    # at zero lag the response is just the band width
    assert smear_response(band, 0.0) == pytest.approx(band.width)


@pytest.mark.parametrize("w,t", SWEEP)
def test_operator_norm_bound_and_dense_agreement(grid, w, t):
    band = Interval(0.0, w)
    window = Interval(0.0, t)
    wt = w * t
    lam = operator_norm_sq(grid, band, window)
    assert 0.0 <= lam <= min(1.0, wt + eps_grid(grid, band, window))
    evals = prolate_eigenvalues(grid, band, window)
    assert abs(lam - evals[0]) <= 1e-8
    # the whole spectrum sits in [0, 1] up to round-off
    assert evals[-1] >= -1e-12 and evals[0] <= 1.0 + 1e-12


@pytest.mark.parametrize("w,t", SWEEP)
def test_gram_trace_equals_time_bandwidth_product(grid, w, t):
    tr = float(np.real(np.trace(prolate_matrix(grid, band=Interval(0.0, w), window=Interval(0.0, t)))))
    assert abs(tr - w * t) <= 0.02 * w * t


def test_prolate_matrix_hermitian_psd(grid):
    b = prolate_matrix(grid, Interval(0.0, 2.0), Interval(0.0, 0.25))
    assert np.max(np.abs(b - b.conj().T)) <= 1e-14
    assert np.linalg.eigvalsh(b).min() >= -1e-12


def test_gated_energy_bounded_by_operator_norm(grid, band):
    window = Interval(0.0, 0.25)
    lam = operator_norm_sq(grid, band, window)
    for seed in range(3):
        s = _random_signal(grid, 10 + seed)
        gated = time_gate(band_project(s, band), window)
        assert l2_norm(gated) <= np.sqrt(lam) * l2_norm(s) * (1.0 + 1e-10)


@pytest.mark.parametrize("w,t", SWEEP)
def test_concentration_ratio_bounded(grid, w, t, random_bandlimited):
    band = Interval(0.0, w)
    window = Interval(0.0, t)
    cap = min(1.0, w * t + eps_grid(grid, band, window))
    for seed in range(3):
        s = random_bandlimited(band, seed)
        ratio = concentration_ratio(s, band, window)
        assert 0.0 <= ratio <= cap
        # definition check against the raw projector norms
        manual = (l2_norm(time_gate(s, window)) / l2_norm(s)) ** 2
        assert ratio == pytest.approx(manual, rel=1e-10)


def test_concentration_rejects_out_of_band_signal(grid):
    tone = SampledSignal(grid, np.exp(-2j * np.pi * 1.5 * grid.times))
    with pytest.raises(ValueError):
        concentration_ratio(tone, Interval(0.0, 1.0), Interval(0.0, 0.25))


@pytest.mark.parametrize("w,t", SWEEP)
def test_band_spill_floor(grid, w, t, random_bandlimited):
    band = Interval(0.0, w)
    window = Interval(0.0, t)
    floor = 1.0 - w * t - eps_grid(grid, band, window)
    for seed in range(3):
        spill = band_spill_ratio(random_bandlimited(band, 20 + seed), band, window)
        assert floor <= spill <= 1.0 + 1e-12


def test_band_spill_requires_bandlimited_input(grid, band):
    with pytest.raises(NotBandlimitedError):
        band_spill_ratio(make_demo_signal(grid), band, Interval(0.0, 0.25))


def test_segment_compatibility_bounded(grid, band):
    window = Interval(0.0, 0.25)
    cap = min(1.0, 0.5 + eps_grid(grid, band, window))
    for seed in range(3):
        r = time_gate(_random_signal(grid, 30 + seed), window)
        assert segment_compatibility(r, window, band) <= cap


def test_subsample_window_gives_zero_norm(grid):
    # a window narrower than one grid step contains no samples at all
    tiny = Interval(grid.dt / 2.0 + 1e-6, 1e-7)
    assert operator_norm_sq(grid, Interval(0.0, 2.0), tiny) == 0.0


def test_eps_grid_formula(grid, band):
    window = Interval(0.0, 0.25)
    assert eps_grid(grid, band, window) == pytest.approx(
        10.0 * grid.dt * (band.width + 1.0 / window.width)
    )
