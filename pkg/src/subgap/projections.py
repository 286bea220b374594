"""Band and time-window projectors, concentration ratios, and norm bounds.

``band_project`` (P_W) zeroes spectrum bins outside a frequency interval;
``time_gate`` (P_T) zeroes samples outside a time window.  Both are
orthogonal projections, and the composite P_W P_T P_W (the prolate
concentration operator) has operator norm bounded by the time-bandwidth
product WT.  Everything here is a continuum inequality evaluated on a
grid, so bounds carry an explicit discretization slack ``eps_grid``.
"""

from __future__ import annotations

import numpy as np

from .core import (
    Interval,
    SampledSignal,
    Spectrum,
    TimeGrid,
    forward_spectrum,
    inverse_signal,
    l2_norm,
)
from .errors import NonConvergenceError, NotBandlimitedError

__all__ = [
    "band_project",
    "time_gate",
    "complement_gate",
    "out_of_band_fraction",
    "smear_response",
    "eps_grid",
    "concentration_ratio",
    "prolate_matrix",
    "prolate_eigenvalues",
    "operator_norm_sq",
    "band_spill_ratio",
    "segment_compatibility",
]

#: relative energy threshold below which a signal counts as bandlimited
BANDLIMIT_TOL = 1e-10


def _check_band(grid: TimeGrid, band: Interval):
    nyq = 0.5 / grid.dt
    if band.lo < -nyq - 1e-12 or band.hi > nyq + 1e-12:
        raise ValueError(
            f"band [{band.lo}, {band.hi}) exceeds the Nyquist range "
            f"[-{nyq}, {nyq}) of dt={grid.dt}"
        )


def _check_window(grid: TimeGrid, window: Interval):
    if window.lo < grid.t_start - 1e-12 or window.hi > grid.t_end + 1e-12:
        raise ValueError(
            f"window [{window.lo}, {window.hi}) lies outside the grid span "
            f"[{grid.t_start}, {grid.t_end})"
        )


def band_project(s: SampledSignal, band: Interval) -> SampledSignal:
    """Apply P_W: zero all spectrum bins outside ``band``, transform back."""
    _check_band(s.grid, band)
    spec = forward_spectrum(s)
    keep = band.mask(spec.grid.frequencies)
    vals = np.where(keep, spec.values, 0.0)
    return inverse_signal(Spectrum(spec.grid, vals))


def time_gate(s: SampledSignal, window: Interval) -> SampledSignal:
    """Apply P_T: zero all samples outside ``window``."""
    _check_window(s.grid, window)
    keep = window.mask(s.grid.times)
    return SampledSignal(s.grid, np.where(keep, s.values, 0.0))


def complement_gate(s: SampledSignal, window: Interval) -> SampledSignal:
    """Apply 1 - P_T: zero all samples inside ``window``."""
    _check_window(s.grid, window)
    keep = window.mask(s.grid.times)
    return SampledSignal(s.grid, np.where(keep, 0.0, s.values))


def out_of_band_fraction(s: SampledSignal, band: Interval) -> float:
    """Relative L2 norm of the part of ``s`` outside ``band`` (0 for in-band)."""
    total = l2_norm(s)
    if total == 0.0:
        return 0.0
    leak = l2_norm(SampledSignal(s.grid, s.values - band_project(s, band).values))
    return leak / total


def smear_response(band: Interval, delta_t) -> complex:
    """Closed-form gap response G(dt; W) = int_[W] exp(-2 pi i w dt) dw.

    Equals W * exp(-2 pi i w0 dt) * sinc(W dt): the response of the band
    projector to a point disturbance cannot average to zero for
    |dt| < 1/W, which is what spreads a time gap across the whole band.
    Vectorized over ``delta_t``.
    """
    delta_t = np.asarray(delta_t, dtype=float)
    out = band.width * np.exp(-2j * np.pi * band.center * delta_t)
    out = out * np.sinc(band.width * delta_t)
    if out.ndim == 0:
        return complex(out)
    return out


def eps_grid(grid: TimeGrid, band: Interval, window: Interval) -> float:
    """Documented discretization slack 10*dt*(W + 1/T) for the WT bounds.

    The bound inequalities are continuum statements; on a grid the interval
    edges quantize to bins, which this conservative slack absorbs.
    """
    return 10.0 * grid.dt * (band.width + 1.0 / window.width)


def concentration_ratio(s: SampledSignal, band: Interval, window: Interval) -> float:
    """Conditional-measurement ratio <P_W s, P_T P_W s> / ||P_W s||^2.

    The fraction of the bandlimited part's energy found inside the time
    window; bounded by min(1, WT + eps_grid).  Rejects inputs with no
    in-band energy.
    """
    sw = band_project(s, band)
    denom = l2_norm(sw) ** 2
    if denom <= 1e-24 * l2_norm(s) ** 2:
        raise ValueError("signal has no energy inside the band")
    ratio = l2_norm(time_gate(sw, window)) ** 2 / denom
    limit = min(1.0, band.width * window.width + eps_grid(s.grid, band, window))
    assert ratio <= limit + 1e-12, f"concentration {ratio} exceeds bound {limit}"
    return ratio


def prolate_matrix(grid: TimeGrid, band: Interval, window: Interval) -> np.ndarray:
    """The operator P_W P_T P_W restricted to the in-band spectral basis.

    With w_j the M in-band bin frequencies and t_k the gated sample
    instants, the matrix is B = dt * dw * E E^H, E_jk = exp(2 pi i w_j t_k).
    B is Hermitian PSD with trace dt*dw*M*K ~ WT, and its largest
    eigenvalue equals ||P_T P_W||^2.
    """
    _check_band(grid, band)
    _check_window(grid, window)
    wb = grid.dual.frequencies[band.mask(grid.dual.frequencies)]
    tb = grid.times[window.mask(grid.times)]
    if wb.size == 0:
        raise ValueError("band contains no frequency bins")
    e = np.exp(2j * np.pi * np.outer(wb, tb))
    return (grid.dt * grid.dual.dw) * (e @ e.conj().T)


def prolate_eigenvalues(grid: TimeGrid, band: Interval, window: Interval) -> np.ndarray:
    """All eigenvalues of the in-band concentration matrix, descending."""
    return np.linalg.eigvalsh(prolate_matrix(grid, band, window))[::-1]


def operator_norm_sq(
    grid: TimeGrid,
    band: Interval,
    window: Interval,
    tol: float = 1e-12,
    max_iter: int = 10000,
) -> float:
    """Largest eigenvalue of P_W P_T P_W by power iteration.

    Deterministic start (uniform in-band vector); stops when the Rayleigh
    quotient changes by less than ``tol`` relative.  Equals the squared
    operator norm ||P_T P_W||^2 and satisfies
    0 <= lambda0 <= min(1, WT + eps_grid).

    Raises
    ------
    NonConvergenceError
        If ``max_iter`` is exhausted; the message reports the last
        Rayleigh quotient and its residual change.
    """
    b = prolate_matrix(grid, band, window)
    if not np.any(np.abs(b) > 0.0):
        return 0.0
    m = b.shape[0]
    v = np.full(m, 1.0 / np.sqrt(m), dtype=complex)
    lam = 0.0
    for _ in range(max_iter):
        w = b @ v
        nrm = np.linalg.norm(w)
        if nrm == 0.0:
            return 0.0
        lam_new = float(np.real(np.vdot(v, w)))
        v = w / nrm
        if abs(lam_new - lam) <= tol * max(abs(lam_new), 1e-300):
            return lam_new
        lam = lam_new
    raise NonConvergenceError(
        f"power iteration did not converge in {max_iter} iterations; "
        f"last Rayleigh quotient {lam:.16e}, last change {abs(lam_new - lam):.3e} "
        "(near-degenerate top eigenvalues)"
    )


def band_spill_ratio(s_w: SampledSignal, band: Interval, window: Interval) -> float:
    """Out-of-band energy fraction of the gated segment P_T s_W.

    For a signal bandlimited to [W], gating to a window of width T forces
    at least 1 - WT of the segment's energy outside the band:
    <g|(1-P_W)|g> / <g|g> >= 1 - WT - eps_grid with g = P_T s_W.  That
    spill is precisely what the recovery formulas fold back.
    """
    frac = out_of_band_fraction(s_w, band)
    if frac > BANDLIMIT_TOL:
        raise NotBandlimitedError(
            f"input has relative out-of-band energy {frac:.3e} > {BANDLIMIT_TOL}"
        )
    g = time_gate(s_w, window)
    denom = l2_norm(g) ** 2
    if denom <= 0.0:
        raise ValueError("signal has no energy inside the window")
    ratio = 1.0 - l2_norm(band_project(g, band)) ** 2 / denom
    floor = 1.0 - band.width * window.width - eps_grid(s_w.grid, band, window)
    assert ratio >= floor - 1e-12, f"spill {ratio} below bound {floor}"
    return ratio


def segment_compatibility(r: SampledSignal, window: Interval, band: Interval) -> float:
    """In-band energy fraction of the windowed segment: <r|P_T P_W P_T|r>/<r|P_T|r>.

    A value of 1 (to tolerance) certifies the segment is consistent with
    the band; since the ratio is bounded by |T|*W, certification is only
    possible when the segment is longer than 1/W.
    """
    g = time_gate(r, window)
    denom = l2_norm(g) ** 2
    if denom <= 0.0:
        raise ValueError("signal has no energy inside the window")
    return l2_norm(band_project(g, band)) ** 2 / denom
