"""Angular Fourier reduction of the amplitude into fixed-m sectors.

The amplitude depends on the two azimuths only through their difference,
so expanding in exp(i m (theta_k - theta_q)) block-diagonalizes the
two-photon state into orbital-angular-momentum sectors with opposite m on
the two photons. Each sector contributes a probability P_m and a
symmetric radial kernel whose eigendecomposition is handled downstream.

Coefficients are computed with a real FFT over a uniform azimuth grid,
which is spectrally accurate here because the integrand is smooth and
periodic. Only m >= 0 is stored; the amplitude is real and even in the
relative azimuth, so P_m = P_{-m} and the kernels coincide.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .amplitudes import AmplitudeModel, _require_normalized
from .grids import RadialGrid, angular_grid

__all__ = [
    "SectorKernel",
    "adaptive_sectors",
    "angular_fourier",
    "sector_coverage",
]

_TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class SectorKernel:
    """One orbital-angular-momentum sector of the amplitude.

    Attributes
    ----------
    m : int
        Sector quantum number (nonnegative; negative m is its mirror).
    p_m : float
        Probability of finding the pair with quantum numbers (m, -m).
        Stored per signed m: summing over all integers m requires
        p_0 + 2 * sum over m > 0.
    matrix : ndarray
        Symmetric N x N Nystrom matrix sqrt(w_i k_i) F_m(k_i, k_j)
        sqrt(w_j k_j) with unit Frobenius norm; the sign convention makes
        the largest-magnitude entry positive.
    grid : RadialGrid
        Radial quadrature rule the matrix was built on.
    """

    m: int
    p_m: float
    matrix: np.ndarray = field(repr=False)
    grid: RadialGrid = field(repr=False)


def _fourier_pass(model, grid, n_theta, m_keep, block_rows=16):
    """One sweep over the radial grid: coefficients and sector weights.

    Returns (gcoef, p_all) where gcoef holds the Fourier coefficients
    G_m(k_i, k_j) for m <= m_keep (or None when m_keep is None) and p_all
    holds P_m for every m up to n_theta // 2. The amplitude tensor is
    evaluated in row blocks so the full (N, N, n_theta) array never
    materializes.
    """
    k = grid.nodes
    w = grid.weights
    n = grid.count
    _, cos_dtheta = angular_grid(n_theta)
    wk = w * k
    scale = model.unit_norm_constant / n_theta
    gcoef = None if m_keep is None else np.empty((n, n, m_keep + 1))
    p_all = np.zeros(n_theta // 2 + 1)
    buf = np.empty((min(block_rows, n), n, n_theta))
    for start in range(0, n, block_rows):
        stop = min(start + block_rows, n)
        out = buf[: stop - start]
        _kernels.fill_amplitude_block(
            out, model.family.kernel_code, k[start:stop], k, cos_dtheta, model.b_sigma
        )
        gb = np.fft.rfft(out, axis=2).real
        gb *= scale
        p_all += np.einsum("i,j,ijm->m", wk[start:stop], wk, gb * gb)
        if gcoef is not None:
            gcoef[start:stop] = gb[:, :, : m_keep + 1]
    p_all *= _TWO_PI**2
    return gcoef, p_all


def angular_fourier(
    model: AmplitudeModel,
    grid: RadialGrid,
    m_max: int,
    n_theta: int = 512,
    sector_tol: float | None = None,
) -> list[SectorKernel]:
    """Sector probabilities and kernels for m = 0 .. m_max.

    For each node pair the Fourier coefficient G_m(k_i, k_j) is the
    azimuth average of the amplitude against exp(-i m dtheta); the
    coefficients are real by parity. Then

        P_m = (2 pi)^2 Int |G_m|^2 k q dk dq,

    and the stored matrix is 2 pi G_m sqrt(w_i k_i) sqrt(w_j k_j) /
    sqrt(P_m), i.e. the weighted kernel F_m scaled to unit Frobenius
    norm. The sign is inherited from G_m itself, so the matrix
    reproduces closed forms including sign; for the double-Gaussian
    below b_sigma = 1 the odd sectors are negative throughout.

    When sector_tol is given, a captured probability below 1 - sector_tol
    raises ValueError("m_max too small"); adaptive callers extend m_max
    instead.
    """
    _require_normalized(model)
    if n_theta < 64 or n_theta & (n_theta - 1):
        raise ValueError("n_theta must be a power of two, at least 64")
    if not 0 <= m_max < n_theta // 2:
        raise ValueError("m_max must satisfy 0 <= m_max < n_theta / 2")
    gcoef, _ = _fourier_pass(model, grid, n_theta, m_max)
    sqwk = np.sqrt(grid.weights * grid.nodes)
    weight = _TWO_PI * np.outer(sqwk, sqwk)
    sectors = []
    for m in range(m_max + 1):
        a = weight * gcoef[:, :, m]
        p_m = float(np.sum(a * a))
        if p_m > 0.0:
            matrix = a / np.sqrt(p_m)
        else:
            matrix = np.zeros_like(a)
        sectors.append(SectorKernel(m=m, p_m=p_m, matrix=matrix, grid=grid))
    if sector_tol is not None and sector_coverage(sectors) < 1.0 - sector_tol:
        raise ValueError("m_max too small")
    return sectors


def sector_coverage(sectors: list[SectorKernel]) -> float:
    """Total probability captured by the stored sectors, counting both signs of m."""
    return float(sum(s.p_m if s.m == 0 else 2.0 * s.p_m for s in sectors))


def adaptive_sectors(
    model: AmplitudeModel,
    grid: RadialGrid,
    sector_tol: float = 1e-6,
    n_theta: int = 512,
) -> tuple[list[SectorKernel], float]:
    """Grow m_max until the captured probability reaches 1 - sector_tol.

    Follows a doubling schedule starting at m_max = 8. A cheap scan pass
    first accumulates P_m for every representable m, so the schedule is
    resolved with two amplitude sweeps regardless of where it stops. If
    even m_max = n_theta / 2 - 1 cannot reach the target, n_theta is
    doubled (at most twice) before giving up.

    Returns the sector list and its coverage; the coverage equals the
    summed p_m of the returned list exactly.
    """
    _require_normalized(model)
    if not 0.0 < sector_tol < 1.0:
        raise ValueError("sector_tol must be in (0, 1)")
    target = 1.0 - sector_tol
    for _ in range(3):
        _, p_all = _fourier_pass(model, grid, n_theta, None)
        signed = np.copy(p_all)
        signed[1:] *= 2.0
        cumulative = np.cumsum(signed)
        m_max = 8
        while m_max < n_theta // 2:
            if cumulative[m_max] >= target:
                sectors = angular_fourier(model, grid, m_max, n_theta)
                return sectors, sector_coverage(sectors)
            m_max *= 2
        n_theta *= 2
    raise ValueError("angular resolution exhausted")
