"""Two-photon transverse-wavevector amplitude families.

Both families share a Gaussian pump envelope in the summed transverse
wavevector and differ in the phase-matching factor applied to the
difference vector: a Gaussian for the double-Gaussian family and
sin(x)/x for the sinc family. Amplitudes are real, rotationally
invariant, and symmetric under photon exchange, so every pipeline stage
works with the magnitudes (k, q) and the relative azimuth only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from . import _kernels
from .grids import RadialGrid, angular_grid

__all__ = [
    "SPEED_OF_LIGHT",
    "AmplitudeFamily",
    "AmplitudeModel",
    "TransverseVector",
    "crystal_b",
    "evaluate",
    "normalize",
    "unit_norm_integral",
]

SPEED_OF_LIGHT = 299792458.0
"""Vacuum speed of light in m/s, used by :func:`crystal_b`."""


class AmplitudeFamily(Enum):
    """Selects the phase-matching factor of the amplitude."""

    DOUBLE_GAUSSIAN = "gaussian"
    GAUSSIAN_SINC = "sinc"

    @property
    def kernel_code(self) -> int:
        return _kernels.GAUSSIAN if self is AmplitudeFamily.DOUBLE_GAUSSIAN else _kernels.SINC


@dataclass(frozen=True)
class TransverseVector:
    """Transverse wavevector in polar form.

    Attributes
    ----------
    k_mag : float
        Magnitude, in inverse-length units (nonnegative).
    theta : float
        Azimuth in radians.
    """

    k_mag: float
    theta: float

    def __post_init__(self):
        if self.k_mag < 0:
            raise ValueError("k_mag must be nonnegative")


@dataclass(frozen=True)
class AmplitudeModel:
    """Immutable description of one biphoton amplitude.

    Attributes
    ----------
    family : AmplitudeFamily
        Phase-matching factor selection.
    sigma_perp : float
        Pump transverse width, inverse-length units.
    b : float
        Phase-matching width parameter, length units; the dimensionless
        control parameter is the product b * sigma_perp.
    cutoff : float
        Radial hard filter mu_c in inverse-length units; 0 disables it.
    norm_constant : float or None
        Overall constant making the state unit-normalized; None until
        :func:`normalize` has run.
    """

    family: AmplitudeFamily
    sigma_perp: float = 1.0
    b: float = 1.0
    cutoff: float = 0.0
    norm_constant: float | None = None

    def __post_init__(self):
        if self.sigma_perp <= 0:
            raise ValueError("sigma_perp must be positive")
        if self.b <= 0:
            raise ValueError("b must be positive")
        if self.cutoff < 0:
            raise ValueError("cutoff must be nonnegative")
        if self.norm_constant is not None and self.norm_constant <= 0:
            raise ValueError("norm_constant must be positive when set")

    @classmethod
    def from_b_sigma(
        cls,
        family: AmplitudeFamily | str,
        b_sigma: float,
        cutoff: float = 0.0,
    ) -> "AmplitudeModel":
        """Dimensionless model with sigma_perp = 1 and b = b_sigma."""
        if isinstance(family, str):
            family = AmplitudeFamily(family)
        return cls(family=family, sigma_perp=1.0, b=b_sigma, cutoff=cutoff)

    @property
    def b_sigma(self) -> float:
        """Dimensionless control parameter b * sigma_perp."""
        return self.b * self.sigma_perp

    @property
    def is_normalized(self) -> bool:
        return self.norm_constant is not None

    @property
    def unit_norm_constant(self) -> float:
        """Normalization constant of the sigma_perp-scaled dimensionless form."""
        _require_normalized(self)
        return self.norm_constant * self.sigma_perp**2


def _require_normalized(model: AmplitudeModel) -> None:
    if not model.is_normalized:
        raise ValueError("normalize first")


def _phase_matching(family: AmplitudeFamily, arg: float) -> float:
    if family is AmplitudeFamily.DOUBLE_GAUSSIAN:
        return math.exp(-arg)
    if arg == 0.0:
        return 1.0
    return math.sin(arg) / arg


def evaluate(model: AmplitudeModel, k: TransverseVector, q: TransverseVector) -> float:
    """Amplitude value at one pair of transverse wavevectors.

    Uses |k +- q|^2 = k^2 + q^2 +- 2 k q cos(theta_k - theta_q). The hard
    radial filter zeroes the value when either magnitude is below the
    cutoff; values exactly at the cutoff survive (step(0) = 1).
    """
    _require_normalized(model)
    if model.cutoff > 0.0 and (k.k_mag < model.cutoff or q.k_mag < model.cutoff):
        return 0.0
    ka = k.k_mag / model.sigma_perp
    qa = q.k_mag / model.sigma_perp
    s = ka * ka + qa * qa
    x = 2.0 * ka * qa * math.cos(k.theta - q.theta)
    t2 = model.b_sigma**2
    return model.norm_constant * math.exp(-(s + x)) * _phase_matching(model.family, t2 * (s - x))


def unit_norm_integral(
    model: AmplitudeModel,
    grid: RadialGrid,
    n_theta: int,
    block_rows: int = 16,
) -> float:
    """Squared norm of the unit-constant amplitude on the given grid.

    Rotational symmetry reduces the double 2-D integral of the squared
    amplitude to three dimensions: 2pi * Int |C(k, q, dtheta)|^2 k q
    dk dq dtheta, evaluated here with Gauss-Legendre weights radially and
    a uniform rule in the relative azimuth. Works in sigma_perp-scaled
    units with the normalization constant set to one; block evaluation
    keeps the memory footprint flat.
    """
    k = grid.nodes
    w = grid.weights
    n = grid.count
    _, cos_dtheta = angular_grid(n_theta)
    wk = w * k
    total = 0.0
    buf = np.empty((min(block_rows, n), n, n_theta))
    for start in range(0, n, block_rows):
        stop = min(start + block_rows, n)
        out = buf[: stop - start]
        _kernels.fill_amplitude_block(
            out, model.family.kernel_code, k[start:stop], k, cos_dtheta, model.b_sigma
        )
        np.square(out, out=out)
        total += float(wk[start:stop] @ out.sum(axis=2) @ wk)
    return total * (2.0 * np.pi) * (2.0 * np.pi / n_theta)


def normalize(model: AmplitudeModel, grid: RadialGrid, n_theta: int = 512) -> AmplitudeModel:
    """Return a copy of the model with norm_constant set.

    The constant is recomputed from scratch on every call, so normalizing
    twice on the same grid reproduces the same value exactly. The grid is
    expected to cover the amplitude support; filtered models pass a grid
    that starts at the cutoff instead of relying on step-function zeros.
    """
    integral = unit_norm_integral(model, grid, n_theta)
    if not integral > 1e-300:
        raise ValueError("norm integral vanishes; degenerate parameters")
    unit_constant = 1.0 / math.sqrt(integral)
    return replace(model, norm_constant=unit_constant / model.sigma_perp**2)


def crystal_b(crystal_length: float, pump_frequency: float) -> float:
    """Phase-matching width parameter from crystal length and pump frequency.

    Parameters
    ----------
    crystal_length : float
        Crystal length L in meters, positive.
    pump_frequency : float
        Pump angular frequency in rad/s, positive.

    Returns
    -------
    float
        b = sqrt(c L / (4 omega_p)) in meters.
    """
    if crystal_length <= 0:
        raise ValueError("crystal_length must be positive")
    if pump_frequency <= 0:
        raise ValueError("pump_frequency must be positive")
    return math.sqrt(SPEED_OF_LIGHT * crystal_length / (4.0 * pump_frequency))
