"""Per-sector radial Schmidt problem and global spectrum assembly.

Each orbital-angular-momentum sector contributes a symmetric kernel
matrix M whose eigendecomposition M = sum_n e_n v_n v_n^T solves the
radial factorization F_m(k, q) sqrt(k q) = sum_n sqrt(gamma_nm)
phi_nm(k) phi_nm(q). The reduced-density-matrix eigenvalues are
gamma_n = e_n^2, which is valid for either sign of e_n; the signs are
recorded separately so the kernel stays exactly reconstructible.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .angular import SectorKernel
from .grids import RadialGrid
from .measures import SchmidtSpectrum, entanglement_entropy, schmidt_number

__all__ = [
    "SchmidtMode",
    "SectorSpectrum",
    "assemble_spectrum",
    "decompose_sector",
    "radial_node_count",
]

GAMMA_FLOOR = 1e-14
"""Sector eigenvalues below this are numerical noise and are discarded."""

_DEGENERACY_RTOL = 1e-9
"""Relative gap under which neighboring gammas count as degenerate."""


@dataclass(frozen=True)
class SchmidtMode:
    """Radial Schmidt mode phi_{n,m} sampled on the quadrature grid.

    The index n is the position in descending-gamma order within the
    sector; modes are orthonormal under the w_i k_i measure and scaled so
    the largest-magnitude sample is positive.
    """

    n: int
    m: int
    values: np.ndarray = field(repr=False)
    grid: RadialGrid = field(repr=False)


@dataclass(frozen=True)
class SectorSpectrum:
    """Eigendecomposition of one sector kernel.

    Attributes
    ----------
    m : int
        Sector quantum number.
    gammas : ndarray
        Descending reduced-density eigenvalues; they sum to 1 up to the
        discarded noise floor.
    signs : ndarray
        Signs of the kernel eigenvalues e_n, so that the kernel equals
        sum_n signs[n] * sqrt(gammas[n]) * weighted-mode outer products.
    modes : list of SchmidtMode
    """

    m: int
    gammas: np.ndarray = field(repr=False)
    signs: np.ndarray = field(repr=False)
    modes: list[SchmidtMode] = field(repr=False)


def radial_node_count(mode: SchmidtMode, mass_cut: float = 0.995, floor: float = 1e-2) -> int:
    """Number of interior sign changes of the mode profile.

    Counting convention: only the region holding the leading ``mass_cut``
    fraction of the mode's quadrature weight is inspected, and a sign
    change is counted only when the larger neighboring sample exceeds
    ``floor`` times the profile's peak magnitude. Sinc-family modes carry
    genuine low-amplitude oscillations in their far tails; this windowed
    count reports the node structure of the region where the mode lives,
    which is what the quantum number tracks.
    """
    phi = mode.values
    weighted = phi * np.sqrt(mode.grid.weights * mode.grid.nodes)
    mass = np.cumsum(weighted * weighted)
    total = mass[-1]
    if total <= 0.0:
        return 0
    keep = mass <= mass_cut * total
    p = phi[keep]
    if p.size < 2:
        return 0
    peak = float(np.abs(phi).max())
    signs = np.where(p >= 0.0, 1, -1)
    flips = np.nonzero(signs[1:] != signs[:-1])[0]
    return int(
        sum(1 for i in flips if max(abs(p[i]), abs(p[i + 1])) >= floor * peak)
    )


def decompose_sector(kernel: SectorKernel) -> SectorSpectrum:
    """Symmetric eigendecomposition of one sector kernel.

    Orders eigenpairs by descending gamma = e^2, resolves near-degenerate
    neighbors by ascending node count, unweights eigenvectors into mode
    profiles phi = v / sqrt(w k), and drops trailing eigenvalues below
    the noise floor.
    """
    matrix = kernel.matrix
    if not np.all(np.isfinite(matrix)):
        raise ValueError("sector kernel contains non-finite entries")
    asym = float(np.max(np.abs(matrix - matrix.T))) if matrix.size else 0.0
    if asym > 1e-10:
        raise ValueError(f"sector kernel asymmetric beyond tolerance ({asym:.3e})")

    eigenvalues, vectors = np.linalg.eigh(matrix)
    gammas = eigenvalues**2
    order = list(np.argsort(-gammas, kind="stable"))

    sqwk = np.sqrt(kernel.grid.weights * kernel.grid.nodes)

    def make_mode(position: int, column: int) -> SchmidtMode:
        phi = vectors[:, column] / sqwk
        if phi[np.argmax(np.abs(phi))] < 0.0:
            phi = -phi
        return SchmidtMode(n=position, m=kernel.m, values=phi, grid=kernel.grid)

    # Resolve near-degenerate runs by node count before final labeling.
    scale = gammas[order[0]] if order else 0.0
    resolved: list[int] = []
    i = 0
    while i < len(order):
        j = i + 1
        while (
            j < len(order)
            and gammas[order[j - 1]] - gammas[order[j]] <= _DEGENERACY_RTOL * scale
        ):
            j += 1
        group = order[i:j]
        if len(group) > 1:
            group = sorted(
                group,
                key=lambda col: radial_node_count(make_mode(0, col)),
            )
        resolved.extend(group)
        i = j

    keep = [col for idx, col in enumerate(resolved) if idx == 0 or gammas[col] >= GAMMA_FLOOR]
    return SectorSpectrum(
        m=kernel.m,
        gammas=np.array([gammas[col] for col in keep]),
        signs=np.array([1.0 if eigenvalues[col] >= 0.0 else -1.0 for col in keep]),
        modes=[make_mode(idx, col) for idx, col in enumerate(keep)],
    )


def assemble_spectrum(
    sectors: list[SectorSpectrum],
    probs: list[float],
) -> SchmidtSpectrum:
    """Combine sector spectra into the global eigenvalue table.

    Each sector entry becomes lambda_{n,m} = P_m * gamma_{n,m}; sectors
    with m > 0 are mirrored onto -m with identical weight. Entries are
    sorted by descending lambda with a fixed tie order, so output is
    deterministic. The summed table is the captured coverage; the scalar
    measures are computed on the coverage-renormalized table.
    """
    if len(sectors) != len(probs):
        raise ValueError("sector and probability lists are misaligned")
    for position, sector in enumerate(sectors):
        if sector.m != position:
            raise ValueError("sector and probability lists are misaligned")

    entries: list[tuple[int, int, float]] = []
    p_m_table: dict[int, float] = {}
    for sector, p_m in zip(sectors, probs):
        p_m_table[sector.m] = float(p_m)
        for n, gamma in enumerate(sector.gammas):
            lam = float(p_m * gamma)
            entries.append((n, sector.m, lam))
            if sector.m > 0:
                entries.append((n, -sector.m, lam))
    entries.sort(key=lambda e: (-e[2], e[0], abs(e[1]), -e[1]))

    lams = np.array([e[2] for e in entries])
    coverage = float(lams.sum())
    number = schmidt_number(lams)
    entropy = entanglement_entropy(lams)
    return SchmidtSpectrum(
        entries=entries,
        coverage=coverage,
        k_raw=number.raw,
        k=number.renormalized,
        entropy=entropy,
        p_m_table=p_m_table,
    )
