"""NumPy reference implementation of the amplitude-evaluation kernel.

This is the fallback backend; the compiled extension in ``_fast.pyx``
implements the same contract. Both fill a preallocated block of the
unit-constant amplitude tensor, leaving the normalization constant to the
caller.
"""

from __future__ import annotations

import numpy as np

GAUSSIAN = 0
SINC = 1


def fill_amplitude_block(out, family, k_rows, k, cos_dtheta, t):
    """Fill out[r, j, u] with the unnormalized amplitude at (k_rows[r], k[j], dtheta[u]).

    Parameters
    ----------
    out : ndarray, shape (len(k_rows), len(k), len(cos_dtheta))
        Destination buffer, overwritten in place.
    family : int
        GAUSSIAN (0) for the double-Gaussian family, SINC (1) for the
        Gaussian-pump sinc family.
    k_rows, k : ndarray
        Radial magnitudes for the first and second photon, in pump-width
        units.
    cos_dtheta : ndarray
        Cosine of the relative azimuth grid.
    t : float
        Control parameter b_sigma.

    Notes
    -----
    With s = k^2 + q^2 and x = 2 k q, the squared vector sums are
    |k + q|^2 = s + x cos(dtheta) and |k - q|^2 = s - x cos(dtheta).
    The pump factor is exp(-|k + q|^2) and the phase-matching factor is
    exp(-t^2 |k - q|^2) or sinc(t^2 |k - q|^2) with sinc(0) = 1.
    """
    t2 = t * t
    c = cos_dtheta[np.newaxis, :]
    for r, kr in enumerate(k_rows):
        s = kr * kr + k * k
        x = 2.0 * kr * k
        plus = s[:, np.newaxis] + x[:, np.newaxis] * c
        minus = s[:, np.newaxis] - x[:, np.newaxis] * c
        np.exp(-plus, out=plus)
        arg = t2 * minus
        if family == GAUSSIAN:
            np.exp(-arg, out=arg)
            plus *= arg
        else:
            ratio = np.sin(arg)
            np.divide(ratio, arg, out=ratio, where=arg != 0.0)
            np.copyto(ratio, 1.0, where=arg == 0.0)
            plus *= ratio
        out[r] = plus
