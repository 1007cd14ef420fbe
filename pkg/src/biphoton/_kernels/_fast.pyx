# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled amplitude-evaluation kernel.

Same contract as ``_ref.fill_amplitude_block``; see that module for the
parameter documentation. The triple loop runs without the GIL and keeps a
fixed iteration order, so results do not depend on caller-side threading.
"""

from libc.math cimport exp, sin


def fill_amplitude_block(double[:, :, ::1] out, int family,
                         double[::1] k_rows, double[::1] k,
                         double[::1] cos_dtheta, double t):
    cdef Py_ssize_t nrows = k_rows.shape[0]
    cdef Py_ssize_t n = k.shape[0]
    cdef Py_ssize_t n_theta = cos_dtheta.shape[0]
    cdef Py_ssize_t r, j, u
    cdef double t2 = t * t
    cdef double kr, kj, s, x, cval, plus, arg, val

    if out.shape[0] < nrows or out.shape[1] != n or out.shape[2] != n_theta:
        raise ValueError("output buffer shape does not match the grids")

    with nogil:
        for r in range(nrows):
            kr = k_rows[r]
            for j in range(n):
                kj = k[j]
                s = kr * kr + kj * kj
                x = 2.0 * kr * kj
                for u in range(n_theta):
                    cval = cos_dtheta[u]
                    plus = s + x * cval
                    arg = t2 * (s - x * cval)
                    val = exp(-plus)
                    if family == 0:
                        val *= exp(-arg)
                    else:
                        if arg != 0.0:
                            val *= sin(arg) / arg
                    out[r, j, u] = val
