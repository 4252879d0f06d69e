"""Pure-Python cyclic Jacobi sweeps, used when the compiled kernel is absent.

Mirrors ``_jacobi_ext.jacobi_sweeps`` operation for operation; the row and
column updates are vectorized with numpy.
"""
import math

import numpy as np


def _offdiag_sq(a):
    upper = a[np.triu_indices(a.shape[0], 1)]
    return 2.0 * float(np.sum(upper.real**2 + upper.imag**2))


def jacobi_sweeps(a, v, off_tol, max_sweeps):
    n = a.shape[0]
    tol_sq = off_tol * off_tol
    for sweep in range(max_sweeps):
        if _offdiag_sq(a) <= tol_sq:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                x = a[p, q]
                r = abs(x)
                if r < 1e-300:
                    continue
                w = x.conjugate() / r
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * r)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c

                colp = a[:, p].copy()
                colq = a[:, q]
                a[:, p] = c * colp - s * w * colq
                a[:, q] = s * colp + c * w * colq
                rowp = a[p, :].copy()
                rowq = a[q, :]
                a[p, :] = c * rowp - s * w.conjugate() * rowq
                a[q, :] = s * rowp + c * w.conjugate() * rowq
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = app - t * r
                a[q, q] = aqq + t * r

                colp = v[:, p].copy()
                colq = v[:, q]
                v[:, p] = c * colp - s * w * colq
                v[:, q] = s * colp + c * w * colq
    if _offdiag_sq(a) <= tol_sq:
        return max_sweeps
    return -1
