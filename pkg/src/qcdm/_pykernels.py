"""Pure-Python fallback for the compiled kernels in ``_kernels.pyx``.

Same algorithms and same signatures; used when the extension is not built
or when ``QCDM_PURE_PYTHON`` is set.
"""
import math

import numpy as np


def jacobi_eigh(a, tol, max_sweeps):
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    norm = float(np.linalg.norm(a))
    offmask = ~np.eye(n, dtype=bool)
    sweep = 0
    while True:
        off = math.sqrt(float(np.sum(np.abs(a[offmask]) ** 2)))
        if off <= tol * norm or sweep >= max_sweeps:
            break
        sweep += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = complex(a[p, q])
                ab = abs(b)
                if ab == 0.0:
                    continue
                e = b / ab
                theta = (a[q, q].real - a[p, p].real) / (2.0 * ab)
                if theta >= 0.0:
                    t = 1.0 / (theta + math.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                gqp = -s * e.conjugate()
                gqq = c * e.conjugate()

                cp, cq = a[:, p].copy(), a[:, q]
                a[:, p] = c * cp + gqp * cq
                a[:, q] = s * cp + gqq * cq
                vp, vq = v[:, p].copy(), v[:, q]
                v[:, p] = c * vp + gqp * vq
                v[:, q] = s * vp + gqq * vq
                rp, rq = a[p, :].copy(), a[q, :]
                a[p, :] = c * rp + gqp.conjugate() * rq
                a[q, :] = s * rp + gqq.conjugate() * rq
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    return a.diagonal().real.copy(), v, sweep, off


def partial_trace(a, kept, traced):
    rows = kept[:, None, None] + traced[None, None, :]
    cols = kept[None, :, None] + traced[None, None, :]
    return a[rows, cols].sum(axis=-1)
