"""One-sided Jacobi SVD kernel (numba-compiled).

Cyclic sweeps of complex plane rotations orthogonalize the columns in place;
column norms at convergence are the singular values.  Working on the columns
of A directly (never on A*A) keeps small singular values accurate to high
relative precision, which is the point of this oracle.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def jacobi_singular_values(a, tol, max_sweeps):
    """Singular values of a complex matrix, sorted non-increasing.

    Returns (values, sweeps_used, converged_flag).
    """
    n = a.shape[0]
    m = a.shape[1]
    A = a.copy()
    converged = False
    sweeps = 0
    # columns this far below the largest are roundoff dust; rotating them
    # chases noise forever, so they deflate to (numerical) zero
    max2 = 0.0
    for j in range(m):
        acc = 0.0
        for i in range(n):
            acc += A[i, j].real ** 2 + A[i, j].imag ** 2
        if acc > max2:
            max2 = acc
    cutoff2 = (64.0 * 2.220446049250313e-16) ** 2 * max2
    for sweep in range(max_sweeps):
        sweeps = sweep + 1
        rotated = False
        for p in range(m - 1):
            for q in range(p + 1, m):
                alpha = 0.0
                beta = 0.0
                gr = 0.0
                gi = 0.0
                for i in range(n):
                    ar = A[i, p].real
                    ai = A[i, p].imag
                    br = A[i, q].real
                    bi = A[i, q].imag
                    alpha += ar * ar + ai * ai
                    beta += br * br + bi * bi
                    gr += ar * br + ai * bi
                    gi += ar * bi - ai * br
                gabs = (gr * gr + gi * gi) ** 0.5
                if alpha <= cutoff2 or beta <= cutoff2:
                    continue
                if gabs <= tol * (alpha * beta) ** 0.5:
                    continue
                rotated = True
                # phase that makes the 2x2 Gram block real, then a classic
                # symmetric Jacobi rotation on it
                cr = gr / gabs
                ci = gi / gabs
                tau = (beta - alpha) / (2.0 * gabs)
                if tau >= 0.0:
                    t = 1.0 / (tau + (1.0 + tau * tau) ** 0.5)
                else:
                    t = -1.0 / (-tau + (1.0 + tau * tau) ** 0.5)
                c = 1.0 / (1.0 + t * t) ** 0.5
                s = t * c
                phase = complex(cr, ci)
                for i in range(n):
                    vp = A[i, p] * phase
                    vq = A[i, q]
                    A[i, p] = c * vp - s * vq
                    A[i, q] = s * vp + c * vq
        if not rotated:
            converged = True
            break
    sv = np.empty(m)
    for j in range(m):
        acc = 0.0
        for i in range(n):
            acc += A[i, j].real ** 2 + A[i, j].imag ** 2
        sv[j] = acc ** 0.5
    return -np.sort(-sv), sweeps, converged
