"""Dense symmetric eigenvalue kernels: Householder reduction plus QL.

Single-threaded with a fixed operation order, so spectra are reproducible
run to run on one machine. The JIT keeps the O(n^3) reduction usable into
the low thousands of rows.
"""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, fastmath=True)
def _householder_tridiagonalize(A):
    """Reduce a symmetric matrix to tridiagonal form in place.

    Returns (d, e) with d the diagonal and e[i] the coupling between
    rows i and i+1 (e[n-1] unused).
    """
    n = A.shape[0]
    d = np.empty(n)
    e = np.empty(n)
    v = np.empty(n)
    w = np.empty(n)
    for k in range(n - 2):
        m = n - k - 1
        alpha = 0.0
        for i in range(m):
            v[i] = A[k + 1 + i, k]
            alpha += v[i] * v[i]
        alpha = np.sqrt(alpha)
        if alpha == 0.0:
            e[k] = 0.0
            continue
        if v[0] > 0.0:
            alpha = -alpha
        v[0] = v[0] - alpha
        vnorm2 = 0.0
        for i in range(m):
            vnorm2 += v[i] * v[i]
        if vnorm2 == 0.0:
            e[k] = alpha
            continue
        beta = 2.0 / vnorm2
        for i in range(m):
            s = 0.0
            for j in range(m):
                s += A[k + 1 + i, k + 1 + j] * v[j]
            w[i] = beta * s
        wv = 0.0
        for i in range(m):
            wv += w[i] * v[i]
        gamma = 0.5 * beta * wv
        for i in range(m):
            w[i] -= gamma * v[i]
        for i in range(m):
            vi = v[i]
            wi = w[i]
            for j in range(m):
                A[k + 1 + i, k + 1 + j] -= vi * w[j] + wi * v[j]
        e[k] = alpha
    e[n - 2] = A[n - 1, n - 2]
    e[n - 1] = 0.0
    for i in range(n):
        d[i] = A[i, i]
    return d, e


@njit(cache=True)
def _tridiagonal_ql(d, e):
    """Implicit-shift QL on (d, e); eigenvalues land in d, unordered.

    Returns 0 on convergence, -1 once the total sweep count passes 30n
    (LAPACK's budget for dsteqr), which signals broken input rather than
    unlucky rounding. The budget is global, not per eigenvalue: with
    heavily degenerate spectra the leading indices absorb most of the
    deflation work, well over any fixed per-index cap.
    """
    n = d.shape[0]
    eps = 2.220446049250313e-16
    budget = 30 * n
    sweeps = 0
    for l in range(n):
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= eps * dd:
                    break
                m += 1
            if m == l:
                break
            sweeps += 1
            if sweeps > budget:
                return -1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = np.hypot(g, 1.0)
            if g >= 0.0:
                g = d[m] - d[l] + e[l] / (g + r)
            else:
                g = d[m] - d[l] + e[l] / (g - r)
            s = 1.0
            c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = np.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
            if not underflow:
                d[l] -= p
                e[l] = g
                e[m] = 0.0
    return 0


def symmetric_eigenvalues_dense(A: np.ndarray) -> np.ndarray:
    """All eigenvalues of a real symmetric matrix, ascending."""
    n = A.shape[0]
    if n == 0:
        return np.empty(0)
    if n == 1:
        return np.array([float(A[0, 0])])
    work = np.array(A, dtype=np.float64)  # the kernels clobber their input
    d, e = _householder_tridiagonalize(work)
    if _tridiagonal_ql(d, e) != 0:
        raise np.linalg.LinAlgError("QL iteration failed to converge")
    d.sort()
    return d
