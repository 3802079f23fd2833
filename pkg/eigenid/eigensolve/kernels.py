"""
Compiled scalar kernels for the symmetric eigenproblem.

All kernels work in place on float64 C-contiguous arrays and release the GIL,
so several can run at once on the engine's worker threads.
"""
import math

import numpy as np
from numba import njit

EPS = 2.220446049250313e-16


@njit(cache=True, nogil=True)
def householder_tridiagonal(a, d, e, h):
    """
    Householder reduction of the symmetric matrix ``a`` to tridiagonal form.

    On return ``d`` holds the diagonal, ``e[:n-1]`` the off-diagonal, column k
    of ``a`` below the diagonal holds reflector k and ``h[k]`` its scale
    (u.u / 2; zero when the column was already reduced).
    """
    n = a.shape[0]
    for k in range(n - 2):
        m = n - k - 1
        sigma = 0.0
        for r in range(k + 2, n):
            sigma += a[k, r] * a[k, r]
        x0 = a[k, k + 1]
        if sigma == 0.0:
            e[k] = x0
            h[k] = 0.0
            continue
        alpha = math.sqrt(sigma + x0 * x0)
        if x0 < 0.0:
            alpha = -alpha
        u = np.empty(m)
        u[0] = x0 + alpha
        for r in range(1, m):
            u[r] = a[k, k + 1 + r]
        hk = 0.5 * (u[0] * u[0] + sigma)

        p = np.empty(m)
        for r in range(m):
            row = k + 1 + r
            acc = 0.0
            for c in range(m):
                acc += a[row, k + 1 + c] * u[c]
            p[r] = acc / hk
        g = 0.0
        for r in range(m):
            g += u[r] * p[r]
        g /= 2.0 * hk
        for r in range(m):
            p[r] -= g * u[r]

        # A' = A - q u^T - u q^T on the trailing block
        for r in range(m):
            row = k + 1 + r
            qr = p[r]
            ur = u[r]
            for c in range(m):
                a[row, k + 1 + c] -= qr * u[c] + ur * p[c]

        e[k] = -alpha
        h[k] = hk
        for r in range(m):
            a[k + 1 + r, k] = u[r]

    if n >= 2:
        e[n - 2] = a[n - 2, n - 1]
    for k in range(n):
        d[k] = a[k, k]


@njit(cache=True, nogil=True)
def accumulate_basis(a, h):
    """Orthogonal Q with Q^T A Q tridiagonal, from the reflectors left in ``a``."""
    n = a.shape[0]
    q = np.eye(n)
    for k in range(n - 3, -1, -1):
        if h[k] == 0.0:
            continue
        m = n - k - 1
        w = np.zeros(m)
        for r in range(m):
            ur = a[k + 1 + r, k]
            row = k + 1 + r
            for c in range(m):
                w[c] += ur * q[row, k + 1 + c]
        for c in range(m):
            w[c] /= h[k]
        for r in range(m):
            ur = a[k + 1 + r, k]
            row = k + 1 + r
            for c in range(m):
                q[row, k + 1 + c] -= ur * w[c]
    return q


@njit(cache=True, nogil=True)
def ql_implicit(d, e, zt, want_vectors, max_iter):
    """
    Implicit-shift QL on a symmetric tridiagonal matrix.

    ``e`` has length n with e[i] coupling i and i+1 (e[n-1] is scratch).
    With ``want_vectors`` the rows of ``zt`` are rotated alongside, so passing
    Q^T yields the transposed eigenvector matrix of the original problem.
    Returns the number of QL iterations, or -1 once ``max_iter`` is exceeded.
    """
    n = d.shape[0]
    total = 0
    for l in range(n):
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= EPS * dd:
                    break
                m += 1
            if m == l:
                break
            total += 1
            if total > max_iter:
                return -1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            deflated = False
            i = m - 1
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    deflated = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                if want_vectors:
                    for k in range(zt.shape[1]):
                        zf = zt[i + 1, k]
                        zt[i + 1, k] = s * zt[i, k] + c * zf
                        zt[i, k] = c * zt[i, k] - s * zf
                i -= 1
            if deflated:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return total


@njit(cache=True, nogil=True)
def jacobi_cyclic(a, v, tol, max_sweeps):
    """
    Cyclic Jacobi rotations until the off-diagonal Frobenius norm is <= tol.

    ``a`` ends up diagonal, ``v`` accumulates the rotations.
    Returns the number of sweeps used, or -1 if ``max_sweeps`` ran out.
    """
    n = a.shape[0]
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off += a[p, q] * a[p, q]
        if math.sqrt(2.0 * off) <= tol:
            return sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    if k != p and k != q:
                        akp = a[k, p]
                        akq = a[k, q]
                        nkp = c * akp - s * akq
                        nkq = s * akp + c * akq
                        a[k, p] = nkp
                        a[p, k] = nkp
                        a[k, q] = nkq
                        a[q, k] = nkq
                a[p, p] -= t * apq
                a[q, q] += t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    return -1
