"""Dense symmetric eigensolver: Householder tridiagonalization followed by
implicit-shift QL iteration, with eigenvectors accumulated throughout.

The reduction keeps the full symmetric submatrix so all inner loops walk
rows contiguously; both stages are JIT-compiled.  `jacobi_eigh` is a cyclic
Jacobi solver kept as a slow independent reference for small matrices.
"""

import math

import numpy as np
from numba import njit

from .errors import NumericalError, SizeError

MAX_DENSE_N = 4096
_QL_MAX_SWEEPS = 50


@njit(cache=True)
def _tridiagonalize(a):
    """Reduce symmetric a in place; returns (d, e) with e[0] = 0.
    Afterwards a holds the accumulated orthogonal transform Q, with
    Q^T A Q tridiagonal."""
    n = a.shape[0]
    d = np.zeros(n)
    e = np.zeros(n)
    p = np.zeros(n)
    for i in range(n - 1, 0, -1):
        l = i - 1
        if l > 0:
            scale = 0.0
            for k in range(l + 1):
                scale += abs(a[i, k])
            if scale == 0.0:
                e[i] = a[i, l]
                d[i] = 0.0
                continue
            h = 0.0
            for k in range(l + 1):
                a[i, k] /= scale
                h += a[i, k] * a[i, k]
            f = a[i, l]
            g = -math.sqrt(h) if f >= 0.0 else math.sqrt(h)
            e[i] = scale * g
            h -= f * g
            a[i, l] = f - g
            for j in range(l + 1):
                s = 0.0
                for k in range(l + 1):
                    s += a[j, k] * a[i, k]
                p[j] = s / h
            kk = 0.0
            for j in range(l + 1):
                kk += p[j] * a[i, j]
            kk /= 2.0 * h
            for j in range(l + 1):
                p[j] -= kk * a[i, j]
            for j in range(l + 1):
                uj = a[i, j]
                wj = p[j]
                for k in range(l + 1):
                    a[j, k] -= wj * a[i, k] + uj * p[k]
            for j in range(l + 1):
                a[j, i] = a[i, j] / h  # scaled reflector, used in the accumulation pass
            d[i] = h
        else:
            e[i] = a[i, l]
            d[i] = 0.0
    d[0] = 0.0
    e[0] = 0.0
    g_buf = np.zeros(n)
    for i in range(n):
        if d[i] != 0.0:
            for j in range(i):
                g_buf[j] = 0.0
            for k in range(i):
                aik = a[i, k]
                for j in range(i):
                    g_buf[j] += aik * a[k, j]
            for k in range(i):
                aki = a[k, i]
                for j in range(i):
                    a[k, j] -= g_buf[j] * aki
        d[i] = a[i, i]
        a[i, i] = 1.0
        for j in range(i):
            a[i, j] = 0.0
            a[j, i] = 0.0
    return d, e


@njit(cache=True)
def _ql_implicit(d, e, zt):
    """Implicit-shift QL on tridiagonal (d, e); rotations are applied to the
    rows of zt (the transposed eigenvector matrix).  Returns 0 on success,
    -1 if an eigenvalue fails to converge."""
    n = d.shape[0]
    for i in range(1, n):
        e[i - 1] = e[i]
    e[n - 1] = 0.0
    eps = 2.220446049250313e-16
    for l in range(n):
        sweeps = 0
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
            if sweeps > _QL_MAX_SWEEPS:
                return -1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            sg = r if g >= 0.0 else -r
            g = d[m] - d[l] + e[l] / (g + sg)
            s = 1.0
            c = 1.0
            pshift = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= pshift
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - pshift
                r = (d[i] - g) * s + 2.0 * c * b
                pshift = s * r
                d[i + 1] = g + pshift
                g = c * r - b
                for k in range(zt.shape[1]):
                    f2 = zt[i + 1, k]
                    zt[i + 1, k] = s * zt[i, k] + c * f2
                    zt[i, k] = c * zt[i, k] - s * f2
            if underflow:
                continue
            d[l] -= pshift
            e[l] = g
            e[m] = 0.0
    return 0


def symmetric_eigh(mat):
    """Eigenvalues (ascending) and orthonormal eigenvectors (columns) of a
    dense symmetric matrix."""
    a = np.array(mat, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    n = a.shape[0]
    if n > MAX_DENSE_N:
        raise SizeError(f"dense eigensolver limited to n <= {MAX_DENSE_N}, got {n}")
    if n == 1:
        return np.array([a[0, 0]]), np.ones((1, 1))
    d, e = _tridiagonalize(a)
    zt = np.ascontiguousarray(a.T)
    status = _ql_implicit(d, e, zt)
    if status != 0:
        raise NumericalError("QL iteration failed to converge")
    order = np.argsort(d, kind="stable")
    return d[order], np.ascontiguousarray(zt[order].T)


def jacobi_eigh(mat, tol=1e-14, max_sweeps=60):
    """Cyclic Jacobi eigensolver.  Slow reference implementation for cross
    checks; limited to n <= 128."""
    a = np.array(mat, dtype=np.float64)
    n = a.shape[0]
    if n > 128:
        raise SizeError(f"jacobi reference solver limited to n <= 128, got {n}")
    v = np.eye(n)
    if n == 1:
        return np.array([a[0, 0]]), v
    scale = np.abs(a).max()
    if scale == 0.0:
        return np.zeros(n), v
    mask = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        off = math.sqrt((a[mask] ** 2).sum())
        if off <= tol * scale * n:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.hypot(t, 1.0)
                s = t * c
                rp = a[:, p].copy()
                rq = a[:, q].copy()
                a[:, p] = c * rp - s * rq
                a[:, q] = s * rp + c * rq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                vp = v[:, p].copy()
                v[:, p] = c * vp - s * v[:, q]
                v[:, q] = s * vp + c * v[:, q]
    else:
        raise NumericalError("Jacobi iteration did not converge")
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]
