# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled backend for the hot kernels.

Mirrors `pure.py` operation for operation: degree-13 Pade scaling-and-squaring
for the matrix exponential and cyclic complex Jacobi sweeps for the Hermitian
eigenproblem, written as explicit loops over typed memoryviews.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport ceil, fabs, log2, sqrt

NAME = "compiled"

cdef double[14] _PADE13
_PADE13[0] = 64764752532480000.0
_PADE13[1] = 32382376266240000.0
_PADE13[2] = 7771770303897600.0
_PADE13[3] = 1187353796428800.0
_PADE13[4] = 129060195264000.0
_PADE13[5] = 10559470521600.0
_PADE13[6] = 670442572800.0
_PADE13[7] = 33522128640.0
_PADE13[8] = 1323241920.0
_PADE13[9] = 40840800.0
_PADE13[10] = 960960.0
_PADE13[11] = 16380.0
_PADE13[12] = 182.0
_PADE13[13] = 1.0

cdef double _THETA13 = 4.25


cdef void _gemm(double complex[:, :] a, double complex[:, :] b,
                double complex[:, :] out, Py_ssize_t n) noexcept:
    cdef Py_ssize_t i, j, k
    cdef double complex acc
    for i in range(n):
        for j in range(n):
            acc = 0
            for k in range(n):
                acc = acc + a[i, k] * b[k, j]
            out[i, j] = acc


cdef double _norm1(double complex[:, :] a, Py_ssize_t n) noexcept:
    cdef Py_ssize_t i, j
    cdef double colsum, best = 0.0
    for j in range(n):
        colsum = 0.0
        for i in range(n):
            colsum += abs(a[i, j])
        if colsum > best:
            best = colsum
    return best


cdef int _solve_inplace(double complex[:, :] a, double complex[:, :] b,
                        Py_ssize_t n) except -1:
    """Solve a X = b with partial pivoting; a and b are destroyed, X in b."""
    cdef Py_ssize_t col, row, k, piv
    cdef double best, mag
    cdef double complex factor, tmp
    for col in range(n):
        piv = col
        best = abs(a[col, col])
        for row in range(col + 1, n):
            mag = abs(a[row, col])
            if mag > best:
                best = mag
                piv = row
        if best == 0.0:
            raise ArithmeticError("singular Pade denominator")
        if piv != col:
            for k in range(n):
                tmp = a[col, k]
                a[col, k] = a[piv, k]
                a[piv, k] = tmp
                tmp = b[col, k]
                b[col, k] = b[piv, k]
                b[piv, k] = tmp
        for row in range(col + 1, n):
            factor = a[row, col] / a[col, col]
            if factor != 0:
                for k in range(col, n):
                    a[row, k] = a[row, k] - factor * a[col, k]
                for k in range(n):
                    b[row, k] = b[row, k] - factor * b[col, k]
    for col in range(n - 1, -1, -1):
        for row in range(col):
            factor = a[row, col] / a[col, col]
            if factor != 0:
                for k in range(n):
                    b[row, k] = b[row, k] - factor * b[col, k]
        factor = a[col, col]
        for k in range(n):
            b[col, k] = b[col, k] / factor
    return 0


def expm(a):
    """Matrix exponential of a dense complex square matrix."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] work = np.array(
        a, dtype=np.complex128, order="C")
    cdef Py_ssize_t n = work.shape[0], i, j
    cdef double norm1 = _norm1(work, n)
    if not np.isfinite(norm1):
        raise ArithmeticError("matrix norm is not finite")
    cdef int squarings = 0
    if norm1 > _THETA13:
        squarings = <int>ceil(log2(norm1 / _THETA13))
        if squarings < 0:
            squarings = 0
    cdef double scale = 2.0 ** squarings
    for i in range(n):
        for j in range(n):
            work[i, j] = work[i, j] / scale

    cdef cnp.ndarray[cnp.complex128_t, ndim=2] a2 = np.empty((n, n), np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] a4 = np.empty((n, n), np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] a6 = np.empty((n, n), np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] u = np.empty((n, n), np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] v = np.empty((n, n), np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] w1 = np.empty((n, n), np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] w2 = np.empty((n, n), np.complex128)
    cdef double* b = _PADE13

    _gemm(work, work, a2, n)
    _gemm(a2, a2, a4, n)
    _gemm(a2, a4, a6, n)

    for i in range(n):
        for j in range(n):
            w1[i, j] = b[13] * a6[i, j] + b[11] * a4[i, j] + b[9] * a2[i, j]
    _gemm(a6, w1, w2, n)
    for i in range(n):
        for j in range(n):
            w2[i, j] = w2[i, j] + b[7] * a6[i, j] + b[5] * a4[i, j] + b[3] * a2[i, j]
        w2[i, i] = w2[i, i] + b[1]
    _gemm(work, w2, u, n)

    for i in range(n):
        for j in range(n):
            w1[i, j] = b[12] * a6[i, j] + b[10] * a4[i, j] + b[8] * a2[i, j]
    _gemm(a6, w1, v, n)
    for i in range(n):
        for j in range(n):
            v[i, j] = v[i, j] + b[6] * a6[i, j] + b[4] * a4[i, j] + b[2] * a2[i, j]
        v[i, i] = v[i, i] + b[0]

    # (V - U) R = (V + U); reuse w1/w2 as the system and the solution.
    for i in range(n):
        for j in range(n):
            w1[i, j] = v[i, j] - u[i, j]
            w2[i, j] = v[i, j] + u[i, j]
    _solve_inplace(w1, w2, n)

    cdef int step
    for step in range(squarings):
        _gemm(w2, w2, w1, n)
        w2, w1 = w1, w2
    if not np.all(np.isfinite(w2)):
        raise ArithmeticError("matrix exponential overflowed")
    return np.asarray(w2)


def eigh(a, int max_sweeps=60):
    """Cyclic Jacobi diagonalization of a complex Hermitian matrix.

    Returns (eigenvalues ascending, eigenvector columns, converged, sweeps).
    """
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] work = np.array(
        a, dtype=np.complex128, order="C")
    cdef Py_ssize_t n = work.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] vecs = np.eye(n, dtype=np.complex128)
    cdef double scale = _fronorm(work, n)
    if scale == 0.0 or n < 2:
        return np.diag(work).real.copy(), np.asarray(vecs), True, 0

    cdef double stop = 1e-14 * scale
    cdef double off
    cdef Py_ssize_t p, q
    cdef int sweeps = 0
    cdef bint converged = False
    for sweeps in range(1, max_sweeps + 1):
        off = _offnorm(work, n)
        if off <= stop:
            converged = True
            sweeps -= 1
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(work, vecs, p, q, n, stop / n)
        scale = _fronorm(work, n)
        stop = 1e-14 * scale
    if not converged:
        converged = _offnorm(work, n) <= stop

    w = np.diag(work).real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], np.asarray(vecs)[:, order], bool(converged), sweeps


cdef double _fronorm(double complex[:, :] a, Py_ssize_t n) noexcept:
    cdef Py_ssize_t i, j
    cdef double acc = 0.0, m
    for i in range(n):
        for j in range(n):
            m = abs(a[i, j])
            acc += m * m
    return sqrt(acc)


cdef double _offnorm(double complex[:, :] a, Py_ssize_t n) noexcept:
    cdef Py_ssize_t i, j
    cdef double acc = 0.0, m
    for i in range(n):
        for j in range(n):
            if i != j:
                m = abs(a[i, j])
                acc += m * m
    return sqrt(acc)


cdef void _rotate(double complex[:, :] a, double complex[:, :] vecs,
                  Py_ssize_t p, Py_ssize_t q, Py_ssize_t n,
                  double skip_below) noexcept:
    cdef double complex apq = a[p, q]
    cdef double absb = abs(apq)
    if absb <= skip_below:
        return
    cdef double complex phase = apq / absb
    cdef double app = a[p, p].real
    cdef double aqq = a[q, q].real
    cdef double theta = (aqq - app) / (2.0 * absb)
    cdef double t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
    if theta < 0.0:
        t = -t
    cdef double c = 1.0 / sqrt(t * t + 1.0)
    cdef double s = t * c
    cdef double complex cp = c * phase
    cdef double complex sp = s * phase
    cdef double complex cpc = cp.conjugate()
    cdef double complex spc = sp.conjugate()
    cdef double complex xp, xq
    cdef Py_ssize_t k

    for k in range(n):
        xp = a[k, p]
        xq = a[k, q]
        a[k, p] = xp * cp - xq * s
        a[k, q] = xp * sp + xq * c
    for k in range(n):
        xp = a[p, k]
        xq = a[q, k]
        a[p, k] = xp * cpc - xq * s
        a[q, k] = xp * spc + xq * c
    a[p, q] = 0
    a[q, p] = 0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real
    for k in range(n):
        xp = vecs[k, p]
        xq = vecs[k, q]
        vecs[k, p] = xp * cp - xq * s
        vecs[k, q] = xp * sp + xq * c
