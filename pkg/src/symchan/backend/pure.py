"""Pure-numpy backend for the hot kernels.

Same algorithms as the compiled backend (`_kernels.pyx`): scaling-and-squaring
with a degree-13 Pade approximant for the matrix exponential, and a cyclic
complex Jacobi sweep for the Hermitian eigenproblem. Kept in lockstep so the
two backends are interchangeable and benchmarkable against each other.
"""

import math

import numpy as np

NAME = "pure"

# Degree-13 Pade coefficients for exp(x) (numerator; denominator uses the
# same coefficients with alternating signs via V -/+ U).
_PADE13 = (
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
)
_THETA13 = 4.25  # scaling threshold for the degree-13 approximant


def expm(a):
    """Matrix exponential of a dense complex square matrix."""
    a = np.asarray(a, dtype=np.complex128)
    n = a.shape[0]
    norm1 = np.max(np.sum(np.abs(a), axis=0)) if n else 0.0
    if not np.isfinite(norm1):
        raise ArithmeticError("matrix norm is not finite")
    squarings = 0
    if norm1 > _THETA13:
        squarings = max(0, int(math.ceil(math.log2(norm1 / _THETA13))))
    scaled = a / (2.0**squarings)

    b = _PADE13
    ident = np.eye(n, dtype=np.complex128)
    a2 = scaled @ scaled
    a4 = a2 @ a2
    a6 = a2 @ a4
    u = scaled @ (
        a6 @ (b[13] * a6 + b[11] * a4 + b[9] * a2)
        + b[7] * a6
        + b[5] * a4
        + b[3] * a2
        + b[1] * ident
    )
    v = (
        a6 @ (b[12] * a6 + b[10] * a4 + b[8] * a2)
        + b[6] * a6
        + b[4] * a4
        + b[2] * a2
        + b[0] * ident
    )
    result = np.linalg.solve(v - u, v + u)
    for _ in range(squarings):
        result = result @ result
    if not np.all(np.isfinite(result)):
        raise ArithmeticError("matrix exponential overflowed")
    return result


def eigh(a, max_sweeps=60):
    """Cyclic Jacobi diagonalization of a complex Hermitian matrix.

    Returns (eigenvalues ascending, eigenvector columns, converged, sweeps).
    The caller is responsible for checking `converged`.
    """
    a = np.array(a, dtype=np.complex128)
    n = a.shape[0]
    vecs = np.eye(n, dtype=np.complex128)
    scale = float(np.linalg.norm(a))
    if scale == 0.0 or n < 2:
        return np.diag(a).real.copy(), vecs, True, 0

    stop = 1e-14 * scale
    sweeps = 0
    converged = False
    for sweeps in range(1, max_sweeps + 1):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= stop:
            converged = True
            sweeps -= 1
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(a, vecs, p, q, stop / n)
        scale = float(np.linalg.norm(a))
    else:
        converged = float(np.linalg.norm(a - np.diag(np.diag(a)))) <= stop

    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], vecs[:, order], converged, sweeps


def _rotate(a, vecs, p, q, skip_below):
    """Apply one unitary Jacobi rotation zeroing a[p, q] in place."""
    apq = a[p, q]
    absb = abs(apq)
    if absb <= skip_below:
        return
    phase = apq / absb
    app = a[p, p].real
    aqq = a[q, q].real
    theta = (aqq - app) / (2.0 * absb)
    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
    if theta < 0.0:
        t = -t
    c = 1.0 / math.sqrt(t * t + 1.0)
    s = t * c

    # Column update A <- A R, with R nontrivial only on (p, q):
    # R[p,p] = c*phase, R[q,p] = -s, R[p,q] = s*phase, R[q,q] = c.
    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = col_p * (c * phase) - col_q * s
    a[:, q] = col_p * (s * phase) + col_q * c
    # Row update A <- R^dag A.
    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = row_p * np.conj(c * phase) - row_q * s
    a[q, :] = row_p * np.conj(s * phase) + row_q * c
    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real

    col_p = vecs[:, p].copy()
    col_q = vecs[:, q].copy()
    vecs[:, p] = col_p * (c * phase) - col_q * s
    vecs[:, q] = col_p * (s * phase) + col_q * c
