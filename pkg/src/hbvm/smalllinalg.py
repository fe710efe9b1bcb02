"""Dense kernels for the small matrices that show up in tableau work.

Everything here is written for dimensions up to a few dozen. Matrices are
plain two-dimensional float ``numpy`` arrays; eigenvalues come back as a
complex ``numpy`` array.
"""

import math

import numpy as np

PIVOT_TOL = 1e-13
QR_ITER_FACTOR = 100


class SingularMatrixError(ArithmeticError):
    pass


class EigenvalueConvergenceError(ArithmeticError):
    pass


def as_matrix(a):
    m = np.array(a, dtype=float)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def identity(n):
    return np.eye(n)


def mat_mul(a, b):
    """Matrix product accumulated row by row in a fixed order."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} x {b.shape}")
    out = np.zeros((a.shape[0], b.shape[1]))
    for i in range(a.shape[0]):
        row = out[i]
        for p in range(a.shape[1]):
            row += a[i, p] * b[p]
    return out


def norm_inf(a):
    a = np.asarray(a, dtype=float)
    if a.size == 0:
        return 0.0
    if a.ndim == 1:
        return float(np.max(np.abs(a)))
    return float(np.max(np.sum(np.abs(a), axis=1)))


def lu_factor(a):
    """LU factorisation with partial pivoting.

    Returns ``(lu, perm, sign)`` where ``lu`` packs the unit lower and the
    upper factor, ``perm`` is the row permutation and ``sign`` its parity.
    Raises :class:`SingularMatrixError` when a pivot falls below
    ``PIVOT_TOL`` times the largest entry of ``a``.
    """
    lu = as_matrix(a).copy()
    n, ncols = lu.shape
    if n != ncols:
        raise ValueError(f"matrix must be square, got {lu.shape}")
    scale = float(np.max(np.abs(lu))) if n else 0.0
    perm = np.arange(n)
    sign = 1.0
    for k in range(n):
        piv = k + int(np.argmax(np.abs(lu[k:, k])))
        if abs(lu[piv, k]) < PIVOT_TOL * scale or scale == 0.0:
            raise SingularMatrixError(f"pivot {lu[piv, k]:.3e} in column {k} is below tolerance")
        if piv != k:
            lu[[k, piv]] = lu[[piv, k]]
            perm[[k, piv]] = perm[[piv, k]]
            sign = -sign
        lu[k + 1:, k] /= lu[k, k]
        lu[k + 1:, k + 1:] -= np.outer(lu[k + 1:, k], lu[k, k + 1:])
    return lu, perm, sign


def lu_solve(factors, rhs):
    lu, perm, _ = factors
    x = np.array(rhs, dtype=float)[perm]
    n = lu.shape[0]
    for i in range(n):
        x[i] -= lu[i, :i] @ x[:i]
    for i in range(n - 1, -1, -1):
        x[i] = (x[i] - lu[i, i + 1:] @ x[i + 1:]) / lu[i, i]
    return x


def lin_solve(a, rhs):
    """Solve ``a @ x = rhs`` by LU with partial pivoting."""
    rhs = np.asarray(rhs, dtype=float)
    a = as_matrix(a)
    if rhs.shape[0] != a.shape[0]:
        raise ValueError(f"rhs length {rhs.shape[0]} does not match matrix of shape {a.shape}")
    return lu_solve(lu_factor(a), rhs)


def det(a):
    try:
        lu, _, sign = lu_factor(a)
    except SingularMatrixError:
        return 0.0
    return sign * float(np.prod(np.diag(lu)))


def hessenberg(a):
    """Reduce ``a`` to upper Hessenberg form by Householder similarity."""
    h = as_matrix(a).copy()
    n = h.shape[0]
    if n != h.shape[1]:
        raise ValueError(f"matrix must be square, got {h.shape}")
    for k in range(n - 2):
        x = h[k + 1:, k].copy()
        alpha = math.sqrt(float(x @ x))
        if alpha == 0.0:
            continue
        if x[0] > 0:
            alpha = -alpha
        v = x
        v[0] -= alpha
        vnorm2 = float(v @ v)
        if vnorm2 == 0.0:
            continue
        beta = 2.0 / vnorm2
        h[k + 1:, k:] -= beta * np.outer(v, v @ h[k + 1:, k:])
        h[:, k + 1:] -= beta * np.outer(h[:, k + 1:] @ v, v)
        h[k + 2:, k] = 0.0
    return h


def _hqr(h):
    """Eigenvalues of an upper Hessenberg matrix by Francis double-shift QR.

    Works in place on a 1-based padded copy so the index bookkeeping stays
    close to the classical EISPACK formulation.
    """
    n = h.shape[0]
    a = np.zeros((n + 1, n + 1))
    a[1:, 1:] = h
    wr = np.zeros(n + 1)
    wi = np.zeros(n + 1)

    anorm = 0.0
    for i in range(1, n + 1):
        for j in range(max(i - 1, 1), n + 1):
            anorm += abs(a[i, j])

    budget = QR_ITER_FACTOR * n
    total = 0
    nn = n
    t = 0.0
    while nn >= 1:
        its = 0
        while True:
            l = 1
            for ll in range(nn, 1, -1):
                s = abs(a[ll - 1, ll - 1]) + abs(a[ll, ll])
                if s == 0.0:
                    s = anorm
                if abs(a[ll, ll - 1]) + s == s:
                    a[ll, ll - 1] = 0.0
                    l = ll
                    break
            x = a[nn, nn]
            if l == nn:
                wr[nn] = x + t
                wi[nn] = 0.0
                nn -= 1
                break
            y = a[nn - 1, nn - 1]
            w = a[nn, nn - 1] * a[nn - 1, nn]
            if l == nn - 1:
                p = 0.5 * (y - x)
                q = p * p + w
                z = math.sqrt(abs(q))
                x += t
                if q >= 0.0:
                    z = p + math.copysign(z, p)
                    wr[nn - 1] = wr[nn] = x + z
                    if z != 0.0:
                        wr[nn] = x - w / z
                    wi[nn - 1] = wi[nn] = 0.0
                else:
                    wr[nn - 1] = wr[nn] = x + p
                    wi[nn - 1] = z
                    wi[nn] = -z
                nn -= 2
                break

            if total >= budget:
                raise EigenvalueConvergenceError(
                    f"QR iteration did not converge within {budget} iterations")
            if its > 0 and its % 10 == 0:
                # exceptional shift
                t += x
                for i in range(1, nn + 1):
                    a[i, i] -= x
                s = abs(a[nn, nn - 1]) + abs(a[nn - 1, nn - 2])
                x = y = 0.75 * s
                w = -0.4375 * s * s
            its += 1
            total += 1

            m = nn - 2
            while m >= l:
                z = a[m, m]
                r = x - z
                s = y - z
                p = (r * s - w) / a[m + 1, m] + a[m, m + 1]
                q = a[m + 1, m + 1] - z - r - s
                r = a[m + 2, m + 1]
                s = abs(p) + abs(q) + abs(r)
                p /= s
                q /= s
                r /= s
                if m == l:
                    break
                u = abs(a[m, m - 1]) * (abs(q) + abs(r))
                v = abs(p) * (abs(a[m - 1, m - 1]) + abs(z) + abs(a[m + 1, m + 1]))
                if u + v == v:
                    break
                m -= 1

            for i in range(m + 2, nn + 1):
                a[i, i - 2] = 0.0
                if i != m + 2:
                    a[i, i - 3] = 0.0

            for k in range(m, nn):
                if k != m:
                    p = a[k, k - 1]
                    q = a[k + 1, k - 1]
                    r = a[k + 2, k - 1] if k != nn - 1 else 0.0
                    x = abs(p) + abs(q) + abs(r)
                    if x != 0.0:
                        p /= x
                        q /= x
                        r /= x
                s = math.copysign(math.sqrt(p * p + q * q + r * r), p)
                if s == 0.0:
                    continue
                if k == m:
                    if l != m:
                        a[k, k - 1] = -a[k, k - 1]
                else:
                    a[k, k - 1] = -s * x
                p += s
                x = p / s
                y = q / s
                z = r / s
                q /= p
                r /= p
                for j in range(k, nn + 1):
                    p = a[k, j] + q * a[k + 1, j]
                    if k != nn - 1:
                        p += r * a[k + 2, j]
                        a[k + 2, j] -= p * z
                    a[k + 1, j] -= p * y
                    a[k, j] -= p * x
                mmin = min(nn, k + 3)
                for i in range(l, mmin + 1):
                    p = x * a[i, k] + y * a[i, k + 1]
                    if k != nn - 1:
                        p += z * a[i, k + 2]
                        a[i, k + 2] -= p * r
                    a[i, k + 1] -= p * q
                    a[i, k] -= p
    return wr[1:] + 1j * wi[1:]


def sort_eigenvalues(values):
    """Deterministic order: real part descending, then imaginary part descending."""
    values = np.asarray(values, dtype=complex)
    order = np.lexsort((-values.imag, -values.real))
    return values[order]


def eigenvalues(a):
    """All eigenvalues of a small real square matrix, with multiplicity.

    Hessenberg reduction followed by shifted QR iteration.

    Parameters
    ----------
    a : array_like, shape (n, n)
        Real matrix with ``n <= 64``.

    Returns
    -------
    numpy.ndarray of complex
        Sorted by real part then imaginary part, both descending.
    """
    a = as_matrix(a)
    n = a.shape[0]
    if n != a.shape[1]:
        raise ValueError(f"matrix must be square, got {a.shape}")
    if n > 64:
        raise ValueError(f"dimension {n} exceeds the supported maximum of 64")
    if n == 0:
        return np.zeros(0, dtype=complex)
    return sort_eigenvalues(_hqr(hessenberg(a)))
