"""Dense complex linear algebra used by every other module.

All routines accept and return plain :class:`numpy.ndarray` objects of
complex dtype.  Vectors are 1-D, matrices are 2-D.  Nothing here mutates
its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, NumericalError, ParameterError

JACOBI_MAX_SWEEPS = 100
JACOBI_TOL = 1e-12


# ---------------------------------------------------------------------------
# Validation helpers
# ---------------------------------------------------------------------------


def as_vector(x, name="vector"):
    """Return ``x`` as a finite complex 1-D array."""
    v = np.asarray(x, dtype=complex)
    if v.ndim != 1 or v.size < 1:
        raise DimensionError(f"{name} must be a non-empty 1-D array, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ParameterError(f"{name} has non-finite entries")
    return v


def as_matrix(a, name="matrix"):
    """Return ``a`` as a finite complex 2-D array."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.size < 1:
        raise DimensionError(f"{name} must be a non-empty 2-D array, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ParameterError(f"{name} has non-finite entries")
    return m


def _square(a, name):
    m = as_matrix(a, name)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {m.shape}")
    return m


def _hermitian(a, name="A"):
    m = _square(a, name)
    scale = np.linalg.norm(m)
    if np.linalg.norm(m - m.conj().T) > 1e-8 * scale:
        raise ParameterError(f"{name} is not Hermitian")
    return 0.5 * (m + m.conj().T), scale


# ---------------------------------------------------------------------------
# Products
# ---------------------------------------------------------------------------


def hermitian_transpose(a):
    return as_matrix(a).conj().T


def matmul(a, b):
    a = as_matrix(a, "A")
    b = as_matrix(b, "B")
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def gemv(a, x):
    a = as_matrix(a, "A")
    x = as_vector(x, "x")
    if a.shape[1] != x.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by vector of length {x.shape[0]}")
    return a @ x


def inner(x, y):
    """Return ``x^H y`` (conjugate-linear in ``x``)."""
    x = as_vector(x, "x")
    y = as_vector(y, "y")
    if x.shape != y.shape:
        raise DimensionError(f"length mismatch {x.shape[0]} vs {y.shape[0]}")
    return complex(np.vdot(x, y))


def norm2(x):
    return float(np.linalg.norm(as_vector(x)))


# ---------------------------------------------------------------------------
# Hermitian eigendecomposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HermEvd:
    """Eigenpairs of a Hermitian matrix.

    ``values`` are real and sorted non-increasing; ``vectors[:, i]`` is the
    unit eigenvector for ``values[i]`` with its largest-magnitude entry made
    real and positive.
    """

    values: np.ndarray
    vectors: np.ndarray
    sweeps: int = 0

    def reconstruct(self):
        return (self.vectors * self.values) @ self.vectors.conj().T

    def numerical_rank(self, rtol=None, scale=0.0):
        cut = _cutoff(self.values, self.vectors.shape[0], rtol, scale)
        return int(np.count_nonzero(self.values > cut))


def _cutoff(values, n, rtol, scale=0.0):
    lam_max = max(float(values[0]), 0.0) if values.size else 0.0
    if rtol is None:
        rtol = n * np.finfo(float).eps
    return rtol * max(lam_max, scale)


def _round_robin(n):
    """Yield disjoint index-pair rounds covering every pair once per sweep."""
    m = n + (n % 2)
    players = list(range(m))
    for _ in range(m - 1):
        half = m // 2
        p = np.array(players[:half])
        q = np.array(players[half:][::-1])
        keep = (p < n) & (q < n)
        p, q = p[keep], q[keep]
        lo, hi = np.minimum(p, q), np.maximum(p, q)
        yield lo, hi
        players = [players[0], players[-1]] + players[1:-1]


def jacobi_eigh(a, tol=JACOBI_TOL, max_sweeps=JACOBI_MAX_SWEEPS):
    """Cyclic Jacobi eigensolver for a Hermitian matrix.

    Each sweep visits every off-diagonal pair once, in round-robin order so
    that the ``n // 2`` rotations of one round touch disjoint rows and can be
    applied together.

    Returns
    -------
    values : ndarray, unsorted real eigenvalues
    vectors : ndarray, unitary matrix of eigenvectors
    sweeps : int, number of sweeps performed

    Raises
    ------
    NumericalError
        If the off-diagonal norm does not fall below ``tol * ||A||_F``
        within ``max_sweeps`` sweeps.
    """
    a = np.array(a, dtype=complex)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    threshold = tol * np.linalg.norm(a)
    if n == 1 or threshold == 0.0:
        return a.diagonal().real.copy(), v, 0

    rounds = list(_round_robin(n))
    offdiag = ~np.eye(n, dtype=bool)
    for sweep in range(1, max_sweeps + 1):
        for p, q in rounds:
            apq = a[p, q]
            mag = np.abs(apq)
            active = mag > 1e-300
            if not np.any(active):
                continue
            p, q, apq, mag = p[active], q[active], apq[active], mag[active]
            app = a[p, p].real
            aqq = a[q, q].real
            tau = (aqq - app) / (2.0 * mag)
            t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            u = np.conj(apq) / mag  # e^{-i arg(a_pq)}

            # A <- A J with J = [[c, s], [-s u, c u]] on each (p, q) pair
            colp, colq = a[:, p], a[:, q]
            a[:, p] = c * colp - (s * u) * colq
            a[:, q] = s * colp + (c * u) * colq
            # A <- J^H A
            rowp, rowq = a[p, :], a[q, :]
            uc = np.conj(u)
            a[p, :] = c[:, None] * rowp - (s * uc)[:, None] * rowq
            a[q, :] = s[:, None] * rowp + (c * uc)[:, None] * rowq
            a[p, q] = 0.0
            a[q, p] = 0.0

            vp, vq = v[:, p], v[:, q]
            v[:, p] = c * vp - (s * u) * vq
            v[:, q] = s * vp + (c * u) * vq
        if np.linalg.norm(a[offdiag]) <= threshold:
            return a.diagonal().real.copy(), v, sweep
    raise NumericalError(
        f"Jacobi eigensolver did not converge in {max_sweeps} sweeps", iterations=max_sweeps
    )


def _canonical(values, vectors):
    order = np.argsort(-values, kind="stable")
    values = values[order]
    vectors = vectors[:, order]
    idx = np.argmax(np.abs(vectors), axis=0)
    pivot = vectors[idx, np.arange(vectors.shape[1])]
    vectors = vectors * (np.abs(pivot) / pivot)
    return values, vectors


def herm_evd(a, method="lapack"):
    """Eigendecomposition of a Hermitian matrix.

    Parameters
    ----------
    a : array_like, shape (n, n)
        Hermitian up to ``1e-8 * ||a||``; symmetrized before use.
    method : {"lapack", "jacobi"}
        ``"jacobi"`` runs :func:`jacobi_eigh`; ``"lapack"`` calls
        :func:`numpy.linalg.eigh`.  Both results are brought to the same
        ordering and phase convention.

    Returns
    -------
    HermEvd
    """
    h, _ = _hermitian(a)
    if method == "jacobi":
        values, vectors, sweeps = jacobi_eigh(h)
    elif method == "lapack":
        values, vectors = np.linalg.eigh(h)
        sweeps = 0
    else:
        raise ParameterError(f"unknown eigensolver {method!r}")
    values, vectors = _canonical(values, vectors)
    return HermEvd(values, vectors, sweeps)


def pinv_psd(a, rtol=None, evd=None, scale=0.0):
    """Moore-Penrose pseudoinverse of a Hermitian positive semidefinite matrix.

    Eigenvalues above ``rtol * max(lambda_max, scale)`` are inverted, the
    rest are zeroed.  ``rtol`` defaults to ``n * eps``.  ``scale`` sets an
    absolute reference for matrices that may be pure round-off, such as a
    Gram matrix of data lying along the projected-out direction.  A
    precomputed ``evd`` of ``a`` may be passed to skip the decomposition.
    """
    if evd is None:
        evd = herm_evd(a)
    values = evd.values
    keep = values > _cutoff(values, evd.vectors.shape[0], rtol, scale)
    vk = evd.vectors[:, keep]
    return (vk / values[keep]) @ vk.conj().T


def solve_hpd(a, b):
    """Solve ``a x = b`` for Hermitian positive definite ``a`` by Cholesky."""
    from scipy.linalg import LinAlgError, cho_factor, cho_solve

    h, _ = _hermitian(a)
    try:
        factor = cho_factor(h, lower=True, check_finite=False)
    except LinAlgError as exc:
        raise ParameterError("matrix is not positive definite") from exc
    return cho_solve(factor, np.asarray(b, dtype=complex), check_finite=False)
