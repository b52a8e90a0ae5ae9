"""Dense ``N x N`` reference implementations.

These are the textbook full-dimensional forms: they build the sample
covariance and the orthogonal projector explicitly.  They exist to check
the Gram-matrix routes in :mod:`beamkit.beamformers` and to time the
conventional algorithms in benchmarks.  They are deliberately independent
of :mod:`beamkit.numerics` and call LAPACK directly.
"""

import numpy as np

# relative cutoff for the dense pseudoinverses; rank-deficient SCMs at L < N
# carry round-off eigenvalues far above machine epsilon
RCOND = 1e-10


def projector(s):
    s = np.asarray(s, dtype=complex)
    return np.eye(s.shape[0]) - np.outer(s, s.conj())


def scm(x):
    x = np.asarray(x, dtype=complex)
    return x @ x.conj().T / x.shape[1]


def _normalize(w, s):
    return w / np.conj(np.vdot(w, s))


def smi_dense(x, s):
    """``pinv(X X^H / L) s`` from the explicit sample covariance."""
    r = scm(x)
    return _normalize(np.linalg.pinv(r, rcond=RCOND, hermitian=True) @ s, s)


def lsmi_dense(x, s, loading):
    r = scm(x) + loading * np.eye(len(s))
    return _normalize(np.linalg.solve(r, s), s)


def eigenspace_dense(x, s, r):
    """SMI weight projected onto the ``r`` dominant SCM eigenvectors."""
    cov = scm(x)
    vals, vecs = np.linalg.eigh(cov)
    e = vecs[:, np.argsort(vals)[::-1][:r]]
    w = e @ (e.conj().T @ (np.linalg.pinv(cov, rcond=RCOND, hermitian=True) @ s))
    return _normalize(w, s)


def kernel_dense(x, s, m=None):
    """Kernel weight via the explicit projector and a dense pseudoinverse."""
    x = np.asarray(x, dtype=complex)
    p = projector(s)
    r_hat = x.conj().T @ p @ x
    if m is None:
        beta = -np.linalg.pinv(r_hat, rcond=RCOND, hermitian=True) @ (x.conj().T @ s)
    else:
        vals, vecs = np.linalg.eigh(r_hat)
        order = np.argsort(vals)[::-1][:m]
        v = vecs[:, order]
        beta = -v @ np.diag(1.0 / vals[order]) @ v.conj().T @ (x.conj().T @ s)
    return s + p @ x @ beta


def mvdr_dense(r_true, s):
    return _normalize(np.linalg.solve(r_true, s), s)
