"""Adaptive weight computation.

Every data-driven beamformer here works on ``L x L`` Gram matrices built
from the ``N x L`` snapshot matrix; no ``N x N`` matrix is ever formed
outside :func:`mvdr_optimal`, which takes the true covariance as input.
Dense ``N x N`` counterparts of each method live in
:mod:`beamkit.reference` for testing and timing comparisons.

All returned weights are scaled so that ``w^H s = 1`` unless that gain is
numerically zero, in which case the raw weight is returned with
``degenerate=True``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from .errors import DimensionError, ParameterError, RankError
from .metrics import mdn_estimate
from .numerics import HermEvd, as_vector, herm_evd, pinv_psd, solve_hpd
from .scenario import DataMatrix

DEGENERATE_GAIN = 1e-12


@dataclass(frozen=True)
class WeightVector:
    w: np.ndarray
    method: str
    rank_used: Optional[int] = None
    wall_time: float = 0.0
    mdn: Optional[float] = None
    degenerate: bool = False


@dataclass(frozen=True)
class GramMatrix:
    """Projected Gram matrix ``X^H P X`` with its eigendecomposition cached.

    ``scale`` is the energy ``||X||_F^2`` of the unprojected data; rank
    decisions are taken relative to it so that a Gram matrix made only of
    round-off (data along the look direction) counts as rank zero.
    """

    r_hat: np.ndarray
    scale: float = 0.0

    @cached_property
    def evd(self) -> HermEvd:
        return herm_evd(self.r_hat)

    def numerical_rank(self, rtol=None):
        return self.evd.numerical_rank(rtol, self.scale)


def _data(x):
    return x.x if isinstance(x, DataMatrix) else DataMatrix(x).x


def _unit_steering(s, n=None):
    s = as_vector(s, "steering vector")
    if abs(np.linalg.norm(s) - 1.0) > 1e-10:
        raise ParameterError("steering vector must have unit norm")
    if n is not None and s.shape[0] != n:
        raise DimensionError(f"steering vector has length {s.shape[0]}, data has N={n}")
    return s


def _distortionless(w, s, method, rank_used, t0, n, l, order=0, mdn_tag=None):
    gain = np.vdot(w, s)
    norm = np.linalg.norm(w)
    degenerate = bool(norm == 0.0 or abs(gain) <= DEGENERATE_GAIN * norm)
    if not degenerate:
        w = w / np.conj(gain)
    return WeightVector(
        w=w,
        method=method,
        rank_used=rank_used,
        wall_time=time.perf_counter() - t0,
        mdn=mdn_estimate(mdn_tag or method, n, l, order),
        degenerate=degenerate,
    )


def projector_apply(s, y):
    """Apply ``I - s s^H`` to ``y`` (a vector or the columns of a matrix)."""
    s = _unit_steering(s)
    y = np.asarray(y, dtype=complex)
    if y.shape[0] != s.shape[0]:
        raise DimensionError(f"cannot project length-{y.shape[0]} data onto length-{s.shape[0]} steering")
    if y.ndim == 1:
        return y - s * np.vdot(s, y)
    return y - np.outer(s, s.conj() @ y)


def gram(x, s):
    """Gram matrix of the steering-projected snapshots."""
    x = _data(x)
    s = _unit_steering(s, x.shape[0])
    x_hat = projector_apply(s, x)
    r_hat = x_hat.conj().T @ x_hat
    return GramMatrix(0.5 * (r_hat + r_hat.conj().T), float(np.linalg.norm(x) ** 2))


def _r_hat(r_hat):
    return r_hat if isinstance(r_hat, GramMatrix) else GramMatrix(np.asarray(r_hat, dtype=complex))


def kernel_beta_full(r_hat, x, s, rtol=None):
    """Minimum-norm combination vector ``-pinv(R_hat) X^H s``."""
    r_hat = _r_hat(r_hat)
    x = _data(x)
    if r_hat.r_hat.shape != (x.shape[1], x.shape[1]):
        raise DimensionError("Gram matrix does not match the data matrix")
    return -pinv_psd(r_hat.r_hat, rtol=rtol, evd=r_hat.evd, scale=r_hat.scale) @ (x.conj().T @ s)


def kernel_beta_truncated(r_hat, x, s, m, rtol=None):
    """Combination vector restricted to the ``m`` dominant eigenpairs of ``R_hat``.

    Raises
    ------
    ParameterError
        If ``m`` is outside ``[1, L]``.
    RankError
        If ``m`` exceeds the numerical rank of ``R_hat``.
    """
    r_hat = _r_hat(r_hat)
    x = _data(x)
    l = x.shape[1]
    if int(m) != m or not 1 <= m <= l:
        raise ParameterError(f"truncation order must be in [1, {l}], got {m}")
    m = int(m)
    evd = r_hat.evd
    rank = r_hat.numerical_rank(rtol)
    if m > rank:
        raise RankError(m, rank, "Gram matrix")
    v = evd.vectors[:, :m]
    return -v @ ((v.conj().T @ (x.conj().T @ s)) / evd.values[:m])


def kernel_weight(x, s, beta):
    """``w = s + P (X beta)``; distortionless by construction."""
    x = _data(x)
    s = _unit_steering(s, x.shape[0])
    beta = as_vector(beta, "beta")
    if beta.shape[0] != x.shape[1]:
        raise DimensionError(f"beta has length {beta.shape[0]}, data has L={x.shape[1]}")
    return s + projector_apply(s, x @ beta)


def kernel_beamformer(x, s, m_opt=None, rtol=None):
    """Kernel-method MVDR weight from training data.

    Parameters
    ----------
    x : DataMatrix or array_like, shape (N, L)
    s : array_like, shape (N,)
        Unit-norm steering vector of the desired source.
    m_opt : int, "auto" or None
        Number of dominant Gram eigenpairs kept in the combination vector.
        ``None`` uses the full pseudoinverse; ``"auto"`` keeps every
        eigenvalue above the numerical-rank cutoff ``rtol * lambda_max``.

    Returns
    -------
    WeightVector
    """
    t0 = time.perf_counter()
    x = _data(x)
    n, l = x.shape
    s = _unit_steering(s, n)
    r_hat = gram(x, s)
    if m_opt is None:
        beta = kernel_beta_full(r_hat, x, s, rtol)
        rank_used = r_hat.numerical_rank(rtol)
    else:
        if m_opt == "auto":
            m_opt = max(r_hat.numerical_rank(rtol), 1)
        beta = kernel_beta_truncated(r_hat, x, s, m_opt, rtol)
        rank_used = int(m_opt)
    w = kernel_weight(x, s, beta)
    return _distortionless(w, s, "kernel", rank_used, t0, n, l)


def mvdr_optimal(r_true, s):
    """Optimal weight ``R^{-1} s`` from the true interference-plus-noise covariance."""
    t0 = time.perf_counter()
    s = _unit_steering(s)
    r_true = np.asarray(r_true, dtype=complex)
    if r_true.shape != (s.shape[0], s.shape[0]):
        raise DimensionError(f"covariance shape {r_true.shape} does not match N={s.shape[0]}")
    w = solve_hpd(r_true, s)
    return _distortionless(w, s, "optimal", s.shape[0], t0, s.shape[0], 0)


def _gram_spectrum(x):
    g = x.conj().T @ x
    return herm_evd(0.5 * (g + g.conj().T))


def smi(x, s, rtol=None):
    """Pseudoinverse sample-matrix-inversion weight ``pinv(X X^H / L) s``.

    With ``X^H X = V S V^H`` the product is ``L X V S^-2 V^H X^H s``.
    """
    t0 = time.perf_counter()
    x = _data(x)
    n, l = x.shape
    s = _unit_steering(s, n)
    evd = _gram_spectrum(x)
    rank = evd.numerical_rank(rtol)
    v = evd.vectors[:, :rank]
    coeff = (v.conj().T @ (x.conj().T @ s)) / evd.values[:rank] ** 2
    w = l * (x @ (v @ coeff))
    return _distortionless(w, s, "smi", rank, t0, n, l, mdn_tag="smi_gram")


def lsmi(x, s, loading=10.0):
    """Diagonally loaded SMI weight ``(X X^H / L + loading I)^{-1} s``.

    Uses the Woodbury identity so only an ``L x L`` system is solved.
    """
    t0 = time.perf_counter()
    if not loading > 0:
        raise ParameterError(f"diagonal loading must be positive, got {loading}")
    x = _data(x)
    n, l = x.shape
    s = _unit_steering(s, n)
    g = x.conj().T @ x
    y = solve_hpd(loading * l * np.eye(l) + g, x.conj().T @ s)
    w = (s - x @ y) / loading
    return _distortionless(w, s, "lsmi", l, t0, n, l)


def eigenspace(x, s, r, rtol=None):
    """SMI weight projected onto the ``r`` dominant eigenvectors of the SCM.

    This reduces to ``L X V_r S_r^-2 V_r^H X^H s`` on the Gram spectrum.
    """
    t0 = time.perf_counter()
    x = _data(x)
    n, l = x.shape
    s = _unit_steering(s, n)
    if int(r) != r or not 1 <= r <= min(n, l):
        raise ParameterError(f"subspace dimension must be in [1, {min(n, l)}], got {r}")
    r = int(r)
    evd = _gram_spectrum(x)
    rank = evd.numerical_rank(rtol)
    if r > rank:
        raise RankError(r, rank, "sample covariance")
    v = evd.vectors[:, :r]
    coeff = (v.conj().T @ (x.conj().T @ s)) / evd.values[:r] ** 2
    w = l * (x @ (v @ coeff))
    return _distortionless(w, s, "eigenspace", r, t0, n, l, order=r)
