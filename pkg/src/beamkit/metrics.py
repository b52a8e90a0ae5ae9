"""Beamformer quality and cost metrics.

Every quality metric is invariant to a complex rescaling of the weight, so
weights from different methods can be compared without normalizing them.
SINR values are always evaluated against the *true* interference-plus-noise
covariance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .numerics import solve_hpd
from .scenario import Ula, steering

LOSS_FLOOR = 1e-30


def _weights(w):
    return np.asarray(getattr(w, "w", w), dtype=complex)


@dataclass(frozen=True)
class SinrRecord:
    """Per-trial outcome for one method; ``loss_db = sinr_db - sinr_opt_db``."""

    sinr_db: float
    loss_db: float
    method: str = ""
    trial: int = 0

    @property
    def loss_linear(self):
        return 10.0 ** (self.loss_db / 10.0)


@dataclass(frozen=True)
class Beampattern:
    angles_deg: np.ndarray
    gain_db: np.ndarray


def output_sinr_linear(w, s, sigma_s2, r_true):
    w = _weights(w)
    denom = np.vdot(w, np.asarray(r_true) @ w).real
    if not denom > 0:
        raise ParameterError("output power is zero; weight vector must be non-zero")
    return sigma_s2 * abs(np.vdot(w, s)) ** 2 / denom


def output_sinr(w, s, sigma_s2, r_true):
    """Output SINR in dB, ``sigma_s^2 |w^H s|^2 / (w^H R w)``."""
    return float(10.0 * np.log10(max(output_sinr_linear(w, s, sigma_s2, r_true), LOSS_FLOOR)))


def sinr_opt_linear(s, sigma_s2, r_true):
    s = np.asarray(s, dtype=complex)
    return float(sigma_s2 * np.vdot(s, solve_hpd(r_true, s)).real)


def sinr_opt(s, sigma_s2, r_true):
    """Optimum SINR in dB, ``sigma_s^2 s^H R^{-1} s``."""
    return float(10.0 * np.log10(sinr_opt_linear(s, sigma_s2, r_true)))


def sinr_record(w, s, sigma_s2, r_true, sinr_opt_db, method="", trial=0):
    """Build a :class:`SinrRecord`; zero weights count as total loss."""
    w = _weights(w)
    if np.linalg.norm(w) == 0.0:
        value = LOSS_FLOOR * 10.0 ** (sinr_opt_db / 10.0)
    else:
        value = max(output_sinr_linear(w, s, sigma_s2, r_true), LOSS_FLOOR)
    sinr_db = float(10.0 * np.log10(value))
    return SinrRecord(sinr_db, sinr_db - sinr_opt_db, method, trial)


def sinr_loss_avg(records):
    """Averaged SINR loss in dB.

    The per-trial ratios ``SINR / SINR_opt`` are averaged in the linear
    domain and the mean is converted to dB.
    """
    records = list(records)
    if not records:
        raise ParameterError("cannot average an empty list of records")
    mean = np.mean([rec.loss_linear for rec in records])
    return float(10.0 * np.log10(mean))


def beampattern(w, array, grid, doa_deg):
    """Array response ``20 log10 |w^H s(theta)| / |w^H s(theta_s)|`` over ``grid``.

    Parameters
    ----------
    w : WeightVector or array_like
    array : Ula
    grid : array_like of angles in degrees, all within (-90, 90)
    doa_deg : float
        Look direction used as the 0 dB reference.
    """
    w = _weights(w)
    grid = np.asarray(grid, dtype=float)
    if np.any(np.abs(grid) >= 90.0):
        raise ParameterError("beampattern grid must lie inside (-90, 90) degrees")
    ref = abs(np.vdot(w, steering(array, doa_deg)))
    if ref <= 1e-12 * np.linalg.norm(w):
        raise ParameterError("weight has no response in the look direction")
    n = array.n_elements if isinstance(array, Ula) else int(array)
    k = np.arange(n)[:, None]
    a = np.exp(1j * np.pi * k * np.sin(np.deg2rad(grid))[None, :]) / np.sqrt(n)
    resp = np.abs(w.conj() @ a) / ref
    with np.errstate(divide="ignore"):
        gain = 20.0 * np.log10(resp)
    return Beampattern(grid, gain)


# (method tag) -> MDN formula in (n, l, order); order-level estimates only
_MDN = {
    "smi": lambda n, l, r: n * n * l + n ** 3,
    "kernel": lambda n, l, r: l * l * n + l ** 3 + l * n,
    "lsmi": lambda n, l, r: l * l * n + l ** 3 + l * n,
    "eigenspace": lambda n, l, r: l * l * n + l ** 3 + r * l * n,
    "smi_gram": lambda n, l, r: l * l * n + l ** 3 + l * n,
    "lsmi_full": lambda n, l, r: n * n * l + n ** 3,
    "eigenspace_full": lambda n, l, r: n * n * l + n ** 3,
    "optimal": lambda n, l, r: n ** 3,
}

MDN_METHODS = tuple(_MDN)


def mdn_estimate(method, n, l, m=0):
    """Multiplication/division count estimate for one weight computation.

    ``smi`` counts the conventional full-dimensional route (covariance
    estimate plus an ``N x N`` inversion); ``kernel``, ``lsmi`` and
    ``eigenspace`` count the Gram-matrix route; the ``*_full`` and
    ``*_gram`` tags name the other route of the same method.  ``m`` is the subspace
    dimension for ``eigenspace`` and is ignored otherwise.
    """
    try:
        formula = _MDN[method]
    except KeyError:
        raise ParameterError(f"unknown method tag {method!r}") from None
    if n < 1 or (method != "optimal" and l < 1) or m < 0:
        raise ParameterError("sizes must be positive")
    return float(formula(n, l, m))
