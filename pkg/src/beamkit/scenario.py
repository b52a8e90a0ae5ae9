"""Narrowband uniform-linear-array signal model.

Snapshots are ``x(t) = a_s(t) s(theta_s) + sum_m a_m(t) s(theta_m) + n(t)``
with circular complex Gaussian amplitudes and white noise.  Steering vectors
are unit-norm and phase-referenced to element 0.

Random numbers come from numpy's Philox counter-based bit generator keyed by
the integer seed; complex Gaussians are built with the Box-Muller transform
from its uniform stream.  Every draw has a fixed position in that stream
(desired amplitudes, then interferer amplitudes, then noise, column-major),
so changing a power or toggling ``signal_in_training`` rescales the same
underlying draws instead of reshuffling them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DimensionError, ParameterError
from .numerics import as_matrix

SPACING_WAVELENGTHS = 0.5


def db_to_linear(db):
    return 10.0 ** (np.asarray(db, dtype=float) / 10.0)


def linear_to_db(x):
    return 10.0 * np.log10(x)


@dataclass(frozen=True)
class Ula:
    """Uniform linear array with half-wavelength spacing."""

    n_elements: int
    spacing_wavelengths: float = SPACING_WAVELENGTHS

    def __post_init__(self):
        if int(self.n_elements) != self.n_elements or self.n_elements < 2:
            raise ParameterError(f"n_elements must be an integer >= 2, got {self.n_elements}")
        if self.spacing_wavelengths != SPACING_WAVELENGTHS:
            raise ParameterError("only half-wavelength spacing is supported")


@dataclass(frozen=True)
class Source:
    """Far-field source: DOA in degrees from broadside, linear power re. noise."""

    doa_deg: float
    power: float

    def __post_init__(self):
        _check_doa(self.doa_deg)
        if not np.isfinite(self.power) or self.power < 0:
            raise ParameterError(f"source power must be finite and >= 0, got {self.power}")


@dataclass(frozen=True)
class Scenario:
    array: Ula
    desired: Source
    interferers: tuple = field(default_factory=tuple)
    noise_power: float = 1.0
    signal_in_training: bool = True

    def __post_init__(self):
        object.__setattr__(self, "interferers", tuple(self.interferers))
        # zero noise is tolerated for structural (noiseless) checks only; the
        # SINR metrics need a positive definite covariance
        if not np.isfinite(self.noise_power) or self.noise_power < 0:
            raise ParameterError(f"noise_power must be >= 0, got {self.noise_power}")
        doas = [self.desired.doa_deg] + [src.doa_deg for src in self.interferers]
        if len(set(doas)) != len(doas):
            raise ParameterError("source DOAs must be pairwise distinct")

    @property
    def n(self):
        return self.array.n_elements

    @property
    def m(self):
        return len(self.interferers)

    @classmethod
    def from_db(
        cls,
        n_elements: int,
        desired_doa_deg: float,
        snr_db: float,
        interferers: Sequence[tuple] = (),
        signal_in_training: bool = True,
    ):
        """Build a scenario from dB powers relative to unit noise.

        ``interferers`` is a sequence of ``(doa_deg, inr_db)`` pairs.
        """
        return cls(
            array=Ula(n_elements),
            desired=Source(desired_doa_deg, float(db_to_linear(snr_db))),
            interferers=tuple(Source(d, float(db_to_linear(p))) for d, p in interferers),
            noise_power=1.0,
            signal_in_training=signal_in_training,
        )


@dataclass(frozen=True)
class DataMatrix:
    """Training snapshots stacked as columns, shape ``(N, L)``."""

    x: np.ndarray

    def __post_init__(self):
        x = as_matrix(self.x, "data matrix")
        if x.shape[0] < 2:
            raise DimensionError(f"data matrix needs N >= 2 rows, got {x.shape[0]}")
        x.setflags(write=False)
        object.__setattr__(self, "x", x)

    @property
    def n(self):
        return self.x.shape[0]

    @property
    def l(self):
        return self.x.shape[1]


def _check_doa(doa_deg):
    if not np.isfinite(doa_deg) or abs(doa_deg) >= 90.0:
        raise ParameterError(f"DOA must lie in (-90, 90) degrees, got {doa_deg}")


def steering(array, doa_deg):
    """Unit-norm steering vector ``exp(j pi k sin(theta)) / sqrt(N)``."""
    _check_doa(doa_deg)
    n = array.n_elements if isinstance(array, Ula) else int(array)
    k = np.arange(n)
    s = np.exp(1j * np.pi * k * np.sin(np.deg2rad(doa_deg)))
    return s / np.linalg.norm(s)


def steering_matrix(array, doas_deg):
    """Steering vectors for several DOAs as the columns of an ``(N, K)`` array."""
    n = array.n_elements if isinstance(array, Ula) else int(array)
    doas = np.atleast_1d(np.asarray(doas_deg, dtype=float))
    if doas.size == 0:
        return np.zeros((n, 0), dtype=complex)
    return np.column_stack([steering(n, d) for d in doas])


def _complex_gaussian(rng, shape):
    """Unit-variance circular complex Gaussians via Box-Muller."""
    count = int(np.prod(shape))
    u = rng.random((2, count))
    radius = np.sqrt(-2.0 * np.log1p(-u[0]))
    angle = 2.0 * np.pi * u[1]
    # each real component has variance 1 before the 1/sqrt(2) split
    z = radius * (np.cos(angle) + 1j * np.sin(angle)) / np.sqrt(2.0)
    return z.reshape(shape, order="F")


def make_rng(seed):
    return np.random.Generator(np.random.Philox(int(seed)))


def generate_snapshots(scenario, l, seed):
    """Draw ``l`` i.i.d. snapshots of ``scenario``.

    Deterministic for a fixed ``seed``.

    Returns
    -------
    DataMatrix
    """
    if int(l) != l or l < 1:
        raise ParameterError(f"number of snapshots must be >= 1, got {l}")
    l = int(l)
    n = scenario.n
    rng = make_rng(seed)
    amp_s = _complex_gaussian(rng, (l,))
    amp_i = _complex_gaussian(rng, (scenario.m, l))
    noise = _complex_gaussian(rng, (n, l))

    x = np.sqrt(scenario.noise_power) * noise
    if scenario.signal_in_training:
        s = steering(scenario.array, scenario.desired.doa_deg)
        x = x + np.sqrt(scenario.desired.power) * np.outer(s, amp_s)
    if scenario.m:
        a = steering_matrix(scenario.array, [src.doa_deg for src in scenario.interferers])
        powers = np.array([src.power for src in scenario.interferers])
        x = x + a @ (np.sqrt(powers)[:, None] * amp_i)
    return DataMatrix(x)


def true_covariance(scenario):
    """Interference-plus-noise covariance ``sigma^2 I + sum_m p_m s_m s_m^H``."""
    n = scenario.n
    r = scenario.noise_power * np.eye(n, dtype=complex)
    if scenario.m:
        a = steering_matrix(scenario.array, [src.doa_deg for src in scenario.interferers])
        powers = np.array([src.power for src in scenario.interferers])
        r = r + (a * powers) @ a.conj().T
    return 0.5 * (r + r.conj().T)
