"""Fast built-in oracle checks, run by ``beamkit selftest``."""

from __future__ import annotations

import numpy as np

from . import beamformers as bf
from . import reference
from .metrics import mdn_estimate, output_sinr, sinr_opt
from .numerics import herm_evd, pinv_psd
from .scenario import Scenario, generate_snapshots, steering, true_covariance


def _random(rng, n, l):
    return rng.standard_normal((n, l)) + 1j * rng.standard_normal((n, l))


def _check_evd(rng):
    b = _random(rng, 8, 8)
    a = b @ b.conj().T
    for method in ("lapack", "jacobi"):
        evd = herm_evd(a, method)
        assert np.linalg.norm(evd.reconstruct() - a) <= 1e-9 * np.linalg.norm(a), method
        assert np.all(np.diff(evd.values) <= 0), method


def _check_pinv(rng):
    x = _random(rng, 3, 6)
    a = x.conj().T @ x
    p = pinv_psd(a)
    assert np.linalg.norm(a @ p @ a - a) <= 1e-8 * np.linalg.norm(a)
    assert np.linalg.norm(p @ a @ p - p) <= 1e-8 * np.linalg.norm(p)


def _check_minimum_norm(rng):
    x = _random(rng, 12, 5)
    s = steering(12, 7.0)
    r_hat = bf.gram(x, s)
    full = bf.kernel_beta_full(r_hat, x, s)
    r2 = r_hat.r_hat @ r_hat.r_hat
    alt = -np.linalg.pinv(r2, rcond=1e-12, hermitian=True) @ r_hat.r_hat @ (x.conj().T @ s)
    assert np.linalg.norm(full - alt) <= 1e-8 * np.linalg.norm(full)


def _check_dense_routes(rng):
    x = _random(rng, 10, 6)
    s = steering(10, -12.0)
    pairs = [
        (bf.smi(x, s).w, reference.smi_dense(x, s)),
        (bf.lsmi(x, s, 3.0).w, reference.lsmi_dense(x, s, 3.0)),
        (bf.eigenspace(x, s, 3).w, reference.eigenspace_dense(x, s, 3)),
        (bf.kernel_beamformer(x, s).w, reference.kernel_dense(x, s)),
        (bf.kernel_beamformer(x, s, 2).w, reference.kernel_dense(x, s, 2)),
    ]
    for got, want in pairs:
        assert np.linalg.norm(got - want) <= 1e-8 * np.linalg.norm(want)


def _check_nulls(_rng):
    sc = Scenario.from_db(16, 0.0, 0.0, [(-30.0, 0.0), (25.0, 0.0)], signal_in_training=False)
    sc = Scenario(sc.array, sc.desired, sc.interferers, noise_power=0.0, signal_in_training=False)
    x = generate_snapshots(sc, 5, 3)
    s = steering(sc.array, 0.0)
    w = bf.kernel_beamformer(x, s, 2).w
    for src in sc.interferers:
        assert abs(np.vdot(w, steering(sc.array, src.doa_deg))) <= 1e-8 * np.linalg.norm(w)


def _check_optimum(_rng):
    sc = Scenario.from_db(20, 5.0, 0.0, [(-20.0, 30.0)])
    s = steering(sc.array, 5.0)
    r = true_covariance(sc)
    w = bf.mvdr_optimal(r, s)
    assert abs(output_sinr(w, s, 1.0, r) - sinr_opt(s, 1.0, r)) <= 1e-9


def _check_mdn(_rng):
    assert mdn_estimate("smi", 400, 30) / mdn_estimate("kernel", 400, 30) > 100


CHECKS = [
    ("hermitian eigendecomposition", _check_evd),
    ("pseudoinverse identities", _check_pinv),
    ("minimum-norm equivalence", _check_minimum_norm),
    ("gram routes match dense routes", _check_dense_routes),
    ("noiseless null steering", _check_nulls),
    ("optimal SINR identity", _check_optimum),
    ("complexity ratio", _check_mdn),
]


def run_selftest(out=print):
    """Run every check, print one line each, return ``True`` if all pass."""
    rng = np.random.default_rng(20240601)
    ok = True
    for name, check in CHECKS:
        try:
            check(rng)
        except Exception as exc:  # report and keep going
            ok = False
            out(f"FAIL  {name}: {type(exc).__name__}: {exc}")
        else:
            out(f"PASS  {name}")
    return ok
