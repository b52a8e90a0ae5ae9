"""Monte Carlo experiments and timing benchmarks.

Trial ``t`` of every sweep point draws its snapshots with seed
``base_seed + t``, and all methods of that trial share the same data
matrix.  Results therefore do not depend on how trials are scheduled;
``BEAMKIT_THREADS`` (0 or unset = one worker per CPU) caps how many trials
run at once.
"""

from __future__ import annotations

import csv
import io
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List

import numpy as np

from . import beamformers as bf
from . import reference
from .config import BENCH_METHODS, SWEEP_METHODS, ExperimentConfig
from .errors import ConfigError
from .metrics import (
    beampattern,
    mdn_estimate,
    sinr_loss_avg,
    sinr_opt,
    sinr_record,
)
from .scenario import db_to_linear, generate_snapshots, steering, true_covariance

LOSS_COLUMNS = (
    "sweep_value",
    "method",
    "mean_loss_db",
    "std_loss_db",
    "mean_sinr_db",
    "mdn",
    "mean_of_db_loss_db",
)
WALLTIME_COLUMNS = ("sweep_value", "method", "mean_wall_time_s")
TIMING_COLUMNS = ("sweep_value", "method", "median_s", "p10_s", "p90_s", "mdn")


def fmt(value):
    """Format a number with 6 significant digits."""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.6g}"


@dataclass
class ResultRow:
    sweep_value: float
    method: str
    mean_loss_db: float
    std_loss_db: float
    mean_sinr_db: float
    mean_wall_time_s: float
    mdn: float
    mean_of_db_loss_db: float


@dataclass
class ResultTable:
    rows: List[ResultRow] = field(default_factory=list)

    def row(self, sweep_value, method):
        for r in self.rows:
            if r.sweep_value == sweep_value and r.method == method:
                return r
        raise KeyError((sweep_value, method))

    def series(self, method, column="mean_loss_db"):
        return [getattr(r, column) for r in self.rows if r.method == method]

    def to_csv(self):
        """Deterministic CSV of the quality columns (no timing)."""
        return _csv(LOSS_COLUMNS, [[getattr(r, c) for c in LOSS_COLUMNS] for r in self.rows])

    def walltime_csv(self):
        return _csv(WALLTIME_COLUMNS, [[getattr(r, c) for c in WALLTIME_COLUMNS] for r in self.rows])


@dataclass
class TimingRow:
    sweep_value: int
    method: str
    median_s: float
    p10_s: float
    p90_s: float
    mdn: float


@dataclass
class TimingTable:
    rows: List[TimingRow] = field(default_factory=list)

    def series(self, method, column="median_s"):
        return [getattr(r, column) for r in self.rows if r.method == method]

    def to_csv(self):
        return _csv(TIMING_COLUMNS, [[getattr(r, c) for c in TIMING_COLUMNS] for r in self.rows])


def _csv(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([v if isinstance(v, str) else fmt(v) for v in row])
    return buf.getvalue()


def thread_count():
    raw = os.environ.get("BEAMKIT_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError("BEAMKIT_THREADS", f"expected an integer, got {raw!r}") from None
    if n < 0:
        raise ConfigError("BEAMKIT_THREADS", "must be >= 0")
    return n or (os.cpu_count() or 1)


def _map_trials(fn, trials):
    workers = min(thread_count(), len(trials))
    if workers <= 1:
        return [fn(t) for t in trials]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, trials))


# ---------------------------------------------------------------------------
# Method dispatch
# ---------------------------------------------------------------------------


def kernel_order(cfg, m):
    """Truncation order handed to :func:`kernel_beamformer` (``None`` = full)."""
    rank = cfg.params.kernel_rank
    if rank == "full":
        return None
    if rank is None:
        return m if m > 0 else None
    return rank


def eigenspace_order(cfg, m):
    return cfg.params.eigenspace_rank or m + 1


def compute_weight(method, cfg, x, s, r_true, m):
    """Weight of one sweep method on data ``x``."""
    if method == "smi":
        return bf.smi(x, s)
    if method == "lsmi":
        return bf.lsmi(x, s, float(db_to_linear(cfg.params.loading_db)))
    if method == "eigenspace":
        return bf.eigenspace(x, s, eigenspace_order(cfg, m))
    if method == "kernel":
        return bf.kernel_beamformer(x, s, kernel_order(cfg, m))
    if method == "optimal":
        return bf.mvdr_optimal(r_true, s)
    raise ConfigError("methods", f"method {method!r} is not available in sweeps")


def _sweep_methods(cfg):
    for k, m in enumerate(cfg.methods):
        if m not in SWEEP_METHODS:
            raise ConfigError(f"methods[{k}]", f"{m!r} is a benchmark-only method")
    return cfg.methods


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------


def _evaluate_point(cfg, scenario, l, sweep_value):
    methods = _sweep_methods(cfg)
    s = steering(scenario.array, scenario.desired.doa_deg)
    r_true = true_covariance(scenario)
    sigma_s2 = scenario.desired.power
    opt_db = sinr_opt(s, sigma_s2, r_true)
    m = scenario.m
    base = cfg.monte_carlo.base_seed

    def trial(t):
        x = generate_snapshots(scenario, l, base + t)
        out = []
        for method in methods:
            wv = compute_weight(method, cfg, x, s, r_true, m)
            rec = sinr_record(wv, s, sigma_s2, r_true, opt_db, method, t)
            out.append((rec, wv.wall_time))
        return out

    results = _map_trials(trial, list(range(cfg.monte_carlo.trials)))
    rows = []
    for k, method in enumerate(methods):
        recs = [res[k][0] for res in results]
        losses = np.array([r.loss_db for r in recs])
        mean_loss = sinr_loss_avg(recs)
        rows.append(
            ResultRow(
                sweep_value=sweep_value,
                method=method,
                mean_loss_db=mean_loss,
                std_loss_db=float(np.std(losses, ddof=1)) if len(recs) > 1 else 0.0,
                mean_sinr_db=opt_db + mean_loss,
                mean_wall_time_s=float(np.mean([res[k][1] for res in results])),
                mdn=mdn_estimate(method, scenario.n, l, eigenspace_order(cfg, m) if method == "eigenspace" else 0),
                mean_of_db_loss_db=float(np.mean(losses)),
            )
        )
    return rows


def run_sweep_samples(cfg: ExperimentConfig) -> ResultTable:
    """Averaged SINR loss versus number of training snapshots."""
    if cfg.sweep.variable != "samples":
        raise ConfigError("sweep.variable", "sweep-samples needs variable 'samples'")
    scenario = cfg.scenario.build()
    table = ResultTable()
    for l in cfg.sweep.values:
        table.rows.extend(_evaluate_point(cfg, scenario, int(l), int(l)))
    return table


def run_sweep_snr(cfg: ExperimentConfig) -> ResultTable:
    """Output SINR versus input SNR at a fixed number of snapshots."""
    if cfg.sweep.variable != "snr":
        raise ConfigError("sweep.variable", "sweep-snr needs variable 'snr'")
    table = ResultTable()
    for snr in cfg.sweep.values:
        scenario = cfg.scenario.build(snr_db=snr)
        table.rows.extend(_evaluate_point(cfg, scenario, cfg.sweep.samples, snr))
    return table


def _single_samples(cfg):
    if cfg.sweep.variable == "samples":
        if len(cfg.sweep.values) != 1:
            raise ConfigError("sweep.values", "expected a single number of snapshots")
        return int(cfg.sweep.values[0])
    if cfg.sweep.samples is None:
        raise ConfigError("sweep.samples", "missing")
    return cfg.sweep.samples


def run_beampattern(cfg: ExperimentConfig):
    """Beampatterns of every configured method on one snapshot draw.

    Returns
    -------
    dict
        method -> :class:`~beamkit.metrics.Beampattern`, evaluated on an
        open grid of step ``cfg.grid_step_deg`` over (-90, 90) degrees.
    """
    l = _single_samples(cfg)
    scenario = cfg.scenario.build()
    s = steering(scenario.array, scenario.desired.doa_deg)
    r_true = true_covariance(scenario)
    x = generate_snapshots(scenario, l, cfg.monte_carlo.base_seed)
    step = cfg.grid_step_deg
    count = int(round(90.0 / step))
    grid = np.arange(-count + 1, count) * step
    patterns = {}
    for method in _sweep_methods(cfg):
        wv = compute_weight(method, cfg, x, s, r_true, scenario.m)
        patterns[method] = beampattern(wv, scenario.array, grid, scenario.desired.doa_deg)
    return patterns


def beampattern_csv(patterns):
    rows = []
    for method, bp in patterns.items():
        for a, g in zip(bp.angles_deg, bp.gain_db):
            rows.append([method, round(float(a), 10), g])
    return _csv(("method", "angle_deg", "gain_db"), rows)


def _bench_callable(method, cfg, x, s, m):
    loading = float(db_to_linear(cfg.params.loading_db))
    r = eigenspace_order(cfg, m)
    k = kernel_order(cfg, m)
    return {
        "kernel": lambda: bf.kernel_beamformer(x, s, k),
        # the conventional full-dimensional SMI, as costed by mdn_estimate("smi")
        "smi": lambda: reference.smi_dense(x, s),
        "lsmi": lambda: bf.lsmi(x, s, loading),
        "eigenspace": lambda: bf.eigenspace(x, s, r),
        "smi_gram": lambda: bf.smi(x, s),
        "lsmi_full": lambda: reference.lsmi_dense(x, s, loading),
        "eigenspace_full": lambda: reference.eigenspace_dense(x, s, r),
    }[method]


def run_bench(cfg: ExperimentConfig) -> TimingTable:
    """Wall-clock time per weight computation versus number of snapshots.

    ``smi`` is timed through the conventional ``N x N`` route; the other
    tags follow :data:`beamkit.config.BENCH_METHODS`.
    """
    if cfg.sweep.variable != "samples":
        raise ConfigError("sweep.variable", "bench needs variable 'samples'")
    for k, m in enumerate(cfg.methods):
        if m not in BENCH_METHODS:
            raise ConfigError(f"methods[{k}]", f"{m!r} cannot be benchmarked")
    scenario = cfg.scenario.build()
    s = steering(scenario.array, scenario.desired.doa_deg)
    n, m = scenario.n, scenario.m
    table = TimingTable()
    for l in cfg.sweep.values:
        l = int(l)
        x = generate_snapshots(scenario, l, cfg.monte_carlo.base_seed).x
        for method in cfg.methods:
            fn = _bench_callable(method, cfg, x, s, m)
            for _ in range(cfg.bench.warmup):
                fn()
            times = []
            for _ in range(cfg.bench.repetitions):
                t0 = time.perf_counter()
                fn()
                times.append(time.perf_counter() - t0)
            p10, med, p90 = np.percentile(times, [10, 50, 90])
            order = eigenspace_order(cfg, m) if method.startswith("eigenspace") else 0
            table.rows.append(TimingRow(l, method, float(med), float(p10), float(p90), mdn_estimate(method, n, l, order)))
    return table
