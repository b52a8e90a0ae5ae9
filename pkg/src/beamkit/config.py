"""Declarative experiment configuration (JSON).

Example::

    {
      "name": "fig1",
      "scenario": {"n_elements": 400, "desired_doa_deg": 3.0, "snr_db": -15.0,
                   "interferers": [{"doa_deg": -2.0, "inr_db": 30.0}],
                   "signal_in_training": true},
      "sweep": {"variable": "samples", "values": [10, 20, 30]},
      "methods": ["smi", "eigenspace", "kernel"],
      "monte_carlo": {"trials": 100, "base_seed": 1},
      "params": {"loading_db": 10.0, "eigenspace_rank": null, "kernel_rank": null}
    }
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import List, Optional, Union

from .errors import ConfigError, ParameterError
from .scenario import Scenario

SWEEP_METHODS = ("smi", "lsmi", "eigenspace", "kernel", "optimal")
BENCH_METHODS = ("smi", "lsmi", "eigenspace", "kernel", "smi_gram", "lsmi_full", "eigenspace_full")
SWEEP_VARIABLES = ("samples", "snr")
MAX_SEED = 2 ** 64 - 1


def _require(mapping, key, path):
    if key not in mapping:
        raise ConfigError(f"{path}.{key}" if path else key, "missing required field")
    return mapping[key]


def _number(value, path, integer=False):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(path, f"expected a number, got {value!r}")
    if integer and int(value) != value:
        raise ConfigError(path, f"expected an integer, got {value!r}")
    return int(value) if integer else float(value)


def _check_keys(mapping, allowed, path):
    if not isinstance(mapping, dict):
        raise ConfigError(path, "expected an object")
    extra = sorted(set(mapping) - set(allowed))
    if extra:
        raise ConfigError(f"{path}.{extra[0]}" if path else extra[0], "unknown field")


@dataclass
class InterfererConfig:
    doa_deg: float
    inr_db: float


@dataclass
class ScenarioConfig:
    n_elements: int
    desired_doa_deg: float
    snr_db: float
    interferers: List[InterfererConfig] = field(default_factory=list)
    signal_in_training: bool = True

    def build(self, snr_db=None):
        """Instantiate a :class:`Scenario`, optionally overriding the SNR."""
        return Scenario.from_db(
            self.n_elements,
            self.desired_doa_deg,
            self.snr_db if snr_db is None else snr_db,
            [(i.doa_deg, i.inr_db) for i in self.interferers],
            self.signal_in_training,
        )


@dataclass
class SweepConfig:
    variable: str
    values: List[float]
    samples: Optional[int] = None


@dataclass
class MonteCarloConfig:
    trials: int = 100
    base_seed: int = 0


@dataclass
class MethodParams:
    loading_db: float = 10.0
    eigenspace_rank: Optional[int] = None
    kernel_rank: Union[int, str, None] = None


@dataclass
class BenchConfig:
    warmup: int = 3
    repetitions: int = 10


@dataclass
class ExperimentConfig:
    name: str
    scenario: ScenarioConfig
    sweep: SweepConfig
    methods: List[str]
    monte_carlo: MonteCarloConfig = field(default_factory=MonteCarloConfig)
    params: MethodParams = field(default_factory=MethodParams)
    bench: BenchConfig = field(default_factory=BenchConfig)
    grid_step_deg: float = 0.05

    def to_dict(self):
        return asdict(self)

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data, default_name="experiment"):
        _check_keys(
            data,
            ("name", "scenario", "sweep", "methods", "monte_carlo", "params", "bench", "grid_step_deg"),
            "",
        )
        name = data.get("name", default_name)
        if not isinstance(name, str) or not name:
            raise ConfigError("name", "expected a non-empty string")

        sc = _require(data, "scenario", "")
        _check_keys(sc, ("n_elements", "desired_doa_deg", "snr_db", "interferers", "signal_in_training"), "scenario")
        interferers = []
        raw_int = sc.get("interferers", [])
        if not isinstance(raw_int, list):
            raise ConfigError("scenario.interferers", "expected a list")
        for k, item in enumerate(raw_int):
            path = f"scenario.interferers[{k}]"
            _check_keys(item, ("doa_deg", "inr_db"), path)
            interferers.append(
                InterfererConfig(
                    _number(_require(item, "doa_deg", path), f"{path}.doa_deg"),
                    _number(_require(item, "inr_db", path), f"{path}.inr_db"),
                )
            )
        signal_in_training = sc.get("signal_in_training", True)
        if not isinstance(signal_in_training, bool):
            raise ConfigError("scenario.signal_in_training", "expected true or false")
        scenario = ScenarioConfig(
            n_elements=_number(_require(sc, "n_elements", "scenario"), "scenario.n_elements", integer=True),
            desired_doa_deg=_number(_require(sc, "desired_doa_deg", "scenario"), "scenario.desired_doa_deg"),
            snr_db=_number(_require(sc, "snr_db", "scenario"), "scenario.snr_db"),
            interferers=interferers,
            signal_in_training=signal_in_training,
        )
        try:
            scenario.build()
        except ParameterError as exc:
            raise ConfigError("scenario", str(exc)) from None

        sw = _require(data, "sweep", "")
        _check_keys(sw, ("variable", "values", "samples"), "sweep")
        variable = _require(sw, "variable", "sweep")
        if variable not in SWEEP_VARIABLES:
            raise ConfigError("sweep.variable", f"must be one of {SWEEP_VARIABLES}, got {variable!r}")
        values = _require(sw, "values", "sweep")
        if not isinstance(values, list) or not values:
            raise ConfigError("sweep.values", "expected a non-empty list")
        values = [
            _number(v, f"sweep.values[{k}]", integer=(variable == "samples")) for k, v in enumerate(values)
        ]
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ConfigError("sweep.values", "must be strictly increasing")
        if variable == "samples" and values[0] < 1:
            raise ConfigError("sweep.values", "sample counts must be >= 1")
        samples = sw.get("samples")
        if samples is not None:
            samples = _number(samples, "sweep.samples", integer=True)
            if samples < 1:
                raise ConfigError("sweep.samples", "must be >= 1")
        if variable == "snr" and samples is None:
            raise ConfigError("sweep.samples", "required when sweeping snr")
        sweep = SweepConfig(variable, values, samples)

        methods = _require(data, "methods", "")
        if not isinstance(methods, list) or not methods:
            raise ConfigError("methods", "expected a non-empty list")
        for k, m in enumerate(methods):
            if m not in SWEEP_METHODS + BENCH_METHODS:
                raise ConfigError(f"methods[{k}]", f"unknown method {m!r}")
        if len(set(methods)) != len(methods):
            raise ConfigError("methods", "duplicate method")

        mc = data.get("monte_carlo", {})
        _check_keys(mc, ("trials", "base_seed"), "monte_carlo")
        trials = _number(mc.get("trials", 100), "monte_carlo.trials", integer=True)
        if trials < 1:
            raise ConfigError("monte_carlo.trials", "must be >= 1")
        seed = _number(mc.get("base_seed", 0), "monte_carlo.base_seed", integer=True)
        if not 0 <= seed <= MAX_SEED:
            raise ConfigError("monte_carlo.base_seed", "must be an unsigned 64-bit integer")

        pr = data.get("params", {})
        _check_keys(pr, ("loading_db", "eigenspace_rank", "kernel_rank"), "params")
        loading_db = _number(pr.get("loading_db", 10.0), "params.loading_db")
        eig_rank = pr.get("eigenspace_rank")
        if eig_rank is not None:
            eig_rank = _number(eig_rank, "params.eigenspace_rank", integer=True)
            if eig_rank < 1:
                raise ConfigError("params.eigenspace_rank", "must be >= 1")
        kernel_rank = pr.get("kernel_rank")
        if isinstance(kernel_rank, str):
            if kernel_rank not in ("auto", "full"):
                raise ConfigError("params.kernel_rank", "must be an integer, 'auto', 'full' or null")
        elif kernel_rank is not None:
            kernel_rank = _number(kernel_rank, "params.kernel_rank", integer=True)
            if kernel_rank < 1:
                raise ConfigError("params.kernel_rank", "must be >= 1")

        bc = data.get("bench", {})
        _check_keys(bc, ("warmup", "repetitions"), "bench")
        warmup = _number(bc.get("warmup", 3), "bench.warmup", integer=True)
        reps = _number(bc.get("repetitions", 10), "bench.repetitions", integer=True)
        if warmup < 3:
            raise ConfigError("bench.warmup", "must be >= 3")
        if reps < 10:
            raise ConfigError("bench.repetitions", "must be >= 10")

        step = _number(data.get("grid_step_deg", 0.05), "grid_step_deg")
        if not 0 < step < 90:
            raise ConfigError("grid_step_deg", "must be in (0, 90)")

        return cls(
            name=name,
            scenario=scenario,
            sweep=sweep,
            methods=list(methods),
            monte_carlo=MonteCarloConfig(trials, seed),
            params=MethodParams(loading_db, eig_rank, kernel_rank),
            bench=BenchConfig(warmup, reps),
            grid_step_deg=step,
        )

    @classmethod
    def from_json(cls, text, default_name="experiment"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError("", f"invalid JSON: {exc}") from None
        return cls.from_dict(data, default_name)


def load_config(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError("", f"cannot read config {path}: {exc.strerror}") from None
    return ExperimentConfig.from_json(text, default_name=path.stem)


def bundled_config_path(name):
    """Path of a config shipped with the package, e.g. ``"fig1_small"``."""
    return Path(__file__).parent / "configs" / f"{name}.json"
