"""Command-line entry point: ``beamkit <subcommand> --config cfg.json --out dir``.

Exit status is 0 on success, 1 for invalid input or configuration and 2
for numerical failures.
"""

from __future__ import annotations

import argparse
import json
import platform
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__, harness
from .config import MAX_SEED, load_config
from .errors import BeamkitError, NumericalError

EXIT_OK, EXIT_INVALID, EXIT_NUMERICAL = 0, 1, 2


def _seed(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= value <= MAX_SEED:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


class _Parser(argparse.ArgumentParser):
    # usage errors are validation errors, not numerical ones
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(prog="beamkit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"beamkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("sweep-samples", "SINR loss versus number of snapshots"),
        ("sweep-snr", "output SINR versus input SNR"),
        ("beampattern", "beampatterns from one snapshot draw"),
        ("bench", "weight-computation timing versus number of snapshots"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, type=Path, help="experiment JSON file")
        p.add_argument("--out", type=Path, default=Path("results"), help="output directory")
        p.add_argument("--seed", type=_seed, help="override monte_carlo.base_seed")
        p.add_argument("--methods", help="comma-separated method list overriding the config")
    sub.add_parser("selftest", help="run the built-in oracle checks")
    return parser


def _write_meta(out, cfg, command, files):
    meta = {
        "command": command,
        "config": cfg.to_dict(),
        "outputs": files,
        "beamkit_version": __version__,
        "numpy_version": np.__version__,
        "python_version": platform.python_version(),
        "threads": harness.thread_count(),
        "created_utc": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }
    path = out / f"{cfg.name}_meta.json"
    path.write_text(json.dumps(meta, indent=2) + "\n")
    return path


def _run(args):
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg.monte_carlo.base_seed = args.seed
    if args.methods:
        data = cfg.to_dict()
        data["methods"] = [m.strip() for m in args.methods.split(",") if m.strip()]
        cfg = type(cfg).from_dict(data)

    outputs = {}
    if args.command == "sweep-samples":
        table = harness.run_sweep_samples(cfg)
        outputs["loss"] = table.to_csv()
        outputs["walltime"] = table.walltime_csv()
    elif args.command == "sweep-snr":
        table = harness.run_sweep_snr(cfg)
        outputs["sinr"] = table.to_csv()
        outputs["walltime"] = table.walltime_csv()
    elif args.command == "beampattern":
        outputs["beampattern"] = harness.beampattern_csv(harness.run_beampattern(cfg))
    else:
        outputs["timing"] = harness.run_bench(cfg).to_csv()

    args.out.mkdir(parents=True, exist_ok=True)
    written = []
    for suffix, text in outputs.items():
        path = args.out / f"{cfg.name}_{suffix}.csv"
        path.write_text(text)
        written.append(path.name)
    meta = _write_meta(args.out, cfg, args.command, written)
    for name in written + [meta.name]:
        print(args.out / name)


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "selftest":
        from .selftest import run_selftest

        return EXIT_OK if run_selftest() else EXIT_NUMERICAL
    try:
        _run(args)
    except (NumericalError, np.linalg.LinAlgError) as exc:
        print(f"beamkit: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (BeamkitError, OSError) as exc:
        print(f"beamkit: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
