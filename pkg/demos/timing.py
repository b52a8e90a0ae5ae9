"""Weight-computation time: kernel (L x L work) against dense SMI (N x N work).

For N = 400 the dense route forms and inverts a 400 x 400 matrix whatever
the number of snapshots.  The kernel route only decomposes an L x L Gram
matrix, so it stays cheap while L is much smaller than N.  The analytic
multiplication/division counts are printed next to the measured medians.

Run:  python3 demos/timing.py
"""

from beamkit import harness
from beamkit.config import ExperimentConfig, bundled_config_path, load_config


def main():
    data = load_config(bundled_config_path("fig5")).to_dict()
    data["methods"] = ["kernel", "smi"]
    data["sweep"]["values"] = [10, 30, 60, 100]
    table = harness.run_bench(ExperimentConfig.from_dict(data))

    print(f"{'L':>4}{'kernel ms':>12}{'smi ms':>12}{'kernel MDN':>14}{'smi MDN':>14}")
    kernel = [r for r in table.rows if r.method == "kernel"]
    smi = [r for r in table.rows if r.method == "smi"]
    for k, s in zip(kernel, smi):
        print(f"{k.sweep_value:>4}{1e3 * k.median_s:>12.3f}{1e3 * s.median_s:>12.3f}{k.mdn:>14.3g}{s.mdn:>14.3g}")


if __name__ == "__main__":
    main()
