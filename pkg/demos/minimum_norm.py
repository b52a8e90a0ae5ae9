"""Two routes to the same combination vector.

The kernel weight is s plus a combination X beta of projected snapshots.
beta can be read off the pseudoinverse of the Gram matrix, or as the
minimum-norm solution of the squared normal equations.  Both give the same
vector, including when s itself lies in the span of the snapshots and the
Gram matrix loses rank.

Run:  python3 demos/minimum_norm.py
"""

import numpy as np

from beamkit import beamformers as bf
from beamkit.scenario import steering


def squared_form(r, x, s):
    return -np.linalg.pinv(r @ r, rcond=1e-13, hermitian=True) @ r @ (x.conj().T @ s)


def main():
    rng = np.random.default_rng(7)
    n, l = 24, 8
    s = steering(n, 10.0)
    for label, in_span in (("generic data", False), ("s in span(X)", True)):
        x = rng.standard_normal((n, l)) + 1j * rng.standard_normal((n, l))
        if in_span:
            x[:, 0] = (0.3 - 1.2j) * s
        g = bf.gram(x, s)
        full = bf.kernel_beta_full(g, x, s)
        alt = squared_form(g.r_hat, x, s)
        err = np.linalg.norm(full - alt) / np.linalg.norm(full)
        print(f"{label:>14}: rank(R) = {g.numerical_rank()} of {l}, relative difference {err:.1e}")


if __name__ == "__main__":
    main()
