"""Fast kernel-method MVDR beamforming for large arrays with few snapshots.

The kernel beamformer writes the weight as ``s + P X beta`` with ``P`` the
projector orthogonal to the look direction, so only an ``L``-dimensional
combination vector has to be solved for.  Baselines (pseudoinverse SMI,
diagonally loaded SMI, eigenspace projection), a uniform-linear-array
simulator and Monte Carlo harness are included.
"""

__version__ = "0.1.0"

from .beamformers import (
    GramMatrix,
    WeightVector,
    eigenspace,
    gram,
    kernel_beamformer,
    kernel_beta_full,
    kernel_beta_truncated,
    kernel_weight,
    lsmi,
    mvdr_optimal,
    projector_apply,
    smi,
)
from .errors import (
    BeamkitError,
    ConfigError,
    DimensionError,
    NumericalError,
    ParameterError,
    RankError,
)
from .metrics import (
    Beampattern,
    SinrRecord,
    beampattern,
    mdn_estimate,
    output_sinr,
    sinr_loss_avg,
    sinr_opt,
)
from .numerics import HermEvd, herm_evd, pinv_psd
from .scenario import (
    DataMatrix,
    Scenario,
    Source,
    Ula,
    generate_snapshots,
    steering,
    true_covariance,
)
