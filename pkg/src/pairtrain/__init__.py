"""Positron spectra and pair-creation probabilities for a photon colliding
with trains of delta-function laser pulses.

The public surface is small: describe the probe photon (PhotonProbe) and
the pulse train (normalize_train), then evaluate the spectral density at a
point (master_density), on a grid (grid_scan) or integrated (integrate_qperp,
integrate_u, total_probability).  Closed-form reductions for one, two and
four pulses are exported alongside the master formula as cross-checks.
"""

from .kinematics import ALPHA_FS, PhotonProbe, SpectrumPoint, h_factor, lf_dot
from .pulses import (
    Jump,
    PulseTrain,
    SegmentMomentumTable,
    accumulated_phases,
    classical_drift,
    normalize_train,
    segment_momenta,
)
from .density import (
    DensityResult,
    density_fourpulse,
    density_opposite,
    density_samesign,
    density_single,
    endpoint_limits,
    f_kernel,
    f_total_array,
    fourpulse_factor,
    master_density,
    prefactor,
)
from .integrate import (
    GridResult,
    IntegrationSpec,
    QuadratureResult,
    grid_scan,
    integrate_qperp,
    integrate_u,
    tail_bound,
    total_probability,
)
from .config import ConfigError, RunConfig, emit_config, parse_config

__version__ = "0.1.0"

__all__ = [
    "ALPHA_FS",
    "ConfigError",
    "DensityResult",
    "GridResult",
    "IntegrationSpec",
    "Jump",
    "PhotonProbe",
    "PulseTrain",
    "QuadratureResult",
    "RunConfig",
    "SegmentMomentumTable",
    "SpectrumPoint",
    "accumulated_phases",
    "classical_drift",
    "density_fourpulse",
    "density_opposite",
    "density_samesign",
    "density_single",
    "emit_config",
    "endpoint_limits",
    "f_kernel",
    "f_total_array",
    "fourpulse_factor",
    "grid_scan",
    "h_factor",
    "integrate_qperp",
    "integrate_u",
    "lf_dot",
    "master_density",
    "normalize_train",
    "parse_config",
    "prefactor",
    "segment_momenta",
    "tail_bound",
    "total_probability",
    "__version__",
]
