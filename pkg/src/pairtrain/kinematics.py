"""Lightfront kinematics for a probe photon crossing a plane-wave background.

Conventions used throughout the package:

* metric signature (+, -, -, -);
* the background is a plane wave depending only on the lightfront time
  phi = t + z, so it propagates along -z and the probe photon travels
  against it (n.l > 0 for the lightfront direction n);
* every momentum is measured in units of the positron mass m, i.e. m = 1
  internally, and transverse 2-vectors are written p_perp = (p1, p2).

For an on-shell positron with lightfront fraction u = n.q / n.l and
transverse momentum p_perp, the invariant

    lambda = l.p / m^2
           = (|l_perp|^2 u + (1 + |p_perp|^2) / u) / 2 - l_perp . p_perp
           = (1 + |p_perp - u l_perp|^2) / (2 u)

depends on the probe only through l_perp; the overall lightfront scale
n.l drops out.  The second, completed-square form is used for evaluation
because it is manifestly positive and free of cancellation.  The spin sum
of the pair-creation vertex brings in the weight

    h(u) = 1/2 - 1 / (4 u (1 - u)),

which satisfies h <= -1/2 with equality at u = 1/2 and h(u) = h(1 - u).
"""

from dataclasses import dataclass

import numpy as np

# Fine-structure constant (CODATA 2018).
ALPHA_FS = 7.2973525693e-3

# Positron mass and conversion factors, used only to report physical
# lightfront separations when a photon energy is supplied.
M_E_MEV = 0.51099895
HBAR_MEV_S = 6.582119569e-22
HBAR_C_MEV_M = 1.973269804e-13


def _as_pair(value, name):
    pair = tuple(float(v) for v in value)
    if len(pair) != 2:
        raise ValueError(f"{name} must be a 2-vector, got {value!r}")
    if not all(np.isfinite(pair)):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return pair


@dataclass(frozen=True)
class PhotonProbe:
    """Probe photon entering the pulse train head-on.

    Parameters
    ----------
    lperp : (float, float)
        Transverse photon momentum in units of m.  (0, 0) is the exactly
        counter-propagating probe.
    energy_mev : float or None
        Optional photon energy in MeV.  It never enters the dimensionless
        spectra; it is only used to convert the dimensionless pulse
        separations into physical lightfront distances for reporting.
    """

    lperp: tuple = (0.0, 0.0)
    energy_mev: float = None

    def __post_init__(self):
        object.__setattr__(self, "lperp", _as_pair(self.lperp, "lperp"))
        if self.energy_mev is not None:
            e = float(self.energy_mev)
            if not np.isfinite(e) or e <= 0.0:
                raise ValueError(f"energy_mev must be positive, got {self.energy_mev!r}")
            if e / M_E_MEV < abs(np.hypot(*self.lperp)):
                raise ValueError("energy_mev is too small for the requested lperp")
            object.__setattr__(self, "energy_mev", e)

    def lightfront_scale(self):
        """n.l / m^2 for the physical photon, if an energy was given.

        For a photon of energy E with transverse momentum l_perp the
        longitudinal momentum follows from the mass shell, so
        n.l = E + sqrt(E^2 - |l_perp|^2 m^2) and

            n.l / m^2 = (e + sqrt(e^2 - |l_perp|^2)) / m,   e = E / m,

        in units of 1/MeV.  Multiply a dimensionless pulse position x by
        this (times hbar) to obtain the physical lightfront time t + z.
        """
        if self.energy_mev is None:
            return None
        e = self.energy_mev / M_E_MEV
        lsq = self.lperp[0] ** 2 + self.lperp[1] ** 2
        return (e + np.sqrt(e * e - lsq)) / M_E_MEV


@dataclass(frozen=True)
class SpectrumPoint:
    """A single point (u, q_perp) of the positron spectrum.

    u is the lightfront momentum fraction n.q / n.l of the positron and
    must lie strictly inside (0, 1); q_perp is its transverse momentum in
    units of m.
    """

    u: float
    qperp: tuple = (0.0, 0.0)

    def __post_init__(self):
        u = float(self.u)
        if not np.isfinite(u) or not 0.0 < u < 1.0:
            raise ValueError(f"u must lie strictly inside (0, 1), got {self.u!r}")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "qperp", _as_pair(self.qperp, "qperp"))


def _check_u(u):
    if np.any(~np.isfinite(u)) or np.any(u <= 0.0) or np.any(u >= 1.0):
        raise ValueError("u must lie strictly inside (0, 1)")


def lf_dot(probe, u, pperp):
    """lambda = l.p / m^2 for an on-shell positron momentum.

    Evaluated as (1 + |p_perp - u l_perp|^2) / (2 u), which is the
    completed square of the textbook lightfront expression

        (|l_perp|^2 u + (1 + |p_perp|^2) / u) / 2 - l_perp . p_perp

    and therefore strictly positive for every on-shell p.  Accepts arrays:
    pperp may have shape (..., 2) with u broadcastable against the leading
    axes.  Stays finite for u down to ~1e-9 (and far below).
    """
    u = np.asarray(u, dtype=float)
    _check_u(u)
    p = np.asarray(pperp, dtype=float)
    l1, l2 = probe.lperp
    d1 = p[..., 0] - u * l1
    d2 = p[..., 1] - u * l2
    return (1.0 + d1 * d1 + d2 * d2) / (2.0 * u)


def h_factor(u):
    """Spin-sum weight h(u) = 1/2 - 1/(4 u (1 - u)).

    h <= -1/2 everywhere on (0, 1), with equality only at u = 1/2, and it
    is symmetric under u -> 1 - u.  Near the endpoints it diverges like
    -1/(4u) and -1/(4(1-u)); the evaluation is overflow-safe for any u
    representable strictly inside (0, 1).
    """
    u = np.asarray(u, dtype=float)
    _check_u(u)
    return 0.5 - 1.0 / (4.0 * u * (1.0 - u))
