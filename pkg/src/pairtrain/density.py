"""Momentum spectrum of positrons created by a photon in a train of delta pulses.

The spectrum, triple-differential in the positron lightfront fraction u
and transverse momentum q_perp, is

    d^3 P / (du d^2q) = (alpha / 4 pi^2) ((1 - u) / u) f_total(u, q_perp),

with f_total a double sum over the N jumps of the train,

    f_total = sum_{i,j=1}^{N} cos(Phi_i - Phi_j) S_ij .

Each jump couples two legs, the segments just after (weight +1) and just
before it (weight -1).  Writing D_j, V_j, E_j for the leg sums of
1/lambda, a_perp/lambda and |a_perp|^2/lambda over those two legs,

    S_ij = D_i D_j + h(u) (E_i D_j + E_j D_i - 2 V_i . V_j),

which on the diagonal collapses to the single-jump kernel

    S_jj = f_kernel(lambda_j, lambda_{j-1}, |da_j|^2, u)
         = (1/lambda_j - 1/lambda_{j-1})^2
           - 2 h(u) |da_j|^2 / (lambda_j lambda_{j-1})  >=  0 .

Numerical grouping matters in two places.  First, the lambda difference
entering D, V, E is formed in the momenta before any division,

    lambda_{j-1} - lambda_j = -da_j . (pi_{j-1} + pi_j - 2 u l_perp) / (2 u),

which is exact up to rounding of the dot product, so the cross terms keep
full relative accuracy for arbitrarily small |da_j| where the naive
difference of reciprocals loses every significant digit.  Second, since
h <= -1/2 < 0, both groups inside f_kernel are nonnegative, making the
diagonal manifestly >= 0 with no cancellation.

The closed forms density_single, density_opposite, density_samesign and
density_fourpulse are independent reductions of the double sum for one,
two and four pulses.  They agree with master_density to machine precision
measured against the diagonal part, which is the natural scale at
interference zeros where the total itself vanishes.  One caveat: both
routes evaluate the kernel through its lambdas, where 1/lambda_out -
1/lambda_in rounds at eps (1/lambda_out + 1/lambda_in) absolute, so for
|da| -> 0 (lambdas merging) the agreement degrades towards that absolute
scale; the cross terms themselves stay relatively accurate there thanks
to the momentum-space difference.
"""

import math
from dataclasses import dataclass

import numpy as np

from .kinematics import ALPHA_FS, _check_u, h_factor, lf_dot


def prefactor(u, alpha=ALPHA_FS):
    """Spectral prefactor (alpha / 4 pi^2) (1 - u) / u."""
    u = np.asarray(u, dtype=float)
    _check_u(u)
    return alpha / (4.0 * math.pi ** 2) * (1.0 - u) / u


def f_kernel(lambda_out, lambda_in, dxi2, u):
    """Single-jump emission kernel F(lambda_out, lambda_in, |da|^2, u).

    F = (1/lambda_out - 1/lambda_in)^2 - 2 h(u) dxi2 / (lambda_out lambda_in).

    Both groups are nonnegative (h < 0), so F >= 0 identically and the
    evaluation is cancellation-free; F is symmetric in its two lambdas.
    Raises if either lambda is not positive.
    """
    lo = np.asarray(lambda_out, dtype=float)
    li = np.asarray(lambda_in, dtype=float)
    if np.any(lo <= 0.0) or np.any(li <= 0.0):
        raise ValueError("lambda arguments must be positive")
    d = 1.0 / lo - 1.0 / li
    return d * d - 2.0 * h_factor(u) * np.asarray(dxi2, dtype=float) / (lo * li)


# ----------------------------------------------------------------------
# master formula
# ----------------------------------------------------------------------

def _segment_lambdas(train, probe, u, q1, q2):
    """lambda_k per segment, each broadcast over (u, q1, q2)."""
    l1, l2 = probe.lperp
    off = train.offsets
    lam = []
    for k in range(len(train) + 1):
        d1 = q1 - off[k, 0] - u * l1
        d2 = q2 - off[k, 1] - u * l2
        lam.append((1.0 + d1 * d1 + d2 * d2) / (2.0 * u))
    return lam


def _evaluate(train, probe, u, q1, q2, keep_terms=False):
    """Broadcast evaluation of the double sum.

    Returns (f_total, diag_sum, cross_sum, diag, cross) with diag a list of
    per-jump arrays and cross a list of (i, j, Phi_i - Phi_j, term) for
    i < j; the term already carries the factor 2 from pair symmetry.  The
    i, j are 0-based jump indices.  diag and cross are only populated when
    keep_terms is set.
    """
    u = np.asarray(u, dtype=float)
    q1 = np.asarray(q1, dtype=float)
    q2 = np.asarray(q2, dtype=float)
    _check_u(u)
    n = len(train)
    shape = np.broadcast(u, q1, q2).shape
    if n == 0:
        z = np.zeros(shape)
        return z, z.copy(), z.copy(), [], []

    l1, l2 = probe.lperp
    lam = _segment_lambdas(train, probe, u, q1, q2)
    h = h_factor(u)
    a = train.a_values
    off = train.offsets
    da = train.deltas
    x = train.positions

    # Per-jump legs.  Jump j (0-based) joins segment j (in) to segment
    # j + 1 (out); the lambda difference is formed from the momenta.
    D, V1, V2, E, diag = [], [], [], [], []
    for j in range(n):
        lo, li = lam[j + 1], lam[j]
        inv = 1.0 / (lo * li)
        d1, d2 = da[j]
        s1 = 2.0 * (q1 - u * l1) - off[j + 1, 0] - off[j, 0]
        s2 = 2.0 * (q2 - u * l2) - off[j + 1, 1] - off[j, 1]
        dlam = -(d1 * s1 + d2 * s2) / (2.0 * u)  # lambda_in - lambda_out
        D.append(dlam * inv)
        o1, o2 = a[j + 1]
        i1, i2 = a[j]
        V1.append((o1 * dlam + d1 * lo) * inv)
        V2.append((o2 * dlam + d2 * lo) * inv)
        E.append(((o1 * o1 + o2 * o2) * dlam + (d1 * (o1 + i1) + d2 * (o2 + i2)) * lo) * inv)
        diag.append(f_kernel(lo, li, d1 * d1 + d2 * d2, u))

    phi = [np.zeros(shape)]
    for j in range(1, n):
        phi.append(phi[j - 1] + (x[j] - x[j - 1]) * lam[j] / (1.0 - u))

    diag_sum = diag[0] + 0.0
    for t in diag[1:]:
        diag_sum = diag_sum + t
    cross_sum = np.zeros(shape)
    cross = []
    for i in range(n):
        for j in range(i + 1, n):
            s_ij = D[i] * D[j] + h * (E[i] * D[j] + E[j] * D[i]
                                      - 2.0 * (V1[i] * V1[j] + V2[i] * V2[j]))
            dphi = phi[i] - phi[j]
            term = 2.0 * np.cos(dphi) * s_ij
            cross_sum = cross_sum + term
            if keep_terms:
                cross.append((i, j, dphi, term))
    return diag_sum + cross_sum, diag_sum, cross_sum, diag if keep_terms else [], cross


def f_total_array(train, probe, u, q1, q2, parts=False):
    """The bare interference sum f_total over broadcast arrays.

    u, q1 and q2 must broadcast against each other.  With parts=True the
    diagonal and cross sums are returned as well (their sum is f_total by
    construction, bit for bit).
    """
    f, dsum, csum, _, _ = _evaluate(train, probe, u, q1, q2)
    return (f, dsum, csum) if parts else f


@dataclass(frozen=True)
class DensityResult:
    """Spectral density at one point with its interference breakdown.

    value = prefactor * f_total; diagonal holds the per-jump kernels (all
    nonnegative, shape (N,)) and cross the per-pair entries
    (i, j, Phi_i - Phi_j, contribution) for 0-based i < j, each
    contribution already including the pair-symmetry factor 2.
    """

    value: float
    f_total: float
    prefactor: float
    diagonal: np.ndarray
    cross: tuple


def master_density(train, probe, point, alpha=ALPHA_FS):
    """Evaluate the full double-sum spectrum at one (u, q_perp) point.

    The scalar path runs the same broadcast code as the grid and
    quadrature evaluations, so a grid node and a point evaluation agree
    bit for bit.
    """
    q1, q2 = point.qperp
    f, _, _, diag, cross = _evaluate(train, probe, point.u, q1, q2, keep_terms=True)
    pref = float(prefactor(point.u, alpha))
    return DensityResult(
        value=pref * float(f),
        f_total=float(f),
        prefactor=pref,
        diagonal=np.array([float(t) for t in diag]),
        cross=tuple((i, j, float(dphi), float(term)) for i, j, dphi, term in cross),
    )


# ----------------------------------------------------------------------
# closed-form reductions
# ----------------------------------------------------------------------

def density_single(xi, probe, point, alpha=ALPHA_FS):
    """Spectrum of the single pulse da = (xi, 0): prefactor * F.

    The two segments carry q_perp and q_perp - (xi, 0); no interference.
    """
    u = point.u
    q1, q2 = point.qperp
    lam_out = lf_dot(probe, u, np.array([q1, q2]))
    lam_in = lf_dot(probe, u, np.array([q1 - xi, q2]))
    return float(prefactor(u, alpha) * f_kernel(lam_out, lam_in, xi * xi, u))


def density_opposite(xi, theta, probe, point, alpha=ALPHA_FS):
    """Two pulses of opposite sign, da = -(xi, 0) at x = -theta and
    da = +(xi, 0) at x = +theta: a two-slit pattern on the single-pulse
    spectrum,

        f_total = 4 sin^2(Theta) F,   Theta = theta l.pibar / (m^2 (1 - u)),

    with pibar = q_perp - (xi, 0) the momentum on the dressed middle
    segment and F the single-pulse kernel.
    """
    u = point.u
    q1, q2 = point.qperp
    lam_q = lf_dot(probe, u, np.array([q1, q2]))
    lam_bar = lf_dot(probe, u, np.array([q1 - xi, q2]))
    big_theta = theta * lam_bar / (1.0 - u)
    f = f_kernel(lam_q, lam_bar, xi * xi, u)
    return float(prefactor(u, alpha) * 4.0 * np.sin(big_theta) ** 2 * f)


def density_samesign(xi, theta, probe, point, alpha=ALPHA_FS):
    """Two pulses of the same sign, da = (xi/2, 0) at x = -theta and at
    x = +theta, which merge into the single pulse xi as theta -> 0:

        f_total = F[q, qbar; xi]
                  + 2 sin^2(Thetahat) (F[q, qhat; xi/2]
                                       + F[qbar, qhat; xi/2]
                                       - F[q, qbar; xi]),

    where qbar = q - (xi, 0), qhat = q - (xi/2, 0) and
    Thetahat = theta l.qhat / (m^2 (1 - u)).
    """
    u = point.u
    q1, q2 = point.qperp
    half = 0.5 * xi
    lam_q = lf_dot(probe, u, np.array([q1, q2]))
    lam_bar = lf_dot(probe, u, np.array([q1 - xi, q2]))
    lam_hat = lf_dot(probe, u, np.array([q1 - half, q2]))
    theta_hat = theta * lam_hat / (1.0 - u)
    f_merged = f_kernel(lam_q, lam_bar, xi * xi, u)
    f_late = f_kernel(lam_q, lam_hat, half * half, u)
    f_early = f_kernel(lam_bar, lam_hat, half * half, u)
    f = f_merged + 2.0 * np.sin(theta_hat) ** 2 * (f_late + f_early - f_merged)
    return float(prefactor(u, alpha) * f)


def fourpulse_factor(big_theta, big_theta0):
    """Interference factor 16 sin^2(Theta) cos^2(Theta + Theta0) of the
    alternating four-pulse train; multiplies the single-pulse kernel.

    Exposed as a pure trig function so that scaling identities (for
    instance the weak-field quadrupling of the integrated probability when
    both angles shrink with the field) can be tested without kinematics.
    """
    s = np.sin(np.asarray(big_theta, dtype=float))
    c = np.cos(np.asarray(big_theta, dtype=float) + np.asarray(big_theta0, dtype=float))
    return 16.0 * s * s * c * c


def density_fourpulse(xi, theta, probe, point, alpha=ALPHA_FS):
    """Four alternating pulses, da = -+(xi, 0) at x = (-3, -1, +1, +3) theta:

        f_total = 16 sin^2(Theta) cos^2(Theta + Theta0) F,

    with Theta = theta l.pibar / (m^2 (1 - u)) on the dressed segments,
    Theta0 = theta l.q / (m^2 (1 - u)) on the undressed middle segment and
    F the single-pulse kernel between q and pibar = q - (xi, 0).

    The first pulse is da = -(xi, 0), so the dressed segments carry
    pibar; the train is built by master_density as
    [(-3 theta, (-xi, 0)), (-theta, (xi, 0)), (theta, (-xi, 0)), (3 theta, (xi, 0))].
    """
    u = point.u
    q1, q2 = point.qperp
    lam_q = lf_dot(probe, u, np.array([q1, q2]))
    lam_bar = lf_dot(probe, u, np.array([q1 - xi, q2]))
    big_theta = theta * lam_bar / (1.0 - u)
    big_theta0 = theta * lam_q / (1.0 - u)
    f = f_kernel(lam_q, lam_bar, xi * xi, u)
    return float(prefactor(u, alpha) * fourpulse_factor(big_theta, big_theta0) * f)


# ----------------------------------------------------------------------
# endpoint limits in u
# ----------------------------------------------------------------------

def endpoint_limits(train, probe, qperp, alpha=ALPHA_FS):
    """Finite limits (L0, L1) of the spectral density at u -> 0 and u -> 1.

    At the endpoints the interference phases grow without bound, so the
    cross terms dephase and only the diagonal survives; per jump the
    kernel times prefactor tends to

        u -> 0:  (alpha / 4 pi^2) |da_j|^2 * 2 / ((1 + |pi_j|^2)(1 + |pi_{j-1}|^2)),
        u -> 1:  the same with pi_k - l_perp in place of pi_k,

    where pi_k = q_perp - (a_N - a_k).  Used to cross thin endpoint strips
    of the u integral analytically.  qperp may be an array of shape
    (..., 2); the returned pair then holds arrays of shape (...).
    """
    q = np.asarray(qperp, dtype=float)
    c = alpha / (4.0 * math.pi ** 2)
    if len(train) == 0:
        z = np.zeros(q.shape[:-1])
        return z + 0.0, z + 0.0
    l1, l2 = probe.lperp
    pi = q[..., None, :] - train.offsets          # (..., N + 1, 2)
    w0 = 1.0 + (pi ** 2).sum(axis=-1)             # 1 + |pi_k|^2
    shifted = pi - np.array([l1, l2])
    w1 = 1.0 + (shifted ** 2).sum(axis=-1)
    dxi2 = (train.deltas ** 2).sum(axis=1)        # |da_j|^2
    lim0 = c * (dxi2 * 2.0 / (w0[..., 1:] * w0[..., :-1])).sum(axis=-1)
    lim1 = c * (dxi2 * 2.0 / (w1[..., 1:] * w1[..., :-1])).sum(axis=-1)
    return lim0, lim1
