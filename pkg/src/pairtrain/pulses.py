"""Trains of delta-function laser pulses and the piecewise kinematics they induce.

A train is a finite ordered list of jumps (x_j, da_j): at lightfront
position x_j the transverse gauge potential a_perp jumps by da_j (both in
units of m, positions in units of m^2 / n.l).  Between jumps the
potential is constant, so the dressed positron momentum is constant on
each of the N + 1 segments separating N jumps.

With cumulative values a_k = sum_{i <= k} da_i (a_0 = 0) the transverse
momentum of a positron that leaves the train with q_perp is, on segment
k (the piece between jump k-1 and jump k, counting segments 0..N),

    pi_k = q_perp - (a_N - a_k),

i.e. the final momentum minus the potential still to be crossed.  The
invariant lambda_k = l.pi_k / m^2 of each segment drives both the
emission kernel and the phase accumulated between jumps,

    Phi_j = sum_{k=1}^{j} (x_k - x_{k-1}) lambda_k / (1 - u),

with Phi_0 = 0 (phases of later jumps are measured relative to the first).
Half the phase difference Phi_j - Phi_i equals the classical quantity
(u / (2 (1 - u))) l.dx, where dx is the spacetime displacement a classical
positron accumulates drifting from jump i to jump j; classical_drift
evaluates that contraction from explicit 4-vectors as an independent
cross-check of the phase bookkeeping.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .kinematics import _as_pair, lf_dot


@dataclass(frozen=True)
class Jump:
    """A single delta-function pulse: at position x, a_perp jumps by da."""

    x: float
    da: tuple

    def __post_init__(self):
        x = float(self.x)
        if not np.isfinite(x):
            raise ValueError(f"jump position must be finite, got {self.x!r}")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "da", _as_pair(self.da, "da"))


@dataclass(frozen=True)
class PulseTrain:
    """An ordered train of jumps with strictly increasing positions.

    Construct through normalize_train, which sorts, merges coincident
    jumps and drops vanishing ones; direct construction insists on the
    normalized form.
    """

    jumps: tuple

    def __post_init__(self):
        jumps = tuple(j if isinstance(j, Jump) else Jump(*j) for j in self.jumps)
        for prev, cur in zip(jumps, jumps[1:]):
            if not cur.x > prev.x:
                raise ValueError("jump positions must be strictly increasing; use normalize_train")
        for j in jumps:
            if j.da[0] == 0.0 and j.da[1] == 0.0:
                raise ValueError("jumps with da = 0 carry no pulse; use normalize_train")
        object.__setattr__(self, "jumps", jumps)

    def __len__(self):
        return len(self.jumps)

    @cached_property
    def positions(self):
        """Jump positions x_j, shape (N,)."""
        return np.array([j.x for j in self.jumps], dtype=float)

    @cached_property
    def deltas(self):
        """Potential jumps da_j, shape (N, 2)."""
        return np.array([j.da for j in self.jumps], dtype=float).reshape(len(self.jumps), 2)

    @cached_property
    def a_values(self):
        """Cumulative potential a_k on segment k, shape (N + 1, 2); a_0 = 0."""
        a = np.zeros((len(self.jumps) + 1, 2))
        if self.jumps:
            np.cumsum(self.deltas, axis=0, out=a[1:])
        return a

    @cached_property
    def offsets(self):
        """Momentum offsets a_N - a_k per segment, shape (N + 1, 2).

        Segment k carries pi_k = q_perp - offsets[k]; offsets[N] = 0, so the
        last segment is the free outgoing positron.
        """
        return self.a_values[-1] - self.a_values

    def max_offset(self):
        """Largest |a_N - a_k| over the segments (0.0 for the empty train)."""
        return float(np.sqrt((self.offsets ** 2).sum(axis=1)).max()) if self.jumps else 0.0


def normalize_train(jumps):
    """Build a PulseTrain from an unordered iterable of jumps.

    Jumps may be Jump instances or (x, (da1, da2)) pairs.  The list is
    sorted by (x, da1, da2), which makes the result independent of input
    order bit for bit; jumps at exactly equal positions are merged by
    adding their da, and jumps whose merged da vanishes are dropped.
    """
    items = []
    for j in jumps:
        j = j if isinstance(j, Jump) else Jump(*j)
        items.append((j.x, j.da[0], j.da[1]))
    items.sort()
    merged = []
    for x, d1, d2 in items:
        if merged and merged[-1][0] == x:
            merged[-1][1] += d1
            merged[-1][2] += d2
        else:
            merged.append([x, d1, d2])
    return PulseTrain(tuple(Jump(x, (d1, d2)) for x, d1, d2 in merged
                            if not (d1 == 0.0 and d2 == 0.0)))


@dataclass(frozen=True)
class SegmentMomentumTable:
    """Per-segment dressed momenta for one spectrum point.

    piperp[k] is the transverse momentum on segment k (shape (N + 1, 2))
    and lam[k] the invariant l.pi_k / m^2 (shape (N + 1,)).  Segment N is
    the outgoing positron, so piperp[-1] == q_perp.
    """

    piperp: np.ndarray
    lam: np.ndarray


def segment_momenta(train, probe, point):
    """Tabulate pi_k = q_perp - (a_N - a_k) and lambda_k for every segment."""
    pi = np.asarray(point.qperp, dtype=float) - train.offsets
    return SegmentMomentumTable(piperp=pi, lam=lf_dot(probe, point.u, pi))


def accumulated_phases(train, probe, point):
    """Interference phases Phi_j of the N jumps, shape (N,); Phi_0 = 0.

    Phi_j = sum_{k=1..j} (x_k - x_{k-1}) lambda_k / (1 - u), the lightfront
    phase a positron created at the first jump accumulates before jump j.
    """
    n = len(train)
    phi = np.zeros(n)
    if n > 1:
        lam = segment_momenta(train, probe, point).lam
        inc = np.diff(train.positions) * lam[1:-1] / (1.0 - point.u)
        np.cumsum(inc, out=phi[1:])
    return phi


def classical_drift(train, probe, point, i, j, scale=1.0):
    """(u / (2 (1 - u))) l.dx for a classical drift from jump i to jump j.

    Built from explicit 4-vectors: the probe photon l and each segment
    momentum pi_k are promoted on shell with lightfront scale n.l = scale
    (any scale > 0 gives the same answer; the contraction is invariant),
    the positron drifts for the lightfront span of each segment with
    4-velocity pi_k / (u n.l), and l.dx is contracted with the (+,-,-,-)
    metric.  Equals (Phi_j - Phi_i) / 2, which accumulated_phases computes
    without ever forming 4-vectors.
    """
    if not 0 <= i <= j < len(train):
        raise ValueError(f"need 0 <= i <= j < {len(train)}, got i={i}, j={j}")
    s = float(scale)
    if not s > 0.0:
        raise ValueError(f"scale must be positive, got {scale!r}")
    u = point.u

    # 4-vectors are stored by lightfront components (minus, plus, perp1,
    # perp2) with minus = n.v = v0 + v3 and the plus component fixed on
    # shell: v_plus = (m^2 + |v_perp|^2) / v_minus (m = 0 for the photon).
    l1, l2 = probe.lperp
    l_minus = s
    l_plus = (l1 * l1 + l2 * l2) / s

    def mdot(am, ap, a1, a2, bm, bp, b1, b2):
        return 0.5 * (am * bp + ap * bm) - a1 * b1 - a2 * b2

    table = segment_momenta(train, probe, point)
    x = train.positions
    dx = [0.0, 0.0, 0.0, 0.0]  # (minus, plus, perp1, perp2) components
    for k in range(i + 1, j + 1):
        p1, p2 = table.piperp[k]
        p_minus = u * s
        p_plus = (1.0 + p1 * p1 + p2 * p2) / p_minus
        # lightfront span of segment k in physical units is (x_k - x_{k-1}) s;
        # the drift velocity is pi / n.q with n.q = u s.
        span = (x[k] - x[k - 1]) * s / (u * s)
        dx[0] += span * p_minus
        dx[1] += span * p_plus
        dx[2] += span * p1
        dx[3] += span * p2
    ldx = mdot(l_minus, l_plus, l1, l2, dx[0], dx[1], dx[2], dx[3])
    return u / (2.0 * (1.0 - u)) * ldx
