"""Adaptive quadrature of the spectral density and dense grid scans.

Three integrals are offered: over the transverse plane at fixed u
(integrate_qperp), over u at fixed q_perp (integrate_u) and over both
(total_probability).  grid_scan tabulates the density on a rectangular
q_perp grid for plotting.

Design notes.  The density falls off only like |q_perp|^-4, with a
coefficient set by the jump strengths, so transverse integrals use a fixed
square cutoff |q1|, |q2| <= q_max and report a rigorous envelope bound on
the neglected exterior (tail_bound) inside the returned error; the value
itself is the integral over the truncated square, which is what a
reference evaluation on the same domain must reproduce.  The u integral is
mapped through the smooth substitution

    u = margin + (1 - 2 margin) (w - sin(2 pi w) / (2 pi)),  w in [0, 1],

whose Jacobian (1 - 2 margin) 2 sin^2(pi w) vanishes at both ends; the
thin strips [0, margin] and [1 - margin, 1] are crossed analytically with
the exact endpoint limits of the density and charged to the error budget
in full.

The panel engine is Gauss-Kronrod 15(7), one-dimensional or as a tensor
product, with the usual rescaled error estimate.  The two-dimensional tree
can serve several integrands at once (all u nodes of an outer interval
share one tree); convergence is then judged on the weight-combined totals,
with the Jacobian as weight, so that nodes contributing nothing to the
outer sum cannot stall refinement, while their individual quadrature
errors still flow into the reported error.  Refinement is strictly
deterministic: worst panel first, ties broken by insertion order, final
totals reduced with compensated summation, so repeated runs (and threaded
grid scans) reproduce identical bits.
"""

import math
from dataclasses import dataclass
from concurrent.futures import ThreadPoolExecutor
from heapq import heappop, heappush
from itertools import count

import numpy as np

from .kinematics import ALPHA_FS, _check_u, h_factor
from .density import endpoint_limits, f_total_array, prefactor

_EPS = np.finfo(float).eps

# ------------------------------------------------------------------ #
#  Gauss-Kronrod 15(7) nodes and weights on [-1, 1]                   #
# ------------------------------------------------------------------ #

_GK_NODES = np.array([
    -0.9914553711208126, -0.9491079123427585, -0.8648644233597691,
    -0.7415311855993944, -0.5860872354676911, -0.4058451513773972,
    -0.2077849550078985, 0.0, 0.2077849550078985, 0.4058451513773972,
    0.5860872354676911, 0.7415311855993944, 0.8648644233597691,
    0.9491079123427585, 0.9914553711208126,
])

_GK_WEIGHTS = np.array([
    0.022935322010529224, 0.06309209262997855, 0.10479001032225018,
    0.14065325971552592, 0.1690047266392679, 0.1903505780647854,
    0.20443294007529889, 0.20948214108472782, 0.20443294007529889,
    0.1903505780647854, 0.1690047266392679, 0.14065325971552592,
    0.10479001032225018, 0.06309209262997855, 0.022935322010529224,
])

# The embedded 7-point Gauss rule lives on the odd-indexed Kronrod nodes.
_G_WEIGHTS = np.array([
    0.12948496616886969, 0.27970539148927664, 0.3818300505051189,
    0.41795918367346938, 0.3818300505051189, 0.27970539148927664,
    0.12948496616886969,
])


def _gk_error(delta, resabs, resasc):
    """Rescaled Kronrod error estimate (vectorized QUADPACK recipe)."""
    delta = np.asarray(delta, dtype=float)
    resabs = np.asarray(resabs, dtype=float)
    resasc = np.asarray(resasc, dtype=float)
    safe = np.where(resasc > 0.0, resasc, 1.0)
    scaled = safe * np.minimum(1.0, (200.0 * delta / safe) ** 1.5)
    err = np.where((resasc > 0.0) & (delta > 0.0), scaled, delta)
    return np.maximum(err, 50.0 * _EPS * resabs)


# ------------------------------------------------------------------ #
#  results and integration parameters                                 #
# ------------------------------------------------------------------ #

@dataclass(frozen=True)
class QuadratureResult:
    """Outcome of an adaptive integration.

    error is a total budget: the Kronrod estimate of the quadrature itself
    plus every neglected piece that can be bounded (transverse tail beyond
    q_max, endpoint strips in u).  converged reports whether the adaptive
    core met the requested tolerance within its evaluation budget; the
    truncation bound is reported, not iterated on, since shrinking it
    needs a larger q_max rather than more panels.
    """

    value: float
    error: float
    neval: int
    converged: bool


@dataclass(frozen=True)
class IntegrationSpec:
    """Tolerances and domain limits shared by the integration routines.

    rel_tol and abs_tol bound the adaptive core in the usual mixed sense
    (err <= max(abs_tol, rel_tol |value|)).  q_max truncates the
    transverse plane; None picks 8 (1 + A + |l_perp|) with A the largest
    segment offset |a_N - a_k|.  u_margin is the half-width of the
    endpoint strips crossed analytically.  max_evals caps the number of
    scalar density evaluations across an entire call.
    """

    rel_tol: float = 1e-8
    abs_tol: float = 0.0
    q_max: float = None
    u_margin: float = 1e-9
    max_evals: int = 50_000_000

    def __post_init__(self):
        if not (np.isfinite(self.rel_tol) and self.rel_tol > 0.0):
            raise ValueError(f"rel_tol must be positive, got {self.rel_tol!r}")
        if not (np.isfinite(self.abs_tol) and self.abs_tol >= 0.0):
            raise ValueError(f"abs_tol must be nonnegative, got {self.abs_tol!r}")
        if self.q_max is not None and not (np.isfinite(self.q_max) and self.q_max > 0.0):
            raise ValueError(f"q_max must be positive, got {self.q_max!r}")
        if not 0.0 < self.u_margin < 0.5:
            raise ValueError(f"u_margin must lie in (0, 0.5), got {self.u_margin!r}")
        if not self.max_evals > 0:
            raise ValueError(f"max_evals must be positive, got {self.max_evals!r}")

    def resolve_q_max(self, train, probe):
        if self.q_max is not None:
            return float(self.q_max)
        return 8.0 * (1.0 + train.max_offset() + math.hypot(*probe.lperp))


# ------------------------------------------------------------------ #
#  one-dimensional adaptive panels                                    #
# ------------------------------------------------------------------ #

def _panels_1d(f, bounds):
    """Evaluate GK15 on each (a, b) in bounds with a single call to f.

    f maps an array of abscissae to (values, uncertainties); the
    uncertainty channel carries pointwise error bounds of the integrand
    itself (zero for exact integrands) and is integrated with the Kronrod
    weights.  Returns panels (a, b, value, gk_error, uncertainty).
    """
    xs = np.concatenate([0.5 * (a + b) + 0.5 * (b - a) * _GK_NODES for a, b in bounds])
    vals, uncs = f(xs)
    vals = np.asarray(vals, dtype=float)
    uncs = np.asarray(uncs, dtype=float)
    panels = []
    for idx, (a, b) in enumerate(bounds):
        v = vals[15 * idx:15 * (idx + 1)]
        h = 0.5 * (b - a)
        k = h * float(v @ _GK_WEIGHTS)
        g = h * float(v[1::2] @ _G_WEIGHTS)
        resabs = h * float(np.abs(v) @ _GK_WEIGHTS)
        resasc = h * float(np.abs(v - k / (b - a)) @ _GK_WEIGHTS)
        err = float(_gk_error(abs(k - g), resabs, resasc))
        unc = h * float(uncs[15 * idx:15 * (idx + 1)] @ _GK_WEIGHTS)
        panels.append((a, b, k, err, unc))
    return panels


def _adaptive_1d(f, a, b, rel_tol, abs_tol, max_evals):
    """Deterministic worst-first refinement of GK15 panels on [a, b].

    Subdivision priority and the convergence test use the Kronrod
    estimate alone: that is the part more panels can reduce.  The
    integrated uncertainty channel is irreducible by construction, so it
    is added to the reported error but must not stall refinement or veto
    convergence.
    """
    order = count()
    heap = []
    for p in _panels_1d(f, [(a, 0.5 * (a + b)), (0.5 * (a + b), b)]):
        heappush(heap, (-p[3], next(order), p))
    neval = 30
    while True:
        value = math.fsum(entry[2][2] for entry in heap)
        quad_err = math.fsum(entry[2][3] for entry in heap)
        error = quad_err + math.fsum(entry[2][4] for entry in heap)
        if quad_err <= max(abs_tol, rel_tol * abs(value)):
            return QuadratureResult(value, error, neval, True)
        if neval + 30 > max_evals:
            return QuadratureResult(value, error, neval, False)
        _, _, worst = heappop(heap)
        pa, pb = worst[0], worst[1]
        mid = 0.5 * (pa + pb)
        for p in _panels_1d(f, [(pa, mid), (mid, pb)]):
            heappush(heap, (-p[3], next(order), p))
        neval += 30


# ------------------------------------------------------------------ #
#  two-dimensional adaptive tensor panels                             #
# ------------------------------------------------------------------ #

def _panels_2d(f, boxes, n_out):
    """Tensor GK15 x GK15 on each box, one batched call to f.

    f maps flat coordinate arrays (qx, qy) to values of shape
    (n_out, npts); every output shares the refinement tree.  Returns
    panels (x0, x1, y0, y1, value_vec, error_vec).
    """
    qx, qy = [], []
    for x0, x1, y0, y1 in boxes:
        xn = 0.5 * (x0 + x1) + 0.5 * (x1 - x0) * _GK_NODES
        yn = 0.5 * (y0 + y1) + 0.5 * (y1 - y0) * _GK_NODES
        qx.append(np.repeat(xn, 15))
        qy.append(np.tile(yn, 15))
    vals = np.asarray(f(np.concatenate(qx), np.concatenate(qy)), dtype=float)
    vals = vals.reshape(n_out, len(boxes), 15, 15)
    panels = []
    for idx, (x0, x1, y0, y1) in enumerate(boxes):
        v = vals[:, idx]
        scale = 0.25 * (x1 - x0) * (y1 - y0)
        k = scale * np.einsum("i,j,oij->o", _GK_WEIGHTS, _GK_WEIGHTS, v)
        g = scale * np.einsum("i,j,oij->o", _G_WEIGHTS, _G_WEIGHTS, v[:, 1::2, 1::2])
        resabs = scale * np.einsum("i,j,oij->o", _GK_WEIGHTS, _GK_WEIGHTS, np.abs(v))
        mean = k / ((x1 - x0) * (y1 - y0))
        resasc = scale * np.einsum("i,j,oij->o", _GK_WEIGHTS, _GK_WEIGHTS,
                                   np.abs(v - mean[:, None, None]))
        err = _gk_error(np.abs(k - g), resabs, resasc)
        panels.append((x0, x1, y0, y1, k, err))
    return panels


def _adaptive_2d(f, x0, x1, y0, y1, rel_tol, abs_tol, max_evals, n_out,
                 weights=None):
    """Shared-tree refinement over [x0, x1] x [y0, y1] for n_out outputs.

    Convergence is judged on the weighted combination
    sum_o weights_o err_o <= max(abs_tol, rel_tol sum_o weights_o |val_o|),
    with unit weights by default; per-output errors are still returned in
    full.  Returns (values, errors, neval, converged), the totals
    recomputed with compensated summation.
    """
    w = np.ones(n_out) if weights is None else np.asarray(weights, dtype=float)
    xm, ym = 0.5 * (x0 + x1), 0.5 * (y0 + y1)
    boxes = [(x0, xm, y0, ym), (xm, x1, y0, ym), (x0, xm, ym, y1), (xm, x1, ym, y1)]
    order = count()
    heap = []
    val_run = np.zeros(n_out)
    err_run = np.zeros(n_out)
    for p in _panels_2d(f, boxes, n_out):
        heappush(heap, (-float(w @ p[5]), next(order), p))
        val_run += p[4]
        err_run += p[5]
    neval = 4 * 225 * n_out
    converged = False
    while True:
        if float(w @ err_run) <= max(abs_tol, rel_tol * float(w @ np.abs(val_run))):
            converged = True
            break
        if neval + 4 * 225 * n_out > max_evals:
            break
        _, _, worst = heappop(heap)
        wx0, wx1, wy0, wy1 = worst[0], worst[1], worst[2], worst[3]
        val_run -= worst[4]
        err_run -= worst[5]
        wxm, wym = 0.5 * (wx0 + wx1), 0.5 * (wy0 + wy1)
        children = [(wx0, wxm, wy0, wym), (wxm, wx1, wy0, wym),
                    (wx0, wxm, wym, wy1), (wxm, wx1, wym, wy1)]
        for p in _panels_2d(f, children, n_out):
            heappush(heap, (-float(w @ p[5]), next(order), p))
            val_run += p[4]
            err_run += p[5]
        neval += 4 * 225 * n_out
    values = np.array([math.fsum(entry[2][4][o] for entry in heap) for o in range(n_out)])
    errors = np.array([math.fsum(entry[2][5][o] for entry in heap) for o in range(n_out)])
    return values, errors, neval, converged


# ------------------------------------------------------------------ #
#  tail bounds beyond the transverse cutoff                           #
# ------------------------------------------------------------------ #

def _j_tail(t_min, radius):
    """integral_{t_min}^{inf} (t + radius) / (1 + t^2)^2 dt, closed form."""
    t = np.asarray(t_min, dtype=float)
    return (0.5 / (1.0 + t * t)
            + radius * (0.25 * math.pi - 0.5 * np.arctan(t) - 0.5 * t / (1.0 + t * t)))


def tail_bound(train, probe, u, q_max, alpha=ALPHA_FS):
    """Rigorous bound on the spectral density integrated outside the square
    |q1|, |q2| <= q_max, at fixed u (vectorized over u).

    Every segment invariant obeys lambda_k >= (1 + (r - A)^2) / (2u) for
    |q_perp| = r >= A, where A = max_k |a_N - a_k + u l_perp| is the
    largest segment center, and the double sum obeys

        |f_total| <= (1 + |h| max_{k,k'} |a_k - a_{k'}|^2)
                     (sum over legs of 1/lambda)^2
                  <= W 4 (N + 1)^2 (2u)^2 / (1 + (r - A)^2)^2 .

    Integrating the envelope over the whole exterior of the inscribed
    circle r = q_max (a superset of the square's exterior) and applying
    the prefactor gives the returned value.  Where q_max <= A the envelope
    says nothing and +inf is returned.
    """
    u = np.asarray(u, dtype=float)
    _check_u(u)
    if len(train) == 0:
        return np.zeros(u.shape) + 0.0
    lvec = np.array(probe.lperp)
    centers = train.offsets + np.multiply.outer(u, lvec)[..., None, :]
    biggest = np.sqrt((centers ** 2).sum(axis=-1)).max(axis=-1)
    a = train.a_values
    spread = ((a[:, None, :] - a[None, :, :]) ** 2).sum(axis=-1).max()
    weight = 1.0 + np.abs(h_factor(u)) * spread
    n_seg = len(train) + 1
    t_min = q_max - biggest
    envelope = (2.0 * math.pi * weight * 4.0 * n_seg ** 2 * (2.0 * u) ** 2
                * _j_tail(t_min, biggest))
    bound = prefactor(u, alpha) * envelope
    return np.where(t_min > 0.0, bound, np.inf)


def _strip_tail(train, centers, q_max, alpha):
    """Bound on one endpoint limit integrated outside the square cutoff.

    The u -> 0 limit obeys L0(q) <= (alpha / 4 pi^2) sum_j 2 |da_j|^2 /
    (1 + (r - A)^2)^2 once r >= A = max_k |a_N - a_k|; the u -> 1 limit is
    the same with centers shifted by l_perp.  Pass the relevant center
    set; +inf where the cutoff does not clear it.
    """
    biggest = float(np.sqrt((centers ** 2).sum(axis=-1)).max())
    t_min = q_max - biggest
    if t_min <= 0.0:
        return math.inf
    dxi2 = float((train.deltas ** 2).sum())
    return (alpha / (4.0 * math.pi ** 2) * 2.0 * dxi2
            * 2.0 * math.pi * float(_j_tail(t_min, biggest)))


# ------------------------------------------------------------------ #
#  the integrals                                                      #
# ------------------------------------------------------------------ #

def integrate_qperp(train, probe, u, spec=None, alpha=ALPHA_FS):
    """dP/du at fixed u: the density integrated over the truncated
    transverse plane, with the exterior tail bound charged to the error."""
    spec = spec if spec is not None else IntegrationSpec()
    u = float(u)
    _check_u(u)
    if len(train) == 0:
        return QuadratureResult(0.0, 0.0, 0, True)
    big_q = spec.resolve_q_max(train, probe)
    pref = float(prefactor(u, alpha))

    def f(qx, qy):
        return pref * f_total_array(train, probe, u, qx, qy)[None, :]

    values, errors, neval, converged = _adaptive_2d(
        f, -big_q, big_q, -big_q, big_q, spec.rel_tol, spec.abs_tol,
        spec.max_evals, n_out=1)
    tail = float(tail_bound(train, probe, u, big_q, alpha))
    return QuadratureResult(float(values[0]), float(errors[0]) + tail, neval, converged)


def _map_u(w, margin):
    """The smooth w -> u substitution and its Jacobian du/dw."""
    w = np.asarray(w, dtype=float)
    span = 1.0 - 2.0 * margin
    u = margin + span * (w - np.sin(2.0 * math.pi * w) / (2.0 * math.pi))
    jac = span * 2.0 * np.sin(math.pi * w) ** 2
    return u, jac


def integrate_u(train, probe, qperp, spec=None, alpha=ALPHA_FS):
    """dP/d^2q at fixed q_perp: the density integrated over u in (0, 1).

    The open interval is covered by the smooth map on [margin, 1 - margin]
    plus analytic endpoint strips margin * L0 and margin * L1, which enter
    the value and, in full, the error budget.
    """
    spec = spec if spec is not None else IntegrationSpec()
    if len(train) == 0:
        return QuadratureResult(0.0, 0.0, 0, True)
    q1, q2 = float(qperp[0]), float(qperp[1])
    margin = spec.u_margin

    def g(w):
        u, jac = _map_u(w, margin)
        vals = prefactor(u, alpha) * f_total_array(train, probe, u, q1, q2)
        return vals * jac, np.zeros_like(u)

    core = _adaptive_1d(g, 0.0, 1.0, spec.rel_tol, spec.abs_tol, spec.max_evals)
    lim0, lim1 = endpoint_limits(train, probe, (q1, q2), alpha)
    strips = margin * (float(lim0) + float(lim1))
    return QuadratureResult(core.value + strips, core.error + strips,
                            core.neval, core.converged)


def total_probability(train, probe, spec=None, alpha=ALPHA_FS):
    """Total pair-creation probability over the truncated domain.

    Outer adaptive u integral (through the smooth map) of inner
    transverse-plane integrals; all u nodes of an outer interval share one
    inner panel tree, refined against the Jacobian-weighted batch so that
    nodes with negligible outer weight cannot stall it.  The error
    combines the outer Kronrod estimate, the inner quadrature errors, the
    transverse tail bound at every u node and the endpoint strips in full.
    """
    spec = spec if spec is not None else IntegrationSpec()
    if len(train) == 0:
        return QuadratureResult(0.0, 0.0, 0, True)
    big_q = spec.resolve_q_max(train, probe)
    margin = spec.u_margin
    budget = [spec.max_evals]
    neval_inner = [0]
    inner_ok = [True]

    def dpdu(w):
        u, jac = _map_u(w, margin)
        pref = prefactor(u, alpha)

        def f(qx, qy):
            return pref[:, None] * f_total_array(
                train, probe, u[:, None], qx[None, :], qy[None, :])

        values, errors, used, converged = _adaptive_2d(
            f, -big_q, big_q, -big_q, big_q, 0.25 * spec.rel_tol, 0.0,
            max(budget[0], 1), n_out=len(u), weights=jac)
        budget[0] -= used
        neval_inner[0] += used
        inner_ok[0] = inner_ok[0] and converged
        tails = tail_bound(train, probe, u, big_q, alpha)
        return values * jac, (errors + tails) * jac

    outer = _adaptive_1d(dpdu, 0.0, 1.0, spec.rel_tol, spec.abs_tol,
                         max_evals=10_000)

    # Endpoint strips: margin times the transverse integral of each limit,
    # all of it charged to the error, plus the limits' own exterior tails.
    def limits(qx, qy):
        q = np.stack([qx, qy], axis=-1)
        lim0, lim1 = endpoint_limits(train, probe, q, alpha)
        return np.stack([lim0, lim1])

    lvals, lerrs, lneval, lconv = _adaptive_2d(
        limits, -big_q, big_q, -big_q, big_q, 1e-6, 0.0,
        max(budget[0], 1), n_out=2)
    lvec = np.array(probe.lperp)
    strip_value = margin * float(lvals.sum())
    strip_error = (strip_value + margin * float(lerrs.sum())
                   + margin * _strip_tail(train, train.offsets, big_q, alpha)
                   + margin * _strip_tail(train, train.offsets - lvec, big_q, alpha))

    value = outer.value + strip_value
    error = outer.error + strip_error
    neval = neval_inner[0] + lneval
    converged = outer.converged and inner_ok[0] and lconv
    return QuadratureResult(value, error, neval, converged)


# ------------------------------------------------------------------ #
#  grid scans                                                         #
# ------------------------------------------------------------------ #

@dataclass(frozen=True)
class GridResult:
    """Density tabulated on a rectangular grid.

    density[i2, i1] belongs to (q1[i1], q2[i2]); diagonal and cross split
    it into the positive per-jump part and the interference part.  Each
    of the three is scaled by the prefactor independently, so density
    equals diagonal + cross up to one rounding step per element.  With
    bare=True the prefactor is left out and the split is exact; density
    then holds f_total itself.
    """

    q1: np.ndarray
    q2: np.ndarray
    density: np.ndarray
    diagonal: np.ndarray
    cross: np.ndarray
    u: float
    bare: bool


def grid_scan(train, probe, u, q1, q2, alpha=ALPHA_FS, bare=False, threads=1):
    """Tabulate the density on the tensor grid q1 x q2 at fixed u.

    threads > 1 splits the q2 rows across a thread pool; every element is
    computed by the same elementwise kernel, so the result is identical
    bit for bit to the serial scan.
    """
    u = float(u)
    _check_u(u)
    q1 = np.atleast_1d(np.asarray(q1, dtype=float))
    q2 = np.atleast_1d(np.asarray(q2, dtype=float))
    if q1.ndim != 1 or q2.ndim != 1:
        raise ValueError("grid axes must be one-dimensional")
    scale = 1.0 if bare else float(prefactor(u, alpha))
    density = np.empty((q2.size, q1.size))
    diagonal = np.empty_like(density)
    cross = np.empty_like(density)

    def fill(lo, hi):
        f, dsum, csum = f_total_array(
            train, probe, u, q1[None, :], q2[lo:hi, None], parts=True)
        density[lo:hi] = scale * f
        diagonal[lo:hi] = scale * dsum
        cross[lo:hi] = scale * csum

    threads = max(1, int(threads))
    if threads == 1 or q2.size < 2 * threads:
        fill(0, q2.size)
    else:
        edges = np.linspace(0, q2.size, threads + 1).astype(int)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(lambda k: fill(edges[k], edges[k + 1]), range(threads)))
    return GridResult(q1=q1, q2=q2, density=density, diagonal=diagonal,
                      cross=cross, u=u, bare=bare)
