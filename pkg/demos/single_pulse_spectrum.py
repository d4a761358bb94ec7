"""A single delta kick: the positron spectrum has two peaks.

A photon converts inside one pulse that transfers transverse momentum
a = (xi, 0) to the positron.  A pair created before the kick is pushed to
q = a, one created after stays at q = 0, so the spectrum is a double bump
with no interference in between.
"""

import numpy as np

from pairtrain import PhotonProbe, SpectrumPoint, normalize_train
from pairtrain.density import density_single, master_density
from pairtrain.integrate import grid_scan

xi = 5.0
probe = PhotonProbe()                     # head-on photon, l_perp = 0
train = normalize_train([(0.0, (xi, 0.0))])

# the closed form and the general evaluator agree at machine precision
point = SpectrumPoint(u=0.5, qperp=(1.0, 0.5))
closed = density_single(xi, probe, point)
general = master_density(train, probe, point).value
print(f"density at u=1/2, q=(1.0, 0.5): {general:.6e}  (closed form {closed:.6e})")

# scan the transverse plane and locate the two maxima
q1 = np.linspace(-2.0, 7.0, 241)
q2 = np.linspace(-3.0, 3.0, 161)
scan = grid_scan(train, probe, 0.5, q1, q2)
d = scan.density
print(f"grid {d.shape[1]} x {d.shape[0]}, peak value {d.max():.3e}")

# peaks sit where one of the two segment momenta vanishes
for label, window in (("q ~ 0", q1 < 2.5), ("q ~ a", q1 >= 2.5)):
    sub = d[:, window]
    i2, i1 = np.unravel_index(sub.argmax(), sub.shape)
    print(f"  {label}: maximum at q1={q1[window][i1]:+.3f}, q2={q2[i2]:+.3f}")

# away from the peaks the density falls like 1/|q|^4
for r in (6.0, 12.0, 24.0):
    val = master_density(train, probe, SpectrumPoint(0.5, (r, 0.0))).value
    print(f"  at q=({r:4.0f}, 0): {val:.3e}")
