"""Two equal kicks: three peaks, but only the middle one is coherent.

Splitting one pulse a = (xi, 0) into two half kicks xi/2 at +-theta opens
a third channel: creation between the pulses, which collects only half the
momentum.  The outer peaks at q = 0 and q = a are shared by both creation
orders and barely interfere; the new middle peak at q = a/2 carries the
full fringe pattern.
"""

import math

import numpy as np

from pairtrain import PhotonProbe, normalize_train
from pairtrain.density import f_total_array

xi, theta, u = 12.0, 1.0, 0.5
probe = PhotonProbe()
train = normalize_train([(-theta, (0.5 * xi, 0.0)), (theta, (0.5 * xi, 0.0))])

# slice along q2 = 0: peaks near q1 = 0, xi/2 and xi
q1 = np.linspace(-2.0, 14.0, 3201)
f = f_total_array(train, probe, u, q1, np.zeros_like(q1))
top = f.max()
for c in (0.0, 0.5 * xi, xi):
    window = (q1 >= c - 0.5) & (q1 <= c + 0.5)
    print(f"peak near q1 = {c:4.1f}: height {f[window].max() / top:.3f} of maximum")

# fringe contrast over one oscillation period of the middle-segment phase
# Thetahat = 2 (1 + (q1 - 6)^2); the middle peak blinks, the outer ones do not
def contrast(lo, hi):
    x = np.linspace(lo, hi, 2001)
    y = f_total_array(train, probe, u, x, np.zeros_like(x))
    return (y.max() - y.min()) / (y.max() + y.min())

mid = contrast(6.0, 6.0 + math.sqrt(math.pi / 2.0))
outer = contrast(0.0, 6.0 - math.sqrt(36.0 - math.pi / 2.0))
print(f"\nfringe contrast: middle peak {mid:.3f}, outer peak {outer:.3f}")
print("the half-kick channel is the only one that interferes strongly")
