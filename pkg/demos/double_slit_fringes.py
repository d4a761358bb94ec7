"""Two opposite kicks act like a double slit in time.

The train -a at x = -theta, +a at x = +theta leaves the final momentum of
early and late pairs untouched but dresses the segment in between.  The
two ways of ending up at the same q interfere: the spectrum is the single
pulse result times 4 sin^2(Theta), where 2 Theta is the phase the positron
accumulates while crossing the dressed segment.
"""

import numpy as np

from pairtrain import PhotonProbe, SpectrumPoint, normalize_train
from pairtrain.density import density_opposite, master_density
from pairtrain.pulses import accumulated_phases, classical_drift

xi, theta, u = 5.0, 1.0, 0.5
probe = PhotonProbe()
train = normalize_train([(-theta, (-xi, 0.0)), (theta, (xi, 0.0))])

# the interference phase is a classical quantity: twice the drift term
# l.dx of the positron travelling between the two kicks
point = SpectrumPoint(u, (2.0, 0.0))
phases = accumulated_phases(train, probe, point)
drift = classical_drift(train, probe, point, 0, 1)
print(f"phase difference {phases[1] - phases[0]:.6f} = 2 x drift {drift:.6f}")

# fringes along the q1 axis: zeros where sin(Theta) = 0
q1 = np.linspace(3.5, 6.5, 13)
print("\n  q1     master        closed        fringe factor")
for x in q1:
    got = master_density(train, probe, SpectrumPoint(u, (x, 0.0)))
    closed = density_opposite(xi, theta, probe, SpectrumPoint(u, (x, 0.0)))
    diag = got.prefactor * sum(got.diagonal)
    print(f"{x:5.2f}  {got.value:.6e}  {closed:.6e}  {2.0 * got.value / diag:10.4f}")

# the fringe factor oscillates between 0 and 4: creation probability at
# matching q doubles the amplitude, not the probability
