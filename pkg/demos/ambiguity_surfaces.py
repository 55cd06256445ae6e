"""
Ambiguity surfaces
==================

The ambiguity function correlates two sequences over every time shift t
and frequency shift w. A good radar or CDMA family keeps it small away
from the origin.
"""

import math

import numpy as np

from seqlab import ambiguity_surface, chu_sequence, heisenberg_sequence, make_field, omega_sequence

p = 7
f = make_field(p)

phi = omega_sequence(f, 10)
surf = ambiguity_surface(phi)
A = np.abs(surf.values)
print("A(0,0) =", A[0, 0])  # the energy, p - 1
A[0, 0] = 0
print(f"largest sidelobe {A.max():.4f}, bound 2 sqrt(p) = {2 * math.sqrt(p):.4f}")

# a chirp has perfect autocorrelation, but a frequency shift is the same as a
# time shift, so its sidelobes hit p somewhere else in the plane
chu = np.abs(ambiguity_surface(chu_sequence(f, 1)).values)
print("chu w=0 column:", np.round(chu[:, 0], 9))
print("chu peak off the w=0 column:", round(chu[:, 1:].max(), 9))

h = np.abs(ambiguity_surface(heisenberg_sequence(f, 2, 3)).values)
h[0, 0] = 0
print("heisenberg sidelobe peak:", round(h.max(), 9))

# the surface is CSV-ready
print(surf.to_csv().splitlines()[:3])
