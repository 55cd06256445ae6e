"""
Building the multiplicative-character family
=============================================

Each member mixes a power of a multiplicative character with a quadratic
chirp and a linear phase. At p = 5 there are 75 of them.
"""

import numpy as np

from seqlab import make_field, omega_sequence, spectrum_max
from seqlab.families import omega_indices

f = make_field(5)
print("generator:", f.a)

# the first member is just theta^{log i} with a zero in front
phi = omega_sequence(f, 0)
print(phi.label, np.round(phi.values, 6))

# n unpacks into (x, y, z)
for n in (0, 1, 2, 73, 74):
    print(n, omega_indices(5, n), omega_sequence(f, n).exact)

# Fourier magnitudes never exceed 2, which keeps the PAPR small
worst = max(spectrum_max(omega_sequence(f, n)) for n in range(75))
print(f"largest Fourier magnitude over the family: {worst:.4f}")
