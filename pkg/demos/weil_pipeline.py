"""
Rebuilding the split family from the Weil representation
==========================================================

Diagonalize rho on the diagonal torus, then move the eigenbasis around with
coset representatives of the torus normalizer. Every resulting vector is
+1 or -1 times a member of the closed-form split family.
"""

import numpy as np

from seqlab import make_field
from seqlab.seqcore import F
from seqlab.weil import (
    coset_representatives,
    lower_unipotent,
    rho,
    standard_torus_basis,
    verify_intertwining,
    verify_theorem2,
    weyl_element,
)

f = make_field(7)

basis = standard_torus_basis(f)
print(len(basis), "torus eigenvectors,", len(coset_representatives(f)), "cosets")

rep = verify_theorem2(f)
print("matched pairs:", rep.count, "pass:", rep.passed)
print("scalars:", rep.scalars_summary)
print("index predictions that hit:", rep.details["index_prediction_hits"])

# rho intertwines the Heisenberg operators up to a unit scalar
for g in (weyl_element(7), lower_unipotent(7, 3)):
    r = verify_intertwining(f, g, (1, 2, 0))
    print(g, "residual", f"{r.worst_residual:.1e}")

# the Weyl element acts as the Fourier transform, up to a unit scalar
W = rho(f, weyl_element(7)).matrix(7)
Fm = F().matrix(7)
c = W[0, 0] / Fm[0, 0]
print("scalar", np.round(c, 12), "residual", f"{np.abs(W - c * Fm).max():.1e}")
