"""
Comparing families
==================

Chirps, Heisenberg sequences and the cubic family all have flat spectra,
but their ambiguity sidelobes are very different.
"""

from seqlab import compare_families, make_field, verify_family, FamilyDescriptor
from seqlab.analysis import rows_to_csv

for p in (5, 7):
    print(rows_to_csv(compare_families(make_field(p))))

f = make_field(11)
rep = verify_family(f, FamilyDescriptor("split_oscillator", f, normalized=True), checks=("ambiguity",))
print("normalized split family at p=11:", rep.measured, rep.passes)
