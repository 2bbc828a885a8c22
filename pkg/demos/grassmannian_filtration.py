"""
A fantastic filtration on E^(a) E^(b)
=====================================

"""

from pdgcalc import fcverify, grasmod
from pdgcalc.qring import quantum_binomial

# S_{2,1}(-1, 0): Sym_2 (x) Sym_1 with the twisted differential
a, b, p = 2, 1, 5
print(grasmod.finite_cell_sweep(a, b, p))

# split it into copies of Sym_3, one per partition in the 2 x 1 box
datum = fcverify.ee_decomposition(a, b, p)
rep = fcverify.verify_fc(datum)
print({k: v.passed for k, v in rep.conditions.items()})

# the shifts give the multiplication rule in K_0
print(rep.k0_relation(), "==", quantum_binomial(a + b, a))

# the same pieces in the opposite order are not fantastic
print(fcverify.verify_fc(datum.reversed()).first_failure())
