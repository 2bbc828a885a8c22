"""
E F 1_n in the flag representation
==================================

"""

from pdgcalc import umodel

# weight 1 inside flags of size 5, over F_5
a, b, n = 1, 1, 1
ctx = umodel.FlagContext(5, 5)

# inclusions lambda^i_alpha and their degrees
lams = umodel.stosic_inclusions(a, b, n, ctx)
for lam in lams:
    print(lam.label, lam.source, "degree", lam.degree())

# projections, then the full check
rep = umodel.verify_stosic_fc(a, b, n, ctx)
print({k: v.passed for k, v in rep.conditions.items()})
print(umodel.stosic_k0_line(a, b, n))

# a thick example: the left crossing differential in two contexts
print(umodel.formula_results("eq-dif-left-crossing", {"a": 2, "b": 1, "n": 1}, 3))
