"""
Cohomology of the rank-one modules S_n(a)
=========================================

"""

from pdgcalc import grasmod

# p = 3: below p the module is acyclic for 1 <= a <= n
for n, a in [(2, 1), (2, 2), (2, 0), (3, 0), (4, 1), (4, 2)]:
    rep = grasmod.truncated_cohomology_S(n, a, 3)
    print(n, a, rep.kind, rep.observed, "resolved through degree", rep.resolved_limit)
