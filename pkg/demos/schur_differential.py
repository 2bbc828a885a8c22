"""
The differential on symmetric polynomials
=========================================

"""

from pdgcalc import symcalc
from pdgcalc.symcalc import SymElement

# x_i -> x_i^2 on Pol_3 over F_5, then read the answer in the Schur basis
p, n = 5, 3
for lam in [(1,), (2, 1), (2, 2, 1)]:
    print(lam, "->", symcalc.diff_schur(lam, n, p).coeffs)

# each coefficient is the content of the added box, mod p
print(symcalc.content_of_added_box((2, 1), 1), symcalc.content_of_added_box((2, 1), 3))

# e_k and h_k
e2 = symcalc.elementary(2, n, p)
print("d e2 =", e2.diff().coeffs)
print("e1 e2 - 3 e3 =", (symcalc.elementary(1, n, p) * e2 - symcalc.elementary(3, n, p).scale(3)).coeffs)

# p applications kill everything
f = SymElement.pi((3, 1), n, p)
for _ in range(p):
    f = f.diff()
print("d^p pi_(3,1) is zero:", f.is_zero())
