"""Exact p-DG computations over F_p.

qring      quantum integers and the cyclotomic ring O_p
symcalc    symmetric polynomials, Schur functions and their differential
pcx        p-complexes, block decompositions, the matrix example
nilhecke   the nilHecke algebra acting on polynomials
grasmod    Grassmannian modules, pairings, finite cells, cohomology
fcverify   DG and fantastic filtrations
umodel     the thick calculus in a flag-bimodule representation
cli        the ``verify`` command
"""

__version__ = "0.1.0"
