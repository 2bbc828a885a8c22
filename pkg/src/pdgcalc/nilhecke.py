"""The nilHecke algebra NH_n acting on Pol_n.

Operators are Sym_n-linear maps of Pol_n.  Pol_n is free over Sym_n on
B_n^+ = {x^c : c_i <= n - i}, so two operators are equal exactly when they
agree on B_n^+; that is the equality used throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import product as iproduct

import numpy as np

from . import symcalc
from ._linalg import solve
from .symcalc import PolyElement, diff_pol, partitions_of, schur_to_monomials


@dataclass(frozen=True)
class TwistVector:
    """a = (a_1, ..., a_n); d(v) = (sum a_i x_i) v, deg v = n(1 - n)/2."""

    a: tuple
    p: int

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def generator_degree(self) -> int:
        n = self.n
        return n * (1 - n) // 2

    @classmethod
    def canonical(cls, n: int, p: int) -> "TwistVector":
        return cls(tuple(-(n - 1 - i) for i in range(n)), p)

    def linear_form(self) -> PolyElement:
        n, p = self.n, self.p
        out = PolyElement(n, p)
        for i, c in enumerate(self.a):
            out = out + PolyElement.var(n, p, i + 1) * c
        return out

    def module_diff(self, f: PolyElement) -> PolyElement:
        """d on P_n(a), identifying f v with f."""
        return diff_pol(f) + self.linear_form() * f


def positive_basis(n: int, p: int) -> list:
    exps = iproduct(*(range(n - i + 1) for i in range(1, n + 1)))
    return [PolyElement.monomial(n, p, e) for e in exps]


class NilHeckeOp:
    """A Sym_n-linear operator on Pol_n given by a Python callable."""

    def __init__(self, n: int, p: int, fn, label: str = "op"):
        self.n, self.p, self.fn, self.label = n, p, fn, label

    def __call__(self, f: PolyElement) -> PolyElement:
        return self.fn(f)

    def __matmul__(self, other: "NilHeckeOp") -> "NilHeckeOp":
        return NilHeckeOp(self.n, self.p, lambda f: self.fn(other.fn(f)), f"{self.label}.{other.label}")

    def __add__(self, other: "NilHeckeOp") -> "NilHeckeOp":
        return NilHeckeOp(self.n, self.p, lambda f: self.fn(f) + other.fn(f), f"({self.label}+{other.label})")

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int) -> "NilHeckeOp":
        return NilHeckeOp(self.n, self.p, lambda f: self.fn(f) * c, f"{c}*{self.label}")

    def images(self) -> list:
        return [self.fn(b) for b in positive_basis(self.n, self.p)]

    def __eq__(self, other):
        if not isinstance(other, NilHeckeOp):
            return NotImplemented
        return self.images() == other.images()

    def is_zero(self) -> bool:
        return all(img.is_zero() for img in self.images())

    def matrix(self) -> list:
        """Coordinates over Sym_n: rows indexed by output basis element."""
        basis = positive_basis(self.n, self.p)
        cols = [coordinates(img, self.n, self.p) for img in self.images()]
        return [[cols[j][i] for j in range(len(basis))] for i in range(len(basis))]

    def __repr__(self):
        return f"NilHeckeOp(n={self.n}, {self.label})"


def coordinates(f: PolyElement, n: int, p: int) -> list:
    """Write f = sum_b c_b b with b in B_n^+ and c_b in Sym_n (Schur basis)."""
    basis = positive_basis(n, p)
    bdeg = [sum(next(iter(b.terms))) for b in basis]
    out = [symcalc.SymElement(n, p) for _ in basis]
    by_deg: dict = {}
    for e, c in f.terms.items():
        by_deg.setdefault(sum(e), {})[e] = c
    for d, terms in by_deg.items():
        unknowns = []
        for i, bd in enumerate(bdeg):
            if bd <= d:
                for lam in partitions_of(d - bd, max_rows=n):
                    unknowns.append((i, lam))
        cols = [(basis[i] * schur_to_monomials(lam, n, p)).terms for i, lam in unknowns]
        monos = sorted({e for col in cols for e in col} | set(terms))
        idx = {e: r for r, e in enumerate(monos)}
        a = np.zeros((len(monos), len(unknowns)), dtype=np.int64)
        for j, col in enumerate(cols):
            for e, c in col.items():
                a[idx[e], j] = c
        rhs = np.zeros(len(monos), dtype=np.int64)
        for e, c in terms.items():
            rhs[idx[e]] = c
        x = solve(a, rhs, p)
        if x is None:
            raise ArithmeticError("element is not in the span of B_n^+ over Sym_n")
        for (i, lam), c in zip(unknowns, x):
            if c:
                out[i] = out[i] + symcalc.SymElement.pi(lam, n, p, int(c))
    return out


def identity(n: int, p: int) -> NilHeckeOp:
    return NilHeckeOp(n, p, lambda f: f, "1")


def mult_op(g: PolyElement, label: str = "g") -> NilHeckeOp:
    return NilHeckeOp(g.n, g.p, lambda f: g * f, label)


def dot(i: int, n: int, p: int) -> NilHeckeOp:
    return mult_op(PolyElement.var(n, p, i), f"x{i}")


def crossing(i: int, n: int, p: int) -> NilHeckeOp:
    return NilHeckeOp(n, p, lambda f: symcalc.divided_difference(i, f), f"D{i}")


def word_op(word, n: int, p: int) -> NilHeckeOp:
    if not word:
        return identity(n, p)
    return reduce(lambda a, b: a @ b, [crossing(i, n, p) for i in word])


def longest_element(n: int, p: int, word=None) -> NilHeckeOp:
    word = symcalc.longest_word(n) if word is None else list(word)
    op = word_op(word, n, p)
    op.label = f"D_{n}"
    return op


def alternative_longest_word(n: int) -> list:
    """A second reduced word for w_0: the mirror image under i -> n - i."""
    return [n - i for i in symcalc.longest_word(n)]


def induced_diff_op(phi: NilHeckeOp, twist: TwistVector | None = None) -> NilHeckeOp:
    """d_E(phi) = d o phi - phi o d on END(P_n(a))."""
    twist = TwistVector.canonical(phi.n, phi.p) if twist is None else twist
    md = twist.module_diff
    return NilHeckeOp(phi.n, phi.p, lambda f: md(phi.fn(f)) - phi.fn(md(f)), f"d({phi.label})")


def epsilon(a: int, p: int) -> NilHeckeOp:
    """delta_a o D_a, an idempotent in NH_a."""
    d = symcalc.staircase(a, p)
    op = mult_op(d, "delta") @ longest_element(a, p)
    op.label = f"eps_{a}"
    return op


def relations_hold(n: int, p: int) -> dict:
    """Check the defining relations of NH_n on B_n^+."""
    one = identity(n, p)
    res = {"square": True, "braid": True, "far": True, "dot_slide": True}
    for i in range(1, n):
        di = crossing(i, n, p)
        if not (di @ di).is_zero():
            res["square"] = False
        xi, xj = dot(i, n, p), dot(i + 1, n, p)
        if (di @ xi) - (xj @ di) != one or (xi @ di) - (di @ xj) != one:
            res["dot_slide"] = False
        for k in range(1, n + 1):
            if k not in (i, i + 1) and (di @ dot(k, n, p)) != (dot(k, n, p) @ di):
                res["dot_slide"] = False
        if i + 1 < n:
            dj = crossing(i + 1, n, p)
            if (di @ dj @ di) != (dj @ di @ dj):
                res["braid"] = False
        for j in range(i + 2, n):
            dj = crossing(j, n, p)
            if (di @ dj) != (dj @ di):
                res["far"] = False
    return res


def verify_dDn(n: int, p: int) -> bool:
    dn = longest_element(n, p)
    lhs = induced_diff_op(dn, TwistVector.canonical(n, p))
    ell = mult_op(symcalc.ell_form(n, p), "l")
    r = mult_op(symcalc.r_form(n, p), "r")
    rhs = -(ell @ dn) - (dn @ r)
    return lhs == rhs


def verify_d_delta(n: int, p: int) -> bool:
    d = symcalc.staircase(n, p)
    return diff_pol(d) == symcalc.ell_form(n, p) * d


def iterate_diff(phi: NilHeckeOp, k: int, twist: TwistVector | None = None) -> NilHeckeOp:
    for _ in range(k):
        phi = induced_diff_op(phi, twist)
    return phi


def generators(n: int, p: int) -> list:
    return [dot(i, n, p) for i in range(1, n + 1)] + [crossing(i, n, p) for i in range(1, n)]
