"""p-DG filtrations and fantastic (Fc) filtrations, checked exactly.

The checks only need a handful of operations on morphisms, supplied by a
"map algebra" object with methods compose(f, g) (meaning f o g), add, scale,
diff, is_zero and identity(obj).  ``MatrixAlgebra`` covers endomorphisms given
as numpy matrices with d(x) = [D, x]; grasmod and umodel ship their own.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import grasmod
from .qring import LaurentPoly
from .symcalc import BlockSym, partitions_in_box


@dataclass
class Summand:
    u: object  # N_i -> M
    v: object  # M -> N_i
    shift: int
    label: object
    obj: object = None  # N_i, for identity checks


@dataclass
class FcDatum:
    ambient: object
    summands: list  # in the filtration order
    algebra: object

    def reversed(self) -> "FcDatum":
        return FcDatum(self.ambient, list(reversed(self.summands)), self.algebra)


@dataclass
class ConditionResult:
    passed: bool
    counterexample: tuple | None = None  # (i, j) positions in the order


@dataclass
class FcReport:
    conditions: dict = field(default_factory=dict)
    shifts: list = field(default_factory=list)
    labels: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions.values())

    def k0_relation(self) -> LaurentPoly:
        """sum q^shift over the summands; meaningful only when passed."""
        out: dict = {}
        for s in self.shifts:
            out[s] = out.get(s, 0) + 1
        return LaurentPoly(out)

    def first_failure(self):
        for name, c in self.conditions.items():
            if not c.passed:
                return name, c.counterexample
        return None


def _first(pairs, bad):
    for ij in pairs:
        if bad(*ij):
            return ConditionResult(False, ij)
    return ConditionResult(True)


def verify_fc(d: FcDatum) -> FcReport:
    alg = d.algebra
    s = d.summands
    n = len(s)
    idx = range(n)

    def ident(i):
        obj = s[i].obj if s[i].obj is not None else alg.source(s[i].u)
        return alg.identity(obj)

    rep = FcReport(shifts=[x.shift for x in s], labels=[x.label for x in s])
    rep.conditions["retract"] = _first(
        [(i, i) for i in idx],
        lambda i, _: not alg.is_zero(alg.add(alg.compose(s[i].v, s[i].u), alg.scale(ident(i), -1))),
    )
    rep.conditions["orthogonal"] = _first(
        [(i, j) for i in idx for j in idx if i != j],
        lambda i, j: not alg.is_zero(alg.compose(s[i].v, s[j].u)),
    )
    if n:
        total = alg.compose(s[0].u, s[0].v)
        for x in s[1:]:
            total = alg.add(total, alg.compose(x.u, x.v))
        complete = alg.is_zero(alg.add(total, alg.scale(alg.identity(d.ambient), -1)))
    else:
        complete = alg.is_zero(alg.identity(d.ambient))
    rep.conditions["complete"] = ConditionResult(complete, None if complete else (-1, -1))
    dv = [alg.diff(x.v) for x in s]
    rep.conditions["fantastic"] = _first(
        [(i, j) for i in idx for j in idx if j >= i],
        lambda i, j: not alg.is_zero(alg.compose(dv[i], s[j].u)),
    )
    return rep


def verify_dg_filtration(idempotents: list, algebra, obj=None) -> FcReport:
    """Orthogonal idempotents summing to 1 with d(e_i) e_j = 0 for j > i.

    The right-hand form e_i d(e_j) = 0 for i < j is reported alongside; the
    two are equivalent once the idempotent axioms hold.
    """
    alg = algebra
    e = idempotents
    n = len(e)
    rep = FcReport(labels=list(range(n)))
    if obj is None and n:
        obj = alg.source(e[0])
    rep.conditions["idempotent"] = _first(
        [(i, i) for i in range(n)],
        lambda i, _: not alg.is_zero(alg.add(alg.compose(e[i], e[i]), alg.scale(e[i], -1))),
    )
    rep.conditions["orthogonal"] = _first(
        [(i, j) for i in range(n) for j in range(n) if i != j],
        lambda i, j: not alg.is_zero(alg.compose(e[i], e[j])),
    )
    total = e[0]
    for x in e[1:]:
        total = alg.add(total, x)
    ok = alg.is_zero(alg.add(total, alg.scale(alg.identity(obj), -1)))
    rep.conditions["complete"] = ConditionResult(ok, None if ok else (-1, -1))
    de = [alg.diff(x) for x in e]
    rep.conditions["left_triangular"] = _first(
        [(i, j) for i in range(n) for j in range(n) if j > i],
        lambda i, j: not alg.is_zero(alg.compose(de[i], e[j])),
    )
    rep.conditions["right_triangular"] = _first(
        [(i, j) for i in range(n) for j in range(n) if i < j],
        lambda i, j: not alg.is_zero(alg.compose(e[i], de[j])),
    )
    return rep


def idempotents_of(d: FcDatum) -> list:
    return [d.algebra.compose(x.u, x.v) for x in d.summands]


def subquotient_sane(e, algebra) -> bool:
    """e d(e) e = 0."""
    alg = algebra
    return alg.is_zero(alg.compose(alg.compose(e, alg.diff(e)), e))


# ------------------------------------------------------------ matrices

class MatrixAlgebra:
    """n x n matrices over F_p with d(x) = [D, x]."""

    def __init__(self, mpdg):
        self.m = mpdg

    def compose(self, f, g):
        return self.m.mul(f, g)

    def add(self, f, g):
        return (f + g) % self.m.p

    def scale(self, f, c):
        return (f * c) % self.m.p

    def diff(self, f):
        return self.m.diff(f)

    def is_zero(self, f):
        return not np.any(np.asarray(f) % self.m.p)

    def identity(self, obj=None):
        return np.eye(self.m.n, dtype=np.int64)

    def source(self, f):
        return None


def matrix_dg_filtration(n: int, p: int, order: str = "natural") -> FcReport:
    from .pcx import MatrixPDG

    m = MatrixPDG(n, p)
    return verify_dg_filtration(m.diagonal_idempotents(order), MatrixAlgebra(m))


# ------------------------------------------------------- E^(a) E^(b)

def ee_decomposition(a: int, b: int, p: int) -> FcDatum:
    """M = S_{a,b}(-b, 0) split into copies of Sym_{a+b}, ordered by |lam|."""
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    m = grasmod.grassmannian(a, b, -b, 0, p)
    big = grasmod.TwistedModule((a + b,), (0,), p)
    summands = []
    lams = sorted(partitions_in_box(a, b), key=lambda lam: (sum(lam), tuple(-x for x in lam)))
    for lam in lams:
        dec = BlockSym.schur((a, b), p, 0, lam)
        lh = grasmod.hat(lam, a, b)
        sign = (-1) ** sum(lh)
        cod = BlockSym.schur((a, b), p, 1, lh)
        u = grasmod.ModuleMap(big, m, lambda g, dec=dec: dec * g.split_block(0, (a, b)), f"u{lam}")
        v = grasmod.ModuleMap(m, big, lambda f, cod=cod, sign=sign: grasmod.pairing(cod, f).scale(sign), f"v{lam}")
        summands.append(Summand(u, v, 2 * sum(lam) - a * b, lam, big))
    return FcDatum(m, summands, grasmod.ModuleMapAlgebra())


def trivial_datum(p: int) -> FcDatum:
    big = grasmod.TwistedModule((1,), (0,), p)
    one = grasmod.identity_map(big)
    return FcDatum(big, [Summand(one, one, 0, "id", big)], grasmod.ModuleMapAlgebra())
