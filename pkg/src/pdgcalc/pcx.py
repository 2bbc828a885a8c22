"""Finite p-complexes over F_p and their block decompositions.

A p-complex here is a graded F_p vector space concentrated in even degrees
with a map d of degree +2 such that d^p = 0.  Over a field every such complex
splits into blocks k[d]/(d^j), 1 <= j <= p, and the multiset of
(length, bottom degree) pairs is a complete invariant.  Blocks of length p
are contractible, the rest form the stable cohomology.

Block counts come from ranks only.  Write r_k(s) for the rank of d^k on the
degree-s piece (r_0(s) = dim C_s).  Chains through degree s with at least k
more steps are counted by r_k(s); those that started lower are counted by
r_{k+1}(s - 2).  The difference is the number of blocks with bottom s and
length > k.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from ._linalg import is_prime, rank
from .qring import OpElement

Block = tuple  # (length, bottom degree)


@dataclass(frozen=True)
class BlockDecomposition:
    p: int
    blocks: tuple  # sorted tuple of (length, shift)

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def counter(self) -> Counter:
        return Counter(self.blocks)

    def total_dim(self) -> int:
        return sum(j for j, _ in self.blocks)

    def graded_dims(self) -> dict:
        out: dict = {}
        for j, s in self.blocks:
            for t in range(j):
                out[s + 2 * t] = out.get(s + 2 * t, 0) + 1
        return dict(sorted(out.items()))


@dataclass
class PComplex:
    """Graded pieces dims[deg] and maps d[deg]: C_deg -> C_{deg+2}."""

    p: int
    dims: dict
    d: dict = field(default_factory=dict)

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        self.dims = {int(k): int(v) for k, v in self.dims.items() if v}
        if any(k % 2 for k in self.dims):
            raise ValueError("not-a-p-complex: odd degrees are not supported")
        fixed = {}
        for s, dim in self.dims.items():
            tgt = self.dims.get(s + 2, 0)
            m = self.d.get(s)
            if m is None:
                m = np.zeros((tgt, dim), dtype=np.int64)
            m = np.asarray(m, dtype=np.int64).reshape(tgt, dim) % self.p
            fixed[s] = m
        extra = [s for s in self.d if s not in self.dims and np.asarray(self.d[s]).size]
        if extra:
            raise ValueError("not-a-p-complex: map out of an empty degree")
        self.d = fixed

    def degrees(self) -> list:
        return sorted(self.dims)

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def power_from(self, s: int, k: int) -> np.ndarray:
        """Matrix of d^k on C_s."""
        m = np.eye(self.dims.get(s, 0), dtype=np.int64)
        for t in range(k):
            deg = s + 2 * t
            nxt = self.d.get(deg)
            if nxt is None:
                return np.zeros((self.dims.get(s + 2 * k, 0), self.dims.get(s, 0)), dtype=np.int64)
            m = (nxt @ m) % self.p
        return m

    def is_p_nilpotent(self) -> bool:
        return all(not self.power_from(s, self.p).any() for s in self.dims)

    def check(self):
        if not self.is_p_nilpotent():
            raise ValueError("not-a-p-complex: d^p is nonzero")

    def direct_sum(self, other: "PComplex") -> "PComplex":
        if other.p != self.p:
            raise ValueError("mixing different primes")
        degs = sorted(set(self.dims) | set(other.dims))
        dims = {s: self.dims.get(s, 0) + other.dims.get(s, 0) for s in degs}
        d = {}
        for s in degs:
            a = self.d.get(s, np.zeros((self.dims.get(s + 2, 0), self.dims.get(s, 0)), dtype=np.int64))
            b = other.d.get(s, np.zeros((other.dims.get(s + 2, 0), other.dims.get(s, 0)), dtype=np.int64))
            m = np.zeros((dims.get(s + 2, 0), dims[s]), dtype=np.int64)
            m[: a.shape[0], : a.shape[1]] = a
            m[a.shape[0]:, a.shape[1]:] = b
            d[s] = m
        return PComplex(self.p, dims, d)

    def truncate(self, cutoff: int) -> "PComplex":
        """Quotient by everything above `cutoff`."""
        dims = {s: v for s, v in self.dims.items() if s <= cutoff}
        return PComplex(self.p, dims, {s: m for s, m in self.d.items() if s + 2 <= cutoff})


def block_complex(p: int, length: int, shift: int = 0) -> PComplex:
    """k[d]/(d^length) with bottom in degree `shift`."""
    if not 1 <= length <= p:
        raise ValueError("block length must lie in [1, p]")
    dims = {shift + 2 * t: 1 for t in range(length)}
    d = {shift + 2 * t: np.ones((1, 1), dtype=np.int64) for t in range(length - 1)}
    return PComplex(p, dims, d)


def from_blocks(p: int, blocks) -> PComplex:
    out = PComplex(p, {})
    for j, s in blocks:
        out = out.direct_sum(block_complex(p, j, s))
    return out


def decompose(c: PComplex) -> BlockDecomposition:
    c.check()
    p = c.p
    degs = c.degrees()
    ranks: dict = {}

    def r(k, s):
        if (k, s) not in ranks:
            if k == 0:
                ranks[(k, s)] = c.dims.get(s, 0)
            elif s not in c.dims:
                ranks[(k, s)] = 0
            else:
                m = c.power_from(s, k)
                ranks[(k, s)] = rank(m, p) if m.size else 0
        return ranks[(k, s)]

    blocks = []
    for s in degs:
        at_least = [r(k, s) - r(k + 1, s - 2) for k in range(p + 1)]
        for j in range(1, p + 1):
            cnt = at_least[j - 1] - at_least[j]
            blocks.extend([(j, s)] * cnt)
    return BlockDecomposition(p, tuple(sorted(blocks)))


def is_contractible(c: PComplex) -> bool:
    return all(j == c.p for j, _ in decompose(c))


def stable_cohomology(c: PComplex) -> BlockDecomposition:
    dec = decompose(c)
    return BlockDecomposition(c.p, tuple(b for b in dec.blocks if b[0] < c.p))


def k0_symbol(c: PComplex) -> OpElement:
    rep: dict = {}
    for j, s in stable_cohomology(c):
        for t in range(j):
            rep[s + 2 * t] = rep.get(s + 2 * t, 0) + 1
    return OpElement(c.p, rep)


# ------------------------------------------------- matrix algebra example

class MatrixPDG:
    """Mat_n(F_p) with deg e_ij = 2(j - i) and d(x) = [D, x], D = sum e_{i,i+1}."""

    def __init__(self, n: int, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if n < 1:
            raise ValueError("n must be positive")
        self.n, self.p = n, p
        self.D = np.eye(n, k=1, dtype=np.int64)

    def unit(self, i: int, j: int) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=np.int64)
        m[i - 1, j - 1] = 1
        return m

    def diff(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        return (self.D @ x - x @ self.D) % self.p

    def mul(self, x, y) -> np.ndarray:
        return (np.asarray(x) @ np.asarray(y)) % self.p

    def basis(self):
        """(i, j) pairs ordered by degree, then row."""
        n = self.n
        return sorted(((i, j) for i in range(1, n + 1) for j in range(1, n + 1)),
                      key=lambda ij: (ij[1] - ij[0], ij[0]))

    def complex(self, check: bool = True) -> PComplex:
        by_deg: dict = {}
        for i, j in self.basis():
            by_deg.setdefault(2 * (j - i), []).append((i, j))
        dims = {s: len(v) for s, v in by_deg.items()}
        d = {}
        for s, src in by_deg.items():
            tgt = by_deg.get(s + 2, [])
            m = np.zeros((len(tgt), len(src)), dtype=np.int64)
            index = {ij: r for r, ij in enumerate(tgt)}
            for col, (i, j) in enumerate(src):
                img = self.diff(self.unit(i, j))
                for a, b in zip(*np.nonzero(img)):
                    m[index[(a + 1, b + 1)], col] = img[a, b]
            d[s] = m
        c = PComplex(self.p, dims, d)
        if check and not c.is_p_nilpotent():
            raise ValueError("differential-not-p-nilpotent")
        return c

    def leibniz_holds(self) -> bool:
        for a in self.basis():
            x = self.unit(*a)
            for b in self.basis():
                y = self.unit(*b)
                lhs = self.diff(self.mul(x, y))
                rhs = (self.mul(self.diff(x), y) + self.mul(x, self.diff(y))) % self.p
                if not np.array_equal(lhs, rhs):
                    return False
        return True

    def diagonal_idempotents(self, order: str = "natural") -> list:
        """e_nn, ..., e_11 in the natural order; the reverse on request."""
        idx = list(range(self.n, 0, -1))
        if order == "reversed":
            idx.reverse()
        elif order != "natural":
            raise ValueError("order must be 'natural' or 'reversed'")
        return [self.unit(i, i) for i in idx]


def matrix_pdg(n: int, p: int) -> PComplex:
    return MatrixPDG(n, p).complex()
