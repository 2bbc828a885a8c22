"""Polynomials over F_p with d(x_i) = x_i^2, and Schur calculus.

Two representations live here:

* ``PolyElement``: sparse monomial dictionaries in n variables.  This is the
  slow, obviously-correct side and serves as the oracle.
* ``BlockSym``: elements of Sym_{c_1} (x) ... (x) Sym_{c_r}, the ring of
  polynomials in c_1 + ... + c_r variables that are symmetric within each
  consecutive block, stored in the product Schur basis.  ``SymElement`` is
  the one-block case.  Multiplication goes through Littlewood-Richardson
  coefficients, restriction to sub-blocks through the coproduct, and the
  trace D_{a,b} merging two adjacent blocks is a signed sort.

Partitions are tuples of positive integers in weakly decreasing order.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product as iproduct

from ._linalg import is_prime

Partition = tuple


# ---------------------------------------------------------------- partitions

def make_partition(parts) -> Partition:
    out = tuple(int(x) for x in parts if x)
    if any(x < 0 for x in out) or any(out[i] < out[i + 1] for i in range(len(out) - 1)):
        raise ValueError(f"not a partition: {parts}")
    return out


def size(lam: Partition) -> int:
    return sum(lam)


def transpose(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > j) for j in range(lam[0]))


@lru_cache(maxsize=None)
def partitions_in_box(rows: int, cols: int) -> tuple:
    """All partitions with at most `rows` parts, each at most `cols`."""
    if rows < 0 or cols < 0:
        return ()
    out = []

    def rec(prefix, left, cap):
        out.append(tuple(prefix))
        if left == 0:
            return
        for x in range(1, cap + 1):
            prefix.append(x)
            rec(prefix, left - 1, x)
            prefix.pop()

    rec([], rows, cols)
    out.sort(key=lambda lam: (sum(lam), tuple(-x for x in lam)))
    return tuple(out)


@lru_cache(maxsize=None)
def partitions_of(n: int, max_rows: int | None = None, max_part: int | None = None) -> tuple:
    out = []

    def rec(prefix, left, cap):
        if left == 0:
            out.append(tuple(prefix))
            return
        if max_rows is not None and len(prefix) >= max_rows:
            return
        for x in range(min(left, cap), 0, -1):
            prefix.append(x)
            rec(prefix, left - x, x)
            prefix.pop()

    rec([], n, n if max_part is None else max_part)
    return tuple(out)


def box_complement(lam: Partition, a: int, b: int) -> Partition:
    """Complement in the a x b box, rotated by 180 degrees, then transposed.

    The result fits in a b x a box, and applying the same rule with the box
    sides swapped returns lam.
    """
    padded = list(lam) + [0] * (a - len(lam))
    if len(padded) > a or (padded and padded[0] > b):
        raise ValueError(f"{lam} does not fit in a {a}x{b} box")
    rotated = tuple(b - padded[a - 1 - i] for i in range(a))
    return transpose(make_partition(rotated))


def add_box_rows(lam: Partition, max_rows: int | None = None):
    """Yield (row index i >= 1, lam + box in row i)."""
    lam = list(lam)
    for i in range(len(lam) + 1):
        if max_rows is not None and i + 1 > max_rows:
            break
        if i == 0 or lam[i - 1] > (lam[i] if i < len(lam) else 0):
            new = lam[:] + ([0] if i == len(lam) else [])
            new[i] += 1
            yield i + 1, tuple(new)


def content_of_added_box(lam: Partition, row: int) -> int:
    """C = lam_row + 1 - row for the box appended to `row` (1-based)."""
    cur = lam[row - 1] if row - 1 < len(lam) else 0
    return cur + 1 - row


# ----------------------------------------------------- Littlewood-Richardson

@lru_cache(maxsize=None)
def skew_expansion(outer: Partition, inner: Partition) -> dict:
    """s_{outer/inner} = sum_mu c mu, by enumerating LR tableaux."""
    if len(inner) > len(outer) or any(inner[i] > outer[i] for i in range(len(inner))):
        return {}
    inner_p = list(inner) + [0] * (len(outer) - len(inner))
    cells = []
    for r in range(len(outer)):
        for c in range(outer[r] - 1, inner_p[r] - 1, -1):
            cells.append((r, c))
    if not cells:
        return {(): 1}
    fill: dict = {}
    counts = [0] * (len(outer) + 2)
    result: dict = {}

    def rec(k):
        if k == len(cells):
            mu = tuple(x for x in counts[1:] if x)
            result[mu] = result.get(mu, 0) + 1
            return
        r, c = cells[k]
        hi = len(outer)
        right = fill.get((r, c + 1))
        if right is not None:
            hi = min(hi, right)
        above = fill.get((r - 1, c))
        lo = 1 if above is None else above + 1
        for v in range(lo, hi + 1):
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            fill[(r, c)] = v
            counts[v] += 1
            rec(k + 1)
            counts[v] -= 1
            del fill[(r, c)]

    rec(0)
    return result


def _containing(lam: Partition, extra: int, max_rows, bound_rows: int, max_add: int):
    """Partitions nu containing lam with |nu| = |lam| + extra."""
    rows = bound_rows if max_rows is None else min(bound_rows, max_rows)
    base = list(lam) + [0] * max(0, rows - len(lam))
    out = []

    def rec(i, left, prev):
        if i == rows:
            if left == 0:
                out.append(make_partition(cur))
            return
        lo = base[i]
        hi = min(prev, base[i] + min(left, max_add))
        for x in range(hi, lo - 1, -1):
            cur.append(x)
            rec(i + 1, left - (x - base[i]), x)
            cur.pop()

    cur: list = []
    if len(lam) > rows:
        return out
    rec(0, extra, 10 ** 9)
    return out


@lru_cache(maxsize=None)
def schur_product(lam: Partition, mu: Partition, max_rows: int | None = None) -> dict:
    """Integer LR expansion of s_lam * s_mu, dropping nu with > max_rows rows."""
    if not lam:
        return {mu: 1} if max_rows is None or len(mu) <= max_rows else {}
    if not mu:
        return {lam: 1} if max_rows is None or len(lam) <= max_rows else {}
    if (sum(lam), lam) < (sum(mu), mu):
        return schur_product(mu, lam, max_rows)
    out = {}
    for nu in _containing(lam, sum(mu), max_rows, len(lam) + len(mu), mu[0]):
        c = skew_expansion(nu, lam).get(mu, 0)
        if c:
            out[nu] = c
    return out


@lru_cache(maxsize=None)
def schur_coproduct(nu: Partition, n1: int, n2: int) -> dict:
    """s_nu(x, y) = sum c s_lam(x) s_mu(y) with len(x) = n1, len(y) = n2."""
    if len(nu) > n1 + n2:
        return {}
    out = {}
    for lam in partitions_in_box(n1, nu[0] if nu else 0):
        if len(lam) > len(nu) or any(lam[i] > nu[i] for i in range(len(lam))):
            continue
        for mu, c in skew_expansion(nu, lam).items():
            if len(mu) <= n2:
                out[(lam, mu)] = out.get((lam, mu), 0) + c
    return out


@lru_cache(maxsize=None)
def merge_trace(lam: Partition, mu: Partition, a: int, b: int):
    """D_{a,b}(s_lam(x_1..x_a) s_mu(x_{a+1}..x_{a+b})) as (sign, nu) or None.

    D_{a,b} is characterised by D_{a+b} = D_{a,b} o (D_a (x) D_b).  The
    result is D_{a+b}(x^gamma) for the shifted exponent vector gamma, which is
    a signed Schur function when gamma has distinct entries.
    """
    if len(lam) > a or len(mu) > b:
        raise ValueError("partition too long for its block")
    lam = list(lam) + [0] * (a - len(lam))
    mu = list(mu) + [0] * (b - len(mu))
    gamma = [lam[i] + a - 1 - i for i in range(a)] + [mu[j] + b - 1 - j for j in range(b)]
    if len(set(gamma)) < len(gamma):
        return None
    # sign of the sorting permutation = parity of inversions
    inv = sum(1 for i in range(len(gamma)) for j in range(i + 1, len(gamma)) if gamma[i] < gamma[j])
    srt = sorted(gamma, reverse=True)
    n = a + b
    nu = make_partition([srt[i] - (n - 1 - i) for i in range(n)])
    return (-1) ** inv, nu


# ------------------------------------------------------------ PolyElement

class PolyElement:
    """Sparse polynomial over F_p in n variables, deg x_i = 2."""

    __slots__ = ("n", "p", "terms")

    def __init__(self, n: int, p: int, terms=None):
        self.n = n
        self.p = p
        t = {}
        for e, c in (terms or {}).items():
            c %= p
            if c:
                e = tuple(e)
                if len(e) != n:
                    raise ValueError("exponent length mismatch")
                t[e] = (t.get(e, 0) + c) % p
                if not t[e]:
                    del t[e]
        self.terms = t

    @classmethod
    def _raw(cls, n, p, terms):
        obj = cls.__new__(cls)
        obj.n, obj.p, obj.terms = n, p, terms
        return obj

    @classmethod
    def const(cls, n, p, c=1):
        return cls(n, p, {(0,) * n: c})

    @classmethod
    def var(cls, n, p, i, power=1):
        """x_i (1-based)."""
        e = [0] * n
        e[i - 1] = power
        return cls(n, p, {tuple(e): 1})

    @classmethod
    def monomial(cls, n, p, exps, c=1):
        return cls(n, p, {tuple(exps): c})

    def _coerce(self, other):
        if isinstance(other, PolyElement):
            if other.n != self.n or other.p != self.p:
                raise ValueError("incompatible polynomial rings")
            return other
        if isinstance(other, int):
            return PolyElement.const(self.n, self.p, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return PolyElement._raw(self.n, p, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return PolyElement._raw(self.n, p, {e: (-c) % p for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            p = self.p
            c0 = other % p
            if not c0:
                return PolyElement._raw(self.n, p, {})
            return PolyElement._raw(self.n, p, {e: (c * c0) % p for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = (out.get(e, 0) + c1 * c2) % p
        return PolyElement._raw(self.n, p, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k):
        out = PolyElement.const(self.n, self.p)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.n, self.p, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set:
        return {2 * sum(e) for e in self.terms}

    def swap(self, i: int) -> "PolyElement":
        """Exchange x_i and x_{i+1}."""
        out = {}
        for e, c in self.terms.items():
            e = list(e)
            e[i - 1], e[i] = e[i], e[i - 1]
            out[tuple(e)] = c
        return PolyElement._raw(self.n, self.p, out)

    def permute(self, perm) -> "PolyElement":
        """Substitute x_i -> x_{perm[i-1]} (perm is a 1-based one-line word)."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * self.n
            for i, k in enumerate(e):
                ne[perm[i] - 1] += k
            out[tuple(ne)] = c
        return PolyElement._raw(self.n, self.p, out)

    def is_symmetric(self) -> bool:
        return all(self.swap(i) == self for i in range(1, self.n))

    def __repr__(self):
        return f"PolyElement(n={self.n}, p={self.p}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                (f"x{i + 1}" if k == 1 else f"x{i + 1}^{k}") for i, k in enumerate(e) if k
            )
            if not mono:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)


def diff_pol(f: PolyElement) -> PolyElement:
    """Leibniz extension of x_i -> x_i^2."""
    p = f.p
    out: dict = {}
    for e, c in f.terms.items():
        for i, k in enumerate(e):
            if k:
                ne = e[:i] + (k + 1,) + e[i + 1:]
                out[ne] = (out.get(ne, 0) + c * k) % p
    return PolyElement._raw(f.n, p, {e: c for e, c in out.items() if c})


def divided_difference(i: int, f: PolyElement) -> PolyElement:
    """(f - s_i f) / (x_i - x_{i+1}), monomial by monomial."""
    if not 1 <= i < f.n:
        raise ValueError("index out of range")
    p = f.p
    out: dict = {}
    a_i = i - 1
    for e, c in f.terms.items():
        a, b = e[a_i], e[a_i + 1]
        if a == b:
            continue
        sign = 1
        if a < b:
            a, b, sign = b, a, -1
        # (x^a y^b - x^b y^a)/(x - y) = sum_{j=0}^{a-b-1} x^{a-1-j} y^{b+j}
        for j in range(a - b):
            ne = list(e)
            ne[a_i] = a - 1 - j
            ne[a_i + 1] = b + j
            if sign < 0:
                ne[a_i], ne[a_i + 1] = ne[a_i + 1], ne[a_i]
            ne = tuple(ne)
            out[ne] = (out.get(ne, 0) + sign * c) % p
    return PolyElement._raw(f.n, p, {e: c for e, c in out.items() if c})


def longest_word(n: int) -> list:
    """A reduced word for the longest permutation, applied right to left."""
    word = []
    for k in range(n - 1, 0, -1):
        word.extend(range(1, k + 1))
    return word


def apply_word(word, f: PolyElement) -> PolyElement:
    """D_{i_1} ... D_{i_r} f for word (i_1, ..., i_r)."""
    for i in reversed(word):
        f = divided_difference(i, f)
    return f


def staircase(n: int, p: int) -> PolyElement:
    """delta_n = x_1^(n-1) x_2^(n-2) ... x_{n-1}."""
    return PolyElement.monomial(n, p, tuple(n - 1 - i for i in range(n)))


def ell_form(n: int, p: int) -> PolyElement:
    """l_n = sum (n - i) x_i."""
    return sum((PolyElement.var(n, p, i) * (n - i) for i in range(1, n + 1)), PolyElement(n, p))


def r_form(n: int, p: int) -> PolyElement:
    """r_n = sum (i - 1) x_i."""
    return sum((PolyElement.var(n, p, i) * (i - 1) for i in range(1, n + 1)), PolyElement(n, p))


def e1_poly(n: int, p: int) -> PolyElement:
    return sum((PolyElement.var(n, p, i) for i in range(1, n + 1)), PolyElement(n, p))


@lru_cache(maxsize=None)
def _schur_mono_terms(lam: Partition, n: int, p: int):
    padded = list(lam) + [0] * (n - len(lam))
    top = PolyElement.monomial(n, p, [padded[i] + n - 1 - i for i in range(n)])
    return apply_word(longest_word(n), top).terms


def schur_to_monomials(lam: Partition, n: int, p: int) -> PolyElement:
    """pi_lam in x_1..x_n, as D_{w0}(x^lam delta_n)."""
    lam = make_partition(lam)
    if len(lam) > n:
        return PolyElement(n, p)
    return PolyElement._raw(n, p, dict(_schur_mono_terms(lam, n, p)))


def monomials_to_schur(f: PolyElement) -> "SymElement":
    """Peel off lex-leading monomials; each is the top term of one pi_lam."""
    if not f.is_symmetric():
        raise ValueError("not-symmetric")
    out = {}
    work = f
    while work.terms:
        lead = max(work.terms)
        c = work.terms[lead]
        lam = make_partition(lead)
        out[(lam,)] = c
        work = work - schur_to_monomials(lam, f.n, f.p) * c
    return SymElement._from_terms((f.n,), f.p, out)


def schur_by_tableaux(lam: Partition, n: int, p: int) -> PolyElement:
    """Independent expansion of pi_lam as a sum over semistandard tableaux."""
    lam = make_partition(lam)
    if len(lam) > n:
        return PolyElement(n, p)
    cells = [(r, c) for r in range(len(lam)) for c in range(lam[r])]
    fill: dict = {}
    out: dict = {}

    def rec(k):
        if k == len(cells):
            e = [0] * n
            for v in fill.values():
                e[v - 1] += 1
            e = tuple(e)
            out[e] = out.get(e, 0) + 1
            return
        r, c = cells[k]
        lo = 1
        if c > 0:
            lo = max(lo, fill[(r, c - 1)])
        if r > 0:
            lo = max(lo, fill[(r - 1, c)] + 1)
        for v in range(lo, n + 1):
            fill[(r, c)] = v
            rec(k + 1)
        fill.pop((r, c), None)

    rec(0)
    return PolyElement(n, p, out)


# ------------------------------------------------------------ BlockSym

class BlockSym:
    """Element of Sym_{c_1} (x) ... (x) Sym_{c_r} over F_p in the Schur basis.

    Keys are tuples of partitions, one per block, each with at most c_i rows.
    """

    __slots__ = ("blocks", "p", "terms")

    def __init__(self, blocks, p: int, terms=None):
        self.blocks = tuple(blocks)
        self.p = p
        t = {}
        for key, c in (terms or {}).items():
            key = tuple(make_partition(lam) for lam in key)
            if len(key) != len(self.blocks):
                raise ValueError("key does not match block structure")
            if any(len(lam) > b for lam, b in zip(key, self.blocks)):
                continue
            v = (t.get(key, 0) + c) % p
            if v:
                t[key] = v
            else:
                t.pop(key, None)
        self.terms = t

    @classmethod
    def _from_terms(cls, blocks, p, terms):
        obj = cls.__new__(cls)
        obj.blocks, obj.p, obj.terms = tuple(blocks), p, terms
        return obj

    def _new(self, blocks, terms):
        if type(self) is SymElement and len(blocks) == 1:
            return SymElement._from_terms(blocks, self.p, terms)
        return BlockSym._from_terms(blocks, self.p, terms)

    @classmethod
    def one(cls, blocks, p):
        return BlockSym._from_terms(blocks, p, {tuple(() for _ in blocks): 1})

    @classmethod
    def zero(cls, blocks, p):
        return BlockSym._from_terms(blocks, p, {})

    @classmethod
    def schur(cls, blocks, p, block: int, lam, coeff: int = 1):
        """pi_lam placed in block `block` (0-based)."""
        lam = make_partition(lam)
        if len(lam) > blocks[block] or coeff % p == 0:
            return BlockSym.zero(blocks, p)
        key = tuple(lam if i == block else () for i in range(len(blocks)))
        return BlockSym._from_terms(blocks, p, {key: coeff % p})

    @classmethod
    def e1(cls, blocks, p, block: int, coeff: int = 1):
        return cls.schur(blocks, p, block, (1,), coeff)

    def _check(self, other):
        if not isinstance(other, BlockSym) or other.blocks != self.blocks or other.p != self.p:
            raise ValueError(f"incompatible block rings {self.blocks} vs {getattr(other, 'blocks', None)}")

    def __add__(self, other):
        if isinstance(other, int):
            other = BlockSym.one(self.blocks, self.p) * other
        self._check(other)
        p = self.p
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = (out.get(k, 0) + c) % p
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return self._new(self.blocks, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return self._new(self.blocks, {k: (-c) % p for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = BlockSym.one(self.blocks, self.p) * other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int):
        p = self.p
        c %= p
        if not c:
            return self._new(self.blocks, {})
        return self._new(self.blocks, {k: (v * c) % p for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        p = self.p
        blocks = self.blocks
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                c = c1 * c2
                factors = [schur_product(a, b, n) for a, b, n in zip(k1, k2, blocks)]
                if any(not f for f in factors):
                    continue
                for combo in iproduct(*(f.items() for f in factors)):
                    coef = c
                    for _, v in combo:
                        coef *= v
                    key = tuple(lam for lam, _ in combo)
                    out[key] = (out.get(key, 0) + coef) % p
        return self._new(blocks, {k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = BlockSym.one(self.blocks, self.p) * other
        if not isinstance(other, BlockSym):
            return False
        return self.blocks == other.blocks and self.terms == other.terms

    def __hash__(self):
        return hash((self.blocks, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degree_set(self) -> set:
        return {2 * sum(sum(l) for l in k) for k in self.terms}

    def homogeneous_parts(self) -> dict:
        out: dict = {}
        for k, c in self.terms.items():
            d = 2 * sum(sum(l) for l in k)
            out.setdefault(d, {})[k] = c
        return {d: self._new(self.blocks, t) for d, t in out.items()}

    def diff(self):
        """Content rule blockwise, Leibniz across blocks."""
        p = self.p
        out: dict = {}
        for key, c in self.terms.items():
            for b, lam in enumerate(key):
                for row, nu in add_box_rows(lam, self.blocks[b]):
                    w = content_of_added_box(lam, row) % p
                    if w:
                        nk = key[:b] + (nu,) + key[b + 1:]
                        out[nk] = (out.get(nk, 0) + c * w) % p
        return self._new(self.blocks, {k: v for k, v in out.items() if v})

    def split_block(self, i: int, sizes) -> "BlockSym":
        """Restrict along Sym_{c_i} -> Sym_{s_1} (x) Sym_{s_2} (coproduct)."""
        n1, n2 = sizes
        if n1 + n2 != self.blocks[i]:
            raise ValueError("split sizes must add up to the block size")
        nb = self.blocks[:i] + (n1, n2) + self.blocks[i + 1:]
        p = self.p
        out: dict = {}
        for key, c in self.terms.items():
            for (lam, mu), v in schur_coproduct(key[i], n1, n2).items():
                nk = key[:i] + (lam, mu) + key[i + 1:]
                out[nk] = (out.get(nk, 0) + c * v) % p
        return BlockSym._from_terms(nb, p, {k: v for k, v in out.items() if v})

    def trace_blocks(self, i: int) -> "BlockSym":
        """D_{c_i, c_{i+1}}: merge blocks i and i+1 (degree drops by 2 c_i c_{i+1})."""
        a, b = self.blocks[i], self.blocks[i + 1]
        nb = self.blocks[:i] + (a + b,) + self.blocks[i + 2:]
        p = self.p
        out: dict = {}
        for key, c in self.terms.items():
            r = merge_trace(key[i], key[i + 1], a, b)
            if r is None:
                continue
            sgn, nu = r
            nk = key[:i] + (nu,) + key[i + 2:]
            out[nk] = (out.get(nk, 0) + sgn * c) % p
        return self._new(nb, {k: v for k, v in out.items() if v})

    def merge_symmetric(self, i: int) -> "BlockSym":
        """Inverse of split_block for elements symmetric across blocks i, i+1."""
        a, b = self.blocks[i], self.blocks[i + 1]
        rect = tuple([b] * a)
        sgn, _ = merge_trace(rect, (), a, b)
        res = (self * BlockSym.schur(self.blocks, self.p, i, rect)).trace_blocks(i).scale(sgn)
        if res.split_block(i, (a, b)) != self:
            raise ValueError("element is not symmetric across the merged blocks")
        return res

    def embed(self, blocks) -> "BlockSym":
        """Split blocks so the element lives in a finer composition `blocks`."""
        cur = self
        target = tuple(blocks)
        i = 0
        while cur.blocks != target:
            if i == len(cur.blocks) and i < len(target) and target[i] == 0:
                # trailing empty block
                terms = {k + ((),): c for k, c in cur.terms.items()}
                cur = BlockSym._from_terms(cur.blocks + (0,), cur.p, terms)
                continue
            if i >= len(target) or i >= len(cur.blocks):
                raise ValueError(f"{self.blocks} does not coarsen {target}")
            if cur.blocks[i] == target[i]:
                i += 1
                continue
            if cur.blocks[i] < target[i]:
                raise ValueError(f"{self.blocks} does not coarsen {target}")
            cur = cur.split_block(i, (target[i], cur.blocks[i] - target[i]))
            i += 1
        return cur

    def to_poly(self) -> PolyElement:
        n = sum(self.blocks)
        p = self.p
        out = PolyElement(n, p)
        offsets = [sum(self.blocks[:i]) for i in range(len(self.blocks))]
        for key, c in self.terms.items():
            term = PolyElement.const(n, p, c)
            for lam, b, off in zip(key, self.blocks, offsets):
                loc = schur_to_monomials(lam, b, p)
                lifted = {}
                for e, v in loc.terms.items():
                    full = [0] * n
                    full[off:off + b] = e
                    lifted[tuple(full)] = v
                term = term * PolyElement._raw(n, p, lifted)
            out = out + term
        return out

    def __repr__(self):
        return f"BlockSym({self.blocks}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, key=lambda k: (sum(map(sum, k)), k)):
            c = self.terms[key]
            fac = "*".join(f"s{b}{list(lam)}" for b, lam in enumerate(key) if lam)
            parts.append((f"{c}*" if c != 1 or not fac else "") + (fac or ""))
        return " + ".join(parts)


class SymElement(BlockSym):
    """Element of Sym_n in the Schur basis (one block)."""

    __slots__ = ()

    def __init__(self, n: int, p: int, coeffs=None):
        super().__init__((n,), p, {(make_partition(lam),): c for lam, c in (coeffs or {}).items()})

    @property
    def n(self) -> int:
        return self.blocks[0]

    @property
    def coeffs(self) -> dict:
        return {k[0]: c for k, c in self.terms.items()}

    @classmethod
    def pi(cls, lam, n: int, p: int, coeff: int = 1) -> "SymElement":
        return cls(n, p, {make_partition(lam): coeff})

    def to_monomials(self) -> PolyElement:
        return self.to_poly()


def multiply_schur(lam, mu, n: int, p: int | None = None) -> SymElement:
    """pi_lam * pi_mu in Sym_n."""
    lam, mu = make_partition(lam), make_partition(mu)
    res = schur_product(lam, mu, n)
    if p is None:
        # integral answer wrapped with a huge modulus is not a field; keep ints
        return {nu: c for nu, c in res.items()}
    return SymElement(n, p, res)


def diff_schur(lam, n: int, p: int) -> SymElement:
    lam = make_partition(lam)
    if len(lam) > n:
        raise ValueError("partition has more rows than variables")
    return SymElement.pi(lam, n, p).diff()


def diff_sym(f: BlockSym) -> BlockSym:
    return f.diff()


def elementary(k: int, n: int, p: int) -> SymElement:
    if k < 0 or k > n:
        return SymElement(n, p)
    return SymElement.pi((1,) * k, n, p)


def complete(k: int, n: int, p: int) -> SymElement:
    if k < 0:
        return SymElement(n, p)
    return SymElement.pi((k,) if k else (), n, p)


def check_prime(p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return p
