"""Laurent polynomials in q and the cyclotomic quotient O_p.

O_p is Z[q]/(1 + q^2 + ... + q^(2(p-1))).  Every class has a unique
representative of degree < 2p - 2, obtained by Euclidean division by that
monic relation.  Negative powers of q are cleared first using q^(2p) = 1,
which holds in the quotient because (q^2 - 1) times the relation is q^(2p) - 1.
"""

from __future__ import annotations

from functools import lru_cache

from ._linalg import is_prime


class LaurentPoly:
    """Finitely supported map exponent -> integer coefficient."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = {}
        elif isinstance(coeffs, int):
            coeffs = {0: coeffs}
        self.coeffs = {int(e): int(c) for e, c in dict(coeffs).items() if c}

    @classmethod
    def q(cls, e: int = 1) -> "LaurentPoly":
        return cls({e: 1})

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.coeffs) != 1:
                raise ValueError("only monomials can be inverted")
            (e, c), = self.coeffs.items()
            if abs(c) != 1:
                raise ValueError("only unit monomials can be inverted")
            return LaurentPoly({e * k: c ** (-k)})
        out = LaurentPoly(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self) -> bool:
        return not self.coeffs

    def bar(self) -> "LaurentPoly":
        """The involution q -> q^-1."""
        return LaurentPoly({-e: c for e, c in self.coeffs.items()})

    def evaluate(self, q):
        return sum(c * q ** e for e, c in self.coeffs.items())

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            if e == 0:
                mono = str(abs(c))
            else:
                mono = "q" if e == 1 else f"q^{e}"
                if abs(c) != 1:
                    mono = f"{abs(c)}{mono}"
            parts.append(("-" if c < 0 else "+", mono))
        s = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
        for sign, mono in parts[1:]:
            s += f" {sign} {mono}"
        return s


def quantum_integer(n: int) -> LaurentPoly:
    """[n] = q^(n-1) + q^(n-3) + ... + q^(1-n), with [-n] = -[n]."""
    if n < 0:
        return -quantum_integer(-n)
    return LaurentPoly({n - 1 - 2 * i: 1 for i in range(n)})


@lru_cache(maxsize=None)
def _qbinom(n: int, k: int) -> LaurentPoly:
    if k == 0:
        return LaurentPoly(1)
    if n == k:
        return LaurentPoly(1)
    if 0 <= n < k:
        return LaurentPoly()
    # [n, k] = q^k [n-1, k] + q^(k-n) [n-1, k-1]; the recursion also runs
    # downwards for negative n, where it agrees with the product formula.
    return LaurentPoly.q(k) * _qbinom(n - 1, k) + LaurentPoly.q(k - n) * _qbinom(n - 1, k - 1)


def quantum_binomial(n: int, k: int) -> LaurentPoly:
    if k < 0:
        raise ValueError("invalid-binomial")
    if n < 0:
        # top-down recursion would not terminate; use [n,k] = prod [n-i]/[k-i]
        # via the symmetric identity [-m, k] = (-1)^k [m+k-1, k].
        return LaurentPoly((-1) ** k) * _qbinom(-n + k - 1, k)
    return _qbinom(n, k)


def quantum_factorial(n: int) -> LaurentPoly:
    out = LaurentPoly(1)
    for i in range(1, n + 1):
        out = out * quantum_integer(i)
    return out


def box_partition_gf(j: int, m: int) -> LaurentPoly:
    """Sum of q^(2|alpha| - jm) over partitions alpha inside a j x m box."""
    if j < 0 or m < 0:
        raise ValueError("box sides must be non-negative")
    from .symcalc import partitions_in_box

    out: dict[int, int] = {}
    for alpha in partitions_in_box(j, m):
        e = 2 * sum(alpha) - j * m
        out[e] = out.get(e, 0) + 1
    return LaurentPoly(out)


class OpElement:
    """Element of O_p in its canonical representative of degree < 2p - 2."""

    __slots__ = ("p", "rep")

    def __init__(self, p: int, rep):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.rep = _reduce_coeffs(rep, p)

    @classmethod
    def from_laurent(cls, x: LaurentPoly, p: int) -> "OpElement":
        return cls(p, x.coeffs)

    def _coerce(self, other):
        if isinstance(other, OpElement):
            if other.p != self.p:
                raise ValueError("mixing different primes")
            return other
        if isinstance(other, (int, LaurentPoly)):
            return OpElement(self.p, LaurentPoly(other).coeffs if isinstance(other, int) else other.coeffs)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return OpElement(self.p, (LaurentPoly(self.rep) + LaurentPoly(other.rep)).coeffs)

    __radd__ = __add__

    def __neg__(self):
        return OpElement(self.p, {e: -c for e, c in self.rep.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return OpElement(self.p, (LaurentPoly(self.rep) * LaurentPoly(other.rep)).coeffs)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.rep == other.rep

    def __hash__(self):
        return hash((self.p, frozenset(self.rep.items())))

    def is_zero(self) -> bool:
        return not self.rep

    def inverse_of_q(self) -> "OpElement":
        return OpElement(self.p, {2 * self.p - 1: 1})

    def __repr__(self):
        return f"OpElement(p={self.p}, {LaurentPoly(self.rep)})"

    def __str__(self):
        return str(LaurentPoly(self.rep))


def _reduce_coeffs(coeffs, p: int) -> dict[int, int]:
    period = 2 * p
    work: dict[int, int] = {}
    for e, c in dict(coeffs).items():
        e = int(e) % period  # q^(2p) = 1 in O_p
        work[e] = work.get(e, 0) + int(c)
    top = 2 * p - 2
    # relation: q^(2p-2) = -(1 + q^2 + ... + q^(2p-4))
    deg = max(work) if work else -1
    while deg >= top:
        c = work.pop(deg, 0)
        if c:
            shift = deg - top
            for i in range(p - 1):
                k = shift + 2 * i
                work[k] = work.get(k, 0) - c
        deg = max(work) if work else -1
    return {e: c for e, c in work.items() if c}


def reduce_to_Op(x, p: int) -> OpElement:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if isinstance(x, int):
        x = LaurentPoly(x)
    return OpElement.from_laurent(x, p)
