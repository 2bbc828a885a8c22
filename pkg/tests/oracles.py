"""Brute-force reference implementations used by the tests.

Nothing here imports pdgcalc.  Polynomials are dicts mapping exponent tuples
to integers; reduction mod p happens only where a function says so.
"""

from __future__ import annotations

from itertools import combinations, combinations_with_replacement, product


def reduce(f: dict, p: int) -> dict:
    return {e: c % p for e, c in f.items() if c % p}


def padd(f: dict, g: dict, c: int = 1) -> dict:
    out = dict(f)
    for e, v in g.items():
        out[e] = out.get(e, 0) + c * v
    return {e: v for e, v in out.items() if v}


def pmul(f: dict, g: dict) -> dict:
    out: dict = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: v for e, v in out.items() if v}


def const(n: int, c: int = 1) -> dict:
    return {(0,) * n: c} if c else {}


def var(n: int, i: int) -> dict:
    e = [0] * n
    e[i] = 1
    return {tuple(e): 1}


def d_poly(f: dict) -> dict:
    """x_i -> x_i^2 extended by Leibniz."""
    out: dict = {}
    for e, c in f.items():
        for i, k in enumerate(e):
            if k:
                e2 = list(e)
                e2[i] += 1
                e2 = tuple(e2)
                out[e2] = out.get(e2, 0) + c * k
    return {e: v for e, v in out.items() if v}


def ssyt(lam, n: int):
    """All semistandard tableaux of shape lam with entries 0..n-1, row by row."""
    lam = [x for x in lam if x]
    cells = [(r, c) for r, row in enumerate(lam) for c in range(row)]
    filling: dict = {}

    def rec(k):
        if k == len(cells):
            yield dict(filling)
            return
        r, c = cells[k]
        lo = 0
        if c:
            lo = filling[(r, c - 1)]
        if r:
            lo = max(lo, filling[(r - 1, c)] + 1)
        for v in range(lo, n):
            filling[(r, c)] = v
            yield from rec(k + 1)
        filling.pop((r, c), None)

    yield from rec(0)


def schur_poly(lam, n: int) -> dict:
    out: dict = {}
    for t in ssyt(lam, n):
        e = [0] * n
        for v in t.values():
            e[v] += 1
        e = tuple(e)
        out[e] = out.get(e, 0) + 1
    return out


def elementary(k: int, n: int) -> dict:
    out = {}
    for s in combinations(range(n), k):
        e = [0] * n
        for i in s:
            e[i] = 1
        out[tuple(e)] = 1
    return out


def complete(k: int, n: int) -> dict:
    out: dict = {}
    for s in combinations_with_replacement(range(n), k):
        e = [0] * n
        for i in s:
            e[i] += 1
        out[tuple(e)] = out.get(tuple(e), 0) + 1
    return out


def to_schur(f: dict, n: int, p: int | None = None) -> dict:
    """Expand a symmetric polynomial in Schur polynomials by peeling leading terms."""
    f = dict(f) if p is None else reduce(f, p)
    out: dict = {}
    while f:
        lead = max(f)
        if list(lead) != sorted(lead, reverse=True):
            raise ValueError("not symmetric")
        lam = tuple(x for x in lead if x)
        c = f[lead]
        out[lam] = c
        f = padd(f, schur_poly(lam, n), -c)
        if p is not None:
            f = reduce(f, p)
    return out


def divided_difference(i: int, f: dict) -> dict:
    """(f - s_i f) / (x_i - x_{i+1}), i zero-based, exact over Z."""
    out: dict = {}
    for e, c in f.items():
        a, b = e[i], e[i + 1]
        if a == b:
            continue
        sign = 1 if a > b else -1
        lo, hi = min(a, b), max(a, b)
        # (x^hi y^lo - x^lo y^hi)/(x - y) = sum_{j=lo}^{hi-1} x^j y^{hi+lo-1-j}
        for j in range(lo, hi):
            e2 = list(e)
            e2[i], e2[i + 1] = j, hi + lo - 1 - j
            e2 = tuple(e2)
            out[e2] = out.get(e2, 0) + sign * c
    return {e: v for e, v in out.items() if v}


def gaussian_binomial(n: int, k: int) -> dict:
    """Balanced q-binomial, exponent -> coefficient, by counting subsets."""
    out: dict = {}
    for s in combinations(range(n), k):
        inv = sum(x - j for j, x in enumerate(s))
        e = 2 * inv - k * (n - k)
        out[e] = out.get(e, 0) + 1
    return out


def box_partitions(rows: int, cols: int):
    for lam in product(range(cols + 1), repeat=rows):
        if all(lam[i] >= lam[i + 1] for i in range(rows - 1)):
            yield lam


def box_gf(rows: int, cols: int) -> dict:
    out: dict = {}
    for lam in box_partitions(rows, cols):
        e = 2 * sum(lam) - rows * cols
        out[e] = out.get(e, 0) + 1
    return out


def rank_mod(rows: list, p: int) -> int:
    """Rank of an integer matrix (list of lists) over F_p."""
    m = [[x % p for x in r] for r in rows]
    rk = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rk, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        inv = pow(m[rk][c], p - 2, p)
        m[rk] = [x * inv % p for x in m[rk]]
        for r in range(len(m)):
            if r != rk and m[r][c]:
                f = m[r][c]
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[rk])]
        rk += 1
    return rk


def block_lengths_from_nilpotent(mat: list, p: int) -> list:
    """Jordan block sizes of a nilpotent matrix over F_p (ungraded), sorted."""
    n = len(mat)
    ranks = [n]
    power = [[int(i == j) for j in range(n)] for i in range(n)]
    while ranks[-1]:
        power = [[sum(power[i][k] * mat[k][j] for k in range(n)) % p for j in range(n)] for i in range(n)]
        ranks.append(rank_mod(power, p) if n else 0)
    # number of blocks of size >= k is ranks[k-1] - ranks[k]
    ge = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    sizes = []
    for k in range(1, len(ge) + 1):
        exact = ge[k - 1] - (ge[k] if k < len(ge) else 0)
        sizes += [k] * exact
    return sorted(sizes)


def inverse_mod(mat: list, p: int) -> list:
    n = len(mat)
    m = [[x % p for x in row] + [int(i == j) for j in range(n)] for i, row in enumerate(mat)]
    for c in range(n):
        piv = next(r for r in range(c, n) if m[r][c])
        m[c], m[piv] = m[piv], m[c]
        inv = pow(m[c][c], p - 2, p)
        m[c] = [x * inv % p for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


def longest_divided_difference(f: dict, n: int) -> dict:
    for k in range(n - 1, 0, -1):
        for i in range(k):
            f = divided_difference(i, f)
    return f


def grassmannian_trace(f: dict, a: int, b: int) -> dict:
    """Sym_a (x) Sym_b -> Sym_{a+b}: the longest divided difference of f * delta_a(x) * delta_b(y)."""
    n = a + b
    stair = tuple(a - 1 - i for i in range(a)) + tuple(b - 1 - j for j in range(b))
    return longest_divided_difference(pmul(f, {stair: 1}), n)


def two_block_schur(lam, mu, a: int, b: int) -> dict:
    """pi_lam(x_1..x_a) pi_mu(y_1..y_b) as a polynomial in a + b variables."""
    x = {e + (0,) * b: c for e, c in schur_poly(lam, a).items()}
    y = {(0,) * a + e: c for e, c in schur_poly(mu, b).items()}
    return pmul(x, y)
