import pytest
from hypothesis import given, strategies as st

import oracles
from pdgcalc.qring import (
    LaurentPoly, OpElement, box_partition_gf, quantum_binomial, quantum_factorial,
    quantum_integer, reduce_to_Op,
)


def test_quantum_integer_small():
    assert quantum_integer(1).coeffs == {0: 1}
    assert quantum_integer(3).coeffs == {-2: 1, 0: 1, 2: 1}
    assert quantum_integer(0).is_zero()


@pytest.mark.parametrize("n", range(0, 9))
@pytest.mark.parametrize("k", range(0, 9))
def test_binomial_matches_subset_count(n, k):
    if k > n:
        assert quantum_binomial(n, k).is_zero()
    else:
        assert quantum_binomial(n, k).coeffs == oracles.gaussian_binomial(n, k)


@pytest.mark.parametrize("j,m", [(j, m) for j in range(7) for m in range(7) if j + m <= 12])
def test_box_gf_matches_enumeration(j, m):
    assert box_partition_gf(j, m).coeffs == oracles.box_gf(j, m)


def test_binomial_frozen():
    # [DERIVED] subset enumeration
    assert quantum_binomial(4, 2).coeffs == {-4: 1, -2: 1, 0: 2, 2: 1, 4: 1}
    assert quantum_binomial(5, 2).coeffs == {-6: 1, -4: 1, -2: 2, 0: 2, 2: 2, 4: 1, 6: 1}


def test_factorial_relation():
    for n in range(1, 7):
        for k in range(n + 1):
            lhs = quantum_binomial(n, k) * quantum_factorial(k) * quantum_factorial(n - k)
            assert lhs == quantum_factorial(n)


@given(st.integers(1, 12), st.integers(0, 12))
def test_pascal(n, k):
    q = LaurentPoly.q
    if k == 0 or k > n:
        return
    lhs = quantum_binomial(n, k)
    rhs = q(k - n) * quantum_binomial(n - 1, k - 1) + q(k) * quantum_binomial(n - 1, k)
    assert lhs == rhs


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_quantum_p_vanishes(p):
    assert reduce_to_Op(quantum_integer(p), p).is_zero()
    assert not reduce_to_Op(quantum_integer(p - 1), p).is_zero() or p == 2
    assert reduce_to_Op(LaurentPoly.q(2 * p), p) == reduce_to_Op(LaurentPoly(1), p)


@given(st.sampled_from([3, 5, 7]),
       st.dictionaries(st.integers(-12, 12), st.integers(-5, 5), max_size=6),
       st.dictionaries(st.integers(-12, 12), st.integers(-5, 5), max_size=6))
def test_reduction_is_ring_map(p, f, g):
    f, g = LaurentPoly(f), LaurentPoly(g)
    assert reduce_to_Op(f + g, p) == reduce_to_Op(f, p) + reduce_to_Op(g, p)
    assert reduce_to_Op(f * g, p) == reduce_to_Op(f, p) * reduce_to_Op(g, p)


@given(st.sampled_from([3, 5, 7]), st.integers(-20, 20))
def test_relation_multiples_vanish(p, shift):
    rel = sum((LaurentPoly.q(2 * i) for i in range(p)), LaurentPoly())
    assert reduce_to_Op(rel * LaurentPoly.q(shift), p).is_zero()


def test_op_rejects_composite():
    with pytest.raises(ValueError):
        reduce_to_Op(LaurentPoly(1), 4)


def test_op_representative_degree():
    x = reduce_to_Op(LaurentPoly.q(-3) + LaurentPoly.q(11), 5)
    assert isinstance(x, OpElement)
    assert all(0 <= e < 2 * 5 - 2 for e in x.rep)
