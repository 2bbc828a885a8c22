import pytest

from pdgcalc import umodel as u
from pdgcalc.qring import LaurentPoly, quantum_binomial
from pdgcalc.symcalc import BlockSym


def ctx5(N=5, p=5):
    return u.FlagContext(N, p)


def test_weights_and_states():
    ctx = ctx5()
    assert [ctx.weight(k) for k in range(6)] == [-5, -3, -1, 1, 3, 5]
    assert ctx.state(1) == 3
    with pytest.raises(u.RepresentationError, match="weight-out-of-range"):
        ctx.state(7)
    with pytest.raises(u.RepresentationError, match="weight-out-of-range"):
        ctx.state(0)


def test_context_validation():
    with pytest.raises(ValueError):
        u.FlagContext(4, 6)
    with pytest.raises(ValueError):
        u.FlagContext(-1, 3)


def test_out_of_range_generator():
    with pytest.raises(u.RepresentationError, match="weight-out-of-range"):
        u.realize("split", u.FlagContext(2, 3), a=2, b=1, n=0)
    with pytest.raises(ValueError):
        u.realize("wiggle", ctx5(), n=1)


def test_thin_dot_is_middle_variable():
    ctx = ctx5()
    k = 1
    m = u.realize("dot", ctx, n=ctx.weight(k))
    w = m.source
    md = w.mods[0]
    x = BlockSym.e1(md.blocks, ctx.p, 1)
    for t in w.basis:
        want = w.expand(0, x * md.basis[t[0]], ())
        assert u.elem_add(m.apply(w.basis_element(t)), want, -1) == {}


@pytest.mark.parametrize("N,k", [(4, 1), (5, 2), (6, 2)])
def test_nilhecke_relations_on_E_strands(N, k):
    ctx = u.FlagContext(N, 5)
    L = (u.E(), u.E())
    D = u.crossing(ctx, "E", 1, 1, k)
    x1, x2 = u.dot(ctx, L, k, 0), u.dot(ctx, L, k, 1)
    one = u.identity(u.Word(ctx, L, k))
    assert (D @ D).is_zero()
    assert D @ x1 - x2 @ D == one
    assert x1 @ D - D @ x2 == one
    D1 = u.whisker(u.crossing(ctx, "E", 1, 1, k + 1), (), (u.E(),), k)
    D2 = u.whisker(u.crossing(ctx, "E", 1, 1, k), (u.E(),), (), k)
    assert D1 @ D2 @ D1 == D2 @ D1 @ D2


def test_generator_degrees():
    ctx = ctx5()
    k = 1
    n = ctx.weight(k)
    assert u.realize("dot", ctx, n=n).degree() == 2
    assert u.realize("split", ctx, a=1, b=1, n=n).degree() == -1
    assert u.realize("merge", ctx, a=1, b=1, n=n).degree() == -1
    assert u.realize("crossing", ctx, a=1, b=1, n=n).degree() == -2
    assert u.split(ctx, "E", 2, 1, k).degree() == -2
    for N in (4, 5, 6):
        c = u.FlagContext(N, 5)
        for k in range(1, N):
            n = c.weight(k)
            assert u.cup(c, 1, k, "cw").degree() == 1 - n
            assert u.cap(c, 1, k, "cw").degree() == 1 - n
            assert u.cup(c, 1, k, "ccw").degree() == 1 + n
            assert u.cap(c, 1, k, "ccw").degree() == 1 + n


def test_identity_has_zero_differential():
    ctx = ctx5()
    w = u.Word(ctx, (u.E(2), u.F()), 2)
    assert u.differential(u.identity(w)).is_zero()


def test_right_crossing_is_closed():
    ctx = ctx5()
    for a, b in [(1, 1), (2, 1), (1, 2)]:
        m = u.realize("right-crossing", ctx, a=a, b=b, n=1)
        assert u.differential(m).is_zero()


SPOT = [
    ("eq-dif-thick-splitter-up", {"a": 2, "b": 1, "n": 1}),
    ("eq-dif-thick-splitter-down", {"a": 1, "b": 2, "n": 0}),
    ("eq-dif-thick-crossing", {"a": 1, "b": 1, "n": -1}),
    ("eq-dif-thick-splitter-up-D", {"a": 1, "b": 1, "n": 2}),
    ("eq-dif-thick-crossing-D", {"a": 2, "b": 1, "n": 0}),
    ("eq-dif-thick-CCW-cap", {"a": 1, "n": 0}),
    ("eq-dif-thick-CW-cup", {"a": 2, "n": 1}),
    ("eq-dif-thick-CW-cap", {"a": 1, "n": -1}),
    ("eq-dif-thick-CCW-cup", {"a": 2, "n": 2}),
    ("eq-dif-left-crossing", {"a": 1, "b": 1, "n": 1}),
    ("eq-dif-left-crossing-second", {"a": 1, "b": 1, "n": 1}),
    ("eq-dif-right-crossing", {"a": 2, "b": 1, "n": 1}),
    ("eq-dif-schur", {"a": 2, "n": 0, "alpha": (2, 1)}),
    ("eq-dif-schur-D", {"a": 2, "n": 1, "alpha": (1,)}),
    ("eq-dif-thick-bubbles-CW", {"a": 2, "n": 1, "alpha": (1,)}),
    ("eq-dif-thick-bubbles-CCW", {"a": 1, "n": -2, "alpha": (2,)}),
    ("thick-bubble-giambelli", {"a": 2, "n": 0, "alpha": (1, 1)}),
    ("thickdotslide", {"a": 2, "b": 1, "n": 0}),
    ("thickdotslide-D", {"a": 1, "b": 2, "n": 1}),
    ("zigzag", {"a": 2, "n": 0}),
    ("zigzag-D", {"a": 1, "n": 1}),
]


def test_catalogue_is_covered():
    assert {fid for fid, _ in SPOT} | {
        "eq-dif-thick-splitter-down-D", "eq-dif-left-crossing-alt"} == set(u.FORMULA_IDS)


@pytest.mark.parametrize("fid,params", SPOT, ids=[f for f, _ in SPOT])
@pytest.mark.parametrize("p", [3, 5])
def test_formula_spot_checks(fid, params, p):
    res = u.formula_results(fid, params, p)
    assert len(res) == 2
    assert all(ok for _, ok in res), res


def test_left_crossing_wrong_coefficient_fails():
    ctx = u.FlagContext(5, 5)
    k = ctx.state(1)
    lhs, rhs = u.FORMULAS["eq-dif-left-crossing"](ctx, k, 1, 1, 1)
    assert lhs.diff() == rhs
    assert lhs.diff() != rhs.scale(2)


@pytest.mark.parametrize("fid", ["eq-dif-thick-splitter-up", "eq-dif-thick-CW-cup",
                                 "eq-dif-left-crossing"])
def test_generators_left_linear_and_p_nilpotent(fid):
    ctx = u.FlagContext(5, 3)
    params = {"a": 1, "b": 1, "n": 1}
    assert u.generator_checks(fid, params, ctx) == {"left-linear": True, "p-nilpotent": True}


def test_degree_zero_bubbles_are_one():
    ctx = u.FlagContext(6, 5)
    for k in range(1, 6):
        n = ctx.weight(k)
        for orient, r in (("cw", n - 1), ("ccw", -n - 1)):
            if r >= 0:
                val = u.real_bubble(ctx, k, orient, r)
                assert val == ctx.one(k)


def test_unknown_formula():
    with pytest.raises(ValueError):
        u.verify_formula("no-such", {"n": 0}, u.FlagContext(4, 3))


# ------------------------------------------------------------- Stosic

def test_stosic_index_counts():
    assert len(u.stosic_index(1, 1, 1)) == 2
    assert u.stosic_index(1, 1, 0) == [(0, ())]
    assert u.stosic_index(2, 1, 1) == [(0, ()), (1, ()), (1, (1,))]
    with pytest.raises(u.StosicError, match="use-FE-side"):
        u.stosic_index(1, 2, 0)


def test_stosic_lambda_degrees():
    # shift 2|alpha| - j(n + a - b - j)
    for a, b, n in [(1, 1, 1), (2, 1, 1), (2, 2, 2), (1, 2, 3)]:
        ctx = u.stosic_contexts(a, b, n, 5)[0]
        for lam in u.stosic_inclusions(a, b, n, ctx):
            j, alpha = lam.index
            assert lam.degree() in (None, 2 * sum(alpha) - j * (n + a - b - j))


def test_sigma_inverts_iso():
    ctx = u.FlagContext(4, 5)
    lams = u.stosic_inclusions(1, 1, 0, ctx)
    M = u.Word(ctx, (u.E(), u.F()), ctx.state(0))
    (sg,) = u.solve_projections(lams, M)
    assert sg @ lams[0] == u.identity(lams[0].source)
    assert lams[0] @ sg == u.identity(M)


def test_solve_rejects_incomplete_family():
    ctx = u.FlagContext(5, 5)
    lams = u.stosic_inclusions(1, 1, 1, ctx)
    M = u.Word(ctx, (u.E(), u.F()), ctx.state(1))
    with pytest.raises(u.StosicError, match="decomposition-failed"):
        u.solve_projections(lams[:1], M)


@pytest.mark.parametrize("a,b,n,N,p", [(1, 1, 1, 5, 5), (1, 1, 0, 4, 5), (2, 1, 1, 5, 5),
                                       (1, 1, 2, 4, 3), (1, 2, 1, 3, 3)])
def test_stosic_small(a, b, n, N, p):
    rep = u.verify_stosic_fc(a, b, n, u.FlagContext(N, p))
    assert rep.passed, rep.first_failure()


def test_stosic_reversed_order_not_fantastic():
    ctx = u.FlagContext(5, 5)
    lams = u.stosic_inclusions(1, 1, 1, ctx)
    M = u.Word(ctx, (u.E(), u.F()), ctx.state(1))
    sigmas = u.solve_projections(lams, M)
    from pdgcalc.fcverify import FcDatum, Summand, verify_fc
    summands = [Summand(l, s, l.degree() or 0, l.index, l.source) for l, s in zip(lams, sigmas)]
    rep = verify_fc(FcDatum(M, list(reversed(summands)), u.MapAlgebra))
    assert not rep.conditions["fantastic"].passed
    assert rep.conditions["complete"].passed


def test_stosic_k0_frozen():
    ctx = u.FlagContext(5, 5)
    rep = u.verify_stosic_fc(1, 1, 1, ctx)
    k0 = u.stosic_k0(1, 1, 1, rep, 5)
    assert k0[0][0] == LaurentPoly(1)
    assert k0[1][0] == quantum_binomial(1, 1)
    rep = u.verify_stosic_fc(2, 1, 1, u.FlagContext(5, 5))
    assert u.stosic_k0(2, 1, 1, rep, 5)[1][0] == LaurentPoly({-1: 1, 1: 1})


def test_k0_lines():
    assert u.stosic_k0_line(1, 1, 1) == "EF1₁ = FE1₁ + [1]1₁"
    assert u.stosic_k0_line(2, 1, 1) == "E(2)F1₁ = FE(2)1₁ + [2]E1₁"
    assert u.stosic_k0_line(1, 1, 0) == "EF1₀ = FE1₀"


def test_stosic_contexts():
    assert [c.N for c in u.stosic_contexts(1, 1, 0, 3)] == [2, 4]
    assert [c.N for c in u.stosic_contexts(2, 2, 3, 5)] == [7, 9]


def test_final_identity_and_dif_lambda():
    ctx = u.FlagContext(6, 3)
    k = ctx.state(2)
    assert u.final_identity_holds(ctx, 1, 1, k)
    assert u.dif_lambda_holds(ctx, 2, 1, k, 1, (1,))
