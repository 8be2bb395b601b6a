import itertools

import pytest

from wmds.action import ActionContext, act_monomial, other_weights
from wmds.cartan import CartanData, unit
from wmds.coeff import SymbolicRing
from wmds.presets import ALL_PRESETS, preset
from wmds.series import RationalDistribution, TruncatedDistribution

from conftest import A2

R2 = SymbolicRing(2)
R1 = SymbolicRing(1)
g = R2.gamma(1)
q = R2.qpow


def series(ring, rank, terms, cap):
    return TruncatedDistribution(rank, ring, terms, cap)


def test_rank_one_monomial_action(rank_one):
    ctx = ActionContext(rank_one, cap=3)
    # (1 - 1/q)(1 + q x^2) + gamma(1) q (1 - (q x)^-2)(x + q x^3)
    expected = series(R2, 1, {
        (-1,): -g * q(-1), (0,): 1 - q(-1), (1,): g * q(1) - g,
        (2,): q(1) - 1, (3,): g * q(2) - g * q(1),
    }, 3)
    assert act_monomial(ctx, (0,), 0) == expected


def test_a2_n1_sigma_fixes_one():
    # P + Q x^{alpha_1} = ((q - 1) x_1 - q x_1 + 1) / (1 - x_1) = 1 for n = 1
    ctx = ActionContext(CartanData.from_matrix(A2, 1), cap=4)
    for i in range(2):
        assert ctx.act_reflection(RationalDistribution.one(2, R1), i).equals(RationalDistribution.one(2, R1))


def test_j_cocycle_examples(rank_one):
    d = CartanData.from_matrix(A2, 1)
    ctx = ActionContext(d, cap=3)
    assert ctx.j_cocycle(()) == (1, 0, (0, 0))
    assert ctx.j_cocycle((0, 1)) == (1, 3, (1, 2))
    assert ActionContext(rank_one, cap=3).j_cocycle((0,)) == (-1, 2, (2,))
    d3 = CartanData.from_matrix(A2, 3)
    assert ActionContext(d3, cap=3).j_cocycle((1,)) == (-1, 3, (0, 3))


def test_rank_one_average_h_and_n(rank_one):
    ctx = ActionContext(rank_one, cap=3)
    assert ctx.average_s() == series(R2, 1, {(0,): 1, (1,): g * q(1), (2,): q(1) - q(2),
                                            (3,): g * q(2) - g * q(3)}, 3)
    ctx8 = ActionContext(rank_one, cap=8)
    assert ctx8.n_series() == series(R2, 1, {(0,): 1, (1,): g * q(1)}, 8)


def test_a2_n1_average_is_delta():
    ctx = ActionContext(CartanData.from_matrix(A2, 1), cap=5)
    assert ctx.average_s() == ctx.delta_series()
    assert ctx.h_char() == TruncatedDistribution.one(2, R1, 5)


@pytest.mark.parametrize("name", ALL_PRESETS)
def test_constant_terms(name):
    ctx = ActionContext(preset(name), cap=4)
    one = ctx.ring.one()
    assert ctx.average_s().coefficient((0,) * ctx.rank) == one
    assert ctx.h_char().coefficient((0,) * ctx.rank) == one
    assert ctx.n_series().coefficient((0,) * ctx.rank) == one
    assert ctx.n_series().in_q_plus()


def test_rank_one_fibers(rank_one):
    ctx = ActionContext(rank_one, cap=6)
    N = ctx.n_adapted(0)
    assert ctx.fiber(N, (0,), 0).expand(6) == series(R2, 1, {(0,): 1}, 6)
    assert ctx.fiber(N, (1,), 0).expand(6) == series(R2, 1, {(1,): g * q(1)}, 6)
    assert ctx.fe_check((0,), 0) and ctx.fe_check((1,), 0)


def test_fe_a2_n2():
    ctx = ActionContext(CartanData.from_matrix(A2, 2), cap=6)
    for beta in itertools.product(range(4), repeat=2):
        if sum(beta) <= 3:
            for i in range(2):
                assert ctx.fe_check(beta, i)


def test_fe_detects_wrong_exponent():
    ctx = ActionContext(preset("b2-n2"), cap=6)
    f = ctx.f_rational((1, 1), 1)
    e = ctx.fe_exponent((1, 1), 1)
    lhs = f.reflect_vars(ctx.data, 1)
    assert lhs.equals(f.mul_monomial(unit(2, 1, e), ctx.ring.qpow(e)))
    assert not lhs.equals(f.mul_monomial(unit(2, 1, e + 1), ctx.ring.qpow(e + 1)))


def test_fe_detects_perturbed_n():
    ctx = ActionContext(preset("a2-n3"), cap=6)
    N = ctx.n_adapted(0)
    bump = RationalDistribution.monomial(2, ctx.ring, (1, 1), ctx.ring.qpow(1))
    bad = N + bump
    f = ctx.f_rational((1, 1), 0, bad)
    assert not ctx.fe_holds(f, (1, 1), 0)


@pytest.mark.parametrize("name", ["a2-n2", "b2-n2", "affine-a1-n2"])
def test_h_invariance(name):
    ctx = ActionContext(preset(name), cap=6)
    for i in range(2):
        h = ctx.h_adapted(i)
        assert ctx.act_reflection(h, i).agrees_with(h, other_weights(2, i), 6)


def test_invariance_detects_non_invariant_input():
    ctx = ActionContext(preset("a2-n2"), cap=6)
    h = ctx.h_adapted(0) + RationalDistribution.monomial(2, ctx.ring, (1, 0))
    assert not ctx.act_reflection(h, 0).agrees_with(h, other_weights(2, 0), 6)


def test_cocycle_and_delta_ratio_hyperbolic():
    ctx = ActionContext(preset("hyperbolic-n2"), cap=6)
    assert ctx.cocycle_holds((0, 1), (0,))
    assert ctx.cocycle_holds((1, 0, 1), (0, 1, 0))
    assert ctx.delta_ratio_holds((0, 1, 0, 1))


def test_dominance_guard():
    with pytest.raises(ValueError):
        ActionContext(CartanData.from_matrix(A2), (-1, 0))
