import pytest
from hypothesis import given, strategies as st

from wmds.action import ActionContext
from wmds.cartan import CartanData
from wmds.coeff import SymbolicRing, to_complex
from wmds.errors import NonpositiveDegreeDirection, TruncationError
from wmds.series import RationalDistribution, TruncatedDistribution, geom_inverse

from conftest import A2

R1 = SymbolicRing(1)
R2 = SymbolicRing(2)


def td(terms, cap=None, ring=R1, rank=2):
    return TruncatedDistribution(rank, ring, {k: ring.const(v) if isinstance(v, int) else v for k, v in terms.items()}, cap)


def test_inverse_of_one_minus_x_inverse():
    f = td({(0,): 1, (-1,): -1}, rank=1)
    for cap in (1, 4, 9):
        g = TruncatedDistribution(1, R1, {(k,): R1.const(-1) for k in range(1, cap + 2)}, cap + 1)
        assert (f * g).equals_up_to(TruncatedDistribution.one(1, R1), cap)


def test_multiplicative_identity():
    f = td({(1, 0): 3, (0, 2): -1}, cap=4)
    assert f * TruncatedDistribution.one(2, R1) == f


def test_a2_delta_cancellation():
    q = R1.qpow
    f = td({(0, 0): 1, (1, 0): q(1, -1)}) * td({(0, 0): 1, (0, 1): q(1, -1)}) * td({(0, 0): 1, (1, 1): q(2, -1)})
    f = f.truncate(2)
    assert f == td({(0, 0): 1, (1, 0): q(1, -1), (0, 1): q(1, -1)}, cap=2)
    ctx = ActionContext(CartanData.from_matrix(A2, 1), cap=2)
    assert ctx.delta_series() == f
    assert ActionContext(CartanData.from_matrix(A2, 1), cap=0).delta_series() == td({(0, 0): 1}, cap=0)


def test_geom_inverse():
    g = geom_inverse(R1, 2, R1.qpow(1), (1, 0), 2)
    assert g == td({(0, 0): 1, (1, 0): R1.qpow(1), (2, 0): R1.qpow(2)}, cap=2)
    assert geom_inverse(R1, 2, 0, (1, 0), 5) == TruncatedDistribution.one(2, R1, 5)
    with pytest.raises(NonpositiveDegreeDirection):
        geom_inverse(R1, 2, R1.one(), (1, -1), 3)


@given(st.integers(-3, 3), st.tuples(st.integers(0, 3), st.integers(0, 3)).filter(lambda b: sum(b) > 0),
       st.integers(0, 8))
def test_geom_inverse_defining_property(e, beta, cap):
    c = R2.gamma(1).mul_qpow(e)
    inv = geom_inverse(R2, 2, c, beta, cap)
    one_minus = TruncatedDistribution(2, R2, {(0, 0): R2.one(), beta: -c})
    assert (one_minus * inv).equals_up_to(TruncatedDistribution.one(2, R2), cap)


def test_change_of_variables():
    d = CartanData.from_matrix(A2)
    f = TruncatedDistribution.monomial(2, R1, (0, 1))
    assert f.change_vars(d, (0,)) == TruncatedDistribution.monomial(2, R1, (1, 1), R1.qpow(1))
    for i in range(2):
        e = tuple(int(j == i) for j in range(2))
        out = TruncatedDistribution.monomial(2, R1, e).change_vars(d, (i,))
        assert out == TruncatedDistribution.monomial(2, R1, tuple(-x for x in e), R1.qpow(-2))
    assert f.change_vars(d, ()) == f
    with pytest.raises(TruncationError):
        f.truncate(3).change_vars(d, (0,))


def test_evaluation():
    f = td({(0, 0): 1, (1, 0): R1.qpow(1)})
    val = f.ev_q((2, 2), value=lambda c: to_complex(c, 5, {}), q=5)
    assert abs(val - 1.2) < 1e-12
    assert td({(0, 0): 1}).ev_q((7, 1), value=lambda c: to_complex(c, 5, {}), q=5) == 1
    m = TruncatedDistribution.monomial(2, R1, (1, 2))
    assert abs(m.ev_q((1, 1), value=lambda c: to_complex(c, 3, {}), q=3) - 3 ** -3) < 1e-12


def test_truncation_guards():
    f = td({(1, 0): 1}, cap=3)
    with pytest.raises(TruncationError):
        f.coefficient((4, 0))
    with pytest.raises(TruncationError):
        f.truncate(5)


def test_csv_dump():
    f = td({(0, 0): 1, (1, 1): R1.qpow(1, -2)}, cap=2)
    assert f.to_csv().splitlines() == ["k1,k2,d,coefficient", "0,0,0,1", "1,1,2,-2*q"]


def test_rational_expansion_and_factor_division():
    one = RationalDistribution.one(1, R1)
    f = one.divide_factor(1, (1,))  # 1 / (1 - q x)
    assert f.expand(3) == td({(k,): R1.qpow(k) for k in range(4)}, cap=3, rank=1)
    back = f.multiply_factor(1, (1,))
    assert back.equals(one)
    assert not f.equals(one)
