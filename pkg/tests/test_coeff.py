import cmath
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wmds.arith import ff_ring
from wmds.coeff import CoeffElement, Specialization, SymbolicRing, complex_gammas, gamma, specialize, to_complex
from wmds.cyclotomic import CyclotomicField
from wmds.errors import InconsistentSpecialization


def test_gamma_indexing():
    assert gamma(2, 0) == -1
    assert gamma(2, 3) == gamma(2, 1)
    assert gamma(4, -1) == gamma(4, 3)


def test_pair_relations():
    assert gamma(2, 1) * gamma(2, 1) == CoeffElement.qpow(2, -1)
    assert gamma(3, 1) * gamma(3, 2) == CoeffElement.qpow(3, -1)
    g = gamma(3, 1) * gamma(3, 1)
    assert g != CoeffElement.qpow(3, -1) and len(g.terms) == 1
    assert str(g) == "g1^2"


def test_specialize_examples():
    e = CoeffElement.qpow(2, 2) - CoeffElement.qpow(2, 1)
    R = ff_ring(5, 2)
    g = R.gauss_sum((1,), (0, 1), 1)
    sp = Specialization(2, 5, {1: g / 5})
    assert specialize(e, sp) == 20
    assert specialize(gamma(2, 1) * gamma(2, 1), sp) == Fraction(1, 5)
    val = specialize(gamma(2, 1).mul_qpow(1), sp)
    assert val == g and val * val == 5
    assert abs(complex(val) - 5 ** 0.5) < 1e-12


def test_inconsistent_specialization():
    with pytest.raises(InconsistentSpecialization):
        Specialization(2, 5, {1: Fraction(1, 2)})
    with pytest.raises(InconsistentSpecialization):
        Specialization(3, 7, {1: Fraction(1, 7)})


def test_complex_gammas_are_consistent():
    for n, q in [(2, 5), (3, 7), (4, 9)]:
        gs = complex_gammas(n, q)
        sp = Specialization(n, q, gs, exact=False)
        for t in range(1, n):
            assert abs(abs(gs[t]) - q ** -0.5) < 1e-12
        e = gamma(n, 1) * gamma(n, n - 1)
        assert abs(to_complex(e, q, gs) - 1 / q) < 1e-12
        assert sp.gamma_value(0) == -1


def elements(n):
    mono = st.tuples(st.integers(-3, 3), st.integers(0, n - 1), st.integers(-4, 4))

    def build(items):
        out = CoeffElement(n)
        for e, t, c in items:
            out = out + (gamma(n, t) if t else CoeffElement.const(n, 1)).mul_qpow(e, c)
        return out

    return st.lists(mono, max_size=4).map(build)


@given(elements(3), elements(3), elements(3))
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@given(elements(3), elements(3))
def test_specialization_is_a_ring_map(a, b):
    gs = complex_gammas(3, 7)
    lhs = to_complex(a * b, 7, gs)
    rhs = to_complex(a, 7, gs) * to_complex(b, 7, gs)
    assert cmath.isclose(lhs, rhs, rel_tol=1e-9, abs_tol=1e-9)


def test_symbolic_ring_factory():
    R = SymbolicRing(2)
    assert R.one() * R.gamma(1) == gamma(2, 1)
    assert R.qpow(2, 3) == CoeffElement.qpow(2, 2, 3)
    assert R == SymbolicRing(2) and R != SymbolicRing(3)


def test_cyclotomic_field_basics():
    K = CyclotomicField(10)
    z = K.zeta()
    p = K.one()
    for _ in range(10):
        p = p * z
    assert p == K.one()
    assert (z * z.inverse()) == K.one()
    assert (z.conj() * z) == K.one()
    assert abs(complex(z) - cmath.exp(2j * cmath.pi / 10)) < 1e-12
    assert K.root_of_unity(1, 2) == K.from_rational(-1)
    with pytest.raises(ValueError):
        K.root_of_unity(1, 3)


@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_cyclotomic_arithmetic_matches_complex(u, v):
    K = CyclotomicField(5)
    a = K.from_exponent_counts(dict(enumerate(u)))
    b = K.from_exponent_counts(dict(enumerate(v)))
    assert cmath.isclose(complex(a * b), complex(a) * complex(b), abs_tol=1e-9)
    assert cmath.isclose(complex(a + b), complex(a) + complex(b), abs_tol=1e-9)
    if a:
        assert a * a.inverse() == K.one()
