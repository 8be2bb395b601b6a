import pytest

from wmds.cartan import CartanData
from wmds.characters import denominator_multiplicities
from wmds.errors import DepthExceeded
from wmds.presets import preset
from wmds.roots import (
    RootTable,
    coxeter_m,
    enumerate_weyl,
    lemma_checks,
    length,
    m_of,
    multiply,
    phi_set,
    qprime_contains,
    reduce_word,
    sign,
    simple_m,
)

from conftest import A2, AFFINE, HYP


def test_a2_roots():
    t = RootTable(CartanData.from_matrix(A2), 3)
    assert set(t.roots) == {(1, 0), (0, 1), (1, 1)}
    assert all(t.roots[a].mult == 1 and t.roots[a].is_real for a in t)


def test_affine_roots():
    t = RootTable(CartanData.from_matrix(AFFINE), 3)
    real = {a for a in t if t.roots[a].is_real}
    imag = {a for a in t if not t.roots[a].is_real}
    assert real == {(1, 0), (0, 1), (1, 2), (2, 1)}
    assert imag == {(1, 1)} and t.roots[(1, 1)].mult == 1


def test_hyperbolic_imaginary_root():
    t = RootTable(CartanData.from_matrix(HYP), 2)
    assert not t.roots[(1, 1)].is_real and t.roots[(1, 1)].mult == 1


def test_hyperbolic_multiplicities_grow():
    t = RootTable(CartanData.from_matrix(HYP), 8)
    assert max(t.roots[a].mult for a in t) > 1
    assert {a: t.roots[a].mult for a in t} == denominator_multiplicities(CartanData.from_matrix(HYP), 8)


def test_m_alpha():
    assert m_of((1, 0), RootTable(CartanData.from_matrix(A2, 2), 2)) == 1
    assert m_of((1, 0), RootTable(CartanData.from_matrix(A2, 3), 2)) == 3
    assert m_of((1, 1), RootTable(CartanData.from_matrix(AFFINE, 2), 2)) == 2
    assert simple_m(preset("rank1-n2")) == (2,)
    assert simple_m(preset("b2-n2")) == (1, 2)


def test_qprime():
    d3 = CartanData.from_matrix(A2, 3)
    assert not qprime_contains(d3, (1, 0))
    assert qprime_contains(d3, (3, 0))
    assert qprime_contains(d3, (0, 0))
    assert qprime_contains(CartanData.from_matrix(AFFINE, 2), (1, 0))


@pytest.mark.parametrize("name", ["a2-n2", "a2-n3", "b2-n2", "affine-a1-n2", "hyperbolic-n2", "rank1-n2"])
def test_lemma(name):
    assert lemma_checks(preset(name))["ok"]


def test_inversion_sets():
    d = CartanData.from_matrix(A2)
    t = RootTable(d, 3)
    assert phi_set((0,), t) == [(1, 0)]
    assert set(phi_set((0, 1), t)) == {(0, 1), (1, 1)}
    assert phi_set((), t) == []


def test_inversion_depth_guard():
    d = CartanData.from_matrix(HYP)
    t = RootTable(d, 2)
    with pytest.raises(DepthExceeded):
        phi_set((0, 1, 0, 1, 0, 1), t)


def test_weyl_enumeration():
    assert len(list(enumerate_weyl(CartanData.from_matrix(A2), 3))) == 6
    assert len(list(enumerate_weyl(CartanData.from_matrix(HYP), 4))) == 9
    assert list(enumerate_weyl(CartanData.from_matrix(HYP), 0)) == [()]
    assert len(list(enumerate_weyl(CartanData.from_matrix(A2), 10))) == 6


def test_word_reduction_and_group_law():
    d = CartanData.from_matrix(A2)
    assert reduce_word(d, (0, 0)) == ()
    assert length(d, (0, 1, 0, 1)) == 2
    assert sign(d, (0, 1, 0)) == -1
    assert reduce_word(d, multiply(d, (0, 1), (1, 0))) == ()
    assert coxeter_m(d, 0, 1) == 3
    assert coxeter_m(CartanData.from_matrix(HYP), 0, 1) == float("inf")
