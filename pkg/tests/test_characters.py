import pytest

from wmds.action import ActionContext
from wmds.cartan import CartanData
from wmds.characters import compare_n1, denominator_multiplicities, freudenthal
from wmds.errors import InputError
from wmds.presets import preset
from wmds.roots import RootTable

from conftest import A2, AFFINE, HYP


def test_fundamental_a2():
    t = freudenthal(CartanData.from_matrix(A2), (1, 0), 6)
    assert dict(t.rows()) == {(0, 0): 1, (1, 0): 1, (1, 1): 1}


def test_adjoint_a2():
    t = freudenthal(CartanData.from_matrix(A2), (1, 1), 6)
    assert t[(1, 1)] == 2
    assert sum(m for _, m in t.rows()) == 8
    assert t[(0, 0)] == 1


def test_affine_string_weights():
    t = freudenthal(CartanData.from_matrix(AFFINE), (1, 0), 5)
    # V(omega_1) of A1^(1): the delta-strings have growing multiplicities
    assert t[(0, 0)] == 1 and t[(1, 0)] == 1
    assert t[(1, 1)] == 1 and t[(2, 2)] == 2


@pytest.mark.parametrize("A, lams, cap", [
    ([[2]], [(0,), (1,), (2,), (3,)], 6),
    (A2, [(0, 0), (1, 0), (1, 1)], 6),
    (AFFINE, [(0, 0), (1, 0)], 5),
])
def test_compare_n1(A, lams, cap):
    d = CartanData.from_matrix(A, 1)
    for lam in lams:
        rep = compare_n1(ActionContext(d, lam, cap))
        assert rep["ok"], rep["mismatches"]


def test_compare_n1_detects_a_wrong_table():
    d = CartanData.from_matrix(A2, 1)
    ctx = ActionContext(d, (1, 0), 4)
    t = freudenthal(d, (1, 0), 4)
    t.mults[(1, 1)] = 2
    assert not compare_n1(ctx, t)["ok"]


def test_compare_n1_needs_n_one():
    with pytest.raises(InputError):
        compare_n1(ActionContext(preset("a2-n2"), cap=2))


@pytest.mark.parametrize("A, depth", [(A2, 4), (AFFINE, 8), (HYP, 8), ([[2, -1], [-2, 2]], 5)])
def test_denominator_identity_matches_peterson(A, depth):
    d = CartanData.from_matrix(A)
    t = RootTable(d, depth)
    assert denominator_multiplicities(d, depth) == {a: t.roots[a].mult for a in t}


def test_freudenthal_requires_dominant():
    with pytest.raises(InputError):
        freudenthal(CartanData.from_matrix(A2), (-1, 0), 3)
