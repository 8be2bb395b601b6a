"""Named root data used by the examples, the CLI and the test-suite.

``PAPER_PRESETS`` are the worked examples (rank one with n=2, A2 with n=1 and
n=2, affine A1^(1) and the rank-two hyperbolic matrix, all with n=2 unless
stated).  ``EXTRA_PRESETS`` add A2 with n=3 and B2 with n=2, where the
m(alpha_i) > 1 branches of the local functional equations occur, and A2 with
n=2 and the non-canonical symmetrization B = A/2.  Its half-integral b_12 makes
the cocycle xi_B nontrivial for n = 2.
"""

from __future__ import annotations

from wmds.cartan import CartanData
from wmds.errors import InputError

A2 = [[2, -1], [-1, 2]]
B2 = [[2, -1], [-2, 2]]
AFFINE_A1 = [[2, -2], [-2, 2]]
HYPERBOLIC = [[2, -3], [-3, 2]]


def _make(name: str) -> CartanData:
    if name == "rank1-n2":
        # the rank-one datum with (alpha, alpha) = b = 1
        return CartanData.from_matrix([[2]], 2, epsilon=[2], B=[[1]], name=name)
    if name == "a2-n1":
        return CartanData.from_matrix(A2, 1, name=name)
    if name == "a2-n2":
        return CartanData.from_matrix(A2, 2, name=name)
    if name == "a2-n3":
        return CartanData.from_matrix(A2, 3, name=name)
    if name == "a2-n2-half":
        return CartanData.from_matrix(A2, 2, epsilon=[2, 2], B=[[1, "-1/2"], ["-1/2", 1]], name=name)
    if name == "b2-n2":
        return CartanData.from_matrix(B2, 2, name=name)
    if name == "affine-a1-n2":
        return CartanData.from_matrix(AFFINE_A1, 2, name=name)
    if name == "hyperbolic-n2":
        return CartanData.from_matrix(HYPERBOLIC, 2, name=name)
    raise InputError(f"unknown preset {name!r}; choose from {', '.join(ALL_PRESETS)}")


PAPER_PRESETS = ("rank1-n2", "a2-n1", "a2-n2", "affine-a1-n2", "hyperbolic-n2")
EXTRA_PRESETS = ("a2-n3", "b2-n2", "a2-n2-half")
ALL_PRESETS = PAPER_PRESETS + EXTRA_PRESETS


def preset(name: str) -> CartanData:
    return _make(name)


def default_q0(n: int) -> int:
    """Smallest prime q0 with q0 = 1 mod 2n (5 for n <= 2)."""
    q = 2 * n + 1
    while True:
        if q > 2 and all(q % d for d in range(2, int(q ** 0.5) + 1)):
            return q
        q += 2 * n
