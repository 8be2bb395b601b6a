"""Generalized Cartan matrices, symmetrizations and the two shifted Weyl actions.

Conventions
-----------
* Indices are 0-based in the Python API (``i in range(r)``).
* ``a_ij = alpha_j(h_i)``, so the reflection is
  ``sigma_i(beta) = beta - beta(h_i) alpha_i`` with ``beta(h_i) = sum_j k_j a_ij``.
* A lattice vector ``beta = sum k_i alpha_i`` is a plain tuple of ints ``(k_1, ..., k_r)``;
  a dominant weight ``lambda = sum l_i omega_i`` is a tuple ``(l_1, ..., l_r)``.
* A Weyl word is a sequence ``(i_1, ..., i_k)`` standing for
  ``sigma_{i_1} ... sigma_{i_k}``.  When a word acts on vectors it is applied
  right to left.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from wmds.errors import InputError, NotSymmetrizable

Vec = tuple  # tuple[int, ...]


def depth(beta: Sequence[int]) -> int:
    """d(beta): the sum of the coordinates."""
    return sum(beta)


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vscale(k, a):
    return tuple(k * x for x in a)


def unit(r: int, i: int, k: int = 1) -> Vec:
    v = [0] * r
    v[i] = k
    return tuple(v)


def is_nonnegative(beta) -> bool:
    return all(k >= 0 for k in beta)


def _blocks(A) -> list[list[int]]:
    """Indecomposable blocks (connected components of the Dynkin graph)."""
    r = len(A)
    seen = [False] * r
    out = []
    for s in range(r):
        if seen[s]:
            continue
        comp, stack = [], [s]
        seen[s] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(r):
                if j != i and A[i][j] != 0 and not seen[j]:
                    seen[j] = True
                    stack.append(j)
        out.append(sorted(comp))
    return out


def _validate_gcm(A) -> tuple[tuple[int, ...], ...]:
    if not A or any(len(row) != len(A) for row in A):
        raise InputError("Cartan matrix must be a non-empty square matrix")
    r = len(A)
    out = []
    for i in range(r):
        row = []
        for j in range(r):
            v = A[i][j]
            if isinstance(v, float):
                if not v.is_integer():
                    raise InputError(f"entry a_{i}{j}={v} is not an integer")
                v = int(v)
            if not isinstance(v, int) or isinstance(v, bool):
                raise InputError(f"entry a_{i}{j}={v!r} is not an integer")
            row.append(v)
        out.append(tuple(row))
    for i in range(r):
        if out[i][i] != 2:
            raise InputError(f"diagonal entry a_{i}{i} must be 2, got {out[i][i]}")
        for j in range(r):
            if i != j:
                if out[i][j] > 0:
                    raise InputError(f"off-diagonal entry a_{i}{j} must be <= 0")
                if (out[i][j] == 0) != (out[j][i] == 0):
                    raise InputError(f"a_{i}{j} = 0 must be equivalent to a_{j}{i} = 0")
    return tuple(out)


def _valid_b(B) -> bool:
    r = len(B)
    for i in range(r):
        if B[i][i].denominator != 1 or B[i][i] <= 0:
            return False
        for j in range(r):
            if B[i][j] != B[j][i] or (2 * B[i][j]).denominator != 1:
                return False
    return True


def symmetrize(A) -> tuple[tuple[Fraction, ...], tuple[tuple[Fraction, ...], ...]]:
    """Canonical decomposition ``A = diag(eps) B``.

    On each indecomposable block ``eps`` starts as the primitive positive integer
    vector with ``eps_i / eps_j = a_ij / a_ji``.  If ``diag(eps)^-1 A`` does not
    have an integer diagonal and half-integral off-diagonal entries, ``B`` is
    multiplied by the least positive integer that makes it so (and ``eps`` is
    divided by it).  Symmetric Cartan matrices therefore give ``B = A``.

    Raises
    ------
    NotSymmetrizable
        If the ratio conditions are inconsistent around a cycle of the Dynkin graph.
    """
    A = _validate_gcm(A)
    r = len(A)
    eps: list[Fraction | None] = [None] * r
    for comp in _blocks(A):
        root = comp[0]
        eps[root] = Fraction(1)
        stack = [root]
        while stack:
            i = stack.pop()
            for j in comp:
                if j == i or A[i][j] == 0:
                    continue
                want = eps[i] * Fraction(A[j][i], A[i][j])
                if eps[j] is None:
                    eps[j] = want
                    stack.append(j)
                elif eps[j] != want:
                    raise NotSymmetrizable(f"ratio condition fails on the edge ({i},{j})")
        lcm_den = 1
        for i in comp:
            lcm_den = lcm_den * eps[i].denominator // math.gcd(lcm_den, eps[i].denominator)
        ints = [int(eps[i] * lcm_den) for i in comp]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        for i, v in zip(comp, ints):
            eps[i] = Fraction(v, g)
        for k in range(1, 2 * max(int(eps[i]) for i in comp) * 12 + 2):
            block_b = [[Fraction(k * A[i][j]) / eps[i] for j in comp] for i in comp]
            if _valid_b(block_b):
                for i in comp:
                    eps[i] = eps[i] / k
                break
        else:  # pragma: no cover - k = 2*lcm(eps) always works
            raise NotSymmetrizable("no half-integral normalization found")
    B = tuple(tuple(Fraction(A[i][j]) / eps[i] for j in range(r)) for i in range(r))
    for i in range(r):
        for j in range(r):
            if B[i][j] != B[j][i]:
                raise NotSymmetrizable("A is not symmetrizable")
    return tuple(eps), B


@dataclass(frozen=True)
class CartanData:
    """A generalized Cartan matrix together with a symmetrization and the cover degree n.

    Build with :meth:`from_matrix`; passing ``epsilon`` and ``B`` explicitly
    overrides the canonical normalization after validation.
    """

    A: tuple
    n: int
    epsilon: tuple
    B: tuple
    name: str = field(default="", compare=False)

    @classmethod
    def from_matrix(cls, A, n: int = 1, epsilon=None, B=None, name: str = "") -> "CartanData":
        A = _validate_gcm(A)
        if not isinstance(n, int) or n < 1:
            raise InputError("the cover degree n must be a positive integer")
        r = len(A)
        if (epsilon is None) != (B is None):
            raise InputError("epsilon and B must be given together")
        if epsilon is None:
            epsilon, B = symmetrize(A)
        else:
            epsilon = tuple(Fraction(e) for e in epsilon)
            B = tuple(tuple(Fraction(x) for x in row) for row in B)
            if len(epsilon) != r or len(B) != r or any(len(row) != r for row in B):
                raise InputError("epsilon/B have the wrong size")
            if any(e <= 0 for e in epsilon):
                raise InputError("epsilon must be positive")
            if not _valid_b(B):
                raise InputError("B must be symmetric with integer diagonal and half-integral entries")
            for i in range(r):
                for j in range(r):
                    if epsilon[i] * B[i][j] != A[i][j]:
                        raise InputError("A = diag(epsilon) B fails")
        return cls(A=A, n=n, epsilon=tuple(epsilon), B=tuple(B), name=name)

    # -- derived data ------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.A)

    @property
    def b(self) -> tuple:
        """Diagonal entries b_i = (alpha_i, alpha_i) as ints."""
        return tuple(int(self.B[i][i]) for i in range(self.rank))

    def with_n(self, n: int) -> "CartanData":
        return CartanData.from_matrix(self.A, n, self.epsilon, self.B, self.name)

    def zero(self) -> Vec:
        return (0,) * self.rank

    def to_json(self) -> dict:
        return {
            "A": [list(row) for row in self.A],
            "n": self.n,
            "epsilon": [str(e) for e in self.epsilon],
            "B": [[str(x) for x in row] for row in self.B],
        }

    @classmethod
    def from_json(cls, obj) -> "CartanData":
        if isinstance(obj, str):
            obj = json.loads(obj)
        if not isinstance(obj, dict) or "A" not in obj:
            raise InputError("Cartan JSON must be an object with key 'A'")
        eps = obj.get("epsilon")
        B = obj.get("B")
        if eps is not None:
            eps = [Fraction(e) for e in eps]
        if B is not None:
            B = [[Fraction(x) for x in row] for row in B]
        return cls.from_matrix(obj["A"], int(obj.get("n", 1)), eps, B, obj.get("name", ""))


# -- pairings ---------------------------------------------------------------

def bilinear(data: CartanData, beta, gamma) -> Fraction:
    """(beta, gamma) = sum_ij k_i k'_j b_ij."""
    B = data.B
    tot = Fraction(0)
    for i, ki in enumerate(beta):
        if ki:
            row = B[i]
            for j, kj in enumerate(gamma):
                if kj:
                    tot += ki * kj * row[j]
    return tot


def norm2(data: CartanData, beta) -> Fraction:
    return bilinear(data, beta, beta)


def rho_pairing(data: CartanData, beta) -> Fraction:
    """(rho, beta) using (rho, alpha_i) = b_i / 2."""
    return sum((Fraction(k * data.B[i][i]) / 2 for i, k in enumerate(beta)), Fraction(0))


def pairing(data: CartanData, beta, i: int) -> int:
    """beta(h_i) = sum_j k_j a_ij."""
    row = data.A[i]
    return sum(k * row[j] for j, k in enumerate(beta))


def reflect(data: CartanData, beta, i: int) -> Vec:
    """sigma_i(beta) = beta - beta(h_i) alpha_i."""
    c = pairing(data, beta, i)
    if c == 0:
        return tuple(beta)
    out = list(beta)
    out[i] -= c
    return tuple(out)


def apply_word(data: CartanData, word: Iterable[int], beta) -> Vec:
    """w(beta) for the word w = sigma_{i_1}...sigma_{i_k} (rightmost letter first)."""
    for i in reversed(list(word)):
        beta = reflect(data, beta, i)
    return tuple(beta)


def apply_inverse(data: CartanData, word: Sequence[int], beta) -> Vec:
    """w^{-1}(beta) = sigma_{i_k} ... sigma_{i_1}(beta)."""
    for i in word:
        beta = reflect(data, beta, i)
    return tuple(beta)


def mu(data: CartanData, lam, beta, i: int) -> int:
    """mu_i(beta) = (lambda + rho - beta)(h_i) = l_i + 1 - sum_j k_j a_ij."""
    return lam[i] + 1 - pairing(data, beta, i)


def dot_step(data: CartanData, lam, beta, i: int) -> Vec:
    """sigma_i . beta = beta + mu_i(beta) alpha_i."""
    out = list(beta)
    out[i] += mu(data, lam, beta, i)
    return tuple(out)


def dot_action(data: CartanData, lam, word: Sequence[int], beta) -> Vec:
    """Shifted action of a word on Q, rightmost letter first."""
    for i in reversed(list(word)):
        beta = dot_step(data, lam, beta, i)
    return tuple(beta)


dot_action_Q = dot_action


def circle_action(data: CartanData, word: Sequence[int], s) -> tuple:
    """Shifted action on spectral points: s_j -> s_j - a_ij (s_i - 1), rightmost letter first.

    Coordinates may be ints, Fractions, floats or complex numbers.
    """
    s = list(s)
    for i in reversed(list(word)):
        si = s[i]
        s = [s[j] - data.A[i][j] * (si - 1) for j in range(len(s))]
    return tuple(s)


circle_action_h = circle_action
