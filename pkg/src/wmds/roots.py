"""Root tables, the integers m(alpha), the sublattice Q', Weyl words and inversion sets.

Multiplicities come from the Peterson recursion

    (beta | beta - 2 rho) c_beta = sum_{beta' + beta'' = beta} (beta' | beta'') c_beta' c_beta''

with ``c_beta = sum_{k >= 1} mult(beta / k) / k``.  Real roots are produced
independently as the W-orbit of the simple roots, and the two descriptions are
cross-checked when the table is built.

Group elements are identified through their action on rho written in
fundamental weight coordinates, which is faithful because rho is regular
dominant.  The canonical word of an element is its lexicographically least
reduced word, found by repeatedly stripping the smallest left descent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from wmds.cartan import (
    CartanData,
    apply_inverse,
    bilinear,
    depth,
    norm2,
    reflect,
    rho_pairing,
    unit,
)
from wmds.errors import DepthExceeded, NotARoot, WMDSError


@dataclass(frozen=True)
class RootInfo:
    mult: int
    is_real: bool
    m_alpha: int


def m_formula(data: CartanData, alpha, is_real: bool) -> int:
    if not is_real:
        return data.n
    nn = norm2(data, alpha)
    assert nn.denominator == 1 and nn > 0
    return data.n // math.gcd(data.n, int(nn))


def _real_roots(data: CartanData, max_depth: int) -> set:
    r = data.rank
    simple = [unit(r, i) for i in range(r)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for a in frontier:
            for i in range(r):
                b = reflect(data, a, i)
                if b in seen or depth(b) > max_depth or depth(b) <= depth(a):
                    continue
                seen.add(b)
                nxt.append(b)
        frontier = nxt
    return seen


def _q_plus(r: int, d: int) -> Iterator[tuple]:
    """All beta in Q_+ with d(beta) == d."""
    if r == 1:
        yield (d,)
        return
    for k in range(d, -1, -1):
        for rest in _q_plus(r - 1, d - k):
            yield (k,) + rest


def peterson_multiplicities(data: CartanData, max_depth: int) -> dict:
    """Multiplicities of all positive roots with d <= max_depth (Peterson recursion)."""
    r = data.rank
    c: dict = {}
    mult: dict = {}
    for i in range(r):
        c[unit(r, i)] = Fraction(1)
        mult[unit(r, i)] = 1
    for d in range(2, max_depth + 1):
        for beta in _q_plus(r, d):
            rhs = Fraction(0)
            for b1, c1 in c.items():
                if depth(b1) >= d or any(x > y for x, y in zip(b1, beta)):
                    continue
                b2 = tuple(y - x for x, y in zip(b1, beta))
                c2 = c.get(b2)
                if c2:
                    rhs += bilinear(data, b1, b2) * c1 * c2
            lhs = norm2(data, beta) - 2 * rho_pairing(data, beta)
            g = 0
            for x in beta:
                g = math.gcd(g, x)
            lower = sum(
                (Fraction(mult.get(tuple(x // k for x in beta), 0), k) for k in range(2, g + 1) if g % k == 0),
                Fraction(0),
            )
            if lhs == 0:
                # (beta | beta - 2 rho) vanishes only off the root set (roots other
                # than simple ones have strictly negative value), so mult(beta) = 0
                # and the equation degenerates to 0 = rhs.
                if rhs != 0:
                    raise WMDSError(f"Peterson recursion inconsistent at {beta}")
                cb = lower
            else:
                cb = rhs / lhs
            m = cb - lower
            if m.denominator != 1 or m < 0:
                raise WMDSError(f"non-integral multiplicity {m} at {beta}")
            if cb:
                c[beta] = cb
            if m:
                mult[beta] = int(m)
    return mult


class RootTable:
    """Positive roots up to a depth cap.

    ``depth`` bounds the complete table (real and imaginary roots with
    multiplicities); ``real_depth >= depth`` bounds the real roots, which are
    cheap to produce and are all that inversion sets need.
    """

    def __init__(self, data: CartanData, depth_cap: int, real_depth: int | None = None):
        if depth_cap < 1:
            raise ValueError("depth cap must be at least 1")
        self.data = data
        self.depth = depth_cap
        self.real_depth = max(real_depth or depth_cap, depth_cap)
        reals = _real_roots(data, self.real_depth)
        mults = peterson_multiplicities(data, depth_cap)
        roots = {}
        for a in reals:
            if depth(a) <= depth_cap and mults.get(a) != 1:
                raise WMDSError(f"real root {a} has Peterson multiplicity {mults.get(a)}")
            roots[a] = RootInfo(1, True, m_formula(data, a, True))
        for a, k in mults.items():
            if a in roots:
                continue
            if norm2(data, a) > 0:
                raise WMDSError(f"{a} has positive norm but is not a real root")
            roots[a] = RootInfo(k, False, data.n)
        self.roots = roots
        self._by_depth: dict = {}
        for a in sorted(roots, key=lambda v: (depth(v), tuple(-x for x in v))):
            self._by_depth.setdefault(depth(a), []).append(a)

    def __contains__(self, beta) -> bool:
        return tuple(beta) in self.roots

    def __iter__(self):
        for d in sorted(self._by_depth):
            yield from self._by_depth[d]

    def __len__(self):
        return len(self.roots)

    def info(self, beta) -> RootInfo:
        beta = tuple(beta)
        if beta in self.roots:
            return self.roots[beta]
        if any(x < 0 for x in beta):
            neg = tuple(-x for x in beta)
            if neg in self.roots:
                return self.roots[neg]
        raise NotARoot(beta)

    def complete_roots(self, max_depth: int | None = None) -> list:
        """Roots (real and imaginary) of depth at most ``min(max_depth, depth)``."""
        cap = self.depth if max_depth is None else min(max_depth, self.depth)
        return [a for d in sorted(self._by_depth) if d <= cap for a in self._by_depth[d]]

    def rows(self):
        for a in self:
            inf = self.roots[a]
            yield a, depth(a), inf.mult, inf.is_real, inf.m_alpha


def generate_roots(data: CartanData, D: int, real_depth: int | None = None) -> RootTable:
    return RootTable(data, D, real_depth)


def m_of(beta, table: RootTable) -> int:
    return table.info(beta).m_alpha


def simple_m(data: CartanData) -> tuple:
    """m(alpha_i) for each simple root."""
    return tuple(data.n // math.gcd(data.n, b) for b in data.b)


# -- Q' ---------------------------------------------------------------------

def qprime_contains(data: CartanData, beta) -> bool:
    return all(k % m == 0 for k, m in zip(beta, simple_m(data)))


def lemma_checks(data: CartanData) -> dict:
    """Integrality facts behind the W-invariance of Q'."""
    r = data.rank
    m = simple_m(data)
    part1 = all(
        (Fraction(2 * m[i]) * data.B[i][j] / (m[j] * data.B[j][j])).denominator == 1
        for i in range(r)
        for j in range(r)
    )
    part2 = all(
        qprime_contains(data, reflect(data, unit(r, i, m[i]), j)) for i in range(r) for j in range(r)
    )
    part3 = all((m[j] * data.A[i][j]) % m[i] == 0 for i in range(r) for j in range(r))
    return {"ratio_integral": part1, "w_invariant": part2, "coroot_pairing_in_m_Z": part3,
            "ok": part1 and part2 and part3}


# -- Weyl group ---------------------------------------------------------------

def rho_image(data: CartanData, word: Sequence[int], v=None) -> tuple:
    """w(rho) (or w(v)) in fundamental weight coordinates, rightmost letter first."""
    r = data.rank
    v = list(v) if v is not None else [1] * r
    A = data.A
    for i in reversed(list(word)):
        vi = v[i]
        if vi:
            v = [v[j] - vi * A[j][i] for j in range(r)]
    return tuple(v)


def word_from_image(data: CartanData, v) -> tuple:
    """Lexicographically least reduced word of the element w with w(rho) = v."""
    r = data.rank
    A = data.A
    v = list(v)
    out = []
    while True:
        for i in range(r):
            if v[i] < 0:
                break
        else:
            return tuple(out)
        out.append(i)
        vi = v[i]
        v = [v[j] - vi * A[j][i] for j in range(r)]


def reduce_word(data: CartanData, word: Sequence[int]) -> tuple:
    return word_from_image(data, rho_image(data, word))


def length(data: CartanData, word: Sequence[int]) -> int:
    return len(reduce_word(data, word))


def sign(data: CartanData, word: Sequence[int]) -> int:
    return -1 if len(word) % 2 else 1


def inverse_word(word: Sequence[int]) -> tuple:
    return tuple(reversed(tuple(word)))


def multiply(data: CartanData, w1: Sequence[int], w2: Sequence[int]) -> tuple:
    return reduce_word(data, tuple(w1) + tuple(w2))


def coxeter_m(data: CartanData, i: int, j: int):
    """Order of sigma_i sigma_j (``math.inf`` when infinite)."""
    if i == j:
        return 1
    p = data.A[i][j] * data.A[j][i]
    return {0: 2, 1: 3, 2: 4, 3: 6}.get(p, math.inf)


def enumerate_weyl(
    data: CartanData, L: int, accept: Callable[[tuple], bool] | None = None
) -> Iterator[tuple]:
    """Every element with length <= L exactly once, as canonical words.

    Elements come in length-increasing order, lexicographically within a
    length.  The search extends words on the left; ``accept`` may prune an
    element (and everything above it), which is sound for predicates that are
    monotone under left extension such as bounds on the inversion set.
    """
    start = tuple([1] * data.rank)
    level = {start: ()}
    seen = {start}
    yield ()
    for _ in range(L):
        nxt = {}
        for v in level:
            for i in range(data.rank):
                if v[i] <= 0:
                    continue
                vi = v[i]
                v2 = tuple(v[j] - vi * data.A[j][i] for j in range(data.rank))
                if v2 in seen:
                    continue
                seen.add(v2)
                w = word_from_image(data, v2)
                if accept is not None and not accept(w):
                    continue
                nxt[v2] = w
        if not nxt:
            return
        for w in sorted(nxt.values()):
            yield w
        level = nxt


def phi_set(word: Sequence[int], table: RootTable) -> list:
    """Inversion set Phi(w) = {alpha > 0 : w(alpha) < 0}, via Phi(sigma_i w) = Phi(w) + {w^-1 alpha_i}.

    The word is first brought to canonical reduced form.  The list is ordered by
    the recursion (last letter first).

    Raises
    ------
    DepthExceeded
        If an inversion is deeper than the table's real-root depth.
    """
    data = table.data
    w = reduce_word(data, word)
    r = data.rank
    out = []
    for j in range(len(w) - 1, -1, -1):
        root = apply_inverse(data, w[j + 1:], unit(r, w[j]))
        if depth(root) > table.real_depth:
            raise DepthExceeded(f"inversion {root} is deeper than {table.real_depth}")
        assert all(x >= 0 for x in root)
        out.append(root)
    return out


def phi_set_raw(data: CartanData, word: Sequence[int]) -> list:
    """Inversion set of a reduced word without any table (no depth check)."""
    w = reduce_word(data, word)
    r = data.rank
    return [apply_inverse(data, w[j + 1:], unit(r, w[j])) for j in range(len(w) - 1, -1, -1)]
