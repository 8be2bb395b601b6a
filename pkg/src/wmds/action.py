"""The metaplectic Weyl group action and the averaged series s, h, N.

For a monomial the action of a simple reflection is

    x^beta | sigma_i = P_{beta,i}(x) x^beta + Q_{beta,i}(x) x^{sigma_i . beta}

with
    P = (1 - 1/q) (q x_i)^{[mu]_m} / (1 - q^{m-1} x_i^m)
    Q = gamma(b_i mu) q^mu (1 - (q x_i)^{-m}) / (1 - q^{m-1} x_i^m)

where ``mu = mu_i(beta)``, ``m = m(alpha_i)``, ``[k]_m`` is the largest multiple of
``m`` not exceeding ``k`` and ``x_i = x^{alpha_i}``.  A general element
``num / prod (1 - c x^gamma)`` is acted on through the rule
``(f1 f2) | sigma_i = f1(sigma_i x) (f2 | sigma_i)`` for ``f1`` supported on Q',
which applies because every denominator direction of the series built here
is a multiple ``m(alpha) alpha`` of a root.  All computations are therefore exact
identities of rational functions; truncation happens only when a series is
expanded for display or comparison.

Two truncation regimes are used:

* total degree (``weights=None``): all denominators are expanded and the
  result is exact for ``d(beta) <= cap``;
* *sigma_i-adapted* (``weights`` = 1 off coordinate i and 0 at i): only the
  other coordinates are truncated; the x_i direction is kept as an exact
  rational function.  sigma_i preserves these weights, so invariance and the
  local functional equations can be checked exactly in this regime.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from wmds.cartan import (
    CartanData,
    apply_inverse,
    dot_step,
    mu,
    pairing,
    reflect,
    unit,
)
from wmds.coeff import SymbolicRing
from wmds.errors import NegativeSupport
from wmds.roots import (
    RootTable,
    enumerate_weyl,
    inverse_word,
    m_formula,
    multiply,
    phi_set,
    qprime_contains,
    reduce_word,
    simple_m,
)
from wmds.series import (
    RationalDistribution,
    TruncatedDistribution,
    _add_into,
    factor_poly,
    poly_mul,
)


def floor_mult(k: int, m: int) -> int:
    """[k]_m: the largest multiple of m that is <= k."""
    return (k // m) * m


def rem(k: int, m: int) -> int:
    """(k)_m: the remainder of k modulo m in [0, m)."""
    return k % m


def other_weights(rank: int, i: int) -> tuple:
    return tuple(0 if j == i else 1 for j in range(rank))


def max_offdiag(data: CartanData, i: int) -> int:
    return max((abs(data.A[i][j]) for j in range(data.rank) if j != i), default=0)


class ActionContext:
    """Cartan data, a dominant weight, a cap and a coefficient ring.

    The root table is built lazily, deep enough for the requested regime.
    """

    def __init__(self, data: CartanData, lam=None, cap: int = 6, ring=None,
                 table: RootTable | None = None, real_depth: int = 200):
        self.data = data
        self.rank = data.rank
        self.lam = tuple(lam) if lam is not None else (0,) * data.rank
        if len(self.lam) != self.rank or any(l < 0 for l in self.lam):
            raise ValueError("lambda must be a dominant weight of the right rank")
        self.cap = cap
        self.ring = ring if ring is not None else SymbolicRing(data.n)
        self.m = simple_m(data)
        self.b = data.b
        self._table = table
        self._real_depth = real_depth
        self._mono_cache: dict = {}
        self._one_w: dict = {}

    # -- tables -------------------------------------------------------------------
    def table(self, depth: int | None = None) -> RootTable:
        need = self.cap if depth is None else depth
        need = max(need, 1)
        if self._table is None or self._table.depth < need:
            self._table = RootTable(self.data, need, max(self._real_depth, need))
        return self._table

    def table_for_weights(self, i: int | None) -> RootTable:
        if i is None:
            return self.table(self.cap)
        return self.table(self.cap * (1 + max_offdiag(self.data, i)))

    def with_ring(self, ring) -> "ActionContext":
        return ActionContext(self.data, self.lam, self.cap, ring, self._table, self._real_depth)

    # -- the action on monomials -------------------------------------------------------
    def monomial_image(self, beta, i: int) -> list:
        """Numerator terms of x^beta | sigma_i over the denominator 1 - q^{m-1} x_i^m."""
        key = (beta, i)
        out = self._mono_cache.get(key)
        if out is not None:
            return out
        ring = self.ring
        m = self.m[i]
        u = mu(self.data, self.lam, beta, i)
        fm = floor_mult(u, m)
        out = []
        p = list(beta)
        p[i] += fm
        out.append((tuple(p), (ring.one() - ring.qpow(-1)) * ring.qpow(fm)))
        g = ring.gamma(self.b[i] * u)
        s = list(beta)
        s[i] += u
        out.append((tuple(s), g * ring.qpow(u)))
        s2 = list(s)
        s2[i] -= m
        out.append((tuple(s2), -(g * ring.qpow(u - m))))
        self._mono_cache[key] = out
        return out

    def act_reflection(self, f: RationalDistribution, i: int) -> RationalDistribution:
        data = self.data
        m = self.m[i]
        ring = self.ring
        out = RationalDistribution(self.rank, ring)
        new_factor = (m - 1, unit(self.rank, i, m))
        for key, num in f.parts.items():
            newnum: dict = {}
            for beta, c in num.items():
                for b2, c2 in self.monomial_image(beta, i):
                    _add_into(newnum, b2, c * c2)
            part = RationalDistribution(self.rank, ring, {(): newnum})
            part = part.divide_factor(*new_factor)
            for (e, g), k in key:
                if not qprime_contains(data, g):
                    raise ValueError(f"denominator direction {g} is not in Q'")
                part = part.divide_factor(e - pairing(data, g, i), reflect(data, g, i), k)
            out = out + part
        return out

    def act(self, f, word: Iterable[int]):
        """f |_lambda w = f | sigma_{i_1} | ... | sigma_{i_k} (letters applied left to right)."""
        if isinstance(f, TruncatedDistribution):
            g = self.act(RationalDistribution.from_truncated(f), word)
            return g.expand(self.cap)
        for i in word:
            f = self.act_reflection(f, i)
        return f

    def one_w(self, word: tuple) -> RationalDistribution:
        """1 |_lambda w, memoized on prefixes."""
        word = tuple(word)
        hit = self._one_w.get(word)
        if hit is not None:
            return hit
        if not word:
            val = RationalDistribution.one(self.rank, self.ring)
        else:
            val = self.act_reflection(self.one_w(word[:-1]), word[-1])
        self._one_w[word] = val
        return val

    # -- cocycle ---------------------------------------------------------------------
    def j_cocycle(self, word) -> tuple:
        """(sign, q-exponent, beta) with j(w, x) = sign q^{d(beta)} x^beta, beta = sum m(alpha) alpha."""
        table = self.table()
        phis = phi_set(word, table)
        beta = [0] * self.rank
        for a in phis:
            ma = m_formula(self.data, a, True)
            for j in range(self.rank):
                beta[j] += ma * a[j]
        sgn = -1 if len(phis) % 2 else 1
        return sgn, sum(beta), tuple(beta)

    def j_at(self, word, word2) -> tuple:
        """j(w, w' x) as a monomial (sign, q-exponent, vector)."""
        sgn, _, beta = self.j_cocycle(word)
        nb = apply_inverse(self.data, reduce_word(self.data, word2), beta)
        return sgn, sum(nb), nb

    def j_times_one_w(self, word) -> RationalDistribution:
        sgn, qe, beta = self.j_cocycle(word)
        return self.one_w(tuple(word)).mul_monomial(beta, self.ring.qpow(qe, sgn))

    # -- Delta and D ---------------------------------------------------------------------
    def root_factors(self, weights=None, cap=None, shift: int = 0, i: int | None = None) -> list:
        """Factors ((m d(alpha) + shift, m alpha), mult) over roots with weight(m alpha) <= cap."""
        cap = self.cap if cap is None else cap
        table = self.table_for_weights(i) if weights is not None else self.table(cap)
        out = []
        for a in table:
            inf = table.roots[a]
            g = tuple(inf.m_alpha * x for x in a)
            w = sum(x * y for x, y in zip(g, weights)) if weights is not None else sum(g)
            if w <= cap:
                out.append(((sum(g) + shift, g), inf.mult))
        return out

    def delta_series(self) -> TruncatedDistribution:
        return self._product_series(0)

    def d_series(self) -> TruncatedDistribution:
        return self._product_series(-1)

    def _product_series(self, shift) -> TruncatedDistribution:
        cap = self.cap
        poly = {(0,) * self.rank: self.ring.one()}
        for (e, g), k in self.root_factors(None, cap, shift):
            poly = poly_mul(poly, factor_poly(self.ring, self.rank, e, g, k), cap)
        return TruncatedDistribution(self.rank, self.ring, poly, cap, 0)

    # -- averages --------------------------------------------------------------------------
    def words(self, weights=None, cap=None) -> list:
        """Elements w whose inversion sum has weight <= cap (all others vanish below the cap)."""
        cap = self.cap if cap is None else cap
        data = self.data
        table = self.table()

        def weight(w):
            tot = 0
            for a in phi_set(w, table):
                tot += sum(a) if weights is None else sum(x * y for x, y in zip(a, weights))
            return tot

        return list(enumerate_weyl(data, cap + 1 if weights is not None else cap,
                                   accept=lambda w: weight(w) <= cap))

    def average_rational(self, weights=None, cap=None) -> RationalDistribution:
        """sum_w j(w,x) (1|w) over the contributing w, truncated in the chosen regime."""
        cap = self.cap if cap is None else cap
        total = RationalDistribution(self.rank, self.ring)
        for w in self.words(weights, cap):
            total = total + self.j_times_one_w(w).truncate_weighted(weights, cap)
        return total

    def average_s(self) -> TruncatedDistribution:
        return self.average_rational().expand(self.cap)

    def h_char(self) -> TruncatedDistribution:
        s = self.average_s()
        h = s
        for (e, g), k in self.root_factors(None, self.cap, 0):
            for _ in range(k):
                h = h * geom_inv(self.ring, self.rank, e, g, self.cap)
        h = h.truncate(self.cap)
        _check_support(h)
        return h

    def n_series(self) -> TruncatedDistribution:
        h = self.h_char()
        N = h * self.d_series()
        N = N.truncate(self.cap)
        _check_support(N)
        return N

    # -- sigma_i-adapted versions ----------------------------------------------------------------
    def h_adapted(self, i: int) -> RationalDistribution:
        """h truncated in other-degree <= cap, exact in the x_i direction."""
        wts = other_weights(self.rank, i)
        cached = self._adapted_cache().get(("h", i))
        if cached is not None:
            return cached
        s = self.average_rational(wts, self.cap)
        for (e, g), k in self.root_factors(wts, self.cap, 0, i):
            s = s.divide_factor(e, g, k)
        h = s.truncate_weighted(wts, self.cap)
        self._adapted_cache()[("h", i)] = h
        return h

    def n_adapted(self, i: int) -> RationalDistribution:
        wts = other_weights(self.rank, i)
        cached = self._adapted_cache().get(("N", i))
        if cached is not None:
            return cached
        N = self.h_adapted(i)
        for (e, g), k in self.root_factors(wts, self.cap, -1, i):
            N = N.multiply_factor(e, g, k)
        N = N.truncate_weighted(wts, self.cap).simplify()
        self._adapted_cache()[("N", i)] = N
        return N

    # -- local functional equations ------------------------------------------------------------
    def fiber(self, F: RationalDistribution, beta, i: int) -> RationalDistribution:
        """The part of F supported on the coset beta + m(alpha_i) Z alpha_i."""
        m = self.m[i]
        beta = tuple(beta)
        parts = {}
        for key, num in F.parts.items():
            for (_, g), _k in key:
                if any(g[j] for j in range(self.rank) if j != i) or g[i] % m:
                    raise ValueError(f"denominator direction {g} does not preserve the cosets")
            parts[key] = {b: c for b, c in num.items()
                          if all(b[j] == beta[j] for j in range(self.rank) if j != i)
                          and (b[i] - beta[i]) % m == 0}
        return RationalDistribution(self.rank, self.ring, parts)

    def fe_exponent(self, beta, i: int) -> int:
        m = self.m[i]
        u = mu(self.data, self.lam, tuple(beta), i)
        mu0 = self.lam[i] + 1
        return rem(u, m) - mu0 if u % m else m - mu0

    def f_rational(self, beta, i: int, N: RationalDistribution | None = None) -> RationalDistribution:
        """f_{beta,i} as an exact rational function in x_i (other coordinates fixed by beta)."""
        beta = tuple(beta)
        if N is None:
            self._check_fiber_cap(beta, i)
            N = self.n_adapted(i)
        ring, m = self.ring, self.m[i]
        u = mu(self.data, self.lam, beta, i)
        num = self.fiber(N, beta, i)
        if u % m:
            e = rem(-u, m)
            other = self.fiber(N, dot_step(self.data, self.lam, beta, i), i)
            c = -(ring.gamma(-self.b[i] * u) * ring.qpow(e))
            num = num + other.mul_monomial(unit(self.rank, i, e), c)
        return num.divide_factor(m - 1, unit(self.rank, i, m))

    def f_series(self, beta, i: int) -> TruncatedDistribution:
        return self.f_rational(beta, i).expand(self.cap)

    def fe_holds(self, f: RationalDistribution, beta, i: int) -> bool:
        e = self.fe_exponent(beta, i)
        lhs = f.reflect_vars(self.data, i)
        rhs = f.mul_monomial(unit(self.rank, i, e), self.ring.qpow(e))
        return lhs.equals(rhs)

    def fe_check(self, beta, i: int) -> bool:
        """f_{beta,i}(sigma_i x) = (q x_i)^e f_{beta,i}(x), checked as an identity of rational functions."""
        return self.fe_holds(self.f_rational(beta, i), beta, i)

    def _check_fiber_cap(self, beta, i: int) -> None:
        if sum(b for j, b in enumerate(beta) if j != i) > self.cap:
            raise ValueError(f"{beta} lies beyond the cap {self.cap} in the directions off {i}")

    # -- cocycle and Delta-ratio checks ---------------------------------------------------------
    def cocycle_holds(self, w1, w2) -> bool:
        """j(w w', x) = j(w, w'x) j(w', x)."""
        s1, e1, b1 = self.j_at(w1, w2)
        s2, e2, b2 = self.j_cocycle(w2)
        s, e, b = self.j_cocycle(multiply(self.data, w1, w2))
        return s == s1 * s2 and e == e1 + e2 and b == tuple(x + y for x, y in zip(b1, b2))

    def delta_ratio_holds(self, word) -> bool:
        """Delta(x) / Delta(w x) = j(w, x), factor by factor.

        Each positive root alpha contributes F_alpha(x) = (1 - q^{m d(alpha)} x^{m alpha})^mult.
        For alpha not inverted by w^-1, F_alpha(w x) is F_{w^-1 alpha}(x); for alpha in
        Phi(w^-1) it is a monomial times F_gamma(x) with gamma = -w^-1 alpha in Phi(w).
        The product of these monomials must be j(w, x)^-1.  Roots outside the table
        are matched by the same bijection, which is checked on every root in it.
        """
        data, ring = self.data, self.ring
        w = reduce_word(data, word)
        winv = inverse_word(w)
        table = self.table()
        inv_w = set(phi_set(w, table))
        inv_winv = phi_set(winv, table)
        sign, qexp = 1, 0
        mono = [0] * self.rank
        seen = set()
        for a in inv_winv:
            g = apply_inverse(data, w, a)
            if any(x > 0 for x in g):
                return False
            g = tuple(-x for x in g)
            if g not in inv_w:
                return False
            seen.add(g)
            ma = m_formula(data, a, True)
            if ma != m_formula(data, g, True):
                return False
            lhs = RationalDistribution.polynomial(self.rank, ring, factor_poly(ring, self.rank, ma * sum(a),
                                                                                tuple(ma * x for x in a)))
            lhs = lhs.change_vars(data, w)
            ga = tuple(ma * x for x in g)
            rhs = RationalDistribution.polynomial(self.rank, ring, factor_poly(ring, self.rank, sum(ga), ga))
            rhs = rhs.mul_monomial(tuple(-x for x in ga), ring.qpow(-sum(ga), -1))
            if not lhs.equals(rhs):
                return False
            sign = -sign
            qexp -= sum(ga)
            mono = [x - y for x, y in zip(mono, ga)]
        if seen != inv_w:
            return False
        for a in table:
            if a in inv_winv:
                continue
            g = apply_inverse(data, w, a)
            if any(x < 0 for x in g):
                return False
            if g in table:
                ia, ig = table.roots[a], table.roots[g]
                if (ia.mult, ia.m_alpha) != (ig.mult, ig.m_alpha):
                    return False
        js, je, jb = self.j_cocycle(w)
        return js == sign and je == -qexp and jb == tuple(-x for x in mono)

    def _adapted_cache(self) -> dict:
        c = getattr(self, "_adapted", None)
        if c is None:
            c = {}
            self._adapted = c
        return c


def geom_inv(ring, rank, e, g, cap) -> TruncatedDistribution:
    from wmds.series import geom_inverse

    return geom_inverse(ring, rank, ring.qpow(e), g, cap)


def _check_support(f: TruncatedDistribution) -> None:
    for b in f.terms:
        if any(x < 0 for x in b):
            raise NegativeSupport(f"term at {b} lies outside Q_+")


# -- module-level API ------------------------------------------------------------------------

def p_factor(ctx: ActionContext, beta, i: int) -> TruncatedDistribution:
    """(q x_i)^{[mu]_m} (1 - 1/q) sum_k (q^{m-1} x_i^m)^k, truncated at ctx.cap."""
    ring, m = ctx.ring, ctx.m[i]
    u = mu(ctx.data, ctx.lam, tuple(beta), i)
    fm = floor_mult(u, m)
    f = RationalDistribution.monomial(ctx.rank, ring, unit(ctx.rank, i, fm),
                                      (ring.one() - ring.qpow(-1)) * ring.qpow(fm))
    return f.divide_factor(m - 1, unit(ctx.rank, i, m)).expand(ctx.cap)


def q_factor(ctx: ActionContext, beta, i: int) -> TruncatedDistribution:
    """gamma(b_i mu) q^mu (1 - (q x_i)^{-m}) sum_k (q^{m-1} x_i^m)^k, truncated at ctx.cap."""
    ring, m = ctx.ring, ctx.m[i]
    u = mu(ctx.data, ctx.lam, tuple(beta), i)
    c = ring.gamma(ctx.b[i] * u) * ring.qpow(u)
    f = RationalDistribution.polynomial(ctx.rank, ring, {
        (0,) * ctx.rank: c,
        unit(ctx.rank, i, -m): -(c * ring.qpow(-m)),
    })
    return f.divide_factor(m - 1, unit(ctx.rank, i, m)).expand(ctx.cap)


def act_monomial_rational(ctx: ActionContext, beta, i: int) -> RationalDistribution:
    return ctx.act_reflection(RationalDistribution.monomial(ctx.rank, ctx.ring, tuple(beta)), i)


def act_monomial(ctx: ActionContext, beta, i: int) -> TruncatedDistribution:
    return act_monomial_rational(ctx, beta, i).expand(ctx.cap)


def act(f, word, ctx: ActionContext):
    return ctx.act(f, word)


def delta_series(ctx: ActionContext) -> TruncatedDistribution:
    return ctx.delta_series()


def d_series(ctx: ActionContext) -> TruncatedDistribution:
    return ctx.d_series()


def j_cocycle(word, ctx: ActionContext) -> tuple:
    return ctx.j_cocycle(word)


def average_s(ctx: ActionContext) -> TruncatedDistribution:
    return ctx.average_s()


def h_char(ctx: ActionContext) -> TruncatedDistribution:
    return ctx.h_char()


def n_series(ctx: ActionContext) -> TruncatedDistribution:
    return ctx.n_series()
