"""Local coefficients H(c; m) and the twisted local functional equations.

At a prime power, ``H(pi^beta; pi^lambda)`` is the ``x^beta`` coefficient of the
symbolic series ``N(x; lambda)`` with ``q = |pi|`` and ``gamma(i) = g(1, pi; i) / |pi|``.
Globally, H is assembled by twisted multiplicativity:

    H(c c'; m) = xi_B(c, c') H(c; m) H(c'; m)          (c, c' coprime)
    H(c; m m') = [m' / c]^{-B} H(c; m)                  (m', c coprime)

with ``H(units; m) = 1``.  Tuples are tuples of monic polynomials over F_q0
(see :mod:`wmds.arith`).
"""

from __future__ import annotations

from fractions import Fraction

from wmds.action import ActionContext, other_weights, rem
from wmds.arith import FFRing, ff_ring
from wmds.cartan import CartanData, dot_step, mu, unit
from wmds.coeff import SpecializedRing, Specialization, specialize
from wmds.errors import CapExceeded, InputError
from wmds.series import RationalDistribution


def poly_pow(R: FFRing, f, k: int):
    out = (1,)
    for _ in range(k):
        out = R.mul(out, f)
    return out


class HCoefficients:
    """Prime-power table and global assembly for one (CartanData, q0).

    Parameters
    ----------
    data : CartanData
        Root datum; ``data.n`` is the degree of the residue symbol.
    q0 : int
        Size of the constant field, ``q0 = 1 mod 2n``.
    cap : int
        Degree cap of the symbolic N series.  Coefficients of larger degree are
        read from the sigma_i-adapted series when one covers them.
    """

    def __init__(self, data: CartanData, q0: int, cap: int = 6):
        self.data = data
        self.n = data.n
        self.rank = data.rank
        self.R = ff_ring(q0, data.n)
        self.q0 = q0
        self.cap = cap
        self._ctx: dict = {}
        self._N: dict = {}
        self._spec: dict = {}
        self._pp: dict = {}

    # -- symbolic side -------------------------------------------------------------
    def context(self, lam) -> ActionContext:
        lam = tuple(lam)
        ctx = self._ctx.get(lam)
        if ctx is None:
            ctx = ActionContext(self.data, lam, self.cap)
            self._ctx[lam] = ctx
        return ctx

    def n_series(self, lam):
        lam = tuple(lam)
        N = self._N.get(lam)
        if N is None:
            N = self.context(lam).n_series()
            self._N[lam] = N
        return N

    def n_coefficient(self, beta, lam):
        """Symbolic x^beta coefficient of N(x; lambda)."""
        beta = tuple(beta)
        if any(b < 0 for b in beta):
            return self.context(lam).ring.zero()
        if sum(beta) <= self.cap:
            return self.n_series(lam).coefficient(beta)
        ctx = self.context(lam)
        for i in range(self.rank):
            if sum(b for j, b in enumerate(beta) if j != i) <= self.cap:
                Na = ctx.n_adapted(i)
                if set(Na.parts) <= {()}:
                    return Na.parts.get((), {}).get(beta, ctx.ring.zero())
        raise CapExceeded(f"coefficient {beta} is beyond the cap {self.cap}")

    # -- specialization at a prime ---------------------------------------------------
    def _check_prime(self, p) -> tuple:
        p = self.R.trim(p)
        if not self.R.is_monic(p) or not self.R.is_irreducible(p):
            raise InputError(f"{p} is not a monic irreducible polynomial")
        return p

    def specialization(self, p) -> Specialization:
        p = self._check_prime(p)
        sp = self._spec.get(p)
        if sp is None:
            q = self.R.norm(p)
            gammas = {t: self.R.gauss_sum((1,), p, t) / q for t in range(1, self.n)}
            sp = Specialization(self.n, q, gammas, exact=True)
            self._spec[p] = sp
        return sp

    def h_prime_power(self, p, beta, lam):
        """H(pi^beta; pi^lambda) as an exact cyclotomic number."""
        p = self._check_prime(p)
        key = (p, tuple(beta), tuple(lam))
        v = self._pp.get(key)
        if v is None:
            c = self.n_coefficient(beta, lam)
            v = self.R.field.one() * specialize(c, self.specialization(p))
            self._pp[key] = v
        return v

    # -- global assembly ----------------------------------------------------------------
    def decompose(self, a) -> dict:
        """prime -> exponent vector for a tuple of monic polynomials."""
        if len(a) != self.rank:
            raise InputError(f"expected a {self.rank}-tuple")
        out: dict = {}
        for i, f in enumerate(a):
            f = self.R.trim(f)
            if not f:
                raise InputError("entries must be nonzero")
            if not self.R.is_monic(f):
                raise InputError(f"{f} is not monic")
            if self.R.deg(f) == 0:
                continue
            for p, e in self.R.factor(f):
                vec = out.setdefault(p, [0] * self.rank)
                vec[i] += e
        return {p: tuple(v) for p, v in out.items()}

    def prime_tuple(self, p, vec) -> tuple:
        return tuple(poly_pow(self.R, p, k) for k in vec)

    def h_global(self, c, m=None, order=None):
        """H(c; m) by twisted multiplicativity.

        ``order`` lists the primes in the order they are split off; the
        default is sorted order.  The value does not depend on it.
        """
        R = self.R
        m = tuple(m) if m is not None else ((1,),) * self.rank
        dc = self.decompose(c)
        dm = self.decompose(m)
        primes_c = self._ordered(dc, order)
        primes_m = self._ordered(dm, order)
        val = R.field.one()
        ones = ((1,),) * self.rank
        for idx, p in enumerate(primes_c):
            cp = self.prime_tuple(p, dc[p])
            rest = ones
            for p2 in primes_c[idx + 1:]:
                rest = tuple(R.mul(x, y) for x, y in zip(rest, self.prime_tuple(p2, dc[p2])))
            val = val * R.xi_B(self.data.B, cp, rest)
            lam = dm.get(p, (0,) * self.rank)
            local = self.h_prime_power(p, dc[p], lam)
            for p2 in primes_m:
                if p2 != p:
                    local = local * R.bracket(self.data.B, self.prime_tuple(p2, dm[p2]), cp, -1)
            val = val * local
        return val

    @staticmethod
    def _ordered(dec: dict, order) -> list:
        if order is None:
            return sorted(dec, key=lambda p: (len(p), p))
        order = [tuple(p) for p in order]
        missing = [p for p in dec if p not in order]
        if missing:
            raise InputError(f"order does not list the primes {missing}")
        return [p for p in order if p in dec]

    # -- twisted fibers and functional equations -----------------------------------------
    def split_m(self, p, m) -> tuple:
        """(lambda_pi, m') with m = pi^lambda m'."""
        p = self._check_prime(p)
        lam = self.decompose(m).get(p, (0,) * self.rank)
        mp = tuple(self.R.divmod(mi, poly_pow(self.R, p, k))[0] for mi, k in zip(m, lam))
        return lam, mp

    def _fiber_range(self, ctx: ActionContext, beta, i: int) -> list:
        """Coset points beta + k m alpha_i in Q_+ spanned by the support of N."""
        m = ctx.m[i]
        Na = ctx.n_adapted(i)
        fib = ctx.fiber(Na, beta, i)
        if set(fib.parts) - {()}:
            raise CapExceeded("the fiber of N is not a polynomial at this cap")
        top = max((b[i] for b in fib.parts.get((), {})), default=beta[i])
        start = beta[i] % m
        return [tuple(k if j == i else beta[j] for j in range(self.rank))
                for k in range(start, max(top, beta[i]) + 1, m)]

    def numeric_ring(self, p) -> SpecializedRing:
        return SpecializedRing(self.specialization(p))

    def n_twisted(self, beta, i: int, p, m) -> RationalDistribution:
        """N^{(pi)}_{beta,i}(x; m), assembled from global H values on the coset of beta."""
        p = self._check_prime(p)
        lam, _ = self.split_m(p, m)
        ctx = self.context(lam)
        ctx._check_fiber_cap(tuple(beta), i)
        terms = {}
        for b in self._fiber_range(ctx, tuple(beta), i):
            v = self.h_global(self.prime_tuple(p, b), m)
            if v:
                terms[b] = v
        return RationalDistribution(self.rank, self.numeric_ring(p), {(): terms})

    def f_twisted(self, beta, i: int, p, m) -> RationalDistribution:
        p = self._check_prime(p)
        lam, mp = self.split_m(p, m)
        ctx = self.context(lam)
        ring = self.numeric_ring(p)
        q = self.R.norm(p)
        k = ctx.m[i]
        u = mu(self.data, lam, tuple(beta), i)
        num = self.n_twisted(beta, i, p, m)
        if u % k:
            e = rem(-u, k)
            other = self.n_twisted(dot_step(self.data, lam, tuple(beta), i), i, p, m)
            g = self.R.gauss_sum(mp[i], p, -self.data.b[i] * u)
            num = num + other.mul_monomial(unit(self.rank, i, e), -(g * Fraction(1, q)) * ring.qpow(e))
        return num.divide_factor(k - 1, unit(self.rank, i, k))

    def bracket_factor(self, p, m, beta):
        """[m' / pi^beta]^{-B}."""
        _, mp = self.split_m(p, m)
        return self.R.bracket(self.data.B, mp, self.prime_tuple(p, beta), -1)

    def specialize_rational(self, F: RationalDistribution, p) -> RationalDistribution:
        sp = self.specialization(p)
        one = self.R.field.one()
        parts = {key: {b: one * specialize(c, sp) for b, c in num.items()} for key, num in F.parts.items()}
        return RationalDistribution(F.rank, self.numeric_ring(p), parts)

    def f_twisted_fe_check(self, beta, i: int, p, m) -> dict:
        """Transformation law of f^{(pi)}_{beta,i} plus its bracket relation to N and f."""
        beta = tuple(beta)
        p = self._check_prime(p)
        lam, _ = self.split_m(p, m)
        ctx = self.context(lam)
        ring = self.numeric_ring(p)
        f = self.f_twisted(beta, i, p, m)
        e = ctx.fe_exponent(beta, i)
        lhs = f.reflect_vars(self.data, i)
        rhs = f.mul_monomial(unit(self.rank, i, e), ring.qpow(e))
        br = self.bracket_factor(p, m, beta)
        N_loc = self.specialize_rational(ctx.fiber(ctx.n_adapted(i), beta, i), p)
        f_loc = self.specialize_rational(ctx.f_rational(beta, i), p)
        return {
            "fe": lhs.equals(rhs),
            "bracket_N": self.n_twisted(beta, i, p, m).equals(N_loc.scale(br)),
            "bracket_f": f.equals(f_loc.scale(br)),
            "nonzero": not f.is_zero(),
        }


def h_prime_power(H: HCoefficients, p, beta, lam):
    return H.h_prime_power(p, beta, lam)


def h_global(H: HCoefficients, c, m=None, order=None):
    return H.h_global(c, m, order)


def n_twisted(H: HCoefficients, beta, i, p, m):
    return H.n_twisted(beta, i, p, m)


def f_twisted_fe_check(H: HCoefficients, beta, i, p, m) -> dict:
    return H.f_twisted_fe_check(beta, i, p, m)
