"""Arithmetic of F_q0[t]: residue symbols, Gauss sums and the twisting symbols.

The ring ``o_S = F_q0[t]`` (``S`` = the place at infinity) stands in for the ring
of S-integers of a number field.  Units are the nonzero constants, monic
polynomials represent ``o_S / o_S^x``, and ``q0 = 1 mod 2n`` makes the n-th
power reciprocity law for monic polynomials symmetric.

Field elements of ``F_q0`` (``q0 = p^e``) are ints ``0 .. q0-1`` whose base-p
digits are the coefficients of a polynomial modulo a fixed irreducible of
degree ``e``.  Polynomials over ``F_q0`` are tuples of such ints in ascending
order with no trailing zeros (the zero polynomial is ``()``).

Symbols are handled as exponents ``k`` (mod n) of ``zeta_n = exp(2 pi i / n)``;
public functions return exact :class:`~wmds.cyclotomic.Cyclotomic` values in
``Q(zeta_N)`` with ``N = lcm(n, p)``, the field that also holds Gauss sums.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from functools import lru_cache

from wmds.cyclotomic import CyclotomicField
from wmds.errors import InputError, NotCoprime


def _prime_power(q: int) -> tuple:
    if q < 2:
        raise InputError(f"{q} is not a prime power")
    for p in range(2, int(math.isqrt(q)) + 1):
        if q % p == 0:
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            if r != 1:
                raise InputError(f"{q} is not a prime power")
            return p, e
    return q, 1


class GF:
    """The finite field with q0 elements, via lookup tables."""

    def __init__(self, q0: int):
        p, e = _prime_power(q0)
        self.q = q0
        self.p = p
        self.e = e
        self.modulus = self._find_modulus() if e > 1 else None
        q = q0
        digits = [self._digits(a) for a in range(q)]
        self.add_t = [[self._from_digits([(x + y) % p for x, y in zip(digits[a], digits[b])])
                       for b in range(q)] for a in range(q)]
        self.neg_t = [self._from_digits([(-x) % p for x in digits[a]]) for a in range(q)]
        self.mul_t = [[self._mul_slow(digits[a], digits[b]) for b in range(q)] for a in range(q)]
        # primitive element: the smallest generator of the multiplicative group
        for g in range(2 if q > 2 else 1, q):
            seen, x = set(), 1
            for _ in range(q - 1):
                x = self.mul_t[x][g]
                seen.add(x)
            if len(seen) == q - 1:
                self.gen = g
                break
        self.exp_t = [1] * (q - 1)
        for k in range(1, q - 1):
            self.exp_t[k] = self.mul_t[self.exp_t[k - 1]][self.gen]
        self.log_t = {v: k for k, v in enumerate(self.exp_t)}
        self.inv_t = [0] + [self.exp_t[(-self.log_t[a]) % (q - 1)] for a in range(1, q)]
        self.trace_t = [self._trace(a) for a in range(q)]

    def _digits(self, a: int) -> list:
        return [(a // self.p ** k) % self.p for k in range(self.e)]

    def _from_digits(self, ds) -> int:
        return sum(d * self.p ** k for k, d in enumerate(ds))

    def _find_modulus(self) -> tuple:
        p, e = self.p, self.e
        for tail in itertools.product(range(p), repeat=e):
            f = list(tail) + [1]
            if f[0] == 0:
                continue
            if all(self._poly_eval_p(f, x) != 0 for x in range(p)) and self._irreducible_p(f):
                return tuple(f)
        raise AssertionError("no irreducible polynomial found")

    @staticmethod
    def _poly_eval_p(f, x):
        return sum(c * x ** k for k, c in enumerate(f))

    def _irreducible_p(self, f) -> bool:
        p, d = self.p, len(f) - 1
        for k in range(1, d // 2 + 1):
            for tail in itertools.product(range(p), repeat=k):
                g = list(tail) + [1]
                if not _pmod_int(f, g, p):
                    return False
        return True

    def _mul_slow(self, a, b) -> int:
        p, e = self.p, self.e
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
        if e > 1:
            mod = self.modulus
            for k in range(2 * e - 2, e - 1, -1):
                c = prod[k]
                if c:
                    for j in range(e + 1):
                        prod[k - e + j] = (prod[k - e + j] - c * mod[j]) % p
        return self._from_digits(prod[:e])

    def _trace(self, a: int) -> int:
        tot, x = 0, a
        for _ in range(self.e):
            tot = self.add_t[tot][x]
            x = self.pow(x, self.p)
        assert tot < self.p
        return tot

    def add(self, a, b):
        return self.add_t[a][b]

    def sub(self, a, b):
        return self.add_t[a][self.neg_t[b]]

    def mul(self, a, b):
        return self.mul_t[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.inv_t[a]

    def pow(self, a, k: int):
        if a == 0:
            return 0 if k else 1
        return self.exp_t[(self.log_t[a] * k) % (self.q - 1)]

    def log(self, a) -> int:
        return self.log_t[a]


def _pmod_int(f, g, p) -> list:
    f = list(f)
    dg = len(g) - 1
    for k in range(len(f) - 1, dg - 1, -1):
        c = f[k] % p
        if c:
            for j in range(dg + 1):
                f[k - dg + j] = (f[k - dg + j] - c * g[j]) % p
    f = [x % p for x in f[:dg]]
    while f and f[-1] == 0:
        f.pop()
    return f


class FFRing:
    """Polynomials over F_q0 with the n-th power residue symbol.

    Parameters
    ----------
    q0 : int
        Size of the constant field; must satisfy ``q0 = 1 (mod 2n)``.
    n : int
        Degree of the residue symbol.
    """

    def __init__(self, q0: int, n: int):
        if n < 1:
            raise InputError("n must be positive")
        if (q0 - 1) % (2 * n):
            raise InputError(f"q0 = {q0} is not 1 mod 2n = {2 * n}")
        self.F = GF(q0)
        self.q0 = q0
        self.p = self.F.p
        self.n = n
        self.N = n * self.p // math.gcd(n, self.p)
        self.field = CyclotomicField(self.N)
        self._factor_cache: dict = {}
        self._gauss_cache: dict = {}
        self._symbol_cache: dict = {}

    # -- polynomial arithmetic -----------------------------------------------------
    @staticmethod
    def trim(f) -> tuple:
        f = list(f)
        while f and f[-1] == 0:
            f.pop()
        return tuple(f)

    @staticmethod
    def deg(f) -> int:
        return len(f) - 1 if f else -1

    def norm(self, f) -> int:
        """|f| = q0^deg f."""
        return self.q0 ** self.deg(f)

    def add(self, f, g):
        F = self.F
        L = max(len(f), len(g))
        return self.trim(F.add(f[k] if k < len(f) else 0, g[k] if k < len(g) else 0) for k in range(L))

    def sub(self, f, g):
        F = self.F
        L = max(len(f), len(g))
        return self.trim(F.sub(f[k] if k < len(f) else 0, g[k] if k < len(g) else 0) for k in range(L))

    def mul(self, f, g):
        if not f or not g:
            return ()
        F = self.F
        out = [0] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            if a:
                for j, b in enumerate(g):
                    if b:
                        out[i + j] = F.add(out[i + j], F.mul(a, b))
        return self.trim(out)

    def scale(self, f, c):
        return self.trim(self.F.mul(a, c) for a in f)

    def divmod(self, f, g):
        if not g:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.F
        f = list(f)
        dg = len(g) - 1
        lead_inv = F.inv(g[-1])
        quo = [0] * max(len(f) - dg, 0)
        for k in range(len(f) - 1, dg - 1, -1):
            c = f[k]
            if c:
                c = F.mul(c, lead_inv)
                quo[k - dg] = c
                for j in range(dg + 1):
                    f[k - dg + j] = F.sub(f[k - dg + j], F.mul(c, g[j]))
        return self.trim(quo), self.trim(f[:dg] if dg > 0 else [])

    def mod(self, f, g):
        return self.divmod(f, g)[1]

    def monic(self, f):
        if not f:
            return f
        return self.scale(f, self.F.inv(f[-1]))

    def gcd(self, f, g):
        while g:
            f, g = g, self.mod(f, g)
        return self.monic(f)

    def powmod(self, f, k: int, g):
        result = (1,)
        base = self.mod(f, g)
        while k:
            if k & 1:
                result = self.mod(self.mul(result, base), g)
            base = self.mod(self.mul(base, base), g)
            k >>= 1
        return self.mod(result, g)

    def deriv(self, f):
        F = self.F
        out = []
        for k in range(1, len(f)):
            c = 0
            for _ in range(k % self.p):
                c = F.add(c, f[k])
            out.append(c)
        return self.trim(out)

    def is_monic(self, f) -> bool:
        return bool(f) and f[-1] == 1

    def monics(self, d: int):
        """All monic polynomials of degree d."""
        for tail in itertools.product(range(self.q0), repeat=d):
            yield tuple(tail) + (1,)

    def residues(self, c):
        """All polynomials of degree < deg c (representatives of o_S / c)."""
        d = self.deg(c)
        for coeffs in itertools.product(range(self.q0), repeat=d):
            yield self.trim(coeffs)

    # -- factorization ------------------------------------------------------------------
    def _pth_root(self, f):
        F, p = self.F, self.p
        return self.trim(F.pow(f[k], self.q0 // p) for k in range(0, len(f), p))

    def _squarefree(self, f) -> list:
        if self.deg(f) <= 0:
            return []
        out = []
        g = self.deriv(f)
        if not g:
            return [(h, e * self.p) for h, e in self._squarefree(self._pth_root(f))]
        c = self.gcd(f, g)
        w = self.divmod(f, c)[0]
        i = 1
        while self.deg(w) > 0:
            y = self.gcd(w, c)
            z = self.divmod(w, y)[0]
            if self.deg(z) > 0:
                out.append((self.monic(z), i))
            i += 1
            w = y
            c = self.divmod(c, y)[0]
        if self.deg(c) > 0:
            out.extend((h, e * self.p) for h, e in self._squarefree(self._pth_root(self.monic(c))))
        return out

    def _ddf(self, f) -> list:
        out = []
        x = (0, 1)
        h = x
        d = 0
        while self.deg(f) >= 2 * (d + 1):
            d += 1
            h = self.powmod(h, self.q0, f)
            g = self.gcd(self.sub(h, x), f)
            if self.deg(g) > 0:
                out.append((g, d))
                f = self.divmod(f, g)[0]
                h = self.mod(h, f)
        if self.deg(f) > 0:
            out.append((self.monic(f), self.deg(f)))
        return out

    def _edf(self, f, d: int, rng: random.Random) -> list:
        if self.deg(f) == d:
            return [self.monic(f)]
        k = self.deg(f)
        while True:
            a = self.trim([rng.randrange(self.q0) for _ in range(k)])
            if self.deg(a) <= 0:
                continue
            g = self.gcd(a, f)
            if 0 < self.deg(g) < k:
                break
            b = self.sub(self.powmod(a, (self.q0 ** d - 1) // 2, f), (1,))
            g = self.gcd(b, f)
            if 0 < self.deg(g) < k:
                break
        return self._edf(g, d, rng) + self._edf(self.divmod(f, g)[0], d, rng)

    def factor(self, f) -> list:
        """Factor a monic polynomial into sorted (irreducible monic, exponent) pairs."""
        f = self.trim(f)
        if not f:
            raise InputError("cannot factor the zero polynomial")
        if not self.is_monic(f):
            raise InputError("factor expects a monic polynomial")
        hit = self._factor_cache.get(f)
        if hit is not None:
            return hit
        rng = random.Random(hash((self.q0, f)) & 0xFFFFFFFF)
        out: dict = {}
        for part, e in self._squarefree(f):
            for g, d in self._ddf(part):
                for h in self._edf(g, d, rng):
                    out[h] = out.get(h, 0) + e
        res = sorted(out.items(), key=lambda kv: (len(kv[0]), kv[0]))
        self._factor_cache[f] = res
        return res

    def is_irreducible(self, f) -> bool:
        fac = self.factor(f)
        return len(fac) == 1 and fac[0][1] == 1

    def primes(self, d: int) -> list:
        """Monic irreducibles of degree d."""
        return [f for f in self.monics(d) if self.is_irreducible(f)]

    # -- residue symbols ------------------------------------------------------------------
    def _symbol_prime(self, f, g) -> int:
        r = self.mod(f, g)
        if not r:
            raise NotCoprime(f"{f} and {g} are not coprime")
        key = (r, g)
        hit = self._symbol_cache.get(key)
        if hit is not None:
            return hit
        u = self.powmod(r, (self.norm(g) - 1) // self.n, g)
        assert len(u) == 1, "power residue is not a constant"
        step = (self.q0 - 1) // self.n
        lg = self.F.log(u[0])
        assert lg % step == 0
        k = (lg // step) % self.n
        self._symbol_cache[key] = k
        return k

    def symbol_exponent(self, f, g) -> int:
        """k with (f/g) = zeta_n^k; (f/g) is multiplicative in g and 1 for constant g."""
        f, g = self.trim(f), self.trim(g)
        if not g:
            raise NotCoprime("symbol with zero modulus")
        if self.deg(g) == 0:
            return 0
        g = self.monic(g)
        tot = 0
        for h, e in self.factor(g):
            tot += e * self._symbol_prime(f, h)
        return tot % self.n

    def zeta_n(self, k: int):
        return self.field.root_of_unity(k, self.n)

    def residue_symbol(self, f, g):
        return self.zeta_n(self.symbol_exponent(f, g))

    def hilbert_exponent(self, x, y) -> int:
        """(x, y)_S defined through the reciprocity law (x/y) = (y, x)_S (y/x)."""
        return (self.symbol_exponent(y, x) - self.symbol_exponent(x, y)) % self.n

    def hilbert_symbol(self, x, y):
        return self.zeta_n(self.hilbert_exponent(x, y))

    # -- characters and Gauss sums ---------------------------------------------------------
    def psi_exponent(self, r, c) -> int:
        """k with psi(r / c) = zeta_p^k for monic c: trace of the t^-1 coefficient of r/c."""
        d = self.deg(c)
        if d <= 0:
            return 0
        rr = self.mod(r, c)
        coef = rr[d - 1] if len(rr) >= d else 0
        return self.F.trace_t[coef]

    def gauss_sum(self, a, c, t: int, direct: bool = False):
        """g(a, c; t) = sum_{d mod c, (d,c)=1} (d/c)^t psi(a d / c).

        For prime c the residues are visited as powers of a generator of
        (o/c)^x; ``direct=True`` forces the plain sum over all residues.
        """
        a, c = self.trim(a), self.monic(self.trim(c))
        key = (a, c, t % self.n, direct)
        hit = self._gauss_cache.get(key)
        if hit is not None:
            return hit
        N, n, p = self.N, self.n, self.p
        counts: dict = {}
        if self.deg(c) <= 0:
            counts[0] = 1
        elif not direct and self.is_irreducible(c):
            # walk the cyclic group (o/c)^x = <g>: (g^j / c) = zeta_n^{j k_g}
            g, kg = self._residue_generator(c)
            d = (1,)
            for j in range(self.norm(c) - 1):
                k = j * kg * t
                jj = self.psi_exponent(self.mul(a, d), c)
                idx = (k * (N // n) + jj * (N // p)) % N
                counts[idx] = counts.get(idx, 0) + 1
                d = self.mod(self.mul(d, g), c)
        else:
            primes = [h for h, _ in self.factor(c)]
            for d in self.residues(c):
                if not d or any(not self.mod(d, h) for h in primes):
                    continue
                k = self.symbol_exponent(d, c) * t
                j = self.psi_exponent(self.mul(a, d), c)
                idx = (k * (N // n) + j * (N // p)) % N
                counts[idx] = counts.get(idx, 0) + 1
        val = self.field.from_exponent_counts(counts)
        self._gauss_cache[key] = val
        return val

    def _residue_generator(self, c) -> tuple:
        """A generator g of (o/c)^x for irreducible c, with the exponent of (g/c)."""
        Q = self.norm(c)
        primes = [f for f in range(2, Q) if (Q - 1) % f == 0 and all(f % e for e in range(2, int(f ** 0.5) + 1))]
        for g in itertools.chain(([0, 1],), (tuple(x) for x in itertools.product(range(self.q0), repeat=self.deg(c)))):
            g = self.trim(g)
            if self.deg(g) < 0 or self.mod(g, c) == ():
                continue
            if all(self.powmod(g, (Q - 1) // f, c) != (1,) for f in primes):
                return g, self._symbol_prime(g, c)
        raise AssertionError("no generator found")

    # -- twisting symbols -------------------------------------------------------------------
    def xi_exponent(self, B, x, y) -> int:
        """Exponent of xi_B(x, y) for tuples x, y of polynomials."""
        r = len(x)
        tot = 0
        for i in range(r):
            bi = int(B[i][i])
            tot += bi * (self.symbol_exponent(x[i], y[i]) + self.symbol_exponent(y[i], x[i]))
            for j in range(i + 1, r):
                b2 = Fraction(2 * B[i][j])
                if b2.denominator != 1:
                    raise InputError("B must have half-integral entries")
                b2 = int(b2)
                if b2:
                    tot += b2 * (self.symbol_exponent(x[i], y[j]) + self.symbol_exponent(y[i], x[j]))
        return tot % self.n

    def xi_B(self, B, x, y):
        return self.zeta_n(self.xi_exponent(B, x, y))

    def bracket_exponent(self, B, x, y, sign: int = 1) -> int:
        """Exponent of [x/y]^{sign B} = prod (x_i / y_i)^{sign b_i}."""
        tot = 0
        for i in range(len(x)):
            tot += sign * int(B[i][i]) * self.symbol_exponent(x[i], y[i])
        return tot % self.n

    def bracket(self, B, x, y, sign: int = 1):
        return self.zeta_n(self.bracket_exponent(B, x, y, sign))


@lru_cache(maxsize=None)
def ff_ring(q0: int, n: int) -> FFRing:
    return FFRing(q0, n)


def residue_symbol(R: FFRing, f, g):
    return R.residue_symbol(f, g)


def gauss_sum(R: FFRing, a, c, t: int):
    return R.gauss_sum(a, c, t)


def hilbert_symbol(R: FFRing, x, y):
    return R.hilbert_symbol(x, y)


def xi_B(R: FFRing, B, x, y):
    return R.xi_B(B, x, y)


def bracket(R: FFRing, B, x, y, sign: int = 1):
    return R.bracket(B, x, y, sign)


def poly_str(f) -> str:
    return "[" + ",".join(str(c) for c in f) + "]"
