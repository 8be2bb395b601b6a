"""The exact coefficient ring.

Elements are finite sums ``c * q^e * gamma(1)^{k_1} ... gamma(n-1)^{k_{n-1}}`` with
rational ``c``.  The relations ``gamma(0) = -1`` and ``gamma(i) gamma(n - i) = 1/q``
are applied eagerly, so every element is stored in a unique normal form: for each
complementary pair ``{i, n - i}`` at most one exponent is positive, and for even
``n`` the exponent of ``gamma(n/2)`` is 0 or 1.

A *ring* object (``SymbolicRing`` here, ``SpecializedRing`` for numbers) is what
the series and action code use to manufacture constants, so one engine serves
both the symbolic computation and any numeric specialization.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from wmds.errors import InconsistentSpecialization


def _normalize(n: int, qe: int, g: list) -> tuple:
    for i in range(1, n):
        j = n - i
        if i < j:
            k = min(g[i - 1], g[j - 1])
            if k:
                g[i - 1] -= k
                g[j - 1] -= k
                qe -= k
        elif i == j:
            k = g[i - 1] // 2
            if k:
                g[i - 1] -= 2 * k
                qe -= k
    return qe, tuple(g)


class CoeffElement:
    """Element of Q[q, 1/q][gamma(1), ..., gamma(n-1)] / (pair relations).

    ``terms`` maps ``(q_exponent, gamma_exponents)`` to a nonzero rational.
    Instances are treated as immutable.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        self.n = n
        self.terms = terms if terms is not None else {}

    # -- constructors --------------------------------------------------------
    @classmethod
    def const(cls, n: int, c) -> "CoeffElement":
        if c == 0:
            return cls(n)
        return cls(n, {(0, (0,) * (n - 1)): c})

    @classmethod
    def qpow(cls, n: int, e: int, c=1) -> "CoeffElement":
        if c == 0:
            return cls(n)
        return cls(n, {(e, (0,) * (n - 1)): c})

    @classmethod
    def gamma(cls, n: int, t: int) -> "CoeffElement":
        """gamma(t): the scalar -1 when n | t, otherwise the symbol gamma(t mod n)."""
        t %= n
        if t == 0:
            return cls.const(n, -1)
        g = [0] * (n - 1)
        g[t - 1] = 1
        return cls(n, {(0, tuple(g)): 1})

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other) -> "CoeffElement":
        if isinstance(other, CoeffElement):
            return other
        return CoeffElement.const(self.n, other)

    def __add__(self, other):
        other = self._coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        t = dict(self.terms)
        for k, v in other.terms.items():
            s = t.get(k, 0) + v
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        return CoeffElement(self.n, t)

    __radd__ = __add__

    def __neg__(self):
        return CoeffElement(self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, CoeffElement):
            if other == 0:
                return CoeffElement(self.n)
            if other == 1:
                return self
            return CoeffElement(self.n, {k: v * other for k, v in self.terms.items()})
        n = self.n
        if len(other.terms) == 1:
            ((ko, vo),) = other.terms.items()
            if not any(ko[1]):
                return self.mul_qpow(ko[0], vo)
        if len(self.terms) == 1:
            ((ks, vs),) = self.terms.items()
            if not any(ks[1]):
                return other.mul_qpow(ks[0], vs)
        t: dict = {}
        for (q1, g1), c1 in self.terms.items():
            for (q2, g2), c2 in other.terms.items():
                if n > 1:
                    key = _normalize(n, q1 + q2, [a + b for a, b in zip(g1, g2)])
                else:
                    key = (q1 + q2, ())
                s = t.get(key, 0) + c1 * c2
                if s:
                    t[key] = s
                else:
                    t.pop(key, None)
        return CoeffElement(n, t)

    __rmul__ = __mul__

    def mul_qpow(self, e: int, c=1) -> "CoeffElement":
        """Multiply by c * q^e (fast path)."""
        if c == 0:
            return CoeffElement(self.n)
        if e == 0 and c == 1:
            return self
        return CoeffElement(self.n, {(k[0] + e, k[1]): v * c for k, v in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are only defined for monomials; use mul_qpow")
        out = CoeffElement.const(self.n, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, CoeffElement):
            return self.terms == other.terms
        return self.terms == CoeffElement.const(self.n, other).terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def min_qexp(self):
        return min(k[0] for k in self.terms) if self.terms else None

    # -- display -------------------------------------------------------------
    def __repr__(self):
        return f"CoeffElement({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (e, g), c in sorted(self.terms.items(), key=lambda kv: (kv[0][0], kv[0][1])):
            fac = []
            if e == 1:
                fac.append("q")
            elif e:
                fac.append(f"q^{e}")
            for i, k in enumerate(g, start=1):
                if k == 1:
                    fac.append(f"g{i}")
                elif k:
                    fac.append(f"g{i}^{k}")
            c = Fraction(c)
            if not fac:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(fac))
            elif c == -1:
                parts.append("-" + "*".join(fac))
            else:
                parts.append(f"{c}*" + "*".join(fac))
        out = " + ".join(parts)
        return out.replace("+ -", "- ")


def gamma(n: int, t: int) -> CoeffElement:
    return CoeffElement.gamma(n, t)


def mul(a: CoeffElement, b: CoeffElement) -> CoeffElement:
    return a * b


def add(a: CoeffElement, b: CoeffElement) -> CoeffElement:
    return a + b


def neg(a: CoeffElement) -> CoeffElement:
    return -a


# -- rings ---------------------------------------------------------------------

class SymbolicRing:
    """Factory for CoeffElement constants with a fixed n."""

    symbolic = True

    def __init__(self, n: int):
        self.n = n
        self._one = CoeffElement.const(n, 1)
        self._zero = CoeffElement(n)

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def const(self, c):
        return CoeffElement.const(self.n, c)

    def qpow(self, e: int, c=1):
        return CoeffElement.qpow(self.n, e, c)

    def gamma(self, t: int):
        return CoeffElement.gamma(self.n, t)

    def __eq__(self, other):
        return isinstance(other, SymbolicRing) and other.n == self.n

    def __hash__(self):
        return hash(("sym", self.n))


@dataclass
class Specialization:
    """Numeric values for q and gamma(1..n-1).

    ``gammas[t]`` is the value of gamma(t) for ``1 <= t < n``.  Values may be
    exact (Fraction / Cyclotomic) or complex floats; ``exact`` selects how the
    pair relation is checked.
    """

    n: int
    q: int
    gammas: dict
    exact: bool = True
    tol: float = 1e-9
    _powers: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for i in range(1, self.n):
            if i not in self.gammas:
                raise InconsistentSpecialization(f"missing value for gamma({i})")
        for i in range(1, self.n):
            prod = self.gammas[i] * self.gammas[self.n - i]
            if self.exact:
                ok = prod == Fraction(1, self.q)
            else:
                ok = abs(complex(prod) - 1 / self.q) <= self.tol / self.q
            if not ok:
                raise InconsistentSpecialization(
                    f"gamma({i}) gamma({self.n - i}) != 1/q for q={self.q}"
                )

    def one(self):
        return Fraction(1) if self.exact else complex(1)

    def qval(self, e: int):
        if self.exact:
            return Fraction(self.q) ** e
        return float(self.q) ** e

    def gamma_value(self, t: int):
        t %= self.n
        if t == 0:
            return -1
        return self.gammas[t]

    def gamma_power(self, t: int, k: int):
        key = (t, k)
        v = self._powers.get(key)
        if v is None:
            v = self.one()
            for _ in range(k):
                v = v * self.gammas[t]
            self._powers[key] = v
        return v


def specialize(e: CoeffElement, sp: Specialization):
    """Substitute numeric q and gamma values into a CoeffElement."""
    total: Any = 0
    for (qe, g), c in e.terms.items():
        v: Any = sp.qval(qe) * c
        for t, k in enumerate(g, start=1):
            if k:
                v = v * sp.gamma_power(t, k)
        total = total + v
    return total


def to_complex(e: CoeffElement, q: float, gammas: dict) -> complex:
    """Specialize to complex numbers: ``gammas[t]`` complex values."""
    tot = 0j
    for (qe, g), c in e.terms.items():
        v = complex(float(c)) * q ** qe
        for t, k in enumerate(g, start=1):
            if k:
                v *= gammas[t] ** k
        tot += v
    return tot


class SpecializedRing:
    """Ring factory whose constants are already numbers (used to run the engine numerically)."""

    symbolic = False

    def __init__(self, sp: Specialization):
        self.sp = sp
        self.n = sp.n

    def zero(self):
        return 0 * self.sp.one()

    def one(self):
        return self.sp.one()

    def const(self, c):
        return self.sp.one() * c

    def qpow(self, e: int, c=1):
        return self.sp.qval(e) * c

    def gamma(self, t: int):
        return self.sp.gamma_value(t) * self.sp.one()


def complex_gammas(n: int, q: int) -> dict:
    """Complex values with |gamma(i)| = q^-1/2 satisfying the pair relation (for numerics)."""
    out = {}
    for i in range(1, n):
        j = n - i
        if i < j:
            z = cmath.exp(2j * cmath.pi * i / (2 * n + 1)) / q ** 0.5
            out[i] = z
            out[j] = 1 / (q * z)
        elif i == j:
            out[i] = q ** -0.5
    return out
