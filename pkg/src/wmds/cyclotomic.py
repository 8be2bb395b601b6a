"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element is a vector of rationals in the power basis ``1, z, ..., z^{phi(N)-1}``
of ``Q[z] / Phi_N(z)``.  The complex embedding sends ``z`` to ``exp(2 pi i / N)``.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache


def _poly_divexact(a: list, b: list) -> list:
    """Exact division of integer polynomials (ascending coefficients, b monic)."""
    a = list(a)
    db = len(b) - 1
    out = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            out[k - db] = c
            for j in range(db + 1):
                a[k - db + j] -= c * b[j]
    assert not any(a), "inexact polynomial division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(N: int) -> tuple:
    """Coefficients of Phi_N, ascending."""
    num = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            num = _poly_divexact(num, list(cyclotomic_poly(d)))
    return tuple(num)


class CyclotomicField:
    """The field Q(zeta_N) with cached reduction tables."""

    _cache: dict = {}

    def __new__(cls, N: int):
        if N in cls._cache:
            return cls._cache[N]
        self = super().__new__(cls)
        self.N = N
        phi = cyclotomic_poly(N)
        self.deg = len(phi) - 1
        d = self.deg
        # z^k for 0 <= k < max(N, 2d) reduced to the power basis
        red = []
        for k in range(max(N, 2 * d)):
            if k < d:
                v = [0] * d
                v[k] = 1
            else:
                prev = red[k - 1]
                top = prev[d - 1]
                v = [0] + prev[: d - 1]
                if top:
                    for j in range(d):
                        v[j] -= top * phi[j]
            red.append(v)
        self._red = red
        cls._cache[N] = self
        return self

    def __reduce__(self):
        return (CyclotomicField, (self.N,))

    def zero(self) -> "Cyclotomic":
        return Cyclotomic(self, (Fraction(0),) * self.deg)

    def one(self) -> "Cyclotomic":
        return self.from_rational(1)

    def from_rational(self, c) -> "Cyclotomic":
        v = [Fraction(0)] * self.deg
        v[0] = Fraction(c)
        return Cyclotomic(self, tuple(v))

    def zeta(self, k: int = 1) -> "Cyclotomic":
        """zeta_N^k."""
        return Cyclotomic(self, tuple(Fraction(x) for x in self._red[k % self.N]))

    def root_of_unity(self, k: int, order: int) -> "Cyclotomic":
        """exp(2 pi i k / order); ``order`` must divide N."""
        if self.N % order:
            raise ValueError(f"zeta_{order} is not in Q(zeta_{self.N})")
        return self.zeta(k * (self.N // order))

    def from_exponent_counts(self, counts: dict) -> "Cyclotomic":
        """sum counts[k] * zeta_N^k."""
        v = [Fraction(0)] * self.deg
        for k, c in counts.items():
            if c:
                row = self._red[k % self.N]
                for j in range(self.deg):
                    if row[j]:
                        v[j] += c * row[j]
        return Cyclotomic(self, tuple(v))

    def __repr__(self):
        return f"CyclotomicField({self.N})"


class Cyclotomic:
    __slots__ = ("field", "v")

    def __init__(self, field: CyclotomicField, v: tuple):
        self.field = field
        self.v = v

    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.field is not self.field:
                raise ValueError("elements of different cyclotomic fields")
            return other
        return self.field.from_rational(other)

    def __add__(self, other):
        o = self._coerce(other)
        return Cyclotomic(self.field, tuple(a + b for a, b in zip(self.v, o.v)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.field, tuple(-a for a in self.v))

    def __sub__(self, other):
        o = self._coerce(other)
        return Cyclotomic(self.field, tuple(a - b for a, b in zip(self.v, o.v)))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Cyclotomic):
            if isinstance(other, complex):
                return complex(self) * other
            c = Fraction(other)
            return Cyclotomic(self.field, tuple(a * c for a in self.v))
        o = self._coerce(other)
        d = self.field.deg
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.v):
            if a:
                for j, b in enumerate(o.v):
                    if b:
                        prod[i + j] += a * b
        out = prod[:d]
        red = self.field._red
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                row = red[k]
                for j in range(d):
                    if row[j]:
                        out[j] += c * row[j]
        return Cyclotomic(self.field, tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Cyclotomic):
            return self * other.inverse()
        return self * (1 / Fraction(other))

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "Cyclotomic":
        """Multiplicative inverse by solving the linear system of multiplication-by-self."""
        d = self.field.deg
        cols = [(self * self.field.zeta(k)).v if k < d else None for k in range(d)]
        # matrix M with M[:, k] = self * z^k ; solve M x = e_0
        M = [[cols[k][i] for k in range(d)] + [Fraction(int(i == 0))] for i in range(d)]
        for c in range(d):
            p = next((r for r in range(c, d) if M[r][c] != 0), None)
            if p is None:
                raise ZeroDivisionError("zero is not invertible")
            M[c], M[p] = M[p], M[c]
            piv = M[c][c]
            M[c] = [x / piv for x in M[c]]
            for r in range(d):
                if r != c and M[r][c] != 0:
                    f = M[r][c]
                    M[r] = [x - f * y for x, y in zip(M[r], M[c])]
        return Cyclotomic(self.field, tuple(M[i][d] for i in range(d)))

    def conj(self) -> "Cyclotomic":
        counts = {}
        for k, a in enumerate(self.v):
            if a:
                counts[-k] = a
        return self.field.from_exponent_counts(counts)

    def abs2(self) -> "Cyclotomic":
        return self * self.conj()

    def is_rational(self) -> bool:
        return not any(self.v[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational number")
        return self.v[0]

    def __complex__(self):
        N = self.field.N
        return sum((complex(float(a)) * cmath.exp(2j * math.pi * k / N) for k, a in enumerate(self.v) if a), 0j)

    def __abs__(self):
        return abs(complex(self))

    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            return self.field is other.field and self.v == other.v
        try:
            return self.v == self.field.from_rational(other).v
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.v[0])
        return hash((self.field.N, self.v))

    def __bool__(self):
        return any(self.v)

    def __str__(self):
        parts = []
        for k, a in enumerate(self.v):
            if not a:
                continue
            mon = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if not mon:
                parts.append(str(a))
            elif a == 1:
                parts.append(mon)
            elif a == -1:
                parts.append("-" + mon)
            else:
                parts.append(f"{a}*{mon}")
        body = " + ".join(parts).replace("+ -", "- ") if parts else "0"
        return body

    def __repr__(self):
        return f"Cyclotomic[z=zeta_{self.field.N}]({self})"
