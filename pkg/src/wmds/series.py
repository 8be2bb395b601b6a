"""Formal distributions: truncated graded series and exact geometric rational functions.

``TruncatedDistribution``
    A sparse map ``beta -> coefficient`` known exactly for ``d(beta) <= cap``,
    together with a certified lower bound on ``d`` of its support.  ``cap=None``
    marks a complete object (a Laurent polynomial, nothing omitted).

``RationalDistribution``
    A finite sum of terms ``numerator / prod (1 - q^e x^gamma)^k`` whose
    denominator directions ``gamma`` are nonzero and sign-definite.  Every
    series produced by the averaging construction is of this shape, which is
    what lets the metaplectic action be applied exactly (a truncated series
    does not determine its image under a reflection, because ``sigma_i`` moves
    ``x^{k alpha_i}`` to arbitrarily low degree).  Positive expansions are
    obtained with :meth:`RationalDistribution.expand`.

Coefficients come from a *ring* object (see :mod:`wmds.coeff`), so the same
code handles symbolic and numeric coefficients.
"""

from __future__ import annotations

import csv
import io
import math
from typing import Iterable

from wmds.cartan import CartanData, apply_inverse, depth, pairing, reflect
from wmds.errors import NonpositiveDegreeDirection, TruncationError


def _wdeg(beta, weights) -> int:
    if weights is None:
        return sum(beta)
    return sum(k * w for k, w in zip(beta, weights))


def _add_into(acc: dict, beta, c) -> None:
    s = acc.get(beta)
    s = c if s is None else s + c
    if s:
        acc[beta] = s
    else:
        acc.pop(beta, None)


def poly_mul(p: dict, r: dict, cap=None, weights=None) -> dict:
    """Product of two sparse Laurent polynomials, optionally dropping weight > cap."""
    out: dict = {}
    if cap is not None:
        rmin = min((_wdeg(b, weights) for b in r), default=0)
    for b1, c1 in p.items():
        if cap is not None:
            w1 = _wdeg(b1, weights)
            if w1 + rmin > cap:
                continue
        for b2, c2 in r.items():
            if cap is not None and w1 + _wdeg(b2, weights) > cap:
                continue
            _add_into(out, tuple(x + y for x, y in zip(b1, b2)), c1 * c2)
    return out


def grlex_key(beta):
    return (sum(beta), tuple(-x for x in beta))


# ---------------------------------------------------------------------------
# truncated series
# ---------------------------------------------------------------------------

class TruncatedDistribution:
    """Sparse graded series exact up to total degree ``cap``."""

    __slots__ = ("rank", "ring", "terms", "cap", "lower")

    def __init__(self, rank: int, ring, terms: dict | None = None, cap: int | None = None,
                 lower: int | None = None):
        self.rank = rank
        self.ring = ring
        terms = {k: v for k, v in (terms or {}).items() if v}
        if cap is not None:
            terms = {k: v for k, v in terms.items() if sum(k) <= cap}
        self.terms = terms
        self.cap = cap
        actual = min((sum(k) for k in terms), default=None)
        if lower is None:
            lower = actual if actual is not None else (cap if cap is not None else 0)
        elif actual is not None and actual < lower:
            raise ValueError("term below the certified lower bound")
        self.lower = lower

    # -- constructors --------------------------------------------------------
    @classmethod
    def one(cls, rank: int, ring, cap=None):
        return cls(rank, ring, {(0,) * rank: ring.one()}, cap, 0)

    @classmethod
    def monomial(cls, rank: int, ring, beta, coeff=None, cap=None):
        c = ring.one() if coeff is None else coeff
        return cls(rank, ring, {tuple(beta): c}, cap, sum(beta))

    # -- basic access ----------------------------------------------------------
    def coefficient(self, beta):
        beta = tuple(beta)
        if self.cap is not None and sum(beta) > self.cap:
            raise TruncationError(f"{beta} is beyond the cap {self.cap}")
        return self.terms.get(beta, self.ring.zero())

    def __iter__(self):
        for k in sorted(self.terms, key=grlex_key):
            yield k, self.terms[k]

    def __len__(self):
        return len(self.terms)

    def truncate(self, cap: int) -> "TruncatedDistribution":
        if self.cap is not None and cap > self.cap:
            raise TruncationError("cannot raise the cap of a truncated series")
        return TruncatedDistribution(self.rank, self.ring, self.terms, cap, min(self.lower, cap))

    def _common_cap(self, other):
        if self.cap is None:
            return other.cap
        if other.cap is None:
            return self.cap
        return min(self.cap, other.cap)

    # -- arithmetic --------------------------------------------------------------
    def __add__(self, other: "TruncatedDistribution"):
        cap = self._common_cap(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            _add_into(t, k, v)
        return TruncatedDistribution(self.rank, self.ring, t, cap, min(self.lower, other.lower))

    def __neg__(self):
        return TruncatedDistribution(self.rank, self.ring, {k: -v for k, v in self.terms.items()},
                                     self.cap, self.lower)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TruncatedDistribution":
        return TruncatedDistribution(self.rank, self.ring, {k: v * c for k, v in self.terms.items()},
                                     self.cap, self.lower)

    def shift(self, beta, c=None) -> "TruncatedDistribution":
        """Multiply by c x^beta."""
        d = sum(beta)
        t = {tuple(x + y for x, y in zip(k, beta)): (v if c is None else v * c)
             for k, v in self.terms.items()}
        cap = None if self.cap is None else self.cap + d
        return TruncatedDistribution(self.rank, self.ring, t, cap, self.lower + d)

    def __mul__(self, other: "TruncatedDistribution"):
        caps = []
        if self.cap is not None:
            caps.append(self.cap + other.lower)
        if other.cap is not None:
            caps.append(other.cap + self.lower)
        cap = min(caps) if caps else None
        t = poly_mul(self.terms, other.terms, cap)
        return TruncatedDistribution(self.rank, self.ring, t, cap, self.lower + other.lower)

    def equals_up_to(self, other, cap=None) -> bool:
        c = self._common_cap(other)
        if cap is not None:
            c = cap if c is None else min(c, cap)
        diff = self - other
        return all(c is not None and sum(k) > c for k in diff.terms)

    def __eq__(self, other):
        if not isinstance(other, TruncatedDistribution):
            return NotImplemented
        return self.equals_up_to(other)

    __hash__ = None

    # -- substitutions and evaluations -----------------------------------------
    def change_vars(self, data: CartanData, word) -> "TruncatedDistribution":
        """f(w x) for a complete (polynomial) f; (w x)^beta = q^{d(w^-1 beta - beta)} x^{w^-1 beta}."""
        if self.cap is not None:
            raise TruncationError("change of variables needs a complete (untruncated) series")
        out: dict = {}
        for beta, c in self.terms.items():
            nb = apply_inverse(data, word, beta)
            _add_into(out, nb, c * self.ring.qpow(sum(nb) - sum(beta)))
        return TruncatedDistribution(self.rank, self.ring, out, None)

    def ev_q(self, s, value=None, q=None):
        """sum c(beta) q^{-beta(s)} over stored terms.

        ``value`` converts a coefficient to a number (defaults to ``complex``);
        ``q`` is the numeric base.
        """
        value = value or complex
        tot = 0j
        for beta, c in self.terms.items():
            ex = -sum(k * si for k, si in zip(beta, s))
            tot += value(c) * complex(q) ** ex
        return tot

    def abs_ev_q(self, s, value=None, q=None) -> float:
        value = value or complex
        tot = 0.0
        for beta, c in self.terms.items():
            ex = -sum(k * complex(si).real for k, si in zip(beta, s))
            tot += abs(value(c)) * float(q) ** ex
        return tot

    def growth_constant(self, value, q) -> float:
        """max |c(beta)| / q^{d(beta)} over stored terms."""
        return max((abs(value(c)) / float(q) ** sum(b) for b, c in self.terms.items()), default=0.0)

    def in_q_plus(self) -> bool:
        return all(all(x >= 0 for x in b) for b in self.terms)

    # -- output --------------------------------------------------------------
    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([f"k{i + 1}" for i in range(self.rank)] + ["d", "coefficient"])
        for beta, c in self:
            w.writerow(list(beta) + [sum(beta), str(c)])
        return buf.getvalue()

    def __repr__(self):
        body = ", ".join(f"{b}: {c}" for b, c in list(self)[:8])
        more = "" if len(self.terms) <= 8 else ", ..."
        return f"TruncatedDistribution(cap={self.cap}, {{{body}{more}}})"


def geom_inverse(ring, rank: int, c, beta, cap: int) -> TruncatedDistribution:
    """sum_{k >= 0} c^k x^{k beta} truncated at cap: the inverse of 1 - c x^beta."""
    beta = tuple(beta)
    d = sum(beta)
    if d <= 0:
        raise NonpositiveDegreeDirection(f"direction {beta} has nonpositive degree")
    terms = {(0,) * rank: ring.one()}
    if c:
        p = ring.one()
        k = 1
        while k * d <= cap:
            p = p * c
            terms[tuple(k * x for x in beta)] = p
            k += 1
    return TruncatedDistribution(rank, ring, terms, cap, 0)


def factor_poly(ring, rank: int, e: int, gamma, k: int = 1) -> dict:
    """(1 - q^e x^gamma)^k as a sparse polynomial."""
    out = {(0,) * rank: ring.one()}
    for j in range(1, k + 1):
        c = ring.qpow(e * j, (-1) ** j * math.comb(k, j))
        out[tuple(j * x for x in gamma)] = c
    return out


# ---------------------------------------------------------------------------
# rational distributions
# ---------------------------------------------------------------------------

def _direction_sign(gamma) -> int:
    pos = any(x > 0 for x in gamma)
    neg = any(x < 0 for x in gamma)
    if pos and neg:
        raise ValueError(f"denominator direction {gamma} is not sign-definite")
    if not pos and not neg:
        raise ValueError("zero denominator direction")
    return 1 if pos else -1


def _key_from_counts(counts: dict) -> tuple:
    return tuple(sorted((f, k) for f, k in counts.items() if k))


class RationalDistribution:
    """Finite sum of ``numerator / prod_f (1 - q^{e_f} x^{gamma_f})^{k_f}`` with gamma_f > 0.

    ``parts`` maps a denominator key (sorted tuple of ``((e, gamma), k)``) to a
    numerator dict ``beta -> coefficient``.
    """

    __slots__ = ("rank", "ring", "parts")

    def __init__(self, rank: int, ring, parts: dict | None = None):
        self.rank = rank
        self.ring = ring
        self.parts = {}
        for key, num in (parts or {}).items():
            num = {b: c for b, c in num.items() if c}
            if num:
                self.parts[key] = num

    # -- constructors ------------------------------------------------------------
    @classmethod
    def zero(cls, rank: int, ring):
        return cls(rank, ring)

    @classmethod
    def polynomial(cls, rank: int, ring, terms: dict):
        return cls(rank, ring, {(): dict(terms)})

    @classmethod
    def monomial(cls, rank: int, ring, beta, coeff=None):
        return cls(rank, ring, {(): {tuple(beta): ring.one() if coeff is None else coeff}})

    @classmethod
    def one(cls, rank: int, ring):
        return cls.monomial(rank, ring, (0,) * rank)

    @classmethod
    def from_truncated(cls, f: TruncatedDistribution):
        """Lift a complete TruncatedDistribution (a Laurent polynomial)."""
        if f.cap is not None:
            raise TruncationError("only complete series can be lifted exactly")
        return cls.polynomial(f.rank, f.ring, f.terms)

    # -- linear structure ----------------------------------------------------------
    def __add__(self, other: "RationalDistribution"):
        parts = {k: dict(v) for k, v in self.parts.items()}
        for key, num in other.parts.items():
            acc = parts.setdefault(key, {})
            for b, c in num.items():
                _add_into(acc, b, c)
        return RationalDistribution(self.rank, self.ring, parts)

    def __neg__(self):
        return RationalDistribution(self.rank, self.ring,
                                    {k: {b: -c for b, c in v.items()} for k, v in self.parts.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return RationalDistribution(self.rank, self.ring,
                                    {k: {b: v * c for b, v in num.items()} for k, num in self.parts.items()})

    def mul_monomial(self, beta, c=None):
        beta = tuple(beta)
        parts = {}
        for key, num in self.parts.items():
            parts[key] = {tuple(x + y for x, y in zip(b, beta)): (v if c is None else v * c)
                          for b, v in num.items()}
        return RationalDistribution(self.rank, self.ring, parts)

    def mul_poly(self, poly: dict):
        return RationalDistribution(self.rank, self.ring,
                                    {k: poly_mul(num, poly) for k, num in self.parts.items()})

    def divide_factor(self, e: int, gamma, k: int = 1):
        """Divide by (1 - q^e x^gamma)^k, normalizing negative directions."""
        gamma = tuple(gamma)
        if _direction_sign(gamma) < 0:
            # 1/(1 - c x^-g) = -c^-1 x^g / (1 - c^-1 x^g)
            mono = {tuple(-k * x for x in gamma): self.ring.qpow(-k * e, (-1) ** k)}
            return self.mul_poly(mono).divide_factor(-e, tuple(-x for x in gamma), k)
        parts = {}
        for key, num in self.parts.items():
            counts = dict(key)
            counts[(e, gamma)] = counts.get((e, gamma), 0) + k
            nk = _key_from_counts(counts)
            acc = parts.setdefault(nk, {})
            for b, c in num.items():
                _add_into(acc, b, c)
        return RationalDistribution(self.rank, self.ring, parts)

    def multiply_factor(self, e: int, gamma, k: int = 1):
        """Multiply by (1 - q^e x^gamma)^k, cancelling against the denominator when possible."""
        gamma = tuple(gamma)
        if _direction_sign(gamma) < 0:
            # 1 - c x^-g = -c x^-g (1 - c^-1 x^g)
            mono = {tuple(-k * x for x in gamma): self.ring.qpow(k * e, (-1) ** k)}
            return self.mul_poly(mono).multiply_factor(-e, tuple(-x for x in gamma), k)
        f = (e, gamma)
        out = RationalDistribution(self.rank, self.ring)
        for key, num in self.parts.items():
            counts = dict(key)
            have = counts.get(f, 0)
            use = min(have, k)
            counts[f] = have - use
            rest = k - use
            if rest:
                num = poly_mul(num, factor_poly(self.ring, self.rank, e, gamma, rest))
            out = out + RationalDistribution(self.rank, self.ring, {_key_from_counts(counts): num})
        return out

    # -- substitution and action ---------------------------------------------------
    def reflect_vars(self, data: CartanData, i: int):
        """f(sigma_i x): x^beta -> q^{-beta(h_i)} x^{sigma_i beta}."""
        ring = self.ring
        out = RationalDistribution(self.rank, ring)
        for key, num in self.parts.items():
            newnum = {}
            for b, c in num.items():
                p = pairing(data, b, i)
                nb = reflect(data, b, i)
                _add_into(newnum, nb, c * ring.qpow(-p) if p else c)
            part = RationalDistribution(self.rank, ring, {(): newnum})
            for (e, g), k in key:
                part = part.divide_factor(e - pairing(data, g, i), reflect(data, g, i), k)
            out = out + part
        return out

    def change_vars(self, data: CartanData, word):
        """f(w x) for w = sigma_{i_1} ... sigma_{i_k}; substitutions applied for i_1 first."""
        f = self
        for i in word:
            f = f.reflect_vars(data, i)
        return f

    # -- combination, comparison, expansion -------------------------------------
    def factors(self) -> dict:
        """Least common denominator as a dict factor -> multiplicity."""
        lcm: dict = {}
        for key in self.parts:
            for f, k in key:
                lcm[f] = max(lcm.get(f, 0), k)
        return lcm

    def combined(self):
        """Return (numerator, factors) over the least common denominator."""
        lcm = self.factors()
        total: dict = {}
        for key, num in self.parts.items():
            have = dict(key)
            poly = num
            for (e, g), k in lcm.items():
                extra = k - have.get((e, g), 0)
                if extra:
                    poly = poly_mul(poly, factor_poly(self.ring, self.rank, e, g, extra))
            for b, c in poly.items():
                _add_into(total, b, c)
        return total, lcm

    def is_zero(self) -> bool:
        num, _ = self.combined()
        return not num

    def equals(self, other: "RationalDistribution") -> bool:
        return (self - other).is_zero()

    def simplify(self) -> "RationalDistribution":
        """Single fraction with every divisible denominator factor cancelled."""
        num, lcm = self.combined()
        counts = dict(lcm)
        for (e, g), k in lcm.items():
            for _ in range(k):
                q = divide_by_factor(self.ring, num, e, g)
                if q is None:
                    break
                num = q
                counts[(e, g)] -= 1
        return RationalDistribution(self.rank, self.ring, {_key_from_counts(counts): num})

    def min_weight(self, weights=None) -> int | None:
        return min((_wdeg(b, weights) for num in self.parts.values() for b in num), default=None)

    def truncate_weighted(self, weights, cap: int) -> "RationalDistribution":
        """Expand every factor of positive weight as a series and drop terms of weight > cap.

        Factors of weight zero stay in the denominator.  The result agrees with
        ``self`` on all monomials of weight <= cap (each weight-zero factor is a
        unit that preserves weight).
        """
        ring = self.ring
        out: dict = {}
        for key, num in self.parts.items():
            keep = []
            expand = []
            for (e, g), k in key:
                w = _wdeg(g, weights)
                if w < 0:
                    raise NonpositiveDegreeDirection(f"direction {g} has negative weight")
                (keep if w == 0 else expand).append(((e, g), k))
            minw = min(_wdeg(b, weights) for b in num)
            budget = cap - minw
            if budget < 0:
                continue
            series = {(0,) * self.rank: ring.one()}
            for (e, g), k in expand:
                w = _wdeg(g, weights)
                geo = {}
                c = ring.one()
                j = 0
                while j * w <= budget:
                    geo[tuple(j * x for x in g)] = c
                    c = c * ring.qpow(e)
                    j += 1
                for _ in range(k):
                    series = poly_mul(series, geo, budget, weights)
            prod = poly_mul(num, series, cap, weights)
            acc = out.setdefault(tuple(sorted(keep)), {})
            for b, c in prod.items():
                _add_into(acc, b, c)
        return RationalDistribution(self.rank, ring, out)

    def expand(self, cap: int) -> TruncatedDistribution:
        """Power series expansion exact for d(beta) <= cap (all directions must have d > 0)."""
        t = self.truncate_weighted(None, cap)
        if any(key for key in t.parts):
            raise NonpositiveDegreeDirection("a denominator factor has nonpositive degree")
        terms = t.parts.get((), {})
        lower = self.min_weight()
        return TruncatedDistribution(self.rank, self.ring, terms, cap,
                                     min(lower, cap) if lower is not None else cap)

    def agrees_with(self, other: "RationalDistribution", weights, cap: int) -> bool:
        """Equality of all coefficients of weight <= cap."""
        diff = (self - other).truncate_weighted(weights, cap)
        num, _ = diff.combined()
        return all(_wdeg(b, weights) > cap for b in num)

    def n_terms(self) -> int:
        return sum(len(v) for v in self.parts.values())

    def __repr__(self):
        return f"RationalDistribution({len(self.parts)} parts, {self.n_terms()} numerator terms)"


def divide_by_factor(ring, num: dict, e: int, gamma) -> dict | None:
    """Exact quotient num / (1 - q^e x^gamma), or None when it is not a polynomial."""
    gamma = tuple(gamma)
    j0 = next(j for j, x in enumerate(gamma) if x)
    strings: dict = {}
    for b, c in num.items():
        k = b[j0] // gamma[j0]
        rep = tuple(x - k * y for x, y in zip(b, gamma))
        strings.setdefault(rep, {})[k] = c
    c_e = ring.qpow(e)
    out = {}
    for rep, coeffs in strings.items():
        lo, hi = min(coeffs), max(coeffs)
        prev = None
        for k in range(lo, hi + 1):
            v = coeffs.get(k, ring.zero())
            if prev is not None:
                v = v + c_e * prev
            if k == hi:
                if v:
                    return None
                break
            if v:
                out[tuple(x + k * y for x, y in zip(rep, gamma))] = v
            prev = v
    return out
