"""Independent oracles: Freudenthal multiplicities and the denominator identity.

Weights of V(lambda) are written ``lambda - beta`` with ``beta`` in Q_+.  The
Freudenthal recursion

    (|lambda + rho|^2 - |mu + rho|^2) m_mu
        = 2 sum_{alpha > 0} mult(alpha) sum_{k >= 1} (mu + k alpha, alpha) m_{mu + k alpha}

only involves pairings of weights with roots, and with ``mu = lambda - beta``

    |lambda + rho|^2 - |mu + rho|^2 = 2 (lambda + rho, beta) - (beta, beta),
    (lambda, alpha_j) = l_j b_j / 2,

so no coordinates for lambda beyond its labels are needed.  This works for
singular Cartan matrices as well.

When n = 1, the substitution ``q x^{alpha_i} -> z^{-alpha_i}`` turns
``z^lambda h(x; lambda)`` into the Weyl-Kac character; :func:`compare_n1` checks
this coefficient by coefficient.
"""

from __future__ import annotations

from fractions import Fraction

from wmds.action import ActionContext
from wmds.cartan import CartanData, bilinear
from wmds.errors import InputError, NonIntegerMultiplicity
from wmds.roots import RootTable, _q_plus, enumerate_weyl, inverse_word
from wmds.cartan import dot_action
from wmds.series import poly_mul


def _lam_pair(data: CartanData, lam, beta) -> Fraction:
    """(lambda, beta) for lambda = sum l_j omega_j."""
    b = data.b
    return sum((Fraction(l * bj, 2) * k for l, bj, k in zip(lam, b, beta)), Fraction(0))


class CharacterTable:
    """Weight multiplicities m_{lambda - beta} for d(beta) <= cap."""

    def __init__(self, lam, cap: int, mults: dict):
        self.lam = tuple(lam)
        self.cap = cap
        self.mults = mults

    def __getitem__(self, beta) -> int:
        return self.mults.get(tuple(beta), 0)

    def weights(self) -> list:
        return sorted((b for b, m in self.mults.items() if m), key=lambda b: (sum(b), b))

    def rows(self):
        for b in self.weights():
            yield b, self.mults[b]


def freudenthal(data: CartanData, lam, cap: int, root_mults: dict | None = None) -> CharacterTable:
    """Weight multiplicities of V(lambda) down to depth cap.

    ``root_mults`` maps positive roots to multiplicities; by default the root
    table (Peterson recursion) is used.

    Raises
    ------
    NonIntegerMultiplicity
        If the recursion produces a non-integral or negative value.
    """
    lam = tuple(lam)
    r = data.rank
    if len(lam) != r or any(l < 0 for l in lam):
        raise InputError("lambda must be dominant")
    if root_mults is None:
        table = RootTable(data, max(cap, 1))
        root_mults = {a: table.roots[a].mult for a in table}
    roots = [(a, k) for a, k in root_mults.items() if 0 < sum(a) <= cap and k]
    rho_b = [Fraction(bj, 2) for bj in data.b]
    out = {(0,) * r: 1}
    for d in range(1, cap + 1):
        for beta in _q_plus(r, d):
            lhs = 2 * sum((Fraction(l) * rb * k + rb * k for l, rb, k in zip(lam, rho_b, beta)), Fraction(0)) \
                - bilinear(data, beta, beta)
            rhs = Fraction(0)
            for a, mult in roots:
                lam_a = _lam_pair(data, lam, a)
                aa = bilinear(data, a, a)
                ba = bilinear(data, beta, a)
                k = 1
                while True:
                    prev = tuple(x - k * y for x, y in zip(beta, a))
                    if any(x < 0 for x in prev):
                        break
                    m_prev = out.get(prev, 0)
                    if m_prev:
                        # (mu + k alpha, alpha) with mu = lambda - beta
                        rhs += mult * (lam_a - ba + k * aa) * m_prev
                    k += 1
            rhs *= 2
            if lhs == 0:
                if rhs != 0:
                    raise NonIntegerMultiplicity(f"degenerate Freudenthal step at {beta}")
                continue
            m = rhs / lhs
            if m.denominator != 1 or m < 0:
                raise NonIntegerMultiplicity(f"multiplicity {m} at offset {beta}")
            if m:
                out[beta] = int(m)
    return CharacterTable(lam, cap, out)


def compare_n1(ctx: ActionContext, table: CharacterTable | None = None) -> dict:
    """Check that q x^{alpha_i} -> z^{-alpha_i} sends z^lambda h(x; lambda) to ch V(lambda)."""
    if ctx.data.n != 1:
        raise InputError("compare_n1 needs n = 1")
    table = table or freudenthal(ctx.data, ctx.lam, ctx.cap)
    h = ctx.h_char()
    mismatches = []
    seen = set()
    for beta, c in h:
        seen.add(beta)
        # x^beta = q^{-d(beta)} (q x)^beta -> q^{-d(beta)} z^{-beta}
        val = c.mul_qpow(-sum(beta))
        const = val.terms.get((0, ()), 0) if len(val.terms) <= 1 else None
        if const is None or (val.terms and (0, ()) not in val.terms) or const != table[beta]:
            mismatches.append({"beta": list(beta), "h": str(c), "expected": table[beta]})
    for beta, m in table.rows():
        if beta not in seen and sum(beta) <= ctx.cap:
            mismatches.append({"beta": list(beta), "h": "0", "expected": m})
    return {
        "lambda": list(ctx.lam),
        "cap": ctx.cap,
        "checked": len(seen | set(table.weights())),
        "mismatches": mismatches,
        "ok": not mismatches,
    }


def denominator_multiplicities(data: CartanData, depth: int) -> dict:
    """Root multiplicities read off from the denominator identity

        prod_{alpha > 0} (1 - x^alpha)^{mult(alpha)} = sum_w sgn(w) x^{w^-1 . 0}

    (here ``x^alpha = e^{-alpha}``), solved depth by depth.  Uses only the
    Weyl group, so it is independent of the Peterson recursion.
    """
    r = data.rank
    zero = (0,) * r
    lam = zero
    alt: dict = {}
    for w in enumerate_weyl(data, depth):
        b = dot_action(data, lam, inverse_word(w), zero)
        if sum(b) <= depth:
            alt[b] = alt.get(b, 0) + (-1) ** len(w)
    prod = {zero: 1}
    mults = {}
    for d in range(1, depth + 1):
        level = {}
        for beta in _q_plus(r, d):
            m = prod.get(beta, 0) - alt.get(beta, 0)
            if m < 0:
                raise NonIntegerMultiplicity(f"negative multiplicity at {beta}")
            if m:
                level[beta] = m
        for beta, m in level.items():
            fac = {zero: 1}
            for _ in range(m):
                fac = poly_mul(fac, {zero: 1, beta: -1}, depth)
            prod = poly_mul(prod, fac, depth)
        mults.update(level)
    return mults
