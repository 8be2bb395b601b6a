"""The property suite behind ``wmds verify`` and the acceptance tests.

Each ``check_*`` function returns a dict with an ``ok`` flag plus whatever
counts or values are useful in a report.  Nothing here loosens a comparison:
symbolic identities are compared exactly, and the only floating-point
quantities are the convergence margins and the numeric Z partial sums.
"""

from __future__ import annotations

import itertools
import random
import time
from fractions import Fraction

import sympy

from wmds.action import ActionContext, other_weights
from wmds.arith import FFRing, ff_ring
from wmds.cartan import CartanData, circle_action, mu
from wmds.characters import compare_n1, denominator_multiplicities
from wmds.coeff import SymbolicRing
from wmds.hcoeff import HCoefficients
from wmds.mds import (
    ZConfig,
    convergence_bound_check,
    in_X0_approx,
    in_tits,
    in_tits_exact_rank2,
    lambda_region,
    on_hull_boundary,
    tits_cone_rank2,
    z_partial,
)
from wmds.presets import default_q0, preset
from wmds.roots import RootTable, coxeter_m, enumerate_weyl, lemma_checks
from wmds.series import RationalDistribution, TruncatedDistribution


def _box(rank: int, lo: int, hi: int, dmin: int, dmax: int):
    for beta in itertools.product(range(lo, hi + 1), repeat=rank):
        if dmin <= sum(beta) <= dmax:
            yield beta


# -- the action ------------------------------------------------------------------------------------

def check_involution_braid(data: CartanData, cap: int = 6, max_d: int = 4, lam=None) -> dict:
    """sigma_i^2 = 1 and the braid relations on monomials x^beta, d(beta) <= max_d.

    Images are compared both as exact rational functions and as expansions
    up to ``cap``.
    """
    ctx = ActionContext(data, lam, cap)
    r = data.rank
    braids = []
    for i in range(r):
        for j in range(i + 1, r):
            m = coxeter_m(data, i, j)
            if m != float("inf"):
                w1 = tuple((i, j)[k % 2] for k in range(m))
                w2 = tuple((j, i)[k % 2] for k in range(m))
                braids.append((w1, w2))
    n_inv = n_braid = 0
    bad = []
    for beta in _box(r, -1, max_d, -1, max_d):
        f = RationalDistribution.monomial(r, ctx.ring, beta)
        ft = f.expand(cap)
        for i in range(r):
            g = ctx.act(f, (i, i))
            n_inv += 1
            if not (g.equals(f) and g.expand(cap) == ft):
                bad.append({"beta": list(beta), "word": [i, i]})
        for w1, w2 in braids:
            g1, g2 = ctx.act(f, w1), ctx.act(f, w2)
            n_braid += 1
            if not (g1.equals(g2) and g1.expand(cap) == g2.expand(cap)):
                bad.append({"beta": list(beta), "word": list(w1)})
    return {"ok": not bad, "involutions": n_inv, "braids": n_braid, "failures": bad}


def check_cocycle(data: CartanData, L: int = 6, lam=None) -> dict:
    """j(w w', x) = j(w, w'x) j(w', x) for l(w) + l(w') <= L, and Delta(x)/Delta(wx) = j(w, x)."""
    ctx = ActionContext(data, lam, max(L, 1))
    ws = list(enumerate_weyl(data, L))
    pairs = [(a, b) for a in ws for b in ws if len(a) + len(b) <= L]
    bad_c = [(list(a), list(b)) for a, b in pairs if not ctx.cocycle_holds(a, b)]
    bad_d = [list(w) for w in ws if not ctx.delta_ratio_holds(w)]
    return {"ok": not bad_c and not bad_d, "pairs": len(pairs), "elements": len(ws),
            "cocycle_failures": bad_c, "delta_ratio_failures": bad_d}


def check_invariance(data: CartanData, cap: int = 6, lam=None) -> dict:
    """h |_lambda sigma_i = h for every i, in the sigma_i-adapted regime.

    Also checks that the adapted h agrees with the total-degree h below the cap
    and that h and N lie in Q_+ with constant term 1.
    """
    ctx = ActionContext(data, lam, cap)
    r = data.rank
    h = ctx.h_char()
    N = ctx.n_series()
    zero = (0,) * r
    one = ctx.ring.one()
    out = {"generators": {}, "consistent": {}}
    ok = h.coefficient(zero) == one and N.coefficient(zero) == one and h.in_q_plus() and N.in_q_plus()
    for i in range(r):
        wts = other_weights(r, i)
        ha = ctx.h_adapted(i)
        inv = ctx.act_reflection(ha, i).agrees_with(ha, wts, cap)
        cons = _agree_total(ha, h, cap)
        out["generators"][i] = inv
        out["consistent"][i] = cons
        ok = ok and inv and cons
    out["ok"] = ok
    return out


def _agree_total(F: RationalDistribution, h: TruncatedDistribution, cap: int) -> bool:
    t = F.expand(cap)
    return t == h


def check_local_fe(data: CartanData, max_d: int = 3, cap: int = 6, lam=None) -> dict:
    """f_{beta,i}(sigma_i x) = (q x_i)^e f_{beta,i}(x) for beta in Q_+, d(beta) <= max_d."""
    ctx = ActionContext(data, lam, cap)
    r = data.rank
    counts = {"m_divides_mu": 0, "m_not_divides_mu": 0}
    bad = []
    nonzero = 0
    for beta in _box(r, 0, max_d, 0, max_d):
        for i in range(r):
            branch = "m_divides_mu" if mu(data, ctx.lam, beta, i) % ctx.m[i] == 0 else "m_not_divides_mu"
            counts[branch] += 1
            f = ctx.f_rational(beta, i)
            nonzero += not f.is_zero()
            if not ctx.fe_holds(f, beta, i):
                bad.append({"beta": list(beta), "i": i})
    return {"ok": not bad, "branches": counts, "nonzero": nonzero, "failures": bad}


def twisted_moduli(data: CartanData, R: FFRing, prime) -> list:
    """m-tuples used for the twisted checks: trivial, a pure prime power, and a mixed one."""
    r = data.rank
    others = [p for p in R.primes(1) if p != tuple(prime)]
    u, v = others[0], others[1]
    ones = ((1,),) * r
    pure = (tuple(prime),) + ((1,),) * (r - 1)
    mixed = (R.mul(prime, u),) + tuple(v if k % 2 else R.mul(u, v) for k in range(r - 1))
    return [ones, pure, mixed]


def check_twisted_fe(data: CartanData, q0: int | None = None, max_d: int = 3, cap: int = 6) -> dict:
    """The twisted transformation law and its bracket relations for every beta, i and test modulus."""
    q0 = q0 or default_q0(data.n)
    H = HCoefficients(data, q0, cap)
    prime = (0, 1)
    r = data.rank
    counts = {"m_divides_mu": 0, "m_not_divides_mu": 0}
    bad = []
    for m in twisted_moduli(data, H.R, prime):
        lam, _ = H.split_m(prime, m)
        ctx = H.context(lam)
        for beta in _box(r, 0, max_d, 0, max_d):
            for i in range(r):
                branch = "m_divides_mu" if mu(data, lam, beta, i) % ctx.m[i] == 0 else "m_not_divides_mu"
                counts[branch] += 1
                rep = H.f_twisted_fe_check(beta, i, prime, m)
                if not (rep["fe"] and rep["bracket_N"] and rep["bracket_f"]):
                    bad.append({"beta": list(beta), "i": i, "m": [list(x) for x in m], **rep})
    return {"ok": not bad, "q0": q0, "branches": counts, "failures": bad}


# -- rank one ----------------------------------------------------------------------------------------

def check_rank_one(cap: int = 8, q0: int = 5) -> dict:
    """N(x; 0) = 1 + gamma(1) q x for A = (2), n = 2, b = 1, and H(pi; 1) = g(1, pi; 1)."""
    data = preset("rank1-n2")
    ctx = ActionContext(data, cap=cap)
    N = ctx.n_series()
    ring = SymbolicRing(2)
    expected = TruncatedDistribution(1, ring, {(0,): ring.one(), (1,): ring.gamma(1) * ring.qpow(1)}, cap)
    closed = N == expected
    H = HCoefficients(data, q0, cap)
    R = H.R
    gauss_ok = True
    for p in R.primes(1):
        direct = R.gauss_sum((1,), p, 1, direct=True)
        gauss_ok &= H.h_prime_power(p, (1,), (0,)) == direct
        gauss_ok &= all(not H.h_prime_power(p, (k,), (0,)) for k in range(2, cap + 1))
    return {"ok": closed and gauss_ok, "closed_form": closed, "gauss": gauss_ok,
            "N": {str(k[0]): str(v) for k, v in N}}


# -- arithmetic -----------------------------------------------------------------------------------------

def check_arith() -> dict:
    out = {}
    # |g(1, pi; t)|^2 = |pi| for n not dividing t
    gauss = True
    for q0 in (5, 13):
        R = ff_ring(q0, 2)
        for d in (1, 2):
            for p in R.primes(d):
                g = R.gauss_sum((1,), p, 1)
                gauss &= g.abs2() == R.norm(p)
    out["gauss_abs"] = gauss
    # reciprocity and multiplicativity over F_5, degrees <= 3
    R = ff_ring(5, 2)
    monics = [f for d in range(4) for f in R.monics(d)]
    recip = True
    for f in monics:
        for g in monics:
            if R.deg(R.gcd(f, g)) == 0:
                recip &= R.symbol_exponent(f, g) == R.symbol_exponent(g, f)
    mult = True
    small = [f for d in range(3) for f in R.monics(d)]
    for g in monics:
        for f1 in small:
            if R.deg(R.gcd(f1, g)):
                continue
            e1 = R.symbol_exponent(f1, g)
            for f2 in small:
                if R.deg(R.gcd(f2, g)):
                    continue
                mult &= R.symbol_exponent(R.mul(f1, f2), g) == (e1 + R.symbol_exponent(f2, g)) % 2
    for f in monics:
        for g in small:
            for h in small:
                gh = R.mul(g, h)
                if R.deg(R.gcd(f, gh)) == 0:
                    mult &= R.symbol_exponent(f, gh) == (R.symbol_exponent(f, g) + R.symbol_exponent(f, h)) % 2
    out["reciprocity"] = recip
    out["multiplicativity"] = mult
    # gamma(1)^2 = 1 / q0
    pair = True
    for p in R.primes(1):
        gam = R.gauss_sum((1,), p, 1) / 5
        pair &= gam * gam == Fraction(1, 5)
    out["gamma_pair"] = pair
    out["ok"] = gauss and recip and mult and pair
    return out


def check_gauss(q0: int, n: int, max_deg: int = 2) -> dict:
    """|g(1, pi; t)|^2 = |pi| and the fast Gauss sum equals the direct one, for deg pi <= max_deg."""
    R = ff_ring(q0, n)
    ok = True
    count = 0
    for d in range(1, max_deg + 1):
        for p in R.primes(d):
            for t in range(1, n):
                g = R.gauss_sum((1,), p, t)
                ok &= g.abs2() == R.norm(p) and g == R.gauss_sum((1,), p, t, direct=True)
                count += 1
    return {"ok": ok, "sums": count}


def random_prime_tuple(R: FFRing, rank: int, rng: random.Random, max_primes: int = 3,
                       max_deg: int = 2) -> tuple:
    primes = [p for d in range(1, max_deg + 1) for p in R.primes(d)]
    comps = [(1,)] * rank
    for _ in range(rng.randint(0, max_primes)):
        i = rng.randrange(rank)
        comps[i] = R.mul(comps[i], rng.choice(primes))
    return tuple(comps)


def check_h_global(data: CartanData, q0: int | None = None, samples: int = 50, orders: int = 3,
                   seed: int = 20240601) -> dict:
    """H(c; m) is independent of the order in which primes are split off."""
    q0 = q0 or default_q0(data.n)
    H = HCoefficients(data, q0, cap=6)
    R = H.R
    rng = random.Random(seed)
    bad = []
    nontrivial = 0
    for _ in range(samples):
        c = random_prime_tuple(R, data.rank, rng)
        m = random_prime_tuple(R, data.rank, rng, max_primes=2)
        primes = sorted(set(H.decompose(c)) | set(H.decompose(m)))
        base = H.h_global(c, m)
        vals = []
        for _k in range(orders):
            order = primes[:]
            rng.shuffle(order)
            vals.append(H.h_global(c, m, order))
        nontrivial += len(H.decompose(c)) > 1
        if any(v != base for v in vals):
            bad.append({"c": [list(x) for x in c], "m": [list(x) for x in m]})
    # consistency of the m-twisting: H(c; m m') = [m'/c]^{-B} H(c; m)
    cons = True
    for _ in range(samples):
        c = random_prime_tuple(R, data.rank, rng)
        m = random_prime_tuple(R, data.rank, rng, max_primes=1)
        mp = random_prime_tuple(R, data.rank, rng, max_primes=2)
        if any(R.deg(R.gcd(x, y)) for x in mp for y in c):
            continue
        if any(R.deg(R.gcd(x, y)) for x in mp for y in m):
            continue
        mm = tuple(R.mul(x, y) for x, y in zip(m, mp))
        cons &= H.h_global(c, mm) == R.bracket(data.B, mp, c, -1) * H.h_global(c, m)
    return {"ok": not bad and cons, "samples": samples, "multi_prime_samples": nontrivial,
            "order_failures": bad, "m_twisting": cons}


# -- global series ------------------------------------------------------------------------------------------

def check_z_shells(data: CartanData, q0: int | None = None, N_values=(0, 1, 2, 3, 4), s=None,
                   rel_tol: float = 1e-9) -> dict:
    """Z(N) + shells in (N, N'] = Z(N') for all pairs in N_values."""
    q0 = q0 or default_q0(data.n)
    s = s or (3,) * data.rank
    top = max(N_values)
    H = HCoefficients(data, q0, cap=max(1, data.rank * top))
    full = z_partial(ZConfig(data, q0, top, s), H)
    res = {N: z_partial(ZConfig(data, q0, N, s), H) for N in N_values}
    ok = True
    for N, zN in res.items():
        for N2, z2 in res.items():
            if N2 <= N:
                continue
            ext = zN.value + sum(full.shells[N + 1:N2 + 1])
            ok &= abs(ext - z2.value) <= rel_tol * max(1.0, abs(z2.value))
        ok &= all(abs(a - b) <= rel_tol * max(1.0, abs(b)) for a, b in zip(zN.shells, full.shells))
    return {"ok": ok, "values": {N: [z.value.real, z.value.imag] for N, z in res.items()}}


def check_rank_one_z(q0: int = 5, s=3.0, rel_tol: float = 1e-9) -> dict:
    """N_max = 1 partial sum against 1 + q0^-s sum_{deg pi = 1} g(1, pi; 1)."""
    data = preset("rank1-n2")
    R = ff_ring(q0, 2)
    direct = 1 + q0 ** (-s) * sum(complex(R.gauss_sum((1,), p, 1, direct=True)) for p in R.primes(1))
    z = z_partial(ZConfig(data, q0, 1, (s,))).value
    return {"ok": abs(z - direct) <= rel_tol * abs(direct), "z": [z.real, z.imag],
            "direct": [direct.real, direct.imag]}


# -- n = 1 and multiplicities ----------------------------------------------------------------------------------

N1_CASES = {
    "rank1": ([[2]], [(0,), (1,), (2,), (3,)]),
    "a2": ([[2, -1], [-1, 2]], [(0, 0), (1, 0), (1, 1)]),
    "affine-a1": ([[2, -2], [-2, 2]], [(0, 0), (1, 0)]),
}


def check_n1(cap: int = 6, cases=None) -> dict:
    cases = cases or N1_CASES
    out = {}
    ok = True
    for name, (A, lams) in cases.items():
        data = CartanData.from_matrix(A, 1)
        for lam in lams:
            rep = compare_n1(ActionContext(data, lam, cap))
            out[f"{name}:{list(lam)}"] = {"ok": rep["ok"], "checked": rep["checked"]}
            ok &= rep["ok"]
    out["ok"] = ok
    return out


def check_multiplicities(data: CartanData, depth: int = 8) -> dict:
    """Peterson multiplicities against the denominator identity."""
    table = RootTable(data, depth)
    pet = {a: table.roots[a].mult for a in table}
    den = denominator_multiplicities(data, depth)
    return {"ok": pet == den, "roots": len(pet)}


# -- convergence and regions --------------------------------------------------------------------------------

def check_convergence(data: CartanData, q0: int = 5, L: int = 5, s=None) -> dict:
    s = s or (3,) * data.rank
    rep = convergence_bound_check(ActionContext(data, cap=6), s, L, q0)
    return {"ok": rep["ok"], "min_margin": rep["min_margin"], "elements": len(rep["rows"])}


HYPERBOLIC_ORBIT = {
    (0,): (0, 5), (0, 1): (-3, 12), (0, 1, 0): (-10, 30),
    (1,): (5, 0), (1, 0): (12, -3), (1, 0, 1): (30, -10),
}


def check_regions_hyperbolic(max_L: int = 12) -> dict:
    data = preset("hyperbolic-n2")
    orbit = all(circle_action(data, w, (2, 2)) == p for w, p in HYPERBOLIC_ORBIT.items())
    pt = (Fraction(3, 2), Fraction(3, 2))
    tits = in_tits_exact_rank2(data, pt) and in_tits(data, pt)[0]
    r5 = sympy.sqrt(5)
    ineqs = tits_cone_rank2(data)
    stated = [(3 + r5, 2, 5 + r5), (3 - r5, 2, 5 - r5)]
    ineq_match = all(sympy.simplify(a - a2) == 0 and sympy.simplify(b - b2) == 0 and sympy.simplify(c - c2) == 0
                     for (a, b, c), (a2, b2, c2) in zip(ineqs, stated))
    x0 = {L: in_X0_approx(data, pt, L) for L in range(max_L + 1)}
    boundary = all(on_hull_boundary(data, p, 4) for p in HYPERBOLIC_ORBIT.values())
    lam1 = lambda_region(data, 0) == [(0, 1, 2), (3, 1, 5), (3, 2, 10)]
    lam2 = lambda_region(data, 1) == [(1, 0, 2), (1, 3, 5), (2, 3, 10)]
    ok = orbit and tits and ineq_match and not any(x0.values()) and boundary and lam1 and lam2
    return {"ok": ok, "orbit": orbit, "in_tits": tits, "tits_inequalities": ineq_match,
            "in_X0_any_L": any(x0.values()), "hull_boundary": boundary, "lambda_1": lam1, "lambda_2": lam2}


def check_lemma(data: CartanData) -> dict:
    rep = lemma_checks(data)
    return {"ok": bool(rep["ok"])}


# -- driver ----------------------------------------------------------------------------------------------------

def run_verify(name, cap: int = 6) -> dict:
    """Run the property suite on a preset name or a CartanData."""
    data = preset(name) if isinstance(name, str) else name
    name = data.name
    q0 = default_q0(data.n)
    checks = {
        "lemma": lambda: check_lemma(data),
        "involution_braid": lambda: check_involution_braid(data, cap),
        "cocycle": lambda: check_cocycle(data, 6),
        "invariance": lambda: check_invariance(data, cap),
        "local_fe": lambda: check_local_fe(data, 3, cap),
        "twisted_fe": lambda: check_twisted_fe(data, q0, 3, cap),
        "twisted_multiplicativity": lambda: check_h_global(data, q0, samples=20),
        "gauss_relations": lambda: check_gauss(q0, data.n),
        "n1_oracle": lambda: check_n1(cap),
        "convergence_bound": lambda: check_convergence(data, q0, 5),
        "multiplicities": lambda: check_multiplicities(data, 6),
    }
    if data.rank == 1:
        checks["rank_one_closed_form"] = lambda: check_rank_one(8, q0)
        checks["rank_one_z"] = lambda: check_rank_one_z(q0)
    if [list(row) for row in data.A] == [[2, -3], [-3, 2]]:
        checks["regions"] = check_regions_hyperbolic
    report = {}
    for key, fn in checks.items():
        t = time.perf_counter()
        res = fn()
        report[key] = {"ok": bool(res["ok"]), "seconds": round(time.perf_counter() - t, 3)}
    report["ok"] = all(v["ok"] for v in report.values())
    return report
