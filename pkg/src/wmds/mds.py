"""Partial sums of the global series, the factor G_m, and region geometry.

Partial sums
    ``Z(s; m) = sum_c H(c; m) |c|_Q^{-s} |m|_P^{s}`` over tuples of monic
    polynomials with ``deg c_i <= N_max`` (Psi is the constant 1).  The sum is
    accumulated exactly per degree vector and evaluated numerically at the end.

Regions (real points ``s = (s_1, ..., s_r)``, ``s_i = alpha_i(s)``)
    * ``L``: the open box ``s_i > tau``, ``tau = max(2, 1 + log2 r)``;
    * the shifted Tits cone: union of ``w o F`` with ``F = {s_i >= 1}``;
    * an inner approximation of the convex hull of ``w o L`` over ``l(w) <= L``,
      tested by exact rational linear programming.

The circle action is affine: ``sigma_i o s`` sends ``s_j`` to ``s_j - a_ij (s_i - 1)``,
with linear part ``s_j -> s_j - a_ij s_i``.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import sympy
from sympy.solvers.simplex import InfeasibleLPError, UnboundedLPError, linprog

from wmds.action import ActionContext
from wmds.arith import poly_str
from wmds.cartan import CartanData, circle_action, dot_action
from wmds.coeff import to_complex
from wmds.errors import InputError, MissingOmegaExponents, PoleEncountered, RegionViolation
from wmds.hcoeff import HCoefficients
from wmds.roots import enumerate_weyl, inverse_word


# -- the factor G_m -------------------------------------------------------------------------

def _is_nonpositive_integer(z: complex) -> bool:
    return abs(z.imag) < 1e-12 and abs(z.real - round(z.real)) < 1e-12 and round(z.real) <= 0


def g_m_factor(s: complex, m: int, field_degree: int = 2) -> complex:
    """((2 pi)^{-(m-1)(s-1)} Gamma(m s - m) / Gamma(s - 1))^{field_degree / 2}."""
    if m < 1:
        raise InputError("m must be a positive integer")
    if field_degree < 2 or field_degree % 2:
        raise InputError("field_degree must be a positive even integer")
    if m == 1:
        return complex(1)
    s = complex(s)
    a, b = m * s - m, s - 1
    if _is_nonpositive_integer(a) or _is_nonpositive_integer(b):
        raise PoleEncountered(f"Gamma quotient has a pole or zero at s = {s}")
    base = (2 * math.pi) ** (-(m - 1) * (s - 1)) * complex(mpmath.gamma(a) / mpmath.gamma(b))
    return base ** (field_degree // 2)


# -- partial sums ---------------------------------------------------------------------------

@dataclass
class ZConfig:
    """Input of :func:`z_partial`.

    ``m`` is an r-tuple of monic polynomials (ascending coefficient tuples),
    ``s`` an r-tuple of complex numbers; ``omega`` optionally gives the values
    omega_i(s) needed for ``|m|_P^s``.
    """

    data: CartanData
    q0: int
    N_max: int
    s: tuple
    m: tuple | None = None
    omega: tuple | None = None
    psi: str = "one"
    cap: int | None = None

    def __post_init__(self):
        r = self.data.rank
        if self.N_max < 0:
            raise InputError("N_max must be >= 0")
        if self.psi != "one":
            raise InputError("only the constant Psi = 1 is supported")
        if len(self.s) != r:
            raise InputError(f"s must have {r} entries")
        if self.m is None:
            self.m = ((1,),) * r
        self.m = tuple(tuple(x) for x in self.m)
        if len(self.m) != r:
            raise InputError(f"m must have {r} entries")


@dataclass
class ZResult:
    value: complex
    shells: list
    coefficients: dict = field(repr=False)
    m_factor: complex = 1


def m_factor(cfg: ZConfig) -> complex:
    """|m|_P^s = prod |m_i|^{omega_i(s)}."""
    degs = [len(mi) - 1 for mi in cfg.m]
    if not any(degs):
        return complex(1)
    omega = cfg.omega
    if omega is None:
        A = sympy.Matrix(cfg.data.A)
        if A.det() == 0:
            raise MissingOmegaExponents("A is singular: omega_i(s) must be supplied for m != 1")
        sol = A.T.inv() * sympy.Matrix([sympy.nsimplify(x) if isinstance(x, (int, Fraction)) else x
                                        for x in cfg.s])
        omega = [complex(sympy.N(x)) for x in sol]
    return complex(math.prod(cmath.exp(d * math.log(cfg.q0) * complex(w)) for d, w in zip(degs, omega)))


def h_table_for(cfg: ZConfig) -> HCoefficients:
    cap = cfg.cap if cfg.cap is not None else max(1, cfg.data.rank * cfg.N_max)
    return HCoefficients(cfg.data, cfg.q0, cap)


def z_coefficients(cfg: ZConfig, H: HCoefficients | None = None) -> dict:
    """Degree vector D -> exact sum of H(c; m) over monic tuples with deg c_i = D_i."""
    H = H or h_table_for(cfg)
    R = H.R
    monics = {d: list(R.monics(d)) for d in range(cfg.N_max + 1)}
    out = {}
    for D in itertools.product(range(cfg.N_max + 1), repeat=cfg.data.rank):
        tot = R.field.zero()
        for c in itertools.product(*(monics[d] for d in D)):
            tot = tot + H.h_global(c, cfg.m)
        out[D] = tot
    return out


def z_partial(cfg: ZConfig, H: HCoefficients | None = None) -> ZResult:
    coeffs = z_coefficients(cfg, H)
    mf = m_factor(cfg)
    shells = [0j] * (cfg.N_max + 1)
    logq = math.log(cfg.q0)
    for D, a in coeffs.items():
        if not a:
            continue
        weight = cmath.exp(-logq * sum(d * complex(si) for d, si in zip(D, cfg.s)))
        shells[max(D, default=0)] += complex(a) * weight * mf
    return ZResult(sum(shells), shells, coeffs, mf)


# -- regions ----------------------------------------------------------------------------------

def threshold(r: int) -> float:
    return max(2.0, 1 + math.log2(r))


def rational_threshold(r: int) -> Fraction:
    """A rational tau' >= tau (equal when r <= 4 is a power of two or r <= 2)."""
    if r <= 2:
        return Fraction(2)
    if r & (r - 1) == 0:
        return Fraction(1 + r.bit_length() - 1)
    return Fraction(math.ceil((1 + math.log2(r)) * 1024) + 1, 1024)


def _exceeds(x, r: int) -> bool:
    """x > max(2, 1 + log2 r), exactly for rational x."""
    x = Fraction(x)
    if x <= 2:
        return False
    if r <= 2:
        return True
    # x - 1 > log2 r  <=>  2^(x-1) > r
    a = x - 1
    return 2 ** a.numerator > r ** a.denominator


def in_L(s) -> bool:
    return all(_exceeds(x, len(s)) for x in s)


def linear_part(data: CartanData, word, v) -> tuple:
    """Linear part of the circle action, word applied right to left."""
    v = [Fraction(x) for x in v]
    for i in reversed(tuple(word)):
        si = v[i]
        v = [v[j] - data.A[i][j] * si if j != i else -si for j in range(len(v))]
    return tuple(v)


def in_tits(data: CartanData, s, L: int = 50) -> tuple:
    """Search for w with l(w) <= L and w^-1 o s in F = {s_i >= 1}.

    Returns (found, word of w).  Sound for any L; complete as L grows.
    """
    s = tuple(Fraction(x) for x in s)
    word = []
    for _ in range(L + 1):
        bad = [i for i, x in enumerate(s) if x < 1]
        if not bad:
            return True, tuple(word)
        i = bad[0]
        s = circle_action(data, (i,), s)
        word.append(i)
    return False, ()


@dataclass
class HullData:
    vertices: list
    rays: list


def hull_generators(data: CartanData, L: int, tau=None) -> HullData:
    """Vertices w o (tau, ..., tau) and rays w(e_j) for l(w) <= L."""
    r = data.rank
    tau = rational_threshold(r) if tau is None else Fraction(tau)
    verts, rays = [], []
    for w in enumerate_weyl(data, L):
        p = circle_action(data, w, (tau,) * r)
        if p not in verts:
            verts.append(p)
        for j in range(r):
            e = [0] * r
            e[j] = 1
            d = linear_part(data, w, e)
            g = math.gcd(*[abs(x.numerator) for x in d]) if any(d) else 1
            lcm = math.lcm(*[x.denominator for x in d])
            d = tuple(x * lcm / g for x in d)
            if d not in rays:
                rays.append(d)
    return HullData(verts, rays)


def _max_step(hull: HullData, s, v) -> Fraction | None:
    """max t <= 1 with s + t v in conv(vertices) + cone(rays); None if no t."""
    r = len(s)
    nV, nR = len(hull.vertices), len(hull.rays)
    # variables: lambda (nV), mu (nR), t = tp - tn, all nonnegative
    A_eq, b_eq = [], []
    for k in range(r):
        row = [sympy.Rational(p[k]) for p in hull.vertices] + [sympy.Rational(d[k]) for d in hull.rays]
        row += [-sympy.Rational(v[k]), sympy.Rational(v[k])]
        A_eq.append(row)
        b_eq.append(sympy.Rational(s[k]))
    A_eq.append([1] * nV + [0] * nR + [0, 0])
    b_eq.append(1)
    A_ub = [[0] * (nV + nR) + [1, -1]]
    c = [0] * (nV + nR) + [-1, 1]
    try:
        val, _ = linprog(sympy.Matrix([c]), sympy.Matrix(A_ub), sympy.Matrix([1]),
                         sympy.Matrix(A_eq), sympy.Matrix(b_eq))
    except InfeasibleLPError:
        return None
    except UnboundedLPError:  # pragma: no cover - t is bounded above
        return Fraction(1)
    num, den = sympy.fraction(sympy.Rational(-val))
    return Fraction(int(num), int(den))


def _directions(r: int) -> list:
    out = []
    for j in range(r):
        e = [0] * r
        e[j] = 1
        out.append(tuple(e))
    out.append(tuple([-1] * r))
    return out


def in_closed_hull(hull: HullData, s) -> bool:
    t = _max_step(hull, s, tuple([0] * len(s)))
    return t is not None


def in_X0_approx(data: CartanData, s, L: int, hull: HullData | None = None) -> bool:
    """s in the interior of conv{w o (tau..tau)} + cone{w(e_j)} over l(w) <= L.

    The interior test asks, for r+1 directions that positively span R^r, for a
    positive step staying in the polyhedron.
    """
    s = tuple(Fraction(x) for x in s)
    hull = hull or hull_generators(data, L)
    for v in _directions(len(s)):
        t = _max_step(hull, s, v)
        if t is None or t <= 0:
            return False
    return True


def on_hull_boundary(data: CartanData, s, L: int) -> bool:
    hull = hull_generators(data, L)
    return in_closed_hull(hull, s) and not in_X0_approx(data, s, L, hull)


def facets_2d(hull: HullData) -> list:
    """Facet inequalities (a, b, c) meaning a x + b y >= c of a planar polyhedron.

    Coefficients are primitive integers.  Candidate lines pass through two
    vertices or through a vertex in a ray direction; a candidate is a facet
    when every generator lies on its nonnegative side.
    """
    V, Rs = hull.vertices, hull.rays
    cands = set()
    for i, p in enumerate(V):
        for p2 in V[i + 1:]:
            cands.add(_line(p, (p2[0] - p[0], p2[1] - p[1])))
        for d in Rs:
            cands.add(_line(p, d))
    out = []
    for line in cands:
        if line is None:
            continue
        for sgn in (1, -1):
            a, b, c = (sgn * x for x in line)
            if all(a * p[0] + b * p[1] >= c for p in V) and all(a * d[0] + b * d[1] >= 0 for d in Rs):
                out.append((a, b, c))
    return sorted(set(out))


def _line(p, d):
    a, b = -d[1], d[0]
    if a == 0 and b == 0:
        return None
    c = a * p[0] + b * p[1]
    den = math.lcm(Fraction(a).denominator, Fraction(b).denominator, Fraction(c).denominator)
    a, b, c = (int(Fraction(x) * den) for x in (a, b, c))
    g = math.gcd(a, b, c)
    return (a // g, b // g, c // g)


def lambda_region(data: CartanData, i: int, tau=None) -> list:
    """Facets of the hull of L and sigma_i o L (the regions Lambda_i), rank two only."""
    if data.rank != 2:
        raise InputError("lambda_region is implemented for rank two")
    r = data.rank
    tau = rational_threshold(r) if tau is None else Fraction(tau)
    verts, rays = [], []
    for w in ((), (i,)):
        verts.append(circle_action(data, w, (tau,) * r))
        for j in range(r):
            e = [0] * r
            e[j] = 1
            rays.append(linear_part(data, w, e))
    return facets_2d(HullData(verts, rays))


# -- the Tits cone in rank two ------------------------------------------------------------------

def tits_cone_rank2(data: CartanData) -> list:
    """Exact inequalities a x + b y > c describing the shifted Tits cone of an
    indefinite rank-two matrix (a_12 a_21 > 4).

    The boundary rays are the eigenvectors of the linear part of sigma_1 sigma_2
    with positive eigenvalues; the cone is the open sector between them that
    contains the fundamental chamber.  Coefficients are sympy numbers.
    """
    A = data.A
    if data.rank != 2 or A[0][1] * A[1][0] <= 4:
        raise InputError("tits_cone_rank2 needs a rank-two matrix with a12 a21 > 4")
    cols = [linear_part(data, (0, 1), e) for e in ((1, 0), (0, 1))]
    M = sympy.Matrix([[cols[0][0], cols[1][0]], [cols[0][1], cols[1][1]]])
    ineqs = []
    inside = sympy.Matrix([1, 1])
    for lam, _mult, vecs in M.eigenvects():
        v = vecs[0]
        # normal to v, oriented so the chamber direction (1,1) is on the positive side
        nrm = sympy.Matrix([-v[1], v[0]])
        if sympy.simplify((nrm.T * inside)[0]) < 0:
            nrm = -nrm
        # scale so that the y coefficient is 2 when possible
        if nrm[1] != 0:
            nrm = nrm * (2 / nrm[1])
        a, b = sympy.nsimplify(sympy.simplify(nrm[0])), sympy.nsimplify(sympy.simplify(nrm[1]))
        c = sympy.simplify(a + b)  # the boundary passes through rho_check = (1, 1)
        ineqs.append((a, b, c))
    return sorted(ineqs, key=lambda t: float(t[0]), reverse=True)


def in_tits_exact_rank2(data: CartanData, s) -> bool:
    x, y = (sympy.Rational(Fraction(v).numerator, Fraction(v).denominator) for v in s)
    return all(sympy.simplify(a * x + b * y - c) > 0 for a, b, c in tits_cone_rank2(data))


# -- convergence bound ------------------------------------------------------------------------------

def convergence_bound_check(ctx: ActionContext, s, L: int, q0: int = 5, prime=(0, 1), extra: int = 6) -> dict:
    """|EV|_q(j(w,x) (1|w), s) <= 3^{l(w)} q^{(w^-1 . 0)(rho_check - s)} for l(w) <= L.

    The left side is evaluated over the expansion of ``j(w,x)(1|w)`` up to
    degree ``d(sum_{alpha in Phi(w)} m(alpha) alpha) + extra`` with the Gauss sums of
    ``prime`` over F_q0.  Returns a report with the margins (right minus left,
    relative to the right side).
    """
    if any(complex(x).real <= 1 for x in s):
        raise RegionViolation("the bound needs Re s_i > 1 for every i")
    data = ctx.data
    H = HCoefficients(data, q0, 1)
    sp = H.specialization(prime)
    q = sp.q
    gam = {t: complex(v) for t, v in sp.gammas.items()}
    rows = []
    for w in enumerate_weyl(data, L):
        _, _, beta = ctx.j_cocycle(w)
        ser = ctx.j_times_one_w(w).expand(sum(beta) + extra)
        lhs = ser.abs_ev_q(s, value=lambda c: to_complex(c, q, gam), q=q)
        k = dot_action(data, ctx.lam, inverse_word(w), (0,) * data.rank)
        rhs = 3 ** len(w) * float(q) ** sum(ki * (1 - complex(si).real) for ki, si in zip(k, s))
        rows.append({"word": list(w), "lhs": lhs, "rhs": rhs, "margin": (rhs - lhs) / rhs})
    return {
        "prime": poly_str(prime),
        "q": q,
        "rows": rows,
        "min_margin": min(r["margin"] for r in rows),
        "ok": all(r["margin"] >= 0 for r in rows),
    }
