"""Command line front end.

Every subcommand reads the root datum from ``--preset NAME`` or ``--cartan``
(a JSON file path or an inline JSON object such as
``'{"A": [[2,-1],[-1,2]], "n": 2}'``).  Polynomials over F_q0 are JSON
coefficient lists in ascending order, so ``[1,1]`` is ``t + 1``.

Exit status is 0 on success, 1 when a verification fails and 2 for malformed
input.  Input errors are reported on stderr as ``{"error": ..., "message": ...}``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from wmds.action import ActionContext
from wmds.arith import ff_ring, poly_str
from wmds.cartan import CartanData
from wmds.characters import compare_n1, freudenthal
from wmds.errors import WMDSError
from wmds.hcoeff import HCoefficients
from wmds.mds import (
    ZConfig,
    hull_generators,
    in_L,
    in_X0_approx,
    in_tits,
    on_hull_boundary,
    z_partial,
)
from wmds.presets import ALL_PRESETS, default_q0, preset
from wmds.roots import RootTable, enumerate_weyl, phi_set_raw, sign
from wmds.verify import (
    check_cocycle,
    check_invariance,
    check_involution_braid,
    check_local_fe,
    run_verify,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class UsageError(WMDSError, ValueError):
    """Bad command line."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- parsing helpers -------------------------------------------------------------------------

def _json_arg(text: str):
    """Inline JSON, or the contents of a JSON file when ``text`` names one."""
    if os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            return json.load(fh)
    return json.loads(text)


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _nonnegative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return v


def _vector(text: str) -> tuple:
    return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")


def _rational_vector(text: str) -> tuple:
    return tuple(Fraction(x) for x in text.replace(" ", "").split(",") if x != "")


def load_data(args) -> CartanData:
    if getattr(args, "cartan", None):
        data = CartanData.from_json(_json_arg(args.cartan))
    elif getattr(args, "preset", None):
        data = preset(args.preset)
    else:
        raise UsageError("give --preset or --cartan")
    if getattr(args, "n", None) is not None:
        data = data.with_n(args.n)
    return data


def _lam(args, data: CartanData) -> tuple:
    lam = _vector(args.lam) if args.lam else (0,) * data.rank
    if len(lam) != data.rank:
        raise UsageError(f"lambda must have {data.rank} entries")
    return lam


def _writer(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=str) + "\n"


def _table(header, rows, fmt: str) -> str:
    if fmt == "json":
        return _dump([dict(zip(header, r)) for r in rows])
    return _writer(rows, header)


def _coords(r: int) -> list:
    return [f"k{i + 1}" for i in range(r)]


# -- subcommands -----------------------------------------------------------------------------------

def cmd_roots(args) -> int:
    data = load_data(args)
    table = RootTable(data, args.depth)
    rows = [list(a) + [d, mult, int(real), m] for a, d, mult, real, m in table.rows()]
    _emit(_table(_coords(data.rank) + ["depth", "mult", "is_real", "m_alpha"], rows, args.format), args.out)
    return EXIT_OK


def cmd_weyl(args) -> int:
    data = load_data(args)
    rows = []
    for w in enumerate_weyl(data, args.length):
        inv = ";".join(" ".join(str(x) for x in a) for a in phi_set_raw(data, w))
        rows.append([" ".join(str(i) for i in w), len(w), sign(data, w), inv])
    _emit(_table(["word", "length", "sign", "inversions"], rows, args.format), args.out)
    return EXIT_OK


def nseries_report(data: CartanData, lam, cap: int) -> dict:
    def brief(rep):
        return {k: v for k, v in rep.items() if not isinstance(v, (list, dict)) or k in ("branches",)}

    ib = check_involution_braid(data, cap, min(cap, 4), lam)
    report = {
        "involution": ib["ok"],
        "braid": ib["ok"],
        "cocycle": brief(check_cocycle(data, min(cap, 6), lam)),
        "invariance": brief(check_invariance(data, cap, lam)),
        "fe_checks": brief(check_local_fe(data, min(cap, 3), cap, lam)),
    }
    if data.n == 1:
        rep = compare_n1(ActionContext(data, lam, cap))
        report["n1_oracle"] = {"ok": rep["ok"], "checked": rep["checked"]}
    report["ok"] = all(v if isinstance(v, bool) else v["ok"] for v in report.values())
    return report


def cmd_nseries(args) -> int:
    data = load_data(args)
    lam = _lam(args, data)
    ctx = ActionContext(data, lam, args.cap)
    N = ctx.n_series()
    report = nseries_report(data, lam, args.cap)
    if args.format == "json":
        terms = [{"beta": list(b), "d": sum(b), "coefficient": str(c)} for b, c in N]
        _emit(_dump({"terms": terms, "report": report}), args.out)
    else:
        _emit(N.to_csv(), args.out)
        if args.report:
            with open(args.report, "w", encoding="utf-8") as fh:
                fh.write(_dump(report))
        else:
            sys.stderr.write(_dump(report))
    return EXIT_OK if report["ok"] else EXIT_FAIL


def _tuples(R, rank: int, bound: int):
    """All r-tuples of monic polynomials with total degree <= bound."""
    by_deg = [R.monics(d) for d in range(bound + 1)]

    def rec(k, left):
        if k == rank:
            yield ()
            return
        for d in range(left + 1):
            for f in by_deg[d]:
                for rest in rec(k + 1, left - d):
                    yield (f,) + rest

    yield from rec(0, bound)


def _parse_tuple(obj, rank: int, what: str) -> tuple:
    if not isinstance(obj, list) or len(obj) != rank or not all(isinstance(f, list) for f in obj):
        raise UsageError(f"{what} must be a JSON list of {rank} coefficient lists")
    return tuple(tuple(int(c) for c in f) for f in obj)


def cmd_hcoeff(args) -> int:
    data = load_data(args)
    q0 = args.q0 or default_q0(data.n)
    H = HCoefficients(data, q0, cap=max(6, args.degree))
    m = _parse_tuple(_json_arg(args.m), data.rank, "--m") if args.m else None
    rows = []
    for c in _tuples(H.R, data.rank, args.degree):
        v = H.h_global(c, m)
        z = complex(v)
        rows.append([" ".join(poly_str(f) for f in c), sum(H.R.deg(f) for f in c), str(v),
                     f"{z.real:.12g}", f"{z.imag:.12g}"])
    header = ["c", "degree", f"H (z = exp(2 pi i / {H.R.N}))", "re", "im"]
    _emit(_table(header, rows, args.format), args.out)
    return EXIT_OK


def cmd_gauss(args) -> int:
    R = ff_ring(args.q0, args.n)
    out = {"q0": args.q0, "n": args.n, "zeta_order": R.N}
    if args.c is not None:
        c = tuple(_json_arg(args.c))
        a = tuple(_json_arg(args.a)) if args.a else (1,)
        g = R.gauss_sum(a, c, args.t)
        out["gauss_sum"] = {"a": list(a), "c": list(c), "t": args.t, "value": str(g),
                            "abs2": str(g.abs2()), "re": complex(g).real, "im": complex(g).imag}
    if args.f is not None and args.g is not None:
        f, g = tuple(_json_arg(args.f)), tuple(_json_arg(args.g))
        out["residue_symbol"] = {"f": list(f), "g": list(g), "exponent": R.symbol_exponent(f, g),
                                 "value": str(R.residue_symbol(f, g))}
        out["hilbert_symbol"] = {"exponent": R.hilbert_exponent(f, g)}
    if args.factor is not None:
        f = tuple(_json_arg(args.factor))
        out["factorization"] = [[list(p), e] for p, e in R.factor(f)]
    if len(out) == 3:
        raise UsageError("give --c (Gauss sum), --f and --g (residue symbol) or --factor")
    _emit(_dump(out), args.out)
    return EXIT_OK


def _complex(v) -> complex:
    if isinstance(v, (list, tuple)):
        return complex(float(v[0]), float(v[1]))
    return complex(v)


def zconfig_from_json(obj) -> ZConfig:
    if not isinstance(obj, dict):
        raise UsageError("ZConfig must be a JSON object")
    if "preset" in obj:
        data = preset(obj["preset"])
    elif "cartan" in obj:
        data = CartanData.from_json(obj["cartan"])
    else:
        raise UsageError("ZConfig needs 'preset' or 'cartan'")
    if "n" in obj:
        data = data.with_n(int(obj["n"]))
    s = tuple(_complex(x) for x in obj["s"])
    m = _parse_tuple(obj["m"], data.rank, "m") if obj.get("m") is not None else None
    omega = tuple(_complex(x) for x in obj["omega"]) if obj.get("omega") is not None else None
    return ZConfig(data, int(obj.get("q0", default_q0(data.n))), int(obj["N_max"]), s, m, omega,
                   obj.get("psi", "one"), obj.get("cap"))


def cmd_zsum(args) -> int:
    cfg = zconfig_from_json(_json_arg(args.config))
    res = z_partial(cfg)
    out = {
        "partial_sum_re": res.value.real,
        "partial_sum_im": res.value.imag,
        "shells": [[z.real, z.imag] for z in res.shells],
        "m_factor": [res.m_factor.real, res.m_factor.imag],
    }
    _emit(_dump(out), args.out)
    return EXIT_OK


def cmd_regions(args) -> int:
    data = load_data(args)
    hull = hull_generators(data, args.length)
    rows = []
    for text in args.point or []:
        s = _rational_vector(text)
        if len(s) != data.rank:
            raise UsageError(f"point {text} must have {data.rank} entries")
        found, word = in_tits(data, s)
        rows.append([text, int(in_L(s)), int(found), " ".join(map(str, word)) if found else "",
                     int(in_X0_approx(data, s, args.length, hull)),
                     int(on_hull_boundary(data, s, args.length))])
    head = ["point", "in_L", "in_tits", "word", "in_X0_approx", "on_hull_boundary"]
    gens = [["vertex"] + [str(x) for x in v] for v in hull.vertices]
    gens += [["ray"] + [str(x) for x in v] for v in hull.rays]
    if args.format == "json":
        text = _dump({"points": [dict(zip(head, r)) for r in rows],
                      "generators": [{"kind": g[0], "coords": g[1:]} for g in gens]})
    else:
        text = _writer(rows, head) + "\n" + _writer(gens, ["kind"] + _coords(data.rank))
    _emit(text, args.out)
    return EXIT_OK


def cmd_char(args) -> int:
    data = load_data(args)
    lam = _lam(args, data)
    table = freudenthal(data, lam, args.cap)
    rows = [list(b) + [sum(b), m] for b, m in table.rows()]
    _emit(_table(_coords(data.rank) + ["depth", "mult"], rows, args.format), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    data = load_data(args)
    report = run_verify(data, args.cap)
    _emit(_dump(report), args.out)
    return EXIT_OK if report["ok"] else EXIT_FAIL


# -- parser ----------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wmds", description="Weyl group multiple Dirichlet series toolkit")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help_, data=True, fmt=True):
        sp = sub.add_parser(name, help=help_)
        if data:
            sp.add_argument("--preset", choices=ALL_PRESETS)
            sp.add_argument("--cartan", help="Cartan JSON (path or inline)")
            sp.add_argument("--n", type=_positive, help="override the degree n")
        sp.add_argument("--out", help="output path (default stdout)")
        if fmt:
            sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.set_defaults(func=fn)
        return sp

    sp = add("roots", cmd_roots, "positive roots with multiplicities and m(alpha)")
    sp.add_argument("--depth", type=_positive, default=4)
    sp = add("weyl", cmd_weyl, "Weyl group elements and inversion sets")
    sp.add_argument("--length", type=_nonnegative, default=3)
    sp = add("nseries", cmd_nseries, "the N series with a verification report")
    sp.add_argument("--lam", help="lambda as comma separated labels")
    sp.add_argument("--cap", type=_positive, default=6)
    sp.add_argument("--report", help="path for the JSON report (default stderr)")
    sp = add("hcoeff", cmd_hcoeff, "global coefficients H(c; m)")
    sp.add_argument("--q0", type=_positive)
    sp.add_argument("--m", help="m-tuple as JSON coefficient lists")
    sp.add_argument("--degree", type=_nonnegative, default=2)
    sp = add("gauss", cmd_gauss, "residue symbols, Gauss sums, factorizations", data=False, fmt=False)
    sp.add_argument("--q0", type=_positive, required=True)
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--a")
    sp.add_argument("--c")
    sp.add_argument("--t", type=int, default=1)
    sp.add_argument("--f")
    sp.add_argument("--g")
    sp.add_argument("--factor")
    sp = add("zsum", cmd_zsum, "partial sums of Z", data=False, fmt=False)
    sp.add_argument("--config", required=True, help="ZConfig JSON (path or inline)")
    sp = add("regions", cmd_regions, "region membership and hull generators")
    sp.add_argument("--point", action="append", help="comma separated rationals, repeatable")
    sp.add_argument("--length", type=_nonnegative, default=4)
    sp = add("char", cmd_char, "weight multiplicities via Freudenthal")
    sp.add_argument("--lam")
    sp.add_argument("--cap", type=_positive, default=6)
    sp = add("verify", cmd_verify, "run the property suite", fmt=False)
    sp.add_argument("--cap", type=_positive, default=6)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except (WMDSError, ValueError, KeyError, OSError) as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}, sort_keys=True) + "\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
