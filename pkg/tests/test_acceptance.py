"""Acceptance criteria 1-11.

Each test prints one ``[PASS]`` / ``[FAIL]`` line (visible in ``pytest -v`` output
and when the module is run as a script) and then asserts.  Exact identities
are compared exactly; the only float tolerance is the 1e-9 relative tolerance
on the numeric Z partial sums.
"""

import sys
import time

import pytest

from wmds.presets import ALL_PRESETS, PAPER_PRESETS, default_q0, preset
from wmds.verify import (
    check_arith,
    check_cocycle,
    check_convergence,
    check_h_global,
    check_invariance,
    check_involution_braid,
    check_local_fe,
    check_n1,
    check_rank_one,
    check_rank_one_z,
    check_regions_hyperbolic,
    check_twisted_fe,
    check_z_shells,
)

CRITERION_1_SYSTEMS = ("a2-n1", "a2-n2", "a2-n3", "b2-n2", "affine-a1-n2", "hyperbolic-n2")


@pytest.fixture
def report(capsys):
    """Print one pass/fail line straight to the terminal, bypassing capture."""

    def emit(number: int, title: str, ok: bool, detail: str = ""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}" + (f" ({detail})" if detail else "")
        with capsys.disabled():
            print("\n" + line, flush=True)

    return emit


def test_criterion_01_involution_and_braid(report):
    t = time.perf_counter()
    reps = {name: check_involution_braid(preset(name), cap=6, max_d=4) for name in CRITERION_1_SYSTEMS}
    elapsed = time.perf_counter() - t
    ok = all(r["ok"] for r in reps.values()) and elapsed < 60
    n_inv = sum(r["involutions"] for r in reps.values())
    n_braid = sum(r["braids"] for r in reps.values())
    report(1, "involution and braid relations", ok, f"{n_inv} involutions, {n_braid} braids, {elapsed:.1f}s")
    assert all(r["ok"] for r in reps.values()), {k: r["failures"][:3] for k, r in reps.items()}
    assert n_braid > 0
    assert elapsed < 60


def test_criterion_02_cocycle_and_delta_ratio(report):
    reps = {name: check_cocycle(preset(name), 6) for name in ALL_PRESETS}
    ok = all(r["ok"] for r in reps.values())
    pairs = sum(r["pairs"] for r in reps.values())
    report(2, "cocycle law and Delta ratio", ok, f"{pairs} pairs on {len(reps)} systems")
    assert ok, {k: (r["cocycle_failures"][:3], r["delta_ratio_failures"][:3]) for k, r in reps.items()}


def test_criterion_03_invariance_of_h(report):
    reps = {name: check_invariance(preset(name), 6) for name in ALL_PRESETS}
    ok = all(r["ok"] for r in reps.values())
    report(3, "invariance of h under every generator", ok, f"{len(reps)} presets")
    assert ok, reps


def test_criterion_04_local_functional_equations(report):
    branches = {"m_divides_mu": 0, "m_not_divides_mu": 0}
    twisted_branches = {"m_divides_mu": 0, "m_not_divides_mu": 0}
    failures = {}
    for name in ALL_PRESETS:
        data = preset(name)
        plain = check_local_fe(data, 3, 6)
        twisted = check_twisted_fe(data, default_q0(data.n), 3, 6)
        for k in branches:
            branches[k] += plain["branches"][k]
            twisted_branches[k] += twisted["branches"][k]
        if not (plain["ok"] and twisted["ok"]):
            failures[name] = (plain["failures"][:3], twisted["failures"][:3])
    both = all(branches.values()) and all(twisted_branches.values())
    ok = not failures and both
    report(4, "untwisted and twisted local functional equations", ok,
           f"untwisted {branches}, twisted {twisted_branches}")
    assert not failures, failures
    assert both


def test_criterion_05_rank_one_closed_form(report):
    rep = check_rank_one(cap=8, q0=5)
    report(5, "rank-one closed form and H(pi; 1) = Gauss sum", rep["ok"], f"N = {rep['N']}")
    assert rep["closed_form"] and rep["gauss"]


def test_criterion_06_n1_character_reduction(report):
    t = time.perf_counter()
    rep = check_n1(cap=6)
    elapsed = time.perf_counter() - t
    cases = [k for k in rep if k != "ok"]
    ok = rep["ok"] and elapsed < 120
    report(6, "n = 1 reduction to Weyl-Kac characters", ok, f"{len(cases)} cases, {elapsed:.1f}s")
    assert rep["ok"], rep
    assert elapsed < 120


def test_criterion_07_convergence_bound(report):
    reps = {name: check_convergence(preset(name), q0=5, L=5, s=(3,) * preset(name).rank)
            for name in PAPER_PRESETS}
    # q0 = 5 has no cube roots of unity, so the n = 3 extra uses q0 = 7
    for name in ALL_PRESETS:
        if name not in reps:
            d = preset(name)
            reps[name] = check_convergence(d, q0=default_q0(d.n), L=5, s=(3,) * d.rank)
    ok = all(r["ok"] for r in reps.values())
    margin = min(r["min_margin"] for r in reps.values())
    report(7, "convergence bound 3^l(w) q^(...)", ok, f"min margin {margin:.3g}")
    assert ok and margin >= 0


def test_criterion_08_region_geometry(report):
    rep = check_regions_hyperbolic(max_L=12)
    report(8, "hyperbolic region geometry", rep["ok"],
           ", ".join(f"{k}={v}" for k, v in rep.items() if k != "ok"))
    assert rep["orbit"] and rep["in_tits"] and rep["tits_inequalities"]
    assert not rep["in_X0_any_L"]
    assert rep["hull_boundary"] and rep["lambda_1"] and rep["lambda_2"]


def test_criterion_09_arithmetic_backend(report):
    rep = check_arith()
    report(9, "Gauss sums, reciprocity, multiplicativity, gamma pair", rep["ok"],
           ", ".join(f"{k}={v}" for k, v in rep.items() if k != "ok"))
    assert rep["gauss_abs"] and rep["reciprocity"] and rep["multiplicativity"] and rep["gamma_pair"]


def test_criterion_10_global_h_order_independence(report):
    reps = {name: check_h_global(preset(name), 5, samples=50, orders=3)
            for name in ("a2-n2", "b2-n2", "a2-n2-half", "hyperbolic-n2")}
    ok = all(r["ok"] for r in reps.values())
    multi = sum(r["multi_prime_samples"] for r in reps.values())
    report(10, "h_global independent of prime order", ok, f"{4 * 50} tuples, {multi} with several primes")
    assert ok, {k: r["order_failures"][:3] for k, r in reps.items()}
    assert multi > 0


def test_criterion_11_z_partial_sums(report):
    one = check_z_shells(preset("rank1-n2"), 5, (0, 1, 2, 3, 4), rel_tol=1e-9)
    a2 = check_z_shells(preset("a2-n2"), 5, (0, 1, 2, 3), rel_tol=1e-9)
    direct = check_rank_one_z(5, 3.0, rel_tol=1e-9)
    ok = one["ok"] and a2["ok"] and direct["ok"]
    report(11, "Z shell consistency and rank-one N_max = 1 value", ok,
           f"Z_1 = {direct['z'][0]:.12f}, direct = {direct['direct'][0]:.12f}")
    assert one["ok"] and a2["ok"]
    assert direct["ok"]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
