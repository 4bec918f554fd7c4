"""Exit criteria, one test each; a PASS/FAIL line per criterion is printed at the end of the run."""

import time
from fractions import Fraction
from math import factorial

import pytest

from toriclct import cli, instances, oracle
from toriclct.invariants import compute_invariants, minimum_hitting_sets, regularize
from toriclct.newton import Kind, SingularityInput, build_polyhedron, covolume
from toriclct.threshold import (TheoremViolation, analyze, bound_ladder, cross_validate_equality,
                                equality_test)

from .conftest import m_power

F = Fraction
RESULTS = []
EQUALITY_EVENTS = []


def record(name, ok, detail):
    RESULTS.append(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    assert ok, detail


def note_equality(data, report):
    if report.equality is not None:
        EQUALITY_EVENTS.append((data, report))


def test_c1_z1_z2sq_regression():
    start = time.perf_counter()
    data = SingularityInput(3, ((1, 0, 0), (0, 2, 0)))
    report = analyze(data)
    inv = report.invariants
    elapsed = time.perf_counter() - start
    note_equality(data, report)
    ok = (inv.l == 2 and inv.lelong == 1 and inv.mixed == (1, 2) and inv.lct == F(3, 2)
          and report.E[1] == F(3, 2)
          and inv.lct ** 2 * inv.mixed[1] == F(9, 2) and F(9, 2) > 4
          and report.F[1].compare(inv.lct) == 1
          and report.equality is None and elapsed < 1.0)
    record("C1 (z1, z2^2) in n=3", ok,
           f"l={inv.l} e={tuple(map(str, inv.mixed))} c={inv.lct} E2={report.E[1]} "
           f"c^2 e2={inv.lct ** 2 * inv.mixed[1]} equality={report.equality} ({elapsed:.3f}s)")


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("s", [1, 2, 3])
def test_c2_maximal_ideal_family(n, s):
    start = time.perf_counter()
    data = m_power(n, s)
    report = analyze(data)
    inv = report.invariants
    elapsed = time.perf_counter() - start
    note_equality(data, report)
    eq = report.equality
    ok = (inv.l == n and inv.mixed == tuple(F(s) ** k for k in range(1, n + 1))
          and inv.lct == F(n, s) and report.E[-1] == inv.lct
          and report.F[-1].compare(inv.lct) == 0
          and eq is not None and eq.J == frozenset(range(n)) and eq.s == s
          and elapsed < 1.0)
    record(f"C2 m^{s} in n={n}", ok,
           f"e={tuple(map(str, inv.mixed))} c={inv.lct} E_n={report.E[-1]} witness="
           f"{None if eq is None else (sorted(j + 1 for j in eq.J), str(eq.s))} ({elapsed:.3f}s)")


def test_c3_tight_at_E_not_at_F():
    data = SingularityInput(2, ((2, 0), (0, 3)))
    report = analyze(data)
    inv = report.invariants
    ok = (inv.lct == F(5, 6) and report.E[1] == F(5, 6)
          and inv.lct ** 2 * inv.mixed[1] == F(25, 6) and report.F[1].compare(inv.lct) == 1
          and report.equality is None)
    record("C3 (z1^2, z2^3)", ok,
           f"c={inv.lct} E2={report.E[1]} c^2 e2={inv.lct ** 2 * inv.mixed[1]} > 4")


def test_c4_ladder_property_suite():
    rng = instances.make_rng(4004)
    start = time.perf_counter()
    counts = {"ladder": 0, "growth": 0, "homogeneity": 0}
    for i in range(500):
        data = instances.random_ideal(rng, rng.choice((2, 3)), 4, 6, label=f"c4-{i}")
        failed = cli.check_instance(data)
        for name in counts:
            counts[name] += name in failed
        try:
            note_equality(data, analyze(data))
        except TheoremViolation:
            pass
    elapsed = time.perf_counter() - start
    ok = not any(counts.values()) and elapsed < 60
    record("C4 ladder suite (500 ideals)", ok, f"violations={counts} ({elapsed:.1f}s)")


def test_c5_closure_power_equivalence():
    rng = instances.make_rng(5005)
    start = time.perf_counter()
    agree = tp = fp = 0
    for i in range(100):
        n = rng.choice((2, 3))
        pos, J, s = instances.planted_instance(rng, n, s_max=4, label=f"pos-{i}")
        neg = instances.perturbed_negative(rng, n, s_max=4, label=f"neg-{i}")
        agree += cross_validate_equality(pos) + cross_validate_equality(neg)
        rp, rn = analyze(pos), analyze(neg)
        note_equality(pos, rp)
        note_equality(neg, rn)
        tp += rp.equality is not None and (rp.equality.J, rp.equality.s) == (J, s)
        fp += rn.equality is not None
    elapsed = time.perf_counter() - start
    ok = agree == 200 and tp == 100 and fp == 0 and elapsed < 60
    record("C5 closure-power equivalence", ok,
           f"agreement {agree}/200, true positives {tp}/100, false positives {fp} ({elapsed:.1f}s)")


def test_c6_oracle_equivalence():
    cfg = oracle.OracleConfig(grid_resolution=64, power_cap=24, tolerance=F(1, 10))
    start = time.perf_counter()
    lines, ok = [], True
    for data in instances.bundled_corpus():
        if data.n > 3:
            continue
        gens, d = data.cleared()
        ideal = SingularityInput(data.n, tuple(gens), Kind.IDEAL, data.label)
        inv = compute_invariants(ideal)
        reg = regularize(ideal, inv.N_used)
        exact = factorial(data.n) * covolume(build_polyhedron(reg))
        est = oracle.multiplicity_estimate(reg, cfg)
        rel = abs(est - exact) / exact
        lo, hi = oracle.lct_estimate(ideal, cfg)
        inside = lo <= 1 / inv.lct <= hi
        good = rel <= cfg.tolerance and inside
        ok &= good
        if not good:
            lines.append(f"{data.label}: e_n={exact} est={est} rel={float(rel):.4f} interval_ok={inside}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 120
    record("C6 oracle equivalence (m=24, 10%)", ok,
           ("all corpus instances agree" if not lines else "; ".join(lines)) + f" ({elapsed:.1f}s)")


def test_c7_equality_locus_shadow(monkeypatch, tmp_path, capsys):
    # equality events from the other criteria plus a fresh pool, and a seeded CLI run
    rng = instances.make_rng(7007)
    pool = list(instances.bundled_corpus())
    pool += [instances.planted_instance(rng, rng.choice((2, 3, 4)), label=f"c7-{i}")[0]
             for i in range(60)]
    pool += [instances.random_ideal(rng, rng.choice((2, 3)), 4, 6, label=f"c7r-{i}") for i in range(100)]
    for data in pool:
        note_equality(data, analyze(data))
    failures = []
    for data, report in EQUALITY_EVENTS:
        inv = report.invariants
        hits = minimum_hitting_sets(data)
        if not (inv.l == len(hits[0]) and len(hits) == 1 and report.equality.J == hits[0]
                and all(inv.e(k) == inv.lelong ** k for k in range(1, inv.l + 1))):
            failures.append(data.label)
    code_ok = cli.main(["random", "--n", "3", "--count", "40", "--seed", "77", "--planted", "40",
                        "--no-oracle", "--format", "text"])
    capsys.readouterr()

    # forged invariants claiming c = F_l on (z1^2, z2^3): the CLI must report a defect
    def forged_analyze(data, n_max=None):
        inv = compute_invariants(data, n_max=n_max)
        fake = type(inv)(n=inv.n, l=inv.l, lelong=F(2), mixed=(F(2), F(4)), lct=F(1),
                         N_used=inv.N_used)
        report = bound_ladder(fake)
        report.equality = equality_test(data, fake, report)
        return report

    path = tmp_path / "z2z3.json"
    path.write_text('{"n": 2, "kind": "ideal", "generators": [[2, 0], [0, 3]]}')
    monkeypatch.setattr(cli, "analyze", forged_analyze)
    forged_code = cli.main(["analyze", str(path), "--no-oracle"])
    capsys.readouterr()

    ok = not failures and code_ok == 0 and forged_code == 4 and len(EQUALITY_EVENTS) > 0
    record("C7 equality-locus shadow", ok,
           f"{len(EQUALITY_EVENTS)} equality events checked, counterexamples={failures}, "
           f"random run exit={code_ok}, forged counterexample exit={forged_code}")
