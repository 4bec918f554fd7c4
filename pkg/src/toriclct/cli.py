"""Command line front end: ``analyze``, ``random`` and ``compare``.

Exit codes: 0 success, 1 regularisation did not stabilise, 2 parse error,
3 unsupported dimension or kind, 4 theorem-violation defect.
"""

import argparse
import json
import sys
from fractions import Fraction
from math import factorial
from pathlib import Path

from . import instances, oracle
from .invariants import StabilizationError, compute_invariants, regularize
from .newton import (InputError, Kind, SingularityInput, UnsupportedDimension,
                     build_polyhedron, covolume)
from .threshold import TheoremViolation, analyze, bound_ladder, closure_power_test

EXIT_OK, EXIT_STABILIZE, EXIT_PARSE, EXIT_DIM, EXIT_DEFECT = 0, 1, 2, 3, 4


def q(x):
    return str(Fraction(x))


# --- oracle ------------------------------------------------------------------

def _cleared_ideal(data):
    gens, d = data.cleared()
    return SingularityInput(data.n, tuple(gens), Kind.IDEAL, data.label), d


def oracle_check(data, inv, cfg):
    """Lattice-count and bisection cross-check of e_n(u_N) and 1/c; None when n > 3."""
    if data.n > oracle.MAX_ORACLE_DIM:
        return None
    ideal, d = _cleared_ideal(data)
    reg = regularize(ideal, inv.N_used)
    exact = factorial(data.n) * covolume(build_polyhedron(reg))
    estimate = oracle.multiplicity_estimate(reg, cfg)
    rel = abs(estimate - exact) / exact
    threshold = d / inv.lct
    lo, hi = oracle.lct_estimate(ideal, cfg)
    doc = {
        "regularization_N": inv.N_used,
        "exact_e_n": q(exact),
        "estimate": q(estimate),
        "power": cfg.power_cap,
        "relative_error": float(rel),
        "tolerance": q(cfg.tolerance),
        "within_tolerance": rel <= cfg.tolerance,
        "threshold_interval": [q(lo), q(hi)],
        "interval_contains_threshold": lo <= threshold <= hi,
    }
    if d != 1:
        doc["cleared_by"] = d
    return doc


# --- reports -----------------------------------------------------------------

def report_doc(data, report, oracle_doc=None):
    inv = report.invariants
    c = inv.lct
    tight = {}
    for k in range(1, inv.l + 1):
        tight[f"c=E{k}"] = c == report.E[k - 1]
        tight[f"c=F{k}"] = report.F[k - 1].compare(c) == 0
    eq = report.equality
    doc = {
        "label": data.label,
        "input": instances.to_dict(data),
        "invariants": {
            "n": inv.n,
            "l": inv.l,
            "lelong": q(inv.lelong),
            "mixed": [q(e) for e in inv.mixed],
            "lct": q(c),
            "N_used": inv.N_used,
        },
        "ladder": {
            "E": [q(e) for e in report.E],
            "F": [{"k": f.k, "e_k": q(f.e_k), "approx": float(f)} for f in report.F],
            "verdicts": dict(sorted(report.verdicts.items())),
            "tight": tight,
        },
        "equality": ({"holds": True, "J": [j + 1 for j in eq.sorted_J()], "s": q(eq.s)}
                     if eq is not None else {"holds": False}),
        "notes": list(report.notes) + ["N stabilisation is an operational surrogate for the limit N -> oo"],
    }
    if oracle_doc is not None:
        doc["oracle"] = oracle_doc
    return doc


def _analyze_one(data, cfg, n_max, with_oracle=True):
    """(document, exit code) for one instance; defects are reported, not raised."""
    try:
        report = analyze(data, n_max=n_max)
        orc = oracle_check(data, report.invariants, cfg) if with_oracle else None
        return report_doc(data, report, orc), EXIT_OK
    except TheoremViolation as exc:
        return {"label": data.label, "input": instances.to_dict(data), "defect": str(exc)}, EXIT_DEFECT
    except UnsupportedDimension as exc:
        return {"label": data.label, "error": str(exc)}, EXIT_DIM
    except StabilizationError as exc:
        return {"label": data.label, "error": str(exc)}, EXIT_STABILIZE


def _worst(codes):
    for code in (EXIT_DEFECT, EXIT_DIM, EXIT_STABILIZE):
        if code in codes:
            return code
    return EXIT_OK


def _sort_key(data):
    return (data.label or "", json.dumps(instances.to_dict(data), sort_keys=True))


def cmd_analyze(path, cfg, n_max=None, with_oracle=True):
    items = sorted(instances.load(path), key=_sort_key)
    results = [_analyze_one(d, cfg, n_max, with_oracle) for d in items]
    return [doc for doc, _ in results], _worst([code for _, code in results])


def _text_analyze(docs):
    lines = []
    for doc in docs:
        lines.append(f"[{doc['label']}]")
        if "defect" in doc:
            lines.append(f"  DEFECT: {doc['defect']}")
            continue
        if "error" in doc:
            lines.append(f"  error: {doc['error']}")
            continue
        inv = doc["invariants"]
        lines.append(f"  n={inv['n']} l={inv['l']} nu={inv['lelong']} e=({', '.join(inv['mixed'])}) "
                     f"c={inv['lct']} N_used={inv['N_used']}")
        lad = doc["ladder"]
        lines.append("  E: " + "  ".join(f"E{k}={e}" for k, e in enumerate(lad["E"], start=1)))
        lines.append("  F: " + "  ".join(f"F{f['k']}~{f['approx']:.6f}" for f in lad["F"]))
        held = all(lad["verdicts"].values())
        lines.append(f"  verdicts: {'all hold' if held else 'VIOLATED'}; tight: "
                     + (", ".join(k for k, v in lad["tight"].items() if v) or "none"))
        eq = doc["equality"]
        lines.append("  equality: " + (f"c = F_l with J={eq['J']} s={eq['s']}" if eq["holds"] else "none"))
        orc = doc.get("oracle")
        if orc:
            lines.append(f"  oracle: e_n={orc['exact_e_n']} est={orc['estimate']} "
                         f"rel.err={orc['relative_error']:.4f} (tol {orc['tolerance']}) "
                         f"{'ok' if orc['within_tolerance'] else 'OUTSIDE'}; 1/c in "
                         f"({orc['threshold_interval'][0]}, {orc['threshold_interval'][1]}] "
                         f"{'ok' if orc['interval_contains_threshold'] else 'MISSED'}")
    return "\n".join(lines)


# --- random property run -----------------------------------------------------

SCALINGS = (Fraction(1, 2), Fraction(2), Fraction(3))


def _same_verdicts(a, b):
    return a.verdicts == b.verdicts and (a.equality is None) == (b.equality is None)


def check_instance(data, n_max=None):
    """Property checks on one instance; returns the list of failed property names."""
    failed = []
    try:
        base = analyze(data, n_max=n_max)
    except TheoremViolation:
        return ["ladder"]
    inv = base.invariants
    if any(inv.e(k) < inv.lelong ** k for k in range(1, inv.l + 1)):
        failed.append("growth")
    for t in SCALINGS:
        try:
            other = analyze(data.scaled(t), n_max=n_max)
        except TheoremViolation:
            failed.append("ladder")
            continue
        oi = other.invariants
        if (oi.lct != inv.lct / t or oi.lelong != t * inv.lelong
                or any(oi.e(k) != t ** k * inv.e(k) for k in range(1, inv.l + 1))
                or not _same_verdicts(base, other)):
            failed.append("homogeneity")
    # integral closure: an extra generator inside Gamma changes nothing
    apex = max(data.generators)
    bumped = tuple(c + (1 if j == 0 else 0) for j, c in enumerate(apex))
    closed = SingularityInput(data.n, data.generators + (bumped,), data.kind, data.label)
    if compute_invariants(closed, n_max=n_max) != inv:
        failed.append("closure")
    return sorted(set(failed))


def cmd_random(n, max_gens, max_exp, count, seed, cfg, n_max=None, planted=0,
               with_oracle=True, corpus_out=None):
    if not 1 <= n <= 4:
        raise UnsupportedDimension("random corpora support 1 <= n <= 4")
    rng = instances.make_rng(seed)
    corpus = [instances.random_ideal(rng, n, max_gens, max_exp, label=f"random-{i:04d}")
              for i in range(count)]
    summary = {"seed": seed, "n": n, "max_gens": max_gens, "max_exp": max_exp, "count": count}
    defects = []
    counts = {"ladder": 0, "growth": 0, "homogeneity": 0, "closure": 0}
    oracle_checked, oracle_misses = 0, []
    for data in corpus:
        failed = check_instance(data, n_max)
        for name in failed:
            counts[name] += 1
            defects.append({"label": data.label, "property": name, "input": instances.to_dict(data)})
        if with_oracle and n <= oracle.MAX_ORACLE_DIM and "ladder" not in failed:
            orc = oracle_check(data, compute_invariants(data, n_max=n_max), cfg)
            oracle_checked += 1
            if not (orc["within_tolerance"] and orc["interval_contains_threshold"]):
                oracle_misses.append({"label": data.label, "relative_error": orc["relative_error"],
                                      "interval_ok": orc["interval_contains_threshold"]})
    summary["violations"] = counts
    summary["oracle"] = {"checked": oracle_checked, "outside_tolerance": oracle_misses}

    if planted:
        planted_docs = {"count": planted, "detected": 0, "false_positives": 0, "disagreements": 0}
        for i in range(planted):
            pos, J, s = instances.planted_instance(rng, n, label=f"planted-{i:04d}")
            neg = instances.perturbed_negative(rng, n, label=f"negative-{i:04d}")
            corpus.extend([pos, neg])
            for data, expected in ((pos, (J, s)), (neg, None)):
                try:
                    report = analyze(data, n_max=n_max)
                except TheoremViolation as exc:
                    defects.append({"label": data.label, "property": "ladder", "detail": str(exc)})
                    continue
                eq = report.equality
                closure = closure_power_test(data)
                if (eq is None) != (closure is None) or (eq is not None and eq != closure):
                    planted_docs["disagreements"] += 1
                    defects.append({"label": data.label, "property": "equality-cross-check"})
                if expected is not None and eq is not None and (eq.J, eq.s) == expected:
                    planted_docs["detected"] += 1
                if expected is None and eq is not None:
                    planted_docs["false_positives"] += 1
        summary["planted"] = planted_docs

    summary["defects"] = defects
    if corpus_out is not None:
        out = Path(corpus_out)
        out.mkdir(parents=True, exist_ok=True)
        for data in corpus:
            (out / f"{data.label}.json").write_text(json.dumps(instances.to_dict(data)) + "\n")
    return summary, (EXIT_DEFECT if defects else EXIT_OK)


def _text_random(summary):
    lines = [f"seed={summary['seed']} n={summary['n']} count={summary['count']}"]
    for name, v in summary["violations"].items():
        lines.append(f"  {name} violations: {v}")
    orc = summary["oracle"]
    lines.append(f"  oracle checked: {orc['checked']}, outside tolerance: {len(orc['outside_tolerance'])}")
    if "planted" in summary:
        p = summary["planted"]
        lines.append(f"  planted: {p['detected']}/{p['count']} detected, "
                     f"{p['false_positives']} false positives, {p['disagreements']} disagreements")
    lines.append(f"  defects: {len(summary['defects'])}")
    return "\n".join(lines)


# --- compare -----------------------------------------------------------------

def cmd_compare(path, cfg, n_max=None):
    rows = []
    for data in sorted(instances.load(path), key=_sort_key):
        if data.n > oracle.MAX_ORACLE_DIM or data.kind is not Kind.IDEAL:
            raise UnsupportedDimension(f"{data.label}: compare needs an ideal with n <= {oracle.MAX_ORACLE_DIM}")
        inv = compute_invariants(data, n_max=n_max)
        bound_ladder(inv)
        orc = oracle_check(data, inv, cfg)
        rows.append({"label": data.label, "n": data.n, "lct": q(inv.lct), **orc})
    return rows


def _text_compare(rows):
    head = f"{'label':<20} {'N':>4} {'exact e_n':>10} {'oracle':>12} {'rel.err':>8} {'ok':>3}  {'1/c':>8} {'interval':>16} {'ok':>3}"
    lines = [head]
    for r in rows:
        est = float(Fraction(r["estimate"]))
        inv_c = str(1 / Fraction(r["lct"]))
        lines.append(f"{r['label']:<20} {r['regularization_N']:>4} {r['exact_e_n']:>10} {est:>12.5f} "
                     f"{r['relative_error']:>8.4f} {'y' if r['within_tolerance'] else 'n':>3}  "
                     f"{inv_c:>8} {'(' + ', '.join(r['threshold_interval']) + ']':>16} "
                     f"{'y' if r['interval_contains_threshold'] else 'n':>3}")
    return "\n".join(lines)


# --- entry point -------------------------------------------------------------

def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--oracle-tolerance", type=_fraction, default=Fraction(1, 10), metavar="P/Q")
    common.add_argument("--nmax-regularization", type=int, default=None, metavar="K",
                        help="cap on N in max(u, N log|z|); default 2^10 * max exponent")
    common.add_argument("--out", type=Path, default=None, help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="toriclct", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("analyze", parents=[common], help="invariants, bound ladder and equality diagnosis")
    p.add_argument("path", type=Path)
    p.add_argument("--no-oracle", action="store_true")
    p = sub.add_parser("random", parents=[common], help="seeded random property run")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gens", type=int, default=4, help="maximum number of generators")
    p.add_argument("--max-exp", type=int, default=6)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--planted", type=int, default=0, help="also run this many planted/negative pairs")
    p.add_argument("--no-oracle", action="store_true")
    p.add_argument("--corpus-dir", type=Path, default=None, help="write the generated instances here")
    p = sub.add_parser("compare", parents=[common], help="exact values against the lattice oracle")
    p.add_argument("path", type=Path)
    return parser


def _emit(args, doc, text):
    out = json.dumps(doc, indent=2) if args.format == "json" else text
    if args.out is not None:
        args.out.write_text(out + "\n")
    else:
        print(out)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = oracle.OracleConfig(tolerance=args.oracle_tolerance)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    n_max = args.nmax_regularization
    try:
        if args.command == "analyze":
            docs, code = cmd_analyze(args.path, cfg, n_max, with_oracle=not args.no_oracle)
            _emit(args, docs, _text_analyze(docs))
            return code
        if args.command == "random":
            summary, code = cmd_random(args.n, args.gens, args.max_exp, args.count, args.seed, cfg,
                                       n_max=n_max, planted=args.planted,
                                       with_oracle=not args.no_oracle, corpus_out=args.corpus_dir)
            _emit(args, summary, _text_random(summary))
            return code
        rows = cmd_compare(args.path, cfg, n_max)
        _emit(args, rows, _text_compare(rows))
        return EXIT_OK
    except InputError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UnsupportedDimension as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_DIM
    except TheoremViolation as exc:
        print(f"DEFECT: {exc}", file=sys.stderr)
        return EXIT_DEFECT
    except StabilizationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STABILIZE


if __name__ == "__main__":
    sys.exit(main())
