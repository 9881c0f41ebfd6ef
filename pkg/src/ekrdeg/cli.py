"""Command-line front end.

JSON reports go to stdout, a one-line human summary to stderr.  The exit
status is 0 iff no entry failed.  Grid scans run in parallel worker
processes when EKRDEG_WORKERS is set above 1; output order never depends on it.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import families as fam
from . import lemmas
from .report import LemmaReport, Sense, fraction_str
from .scheme import kneser_quadratic, spectral_profile
from .search import SearchProblem, Status, scan_theorem, search_min_degree

SELECTORS = ("lemma31", "lemma32", "lemma33", "claims", "hahn", "technical", "factorization")

# selector -> (scan function, default kmax, default nmax)
GRIDS = {
    "lemma31": (lemmas.scan_lemma31, 25, 80),
    "claims": (lemmas.scan_claims, 20, 80),
    "hahn": (lemmas.scan_hahn, 20, 40),
    "technical": (lemmas.scan_technical, 20, 80),
    "factorization": (lemmas.scan_factorization, 15, 60),
}

SUMMARY_KEYS = ("pass", "fail", "equality", "out_of_range", "witness", "exhausted", "capped")

REPORT_SCHEMA = {
    "type": "object",
    "required": ["command", "params", "entries", "summary", "wall_time"],
    "properties": {
        "command": {"type": "array", "items": {"type": "string"}},
        "params": {"type": "object"},
        "entries": {"type": "array", "items": {"type": "object"}},
        "summary": {
            "type": "object",
            "required": list(SUMMARY_KEYS) + ["total"],
            "properties": {key: {"type": "integer", "minimum": 0} for key in SUMMARY_KEYS + ("total",)},
        },
        "wall_time": {"type": "number", "minimum": 0},
        "error": {"type": "string"},
    },
}


def workers() -> int:
    try:
        return max(1, int(os.environ.get("EKRDEG_WORKERS", "1")))
    except ValueError:
        return 1


def tally(entries: list[dict]) -> dict:
    out = {key: 0 for key in SUMMARY_KEYS}
    for e in entries:
        for key in ("verdict", "status"):
            if key in e and e[key] in out:
                out[e[key]] += 1
    out["total"] = len(entries)
    return out


def _scan_chunk(selector: str, k: int, nmax: int) -> list[dict]:
    fn = GRIDS[selector][0]
    return [r.to_json() for r in fn(kmin=k, kmax=k, nmax=nmax)]


def run_grid(selector: str, kmax: int, nmax: int) -> list[dict]:
    ks = list(range(1, kmax + 1))
    if workers() > 1:
        with ProcessPoolExecutor(workers()) as pool:
            chunks = pool.map(_scan_chunk, [selector] * len(ks), ks, [nmax] * len(ks))
            return [e for chunk in chunks for e in chunk]
    return [e for k in ks for e in _scan_chunk(selector, k, nmax)]


def family_suite(seed: int, count: int, intersecting: bool):
    """Named families plus seeded random ones, as (label, family, d) triples."""
    import random

    rng = random.Random(seed)
    named = [("star(5,2,{1})", fam.star(5, 2, [1]), 1),
             ("fano", fam.fano(), 1), ("fano", fam.fano(), 2),
             ("star(7,3,{1})", fam.star(7, 3, [1]), 2)]
    if not intersecting:
        named.append(("design_2_6_3_2", fam.design_2_6_3_2(), 2))
        named.append(("complete(7,3)", fam.complete(7, 3), 2))
    yield from named
    for idx in range(count):
        k = rng.randint(2, 4)
        n = rng.randint(2 * k + 1, 2 * k + 5)
        d = rng.randint(1, k - 1)
        if intersecting:
            F = fam.random_intersecting_family(n, k, rng)
        else:
            F = fam.random_family(n, k, rng)
        yield f"random#{idx}", F, d


def _suite_entries(selector: str, seed: int, count: int) -> list[dict]:
    out = []
    if selector == "lemma32":
        for label, F, d in family_suite(seed, count, intersecting=True):
            rep = lemmas.hoffman_slack(F, d)
            out.append(dict(rep.to_json(), family=label))
    else:
        for label, F, d in family_suite(seed, count, intersecting=False):
            raw, spectral = lemmas.degree_quadratic_routes(F, d)
            rep = LemmaReport("lemma33_routes", {"n": F.n, "k": F.k, "d": d, "size": len(F)},
                              raw, spectral, Sense.EQ)
            out.append(dict(rep.to_json(), family=label))
    return out


def _emit(args, report: dict) -> int:
    fails = report["summary"]["fail"]
    if getattr(args, "format", "json") == "csv":
        columns: list[str] = []
        for e in report["entries"]:
            columns.extend(key for key in e if key not in columns and key != "details")
        w = csv.writer(sys.stdout)
        w.writerow(columns)
        for e in report["entries"]:
            w.writerow([v if isinstance(v, (str, int, float)) or v is None else json.dumps(v)
                        for v in (e.get(c) for c in columns)])
    else:
        if getattr(args, "summary_only", False):
            report = dict(report, entries=[e for e in report["entries"] if e.get("verdict") == "fail"])
        json.dump(report, sys.stdout, indent=None if len(report["entries"]) > 50 else 2)
        sys.stdout.write("\n")
    s = report["summary"]
    parts = ", ".join(f"{k}={v}" for k, v in s.items() if v)
    print(f"[{' '.join(report['command'])}] {parts or 'no entries'}; {report['wall_time']:.2f}s",
          file=sys.stderr)
    return 0 if fails == 0 and "error" not in report else 1


def _report(argv, params, entries, start, **extra) -> dict:
    rep = {"command": list(argv), "params": params, "entries": entries,
           "summary": tally(entries), "wall_time": time.monotonic() - start}
    rep.update(extra)
    return rep


# -- commands --------------------------------------------------------------------

def cmd_verify(args, argv) -> int:
    start = time.monotonic()
    selected = SELECTORS if args.lemma == "all" else (args.lemma,)
    entries = []
    params = {"lemma": args.lemma, "seed": args.seed, "families": args.families}
    for sel in selected:
        if sel in GRIDS:
            _, kdef, ndef = GRIDS[sel]
            kmax = args.kmax if args.kmax is not None else kdef
            nmax = args.nmax if args.nmax is not None else ndef
            params[sel] = {"kmax": kmax, "nmax": nmax}
            entries.extend(run_grid(sel, kmax, nmax))
        else:
            entries.extend(_suite_entries(sel, args.seed, args.families))
    return _emit(args, _report(argv, params, entries, start))


def cmd_profile(args, argv) -> int:
    start = time.monotonic()
    F = fam.load_family(args.family)
    prof = spectral_profile(F)
    combinatorial, spectral = kneser_quadratic(F, prof)
    checks = prof.invariant_checks()
    checks["kneser_quadratic_agrees"] = combinatorial == spectral
    entry = {
        "n": F.n, "k": F.k, "size": len(F),
        "norms": [fraction_str(x) for x in prof.norms],
        "kneser_quadratic": combinatorial,
        "checks": checks,
        "verdict": "pass" if all(checks.values()) else "fail",
    }
    return _emit(args, _report(argv, {"family": args.family}, [entry], start))


def cmd_check(args, argv) -> int:
    start = time.monotonic()
    F = fam.load_family(args.family)
    pair = fam.disjoint_pair(F)
    if pair is not None:
        entry = {"intersecting": False, "witness": [list(p.elements) for p in pair], "verdict": "fail"}
        return _emit(args, _report(argv, {"family": args.family, "d": args.d}, [entry], start,
                                   error="family is not intersecting"))
    rep = lemmas.theorem_check(F, args.d)
    entry = dict(rep.to_json(), intersecting=True, min_degree=int(rep.lhs), bound=int(rep.rhs))
    return _emit(args, _report(argv, {"family": args.family, "d": args.d}, [entry], start))


def cmd_search(args, argv) -> int:
    start = time.monotonic()
    p = SearchProblem(args.n, args.k, args.d, args.target, symmetry_pruning=not args.no_symmetry,
                      node_limit=args.node_limit, time_limit=args.time_limit)
    out = search_min_degree(p)
    if out.status is Status.WITNESS and args.out:
        fam.save_family(out.witness, args.out)
    entry = dict(out.to_json(), n=p.n, k=p.k, d=p.d, target=p.target)
    params = {"n": p.n, "k": p.k, "d": p.d, "target": p.target,
              "symmetry_pruning": p.symmetry_pruning, "node_limit": p.node_limit,
              "time_limit": p.time_limit, "out": args.out}
    return _emit(args, _report(argv, params, [entry], start))


def cmd_coeffs(args, argv) -> int:
    start = time.monotonic()
    cs = lemmas.coefficients(args.n, args.k, args.d)
    entries = [dict(cs.to_json(), verdict="pass")]
    for rep in (lemmas.claim1(args.n, args.k, args.d), lemmas.claim3(args.n, args.k, args.d)):
        entries.append(rep.to_json())
    for i in range(2, args.d + 1):
        if i % 2 == 0 or args.n >= 2 * args.k + 2 * args.d - 3:
            entries.append(lemmas.claim2(args.n, args.k, args.d, i).to_json())
    return _emit(args, _report(argv, {"n": args.n, "k": args.k, "d": args.d}, entries, start))


def cmd_scan_theorem(args, argv) -> int:
    start = time.monotonic()
    rows = scan_theorem(args.nmax, args.kmax, args.dmax, args.max_candidates,
                        symmetry_pruning=not args.no_symmetry, time_limit=args.time_limit)
    params = {"nmax": args.nmax, "kmax": args.kmax, "dmax": args.dmax,
              "max_candidates": args.max_candidates}
    return _emit(args, _report(argv, params, rows, start))


def cmd_chvatal(args, argv) -> int:
    start = time.monotonic()
    ns = args.n or [3, 5, 7]
    entries = [fam.chvatal_check(n, args.d).to_json() for n in ns]
    return _emit(args, _report(argv, {"n": ns, "d": args.d}, entries, start))


def cmd_catalog(args, argv) -> int:
    start = time.monotonic()
    if args.name == "upper_half":
        F = fam.upper_half(args.n or 5)
    elif args.name == "star":
        if args.n is None or args.k is None or not args.centre:
            raise ValueError("catalog star needs --n, --k and at least one --centre")
        F = fam.star(args.n, args.k, args.centre)
    else:
        F = fam.catalog()[args.name]
    if args.out:
        fam.save_family(F, args.out)
    entry = dict(fam.family_to_json(F), verdict="pass")
    return _emit(args, _report(argv, {"name": args.name}, [entry], start))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ekrdeg",
        description="Exact spectral verification of the d-degree Erdos-Ko-Rado bound.",
        epilog="Set EKRDEG_WORKERS=N to scan grids with N processes.")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="scan a lemma over its parameter grid",
                       description="Default grids: lemma31 k<=25 n<=80; claims and technical "
                                   "k<=20 n<=80; hahn n<=40; factorization k<=15 n<=60; "
                                   "lemma32/lemma33 run on named plus --families seeded random families.")
    v.add_argument("--lemma", choices=SELECTORS + ("all",), default="all")
    v.add_argument("--kmax", type=int)
    v.add_argument("--nmax", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--families", type=int, default=100, help="random families for lemma32/lemma33")
    v.add_argument("--format", choices=("json", "csv"), default="json")
    v.add_argument("--summary-only", action="store_true", help="omit passing entries from JSON")
    v.set_defaults(func=cmd_verify)

    p = sub.add_parser("profile", help="spectral profile of a uniform family file")
    p.add_argument("family")
    p.set_defaults(func=cmd_profile)

    c = sub.add_parser("check", help="check the d-degree bound on a family file")
    c.add_argument("family")
    c.add_argument("--d", type=int, default=2)
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("search", help="branch-and-bound for an intersecting family with delta_d >= target")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--target", type=int, required=True)
    s.add_argument("--no-symmetry", action="store_true")
    s.add_argument("--time-limit", type=float)
    s.add_argument("--node-limit", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_search)

    k = sub.add_parser("coeffs", help="coefficients a_i, b_i, c, f, g and the three claims")
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--k", type=int, required=True)
    k.add_argument("--d", type=int, required=True)
    k.set_defaults(func=cmd_coeffs)

    t = sub.add_parser("scan-theorem", help="search every small (n,k,d) for a family beating the bound",
                       description="Default: all n >= 2k, 2 <= d < k with C(n,k) <= 40 and d = 2.")
    t.add_argument("--nmax", type=int, default=12)
    t.add_argument("--kmax", type=int, default=6)
    t.add_argument("--dmax", type=int, default=2)
    t.add_argument("--max-candidates", type=int, default=40)
    t.add_argument("--no-symmetry", action="store_true")
    t.add_argument("--time-limit", type=float)
    t.add_argument("--format", choices=("json", "csv"), default="json")
    t.set_defaults(func=cmd_scan_theorem)

    h = sub.add_parser("chvatal", help="upper half of 2^[n] against the point stars")
    h.add_argument("--n", type=int, action="append")
    h.add_argument("--d", type=int, default=1)
    h.set_defaults(func=cmd_chvatal)

    g = sub.add_parser("catalog", help="print or save a named family")
    g.add_argument("name", choices=("design_2_6_3_2", "fano", "upper_half", "star"))
    g.add_argument("--n", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--centre", type=int, action="append", default=None)
    g.add_argument("--out")
    g.set_defaults(func=cmd_catalog)
    return ap


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, argv)
    except (ValueError, OSError) as e:
        print(f"ekrdeg: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
