"""Command-line front end.

Exit codes: 0 success, 1 a checked identity failed, 2 usage or parse error,
3 inadmissible input.  Rationals are read and printed as ``p/q`` strings.
"""
from __future__ import annotations

import argparse
import functools
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import harness
from .covering import (DEFAULT_MAX_LIFT_ENUM, CyclicCover, deck_orbits, lift_map,
                       verify_averaging, verify_lefschetz_averaging)
from .errors import InvalidMap, NoLiftExists, NotAdmissible, ParseError
from .index import fix_finite_perturb, fixed_points, index_crossing, index_schirmer, is_admissible
from .lefschetz import lefschetz
from .mapfile import dumps_map, format_rational, format_region, load_map, map_digest, parse_region
from .nmap import is_split, total_degree, validate
from .product import ProductRegion, TorusProductMap, verify_product_formula

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INADMISSIBLE = 0, 1, 2, 3
SUITES = ("axioms", "averaging", "product", "uniqueness")
CANDIDATES = {c.name: c for c in (harness.SCHIRMER, harness.CROSSING, *harness.NEGATIVE_CONTROLS)}


class UsageError(Exception):
    pass


def _fmt(x) -> str:
    return format_rational(x) if isinstance(x, Fraction) else str(x)


def _load_checked(path):
    fmap = load_map(path)
    report = validate(fmap)
    if not report.ok:
        raise ParseError(f"{path}: " + "; ".join(v.detail for v in report.violations))
    return fmap


def _region(text, flag="--region"):
    try:
        return parse_region(text)
    except ParseError as exc:
        raise ParseError(f"{flag}: {exc}") from exc


# ---------------------------------------------------------------- map commands

def cmd_validate(args, out) -> int:
    fmap = load_map(args.map)
    report = validate(fmap)
    if report.ok:
        print(f"valid: n = {fmap.n}, degree = {total_degree(fmap)}, "
              f"split = {str(is_split(fmap)).lower()}, digest = {map_digest(fmap)}", file=out)
        return EXIT_OK
    for v in report.violations:
        print(f"violation [{v.kind}] strands {list(v.strands)}: {v.detail}", file=out)
    return EXIT_FAIL


def cmd_fix(args, out) -> int:
    fmap = _load_checked(args.map)
    if args.perturb:
        fmap, _ = fix_finite_perturb(fmap)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(dumps_map(fmap))
    fps = fixed_points(fmap)
    for p in fps.points:
        tag = " (non-transverse)" if p.degenerate else ""
        print(f"x = {_fmt(p.location)}  strand {p.strand}  slopes {_fmt(p.slope_left)}, {_fmt(p.slope)}"
              f"  index {p.local_index}{tag}", file=out)
    for iv in fps.intervals:
        print(f"interval [{_fmt(iv.start)}, {_fmt(iv.end)}]  strand {iv.strand}", file=out)
    print(f"fixed points = {len(fps.points)}, degenerate intervals = {len(fps.intervals)}", file=out)
    return EXIT_OK


def cmd_index(args, out) -> int:
    fmap = _load_checked(args.map)
    region = _region(args.region)
    if not is_admissible(fmap, region):
        raise NotAdmissible(f"region {format_region(region)} has a fixed point on its boundary")
    if args.algorithm == "schirmer":
        print(f"index = {index_schirmer(fmap, region)}", file=out)
    elif args.algorithm == "crossing":
        print(f"index = {index_crossing(fmap, region)}", file=out)
    else:
        a, b = index_schirmer(fmap, region), index_crossing(fmap, region)
        if a != b:
            print(f"DISAGREE: schirmer = {a}, crossing = {b}", file=out)
            return EXIT_FAIL
        print(f"index = {a} (schirmer = crossing)", file=out)
    return EXIT_OK


def cmd_lefschetz(args, out) -> int:
    fmap = _load_checked(args.map)
    L = lefschetz(fmap)
    ind = index_schirmer(fmap, parse_region("all"))
    parts = [f"degree formula = {L.value}"]
    if L.split_sum is not None:
        parts.append(f"split sum = {L.split_sum}")
    parts.append(f"index = {ind}")
    print(f"L = {L.value} ({', '.join(parts)})", file=out)
    return EXIT_OK if ind == L.value else EXIT_FAIL


def _lifts(args, fmap):
    if args.cover < 1:
        raise UsageError("--cover must be a positive integer")
    cover = CyclicCover(args.cover)
    try:
        return cover, lift_map(fmap, cover, args.max_lift_enum)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_lift(args, out) -> int:
    fmap = _load_checked(args.map)
    cover, lifts = _lifts(args, fmap)
    print(f"lifts = {len(lifts)} through the {cover.k}-fold cover", file=out)
    for j, lift in enumerate(lifts):
        starts = ", ".join(_fmt(s(0)) for s in lift.map.strands)
        print(f"lift {j}: digest {map_digest(lift.map)}, strand starts [{starts}], "
              f"monodromy {list(lift.map.monodromy)}", file=out)
    if lifts:
        print(f"deck orbits = {len(deck_orbits(lifts))}", file=out)
    return EXIT_OK


def cmd_average(args, out) -> int:
    fmap = _load_checked(args.map)
    region = _region(args.region)
    cover, lifts = _lifts(args, fmap)
    if not lifts:
        raise NoLiftExists(f"no lift through the {cover.k}-fold cover")
    r = verify_averaging(fmap, cover, region, lifts)
    lr = verify_lefschetz_averaging(fmap, cover, lifts)
    per = ", ".join(str(x) for x in r.per_translate)
    print(f"per-translate indices = ({per})", file=out)
    print(f"deck sum = {r.deck_sum}, k = {r.k}, base index = {r.base_index}", file=out)
    print(f"averaging {'PASS' if r.passed else 'FAIL'}; lefschetz averaging "
          f"{'PASS' if lr.passed else 'FAIL'}", file=out)
    return EXIT_OK if r.passed and lr.passed else EXIT_FAIL


def cmd_product(args, out) -> int:
    f, g = _load_checked(args.f), _load_checked(args.g)
    region = ProductRegion(_region(args.region_u, "--region-u"), _region(args.region_v, "--region-v"))
    r = verify_product_formula(TorusProductMap(f, g), region)
    print(f"direct torus index = {r.direct}", file=out)
    print(f"ind(f, U) = {r.index_f}, ind(g, V) = {r.index_g}, product = {r.index_f * r.index_g}", file=out)
    print(f"product formula {'PASS' if r.passed else 'FAIL'}", file=out)
    return EXIT_OK if r.passed else EXIT_FAIL


# ---------------------------------------------------------------- verify

@functools.lru_cache(maxsize=4)
def _corpus(seed, cases, config):
    return harness.generate_corpus(seed, cases, config)


def _run_task(task):
    """Run one unit of suite work; module level so it can cross process boundaries."""
    kind, seed, cases, config, *rest = task
    if kind == "axiom":
        cand, suite = rest
        return harness.AXIOM_SUITES[suite](CANDIDATES[cand], _corpus(seed, cases, config))
    if kind == "control":
        return harness.negative_control_report([CANDIDATES[rest[0]]], _corpus(seed, cases, config))
    if kind == "split_infra":
        return harness.run_splitting_infrastructure(seed, cases, config)
    if kind == "uniqueness":
        return harness.differential_uniqueness(harness.SCHIRMER, harness.CROSSING,
                                               _corpus(seed, cases, config))
    if kind == "averaging":
        return harness.run_averaging_suite(seed)
    if kind == "product":
        return harness.run_product_suite(seed, cases, config)
    raise ValueError(f"unknown task {kind!r}")


def verify_tasks(suite, seed, cases, config) -> list:
    chosen = SUITES if suite == "all" else (suite,)
    tasks = []
    for name in chosen:
        base = (seed, cases, config)
        if name == "axioms":
            tasks += [("axiom", *base, c.name, s) for c in (harness.SCHIRMER, harness.CROSSING)
                      for s in harness.AXIOM_SUITES]
            tasks += [("control", *base, c.name) for c in harness.NEGATIVE_CONTROLS]
            tasks.append(("split_infra", *base))
        else:
            tasks.append((name, *base))
    return tasks


def worker_count() -> int:
    raw = os.environ.get("NVFIX_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"NVFIX_THREADS must be an integer, got {raw!r}") from None
    if n < 1:
        raise UsageError("NVFIX_THREADS must be at least 1")
    return n


def run_verify(suite, seed, cases, config=harness.DEFAULT_CONFIG, workers=1) -> list:
    """All suite reports, in a fixed order independent of scheduling."""
    tasks = verify_tasks(suite, seed, cases, config)
    if workers == 1 or len(tasks) == 1:
        return [_run_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
        return list(pool.map(_run_task, tasks))


def _natural(case_id: str):
    return [(0, int(p), "") if p.isdigit() else (1, 0, p) for p in case_id.split("/")]


def _json_default(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, (tuple, frozenset, set)):
        return sorted(x) if not isinstance(x, tuple) else list(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def build_report(params: dict, reports: list) -> dict:
    summary, entries = [], []
    for rep in reports:
        summary.append({"suite": rep.suite, "candidate": rep.candidate, "checks": len(rep.entries),
                        "failures": len(rep.failures), "pass": rep.passed})
        for e in sorted(rep.entries, key=lambda e: _natural(e.case_id)):
            entries.append({"candidate": rep.candidate, **e.as_dict()})
    failures = sum(s["failures"] for s in summary)
    return {"params": params, "summary": summary, "failures": failures,
            "pass": failures == 0, "entries": entries}


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=1, sort_keys=True, default=_json_default) + "\n"


def cmd_verify(args, out) -> int:
    if args.cases < 0:
        raise UsageError("--cases must be non-negative")
    try:
        config = harness.GeneratorConfig(args.max_strands, args.max_breakpoints, args.max_denominator)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    workers = worker_count()
    t0 = time.perf_counter()
    reports = run_verify(args.suite, args.seed, args.cases, config, workers)
    elapsed = time.perf_counter() - t0
    params = {"suite": args.suite, "seed": args.seed, "cases": args.cases,
              "max_strands": config.max_strands, "max_breakpoints": config.max_breakpoints,
              "max_denominator": config.max_denominator}
    report = build_report(params, reports)
    for s in report["summary"]:
        status = "PASS" if s["pass"] else "FAIL"
        print(f"{status} {s['suite']:<16} {s['candidate']:<32} {s['checks']:>5} checks, "
              f"{s['failures']} failures", file=out)
    print(f"total failures = {report['failures']}  ({elapsed:.1f} s, {workers} worker(s))", file=out)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(dumps_report(report))
    return EXIT_OK if report["pass"] else EXIT_FAIL


# ---------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nvfix", description="Exact fixed point indices of PL n-valued circle maps.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("validate", help="check strand distinctness and closure")
    sp.add_argument("map")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("fix", help="list fixed points and degenerate intervals")
    sp.add_argument("map")
    sp.add_argument("--perturb", action="store_true", help="first replace fixed intervals by transverse points")
    sp.add_argument("--out", help="write the perturbed map here (with --perturb)")
    sp.set_defaults(func=cmd_fix)

    sp = sub.add_parser("index", help="local fixed point index over a region")
    sp.add_argument("map")
    sp.add_argument("--region", default="all")
    sp.add_argument("--algorithm", choices=("schirmer", "crossing", "both"), default="schirmer")
    sp.set_defaults(func=cmd_index)

    sp = sub.add_parser("lefschetz", help="Lefschetz number and its agreement with the index")
    sp.add_argument("map")
    sp.set_defaults(func=cmd_lefschetz)

    for name, func, hlp in (("lift", cmd_lift, "enumerate lifts through a cyclic cover"),
                            ("average", cmd_average, "check the deck-group averaging identity")):
        sp = sub.add_parser(name, help=hlp)
        sp.add_argument("map")
        sp.add_argument("--cover", type=int, required=True, metavar="K")
        sp.add_argument("--max-lift-enum", type=int, default=DEFAULT_MAX_LIFT_ENUM, metavar="N")
        if name == "average":
            sp.add_argument("--region", default="all")
        sp.set_defaults(func=func)

    sp = sub.add_parser("product", help="torus index of f x g against the product of 1D indices")
    sp.add_argument("f")
    sp.add_argument("g")
    sp.add_argument("--region-u", default="all")
    sp.add_argument("--region-v", default="all")
    sp.set_defaults(func=cmd_product)

    sp = sub.add_parser("verify", help="run the seeded verification suites")
    sp.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    sp.add_argument("--seed", type=int, default=7)
    sp.add_argument("--cases", type=int, default=100)
    sp.add_argument("--json", metavar="PATH", help="write the deterministic report here")
    sp.add_argument("--max-strands", type=int, default=harness.DEFAULT_MAX_STRANDS)
    sp.add_argument("--max-breakpoints", type=int, default=harness.DEFAULT_MAX_BREAKPOINTS)
    sp.add_argument("--max-denominator", type=int, default=harness.DEFAULT_MAX_DENOMINATOR)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, InvalidMap, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotAdmissible as exc:
        print(f"inadmissible: {exc}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    except NoLiftExists as exc:
        print(f"no lift: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except AssertionError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
