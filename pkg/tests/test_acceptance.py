"""Acceptance criteria, all at tolerance 0.

Each test prints one ``PASS``/``FAIL`` line.  Run directly with
``python tests/test_acceptance.py`` for the summary alone.
"""
from __future__ import annotations

import random
import subprocess
import sys
import tempfile
import time
from pathlib import Path

import pytest

from nvfix.covering import CyclicCover, lift_map, verify_averaging, verify_lefschetz_averaging
from nvfix.harness import (
    CROSSING,
    NEGATIVE_CONTROLS,
    SCHIRMER,
    averaging_grid,
    differential_uniqueness,
    generate_corpus,
    random_pl_map,
    run_axiom_suites,
    run_averaging_suite,
    run_product_suite,
    run_splitting_infrastructure,
)
from nvfix.index import fixed_points, index_crossing, index_schirmer
from nvfix.lefschetz import lefschetz
from nvfix.nmap import linear_map
from nvfix.regions import OpenArcSet

WHOLE = OpenArcSet.whole()
GRID = [(n, d) for n in (1, 2, 3, 4) for d in range(-8, 9)]


def criterion_1():
    t0 = time.perf_counter()
    bad = []
    for n, d in GRID:
        f = linear_map(n, d)
        if not (index_schirmer(f, WHOLE) == index_crossing(f, WHOLE) == n - d):
            bad.append((n, d, "index"))
        if d != n and len(fixed_points(f).points) != abs(n - d):
            bad.append((n, d, "count"))
    elapsed = time.perf_counter() - t0
    return not bad and elapsed < 5, f"{len(GRID)} maps, {len(bad)} mismatches, {elapsed:.2f} s"


def criterion_2():
    maps = [linear_map(n, d) for n, d in GRID]
    maps += [random_pl_map(random.Random(f"crabb:{k}")) for k in range(100)]
    bad = [k for k, f in enumerate(maps) if lefschetz(f).value != index_schirmer(f, WHOLE)]
    return not bad, f"{len(maps)} maps, {len(bad)} mismatches"


def criterion_3():
    t0 = time.perf_counter()
    corpus = generate_corpus(7, 100)
    fails = {}
    for cand in (SCHIRMER, CROSSING):
        for name, rep in run_axiom_suites(cand, corpus).items():
            if not rep.entries or not rep.passed:
                fails[(cand.name, name)] = len(rep.failures)
    rejected = {}
    for ctrl in NEGATIVE_CONTROLS:
        rejected[ctrl.name] = sorted(n for n, r in run_axiom_suites(ctrl, corpus).items() if not r.passed)
    elapsed = time.perf_counter() - t0
    ok = not fails and all(rejected.values()) and elapsed < 60
    return ok, f"candidate failures {fails or 0}, controls rejected by {rejected}, {elapsed:.1f} s"


def criterion_4():
    corpus = generate_corpus(7, 500)
    seam = sum(1 for c in corpus for a in c.region.arcs if a.crosses_seam())
    multi = sum(1 for c in corpus if len(c.region.arcs) > 1)
    rep = differential_uniqueness(SCHIRMER, CROSSING, corpus)
    ok = rep.passed and len(rep.entries) == 500 and seam > 0 and multi > 0
    return ok, f"500 cases ({seam} seam-crossing arcs, {multi} multi-arc regions), {len(rep.failures)} divergences"


def criterion_5():
    lifted = 0
    for n, d, k in averaging_grid():
        base, cover = linear_map(n, d), CyclicCover(k)
        lifts = lift_map(base, cover)
        if not lifts:
            continue
        lifted += 1
        r = verify_averaging(base, cover, WHOLE, lifts)
        if not (r.passed and r.divisible and verify_lefschetz_averaging(base, cover, lifts).passed):
            return False, f"averaging fails at (n, d, k) = ({n}, {d}, {k})"
    suite = run_averaging_suite(7)
    named = verify_averaging(linear_map(1, 2), CyclicCover(3), WHOLE)
    ok = suite.passed and named.per_translate == (-1, -1, -1) and named.deck_sum // 3 == -1
    return ok, (f"{lifted} lifted grid cells, {len(suite.entries)} suite checks, "
                f"(1,2,k=3) per-translate {named.per_translate}")


def criterion_6():
    t0 = time.perf_counter()
    rep = run_product_suite(7, 200)
    elapsed = time.perf_counter() - t0
    kinds = {}
    for e in rep.entries:
        kinds.setdefault(e.case_id.split("/")[-1], 0)
        kinds[e.case_id.split("/")[-1]] += 1
    named = {e.case_id: e.got for e in rep.entries if e.case_id.startswith("named/")}
    ok = (rep.passed and kinds.get("formula") == 200 and kinds.get("lefschetz") == 200
          and kinds.get("cross-terms", 0) > 0 and sorted(named.values()) == [-1, 4] and elapsed < 60)
    return ok, f"{len(rep.entries)} checks {kinds}, {len(rep.failures)} failures, {elapsed:.1f} s"


def criterion_7():
    rep = run_splitting_infrastructure(7, 100)
    arcs = [e for e in rep.entries if e.case_id.endswith("/arc")]
    seam = sum(1 for e in arcs if e.inputs["seam"])
    splits = [e for e in rep.entries if e.case_id.endswith("/is_split")]
    ok = rep.passed and len(arcs) == 100 and seam > 0 and splits
    return ok, f"{len(arcs)} arcs ({seam} seam-crossing), {len(splits)} split checks, {len(rep.failures)} failures"


def criterion_8():
    with tempfile.TemporaryDirectory() as tmp:
        outs, codes = [], []
        for k in range(2):
            path = Path(tmp) / f"r{k}.json"
            proc = subprocess.run([sys.executable, "-m", "nvfix.cli", "verify", "--suite", "all",
                                   "--seed", "7", "--cases", "100", "--json", str(path)],
                                  capture_output=True, text=True)
            codes.append(proc.returncode)
            outs.append(path.read_bytes() if path.exists() else b"")
    ok = codes == [0, 0] and outs[0] == outs[1] and outs[0] != b""
    return ok, f"exit codes {codes}, identical JSON = {outs[0] == outs[1]} ({len(outs[0])} bytes)"


CRITERIA = {
    1: ("linear-map grid", criterion_1),
    2: ("Lefschetz equals index", criterion_2),
    3: ("axiom suites and negative controls", criterion_3),
    4: ("differential uniqueness", criterion_4),
    5: ("averaging over the deck group", criterion_5),
    6: ("product formula", criterion_6),
    7: ("splitting infrastructure", criterion_7),
    8: ("CLI determinism", criterion_8),
}


def run_criterion(number: int):
    title, fn = CRITERIA[number]
    ok, detail = fn()
    line = f"{'PASS' if ok else 'FAIL'} criterion {number} ({title}): {detail}"
    return ok, line


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    ok, line = run_criterion(number)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(k) for k in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
