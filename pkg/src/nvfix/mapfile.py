"""JSON map files and region strings.

Rationals are always strings ``"p/q"`` or ``"p"`` (JSON integers are also
accepted); floats are rejected so nothing is ever rounded.
"""
from __future__ import annotations

import hashlib
import json
import re
from fractions import Fraction
from pathlib import Path

from .errors import InvalidMap, ParseError
from .nmap import NValuedCircleMap, PLFunction
from .regions import Arc, OpenArcSet

_RATIONAL = re.compile(r"\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(value, where: str = "value") -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError(f"{where}: expected a rational string like '3/4', got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise ParseError(f"{where}: expected a rational string, got {type(value).__name__}")
    m = _RATIONAL.match(value)
    if not m:
        raise ParseError(f"{where}: cannot parse {value!r} as p/q")
    if m.group(2) is not None and int(m.group(2)) == 0:
        raise ParseError(f"{where}: zero denominator in {value!r}")
    return Fraction(int(m.group(1)), int(m.group(2) or 1))


def map_to_dict(fmap: NValuedCircleMap) -> dict:
    return {
        "n": fmap.n,
        "strands": [{"breakpoints": [[format_rational(t), format_rational(v)] for t, v in s.breakpoints]}
                    for s in fmap.strands],
        "monodromy": list(fmap.monodromy),
    }


def map_from_dict(doc) -> NValuedCircleMap:
    if not isinstance(doc, dict):
        raise ParseError("map document must be a JSON object")
    unknown = set(doc) - {"n", "strands", "monodromy"}
    if unknown:
        raise ParseError(f"unknown field(s): {sorted(unknown)}")
    if "strands" not in doc or not isinstance(doc["strands"], list):
        raise ParseError("field 'strands' must be a list")
    strands = []
    for i, s in enumerate(doc["strands"]):
        if not isinstance(s, dict) or not isinstance(s.get("breakpoints"), list):
            raise ParseError(f"strands[{i}]: expected an object with a 'breakpoints' list")
        pts = []
        for k, bp in enumerate(s["breakpoints"]):
            where = f"strands[{i}].breakpoints[{k}]"
            if not isinstance(bp, list) or len(bp) != 2:
                raise ParseError(f"{where}: expected a [t, v] pair")
            pts.append((parse_rational(bp[0], where + "[0]"), parse_rational(bp[1], where + "[1]")))
        try:
            strands.append(PLFunction(tuple(pts)))
        except InvalidMap as exc:
            raise ParseError(f"strands[{i}]: {exc}") from exc
    n = doc.get("n", len(strands))
    if isinstance(n, bool) or not isinstance(n, int) or n != len(strands):
        raise ParseError(f"field 'n' = {n!r} does not match {len(strands)} strands")
    sigma = doc.get("monodromy")
    if sigma is not None and (not isinstance(sigma, list)
                              or not all(isinstance(k, int) and not isinstance(k, bool) for k in sigma)):
        raise ParseError("field 'monodromy' must be a list of integers")
    try:
        return NValuedCircleMap(tuple(strands), None if sigma is None else tuple(sigma))
    except InvalidMap as exc:
        raise ParseError(str(exc)) from exc


def dumps_map(fmap: NValuedCircleMap) -> str:
    return json.dumps(map_to_dict(fmap), indent=2) + "\n"


def loads_map(text: str) -> NValuedCircleMap:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return map_from_dict(doc)


def load_map(path) -> NValuedCircleMap:
    path = Path(path)
    try:
        return loads_map(path.read_text(encoding="utf-8"))
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def map_digest(fmap: NValuedCircleMap) -> str:
    """Short stable content hash used to identify maps in reports."""
    blob = json.dumps(map_to_dict(fmap), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def parse_region(text: str) -> OpenArcSet:
    """``"all"``, ``"empty"``, or comma-separated ``start+length`` arcs."""
    text = text.strip()
    if text == "all":
        return OpenArcSet.whole()
    if text in ("empty", ""):
        return OpenArcSet.empty()
    arcs = []
    for k, part in enumerate(text.split(",")):
        if part.count("+") != 1:
            raise ParseError(f"region arc {k}: expected 'start+length', got {part!r}")
        s, L = part.split("+")
        try:
            arcs.append(Arc(parse_rational(s, f"region arc {k} start"),
                            parse_rational(L, f"region arc {k} length")))
        except InvalidMap as exc:
            raise ParseError(f"region arc {k}: {exc}") from exc
    try:
        return OpenArcSet(tuple(arcs))
    except InvalidMap as exc:
        raise ParseError(f"region: {exc}") from exc


def format_region(region: OpenArcSet) -> str:
    if region.whole_circle:
        return "all"
    if not region.arcs:
        return "empty"
    return ",".join(f"{format_rational(a.start)}+{format_rational(a.length)}" for a in region.arcs)
