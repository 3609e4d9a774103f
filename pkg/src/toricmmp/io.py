"""JSON documents for fans, divisors and star-closed subsets.

Rationals are written as strings "p/q" (or "p"); floating literals are
rejected so that files stay exact.

FanDocument::

    {"dim": 2, "rays": [[1, 0], [0, 1], [-1, -1]], "cones": [[0, 1], [1, 2], [2, 0]],
     "labels": ["x", "y", "z"]}

DivisorDocument::

    {"coeffs": ["1", "0", "1/2"]}          # aligned with the fan document's rays
    {"coeffs": {"x": "1", "z": "1/2"}}     # or keyed by ray label

SubsetDocument::

    {"cones": [[0], [1, 2]]}               # ray-index lists of the generating cones
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .divisor import Divisor
from .fan import Fan, FanError, StarClosedSubset, fan_from_indices, star_of


class ParseError(ValueError):
    """Malformed document; ``location`` names the offending field."""

    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


@dataclass
class FanDocument:
    fan: Fan
    rays: list[tuple[int, ...]]  # document order
    labels: list[str] = field(default_factory=list)

    def index_of(self, key) -> int:
        if isinstance(key, int):
            return key
        if key in self.labels:
            return self.labels.index(key)
        raise ParseError(f"unknown ray label {key!r}")


def parse_rational(x, where: str) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise ParseError("rationals must be integers or 'p/q' strings", where)
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            if any(c in x for c in ".eE"):
                raise ValueError
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"malformed rational {x!r}", where) from None
    raise ParseError(f"expected a rational, got {type(x).__name__}", where)


def _int(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ParseError(f"expected an integer, got {x!r}", where)
    return x


def _load(source) -> dict:
    if isinstance(source, dict):
        return source
    text = Path(source).read_text() if not str(source).lstrip().startswith("{") else str(source)
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON ({e.msg})", f"line {e.lineno}") from None


def parse_fan(source) -> FanDocument:
    doc = _load(source)
    if not isinstance(doc, dict):
        raise ParseError("fan document must be an object")
    for key in ("rays", "cones"):
        if key not in doc:
            raise ParseError("missing field", key)
    rays = []
    for i, r in enumerate(doc["rays"]):
        if not isinstance(r, list):
            raise ParseError("ray must be a list of integers", f"rays[{i}]")
        rays.append(tuple(_int(x, f"rays[{i}][{j}]") for j, x in enumerate(r)))
    if not rays:
        raise ParseError("no rays", "rays")
    dim = _int(doc.get("dim", len(rays[0])), "dim")
    for i, r in enumerate(rays):
        if len(r) != dim:
            raise ParseError(f"ray has length {len(r)}, expected {dim}", f"rays[{i}]")
    cones = []
    for i, c in enumerate(doc["cones"]):
        if not isinstance(c, list) or not c:
            raise ParseError("cone must be a nonempty list of ray indices", f"cones[{i}]")
        for j, x in enumerate(c):
            _int(x, f"cones[{i}][{j}]")
            if not 0 <= x < len(rays):
                raise ParseError(f"index {x} out of range for {len(rays)} rays", f"cones[{i}][{j}]")
        cones.append(c)
    labels = doc.get("labels") or []
    if labels and len(labels) != len(rays):
        raise ParseError(f"{len(labels)} labels for {len(rays)} rays", "labels")
    try:
        fan = fan_from_indices(rays, cones)
    except FanError as e:
        raise ParseError(f"invalid fan: {e}", "cones") from None
    missing = [i for i, r in enumerate(rays) if r not in fan.rays]
    if missing:
        raise ParseError("ray is not primitive or not extreme in its cones", f"rays[{missing[0]}]")
    return FanDocument(fan, rays, list(labels))


def parse_divisor(source, fandoc: FanDocument) -> Divisor:
    doc = _load(source)
    if not isinstance(doc, dict) or "coeffs" not in doc:
        raise ParseError("missing field", "coeffs")
    raw = doc["coeffs"]
    coeffs = {}
    if isinstance(raw, list):
        if len(raw) != len(fandoc.rays):
            raise ParseError(f"{len(raw)} coefficients for {len(fandoc.rays)} rays", "coeffs")
        for i, x in enumerate(raw):
            coeffs[fandoc.rays[i]] = parse_rational(x, f"coeffs[{i}]")
    elif isinstance(raw, dict):
        for k, x in raw.items():
            key = int(k) if k.lstrip("-").isdigit() and k not in fandoc.labels else k
            try:
                i = fandoc.index_of(key)
            except ParseError:
                raise ParseError(f"unknown ray {k!r}", f"coeffs.{k}") from None
            if not 0 <= i < len(fandoc.rays):
                raise ParseError(f"index {i} out of range", f"coeffs.{k}")
            coeffs[fandoc.rays[i]] = parse_rational(x, f"coeffs.{k}")
    else:
        raise ParseError("coeffs must be a list or an object", "coeffs")
    return Divisor(fandoc.fan, coeffs)


def parse_subset(source, fandoc: FanDocument) -> StarClosedSubset:
    """The star closure of the listed cones."""
    doc = _load(source)
    if not isinstance(doc, dict) or "cones" not in doc:
        raise ParseError("missing field", "cones")
    phi = set()
    for i, c in enumerate(doc["cones"]):
        try:
            key = frozenset(fandoc.rays[fandoc.index_of(x)] for x in c)
        except (IndexError, ParseError):
            raise ParseError("bad ray reference", f"cones[{i}]") from None
        if key not in fandoc.fan.cones:
            raise ParseError("not a cone of the fan", f"cones[{i}]")
        phi |= star_of(fandoc.fan, key)
    return StarClosedSubset(fandoc.fan, phi)


def parse(fan_source, divisor_source=None) -> tuple[Fan, Optional[Divisor]]:
    fd = parse_fan(fan_source)
    D = parse_divisor(divisor_source, fd) if divisor_source is not None else None
    return fd.fan, D


# --------------------------------------------------------------------------
# emission


def rational_str(x) -> str:
    return str(Fraction(x))


def emit_fan(fan: Fan, labels: Optional[Sequence[str]] = None) -> dict:
    rays = list(fan.rays)
    index = {r: i for i, r in enumerate(rays)}
    doc = {
        "dim": fan.ambient,
        "rays": [list(r) for r in rays],
        "cones": sorted(sorted(index[r] for r in c.rays) for c in fan.maximal_cones),
    }
    if labels:
        doc["labels"] = list(labels)
    return doc


def emit_divisor(D: Divisor) -> dict:
    return {"coeffs": [rational_str(D[r]) for r in D.fan.rays]}


def emit_subset(subset: StarClosedSubset) -> dict:
    index = {r: i for i, r in enumerate(subset.fan.rays)}
    return {"cones": [sorted(index[r] for r in c) for c in subset.minimal_cones]}


def plain(x):
    """JSON-ready copy of engine values: rationals become "p/q" strings."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (list, tuple)):
        return [plain(y) for y in x]
    if isinstance(x, (set, frozenset)):
        return sorted((plain(y) for y in x), key=repr)
    if isinstance(x, dict):
        return {str(k): plain(v) for k, v in x.items()}
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return str(x)


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)
