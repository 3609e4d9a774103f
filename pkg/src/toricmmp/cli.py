"""Command-line interface: ``toricmmp <command> ...``.

Exit codes: 0 success, 1 a verification assertion failed, 2 usage, parse or
engine-precondition error.  Verbosity comes from ``TORICMMP_LOG``
(quiet, info, debug).
"""

from __future__ import annotations

import argparse
import datetime
import json
import logging
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .cohomology import (
    IDEAL,
    O_D,
    RESTRICTION,
    CohomologyError,
    SheafSpec,
    cech_cohomology,
    ideal_vanishing_check,
    mv_resolution_check,
    polyhedron_cohomology,
)
from .divisor import Divisor, DivisorError, classify_pair
from .fan import FanError, is_complete, qlc_centers, singular_cones
from .io import ParseError, dumps, emit_divisor, emit_fan, parse_divisor, parse_fan, parse_subset, plain
from .mmp import FLIPPING, MMPError, classify_and_contract, flip, run_mmp
from .mori import (
    MoriError,
    NumericalLattice,
    is_ample,
    is_nef,
    is_projective,
    mori_cone,
    negative_extremal_rays,
)
from .registry import REGISTRY, Check, verify_example

log = logging.getLogger("toricmmp")

LEVELS = {"quiet": logging.WARNING, "info": logging.INFO, "debug": logging.DEBUG}


class UsageError(Exception):
    pass


def _setup_logging() -> None:
    level = LEVELS.get(os.environ.get("TORICMMP_LOG", "quiet").lower(), logging.WARNING)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    logging.getLogger("toricmmp").setLevel(level)


# --------------------------------------------------------------------------
# inputs


def _fan(args):
    return parse_fan(args.fan)


def _divisor(path, fd, required=True) -> Optional[Divisor]:
    if path is None:
        if required:
            raise UsageError("a divisor file is required")
        return None
    return parse_divisor(path, fd)


def _base(args):
    return parse_fan(args.base).fan if getattr(args, "base", None) else None


def _fan_summary(fan) -> dict:
    return {
        "dim": fan.ambient,
        "rays": len(fan.rays),
        "maximal_cones": len(fan.maximal_cones),
        "complete": is_complete(fan),
        "simplicial": fan.is_simplicial(),
        "smooth": fan.is_smooth(),
        "interior_walls": len(fan.interior_walls),
        "singular_cones": [
            {"rays": [list(r) for r in c.rays], "type": str(t)} for c, t in singular_cones(fan)
        ],
    }


# --------------------------------------------------------------------------
# commands


def cmd_validate(args) -> tuple[dict, list[Check]]:
    fd = _fan(args)
    out = _fan_summary(fd.fan)
    if out["complete"]:
        out["projective"] = is_projective(fd.fan).projective
    return out, []


def cmd_classify(args):
    fd = _fan(args)
    B = _divisor(args.boundary, fd, required=False) or Divisor(fd.fan)
    c = classify_pair(fd.fan, B)
    return {
        "verdict": c.verdict,
        "flags": c.flags(),
        "min_discrepancy": c.min_discrepancy,
        "cartier_index": c.cartier_index,
        "witnesses": [{"point": list(p), "discrepancy": a} for p, a in c.witnesses[:10]],
    }, []


def _lattice(fd, base):
    return NumericalLattice(fd.fan, base)


def cmd_mori(args):
    fd = _fan(args)
    base = _base(args)
    L = _lattice(fd, base)
    cone = mori_cone(fd.fan, base, L)
    return {
        "rho": L.rho,
        "curves": [c.label() for c in L.curves],
        "extremal_rays": [
            {"direction": list(r.direction), "curves": [c.label() for c in r.curves]} for r in cone.rays
        ],
        "lineality": [list(x) for x in cone.lineality],
        "numerically_trivial_curves": [c.label() for c in cone.zero_curves],
        "whole_space": cone.is_whole_space,
        "projective": is_projective(fd.fan, base, L).projective,
    }, []


def _positivity(args, test):
    fd = _fan(args)
    D = _divisor(args.divisor, fd)
    base = _base(args)
    L = _lattice(fd, base)
    res = test(D, base, L)
    return {
        "holds": res.holds,
        "witness": res.witness.label() if res.witness else None,
        "values": {c.label(): v for c, v in zip(L.curves, res.values)},
    }, []


def cmd_nef(args):
    return _positivity(args, is_nef)


def cmd_ample(args):
    return _positivity(args, is_ample)


def _pick_ray(fd, B, base, index):
    rays = negative_extremal_rays(fd.fan, B, base)
    rays.sort(key=lambda rv: tuple(rv[0].direction))
    if not rays:
        raise UsageError("no (K+boundary)-negative extremal ray")
    if index is None:
        return rays, rays[0][0]
    if not 0 <= index < len(rays):
        raise UsageError(f"ray index {index} out of range (0..{len(rays) - 1})")
    return rays, rays[index][0]


def cmd_contract(args):
    fd = _fan(args)
    B = _divisor(args.boundary, fd, required=False) or Divisor(fd.fan)
    base = _base(args)
    rays, ray = _pick_ray(fd, B, base, args.ray)
    con = classify_and_contract(fd.fan, B, ray, base=base)
    out = {
        "negative_rays": [{"direction": list(r.direction), "K+B": v} for r, v in rays],
        "ray": list(ray.direction),
        "kind": con.kind,
        "removed_walls": [c.label() for c in con.removed_walls],
        "lost_ray": list(con.lost_ray) if con.lost_ray else None,
        "consistent_with_relations": con.consistent,
    }
    if con.target is not None:
        out["target"] = emit_fan(con.target)
    return out, []


def cmd_flip(args):
    fd = _fan(args)
    B = _divisor(args.boundary, fd, required=False) or Divisor(fd.fan)
    base = _base(args)
    rays, _ = _pick_ray(fd, B, base, None)
    for r, _v in rays:
        con = classify_and_contract(fd.fan, B, r, base=base)
        if con.kind == FLIPPING:
            new = flip(fd.fan, B, con)
            return {
                "ray": list(r.direction),
                "flipped_walls": [c.label() for c in con.removed_walls],
                "fan": emit_fan(new),
            }, []
    raise UsageError("no flipping contraction among the negative extremal rays")


def cmd_mmp(args):
    fd = _fan(args)
    B = _divisor(args.boundary, fd, required=False)
    base = _base(args)
    trace = run_mmp(fd.fan, B, base)
    steps = [
        {
            "kind": s.kind,
            "ray": list(s.ray),
            "curves": s.curves,
            "rho": [s.rho_before, s.rho_after],
            "q_factorial": [s.q_factorial_before, s.q_factorial_after],
            "discrepancy_certificates": [
                {"point": list(c.point), "before": c.before, "after": c.after} for c in s.certificates
            ],
        }
        for s in trace.steps
    ]
    return {
        "outcome": trace.outcome,
        "steps": steps,
        "flips": len(trace.flips),
        "fan": emit_fan(trace.fan),
        "boundary": emit_divisor(trace.boundary),
    }, []


VARIANTS = {"O": O_D, "ideal": IDEAL, "restriction": RESTRICTION}


def cmd_cohom(args):
    fd = _fan(args)
    D = _divisor(args.divisor, fd)
    variant = VARIANTS[args.variant]
    subset = parse_subset(args.subset, fd) if args.subset else None
    if variant != O_D and subset is None:
        raise UsageError("--subset is required for ideal and restriction sheaves")
    table = cech_cohomology(fd.fan, SheafSpec(variant, D, subset))
    return {"variant": variant, "h": table.dims, "euler_characteristic": table.euler_characteristic}, []


def cmd_polyhedron(args):
    fd = _fan(args)
    Y = parse_subset(args.subset, fd)
    D = _divisor(args.divisor, fd, required=False) or Divisor(fd.fan)
    out = {
        "star_closed": Y.is_star_closed(),
        "components": [[list(r) for r in sorted(c)] for c in Y.minimal_cones],
        "qlc_centers": [[list(r) for r in c.rays] for c in qlc_centers(fd.fan, Y.cones)],
        "h": polyhedron_cohomology(Y, D).dims,
    }
    mv = mv_resolution_check(Y, D)
    out["mayer_vietoris"] = {"agree": mv.agree, "h": mv.resolution}
    checks = [Check("Mayer-Vietoris agreement", "Mayer-Vietoris resolution", True, mv.agree)]
    if is_ample(D):
        rep = ideal_vanishing_check(Y, D)
        out["ideal_vanishing"] = {"ideal_h": rep.ideal.dims, "surjective": rep.surjective}
        checks.append(Check("ideal vanishing", "H^i(I_Y (x) L) = 0 for ample L", True, rep.holds))
    return out, checks


def cmd_verify(args):
    if args.id not in REGISTRY:
        raise UsageError(f"unknown example {args.id!r}; see list-examples")
    checks = verify_example(args.id, n=args.n)
    return {"id": args.id, "passed": sum(c.passed for c in checks), "total": len(checks)}, checks


def cmd_list(args):
    out = {k: r.summary for k, r in REGISTRY.items()}
    if args.export:
        export_examples(Path(args.export))
        out = {"exported_to": str(args.export), "examples": out}
    return out, []


def export_examples(directory: Path) -> list[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for k, rec in REGISTRY.items():
        docs = rec.documents()
        if not docs:
            continue
        p = directory / f"{k}.fan.json"
        p.write_text(dumps(emit_fan(docs["fan"])) + "\n")
        written.append(p)
        for name, D in docs.get("divisors", {}).items():
            q = directory / f"{k}.{name}.json"
            q.write_text(dumps(emit_divisor(D)) + "\n")
            written.append(q)
    return written


COMMANDS = {
    "validate": cmd_validate,
    "classify": cmd_classify,
    "mori": cmd_mori,
    "nef": cmd_nef,
    "ample": cmd_ample,
    "contract": cmd_contract,
    "flip": cmd_flip,
    "mmp": cmd_mmp,
    "cohom": cmd_cohom,
    "polyhedron": cmd_polyhedron,
    "verify": cmd_verify,
    "list-examples": cmd_list,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="toricmmp", description="Exact toric minimal model program engine")
    p.add_argument("--format", choices=["text", "json"], default="text")
    sub = p.add_subparsers(dest="command")

    def add(name, *, fan=True, boundary=False, divisor=False, base=False):
        s = sub.add_parser(name)
        s.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS)
        if fan:
            s.add_argument("--fan", required=True)
        if boundary:
            s.add_argument("--boundary")
        if divisor:
            s.add_argument("--divisor", required=divisor == "required")
        if base:
            s.add_argument("--base")
        return s

    add("validate")
    add("classify", boundary=True)
    add("mori", base=True)
    add("nef", divisor="required", base=True)
    add("ample", divisor="required", base=True)
    add("contract", boundary=True, base=True).add_argument("--ray", type=int)
    add("flip", boundary=True, base=True)
    add("mmp", boundary=True, base=True)
    c = add("cohom", divisor="required")
    c.add_argument("--variant", choices=sorted(VARIANTS), default="O")
    c.add_argument("--subset")
    add("polyhedron", divisor="optional").add_argument("--subset", required=True)
    v = add("verify", fan=False)
    v.add_argument("id")
    v.add_argument("--n", type=int)
    add("list-examples", fan=False).add_argument("--export")
    return p


def render_text(report: dict) -> str:
    lines = [f"toricmmp {report['version']}: {' '.join(report['command'])}"]

    def walk(prefix, x):
        if isinstance(x, dict):
            for k, v in x.items():
                walk(f"{prefix}{k}.", v) if isinstance(v, dict) else walk(f"{prefix}{k}", v)
        else:
            lines.append(f"  {prefix.rstrip('.')}: {json.dumps(x)}")

    walk("", report["results"])
    for a in report["assertions"]:
        mark = "PASS" if a["passed"] else "FAIL"
        lines.append(f"  [{mark}] {a['name']} ({a['claim']}): expected {a['expected']}, got {a['actual']}")
    return "\n".join(lines)


def run_command(argv: Sequence[str]) -> tuple[int, Optional[dict], str]:
    """Run a command; returns (exit code, report or None, rendered output)."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as e:
        return (0 if e.code == 0 else 2), None, ""
    if not args.command:
        return 2, None, parser.format_usage()
    try:
        results, checks = COMMANDS[args.command](args)
    except (UsageError, ParseError, FanError, DivisorError, MoriError, MMPError, CohomologyError, OSError) as e:
        return 2, None, f"error: {e}"
    report = {
        "command": [args.command] + [a for a in argv if a != args.command],
        "version": __version__,
        "results": plain(results),
        "assertions": [c.as_dict() for c in checks],
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }
    code = 1 if any(not c.passed for c in checks) else 0
    text = dumps(report) if args.format == "json" else render_text(report)
    return code, report, text


def main(argv: Optional[Sequence[str]] = None) -> int:
    _setup_logging()
    code, _report, text = run_command(sys.argv[1:] if argv is None else argv)
    if text:
        print(text, file=sys.stdout if code != 2 or _report else sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
