"""Extremal contractions, flips and the toric minimal model program."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .divisor import (
    Divisor,
    DivisorError,
    canonical_divisor,
    classify_pair,
    is_q_factorial,
    support_function,
)
from .fan import (
    Cone,
    Fan,
    FanError,
    QuotientFan,
    build_cone,
    common_refinement,
    is_complete,
    is_refinement,
    quotient_by_lineality,
)
from .lattice import as_fraction, box_points, dot, integral_direction, primitive
from .mori import (
    CurveClass,
    ExtremalRay,
    MoriCone,
    NumericalLattice,
    intersection_number,
    is_ample,
    is_nef,
    mori_cone,
    scaling_lambda,
)
from .polyhedral import cone_hull, double_description

log = logging.getLogger(__name__)


class MMPError(ValueError):
    pass


Ray = tuple[int, ...]

FIBRATION, DIVISORIAL, FLIPPING = "fibration", "divisorial", "flipping"


@dataclass
class ContractionResult:
    kind: str
    source: Fan
    target: Optional[Fan]  # divisorial / flipping
    quotient: Optional[QuotientFan]  # fibration
    removed_walls: list[CurveClass]
    merged: list[Cone]  # cones of the target that are unions of several source cones
    merged_from: list[list[frozenset]]
    lost_ray: Optional[Ray]
    signatures: list[tuple[int, int]]
    signature_kind: Optional[str]  # kind predicted by the wall relations, if simplicial

    @property
    def consistent(self) -> bool:
        return self.signature_kind is None or self.signature_kind == self.kind


def _kind_from_negatives(neg: int) -> str:
    return FIBRATION if neg == 0 else DIVISORIAL if neg == 1 else FLIPPING


def curves_on_ray(L: NumericalLattice, ray: ExtremalRay, include_zero: bool = True) -> list[CurveClass]:
    out = []
    for c, x in zip(L.curves, L.curve_coordinates):
        if any(x):
            if integral_direction(x) == tuple(ray.direction):
                out.append(c)
        elif include_zero:
            out.append(c)
    return out


def classify_and_contract(
    fan: Fan,
    boundary: Optional[Divisor],
    ray: ExtremalRay,
    lattice: Optional[NumericalLattice] = None,
    base: Optional[Fan] = None,
    require_negative: bool = True,
) -> ContractionResult:
    """Contract the extremal ray: remove its walls and merge the cones they separate."""
    L = lattice or NumericalLattice(fan, base)
    if require_negative and boundary is not None:
        kd = canonical_divisor(fan) + boundary
        if intersection_number(kd, ray.curves[0]) >= 0:
            raise MMPError("ray is not (K+boundary)-negative")
    cone = mori_cone(fan, base, L)
    if tuple(ray.direction) not in {tuple(r.direction) for r in cone.rays}:
        raise MMPError("not an extremal ray of the Mori cone")
    removed = curves_on_ray(L, ray)
    # union-find on maximal cones
    parent = {k: k for k in fan.maximal_keys}

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    for c in removed:
        a, b = find(c.cones[0]), find(c.cones[1])
        if a != b:
            parent[a] = b
    groups: dict[frozenset, list[frozenset]] = {}
    for k in fan.maximal_keys:
        groups.setdefault(find(k), []).append(k)
    sigs = [c.signature for c in removed if c.signature is not None]
    sig_kind = None
    if fan.is_simplicial() and sigs:
        kinds = {_kind_from_negatives(neg) for _pos, neg in sigs}
        sig_kind = kinds.pop() if len(kinds) == 1 else "inconsistent"
    n = fan.ambient
    merged_groups = [g for g in groups.values() if len(g) > 1]
    hulls = []
    for g in groups.values():
        rays = sorted({r for k in g for r in k})
        hulls.append((g, rays, cone_hull(rays, n)))
    if any(h.lineality for _g, _r, h in hulls):
        lin = next(h.lineality for _g, _r, h in hulls if h.lineality)
        q = quotient_by_lineality([Cone(tuple(rays), n) for _g, rays, _h in hulls], list(lin), n)
        return ContractionResult(FIBRATION, fan, None, q, removed, [], merged_groups, None, sigs, sig_kind)
    new_cones = []
    merged = []
    for g, rays, h in hulls:
        c = Cone(tuple(sorted(primitive(r) for r in h.rays)), n)
        new_cones.append(c)
        if len(g) > 1:
            merged.append(c)
    target = Fan(n, new_cones)
    lost = [r for r in fan.rays if r not in set(target.rays)]
    if len(lost) > 1:
        raise MMPError("contraction lost more than one ray")
    kind = DIVISORIAL if lost else FLIPPING
    return ContractionResult(kind, fan, target, None, removed, merged, merged_groups,
                             lost[0] if lost else None, sigs, sig_kind)


# --------------------------------------------------------------------------
# ample models


def ample_model_cones(cone: Cone, coeffs: dict[Ray, Fraction]) -> list[Cone]:
    """Normal fan, restricted to ``cone``, of P = {u : <u, e_ρ> >= -k_ρ (ρ in cone)}.

    ``coeffs`` are the coefficients k_ρ of the divisor whose ample model is
    sought.  Each vertex of P gives the cone spanned by the rays tight there.
    Raises if some ray of the cone is tight at no vertex.
    """
    n = cone.ambient
    # homogenize: (u, t) with <u, e> + k t >= 0 and t >= 0
    ineqs = [tuple(r) + (coeffs[r],) for r in cone.rays]
    ineqs.append(tuple([0] * n) + (1,))
    dd = double_description(ineqs, n + 1)
    verts = []
    for r in dd.rays:
        if r[-1] > 0:
            verts.append(tuple(Fraction(x, r[-1]) for x in r[:-1]))
    out = []
    used = set()
    for u in verts:
        tight = [r for r in cone.rays if dot(u, r) == -coeffs[r]]
        c = Cone(tuple(sorted(tight)), n)
        if c.dim != cone.dim:
            continue
        out.append(c)
        used.update(tight)
    if set(cone.rays) - used:
        raise MMPError("ample model does not exist over this cone (a ray would be contracted)")
    return out


def ample_model_over(target: Fan, divisor_coeffs: dict[Ray, Fraction], cones: Sequence[Cone]) -> Fan:
    """Replace each given cone of ``target`` by the ample model of the divisor over it."""
    keep = [c for c in target.maximal_cones if c not in set(cones)]
    new = list(keep)
    for c in cones:
        new.extend(ample_model_cones(c, divisor_coeffs))
    return Fan(target.ambient, new)


def flip(fan: Fan, boundary: Divisor, contraction: ContractionResult) -> Fan:
    """The (K+Δ)-flip of a flipping contraction, as the ample model over the target."""
    if contraction.kind != FLIPPING:
        raise MMPError("contraction is not flipping")
    kd = canonical_divisor(fan) + boundary
    for c in contraction.removed_walls:
        if support_function(kd) is None or intersection_number(kd, c) >= 0:
            raise MMPError("K + boundary is not negative on the flipping ray")
    coeffs = dict(kd.coeffs)
    new = ample_model_over(contraction.target, coeffs, contraction.merged)
    # K+Δ must be positive on every new wall inside the merged cones
    kd_new = Divisor(new, {r: boundary[r] for r in new.rays}) + canonical_divisor(new)
    L = NumericalLattice(new, contraction.target)
    for v in L.divisor_functional(kd_new):
        if v <= 0:
            raise MMPError("flipped divisor is not ample over the base")
    return new


def flop_wall(fan: Fan, wall_rays) -> Fan:
    """Exchange the triangulation of the circuit σ ∪ σ' across a simplicial wall."""
    wall_rays = frozenset(wall_rays)
    w = next((w for w in fan.interior_walls if w.rays == wall_rays), None)
    if w is None:
        raise MMPError("not an interior wall")
    s, t = w.cones
    rays = sorted(s | t)
    n = fan.ambient
    if len(rays) != n + 1:
        raise MMPError("wall does not span a simplicial circuit")
    from .fan import linear_relations

    rel = linear_relations(rays)
    if len(rel) != 1:
        raise MMPError("wall does not span a simplicial circuit")
    a = rel[0]
    pos = [i for i, x in enumerate(a) if x > 0]
    neg = [i for i, x in enumerate(a) if x < 0]
    zero = [i for i, x in enumerate(a) if x == 0]
    tri_pos = {frozenset(r for j, r in enumerate(rays) if j != i) for i in pos}
    tri_neg = {frozenset(r for j, r in enumerate(rays) if j != i) for i in neg}
    current = {s, t}
    if current == tri_pos:
        other = tri_neg
    elif current == tri_neg:
        other = tri_pos
    else:
        raise MMPError("wall does not span a simplicial circuit")
    keep = [c for k, c in zip(fan.maximal_keys, fan.maximal_cones) if k not in current]
    return Fan(n, keep + [Cone(tuple(sorted(k)), n) for k in other])


# --------------------------------------------------------------------------
# the driver


@dataclass
class DiscrepancyCertificate:
    point: tuple[int, ...]
    before: Fraction
    after: Fraction


@dataclass
class MMPStep:
    fan_before: Fan
    boundary_before: Divisor
    ray: tuple[int, ...]
    curves: list[str]
    kind: str
    fan_after: Optional[Fan]
    boundary_after: Optional[Divisor]
    rho_before: int
    rho_after: Optional[int]
    q_factorial_before: bool
    q_factorial_after: Optional[bool]
    negative_walls_before: int
    negative_walls_after: Optional[int]
    signatures: list[tuple[int, int]]
    signature_consistent: bool
    certificates: list[DiscrepancyCertificate] = field(default_factory=list)
    lost_ray: Optional[Ray] = None
    small_modification: bool = False  # lc model over a divisorial target changed the fan


@dataclass
class MMPTrace:
    steps: list[MMPStep]
    outcome: str  # "minimal model" or "Mori fiber space"
    fan: Fan
    boundary: Divisor
    fibration: Optional[QuotientFan] = None

    @property
    def flips(self) -> list[MMPStep]:
        return [s for s in self.steps if s.kind == FLIPPING]


def _negative_walls(L: NumericalLattice, kd: Divisor) -> int:
    return sum(1 for v in L.divisor_functional(kd) if v < 0)


def _certificates(before: Fan, bd: Divisor, after: Fan, ad: Divisor, region: Sequence[Cone]) -> list[DiscrepancyCertificate]:
    sb = support_function(canonical_divisor(before) + bd)
    sa = support_function(canonical_divisor(after) + ad)
    pts = set()
    for c in region:
        for i, r in enumerate(c.rays):
            for q in c.rays[i + 1:]:
                pts.add(primitive(tuple(x + y for x, y in zip(r, q))))
        pts.add(primitive(c.interior_point()))
    for f in (before, after):
        for c in f.maximal_cones:
            if c.is_simplicial and any(all(big.contains(r) for r in c.rays) for big in region):
                for pt, _lam in box_points(c.rays):
                    if any(pt):
                        pts.add(primitive(pt))
    # only points interior to the merged cones have centers in the flipping locus
    out = []
    for p in sorted(pts):
        if any(c.contains_in_interior(p) for c in region):
            out.append(DiscrepancyCertificate(p, sb(p) - 1, sa(p) - 1))
    return out


def _choose_lexmin(rays: list[tuple[ExtremalRay, Fraction]]) -> ExtremalRay:
    return min(rays, key=lambda rv: tuple(rv[0].direction))[0]


def run_mmp(
    fan: Fan,
    boundary: Optional[Divisor] = None,
    base: Optional[Fan] = None,
    step_cap: int = 10000,
    scaling: Optional[Divisor] = None,
    choose: Optional[Callable] = None,
) -> MMPTrace:
    """Run the (K+Δ)-MMP over ``base`` (absolute when ``base`` is None).

    Ray choice: the (K+Δ)-negative extremal ray with lexicographically
    smallest primitive N_1 coordinates, or the ray given by scaling with the
    divisor ``scaling`` when provided.
    """
    boundary = boundary if boundary is not None else Divisor(fan)
    cls = classify_pair(fan, boundary)
    if not cls.lc:
        raise MMPError(f"pair is not lc ({cls.verdict})")
    cur, delta = fan, boundary
    scale = scaling
    steps: list[MMPStep] = []
    for _ in range(step_cap):
        L = NumericalLattice(cur, base)
        kd = canonical_divisor(cur) + delta
        cone = mori_cone(cur, base, L)
        vals = L.divisor_functional(kd)
        neg = []
        for r in cone.rays:
            v = vals[L.curves.index(r.curves[0])]
            if v < 0:
                neg.append((r, v))
        if not neg:
            return MMPTrace(steps, "minimal model", cur, delta)
        if scale is not None:
            res = scaling_lambda(cur, delta, scale, base)
            ray = res.ray if res.ray is not None else _choose_lexmin(neg)
        elif choose is not None:
            ray = choose(neg)
        else:
            ray = _choose_lexmin(neg)
        log.info("step %d: contracting ray %s", len(steps), ray.direction)
        con = classify_and_contract(cur, delta, ray, L, base)
        step = MMPStep(
            fan_before=cur,
            boundary_before=delta,
            ray=tuple(ray.direction),
            curves=[c.label() for c in con.removed_walls],
            kind=con.kind,
            fan_after=None,
            boundary_after=None,
            rho_before=L.rho,
            rho_after=None,
            q_factorial_before=is_q_factorial(cur),
            q_factorial_after=None,
            negative_walls_before=_negative_walls(L, kd),
            negative_walls_after=None,
            signatures=con.signatures,
            signature_consistent=con.consistent,
            lost_ray=con.lost_ray,
        )
        steps.append(step)
        if con.kind == FIBRATION:
            return MMPTrace(steps, "Mori fiber space", cur, delta, con.quotient)
        if con.kind == FLIPPING:
            new = flip(cur, delta, con)
            new_delta = Divisor(new, {r: delta[r] for r in new.rays})
        else:
            target = con.target
            pushed = Divisor(target, {r: delta[r] for r in target.rays})
            kd_t = canonical_divisor(target) + pushed
            new = target
            if support_function(kd_t) is None:
                # lc model over the target: a small modification of the target
                new = ample_model_over(target, dict(kd.coeffs), [c for c in con.merged])
                bad = [c for c in new.maximal_cones if c not in set(target.maximal_cones)]
                step.small_modification = bool(bad)
            new_delta = Divisor(new, {r: delta[r] for r in new.rays})
        if scale is not None:
            scale = Divisor(new, {r: scale[r] for r in new.rays}) if all(r in scale.fan.rays for r in new.rays) else None
        L2 = NumericalLattice(new, base)
        step.fan_after = new
        step.boundary_after = new_delta
        step.rho_after = L2.rho
        step.q_factorial_after = is_q_factorial(new)
        step.negative_walls_after = _negative_walls(L2, canonical_divisor(new) + new_delta)
        step.certificates = _certificates(cur, delta, new, new_delta, con.merged) if con.kind == FLIPPING else []
        cur, delta = new, new_delta
    raise MMPError(f"step cap {step_cap} exceeded")


# --------------------------------------------------------------------------
# model checks


@dataclass
class ModelReport:
    conditions: dict[str, bool]
    details: dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.conditions.values())

    def __bool__(self) -> bool:
        return self.ok


def _model_check(X: Fan, D: Divisor, Xp: Fan, Dp: Divisor, base: Optional[Fan], strict: bool, ample: bool) -> ModelReport:
    common = common_refinement(X, Xp)
    if common is None or not (is_refinement(common, X) and is_refinement(common, Xp)):
        raise MMPError("pairs not birational (no common refinement)")
    conds: dict[str, bool] = {}
    details: dict[str, object] = {}
    if base is None:
        conds["(1) proper"] = is_complete(Xp)
    else:
        conds["(1) proper"] = is_refinement(Xp, base)
    conds["(2) no exceptional divisors of the inverse"] = set(Xp.rays) <= set(X.rays)
    conds["(3) strict transform"] = all(Dp[r] == D[r] for r in Xp.rays if r in set(X.rays))
    kdp = canonical_divisor(Xp) + Dp
    if support_function(kdp) is None:
        conds["(4) ample" if ample else "(4) nef"] = False
        conds["(5) discrepancies"] = False
        return ModelReport(conds, details)
    if ample:
        conds["(4) ample"] = bool(is_ample(kdp, base))
    else:
        conds["(4) nef"] = bool(is_nef(kdp, base))
    sX = support_function(canonical_divisor(X) + D)
    sXp = support_function(kdp)
    exc = [r for r in X.rays if r not in set(Xp.rays)]
    comps = {}
    for r in exc:
        comps[r] = (-D[r], sXp(r) - 1)
    details["exceptional"] = comps
    if strict:
        conds["(5) discrepancies"] = all(a < b for a, b in comps.values())
    else:
        conds["(5) discrepancies"] = all(a <= b for a, b in comps.values())
    # comparison on every ray of the common refinement (negativity lemma)
    if sX is not None:
        details["common_refinement"] = {r: (sX(r) - 1, sXp(r) - 1) for r in common.rays}
    return ModelReport(conds, details)


def check_log_minimal_model(X: Fan, D: Divisor, Xp: Fan, Dp: Divisor, base: Optional[Fan] = None) -> ModelReport:
    return _model_check(X, D, Xp, Dp, base, strict=True, ample=False)


def check_log_canonical_model(X: Fan, D: Divisor, Xp: Fan, Dp: Divisor, base: Optional[Fan] = None) -> ModelReport:
    return _model_check(X, D, Xp, Dp, base, strict=False, ample=True)
