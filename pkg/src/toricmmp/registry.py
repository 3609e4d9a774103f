"""Registry of worked examples with machine-checkable assertions.

Each record builds its fans and divisors in code and returns a list of
:class:`Check` objects.  The ``claim`` of a check names the published
statement it reproduces, so a failing check says what broke.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from fractions import Fraction
from typing import Callable, Optional

from . import examples as ex
from .io import plain
from .cohomology import (
    base_locus,
    cech_cohomology,
    ideal_cohomology,
    ideal_vanishing_check,
    induced_map_kernel,
    is_globally_generated,
    mv_resolution_check,
    polyhedron_cohomology,
)
from .divisor import (
    Divisor,
    adjunction_restrict,
    canonical_divisor,
    cartier_index,
    classify_pair,
    classify_pair_by_resolution,
    is_q_factorial,
    principal_divisor,
    pullback,
    q_cartier_space,
    support_function,
)
from .fan import (
    FanError,
    StarClosedSubset,
    build_fan,
    classify_cone,
    find_isomorphism,
    is_complete,
    linear_relations,
    qlc_centers,
    singular_cones,
    star_closed,
    star_subdivision,
)
from .lattice import solve_exact
from .mmp import FLIPPING, run_mmp
from .mori import (
    NumericalLattice,
    intersection_number,
    is_ample,
    is_nef,
    is_projective,
    mori_cone,
    positive_on_cone,
    wall_curve,
)


@dataclass
class Check:
    name: str
    claim: str
    expected: object
    actual: object

    @property
    def passed(self) -> bool:
        return self.expected == self.actual

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "claim": self.claim,
            "expected": plain(self.expected),
            "actual": plain(self.actual),
            "passed": self.passed,
        }


@dataclass
class ExampleRecord:
    id: str
    summary: str
    verify: Callable[..., list[Check]]
    documents: Callable[[], dict] = field(default=lambda: {})
    params: dict = field(default_factory=dict)


def _curve(fan, rays):
    key = frozenset(tuple(r) for r in rays)
    w = next(w for w in fan.interior_walls if w.rays == key)
    return wall_curve(fan, w)


def _integral_cartier(D: Divisor) -> Divisor:
    den = 1
    for c in D.values():
        den = den * c.denominator // gcd(den, c.denominator)
    D = den * D
    return cartier_index(D) * D


def _relation_of(rays) -> Optional[tuple[int, ...]]:
    rel = linear_relations(rays)
    if len(rel) != 1:
        return None
    a = rel[0]
    first = next(x for x in a if x)
    return tuple(x if first > 0 else -x for x in a)


# --------------------------------------------------------------------------


def verify_kleiman() -> list[Check]:
    claim = "complete non-projective threefold where Kleiman's criterion fails"
    X = ex.kleiman()
    L = NumericalLattice(X)
    cone = mori_cone(X, None, L)
    # a Cartier divisor positive on NE minus 0: the generator of the one-dimensional N^1
    cert = None
    for b in q_cartier_space(X):
        D = _integral_cartier(Divisor.from_list(X, b))
        vals = [x for x in L.divisor_functional(D) if x]
        if vals:
            cert = D if vals[0] > 0 else -D
            break
    proj = is_projective(X, None, L)
    v = dict(zip("123456", ex.KLEIMAN_RAYS))
    C = _curve(X, [v["2"], v["4"]])
    return [
        Check("complete", claim, True, is_complete(X)),
        Check("picard number", claim + ": rho = 1", 1, L.rho),
        Check("Mori cone is a half line", claim + ": NE is a half line", (1, True), (len(cone.rays), cone.is_pointed)),
        Check(
            "Cartier divisor positive on NE",
            claim + ": a Cartier divisor positive on NE minus 0",
            (True, 1),
            (cert is not None and positive_on_cone(cert, cone), cartier_index(cert) if cert else None),
        ),
        Check("not projective", claim, False, proj.projective),
        Check("LP and Gordan routes agree", claim, True, proj.gordan_agrees),
        Check("not Q-factorial", claim + ": X is not Q-factorial", False, is_q_factorial(X)),
        Check(
            "curve numerically trivial",
            claim + ": an invariant curve numerically equivalent to zero",
            True,
            L.is_numerically_trivial(C),
        ),
    ]


def verify_flop() -> list[Check]:
    claim = "a flop completely destroys projectivity"
    Y = ex.fp_y()
    X = ex.fp_x()
    LY, LX = NumericalLattice(Y), NumericalLattice(X)
    cx = mori_cone(X, None, LX)
    v = ex.FP_RAYS
    rel = _relation_of([v["v1"], v["v2"], v["v4"], v["v5"]])
    return [
        Check("Y smooth", claim + ": Y is smooth projective", True, Y.is_smooth()),
        Check("rho(Y) = 5", claim + ": rho(Y) = 5", 5, LY.rho),
        Check("Y projective", claim, True, is_projective(Y, None, LY).projective),
        Check("X complete", claim + ": X is smooth complete", (True, True), (is_complete(X), X.is_smooth())),
        Check("rho(X) = 5", claim, 5, LX.rho),
        Check("X not projective", claim, False, is_projective(X, None, LX).projective),
        Check("NE(X) = N_1(X)", claim + ": NE(X) = N_1(X)", (True, 5), (cx.is_whole_space, cx.dimension)),
        Check("flop relation", claim + ": v2 + v4 - v1 - v5 = 0", (1, -1, -1, 1), rel),
    ]


def verify_francia() -> list[Check]:
    claim = "Francia's flip on a projective toric threefold"
    v = ex.FRANCIA_RAYS
    X1, X2 = ex.francia_x1(), ex.francia_x2()
    rel = _relation_of([v["e1"], v["e2"], v["e4"], v["e5"]])
    sing = [(sorted(c.rays), t.quotient_label()) for c, t in singular_cones(X2)]
    trace = run_mmp(X2)
    flips = trace.flips
    X4 = flips[0].fan_after if flips else None
    removed = flips[0].curves if flips else []
    iso = find_isomorphism(X4, ex.francia_bundle()) if X4 is not None else None
    X5 = ex.francia_x5()
    new_wall = frozenset({v["e3"], v["e4"]})
    return [
        Check("weighted projective relation", claim + ": e1 + e2 + e4 + 2 e5 = 0", (1, 1, 1, 2), rel),
        Check("X1 complete", claim, True, is_complete(X1)),
        Check("X2 singularities", claim + ": one 1/2(1,1,1) point", ["1/2(1,1,1)"], [s for _r, s in sing]),
        Check("X2 Q-factorial projective", claim, (True, True), (is_q_factorial(X2), is_projective(X2).projective)),
        Check("rho(X2) = 2", claim + ": rho(X2) = 2", 2, NumericalLattice(X2).rho),
        Check("exactly one flip", claim, 1, len(flips)),
        Check("flipping wall", claim + ": the wall <e1, e2> is removed", ["V<(0, 1, 0), (1, 0, 0)>"], removed),
        Check("flipped wall", claim + ": the wall <e3, e4> is added", True, X4 is not None and any(w.rays == new_wall for w in X4.interior_walls)),
        Check("X4 is a projective bundle", claim + ": X4 = P(O + O(1) + O(2)) over P^1", True, iso is not None),
        Check("X5 smooth projective", claim, (True, True), (X5.is_smooth(), is_projective(X5).projective)),
    ]


def verify_logflip() -> list[Check]:
    claim = "sample computation of a threefold log flip"
    v = ex.LOGFLIP_RAYS
    X, Y = ex.logflip_x(), ex.logflip_y()
    B = ex.logflip_boundary(X)
    C = _curve(X, [v["e3"], v["e4"]])
    D = {k: Divisor.prime(X, r) for k, r in v.items()}
    K = canonical_divisor(X)
    cls = classify_pair(X, B)
    brute = classify_pair_by_resolution(X, B)
    L = NumericalLattice(X, Y)
    trace = run_mmp(X, B, base=Y)
    Xp, Bp = trace.fan, trace.boundary
    # adjunction to D3 and then to B = D1|D3
    r3 = adjunction_restrict(X, B, v["e3"])
    r3p = adjunction_restrict(Xp, Bp, v["e3"])
    b_img = next(p for p, s in r3.source.items() if s == v["e1"])
    bp_img = next(p for p, s in r3p.source.items() if s == v["e1"])
    rP = adjunction_restrict(r3.star.fan, r3.different, b_img)
    rQ = adjunction_restrict(r3p.star.fan, r3p.different, bp_img)
    label3 = sorted(t for t in (classify_cone(c).quotient_label() for c in r3.star.fan.maximal_cones) if t)
    label3p = sorted(t for t in (classify_cone(c).quotient_label() for c in r3p.star.fan.maximal_cones) if t)
    # adjunction to D1 and D1+
    r1 = adjunction_restrict(X, B, v["e1"])
    r1p = adjunction_restrict(Xp, Bp, v["e1"])
    coef1 = sorted(r1.different.values())
    coef1p = sorted(r1p.different.values())
    F = next(p for p, s in r1p.source.items() if s == v["e2"])
    S1, S1p = r1.star.fan, r1p.star.fan
    pulled = pullback(S1p, canonical_divisor(S1) + r1.different)
    crepancy = (canonical_divisor(S1p) + r1p.different - pulled)
    p, q = S1.maximal_cones[0].rays if len(S1.maximal_cones) == 1 else ((0, 0), (0, 0))
    blowup_at_P = F == tuple(a + b for a, b in zip(p, q)) and S1p == star_subdivision(S1, F)
    kp = canonical_divisor(Xp) + Bp
    return [
        Check("relation", claim + ": e1 + 3 e2 - 6 e3 - 2 e4 = 0", (1, 3, -6, -2), _relation_of([v["e1"], v["e2"], v["e3"], v["e4"]])),
        Check("pair is lc", claim + ": (X, D1 + D3) is Q-factorial dlt", (True, True, "lc"), (is_q_factorial(X), cls.lc, brute.verdict)),
        Check("verdicts agree", claim, cls.verdict, brute.verdict),
        Check("D2.C", claim + ": D2 . C = 1", Fraction(1), intersection_number(D["e2"], C)),
        Check("C.D4", claim + ": C . D4 = -2/3", Fraction(-2, 3), intersection_number(D["e4"], C)),
        Check("-(K+D1+D3).C", claim + ": -(K + D1 + D3) . C = 1/3", Fraction(1, 3), -intersection_number(K + B, C)),
        Check("C.D1", claim + ": C . D1 = 1/3", Fraction(1, 3), intersection_number(D["e1"], C)),
        Check("D3.C", claim + ": D3 . C = -2", Fraction(-2), intersection_number(D["e3"], C)),
        Check("relative Picard number", claim + ": elementary contraction over Y", 1, L.rho),
        Check("one flip over Y", claim, [FLIPPING], [s.kind for s in trace.steps]),
        Check("flip is ample over Y", claim, True, bool(is_ample(kp, Y))),
        Check("D3 singularity", claim + ": D3 has a 1/3(1,1) point", ["1/3(1,1)"], label3),
        Check("D3+ singularity", claim + ": Q is a 1/2(1,1) point on D3+", ["1/2(1,1)"], label3p),
        Check("adjunction to B", claim + ": (K_D3 + B)|B = K_B + 2/3 P", [Fraction(2, 3)], rP.different.values()),
        Check("adjunction to B+", claim + ": (K_D3+ + B+)|B+ = K_B+ + 1/2 Q", [Fraction(1, 2)], rQ.different.values()),
        Check("D1 and D1+ smooth", claim, (True, True), (S1.is_smooth(), S1p.is_smooth())),
        Check("adjunction to D1", claim + ": K_D1 + B + 2/3 B'", [Fraction(2, 3), Fraction(1)], coef1),
        Check("adjunction to D1+", claim + ": K_D1+ + B+ + 2/3 B'+ + 1/2 F", [Fraction(1, 2), Fraction(2, 3), Fraction(1)], coef1p),
        Check("crepancy term", claim + ": difference -1/6 F", {F: Fraction(-1, 6)}, {r: c for r, c in crepancy.coeffs.items() if c}),
        Check("blow-up at P", claim + ": D1+ -> D1 is the blow-up at P = B cap B'", True, blowup_at_P),
    ]


def verify_nonqfact(n: int = 2) -> list[Check]:
    claim = f"non-Q-factorial canonical Gorenstein flip (n = {n})"
    X, W, Xp = ex.nonqfact_x(n), ex.nonqfact_w(n), ex.nonqfact_xplus(n)
    e = ex.nonqfact_rays(n)
    K = canonical_divisor(X)
    cls = classify_pair(X, Divisor(X))
    trace = run_mmp(X, base=W)
    out = trace.fan
    rels = []
    for i in range(1, n):
        rels.append(all(a + c == 2 * b + z for a, b, c, z in zip(e[i], e[i + 1], e[i + 2], e[0])))
    k = n * (n - 1) // 2
    rels.append(all(a + c == 2 * b + k * z for a, b, c, z in zip(e[n], e[n + 1], e[n + 2], e[0])))
    return [
        Check("canonical", claim + ": X has canonical singularities", "canonical", cls.verdict),
        Check("Gorenstein", claim + ": K_X is Cartier", 1, cartier_index(K)),
        Check("not Q-factorial", claim, False, is_q_factorial(X)),
        Check("X+ smooth", claim, True, Xp.is_smooth()),
        Check("-K_X relatively ample", claim, True, bool(is_ample(-K, W))),
        Check("K_X+ relatively ample", claim, True, bool(is_ample(canonical_divisor(Xp), W))),
        Check("projective over W", claim, (True, True), (is_projective(X, W).projective, is_projective(Xp, W).projective)),
        Check("rho(X/W) = 1", claim + ": rho(X/W) = 1", 1, NumericalLattice(X, W).rho),
        Check("rho(X+/W) = n", claim + ": rho(X+/W) = n", n, NumericalLattice(Xp, W).rho),
        Check("flip output", claim + ": the engine's flip is X+", (1, True), (len(trace.flips), out == Xp)),
        Check("relations", claim + ": e_i + e_(i+2) = 2 e_(i+1) + e_0", [True] * n, rels),
    ]


def verify_sommese() -> list[Check]:
    claim = "a vanishing statement that fails for the total space"
    so = ex.sommese()
    table = cech_cohomology(so.fan, ex.sommese_sheaf())
    M = so.divisor(v0=1)
    return [
        Check("smooth fourfold", claim, (True, 4), (so.fan.is_smooth(), so.fan.ambient)),
        Check("sections of M", claim + ": h0(M) = 1 + 3 * 2", 7, cech_cohomology(so.fan, M).h(0)),
        Check("h3 = 1", claim + ": H^3(Y, M^-5 (x) pi^*O(3)) is one-dimensional", 1, table.h(3)),
        Check("full table", claim, [0, 0, 0, 1, 0], table.dims),
    ]


def verify_injectivity() -> list[Check]:
    claim = "non-injectivity on F_1 induced by the natural inclusion"
    f = ex.f1_example()
    K = canonical_divisor(f.fan)
    S, H, F = f.divisor(v1=1), f.divisor(v0=1), f.divisor(u0=1)
    A, B = K + S + H, K + S + H + F
    lin = A + 2 * F
    trivial = solve_exact([list(r) for r in f.fan.rays], [-lin[r] for r in f.fan.rays])
    return [
        Check("K + S + H = -2F", claim, True, trivial is not None and all(x.denominator == 1 for x in trivial)),
        Check("kernel dimension", claim + ": kernel of H^1 is one-dimensional", 1, induced_map_kernel(f.fan, A, B, 1)),
        Check("h1 source", "regression value", 1, cech_cohomology(f.fan, A).h(1)),
        Check("h1 target", "regression value", 0, cech_cohomology(f.fan, B).h(1)),
    ]


def verify_cone_ex() -> list[Check]:
    claim = "the linear system |mD+| is free"
    X = ex.cone_ex_subset()
    M = X.fan
    E = ex.cone_ex_section(M)
    checks = [
        Check("star closed", claim, True, X.is_star_closed()),
        Check("two components", claim + ": X1 and X2 glued along a fiber", 2, len(X.minimal_cones)),
        Check("E Cartier", claim, 1, cartier_index(E)),
        Check("E nef", claim + ": E is nef", True, bool(is_nef(E))),
    ]
    for m in (1, 2, 3):
        mE = m * E
        gg = is_globally_generated(mE)
        amb = cech_cohomology(M, mE)
        ide = ideal_cohomology(X, mE)
        res = polyhedron_cohomology(X, mE)
        onto = amb.h(0) - ide.h(0) == res.h(0)
        checks.append(Check(f"|{m}E| free on M", claim, (True, True), (gg.generated, base_locus(E, m).empty)))
        checks.append(Check(f"|{m}D+| free on X", claim + ": sections restrict onto X", True, onto))
    for m in (0, 1, 2):
        checks.append(Check(f"MV agreement m={m}", "Mayer-Vietoris resolution", True, bool(mv_resolution_check(X, m * E))))
    return checks


def verify_polyhedron() -> list[Check]:
    claim = "toric polyhedra carry a natural quasi-log structure"
    P2 = ex.p2()
    Y = ex.boundary_subset(P2)
    centers = {frozenset(c.rays) for c in qlc_centers(P2, Y.cones)}
    O = lambda d: Divisor(P2, {(1, 0): d})
    checks = [
        Check("boundary star closed", claim, True, Y.is_star_closed()),
        Check("non-star-closed rejected", claim, False, star_closed(P2, [frozenset({(1, 0)})])),
        Check("qlc centers", claim + ": qlc centers are V(sigma), sigma in Phi", set(Y.cones), centers),
        Check("h0 of O(d) on the boundary", "cycle of three lines", [3, 6, 9], [polyhedron_cohomology(Y, O(d)).h(0) for d in (1, 2, 3)]),
        Check("ideal vanishing", claim + ": H^i(X, I_Y (x) L) = 0 for ample L", True, bool(ideal_vanishing_check(Y, O(1)))),
        Check("triangle cohomology", "cycle of three lines", ([1, 1], True), (mv_resolution_check(Y, O(0)).direct, bool(mv_resolution_check(Y, O(0))))),
    ]
    T = ex.two_lines()
    mv = mv_resolution_check(T, Divisor(T.fan))
    checks.append(Check("two lines", "two lines meeting in a point", ([1, 0], True), (mv.direct, bool(mv))))
    return checks


REGISTRY: dict[str, ExampleRecord] = {}


def _register(rec: ExampleRecord) -> None:
    REGISTRY[rec.id] = rec


def _doc(fan, **divisors):
    return {"fan": fan, "divisors": divisors}


_register(ExampleRecord("kleiman-nonprojective", "complete non-projective threefold with rho = 1", verify_kleiman,
                        lambda: _doc(ex.kleiman())))
_register(ExampleRecord("flop-destroys-projectivity", "a flop of a smooth projective threefold", verify_flop,
                        lambda: _doc(ex.fp_y())))
_register(ExampleRecord("francia-5.1", "Francia's flip", verify_francia, lambda: _doc(ex.francia_x2())))
_register(ExampleRecord("logflip-5.2", "a threefold log flip over an affine base", verify_logflip,
                        lambda: _doc(ex.logflip_x(), boundary=ex.logflip_boundary(ex.logflip_x()))))
_register(ExampleRecord("nonqfact-5.3", "non-Q-factorial canonical Gorenstein flip", verify_nonqfact,
                        lambda: _doc(ex.nonqfact_x(2)), {"n": 2}))
_register(ExampleRecord("sommese", "h^3 of a line bundle on a P^3-bundle over P^1", verify_sommese,
                        lambda: _doc(ex.sommese().fan, divisor=ex.sommese_sheaf())))
_register(ExampleRecord("injectivity-f1", "kernel of H^1 on F_1", verify_injectivity, lambda: _doc(ex.f1_example().fan)))
_register(ExampleRecord("cone-ex-bpf", "free linear systems on a union of two surfaces", verify_cone_ex,
                        lambda: _doc(ex.cone_ex_m(), divisor=ex.cone_ex_section(ex.cone_ex_m()))))
_register(ExampleRecord("toric-polyhedron", "cohomology of toric polyhedra", verify_polyhedron, lambda: _doc(ex.p2())))


def verify_example(example_id: str, **params) -> list[Check]:
    rec = REGISTRY.get(example_id)
    if rec is None:
        raise KeyError(f"unknown example {example_id!r}")
    kwargs = {**rec.params, **{k: v for k, v in params.items() if v is not None}}
    return rec.verify(**kwargs)
