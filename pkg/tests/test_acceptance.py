"""The eleven acceptance criteria, one test each.

Every test collects the individual failures it sees, so a failing criterion
reports all of them; the terminal summary prints one line per criterion.
"""

import random
import time
from fractions import Fraction

from _corpus import (
    random_boundary,
    random_nef_divisor,
    random_simplicial_fan,
    random_smooth_fan,
    trace_violations,
)
from toricmmp import examples as ex
from toricmmp.cohomology import (
    cech_cohomology,
    ideal_vanishing_check,
    induced_map_kernel,
    mv_resolution_check,
)
from toricmmp.divisor import (
    Divisor,
    canonical_divisor,
    cartier_index,
    classify_pair,
    classify_pair_by_resolution,
)
from toricmmp.fan import StarClosedSubset, find_isomorphism, qlc_centers, star_closed, star_of
from toricmmp.mmp import FLIPPING, run_mmp
from toricmmp.mori import (
    NumericalLattice,
    extremal_length,
    intersection_number,
    is_projective,
    mori_cone,
    negative_extremal_rays,
    wall_curve,
)
from toricmmp.registry import (
    verify_flop,
    verify_francia,
    verify_kleiman,
    verify_logflip,
    verify_nonqfact,
)

RANDOM_FANS = 100


def _failed(checks, prefix=""):
    return [f"{prefix}{c.name}: expected {c.expected}, got {c.actual}" for c in checks if not c.passed]


def _corpus(seed, count, dims=(2, 3)):
    rng = random.Random(seed)
    for _ in range(count):
        dim = rng.choice(dims)
        f = random_simplicial_fan(rng, dim)
        yield f, random_boundary(rng, f)


def test_criterion_01_log_flip_intersection_numbers(record):
    v = ex.LOGFLIP_RAYS
    X = ex.logflip_x()
    B = ex.logflip_boundary(X)
    (w,) = X.interior_walls
    C = wall_curve(X, w)
    D = {k: Divisor.prime(X, r) for k, r in v.items()}
    K = canonical_divisor(X)
    got = {
        "D2.C": intersection_number(D["e2"], C),
        "C.D4": intersection_number(D["e4"], C),
        "-(K+D1+D3).C": -intersection_number(K + B, C),
        "D1.C": intersection_number(D["e1"], C),
        "D3.C": intersection_number(D["e3"], C),
    }
    want = {"D2.C": Fraction(1), "C.D4": Fraction(-2, 3), "-(K+D1+D3).C": Fraction(1, 3),
            "D1.C": Fraction(1, 3), "D3.C": Fraction(-2)}
    failures = [f"{k}: expected {want[k]}, got {got[k]}" for k in want if got[k] != want[k]]
    record(1, "log flip intersection numbers", failures)


def test_criterion_02_log_flip_structure(record):
    wanted = {
        "pair is lc", "verdicts agree", "D3 singularity", "D3+ singularity", "adjunction to B",
        "adjunction to B+", "adjunction to D1", "adjunction to D1+", "crepancy term", "blow-up at P",
        "one flip over Y", "flip is ample over Y",
    }
    checks = [c for c in verify_logflip() if c.name in wanted]
    failures = _failed(checks)
    if {c.name for c in checks} != wanted:
        failures.append("missing checks")
    record(2, "log flip structure, adjunction and crepancy", failures)


def test_criterion_03_francia(record):
    failures = _failed(verify_francia())
    trace = run_mmp(ex.francia_x2())
    if len(trace.flips) != 1:
        failures.append(f"{len(trace.flips)} flips")
    elif find_isomorphism(trace.flips[0].fan_after, ex.francia_bundle()) is None:
        failures.append("flip output is not the projective bundle fan")
    record(3, "Francia flip", failures)


def test_criterion_04_non_q_factorial_flip(record):
    failures = []
    for n in (2, 3):
        failures += _failed(verify_nonqfact(n), f"n={n}: ")
        if cartier_index(canonical_divisor(ex.nonqfact_x(n))) != 1:
            failures.append(f"n={n}: K not Cartier")
    record(4, "non-Q-factorial canonical flip for n = 2, 3", failures)


def test_criterion_05_kleiman(record):
    record(5, "complete non-projective threefold with rho = 1", _failed(verify_kleiman()))


def test_criterion_06_flop(record):
    record(6, "flop destroys projectivity", _failed(verify_flop()))


def test_criterion_07_cohomology(record):
    failures = []
    p1 = ex.p1()
    if cech_cohomology(p1, Divisor(p1, {(1,): -2})).h(1) != 1:
        failures.append("h1(P1, O(-2)) != 1")
    start = time.perf_counter()
    so = ex.sommese()
    h3 = cech_cohomology(so.fan, ex.sommese_sheaf()).h(3)
    elapsed = time.perf_counter() - start
    if h3 != 1:
        failures.append(f"Sommese h3 = {h3}")
    if elapsed >= 60:
        failures.append(f"Sommese run took {elapsed:.1f}s")
    f = ex.f1_example()
    A = canonical_divisor(f.fan) + f.divisor(v1=1, v0=1)
    ker = induced_map_kernel(f.fan, A, A + f.divisor(u0=1), 1)
    if ker != 1:
        failures.append(f"injectivity kernel = {ker}")
    rng = random.Random(7)
    for i in range(200):
        fan = random_smooth_fan(rng, 2 if i % 2 else 3, 1)
        D = random_nef_divisor(rng, fan)
        h = cech_cohomology(fan, D).dims
        if any(h[1:]):
            failures.append(f"nef divisor {D.values()} on {fan.rays}: h = {h}")
    record(7, "cohomology values and Demazure vanishing on 200 nef divisors", failures,
           f"Sommese run {elapsed:.2f}s")


def _builtin_pairs():
    yield "logflip", ex.logflip_x(), ex.logflip_boundary(ex.logflip_x())
    for n in (2, 3):
        X = ex.nonqfact_x(n)
        yield f"nonqfact n={n}", X, Divisor(X)
    for name, f in [("francia X2", ex.francia_x2()), ("francia X5", ex.francia_x5()), ("flop Y", ex.fp_y()),
                    ("flop X", ex.fp_x()), ("kleiman", ex.kleiman()), ("P2", ex.p2()), ("F2", ex.hirzebruch(2))]:
        yield name, f, Divisor(f)


def test_criterion_08_classification_oracle(record):
    failures = []
    cases = list(_builtin_pairs()) + [(f"random {i}", f, B) for i, (f, B) in enumerate(_corpus(8, RANDOM_FANS))]
    for name, f, B in cases:
        a, b = classify_pair(f, B), classify_pair_by_resolution(f, B)
        if a.verdict != b.verdict:
            failures.append(f"{name}: {a.verdict} vs {b.verdict}")
    record(8, "classification equals the resolution oracle", failures, f"{len(cases)} pairs")


def test_criterion_09_extremal_lengths(record):
    failures = []
    count = 0
    for i, (f, B) in enumerate(_corpus(9, RANDOM_FANS)):
        if not classify_pair(f, B).lc:
            failures.append(f"random {i}: boundary not lc")
            continue
        L = NumericalLattice(f)
        for ray, _v in negative_extremal_rays(f, B, cone=mori_cone(f, None, L)):
            rep = extremal_length(f, B, ray, L)
            count += 1
            if not rep.within_2n:
                failures.append(f"random {i}: length {rep.length} > 2n")
            if not rep.within_n_plus_1:
                failures.append(f"random {i}: length {rep.length} > n + 1")
    record(9, "extremal ray lengths within n + 1", failures, f"{count} negative rays")


def test_criterion_10_mmp_invariants(record):
    failures = []
    runs = [
        ("francia", run_mmp(ex.francia_x2())),
        ("logflip", run_mmp(ex.logflip_x(), ex.logflip_boundary(ex.logflip_x()), base=ex.logflip_y())),
        ("nonqfact n=2", run_mmp(ex.nonqfact_x(2), base=ex.nonqfact_w(2))),
        ("nonqfact n=3", run_mmp(ex.nonqfact_x(3), base=ex.nonqfact_w(3))),
        ("F1", run_mmp(ex.hirzebruch(1))),
        ("flop Y", run_mmp(ex.fp_y())),
    ]
    for i, (f, B) in enumerate(_corpus(10, 40)):
        runs.append((f"random {i}", run_mmp(f, B)))
    steps = 0
    for name, t in runs:
        steps += len(t.steps)
        failures += [f"{name}: {v}" for v in trace_violations(t)]
    flips = sum(1 for _n, t in runs for s in t.steps if s.kind == FLIPPING)
    record(10, "MMP invariants", failures, f"{len(runs)} runs, {steps} steps, {flips} flips")


def test_criterion_11_toric_polyhedra(record):
    failures = []
    P2 = ex.p2()
    if star_closed(P2, [frozenset({(1, 0)})]):
        failures.append("non-star-closed subset accepted")
    Y = ex.boundary_subset(P2)
    if {frozenset(c.rays) for c in qlc_centers(P2, Y.cones)} != set(Y.cones):
        failures.append("qlc centers differ from the cones of the subset")
    rng = random.Random(11)
    for i in range(20):
        f = random_smooth_fan(rng, rng.choice([2, 3]), 1)
        L = is_projective(f).certificate
        cones = [c for c in f.cones if c]
        phi = set()
        for c in rng.sample(cones, rng.randint(1, 2)):
            phi |= star_of(f, c)
        S = StarClosedSubset(f, phi)
        if not S.is_star_closed():
            failures.append(f"triple {i}: star closure failed")
        rep = ideal_vanishing_check(S, L)
        if not rep:
            failures.append(f"triple {i}: ideal h = {rep.ideal.dims}, surjective {rep.surjective}")
    builtins = [
        ("P2 boundary", Y, Divisor(P2)),
        ("P2 boundary, O(1)", Y, Divisor(P2, {(1, 0): 1})),
        ("two lines", ex.two_lines(), Divisor(ex.two_lines().fan)),
        ("cone example", ex.cone_ex_subset(), ex.cone_ex_section(ex.cone_ex_m())),
        ("fixed point", ex.fixed_point_subset(P2, [(1, 0), (0, 1)]), Divisor(P2)),
    ]
    for name, S, D in builtins:
        if not mv_resolution_check(S, D):
            failures.append(f"{name}: Mayer-Vietoris disagrees")
    record(11, "toric polyhedron suite", failures)
