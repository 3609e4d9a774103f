"""Seeded random fans and divisors shared by the property and acceptance tests."""

from __future__ import annotations

import random
from fractions import Fraction

from toricmmp import examples as ex
from toricmmp.divisor import Divisor
from toricmmp.fan import Fan, star_subdivision
from toricmmp.lattice import primitive

ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}

BOUNDARY_COEFFS = [Fraction(0), Fraction(0), Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(1)]


def seeds(dim: int) -> list[Fan]:
    if dim == 2:
        return [ex.p2(), ex.hirzebruch(0), ex.hirzebruch(1), ex.hirzebruch(2), ex.hirzebruch(3)]
    return [
        ex.projective_space(3),
        ex.projective_bundle_fan(ex.p2(), [[1, 0, 0]]),
        ex.projective_bundle_fan(ex.p1(), [[1, 0], [2, 0]]),
        ex.francia_x5(),
    ]


def random_smooth_fan(rng: random.Random, dim: int, steps: int = 2) -> Fan:
    """Blow-ups of smooth seeds at torus-fixed points and invariant curves."""
    fan = rng.choice(seeds(dim))
    for _ in range(rng.randint(0, steps)):
        c = rng.choice(fan.maximal_cones)
        k = rng.randint(2, len(c.rays))
        rays = rng.sample(list(c.rays), k)
        fan = star_subdivision(fan, tuple(map(sum, zip(*rays))))
    return fan


def random_simplicial_fan(rng: random.Random, dim: int, steps: int = 2) -> Fan:
    """Star subdivisions at random positive lattice points; stays simplicial, usually singular."""
    fan = random_smooth_fan(rng, dim, 1)
    for _ in range(rng.randint(1, steps)):
        c = rng.choice(fan.maximal_cones)
        w = [rng.randint(1, 3) for _ in c.rays]
        v = primitive(tuple(sum(a * r[i] for a, r in zip(w, c.rays)) for i in range(dim)))
        if v in fan.rays:
            continue
        fan = star_subdivision(fan, v)
    return fan


def random_boundary(rng: random.Random, fan: Fan) -> Divisor:
    return Divisor(fan, {r: rng.choice(BOUNDARY_COEFFS) for r in fan.rays})


def random_divisor(rng: random.Random, fan: Fan, low: int = -3, high: int = 3) -> Divisor:
    return Divisor(fan, {r: rng.randint(low, high) for r in fan.rays})


def trace_violations(trace) -> list[str]:
    """Invariant breaches of one MMP run; an empty list means the run is sound."""
    out = []
    for i, s in enumerate(trace.steps):
        if s.kind == "fibration":
            if i != len(trace.steps) - 1:
                out.append(f"step {i}: fibration before the end")
            continue
        both_qf = s.q_factorial_before and s.q_factorial_after
        if s.kind == "divisorial" and both_qf and s.rho_after != s.rho_before - 1:
            out.append(f"step {i}: divisorial rho {s.rho_before} -> {s.rho_after}")
        if s.kind == "flipping":
            if both_qf and s.rho_after != s.rho_before:
                out.append(f"step {i}: flip rho {s.rho_before} -> {s.rho_after}")
            if not s.certificates:
                out.append(f"step {i}: flip without discrepancy certificates")
            for c in s.certificates:
                if not c.after > c.before:
                    out.append(f"step {i}: discrepancy at {c.point} went {c.before} -> {c.after}")
        if not s.signature_consistent:
            out.append(f"step {i}: wall signatures disagree with the contraction type")
    return out


def random_nef_divisor(rng: random.Random, fan: Fan) -> Divisor:
    """A random integral divisor pushed into the nef cone by adding multiples of an ample one."""
    from toricmmp.mori import NumericalLattice, is_nef, is_projective

    A = is_projective(fan).certificate
    L = NumericalLattice(fan)
    D = random_divisor(rng, fan, -1, 2)
    while not is_nef(D, lattice=L):
        D = D + A
    return D
