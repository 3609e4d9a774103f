"""Constructors for the fans and divisors used throughout the test corpus."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .divisor import Divisor
from .fan import Cone, Fan, StarClosedSubset, build_fan, fan_from_indices, star_of, star_subdivision
from .mmp import flop_wall

Ray = tuple[int, ...]


def projective_space(n: int) -> Fan:
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [tuple([-1] * n)]
    cones = [[j for j in range(n + 1) if j != i] for i in range(n + 1)]
    return fan_from_indices(rays, cones)


def p1() -> Fan:
    return projective_space(1)


def p2() -> Fan:
    return projective_space(2)


def hirzebruch(a: int) -> Fan:
    """F_a with rays (1,0), (0,1), (-1,a), (0,-1); V((0,1)) has self-intersection -a."""
    rays = [(1, 0), (0, 1), (-1, a), (0, -1)]
    return fan_from_indices(rays, [[0, 1], [1, 2], [2, 3], [3, 0]])


def projective_bundle_fan(base: Fan, twists: Sequence[Sequence[int]]) -> Fan:
    """Fan of P(O ⊕ O(D_1) ⊕ ... ⊕ O(D_r)) over the toric variety of ``base``.

    ``twists[i]`` lists the coefficients of D_i in the ray order of ``base``.
    A base ray u lifts to (u, a_1(u), ..., a_r(u)); the fiber rays are the
    unit vectors e_i and v_0 = -(e_1 + ... + e_r).  The divisor V(v_0) is
    the tautological class.
    """
    r = len(twists)
    n = base.ambient
    lift = {u: tuple(u) + tuple(int(t[i]) for t in twists) for i, u in enumerate(base.rays)}
    fiber = [tuple([0] * n + [int(i == j) for j in range(r)]) for i in range(r)]
    fiber.append(tuple([0] * n + [-1] * r))
    cones = []
    for c in base.maximal_cones:
        lifted = [lift[u] for u in c.rays]
        for skip in range(r + 1):
            cones.append(lifted + [f for j, f in enumerate(fiber) if j != skip])
    return build_fan(cones, n + r)


def bundle_rays(base: Fan, twists: Sequence[Sequence[int]]) -> dict[str, Ray]:
    """Named rays of :func:`projective_bundle_fan`: base lifts 'u0', 'u1', ... and fiber 'v0', 'v1', ..."""
    r = len(twists)
    n = base.ambient
    out = {f"u{i}": tuple(u) + tuple(int(t[i]) for t in twists) for i, u in enumerate(base.rays)}
    out["v0"] = tuple([0] * n + [-1] * r)
    for i in range(r):
        out[f"v{i + 1}"] = tuple([0] * n + [int(i == j) for j in range(r)])
    return out


# --------------------------------------------------------------------------
# non-projective complete examples

KLEIMAN_RAYS = [(1, 0, 1), (0, 1, 1), (-1, -1, 1), (1, 0, -1), (0, 1, -1), (-1, -1, -1)]
KLEIMAN_CONES = [[0, 1, 3], [1, 3, 4], [1, 2, 4, 5], [0, 2, 3, 5], [0, 1, 2], [3, 4, 5]]


def kleiman() -> Fan:
    """Complete non-projective threefold of Picard number one with a numerically trivial curve."""
    return fan_from_indices(KLEIMAN_RAYS, KLEIMAN_CONES)


FP_RAYS = {
    "v1": (1, 0, 0),
    "v2": (0, 1, 0),
    "v3": (0, 0, 1),
    "v4": (0, -1, -1),
    "v5": (-1, 0, -1),
    "v6": (-2, -1, 0),
    "v7": (-1, -1, -1),
    "v8": (-2, -1, -1),
}


def fp_x1() -> Fan:
    v = FP_RAYS
    cones = [
        ("v1", "v2", "v3"),
        ("v1", "v3", "v6"),
        ("v1", "v2", "v5"),
        ("v1", "v5", "v6"),
        ("v2", "v3", "v5"),
        ("v3", "v5", "v6"),
    ]
    return build_fan([[v[k] for k in c] for c in cones], 3)


def fp_y() -> Fan:
    """Three star subdivisions of :func:`fp_x1`, at v4, v7 and v8."""
    f = fp_x1()
    for k in ("v4", "v7", "v8"):
        f = star_subdivision(f, FP_RAYS[k])
    return f


def fp_x() -> Fan:
    """The flop of :func:`fp_y` across the wall ⟨v1, v5⟩."""
    return flop_wall(fp_y(), {FP_RAYS["v1"], FP_RAYS["v5"]})


# --------------------------------------------------------------------------
# flips

FRANCIA_RAYS = {
    "e1": (1, 0, 0),
    "e2": (0, 1, 0),
    "e3": (0, 0, 1),
    "e4": (1, 1, -2),
    "e5": (-1, -1, 1),
    "e6": (1, 1, -1),
}


def francia_x1() -> Fan:
    """P(1,1,1,2) from e1, e2, e4, e5."""
    v = FRANCIA_RAYS
    gens = [v["e1"], v["e2"], v["e4"], v["e5"]]
    return build_fan([[g for j, g in enumerate(gens) if j != i] for i in range(4)], 3)


def francia_x2() -> Fan:
    return star_subdivision(francia_x1(), FRANCIA_RAYS["e3"])


def francia_x5() -> Fan:
    return star_subdivision(francia_x2(), FRANCIA_RAYS["e6"])


def francia_bundle() -> Fan:
    """P_{P^1}(O ⊕ O(1) ⊕ O(2))."""
    base = p1()
    pt = [int(r == (1,)) for r in base.rays]
    return projective_bundle_fan(base, [pt, [2 * x for x in pt]])


LOGFLIP_RAYS = {"e1": (1, 0, 0), "e2": (-1, 2, 0), "e3": (0, 0, 1), "e4": (-1, 3, -3)}


def logflip_x() -> Fan:
    v = LOGFLIP_RAYS
    return build_fan([[v["e1"], v["e3"], v["e4"]], [v["e2"], v["e3"], v["e4"]]], 3)


def logflip_y() -> Fan:
    v = LOGFLIP_RAYS
    return build_fan([[v["e1"], v["e2"], v["e3"], v["e4"]]], 3)


def logflip_boundary(fan: Fan) -> Divisor:
    v = LOGFLIP_RAYS
    return Divisor(fan, {v["e1"]: 1, v["e3"]: 1})


def nonqfact_rays(n: int) -> list[Ray]:
    """e_0, ..., e_{n+2} of the non-Q-factorial canonical flip."""
    if n < 2:
        raise ValueError("n must be at least 2")
    rays = [(0, -1, 0)]
    for i in range(1, n + 2):
        rays.append((n + 1 - i, sum(range(n + 1 - i, n)), 1))
    rays.append((-1, 0, 1))
    return rays


def nonqfact_x(n: int) -> Fan:
    e = nonqfact_rays(n)
    return build_fan([[e[0], e[1], e[n + 2]], e[1 : n + 3]], 3)


def nonqfact_w(n: int) -> Fan:
    return build_fan([nonqfact_rays(n)], 3)


def nonqfact_xplus(n: int) -> Fan:
    e = nonqfact_rays(n)
    return build_fan([[e[0], e[i], e[i + 1]] for i in range(1, n + 2)], 3)


# --------------------------------------------------------------------------
# cohomology examples


@dataclass
class BundleExample:
    fan: Fan
    rays: dict[str, Ray]

    def divisor(self, **coeffs) -> Divisor:
        return Divisor(self.fan, {self.rays[k]: c for k, c in coeffs.items()})


def sommese() -> BundleExample:
    """P_{P^1}(O ⊕ O(1)^3), a P^3-bundle over P^1."""
    base = p1()
    pt = [int(r == (1,)) for r in base.rays]
    twists = [pt, pt, pt]
    return BundleExample(projective_bundle_fan(base, twists), bundle_rays(base, twists))


def sommese_sheaf() -> Divisor:
    """M^{-5} ⊗ π*O(3) with M = V(v0) tautological and π*O(1) = V(u0)."""
    ex = sommese()
    return ex.divisor(v0=-5, u0=3)


def f1_example() -> BundleExample:
    """F_1 = P_{P^1}(O ⊕ O(1)) with S = V(v1) negative section, H = V(v0), F = V(u0)."""
    base = p1()
    pt = [int(r == (1,)) for r in base.rays]
    return BundleExample(projective_bundle_fan(base, [pt]), bundle_rays(base, [pt]))


CONE_EX_RAYS = {
    "a": (1, 0, 0),
    "b": (0, 1, 1),
    "c": (-1, 0, 0),
    "d": (0, -1, 0),
    "x": (1, -1, 0),
    "up": (0, 0, 1),
    "down": (0, 0, -1),
}


def cone_ex_z() -> Fan:
    """P^1 x P^1 blown up at the fixed point ⟨(1,0),(0,-1)⟩."""
    rays = [(1, 0), (1, -1), (0, -1), (-1, 0), (0, 1)]
    return fan_from_indices(rays, [[0, 1], [1, 2], [2, 3], [3, 4], [4, 0]])


def cone_ex_m() -> Fan:
    """M = P_Z(O ⊕ O(A_0)) where A_0 = V((0,1)) on Z."""
    z = cone_ex_z()
    a0 = [int(r == (0, 1)) for r in z.rays]
    return projective_bundle_fan(z, [a0])


def cone_ex_subset() -> StarClosedSubset:
    """X = V((1,0,0)) ∪ V((1,-1,0)), the part of M over the fiber of Z over 0."""
    m = cone_ex_m()
    phi = star_of(m, [CONE_EX_RAYS["a"]]) | star_of(m, [CONE_EX_RAYS["x"]])
    return StarClosedSubset(m, phi)


def cone_ex_section(fan: Fan) -> Divisor:
    """The section E = V((0,0,-1)) of M -> Z; D+ is its restriction to X."""
    return Divisor.prime(fan, CONE_EX_RAYS["down"])


def boundary_subset(fan: Fan) -> StarClosedSubset:
    """The whole toric boundary: every nonzero cone."""
    return StarClosedSubset(fan, [k for k in fan.cones if k])


def two_lines() -> StarClosedSubset:
    """Two P^1's meeting in a point inside P^1 x P^1."""
    f = hirzebruch(0)
    return StarClosedSubset(f, star_of(f, [(1, 0)]) | star_of(f, [(0, 1)]))


def fixed_point_subset(fan: Fan, key) -> StarClosedSubset:
    return StarClosedSubset(fan, [frozenset(key)])
