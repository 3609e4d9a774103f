"""Cones, fans, star subdivisions and star-closed subsets of fans."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .lattice import (
    apply_map,
    box_points,
    determinant,
    dot,
    identity,
    integral_direction,
    nullspace,
    primitive,
    quotient_map,
    rank,
    smith_invariants,
    solve_exact,
    transpose,
)
from .polyhedral import HRep, cone_hull, double_description, facets_of


class FanError(ValueError):
    pass


Ray = tuple[int, ...]


@dataclass(frozen=True)
class Cone:
    """A strongly convex rational polyhedral cone given by its primitive rays."""

    rays: tuple[Ray, ...]
    ambient: int

    @cached_property
    def dim(self) -> int:
        return rank(self.rays) if self.rays else 0

    @cached_property
    def hrep(self) -> HRep:
        return facets_of(self.rays, self.ambient)

    @property
    def is_simplicial(self) -> bool:
        return len(self.rays) == self.dim

    def contains(self, v) -> bool:
        return self.hrep.contains(v)

    def contains_in_interior(self, v) -> bool:
        """v lies in the relative interior."""
        h = self.hrep
        return all(dot(e, v) == 0 for e in h.equations) and all(dot(a, v) > 0 for a in h.inequalities)

    @cached_property
    def facet_ray_sets(self) -> tuple[frozenset, ...]:
        """Ray subsets (as ray tuples) spanning the facets."""
        return tuple(
            frozenset(r for r in self.rays if dot(a, r) == 0) for a in self.hrep.inequalities
        )

    @cached_property
    def face_ray_sets(self) -> frozenset:
        """All faces, including the cone itself and the origin (empty set)."""
        top = frozenset(self.rays)
        faces = {top}
        frontier = [top]
        while frontier:
            nxt = []
            for f in frontier:
                for fs in self.facet_ray_sets:
                    g = f & fs
                    if g not in faces:
                        faces.add(g)
                        nxt.append(g)
            frontier = nxt
        return frozenset(faces)

    def interior_point(self) -> Ray:
        if not self.rays:
            return tuple(0 for _ in range(self.ambient))
        return tuple(sum(r[i] for r in self.rays) for i in range(self.ambient))

    def __repr__(self) -> str:
        return "Cone<" + ", ".join(str(r) for r in self.rays) + ">"


def build_cone(generators: Sequence[Sequence[int]], ambient: Optional[int] = None) -> Cone:
    """Minimal primitive generators of the cone spanned by ``generators``."""
    gens = [tuple(int(x) for x in g) for g in generators]
    if not gens:
        if ambient is None:
            raise FanError("empty generator list needs an explicit ambient rank")
        return Cone((), ambient)
    n = len(gens[0]) if ambient is None else ambient
    if any(len(g) != n for g in gens):
        raise FanError("generators have inconsistent lengths")
    gens = [g for g in gens if any(g)]
    if not gens:
        return Cone((), n)
    hull = cone_hull(gens, n)
    if not hull.is_pointed:
        raise FanError("not strongly convex")
    return Cone(tuple(sorted(primitive(r) for r in hull.rays)), n)


def _cone_from_rays(rays: Iterable[Ray], n: int) -> Cone:
    return Cone(tuple(sorted(rays)), n)


@dataclass(frozen=True)
class Wall:
    rays: frozenset
    cones: tuple[frozenset, ...]  # one or two maximal cones, as ray sets

    @property
    def is_interior(self) -> bool:
        return len(self.cones) == 2


class Fan:
    """A finite fan, stored by its maximal cones.

    Cones are addressed by frozensets of their primitive rays.
    """

    def __init__(self, ambient: int, maximal: Iterable[Cone], validate: bool = True):
        self.ambient = ambient
        cones = {frozenset(c.rays): c for c in maximal}
        keys = sorted(cones, key=lambda k: (-len(k), sorted(k)))
        # drop cones that are faces of other listed cones
        maxl: list[frozenset] = []
        for k in keys:
            if any(k < m and k in cones[m].face_ray_sets for m in maxl):
                continue
            maxl.append(k)
        self._max = {k: cones[k] for k in sorted(maxl, key=lambda k: sorted(k))}
        if validate:
            self._validate()

    # -- construction helpers
    def _validate(self) -> None:
        items = list(self._max.items())
        for c in self._max.values():
            if any(len(r) != self.ambient for r in c.rays):
                raise FanError("cone rays do not match the ambient rank")
        for (ka, a), (kb, b) in itertools.combinations(items, 2):
            common = ka & kb
            if common not in a.face_ray_sets or common not in b.face_ray_sets:
                raise FanError(f"intersection not a face: {a} and {b}")
            meet = _intersection_rays(a, b, self.ambient)
            if meet is None or not set(meet) <= common:
                raise FanError(f"intersection not a face: {a} and {b}")

    # -- basic data
    @cached_property
    def rays(self) -> tuple[Ray, ...]:
        return tuple(sorted({r for c in self._max.values() for r in c.rays}))

    @property
    def maximal_cones(self) -> list[Cone]:
        return list(self._max.values())

    @property
    def maximal_keys(self) -> list[frozenset]:
        return list(self._max)

    @cached_property
    def cones(self) -> dict[frozenset, Cone]:
        out: dict[frozenset, Cone] = {}
        for c in self._max.values():
            for f in c.face_ray_sets:
                if f not in out:
                    out[f] = _cone_from_rays(f, self.ambient)
        return out

    def cone(self, rays: Iterable[Ray]) -> Cone:
        k = frozenset(rays)
        if k not in self.cones:
            raise FanError(f"not a cone of the fan: {sorted(k)}")
        return self.cones[k]

    def is_pure(self) -> bool:
        return all(c.dim == self.ambient for c in self._max.values())

    def is_simplicial(self) -> bool:
        return all(c.is_simplicial for c in self._max.values())

    def is_smooth(self) -> bool:
        return all(classify_cone(c).kind == "smooth" for c in self._max.values())

    @cached_property
    def walls(self) -> list[Wall]:
        adj: dict[frozenset, list[frozenset]] = {}
        for k, c in self._max.items():
            if c.dim != self.ambient:
                continue
            for f in c.facet_ray_sets:
                adj.setdefault(f, []).append(k)
        return [Wall(w, tuple(adj[w])) for w in sorted(adj, key=lambda s: sorted(s))]

    @property
    def interior_walls(self) -> list[Wall]:
        return [w for w in self.walls if w.is_interior]

    def contains(self, v) -> bool:
        return any(c.contains(v) for c in self._max.values())

    def minimal_cone_containing(self, v) -> Optional[Cone]:
        best = None
        for c in self._max.values():
            if c.contains(v):
                # the face of c containing v in its relative interior
                tight = frozenset(c.rays)
                for a in c.hrep.inequalities:
                    if dot(a, v) == 0:
                        tight = tight & frozenset(r for r in c.rays if dot(a, r) == 0)
                face = self.cones[tight]
                if best is None or face.dim < best.dim:
                    best = face
        return best

    def maximal_cones_containing(self, v) -> list[Cone]:
        return [c for c in self._max.values() if c.contains(v)]

    def __eq__(self, other) -> bool:
        return isinstance(other, Fan) and self.ambient == other.ambient and set(self._max) == set(other._max)

    def __hash__(self) -> int:
        return hash((self.ambient, frozenset(self._max)))

    def __repr__(self) -> str:
        return f"Fan(dim={self.ambient}, rays={len(self.rays)}, maximal={len(self._max)})"


def _intersection_rays(a: Cone, b: Cone, n: int) -> Optional[list[Ray]]:
    """Extreme rays of a ∩ b (None if the intersection is not pointed, which cannot happen)."""
    ha, hb = a.hrep, b.hrep
    ineqs = list(ha.inequalities) + list(hb.inequalities)
    for e in list(ha.equations) + list(hb.equations):
        ineqs.append(e)
        ineqs.append(tuple(-x for x in e))
    res = double_description(ineqs, n)
    if res.lineality:
        return None
    return [primitive(r) for r in res.rays]


def build_fan(maximal_cones: Iterable[Sequence[Sequence[int]]], ambient: Optional[int] = None) -> Fan:
    cones = []
    for gens in maximal_cones:
        c = build_cone(gens, ambient)
        if ambient is None:
            ambient = c.ambient
        elif c.ambient != ambient:
            raise FanError("cones have different ambient ranks")
        cones.append(c)
    if ambient is None:
        raise FanError("empty fan needs an explicit ambient rank")
    return Fan(ambient, cones)


def fan_from_indices(rays: Sequence[Sequence[int]], cones: Sequence[Sequence[int]]) -> Fan:
    rs = [tuple(int(x) for x in r) for r in rays]
    return build_fan([[rs[i] for i in c] for c in cones], len(rs[0]))


# --------------------------------------------------------------------------
# completeness and support


def probe_directions(fan: Fan) -> list[Ray]:
    n = fan.ambient
    probes = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        probes.append(tuple(e))
        e[i] = -1
        probes.append(tuple(e))
    for c in fan.maximal_cones:
        for a in c.hrep.inequalities:
            probes.append(tuple(a))
            probes.append(tuple(-x for x in a))
    return probes


def is_complete(fan: Fan) -> bool:
    """Support equals the whole space.

    A pure n-dimensional fan in which every wall bounds exactly two maximal
    cones covers the space (its support is closed, and its boundary would
    otherwise contain a one-sided wall); the probe coverage is an extra check.
    """
    if not fan.maximal_cones or not fan.is_pure():
        return False
    if any(len(w.cones) != 2 for w in fan.walls):
        return False
    return all(fan.contains(p) for p in probe_directions(fan))


def _covered(piece_cones: list[Cone], outer: Cone) -> bool:
    """Do full-dimensional subcones (meeting in faces) cover ``outer``?"""
    d = outer.dim
    pieces = [p for p in piece_cones if p.dim == d]
    if not pieces:
        return d == 0
    count: dict[frozenset, int] = {}
    for p in pieces:
        for f in p.facet_ray_sets:
            count[f] = count.get(f, 0) + 1
    outer_facets = outer.hrep.inequalities
    for f, k in count.items():
        if k == 2:
            continue
        if k > 2:
            return False
        pt = _cone_from_rays(f, outer.ambient).interior_point()
        if not any(dot(a, pt) == 0 for a in outer_facets):
            return False
    return True


def is_refinement(fine: Fan, coarse: Fan) -> bool:
    """Every cone of ``fine`` lies in a cone of ``coarse`` and the supports agree."""
    if fine.ambient != coarse.ambient:
        return False
    for c in fine.maximal_cones:
        if not any(all(big.contains(r) for r in c.rays) for big in coarse.maximal_cones):
            return False
    for big in coarse.maximal_cones:
        # faces of fine cones of the right dimension lying in big
        cand = {}
        for c in fine.maximal_cones:
            for face in c.face_ray_sets:
                if len(face) and all(big.contains(r) for r in face):
                    cone = fine.cones[face]
                    if cone.dim == big.dim:
                        cand[face] = cone
        if not _covered(list(cand.values()), big):
            return False
    return True


def same_support(a: Fan, b: Fan) -> bool:
    common = common_refinement(a, b)
    return common is not None and is_refinement(common, a) and is_refinement(common, b)


def common_refinement(a: Fan, b: Fan) -> Optional[Fan]:
    """The fan of intersections σ ∩ τ (maximal pieces only); ``None`` if empty."""
    pieces = []
    for s in a.maximal_cones:
        for t in b.maximal_cones:
            rs = _intersection_rays(s, t, a.ambient)
            if rs is None:
                continue
            c = _cone_from_rays(rs, a.ambient)
            if c.dim == max(s.dim, t.dim) or c.dim == min(s.dim, t.dim):
                pieces.append(c)
    if not pieces:
        return None
    return Fan(a.ambient, pieces)


# --------------------------------------------------------------------------
# classification of cones


@dataclass(frozen=True)
class ConeType:
    kind: str  # "smooth", "simplicial", "non-simplicial"
    index: Optional[int] = None
    weights: Optional[tuple[int, ...]] = None

    def quotient_label(self) -> Optional[str]:
        if self.weights is None or self.index is None:
            return None
        return f"1/{self.index}(" + ",".join(str(w) for w in self.weights) + ")"

    def __str__(self) -> str:
        if self.kind == "smooth":
            return "smooth"
        if self.kind == "non-simplicial":
            return "non-simplicial"
        lab = self.quotient_label()
        return f"simplicial index {self.index}" + (f" type {lab}" if lab else "")


def classify_cone(cone: Cone) -> ConeType:
    if not cone.rays:
        return ConeType("smooth", 1, ())
    if not cone.is_simplicial:
        return ConeType("non-simplicial")
    inv = smith_invariants(cone.rays)
    index = 1
    for d in inv:
        index *= d
    if index == 1:
        return ConeType("smooth", 1, None)
    weights = None
    if sum(1 for d in inv if d > 1) == 1:
        best = None
        for _pt, lam in box_points(cone.rays):
            den = 1
            for l in lam:
                den = den * l.denominator // _gcd(den, l.denominator)
            if den != index:
                continue
            w = tuple(int(l * index) for l in lam)
            if best is None or w < best:
                best = w
        weights = best
    return ConeType("simplicial", index, weights)


def _gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def singular_cones(fan: Fan) -> list[tuple[Cone, ConeType]]:
    out = []
    for c in fan.maximal_cones:
        t = classify_cone(c)
        if t.kind != "smooth":
            out.append((c, t))
    return out


def linear_relations(vectors: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Integral basis (primitive rows) of the relation space {a : sum a_i v_i = 0}."""
    vs = [list(v) for v in vectors]
    if not vs:
        return []
    ns = nullspace(transpose(vs), len(vs))
    return [integral_direction(v) for v in ns]


# --------------------------------------------------------------------------
# subdivisions


def star_subdivision(fan: Fan, v: Sequence[int]) -> Fan:
    """Star subdivision of ``fan`` at the primitive lattice point ``v``."""
    v = tuple(int(x) for x in v)
    if not any(v):
        raise FanError("cannot subdivide at the origin")
    v = primitive(v)
    if not fan.contains(v):
        raise FanError(f"point {v} outside support")
    new = []
    for c in fan.maximal_cones:
        if not c.contains(v):
            new.append(c)
            continue
        # keep the faces of c that avoid v, then cone them with v
        for f in c.facet_ray_sets:
            face = _cone_from_rays(f, fan.ambient)
            if face.contains(v):
                continue
            new.append(_cone_from_rays(set(f) | {v}, fan.ambient))
    return Fan(fan.ambient, new, validate=False)


def pulling_triangulation(cone: Cone) -> list[Cone]:
    """Triangulate a cone by pulling its rays in lexicographic order."""
    if cone.is_simplicial:
        return [cone]
    first = cone.rays[0]
    out = []
    for f in cone.facet_ray_sets:
        if first in f:
            continue
        face = _cone_from_rays(f, cone.ambient)
        for simplex in pulling_triangulation(face):
            out.append(_cone_from_rays(set(simplex.rays) | {first}, cone.ambient))
    return out


def triangulate(fan: Fan) -> Fan:
    """A simplicial refinement with the same rays (pulling, lexicographic)."""
    if fan.is_simplicial():
        return fan
    v = fan.rays
    cur = fan
    # pulling each ray in turn refines every cone containing it compatibly
    for r in v:
        if cur.is_simplicial():
            break
        cur = star_subdivision(cur, r)
    return cur


# --------------------------------------------------------------------------
# quotients, star fans


@dataclass
class QuotientFan:
    """Image of cones modulo a saturated sublattice, together with the projection."""

    fan: Fan
    projection: list[list[int]]  # x -> x P
    source_cones: dict[frozenset, frozenset] = field(default_factory=dict)

    def project(self, v) -> tuple:
        return apply_map(v, self.projection)


def star_fan(fan: Fan, tau_rays: Iterable[Ray]) -> QuotientFan:
    """Fan of the orbit closure V(tau): cones containing tau, modulo span(tau)."""
    tau = frozenset(tau_rays)
    if tau not in fan.cones:
        raise FanError("not a cone of the fan")
    n = fan.ambient
    P = quotient_map(list(tau), n) if tau else identity(n)
    m = len(P[0]) if P and P[0] else 0
    new, src = [], {}
    for k, c in fan.cones.items():
        if not tau <= k:
            continue
        imgs = [primitive(apply_map(r, P)) for r in c.rays if r not in tau]
        img = _cone_from_rays(set(imgs), m)
        src[frozenset(img.rays)] = k
    # maximal ones
    tops = [k for k in src if not any(k < o for o in src)]
    sub = Fan(m, [_cone_from_rays(k, m) for k in tops], validate=False)
    return QuotientFan(sub, P, src)


def quotient_by_lineality(cones: list[Cone], lineality: list[Ray], n: int) -> QuotientFan:
    """Project cones modulo a saturated linear subspace (used for fibrations)."""
    P = quotient_map(lineality, n) if lineality else identity(n)
    m = len(P[0]) if P and P[0] else 0
    imgs = []
    for c in cones:
        pts = [apply_map(r, P) for r in c.rays]
        pts = [p for p in pts if any(p)]
        if pts:
            imgs.append(build_cone(pts, m))
        else:
            imgs.append(Cone((), m))
    return QuotientFan(Fan(m, imgs), P)


# --------------------------------------------------------------------------
# star-closed subsets


class StarClosedSubset:
    """A subset Φ of cones of a fan, closed under passing to larger cones."""

    def __init__(self, fan: Fan, cones: Iterable[Iterable[Ray]]):
        self.fan = fan
        self.cones = frozenset(frozenset(c) for c in cones)
        for c in self.cones:
            if c not in fan.cones:
                raise FanError(f"not a cone of the fan: {sorted(c)}")

    def is_star_closed(self) -> bool:
        return star_closed(self.fan, self.cones)

    @property
    def minimal_cones(self) -> list[frozenset]:
        return sorted(
            (c for c in self.cones if not any(o < c for o in self.cones)),
            key=lambda s: (len(s), sorted(s)),
        )


def star_closed(fan: Fan, phi: Iterable[Iterable[Ray]]) -> bool:
    phi = {frozenset(c) for c in phi}
    for s in phi:
        for t, cone in fan.cones.items():
            if s <= t and s in cone.face_ray_sets and t not in phi:
                return False
    return True


def star_of(fan: Fan, tau: Iterable[Ray]) -> set[frozenset]:
    tau = frozenset(tau)
    return {k for k in fan.cones if tau <= k}


def qlc_centers(fan: Fan, phi: Iterable[Iterable[Ray]]) -> list[Cone]:
    """Cones σ ∈ Φ, one per qlc center V(σ), sorted by dimension then rays."""
    cones = [fan.cones[frozenset(c)] for c in phi]
    return sorted(cones, key=lambda c: (c.dim, c.rays))


# --------------------------------------------------------------------------
# isomorphism


def find_isomorphism(a: Fan, b: Fan) -> Optional[list[list[int]]]:
    """A unimodular matrix g (row convention v -> v g) mapping fan a onto fan b."""
    n = a.ambient
    if b.ambient != n or len(a.rays) != len(b.rays) or len(a.maximal_cones) != len(b.maximal_cones):
        return None
    # choose n independent rays of a, preferring ones inside one maximal cone
    base = None
    for c in a.maximal_cones:
        for combo in itertools.combinations(c.rays, n):
            if rank(list(combo)) == n:
                base = list(combo)
                break
        if base:
            break
    if base is None:
        return None
    target_keys = set(b.maximal_keys)
    b_rays = set(b.rays)
    for c in b.maximal_cones:
        if len(c.rays) < n:
            continue
        for combo in itertools.permutations(c.rays, n):
            if rank(list(combo)) != n:
                continue
            # g with base[i] g = combo[i]: g = B^{-1} C
            cols = []
            for j in range(n):
                col = solve_exact(base, [combo[i][j] for i in range(n)])
                cols.append(col)
            g = [[cols[j][i] for j in range(n)] for i in range(n)]
            if any(Fraction(x).denominator != 1 for row in g for x in row):
                continue
            g = [[int(x) for x in row] for row in g]
            if abs(determinant(g)) != 1:
                continue
            img = {r: tuple(sum(r[i] * g[i][j] for i in range(n)) for j in range(n)) for r in a.rays}
            if set(img.values()) != b_rays:
                continue
            if {frozenset(img[r] for r in k) for k in a.maximal_keys} == target_keys:
                return g
    return None
