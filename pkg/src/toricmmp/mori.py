"""Wall curves, numerical classes, the Mori cone and positivity tests."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from .divisor import (
    Divisor,
    DivisorError,
    SupportFunction,
    canonical_divisor,
    q_cartier_space,
    support_function,
)
from .fan import Fan, Wall, is_complete
from .lattice import dot, integral_direction, lcm, nullspace, primitive_normal, rank, rref, transpose
from .polyhedral import cone_hull, gordan_alternative, strict_feasible_point


class MoriError(ValueError):
    pass


Ray = tuple[int, ...]


@dataclass(frozen=True)
class CurveClass:
    """The invariant curve V(ω) of an interior wall ω = σ ∩ σ'."""

    wall: frozenset
    cones: tuple[frozenset, frozenset]
    normal: tuple[int, ...]  # primitive, vanishing on ω, positive on σ'
    relation: Optional[tuple[tuple[Ray, int], ...]]  # when the rays of σ ∪ σ' have a unique relation

    @property
    def signature(self) -> Optional[tuple[int, int]]:
        if self.relation is None:
            return None
        pos = sum(1 for _r, a in self.relation if a > 0)
        neg = sum(1 for _r, a in self.relation if a < 0)
        return pos, neg

    def label(self) -> str:
        return "V<" + ", ".join(str(r) for r in sorted(self.wall)) + ">"


def wall_curve(fan: Fan, wall: Wall) -> CurveClass:
    if not wall.is_interior:
        raise MoriError("boundary walls carry no complete curve")
    s, t = wall.cones
    n = primitive_normal(list(wall.rays), fan.ambient)
    u = next(r for r in t if r not in wall.rays)
    if dot(n, u) < 0:
        n = tuple(-x for x in n)
    rays = sorted(s | t)
    rel = nullspace([list(col) for col in zip(*rays)], len(rays))
    relation = None
    if len(rel) == 1:
        a = integral_direction(rel[0])
        # orient so that the rays off the wall get positive coefficients
        off = next(r for r in rays if r not in wall.rays)
        if a[rays.index(off)] < 0:
            a = tuple(-x for x in a)
        relation = tuple(zip(rays, a))
    return CurveClass(wall.rays, (s, t), n, relation)


def intersection_number(D: Divisor, C: CurveClass, sf: Optional[SupportFunction] = None) -> Fraction:
    """D · V(ω) from the kink of the support function across ω.

    With m_σ - m_σ' = c · n_ω (n_ω primitive normal to ω, positive on σ'),
    the intersection number is c.
    """
    if sf is None:
        sf = support_function(D)
    if sf is None:
        raise MoriError("divisor is not Q-Cartier")
    s, t = C.cones
    u = next(r for r in t if r not in C.wall)
    # <m_σ', u> = -d_u
    return (dot(sf.data[s], u) + D[u]) / dot(C.normal, u)


class NumericalLattice:
    """N^1 and N_1 (absolute, or relative over a coarser fan) with the pairing."""

    def __init__(self, fan: Fan, base: Optional[Fan] = None):
        self.fan = fan
        self.base = base
        if base is None:
            if not is_complete(fan):
                raise MoriError("fan is neither complete nor given over a base")
            walls = fan.interior_walls
        else:
            walls = [w for w in fan.interior_walls if _contracted(w, base)]
        self.curves = [wall_curve(fan, w) for w in walls]
        basis = q_cartier_space(fan)
        rows, _piv = rref(basis) if basis else ([], [])
        self.cdiv_basis = [tuple(r) for r in rows]
        self._sfs = [support_function(Divisor.from_list(fan, b)) for b in self.cdiv_basis]
        self.pairing = [
            [intersection_number(Divisor.from_list(fan, b), c, sf) for b, sf in zip(self.cdiv_basis, self._sfs)]
            for c in self.curves
        ]
        if self.pairing and self.cdiv_basis:
            red, piv = rref(self.pairing)
        else:
            red, piv = [], []
        self.pivots = piv
        self.rho = len(piv)

    def class_of(self, C: CurveClass) -> tuple[Fraction, ...]:
        i = self.curves.index(C)
        return tuple(self.pairing[i][p] for p in self.pivots)

    @cached_property
    def curve_coordinates(self) -> list[tuple[Fraction, ...]]:
        return [tuple(row[p] for p in self.pivots) for row in self.pairing]

    def divisor_functional(self, D: Divisor) -> list[Fraction]:
        sf = support_function(D)
        if sf is None:
            raise MoriError("divisor is not Q-Cartier")
        return [intersection_number(D, c, sf) for c in self.curves]

    def pairing_matrix(self) -> list[list[Fraction]]:
        """ρ x ρ matrix: curve coordinates against a basis of N^1."""
        # independent curve rows and independent divisor columns
        rows_idx = _independent_rows(self.pairing)
        cols_idx = _independent_rows(transpose(self.pairing)) if self.pairing else []
        return [[self.pairing[i][j] for j in cols_idx] for i in rows_idx]

    def is_numerically_trivial(self, C: CurveClass) -> bool:
        return all(x == 0 for x in self.class_of(C))


def _independent_rows(mat) -> list[int]:
    chosen, acc = [], []
    for i, row in enumerate(mat):
        if rank(acc + [row]) > len(acc):
            acc.append(row)
            chosen.append(i)
    return chosen


def _contracted(w: Wall, base: Fan) -> bool:
    pt = tuple(sum(r[i] for r in w.rays) for i in range(base.ambient))
    c = base.minimal_cone_containing(pt)
    return c is not None and c.dim == base.ambient


def numerical_spaces(fan: Fan, base: Optional[Fan] = None) -> NumericalLattice:
    return NumericalLattice(fan, base)


def picard_number(fan: Fan, base: Optional[Fan] = None) -> int:
    return NumericalLattice(fan, base).rho


# --------------------------------------------------------------------------
# Mori cone


@dataclass
class ExtremalRay:
    direction: tuple[int, ...]  # primitive, in N_1 coordinates
    curves: list[CurveClass]


@dataclass
class MoriCone:
    lattice: NumericalLattice
    rays: list[ExtremalRay]
    lineality: tuple[tuple[int, ...], ...]
    zero_curves: list[CurveClass]

    @property
    def dimension(self) -> int:
        gens = [d.direction for d in self.rays] + list(self.lineality)
        return rank(gens) if gens else 0

    @property
    def is_whole_space(self) -> bool:
        return len(self.lineality) == self.lattice.rho

    @property
    def is_pointed(self) -> bool:
        return not self.lineality


def mori_cone(fan: Fan, base: Optional[Fan] = None, lattice: Optional[NumericalLattice] = None) -> MoriCone:
    L = lattice or NumericalLattice(fan, base)
    coords = L.curve_coordinates
    zero = [c for c, x in zip(L.curves, coords) if not any(x)]
    gens = [x for x in coords if any(x)]
    if not gens:
        return MoriCone(L, [], (), zero)
    hull = cone_hull(gens, L.rho)
    rays = []
    for d in hull.rays:
        on = [c for c, x in zip(L.curves, coords) if any(x) and _positive_multiple(x, d)]
        rays.append(ExtremalRay(d, on))
    return MoriCone(L, rays, hull.lineality, zero)


def _positive_multiple(x, d) -> bool:
    return integral_direction(x) == tuple(d)


# --------------------------------------------------------------------------
# positivity


@dataclass
class PositivityResult:
    holds: bool
    witness: Optional[CurveClass] = None
    values: list[Fraction] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.holds


def is_nef(D: Divisor, base: Optional[Fan] = None, lattice: Optional[NumericalLattice] = None) -> PositivityResult:
    L = lattice or NumericalLattice(D.fan, base)
    vals = L.divisor_functional(D)
    for c, v in zip(L.curves, vals):
        if v < 0:
            return PositivityResult(False, c, vals)
    return PositivityResult(True, None, vals)


def is_ample(D: Divisor, base: Optional[Fan] = None, lattice: Optional[NumericalLattice] = None) -> PositivityResult:
    """Strict convexity of the support function across every (contracted) wall."""
    L = lattice or NumericalLattice(D.fan, base)
    vals = L.divisor_functional(D)
    for c, v in zip(L.curves, vals):
        if v <= 0:
            return PositivityResult(False, c, vals)
    return PositivityResult(True, None, vals)


def positive_on_cone(D: Divisor, cone: MoriCone) -> bool:
    """D · z > 0 for every z in NE minus 0 (tested on extremal rays; NE must be pointed)."""
    if not cone.is_pointed:
        return False
    L = cone.lattice
    vals = L.divisor_functional(D)
    for r in cone.rays:
        c = r.curves[0]
        if vals[L.curves.index(c)] <= 0:
            return False
    return True


@dataclass
class ProjectivityResult:
    projective: bool
    certificate: Optional[Divisor]
    gordan_agrees: bool


def is_projective(fan: Fan, base: Optional[Fan] = None, lattice: Optional[NumericalLattice] = None) -> ProjectivityResult:
    """Existence of a divisor with positive kink across every (contracted) wall.

    Primary route: exact LP maximizing the minimal kink.  Independent route:
    Gordan's alternative (some functional is positive on all wall classes iff
    no class is zero and the cone they span is pointed).
    """
    L = lattice or NumericalLattice(fan, base)
    k = len(L.cdiv_basis)
    if not L.curves:
        zero = Divisor(fan)
        return ProjectivityResult(True, zero, True)
    x = strict_feasible_point(L.pairing, [], k)
    gordan = gordan_alternative(L.pairing, k)
    cert = None
    if x is not None:
        coeffs = [sum(xi * b[j] for xi, b in zip(x, L.cdiv_basis)) for j in range(len(fan.rays))]
        den = 1
        for c in coeffs:
            den = lcm(den, c.denominator)
        D = Divisor.from_list(fan, [c * den for c in coeffs])
        idx = support_function(D).cartier_index
        cert = idx * D
    return ProjectivityResult(x is not None, cert, gordan == (x is not None))


# --------------------------------------------------------------------------
# extremal rays and the canonical class


def k_plus(fan: Fan, boundary: Divisor) -> Divisor:
    return canonical_divisor(fan) + boundary


def negative_extremal_rays(fan: Fan, boundary: Divisor, base: Optional[Fan] = None,
                           cone: Optional[MoriCone] = None) -> list[tuple[ExtremalRay, Fraction]]:
    """(K+Δ)-negative extremal rays with the pairing of K+Δ on their first curve."""
    cone = cone or mori_cone(fan, base)
    L = cone.lattice
    vals = L.divisor_functional(k_plus(fan, boundary))
    out = []
    for r in cone.rays:
        v = vals[L.curves.index(r.curves[0])]
        if v < 0:
            out.append((r, v))
    return out


@dataclass
class LengthReport:
    length: Fraction
    curve: CurveClass
    within_2n: bool
    within_n_plus_1: bool


def extremal_length(fan: Fan, boundary: Divisor, ray: ExtremalRay, lattice: Optional[NumericalLattice] = None,
                    base: Optional[Fan] = None) -> LengthReport:
    L = lattice or NumericalLattice(fan, base)
    kd = k_plus(fan, boundary)
    sf = support_function(kd)
    if sf is None:
        raise MoriError("K + boundary is not Q-Cartier")
    best = None
    for c in ray.curves:
        v = -intersection_number(kd, c, sf)
        if v <= 0:
            raise MoriError("ray is not (K+boundary)-negative")
        if best is None or v < best[0]:
            best = (v, c)
    n = fan.ambient
    return LengthReport(best[0], best[1], best[0] <= 2 * n, best[0] <= n + 1)


@dataclass
class ScalingResult:
    lam: Fraction
    ray: Optional[ExtremalRay]


def scaling_lambda(fan: Fan, boundary: Divisor, C: Divisor, base: Optional[Fan] = None) -> ScalingResult:
    """λ = inf{t >= 0 : K + B + tC nef} and a (K+B)-negative ray where K+B+λC vanishes."""
    L = NumericalLattice(fan, base)
    kb = L.divisor_functional(k_plus(fan, boundary))
    cv = L.divisor_functional(C)
    if any(a + b < 0 for a, b in zip(kb, cv)):
        raise MoriError("K + B + C is not nef")
    lam = Fraction(0)
    for a, b in zip(kb, cv):
        if a < 0:
            lam = max(lam, -a / b)
    if lam == 0:
        return ScalingResult(Fraction(0), None)
    cone = mori_cone(fan, base, L)
    cands = []
    for r in cone.rays:
        i = L.curves.index(r.curves[0])
        if kb[i] < 0 and kb[i] + lam * cv[i] == 0:
            cands.append(r)
    cands.sort(key=lambda r: r.direction)
    return ScalingResult(lam, cands[0] if cands else None)
