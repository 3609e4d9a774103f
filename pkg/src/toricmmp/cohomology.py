"""Weight-by-weight Čech cohomology of invariant sheaves on complete toric varieties.

For a weight u in M, the u-graded piece of the Čech complex on the cover by
maximal-cone charts has a basis element for each set S of maximal cones such
that χ^u is a section on the chart of the intersection cone τ_S:

* O(D): ⟨u, e_ρ⟩ >= -d_ρ for every ray ρ of τ_S;
* I_Y ⊗ O(D): as for O(D), and moreover the face of τ_S spanned by the rays
  with ⟨u, e_ρ⟩ = -d_ρ is not in Φ (χ^u vanishes on every orbit of Y in
  the chart, D Cartier);
* O_Y(D): as for O(D), and that face is in Φ.

The first two supports are closed under enlarging S, so they span
subcomplexes; the third is their difference and carries the quotient
differential.  Only degrees up to n + 1 are materialized since higher
cohomology vanishes.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .divisor import Divisor, support_function
from .fan import Fan, StarClosedSubset, is_complete
from .lattice import dot, nullspace, rank, solve_exact

log = logging.getLogger(__name__)

Ray = tuple[int, ...]

O_D, IDEAL, RESTRICTION = "O(D)", "I_Y*O(D)", "O_Y(D)"
WINDOW_LIMIT = 2_000_000


class CohomologyError(ValueError):
    pass


@dataclass(frozen=True)
class SheafSpec:
    variant: str
    divisor: Divisor
    subset: Optional[StarClosedSubset] = None

    def __post_init__(self):
        if self.variant not in (O_D, IDEAL, RESTRICTION):
            raise CohomologyError(f"unknown sheaf variant {self.variant!r}")
        if self.variant != O_D:
            if self.subset is None:
                raise CohomologyError("ideal and restriction sheaves need a star-closed subset")
            if not self.subset.is_star_closed():
                raise CohomologyError("subset is not star closed")


@dataclass
class CohomologyTable:
    dims: list[int]
    weights: list[dict[tuple[int, ...], int]] = field(default_factory=list)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** i * h for i, h in enumerate(self.dims))

    def h(self, i: int) -> int:
        return self.dims[i] if 0 <= i < len(self.dims) else 0

    def as_dict(self) -> dict:
        return {
            "h": list(self.dims),
            "weights": [
                [{"u": list(u), "mult": m} for u, m in sorted(w.items())] for w in self.weights
            ],
        }


# --------------------------------------------------------------------------
# exact rank


def exact_rank(rows: Iterable[dict]) -> int:
    """Rank over Q of a sparse matrix given as dicts column -> entry.

    Fraction-free elimination: rows are scaled to primitive integer vectors
    after every update, which keeps the entries small for ±1 matrices.
    """
    pivots: dict[int, dict[int, int]] = {}
    r = 0
    for row in rows:
        den = 1
        for x in row.values():
            if isinstance(x, Fraction):
                den = den * x.denominator // math.gcd(den, x.denominator)
        v = {c: int(x * den) for c, x in row.items() if x}
        while v:
            c = min(v)
            p = pivots.get(c)
            if p is None:
                pivots[c] = v
                r += 1
                break
            a, b = p[c], v[c]
            g = math.gcd(a, b)
            a, b = a // g, b // g
            w = {k: a * x for k, x in v.items()}
            for k, x in p.items():
                y = w.get(k, 0) - b * x
                if y:
                    w[k] = y
                else:
                    w.pop(k, None)
            if w:
                g = 0
                for x in w.values():
                    g = math.gcd(g, x)
                if g > 1:
                    w = {k: x // g for k, x in w.items()}
            v = w
    return r


# --------------------------------------------------------------------------
# window


def arrangement_vertices(fan: Fan, coeffs: Sequence[Fraction]) -> list[tuple[Fraction, ...]]:
    n = fan.ambient
    rays = fan.rays
    out = set()
    for idx in itertools.combinations(range(len(rays)), n):
        A = [list(rays[i]) for i in idx]
        if rank(A) < n:
            continue
        out.add(solve_exact(A, [-coeffs[i] for i in idx]))
    return sorted(out)


@dataclass(frozen=True)
class Window:
    low: tuple[int, ...]
    high: tuple[int, ...]

    @property
    def size(self) -> int:
        return math.prod(h - l + 1 for l, h in zip(self.low, self.high))

    def points(self):
        return itertools.product(*(range(l, h + 1) for l, h in zip(self.low, self.high)))

    def doubled(self) -> "Window":
        lo, hi = [], []
        for l, h in zip(self.low, self.high):
            w = h - l + 1
            lo.append(l - (w + 1) // 2)
            hi.append(h + (w + 1) // 2)
        return Window(tuple(lo), tuple(hi))


def weight_window(fan: Fan, D: Divisor) -> Window:
    """A box containing every weight with nonzero cohomology of O(D) (and of I_Y, O_Y twists).

    A cell of the arrangement {⟨u,e_ρ⟩ = -d_ρ} carrying cohomology holds
    finitely many lattice points, hence is bounded, hence lies in the convex
    hull of the arrangement vertices.
    """
    if not is_complete(fan):
        raise CohomologyError("weight window needs a complete fan")
    coeffs = D.values()
    verts = arrangement_vertices(fan, coeffs)
    n = fan.ambient
    if not verts:
        raise CohomologyError("arrangement has no vertices")
    low = tuple(math.floor(min(v[i] for v in verts)) - 1 for i in range(n))
    high = tuple(math.ceil(max(v[i] for v in verts)) + 1 for i in range(n))
    return Window(low, high)


# --------------------------------------------------------------------------
# the Čech frame of a fan


class CechFrame:
    """Subsets of maximal cones up to size n + 2 with their intersection rays."""

    def __init__(self, fan: Fan, top: Optional[int] = None):
        self.fan = fan
        self.ray_index = {r: i for i, r in enumerate(fan.rays)}
        self.masks = []
        for k in fan.maximal_keys:
            m = 0
            for r in k:
                m |= 1 << self.ray_index[r]
            self.masks.append(m)
        N = len(self.masks)
        top = fan.ambient + 1 if top is None else top
        self.top = top
        self.simplices: list[list[tuple[int, ...]]] = []
        self.meet: dict[tuple[int, ...], int] = {}
        for k in range(min(top, N - 1) + 1):
            level = list(itertools.combinations(range(N), k + 1))
            self.simplices.append(level)
            for s in level:
                m = self.masks[s[0]]
                for i in s[1:]:
                    m &= self.masks[i]
                self.meet[s] = m

    def faces_of(self, s: tuple[int, ...]):
        """(coface, sign) pairs for the Čech coboundary out of ``s``."""
        N = len(self.masks)
        for i in range(N):
            if i in s:
                continue
            t = tuple(sorted(s + (i,)))
            yield t, (-1) ** t.index(i)

    def rays_of(self, mask: int) -> frozenset:
        return frozenset(r for r, i in self.ray_index.items() if mask >> i & 1)


def _pattern(fan: Fan, coeffs: Sequence[Fraction], u) -> tuple[int, int]:
    neg = zero = 0
    for i, r in enumerate(fan.rays):
        s = dot(u, r) + coeffs[i]
        if s < 0:
            neg |= 1 << i
        elif s == 0:
            zero |= 1 << i
    return neg, zero


def _support(frame: CechFrame, variant: str, neg: int, zero: int, phi: Optional[frozenset]):
    cache: dict[int, bool] = {}

    def in_phi(mask: int) -> bool:
        if mask not in cache:
            cache[mask] = frame.rays_of(mask) in phi
        return cache[mask]

    out = []
    for level in frame.simplices:
        keep = []
        for s in level:
            m = frame.meet[s]
            if m & neg:
                continue
            if variant == O_D:
                keep.append(s)
                continue
            face_in_phi = in_phi(m & zero)
            if (variant == IDEAL) != face_in_phi:
                keep.append(s)
        out.append(keep)
    return out


def _complex_dims(frame: CechFrame, support: list[list[tuple]], degrees: int) -> list[int]:
    """Cohomology dimensions of the cochains supported on ``support``."""
    index = [{s: j for j, s in enumerate(level)} for level in support]
    ranks = []
    for k in range(len(support)):
        if k + 1 >= len(support):
            ranks.append(0)
            continue
        nxt = index[k + 1]
        # coboundary as columns indexed by k-simplices: rows of the transpose
        rows = []
        for s in support[k]:
            row = {}
            for t, sign in frame.faces_of(s):
                j = nxt.get(t)
                if j is not None:
                    row[j] = sign
            rows.append(row)
        ranks.append(exact_rank(rows))
    dims = []
    for k in range(degrees + 1):
        if k >= len(support):
            dims.append(0)
            continue
        prev = ranks[k - 1] if k > 0 else 0
        dims.append(len(support[k]) - ranks[k] - prev)
    return dims


def _relative_dims(frame: CechFrame, support: list[list[tuple]], degrees: int) -> list[int]:
    """Cohomology of cochains on an upward-closed support, via its complement.

    The support is the complement of a subcomplex A of the full simplex Δ on
    the maximal cones, so the complex is C*(Δ, A) and, Δ being acyclic,
    H^k(Δ, A) = H~^{k-1}(A).  A only contains sets of cones sharing a ray,
    which keeps it small.
    """
    A = []
    for level, keep in zip(frame.simplices, support):
        kept = set(keep)
        A.append([s for s in level if s not in kept])
    ranks = {}
    # augmented cochains: degree -1 is the empty simplex
    for k in range(-1, degrees):
        src = [()] if k == -1 else (A[k] if k < len(A) else [])
        dst = {t: j for j, t in enumerate(A[k + 1])} if k + 1 < len(A) else {}
        rows = []
        for s in src:
            row = {}
            if k == -1:
                row = {j: 1 for j in range(len(dst))}
            else:
                for t, sign in frame.faces_of(s):
                    j = dst.get(t)
                    if j is not None:
                        row[j] = sign
            rows.append(row)
        ranks[k] = exact_rank(rows)
    dims = []
    for k in range(degrees + 1):
        d = k - 1
        size = 1 if d == -1 else (len(A[d]) if d < len(A) else 0)
        dims.append(size - ranks.get(d, 0) - ranks.get(d - 1, 0))
    return dims


def _integral_coeffs(D: Divisor) -> list[int]:
    if not D.is_integral():
        raise CohomologyError("divisor must be integral (round it first)")
    return [int(x) for x in D.values()]


def _require_cartier(D: Divisor) -> None:
    sf = support_function(D)
    if sf is None or not sf.is_cartier:
        raise CohomologyError("divisor is not Cartier")


def cech_cohomology(
    fan: Fan,
    sheaf: SheafSpec | Divisor,
    window: Optional[Window] = None,
    limit: int = WINDOW_LIMIT,
    direct: bool = False,
) -> CohomologyTable:
    """Cohomology of O(D), I_Y ⊗ O(D) or O_Y(D) on a complete fan.

    ``direct`` forces rank computations on the full Čech complex instead of
    the complement shortcut (same answer, used as a cross-check).
    """
    if isinstance(sheaf, Divisor):
        sheaf = SheafSpec(O_D, sheaf)
    D = sheaf.divisor
    if D.fan != fan:
        raise CohomologyError("divisor lives on a different fan")
    coeffs = _integral_coeffs(D)
    if sheaf.variant != O_D:
        _require_cartier(D)
    phi = sheaf.subset.cones if sheaf.subset is not None else None
    window = window or weight_window(fan, D)
    if window.size > limit:
        raise CohomologyError(f"weight window of {window.size} points exceeds the limit {limit}")
    n = fan.ambient
    frame = CechFrame(fan)
    cache: dict[tuple[int, int], list[int]] = {}
    totals = [0] * (n + 1)
    weights: list[dict] = [dict() for _ in range(n + 1)]
    for u in window.points():
        neg, zero = _pattern(fan, coeffs, u)
        key = (neg, zero if sheaf.variant != O_D else 0)
        dims = cache.get(key)
        if dims is None:
            support = _support(frame, sheaf.variant, neg, zero, phi)
            if sheaf.variant == RESTRICTION or direct:
                dims = _complex_dims(frame, support, n)
            else:
                dims = _relative_dims(frame, support, n)
            cache[key] = dims
        for i, h in enumerate(dims):
            if h:
                totals[i] += h
                weights[i][tuple(u)] = h
    log.debug("cech: %d weights, %d patterns", window.size, len(cache))
    return CohomologyTable(totals, weights)


def polyhedron_cohomology(subset: StarClosedSubset, D: Divisor, window: Optional[Window] = None) -> CohomologyTable:
    """Cohomology of D restricted to the toric polyhedron Y(Φ)."""
    return cech_cohomology(subset.fan, SheafSpec(RESTRICTION, D, subset), window)


def ideal_cohomology(subset: StarClosedSubset, D: Divisor, window: Optional[Window] = None) -> CohomologyTable:
    return cech_cohomology(subset.fan, SheafSpec(IDEAL, D, subset), window)


@dataclass
class VanishingReport:
    holds: bool
    ideal: CohomologyTable
    ambient: CohomologyTable
    restriction: CohomologyTable
    surjective: bool
    ample: bool

    def __bool__(self) -> bool:
        return self.holds


def ideal_vanishing_check(subset: StarClosedSubset, L: Divisor) -> VanishingReport:
    """Check H^i(I_Y ⊗ L) = 0 for i > 0 and H^0(X, L) -> H^0(Y, L) onto, for ample L."""
    from .mori import is_ample

    _require_cartier(L)
    ample = bool(is_ample(L))
    fan = subset.fan
    w = weight_window(fan, L)
    ideal = ideal_cohomology(subset, L, w)
    amb = cech_cohomology(fan, SheafSpec(O_D, L), w)
    res = polyhedron_cohomology(subset, L, w)
    # the image of H^0(L) in H^0(L|Y) has dimension h0(L) - h0(I L)
    surjective = amb.h(0) - ideal.h(0) == res.h(0)
    vanishing = all(h == 0 for h in ideal.dims[1:])
    return VanishingReport(ample and vanishing and surjective, ideal, amb, res, surjective, ample)


# --------------------------------------------------------------------------
# induced maps


def induced_map_kernel(fan: Fan, D1: Divisor, D2: Divisor, degree: int) -> int:
    """dim ker(H^degree(O(D1)) -> H^degree(O(D2))) for the inclusion given by D2 - D1 >= 0.

    Per weight, with Z the cocycles of the source and B the coboundaries,
    the kernel has dimension dim(Z1 ∩ B2) - dim B1.
    """
    c1, c2 = _integral_coeffs(D1), _integral_coeffs(D2)
    if any(b < a for a, b in zip(c1, c2)):
        raise CohomologyError("D2 - D1 must be effective")
    w1, w2 = weight_window(fan, D1), weight_window(fan, D2)
    window = Window(
        tuple(min(a, b) for a, b in zip(w1.low, w2.low)),
        tuple(max(a, b) for a, b in zip(w1.high, w2.high)),
    )
    frame = CechFrame(fan)
    total = 0
    cache: dict = {}
    for u in window.points():
        n1, _ = _pattern(fan, c1, u)
        n2, _ = _pattern(fan, c2, u)
        key = (n1, n2)
        if key not in cache:
            s1 = _support(frame, O_D, n1, 0, None)
            s2 = _support(frame, O_D, n2, 0, None)
            cache[key] = _kernel_at(frame, s1, s2, degree)
        total += cache[key]
    return total


def _coboundary_images(frame: CechFrame, support: list[list[tuple]], k: int) -> list[dict]:
    """Images d(s) of the basis cochains s in degree k - 1, as dicts over k-simplices."""
    if k == 0 or k - 1 >= len(support):
        return []
    allowed = set(support[k]) if k < len(support) else set()
    out = []
    for s in support[k - 1]:
        img = {t: sign for t, sign in frame.faces_of(s) if t in allowed}
        out.append(img)
    return out


def _cocycles(frame: CechFrame, support: list[list[tuple]], k: int) -> list[dict]:
    if k >= len(support) or not support[k]:
        return []
    cols = support[k]
    nxt = set(support[k + 1]) if k + 1 < len(support) else set()
    if not nxt:
        return [{s: Fraction(1)} for s in cols]
    rows_index = {t: i for i, t in enumerate(sorted(nxt))}
    mat = [[0] * len(cols) for _ in rows_index]
    for j, s in enumerate(cols):
        for t, sign in frame.faces_of(s):
            i = rows_index.get(t)
            if i is not None:
                mat[i][j] = sign
    basis = nullspace(mat, len(cols))
    return [{cols[j]: x for j, x in enumerate(v) if x} for v in basis]


def _kernel_at(frame: CechFrame, s1, s2, k: int) -> int:
    def encode(vecs):
        return [{order[t]: Fraction(x) for t, x in v.items()} for v in vecs]

    order = {s: i for i, s in enumerate(frame.simplices[k])} if k < len(frame.simplices) else {}
    Z1 = encode(_cocycles(frame, s1, k))
    if not Z1:
        return 0
    B1 = encode(_coboundary_images(frame, s1, k))
    B2 = encode(_coboundary_images(frame, s2, k))
    b1 = exact_rank(B1)
    b2 = exact_rank(B2)
    z1 = len(Z1)
    meet = z1 + b2 - exact_rank(Z1 + B2)
    return meet - b1


# --------------------------------------------------------------------------
# reduced-complex oracle


def _reduced_cohomology(simplices: set[frozenset], top: int) -> list[int]:
    """Reduced cohomology H~^{-1..top} of a simplicial complex given by all its faces."""
    by_dim: dict[int, list[frozenset]] = {}
    for s in simplices:
        by_dim.setdefault(len(s) - 1, []).append(s)
    for v in by_dim.values():
        v.sort(key=lambda s: sorted(s))
    ranks = {}
    for d in range(-1, top + 1):
        src = by_dim.get(d, [])
        dst = {s: i for i, s in enumerate(by_dim.get(d + 1, []))}
        rows = []
        for s in src:
            row = {}
            for t in dst:
                if s < t:
                    (extra,) = t - s
                    pos = sorted(t).index(extra)
                    row[dst[t]] = (-1) ** pos
            rows.append(row)
        ranks[d] = exact_rank(rows)
    out = []
    for d in range(-1, top + 1):
        out.append(len(by_dim.get(d, [])) - ranks[d] - ranks.get(d - 1, 0))
    return out


def cohomology_by_ray_complex(fan: Fan, D: Divisor, window: Optional[Window] = None) -> list[int]:
    """h^p(O(D)) from reduced cohomology of the negative-ray subcomplex (simplicial fans only)."""
    if not fan.is_simplicial():
        raise CohomologyError("ray-complex oracle needs a simplicial fan")
    coeffs = _integral_coeffs(D)
    window = window or weight_window(fan, D)
    n = fan.ambient
    cones = list(fan.cones)
    totals = [0] * (n + 1)
    cache: dict[frozenset, list[int]] = {}
    for u in window.points():
        neg = frozenset(r for r, d in zip(fan.rays, coeffs) if dot(u, r) + d < 0)
        if neg not in cache:
            faces = {c for c in cones if c <= neg}
            red = _reduced_cohomology(faces, n - 1)
            cache[neg] = red  # red[p] is H~^{p-1}
        for p in range(n + 1):
            totals[p] += cache[neg][p]
    return totals


# --------------------------------------------------------------------------
# Mayer–Vietoris resolution of a toric polyhedron


def _join(fan: Fan, parts: Iterable[frozenset]) -> Optional[frozenset]:
    """Smallest cone containing all ``parts``: V of it is their intersection."""
    union = frozenset().union(*parts)
    above = [k for k in fan.cones if union <= k]
    if not above:
        return None
    return frozenset.intersection(*above)


@dataclass
class MVReport:
    agree: bool
    resolution: list[int]
    direct: list[int]

    def __bool__(self) -> bool:
        return self.agree


def mv_hypercohomology(subset: StarClosedSubset, D: Divisor, window: Optional[Window] = None) -> list[int]:
    """Hypercohomology of the Mayer–Vietoris complex ε_0*O -> ε_1*O -> ... twisted by D."""
    fan = subset.fan
    _require_cartier(D)
    coeffs = _integral_coeffs(D)
    comps = subset.minimal_cones
    window = window or weight_window(fan, D)
    frame = CechFrame(fan)
    ridx = frame.ray_index
    strata: dict[tuple[int, ...], int] = {}
    for size in range(1, len(comps) + 1):
        for I in itertools.combinations(range(len(comps)), size):
            j = _join(fan, [comps[i] for i in I])
            if j is not None:
                m = 0
                for r in j:
                    m |= 1 << ridx[r]
                strata[I] = m
    n = fan.ambient
    top = n  # total degrees 0..n-1 are the possible nonzero ones; compute through n
    totals = [0] * n
    cache: dict = {}
    for u in window.points():
        neg, zero = _pattern(fan, coeffs, u)
        if (neg, zero) not in cache:
            cache[(neg, zero)] = _mv_at(frame, strata, neg, zero, top)
        for p, h in enumerate(cache[(neg, zero)][:n]):
            totals[p] += h
    return totals


def _mv_at(frame: CechFrame, strata, neg: int, zero: int, top: int) -> list[int]:
    ncomp = max((max(I) for I in strata), default=-1) + 1
    cells: dict[int, list[tuple]] = {}
    for I, tmask in strata.items():
        if tmask & ~zero:
            continue
        for k, level in enumerate(frame.simplices):
            for s in level:
                m = frame.meet[s]
                if m & neg or (tmask & ~m):
                    continue
                deg = len(I) - 1 + k
                if deg <= top + 1:
                    cells.setdefault(deg, []).append((I, s))
    index = {d: {c: i for i, c in enumerate(v)} for d, v in cells.items()}
    ranks = {}
    for d in range(top + 1):
        nxt = index.get(d + 1, {})
        rows = []
        for I, s in cells.get(d, []):
            row = {}
            for j in range(ncomp):
                if j in I:
                    continue
                J = tuple(sorted(I + (j,)))
                c = nxt.get((J, s))
                if c is not None:
                    row[c] = row.get(c, 0) + (-1) ** J.index(j)
            sgn = (-1) ** (len(I) - 1)
            for t, sign in frame.faces_of(s):
                c = nxt.get((I, t))
                if c is not None:
                    row[c] = row.get(c, 0) + sgn * sign
            rows.append(row)
        ranks[d] = exact_rank(rows)
    dims = []
    for d in range(top + 1):
        dims.append(len(cells.get(d, [])) - ranks[d] - ranks.get(d - 1, 0))
    return dims


def mv_resolution_check(subset: StarClosedSubset, D: Divisor) -> MVReport:
    w = weight_window(subset.fan, D)
    via_mv = mv_hypercohomology(subset, D, w)
    direct = polyhedron_cohomology(subset, D, w).dims[: len(via_mv)]
    return MVReport(via_mv == direct, via_mv, direct)


# --------------------------------------------------------------------------
# global generation


@dataclass
class GenerationReport:
    generated: bool
    failing: list[frozenset]

    def __bool__(self) -> bool:
        return self.generated


def is_globally_generated(D: Divisor) -> GenerationReport:
    """O(D) is generated iff every vertex m_σ of the support function lies in P_D."""
    fan = D.fan
    if not is_complete(fan):
        raise CohomologyError("global generation test needs a complete fan")
    sf = support_function(D)
    if sf is None or not sf.is_cartier:
        raise CohomologyError("divisor is not Cartier")
    failing = []
    for k in fan.maximal_keys:
        m = sf.m(k)
        if any(dot(m, r) < -D[r] for r in fan.rays):
            failing.append(k)
    return GenerationReport(not failing, failing)


def lattice_points(D: Divisor) -> list[tuple[int, ...]]:
    """Lattice points of P_D = {u : ⟨u,e_ρ⟩ >= -d_ρ}."""
    coeffs = _integral_coeffs(D)
    w = weight_window(D.fan, D)
    return [
        tuple(u) for u in w.points() if all(dot(u, r) + d >= 0 for r, d in zip(D.fan.rays, coeffs))
    ]


@dataclass
class BaseLocus:
    orbits: list[frozenset]  # cones τ whose orbit O(τ) lies in the base locus

    @property
    def components(self) -> list[frozenset]:
        return sorted(
            (c for c in self.orbits if not any(o < c for o in self.orbits)),
            key=lambda s: (len(s), sorted(s)),
        )

    @property
    def empty(self) -> bool:
        return not self.orbits


def base_locus(D: Divisor, m: int = 1) -> BaseLocus:
    """Orbits of the base locus of |mD|: O(τ) is base iff no section is nonzero along it."""
    mD = m * D
    pts = lattice_points(mD)
    out = []
    for k in mD.fan.cones:
        if not any(all(dot(u, r) == -mD[r] for r in k) for u in pts):
            out.append(k)
    return BaseLocus(sorted(out, key=lambda s: (len(s), sorted(s))))
