"""Invariant divisors, support functions, discrepancies and pair classification.

Sign conventions.  A divisor D = sum d_ρ D_ρ is Q-Cartier when on every
maximal cone σ there is m_σ in M_Q with <m_σ, e_ρ> = -d_ρ for the rays of σ.
For a pair (X, Δ) the log discrepancy function is ψ, linear on cones with
ψ(e_ρ) = 1 - d_ρ; the discrepancy of the valuation of a primitive v is
a(v) = ψ(v) - 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

from .fan import (
    Cone,
    Fan,
    FanError,
    QuotientFan,
    build_cone,
    classify_cone,
    is_refinement,
    star_fan,
    star_subdivision,
    triangulate,
)
from .lattice import (
    apply_map,
    as_fraction,
    box_points,
    dot,
    integer_solvable_denominator,
    lcm,
    nullspace,
    primitive,
    solve_exact,
)
from .polyhedral import Infeasible, linprog_exact


class DivisorError(ValueError):
    pass


Ray = tuple[int, ...]


class Divisor:
    """A torus-invariant Q-divisor on a fan: one rational coefficient per ray."""

    def __init__(self, fan: Fan, coeffs: Optional[Mapping[Ray, object]] = None):
        self.fan = fan
        self.coeffs: dict[Ray, Fraction] = {r: Fraction(0) for r in fan.rays}
        for r, c in (coeffs or {}).items():
            r = tuple(r)
            if r not in self.coeffs:
                raise DivisorError(f"{r} is not a ray of the fan")
            self.coeffs[r] = as_fraction(c)

    @classmethod
    def from_list(cls, fan: Fan, values: Sequence) -> "Divisor":
        if len(values) != len(fan.rays):
            raise DivisorError("coefficient list does not match the ray count")
        return cls(fan, dict(zip(fan.rays, values)))

    @classmethod
    def prime(cls, fan: Fan, ray: Sequence[int]) -> "Divisor":
        return cls(fan, {tuple(ray): 1})

    def __getitem__(self, ray) -> Fraction:
        return self.coeffs[tuple(ray)]

    def values(self) -> list[Fraction]:
        return [self.coeffs[r] for r in self.fan.rays]

    def _map(self, f: Callable[[Fraction], Fraction]) -> "Divisor":
        return Divisor(self.fan, {r: f(c) for r, c in self.coeffs.items()})

    def __add__(self, other: "Divisor") -> "Divisor":
        self._check(other)
        return Divisor(self.fan, {r: c + other.coeffs[r] for r, c in self.coeffs.items()})

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-1) * other

    def __neg__(self) -> "Divisor":
        return (-1) * self

    def __rmul__(self, k) -> "Divisor":
        k = as_fraction(k)
        return self._map(lambda c: k * c)

    def __eq__(self, other) -> bool:
        return isinstance(other, Divisor) and self.fan == other.fan and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.values()))

    def _check(self, other: "Divisor") -> None:
        if other.fan != self.fan:
            raise DivisorError("divisors live on different fans")

    def __repr__(self) -> str:
        terms = [f"{c}*D{r}" for r, c in self.coeffs.items() if c]
        return "Divisor(" + (" + ".join(terms) if terms else "0") + ")"

    # rounding calculus
    def round_up(self) -> "Divisor":
        return self._map(lambda c: Fraction(math.ceil(c)))

    def round_down(self) -> "Divisor":
        return self._map(lambda c: Fraction(math.floor(c)))

    def fractional_part(self) -> "Divisor":
        return self._map(lambda c: c - math.floor(c))

    def part(self, keep: Callable[[Fraction], bool]) -> "Divisor":
        return self._map(lambda c: c if keep(c) else Fraction(0))

    def is_boundary(self) -> bool:
        return all(0 <= c <= 1 for c in self.coeffs.values())

    def is_subboundary(self) -> bool:
        return all(c <= 1 for c in self.coeffs.values())

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs.values())

    def support(self) -> list[Ray]:
        return [r for r in self.fan.rays if self.coeffs[r] != 0]


def rounding_calculus(D: Divisor) -> dict:
    return {
        "round_up": D.round_up(),
        "round_down": D.round_down(),
        "fractional": D.fractional_part(),
        "eq_one": D.part(lambda c: c == 1),
        "lt_one": D.part(lambda c: c < 1),
        "le_one": D.part(lambda c: c <= 1),
        "gt_one": D.part(lambda c: c > 1),
        "is_boundary": D.is_boundary(),
        "is_subboundary": D.is_subboundary(),
    }


def canonical_divisor(fan: Fan) -> Divisor:
    return Divisor(fan, {r: -1 for r in fan.rays})


def toric_boundary(fan: Fan) -> Divisor:
    return Divisor(fan, {r: 1 for r in fan.rays})


def principal_divisor(fan: Fan, m: Sequence) -> Divisor:
    """div(χ^m) = sum <m, e_ρ> D_ρ."""
    return Divisor(fan, {r: dot(m, r) for r in fan.rays})


# --------------------------------------------------------------------------
# support functions


@dataclass
class SupportFunction:
    """Linear data m_σ with <m_σ, e_ρ> = -d_ρ on each maximal cone σ."""

    fan: Fan
    data: dict[frozenset, tuple[Fraction, ...]]
    cartier_index: int

    def m(self, cone_key: Iterable[Ray]) -> tuple[Fraction, ...]:
        return self.data[frozenset(cone_key)]

    def __call__(self, v) -> Fraction:
        """Value at a point of the support (the -d side: h(e_ρ) = -d_ρ)."""
        for k, c in zip(self.fan.maximal_keys, self.fan.maximal_cones):
            if c.contains(v):
                return dot(self.data[k], v)
        raise DivisorError(f"point {tuple(v)} outside support")

    @property
    def is_cartier(self) -> bool:
        return self.cartier_index == 1


def _local_solution(cone: Cone, coeffs: Mapping[Ray, Fraction], n: int):
    rows = [list(r) for r in cone.rays]
    b = [-coeffs[r] for r in cone.rays]
    if not rows:
        return tuple(Fraction(0) for _ in range(n)), 1
    m = solve_exact(rows, b)
    if m is None:
        return None, None
    return m, integer_solvable_denominator(rows, b)


def support_function(D: Divisor) -> Optional[SupportFunction]:
    """Support function of D, or ``None`` when D is not Q-Cartier."""
    data = {}
    index = 1
    for k, c in zip(D.fan.maximal_keys, D.fan.maximal_cones):
        m, idx = _local_solution(c, D.coeffs, D.fan.ambient)
        if m is None:
            return None
        data[k] = m
        index = lcm(index, idx)
    return SupportFunction(D.fan, data, index)


def is_q_cartier(D: Divisor) -> bool:
    return support_function(D) is not None


def cartier_index(D: Divisor) -> Optional[int]:
    sf = support_function(D)
    return None if sf is None else sf.cartier_index


def q_cartier_space(fan: Fan) -> list[tuple[Fraction, ...]]:
    """Basis (coefficient vectors in ray order) of the Q-Cartier divisors."""
    idx = {r: i for i, r in enumerate(fan.rays)}
    rows = []
    for c in fan.maximal_cones:
        rel = nullspace([list(col) for col in zip(*c.rays)], len(c.rays)) if c.rays else []
        # a relation sum a_i e_i = 0 forces sum a_i d_i = 0
        for a in rel:
            row = [Fraction(0)] * len(fan.rays)
            for ai, r in zip(a, c.rays):
                row[idx[r]] += ai
            rows.append(row)
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(len(fan.rays))) for i in range(len(fan.rays))]
    return nullspace(rows, len(fan.rays))


def is_q_factorial(fan: Fan) -> bool:
    return fan.is_simplicial()


def pullback(fine: Fan, D: Divisor, check: bool = True) -> Divisor:
    """Pull back a Q-Cartier divisor along the refinement ``fine`` -> ``D.fan``."""
    if check and not is_refinement(fine, D.fan):
        raise DivisorError("not a refinement")
    sf = support_function(D)
    if sf is None:
        raise DivisorError("divisor is not Q-Cartier")
    return Divisor(fine, {r: -sf(r) for r in fine.rays})


# --------------------------------------------------------------------------
# discrepancies


def log_discrepancy_function(fan: Fan, boundary: Divisor) -> SupportFunction:
    """Support function of K + Δ (raise if not Q-Cartier)."""
    sf = support_function(canonical_divisor(fan) + boundary)
    if sf is None:
        raise DivisorError("K + boundary is not Q-Cartier")
    return sf


def discrepancy(fan: Fan, boundary: Divisor, v: Sequence[int]) -> Fraction:
    """a(v, X, Δ) = ψ(v) - 1 where ψ(e_ρ) = 1 - d_ρ."""
    sf = log_discrepancy_function(fan, boundary)
    v = tuple(int(x) for x in v)
    if not fan.contains(v):
        raise DivisorError(f"point {v} outside support")
    # sf is the function of K+Δ, whose value at e_ρ is -(d_ρ - 1) = ψ(e_ρ)
    return sf(v) - 1


VERDICTS = ("terminal", "canonical", "klt", "lc")


@dataclass
class PairClassification:
    verdict: str
    terminal: bool = False
    canonical: bool = False
    klt: bool = False
    lc: bool = False
    min_discrepancy: Optional[Fraction] = None
    witnesses: list[tuple[tuple, Fraction]] = field(default_factory=list)
    cartier_index: Optional[int] = None

    def flags(self) -> dict[str, bool]:
        return {k: getattr(self, k) for k in VERDICTS}


def _verdict(flags: Mapping[str, bool]) -> str:
    for k in VERDICTS:
        if flags[k]:
            return k
    return "not-lc"


def _flags_from(min_exc: Optional[Fraction], coeffs: Iterable[Fraction]) -> dict[str, bool]:
    cs = list(coeffs)
    lc = all(c <= 1 for c in cs) and (min_exc is None or min_exc >= -1)
    klt = lc and all(c < 1 for c in cs) and (min_exc is None or min_exc > -1)
    canonical = lc and (min_exc is None or min_exc >= 0)
    terminal = lc and (min_exc is None or min_exc > 0)
    return {"terminal": terminal, "canonical": canonical, "klt": klt, "lc": lc}


def classify_pair(fan: Fan, boundary: Divisor) -> PairClassification:
    """Singularity class of the toric pair (X, Δ) by box-point enumeration.

    Exceptional valuations considered: nonzero box points of a pulling
    triangulation, sums e_i + e_j of rays in a common cone, and for n >= 2
    the generic blow-ups of codimension-2 loci (discrepancy 1 - d_ρ inside
    D_ρ and 1 elsewhere).  Every lattice point is a box point plus a
    nonnegative integral combination of rays, so with coefficients <= 1 the
    minimum is attained among these candidates.
    """
    sf = support_function(canonical_divisor(fan) + boundary)
    if sf is None:
        return PairClassification("not-R-Cartier")
    d = boundary.coeffs
    n = fan.ambient
    cands: dict[tuple, Fraction] = {}
    tri = triangulate(fan)
    psi = {r: 1 - d[r] for r in fan.rays}
    for c in tri.maximal_cones:
        if c.dim >= 1:
            for pt, lam in box_points(c.rays):
                if any(pt):
                    a = sum(l * psi[r] for l, r in zip(lam, c.rays)) - 1
                    cands[pt] = a if pt not in cands else min(a, cands[pt])
        for i, ri in enumerate(c.rays):
            for rj in c.rays[i + 1:]:
                pt = tuple(x + y for x, y in zip(ri, rj))
                a = psi[ri] + psi[rj] - 1
                cands[pt] = a if pt not in cands else min(a, cands[pt])
    witnesses = sorted(cands.items(), key=lambda kv: (kv[1], kv[0]))
    generic = []
    if n >= 2:
        generic = [Fraction(1)] + [1 - d[r] for r in fan.rays]
    exc = [a for _pt, a in witnesses] + generic
    min_exc = min(exc) if exc else None
    coeffs = list(d.values())
    # a coefficient above 1 on a ray of a higher-dimensional cone gives
    # valuations k*e_i + e_j of unbounded negative discrepancy
    bad = [r for r in fan.rays if d[r] > 1]
    if bad:
        for r in bad:
            host = next((c for c in tri.maximal_cones if r in c.rays and c.dim >= 2), None)
            if host is not None:
                other = next(x for x in host.rays if x != r)
                k = 1
                while k * psi[r] + psi[other] - 1 >= -1:
                    k += 1
                pt = tuple(k * x + y for x, y in zip(r, other))
                witnesses.insert(0, (pt, k * psi[r] + psi[other] - 1))
    flags = _flags_from(min_exc, coeffs)
    return PairClassification(
        verdict=_verdict(flags),
        min_discrepancy=min_exc,
        witnesses=witnesses,
        cartier_index=sf.cartier_index,
        **flags,
    )


@dataclass
class Resolution:
    fan: Fan
    boundary: Divisor  # Δ_Y with K_Y + Δ_Y = f^*(K_X + Δ)
    exceptional: list[Ray]


def toric_log_resolution(fan: Fan, boundary: Divisor, max_steps: int = 500) -> Resolution:
    """Resolve by star subdivisions at minimal-discrepancy box points.

    The pulled-back boundary is recomputed from scratch on the final fan via
    :func:`pullback`, independently of the box-point route.
    """
    sf = support_function(canonical_divisor(fan) + boundary)
    if sf is None:
        raise DivisorError("K + boundary is not Q-Cartier")
    cur = triangulate(fan)
    for _ in range(max_steps):
        bad = [c for c in cur.maximal_cones if classify_cone(c).kind != "smooth"]
        if not bad:
            break
        best = None
        for c in bad:
            for pt, _lam in box_points(c.rays):
                if any(pt):
                    key = (sf(pt), pt)  # sf(pt) = ψ(pt); smallest discrepancy first
                    if best is None or key < best:
                        best = key
        cur = star_subdivision(cur, best[1])
    else:
        raise DivisorError("resolution step cap exceeded")
    pulled = pullback(cur, canonical_divisor(fan) + boundary, check=False)
    # K_Y + Δ_Y = pulled, and K_Y has coefficient -1 everywhere
    delta_y = Divisor(cur, {r: pulled[r] + 1 for r in cur.rays})
    exc = [r for r in cur.rays if r not in set(fan.rays)]
    return Resolution(cur, delta_y, exc)


def classify_pair_by_resolution(fan: Fan, boundary: Divisor) -> PairClassification:
    """Independent classification through a toric log resolution.

    On the smooth fan Y with K_Y + Δ_Y = f^*(K_X + Δ), the pair is snc and
    its discrepancy over Y is min{1, 1 - b_i, 1 - b_i - b_j} over rays and
    pairs spanning a 2-cone; exceptional divisors of Y -> X contribute -b_E.
    """
    if support_function(canonical_divisor(fan) + boundary) is None:
        return PairClassification("not-R-Cartier")
    res = toric_log_resolution(fan, boundary)
    b = res.boundary.coeffs
    n = fan.ambient
    vals = [-b[r] for r in res.exceptional]
    if n >= 2:
        vals.append(Fraction(1))
        vals.extend(1 - b[r] for r in res.fan.rays)
        for k in res.fan.cones:
            if len(k) == 2:
                i, j = sorted(k)
                vals.append(1 - b[i] - b[j])
    min_exc = min(vals) if vals else None
    coeffs = list(boundary.coeffs.values()) + [b[r] for r in res.exceptional]
    flags = _flags_from(min_exc, coeffs)
    return PairClassification(
        verdict=_verdict(flags),
        min_discrepancy=min_exc,
        witnesses=sorted(((r, -b[r]) for r in res.exceptional), key=lambda kv: (kv[1], kv[0])),
        cartier_index=cartier_index(canonical_divisor(fan) + boundary),
        **flags,
    )


# --------------------------------------------------------------------------
# rational perturbations of real boundaries


Interval = Union[Fraction, int, str, tuple]


def rationalize_boundary(
    fan: Fan,
    intervals: Mapping[Ray, Interval],
    require: Optional[str] = "K+D",
    target: Optional[Divisor] = None,
) -> Divisor:
    """Pick a rational divisor with each coefficient in its prescribed interval.

    ``intervals`` maps rays to an exact value or an open interval (lo, hi)
    enclosing a real coefficient; unspecified rays get 0.  With
    ``require="K+D"`` (or ``"D"``) the output keeps K+D (or D) Q-Cartier;
    with ``target`` given, the output is Q-linearly equivalent to it.  The
    chosen point maximizes the distance to the interval ends, so supports and
    rounding (round-down, fractional part) match every real value inside.
    """
    rays = list(fan.rays)
    n = fan.ambient
    lows, highs, fixed = {}, {}, {}
    for r in rays:
        bound = intervals.get(r, 0)
        if isinstance(bound, tuple):
            lo, hi = as_fraction(bound[0]), as_fraction(bound[1])
            if not lo < hi:
                raise DivisorError(f"empty interval at {r}")
            if math.floor(lo) != math.ceil(hi) - 1:
                raise DivisorError(f"interval at {r} contains an integer, rounding is ambiguous")
            lows[r], highs[r] = lo, hi
        else:
            fixed[r] = as_fraction(bound)
    # variables: d (one per ray), m (n entries), t
    k = len(rays)
    nv = k + n + 1
    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    for i, r in enumerate(rays):
        if r in fixed:
            row = [0] * nv
            row[i] = 1
            A_eq.append(row)
            b_eq.append(fixed[r])
        else:
            row = [0] * nv
            row[i] = -1
            row[-1] = 1
            A_ub.append(row)
            b_ub.append(-lows[r])
            row = [0] * nv
            row[i] = 1
            row[-1] = 1
            A_ub.append(row)
            b_ub.append(highs[r])
    row = [0] * nv
    row[-1] = 1
    A_ub.append(row)
    b_ub.append(1)
    if target is not None:
        # d_ρ - <m, e_ρ> = target_ρ
        for i, r in enumerate(rays):
            row = [0] * nv
            row[i] = 1
            for j in range(n):
                row[k + j] = -r[j]
            A_eq.append(row)
            b_eq.append(target[r])
    elif require is not None:
        shift = {r: (Fraction(-1) if require == "K+D" else Fraction(0)) for r in rays}
        basis = q_cartier_space(fan)
        # (shift + d) must be orthogonal to the relations defining Q-Cartier space
        rel = nullspace([list(b) for b in basis], k) if basis else [
            tuple(Fraction(int(i == j)) for j in range(k)) for i in range(k)
        ]
        for a in rel:
            row = [0] * nv
            for i in range(k):
                row[i] = a[i]
            A_eq.append(row)
            b_eq.append(-sum(a[i] * shift[r] for i, r in enumerate(rays)))
    c = [0] * nv
    c[-1] = 1
    try:
        sol = linprog_exact(c, A_ub, b_ub, A_eq, b_eq)
    except Infeasible:
        raise DivisorError("no rational divisor in the prescribed intervals")
    if lows and sol.value <= 0:
        raise DivisorError("no rational divisor strictly inside the prescribed intervals")
    return Divisor(fan, {r: sol.x[i] for i, r in enumerate(rays)})


# --------------------------------------------------------------------------
# Shokurov decomposition


@dataclass
class ShokurovTerm:
    weight: object  # positive real (Fraction or sympy expression)
    boundary: Divisor
    m: int


def _split_real(x):
    """Write a real number as q + sum c_j θ_j with rational q, c_j."""
    import sympy

    if isinstance(x, (int, Fraction)):
        return Fraction(x), {}
    e = sympy.nsimplify(x) if isinstance(x, float) else sympy.expand(sympy.sympify(x))
    q = Fraction(0)
    parts: dict = {}
    for mono, coef in e.as_coefficients_dict().items():
        coef = Fraction(int(sympy.Rational(coef).p), int(sympy.Rational(coef).q))
        if mono == 1:
            q += coef
        else:
            parts[mono] = parts.get(mono, Fraction(0)) + coef
    return q, {k: v for k, v in parts.items() if v}


def _to_sympy(x):
    import sympy

    if isinstance(x, Fraction):
        return sympy.Rational(x.numerator, x.denominator)
    return sympy.sympify(x)


def _rat(x: Fraction):
    import sympy

    return sympy.Rational(x.numerator, x.denominator)


def shokurov_decompose(fan: Fan, coeffs: Mapping[Ray, object], max_halvings: int = 60) -> list[ShokurovTerm]:
    """Write K + B as a convex combination of K + B_i with rational lc boundaries B_i.

    Coefficients of B may be exact reals (sympy expressions).  Each is split
    over the irrational atoms it involves; B then lies on a rational affine
    family B(t) of R-Cartier boundaries with B = B(θ), and a small rational
    simplex around θ gives the B_i, with barycentric weights r_i.
    """
    import sympy

    rays = list(fan.rays)
    real_b = {r: _to_sympy(coeffs.get(r, 0)) for r in rays}
    if any(sympy.N(v, 50) < 0 for v in real_b.values()):
        raise DivisorError("boundary must be effective")
    if any(sympy.N(v - 1, 50) > 0 for v in real_b.values()):
        raise DivisorError("pair is not lc")
    split = {r: _split_real(coeffs.get(r, 0)) for r in rays}
    atoms = sorted({a for _q, parts in split.values() for a in parts}, key=str)

    def family(t: Sequence[Fraction]) -> Divisor:
        return Divisor(fan, {
            r: split[r][0] + sum(split[r][1].get(a, 0) * tj for a, tj in zip(atoms, t)) for r in rays
        })

    base = family([Fraction(0)] * len(atoms))
    if not atoms:
        cls = classify_pair(fan, base)
        if not cls.lc:
            raise DivisorError("pair is not lc")
        return [ShokurovTerm(Fraction(1), base, cls.cartier_index)]
    # the rational part and each irrational direction must be R-Cartier separately
    if support_function(canonical_divisor(fan) + base) is None:
        raise DivisorError("K + B is not R-Cartier")
    for a in atoms:
        if support_function(Divisor(fan, {r: split[r][1].get(a, 0) for r in rays})) is None:
            raise DivisorError("K + B is not R-Cartier")
    theta = [sympy.sympify(a) for a in atoms]
    k = len(atoms)
    delta = Fraction(1, 10)
    for _ in range(max_halvings):
        # lower rational approximations within delta/4 of each atom
        den = 4 * delta.denominator
        lower = [Fraction(int(sympy.floor(th * den)), den) for th in theta]
        p0 = [l - delta for l in lower]
        side = 2 * k * delta
        vertices = [p0] + [[p0[i] + (side if i == j else 0) for i in range(k)] for j in range(k)]
        bs = [family(p) for p in vertices]
        ok = all((b[r] == 0) == (real_b[r] == 0) for b in bs for r in rays)
        ok = ok and all(b.is_boundary() for b in bs)
        if ok:
            classes = [classify_pair(fan, b) for b in bs]
            if all(c.lc for c in classes):
                w = [(th - _rat(p)) / _rat(side) for th, p in zip(theta, p0)]
                weights = [sympy.expand(1 - sum(w))] + [sympy.expand(x) for x in w]
                if all(sympy.N(x, 50) > 0 for x in weights):
                    m = 1
                    for c in classes:
                        m = lcm(m, c.cartier_index)
                    return [ShokurovTerm(wt, b, m) for wt, b in zip(weights, bs)]
        delta /= 2
    raise DivisorError("could not find a rational simplex around the boundary")


def recombine(terms: Sequence[ShokurovTerm]) -> dict:
    """sum r_i B_i as exact sympy values per ray (for verification)."""
    import sympy

    out: dict = {}
    for t in terms:
        for r, c in t.boundary.coeffs.items():
            out[r] = sympy.expand(out.get(r, 0) + _to_sympy(t.weight) * _rat(c))
    return out


# --------------------------------------------------------------------------
# adjunction


@dataclass
class Restriction:
    star: QuotientFan
    different: Divisor  # on star.fan
    source: dict[Ray, Ray]  # star ray -> ray of the original fan
    indices: dict[Ray, int]  # star ray -> lattice index ℓ


def adjunction_restrict(fan: Fan, boundary: Divisor, ray: Sequence[int]) -> Restriction:
    """Restrict K + Δ to the divisor D_ρ (ρ with coefficient 1).

    A ray ρ' adjacent to ρ maps to ℓ times a primitive vector in N/Zρ; the
    different has coefficient 1 - (1 - d_ρ')/ℓ there.
    """
    ray = tuple(ray)
    if boundary[ray] != 1:
        raise DivisorError("coefficient of the ray in the boundary is not 1")
    # K + Δ must be Q-Cartier near D_ρ
    kd = canonical_divisor(fan) + boundary
    for c in fan.maximal_cones:
        if ray in c.rays and _local_solution(c, kd.coeffs, fan.ambient)[0] is None:
            raise DivisorError("K + boundary is not Q-Cartier along the divisor")
    qs = star_fan(fan, [ray])
    coeffs, source, indices = {}, {}, {}
    for other in fan.rays:
        if other == ray or frozenset({ray, other}) not in fan.cones:
            continue
        img = apply_map(other, qs.projection)
        ell = math.gcd(*[int(x) for x in img])
        prim = primitive(img)
        source[prim] = other
        indices[prim] = ell
        coeffs[prim] = 1 - (1 - boundary[other]) / ell
    return Restriction(qs, Divisor(qs.fan, coeffs), source, indices)


# --------------------------------------------------------------------------
# affine cones


@dataclass
class AffineCone:
    fan: Fan
    boundary: Divisor
    r: Optional[Fraction]  # K + Δ ~_Q r H, if such r exists
    lift: dict[Ray, Ray]


def is_strictly_convex(D: Divisor) -> bool:
    """<m_σ, e_ρ> > -d_ρ for every maximal σ and ray ρ outside σ."""
    sf = support_function(D)
    if sf is None:
        return False
    for k, c in zip(D.fan.maximal_keys, D.fan.maximal_cones):
        for r in D.fan.rays:
            if r not in k and not dot(sf.data[k], r) > -D[r]:
                return False
    return True


def affine_cone_pair(fan: Fan, H: Divisor, boundary: Divisor) -> AffineCone:
    """The cone over (X, H) with the cone over Δ as boundary."""
    from .fan import is_complete

    if not is_complete(fan) or not is_strictly_convex(H) or cartier_index(H) != 1:
        raise DivisorError("H is not an ample Cartier divisor on a complete fan")
    lift = {r: primitive(tuple(r) + (int(H[r]),)) for r in fan.rays}
    cone = build_cone(list(lift.values()), fan.ambient + 1)
    vfan = Fan(fan.ambient + 1, [cone])
    B = Divisor(vfan, {lift[r]: boundary[r] for r in fan.rays})
    # solve d_ρ - 1 = <m, e_ρ> + r h_ρ
    rows = [list(rr) + [H[rr]] for rr in fan.rays]
    sol = solve_exact(rows, [boundary[rr] - 1 for rr in fan.rays])
    r = sol[-1] if sol is not None else None
    return AffineCone(vfan, B, r, lift)
