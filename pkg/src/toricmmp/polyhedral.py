"""Polyhedral cones by exact double description, and an exact simplex LP.

A cone is described either by generators (V-representation) or by
inequalities ``a . x >= 0`` plus equations (H-representation).  The double
description routine handles cones with a lineality space.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .lattice import (
    as_fraction,
    dot,
    integral_direction,
    nullspace,
    rank,
)


@dataclass(frozen=True)
class DDResult:
    """Output of the double description method.

    The cone equals span(lineality) + cone(rays); the rays are primitive
    integer vectors, pairwise non-proportional, and each is an extreme
    ray of the cone modulo lineality.
    """

    lineality: tuple[tuple[int, ...], ...]
    rays: tuple[tuple[int, ...], ...]

    @property
    def is_pointed(self) -> bool:
        return not self.lineality


def _normalize(v) -> tuple[int, ...]:
    return integral_direction(v)


def double_description(inequalities: Sequence[Sequence], dim: int) -> DDResult:
    """Extreme rays and lineality of ``{x in Q^dim : a . x >= 0 for all a}``."""
    ineqs = [tuple(as_fraction(x) for x in a) for a in inequalities if any(a)]
    lin: list[tuple[Fraction, ...]] = [
        tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim)
    ]
    rays: list[tuple[Fraction, ...]] = []
    processed: list[tuple[Fraction, ...]] = []
    for a in ineqs:
        idx = next((i for i, l in enumerate(lin) if dot(a, l) != 0), None)
        if idx is not None:
            l = lin.pop(idx)
            al = dot(a, l)
            if al < 0:
                l = tuple(-x for x in l)
                al = -al
            lin = [tuple(x - (dot(a, lp) / al) * y for x, y in zip(lp, l)) for lp in lin]
            rays = [tuple(x - (dot(a, r) / al) * y for x, y in zip(r, l)) for r in rays]
            rays.append(l)
            processed.append(a)
            continue
        pos, zero, neg = [], [], []
        for r in rays:
            s = dot(a, r)
            (pos if s > 0 else neg if s < 0 else zero).append(r)
        target = dim - len(lin) - 2
        new = []
        for p in pos:
            zp = {i for i, b in enumerate(processed) if dot(b, p) == 0}
            for q in neg:
                common = [processed[i] for i in zp if dot(processed[i], q) == 0]
                if len(common) < target:
                    continue
                if (rank(common) if common else 0) != target:
                    continue
                ap, aq = dot(a, p), dot(a, q)
                new.append(tuple(ap * y - aq * x for x, y in zip(p, q)))
        rays = pos + zero + new
        processed.append(a)
        rays = [tuple(Fraction(x) for x in _normalize(r)) for r in rays]
        rays = list(dict.fromkeys(rays))
    lin_out = tuple(_normalize(l) for l in lin)
    ray_out = tuple(sorted(set(_normalize(r) for r in rays)))
    return DDResult(lineality=lin_out, rays=ray_out)


@dataclass(frozen=True)
class HRep:
    """``{x : a . x >= 0 for a in inequalities, e . x = 0 for e in equations}``."""

    inequalities: tuple[tuple[int, ...], ...]
    equations: tuple[tuple[int, ...], ...]

    def contains(self, v) -> bool:
        return all(dot(a, v) >= 0 for a in self.inequalities) and all(
            dot(e, v) == 0 for e in self.equations
        )


def facets_of(generators: Sequence[Sequence], dim: int) -> HRep:
    """Irredundant H-representation of the cone generated by ``generators``."""
    gens = [g for g in generators if any(g)]
    if not gens:
        eqs = tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim))
        return HRep((), eqs)
    dual = double_description(gens, dim)
    return HRep(inequalities=dual.rays, equations=dual.lineality)


def generators_of(hrep: HRep, dim: int) -> DDResult:
    ineqs = list(hrep.inequalities)
    for e in hrep.equations:
        ineqs.append(e)
        ineqs.append(tuple(-x for x in e))
    return double_description(ineqs, dim)


def cone_hull(generators: Sequence[Sequence], dim: int) -> DDResult:
    """Lineality and extreme rays of the cone generated by ``generators``."""
    return generators_of(facets_of(generators, dim), dim)


def span_dimension(vectors: Sequence[Sequence]) -> int:
    vs = [v for v in vectors if any(v)]
    return rank(vs) if vs else 0


# --------------------------------------------------------------------------
# Exact linear programming


class Infeasible(Exception):
    pass


class Unbounded(Exception):
    pass


@dataclass
class LPSolution:
    value: Fraction
    x: tuple[Fraction, ...]


def _pivot(T, basis, r, c):
    p = T[r][c]
    T[r] = [x / p for x in T[r]]
    for i in range(len(T)):
        if i != r and T[i][c] != 0:
            f = T[i][c]
            T[i] = [x - f * y for x, y in zip(T[i], T[r])]
    basis[r] = c


def _simplex(T, basis, ncols):
    """Maximize the objective stored in the last row (as reduced costs) with Bland's rule."""
    obj = T[-1]
    while True:
        c = next((j for j in range(ncols) if T[-1][j] < 0), None)
        if c is None:
            return
        best = None
        for i in range(len(T) - 1):
            if T[i][c] > 0:
                ratio = T[i][-1] / T[i][c]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            raise Unbounded()
        _pivot(T, basis, best[1], c)


def linprog_exact(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    nonneg: Optional[Sequence[bool]] = None,
) -> LPSolution:
    """Maximize ``c . x`` subject to ``A_ub x <= b_ub``, ``A_eq x = b_eq``.

    Variables are free unless ``nonneg[i]`` is true.  Two-phase tableau
    simplex over the rationals with Bland's anti-cycling rule.  Raises
    :class:`Infeasible` or :class:`Unbounded`.
    """
    n = len(c)
    if nonneg is None:
        nonneg = [False] * n
    # split free variables x = x+ - x-
    cols = []  # (original index, sign)
    for i in range(n):
        cols.append((i, 1))
        if not nonneg[i]:
            cols.append((i, -1))
    rows, rhs, slack = [], [], []
    for a, b in zip(A_ub, b_ub):
        rows.append([as_fraction(a[i]) * s for i, s in cols])
        rhs.append(as_fraction(b))
        slack.append(True)
    for a, b in zip(A_eq, b_eq):
        rows.append([as_fraction(a[i]) * s for i, s in cols])
        rhs.append(as_fraction(b))
        slack.append(False)
    m = len(rows)
    nslack = sum(slack)
    ncore = len(cols)
    # columns: core | slacks | artificials
    T = []
    si = 0
    for k in range(m):
        row = rows[k] + [Fraction(0)] * nslack
        if slack[k]:
            row[ncore + si] = Fraction(1)
            si += 1
        if rhs[k] < 0:
            row = [-x for x in row]
            rhs[k] = -rhs[k]
        T.append(row + [Fraction(int(k == j)) for j in range(m)] + [rhs[k]])
    width = ncore + nslack + m
    basis = [ncore + nslack + k for k in range(m)]
    # phase 1: maximize -sum(artificials)
    obj = [Fraction(0)] * (width + 1)
    for k in range(m):
        obj = [o - t for o, t in zip(obj, T[k])]
    for k in range(m):
        obj[ncore + nslack + k] = Fraction(0)
    T.append(obj)
    _simplex(T, basis, ncore + nslack)
    if T[-1][-1] != 0:
        raise Infeasible()
    # drive artificials out of the basis
    for r in range(m):
        if basis[r] >= ncore + nslack:
            c_in = next((j for j in range(ncore + nslack) if T[r][j] != 0), None)
            if c_in is not None:
                _pivot(T, basis, r, c_in)
    keep = [r for r in range(m) if basis[r] < ncore + nslack]
    T2 = [T[r][: ncore + nslack] + [T[r][-1]] for r in keep]
    basis2 = [basis[r] for r in keep]
    cost = [as_fraction(c[i]) * s for i, s in cols] + [Fraction(0)] * nslack
    obj = [-x for x in cost] + [Fraction(0)]
    for r, b in enumerate(basis2):
        if obj[b] != 0:
            f = obj[b]
            obj = [o - f * t for o, t in zip(obj, T2[r])]
    T2.append(obj)
    _simplex(T2, basis2, ncore + nslack)
    xs = [Fraction(0)] * (ncore + nslack)
    for r, b in enumerate(basis2):
        xs[b] = T2[r][-1]
    x = [Fraction(0)] * n
    for j, (i, s) in enumerate(cols):
        x[i] += s * xs[j]
    value = sum(as_fraction(ci) * xi for ci, xi in zip(c, x))
    return LPSolution(value=value, x=tuple(x))


def strict_feasible_point(
    strict: Sequence[Sequence], equations: Sequence[Sequence], dim: int
) -> Optional[tuple[Fraction, ...]]:
    """Find x with ``a . x > 0`` for all strict rows and ``e . x = 0``; ``None`` if impossible.

    Solved as: maximize t subject to a . x >= t, t <= 1.
    """
    if not strict:
        return tuple(Fraction(0) for _ in range(dim))
    c = [0] * dim + [1]
    A_ub = [[-as_fraction(v) for v in a] + [1] for a in strict] + [[0] * dim + [1]]
    b_ub = [0] * len(strict) + [1]
    A_eq = [list(e) + [0] for e in equations]
    b_eq = [0] * len(equations)
    sol = linprog_exact(c, A_ub, b_ub, A_eq, b_eq)
    if sol.value <= 0:
        return None
    return sol.x[:dim]


def gordan_alternative(rows: Sequence[Sequence], dim: int) -> bool:
    """True iff some x has ``a . x > 0`` for every row (restricted to the rows' span).

    Independent of the LP: by Gordan's theorem this holds iff every row is
    nonzero and the cone generated by the rows is pointed.
    """
    rs = [tuple(as_fraction(v) for v in r) for r in rows]
    if any(not any(r) for r in rs):
        return False
    if not rs:
        return True
    hull = cone_hull(rs, dim)
    return hull.is_pointed


def orthogonal_complement(vectors: Sequence[Sequence], dim: int) -> list[tuple[Fraction, ...]]:
    vs = [list(v) for v in vectors if any(v)]
    if not vs:
        return [tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim)]
    return nullspace(vs, dim)
