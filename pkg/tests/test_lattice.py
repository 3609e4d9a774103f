from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from toricmmp.lattice import (
    box_points,
    determinant,
    integer_solvable_denominator,
    is_primitive,
    nullspace,
    primitive,
    quotient_map,
    rank,
    saturated_basis,
    smith_form,
    smith_invariants,
    solve_exact,
)
from toricmmp.polyhedral import Infeasible, cone_hull, facets_of, gordan_alternative, linprog_exact

small = st.integers(-6, 6)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


square3 = matrices(3, 3)


@given(square3)
def test_determinant_matches_sympy(M):
    assert determinant(M) == sympy.Matrix(M).det()


@given(st.integers(1, 4).flatmap(lambda r: matrices(r, 4)))
def test_rank_and_nullspace(M):
    assert rank(M) == sympy.Matrix(M).rank()
    ns = nullspace(M, 4)
    assert len(ns) == 4 - rank(M)
    for v in ns:
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in M)


@given(st.integers(1, 4).flatmap(lambda r: matrices(r, 3)))
def test_smith_form_transforms(M):
    D, U, V = smith_form(M)
    UMV = (sympy.Matrix(U) * sympy.Matrix(M) * sympy.Matrix(V)).tolist()
    assert UMV == D
    assert abs(sympy.Matrix(U).det()) == 1 and abs(sympy.Matrix(V).det()) == 1
    inv = smith_invariants(M)
    for a, b in zip(inv, inv[1:]):
        assert b % a == 0
    # product of invariants = gcd of maximal minors
    r = rank(M)
    if r:
        from itertools import combinations
        minors = [sympy.Matrix([[M[i][j] for j in cs] for i in rs]).det()
                  for rs in combinations(range(len(M)), r) for cs in combinations(range(3), r)]
        g = 0
        for m in minors:
            g = sympy.gcd(g, m)
        prod = 1
        for x in inv:
            prod *= x
        assert prod == abs(g)


@given(st.lists(small, min_size=3, max_size=3).filter(any))
def test_primitive(v):
    p = primitive(v)
    assert is_primitive(p)
    k = Fraction(v[next(i for i, x in enumerate(v) if x)], p[next(i for i, x in enumerate(p) if x)])
    assert k > 0 and all(Fraction(a) == k * b for a, b in zip(v, p))


def _brute_box(gens):
    n = len(gens[0])
    inv = sympy.Matrix([[g[i] for g in gens] for i in range(n)]).inv()
    ranges = [range(sum(min(0, g[i]) for g in gens), sum(max(0, g[i]) for g in gens) + 1) for i in range(n)]
    pts = []
    for p in product(*ranges):
        lam = inv * sympy.Matrix(p)
        if all(0 <= x < 1 for x in lam):
            pts.append(p)
    return sorted(pts)


@given(square3.filter(lambda M: determinant(M) != 0 and abs(determinant(M)) <= 12))
@settings(max_examples=40, deadline=None)
def test_box_points_brute_force(M):
    got = sorted(p for p, _lam in box_points(M))
    assert got == _brute_box(M)
    assert len(got) == abs(determinant(M))


def test_saturated_basis_and_quotient():
    basis = saturated_basis([(2, 0, 0), (0, 2, 2)])
    assert sorted(abs(x) for b in basis for x in b if x) == [1, 1, 1]
    P = quotient_map([(1, 1, 0)], 3)
    assert len(P[0]) == 2
    assert all(sum(x * P[i][j] for i, x in enumerate((1, 1, 0))) == 0 for j in range(2))


def test_integer_solvable_denominator():
    assert integer_solvable_denominator([[2, 0], [0, 3]], [1, 1]) == 6
    assert integer_solvable_denominator([[1, 0], [0, 1]], [Fraction(1, 2), 1]) == 2
    assert integer_solvable_denominator([[1, 1], [1, 1]], [0, 1]) is None


# --------------------------------------------------------------------------
# polyhedral


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3).filter(any), min_size=1, max_size=6))
@settings(max_examples=80, deadline=None)
def test_hull_round_trip(gens):
    h = cone_hull(gens, 3)
    H = facets_of(gens, 3)
    for g in gens:
        assert H.contains(g)
    # every generator is a nonnegative combination of rays plus lineality
    for g in gens:
        vecs = list(h.rays) + list(h.lineality) + [tuple(-x for x in l) for l in h.lineality]
        if not vecs:
            assert not any(g)
            continue
        sol = linprog_exact([0] * len(vecs), A_eq=[[v[i] for v in vecs] for i in range(3)], b_eq=list(g),
                            nonneg=[True] * len(vecs))
        assert sol is not None
    # rays are extreme: each is tight on dim-1-lineality independent facets
    for r in h.rays:
        tight = [a for a in H.inequalities if sum(x * y for x, y in zip(a, r)) == 0]
        assert rank(list(tight) + list(H.equations)) == 3 - 1 - len(h.lineality)


@given(matrices(3, 2), st.lists(small, min_size=3, max_size=3), st.lists(small, min_size=2, max_size=2))
@settings(max_examples=60, deadline=None)
def test_lp_against_scipy(A, b, c):
    scipy_opt = pytest.importorskip("scipy.optimize")
    bounds = [(None, None)] * 2
    ref = scipy_opt.linprog([-x for x in c], A_ub=A, b_ub=b, bounds=bounds, method="highs")
    if ref.status == 2:
        with pytest.raises(Infeasible):
            linprog_exact(c, A, b)
    elif ref.status == 0:
        sol = linprog_exact(c, A, b)
        assert abs(float(sol.value) - (-ref.fun)) < 1e-7


def test_gordan():
    assert gordan_alternative([[1, 0], [0, 1]], 2)
    assert not gordan_alternative([[1, 0], [-1, 0]], 2)
