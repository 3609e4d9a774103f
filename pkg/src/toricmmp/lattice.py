"""Exact integer and rational linear algebra.

Everything here works on plain Python ints and :class:`fractions.Fraction`.
Vectors are tuples, matrices are lists of rows.  No floating point is used.
"""

from __future__ import annotations

from fractions import Fraction
import itertools
from functools import reduce
from math import gcd
from typing import Iterable, Optional, Sequence

Vector = tuple
Matrix = list


class LatticeError(ValueError):
    pass


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; use Fraction or 'p/q' strings")
    return Fraction(x)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v):
    return tuple(c * a for a in v)


def lcm(a: int, b: int) -> int:
    return abs(a * b) // gcd(a, b) if a and b else abs(a or b)


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    """Return the primitive lattice vector on the ray through ``v``.

    >>> primitive((2, 4, 6))
    (1, 2, 3)
    """
    if not any(v):
        raise LatticeError("zero vector has no primitive representative")
    g = reduce(gcd, (abs(int(x)) for x in v))
    return tuple(int(x) // g for x in v)


def integral_direction(v: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector to the primitive integer vector on its ray."""
    fr = [as_fraction(x) for x in v]
    den = reduce(lcm, (x.denominator for x in fr), 1)
    return primitive(tuple(int(x * den) for x in fr))


def is_primitive(v: Sequence[int]) -> bool:
    return any(v) and reduce(gcd, (abs(int(x)) for x in v)) == 1


def determinant(vs: Sequence[Sequence]) -> Fraction:
    """Exact determinant of a square list of vectors (rows)."""
    n = len(vs)
    if any(len(row) != n for row in vs):
        raise LatticeError(f"dimension mismatch: need {n} vectors of length {n}")
    a = [[as_fraction(x) for x in row] for row in vs]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        p = a[col][col]
        det *= p
        for r in range(col + 1, n):
            f = a[r][col]
            if f:
                f /= p
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    a = [[as_fraction(x) for x in row] for row in rows]
    if not a:
        return [], []
    m, n = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: Optional[int] = None) -> list[tuple[Fraction, ...]]:
    """Basis of {x : A x = 0}, one vector per free column (in increasing order)."""
    if ncols is None:
        if not rows:
            raise LatticeError("cannot infer column count of an empty matrix")
        ncols = len(rows[0])
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve_exact(A: Sequence[Sequence], b: Sequence) -> Optional[tuple[Fraction, ...]]:
    """Solve ``A x = b`` exactly.

    Returns one solution (free variables set to zero, pivots taken on the
    lowest column index) or ``None`` when the system is inconsistent.
    """
    if not A:
        return None if any(as_fraction(x) for x in b) else ()
    n = len(A[0])
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(red, pivots):
        x[p] = row[n]
    return tuple(x)


def row_space_basis(rows: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    red, _ = rref(rows)
    return [tuple(r) for r in red]


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*a)]


def mat_mul(a, b):
    bt = transpose(b)
    return [[dot(row, col) for col in bt] for row in a]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


# --------------------------------------------------------------------------
# Smith normal form over Z


def smith_form(M: Sequence[Sequence[int]]):
    """Smith normal form with transforms.

    Returns ``(D, U, V)`` with ``U * M * V == D``, ``U`` and ``V`` unimodular,
    ``D`` diagonal with d1 | d2 | ... (nonnegative).
    """
    m = len(M)
    n = len(M[0]) if m else 0
    A = [[int(x) for x in row] for row in M]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k row_src
        A[dst] = [x + k * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        for row in A:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(i, t, -q)
                    if A[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(j, t, -q)
                    if A[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # divisibility: the pivot must divide the remaining block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % A[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return A, U, V


def smith_invariants(M: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero elementary divisors d1 | d2 | ... of an integer matrix."""
    if not M or not M[0]:
        return []
    D, _, _ = smith_form(M)
    return [D[i][i] for i in range(min(len(D), len(D[0]))) if D[i][i]]


def inverse_unimodular(V: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(V)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(V)]
    red, _ = rref(aug)
    inv = [[int(x) for x in row[n:]] for row in red]
    return inv


def saturated_basis(vectors: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Z-basis of the saturated lattice N ∩ span(vectors)."""
    vs = [v for v in vectors if any(v)]
    if not vs:
        return []
    D, U, V = smith_form(vs)
    k = len(smith_invariants(vs))
    Vinv = inverse_unimodular(V)
    return [tuple(Vinv[i]) for i in range(k)]


def quotient_map(vectors: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    """Integer matrix P (n x (n-k)) with x -> x P surjecting Z^n onto Z^(n-k).

    The kernel (within Z^n) is the saturation of span(vectors).
    """
    vs = [v for v in vectors if any(v)]
    if not vs:
        return identity(n)
    D, U, V = smith_form(vs)
    k = len(smith_invariants(vs))
    return [row[k:] for row in V]


def apply_map(x: Sequence, P: Sequence[Sequence]) -> tuple:
    if not P or not P[0]:
        return ()
    return tuple(sum(xi * P[i][j] for i, xi in enumerate(x)) for j in range(len(P[0])))


def coordinates_in_basis(v: Sequence, basis: Sequence[Sequence]) -> Optional[tuple[Fraction, ...]]:
    """Solve v = sum c_i basis_i; ``None`` if v is not in the span."""
    if not basis:
        return () if not any(v) else None
    return solve_exact(transpose(basis), list(v))


def integer_solvable_denominator(rows: Sequence[Sequence[int]], b: Sequence) -> Optional[int]:
    """Least c >= 1 such that ``rows * m = c * b`` has an integer solution m.

    ``None`` if the system has no rational solution at all.
    """
    if solve_exact(rows, b) is None:
        return None
    D, U, V = smith_form(rows)
    ub = [sum(as_fraction(bj) * uij for uij, bj in zip(ui, b)) for ui in U]
    c = 1
    for i, ubi in enumerate(ub):
        di = D[i][i] if i < len(D[0]) else 0
        if di:
            c = lcm(c, (ubi / di).denominator)
    return c


def box_points(generators: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Lattice points of the half-open parallelepiped spanned by independent generators.

    Points are taken in the saturated lattice of their span; the origin is
    included.  There are exactly |index| of them.  Each entry is
    ``(point, coefficients)`` with ``point = sum coefficients[i] * generators[i]``.
    """
    gens = [tuple(int(x) for x in g) for g in generators]
    k = len(gens)
    if k == 0:
        return []
    if rank(gens) != k:
        raise LatticeError("generators are linearly dependent")
    basis = saturated_basis(gens)
    C = [[int(c) for c in coordinates_in_basis(g, basis)] for g in gens]  # g = C[g] . basis
    D, U, V = smith_form(C)
    Vinv = inverse_unimodular(V)
    diag = [D[i][i] for i in range(k)]
    # inverse of C over Q
    # solving C^T y = e_i gives row i of C^{-1}
    Cinv = [solve_exact(transpose(C), [Fraction(int(i == j)) for j in range(k)]) for i in range(k)]
    points = []
    for y in itertools.product(*(range(d) for d in diag)):
        x = [sum(y[i] * Vinv[i][j] for i in range(k)) for j in range(k)]
        lam = [sum(Fraction(x[a]) * Cinv[a][b] for a in range(k)) for b in range(k)]
        lam = [l - (l.numerator // l.denominator) for l in lam]
        coords = [sum(lam[i] * C[i][j] for i in range(k)) for j in range(k)]
        amb = tuple(int(sum(coords[j] * basis[j][t] for j in range(k))) for t in range(len(basis[0])))
        points.append((amb, tuple(lam)))
    points.sort()
    return points


def primitive_normal(vectors: Sequence[Sequence[int]], n: int) -> tuple[int, ...]:
    """Primitive integer normal to a hyperplane spanned by ``vectors`` in Z^n."""
    ns = nullspace([list(v) for v in vectors], n)
    if len(ns) != 1:
        raise LatticeError("vectors do not span a hyperplane")
    return integral_direction(ns[0])
