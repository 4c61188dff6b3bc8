"""Exact integer/rational linear algebra used by the lattice machinery.

Matrices are tuples of row tuples; everything is computed over Python ints
and fractions.Fraction, no floating point anywhere.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd


def identity(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_mul(a, b):
    n = len(b)
    bt = tuple(zip(*b))
    return tuple(tuple(sum(ra[k] * cb[k] for k in range(n)) for cb in bt) for ra in a)


def mat_vec(a, v):
    return tuple(sum(row[k] * v[k] for k in range(len(v))) for row in a)


def mat_pow(a, m: int):
    if m < 0:
        raise ValueError("negative power")
    result = identity(len(a))
    base = a
    while m:
        if m & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        m >>= 1
    return result


def transpose(a):
    return tuple(zip(*a))


def bareiss_det(matrix) -> int:
    """Fraction-free determinant of a square integer matrix."""
    n = len(matrix)
    m = [list(row) for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def char_poly(matrix) -> tuple[int, ...]:
    """Characteristic polynomial det(xI - M) of an integer matrix.

    Faddeev-LeVerrier over exact rationals; returns integer coefficients
    (c[0], ..., c[n]) with c[k] the coefficient of x^k, c[n] = 1.
    """
    n = len(matrix)
    a = tuple(tuple(Fraction(x) for x in row) for row in matrix)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n))
    for k in range(1, n + 1):
        mk = mat_add(mat_mul(a, mk), tuple(
            tuple(coeffs[n - k + 1] if i == j else Fraction(0) for j in range(n))
            for i in range(n)))
        am = mat_mul(a, mk)
        coeffs[n - k] = -sum(am[i][i] for i in range(n)) / k
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise ArithmeticError("characteristic polynomial not integral")
        out.append(c.numerator)
    return tuple(out)


def poly_eval(coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _deflate(work, r: Fraction):
    """Divide the polynomial (low-to-high coefficients) by (x - r); r must be a root."""
    n = len(work) - 1
    quotient = [Fraction(0)] * n
    carry = work[n]
    quotient[n - 1] = carry
    for k in range(n - 1, 0, -1):
        carry = work[k] + r * carry
        quotient[k - 1] = carry
    return quotient


def rational_roots(coeffs) -> list[Fraction]:
    """All rational roots of an integer polynomial, with multiplicity.

    Candidates p/q with p | trailing and q | leading coefficient; each found
    root is divided out so multiplicities are exact.  Returned in descending
    order.
    """
    work = [Fraction(c) for c in coeffs]
    while len(work) > 1 and work[-1] == 0:
        work.pop()
    if len(work) <= 1:
        return []
    roots: list[Fraction] = []
    while len(work) > 1 and work[0] == 0:
        roots.append(Fraction(0))
        work.pop(0)
    if len(work) > 1:
        candidates = set()
        for p in _divisors(work[0].numerator):
            for q in _divisors(work[-1].numerator):
                if p == 0 or q == 0:
                    continue
                candidates.add(Fraction(p, q))
                candidates.add(Fraction(-p, q))
        for r in sorted(candidates, reverse=True):
            while len(work) > 1 and poly_eval(work, r) == 0:
                roots.append(r)
                work = _deflate(work, r)
    return sorted(roots, reverse=True)


def rref(rows):
    """Reduced row echelon form over Fraction; returns (rows, pivot columns)."""
    m = [[Fraction(x) for x in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def primitive_vector(vec) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector, first nonzero > 0."""
    fr = [Fraction(x) for x in vec]
    if all(x == 0 for x in fr):
        return tuple(0 for _ in fr)
    denom = 1
    for x in fr:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in fr]
    content = 0
    for x in ints:
        content = gcd(content, abs(x))
    ints = [x // content for x in ints]
    lead = next(x for x in ints if x)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def rational_kernel(matrix) -> list[tuple[int, ...]]:
    """Primitive integer basis of the kernel of a rational matrix."""
    if not matrix:
        return []
    ncols = len(matrix[0])
    m, pivots = rref(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][fc]
        basis.append(primitive_vector(v))
    return basis


def solve_unique(rows, rhs):
    """Solve rows * v = rhs; return the Fraction vector if the solution is
    unique and consistent, else None."""
    ncols = len(rows[0])
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    m, pivots = rref(aug)
    if ncols in pivots:          # inconsistent: pivot in rhs column
        return None
    if len(pivots) != ncols:     # underdetermined
        return None
    sol = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        sol[pc] = m[r][ncols]
    return sol


def nonneg_kernel_vertices(matrix, ncols=None):
    """Yield nonzero v >= 0 with matrix*v = 0, normalized to sum(v) = 1.

    Enumerates basic feasible solutions of {v >= 0, Mv = 0, sum v = 1} by
    support, smallest supports first; complete because a nonempty polytope
    has a vertex and every vertex is pinned by its support.
    """
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    if ncols == 0:
        return
    rank_bound = min(ncols, len(matrix) + 1)
    for size in range(1, rank_bound + 1):
        for support in itertools.combinations(range(ncols), size):
            rows = [[Fraction(row[j]) for j in support] for row in matrix]
            rows.append([Fraction(1)] * size)
            rhs = [Fraction(0)] * len(matrix) + [Fraction(1)]
            sol = solve_unique(rows, rhs)
            if sol is None or any(x < 0 for x in sol):
                continue
            full = [Fraction(0)] * ncols
            for j, x in zip(support, sol):
                full[j] = x
            yield tuple(full)


def int_matrix_inverse(matrix) -> tuple[tuple[int, ...], ...]:
    """Exact inverse of a unimodular integer matrix (determinant +-1)."""
    n = len(matrix)
    det = bareiss_det(matrix)
    if det not in (1, -1):
        raise ValueError(f"matrix is not unimodular (det = {det})")
    aug = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
           for i, row in enumerate(matrix)]
    m, pivots = rref(aug)
    inv = tuple(tuple(int(m[i][n + j]) for j in range(n)) for i in range(n))
    return inv


def matrix_rank(matrix) -> int:
    if not matrix:
        return 0
    _, pivots = rref(matrix)
    return len(pivots)
