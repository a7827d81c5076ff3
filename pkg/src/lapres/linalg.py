"""Exact integer and rational linear algebra.

Everything here works on plain lists of Python ints (or Fractions); there is
no floating point anywhere.
"""

from fractions import Fraction
from math import gcd, lcm


def bareiss_det(matrix):
    """Determinant of a square integer matrix by fraction-free elimination."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def rational_det_sign(matrix):
    """Sign (-1, 0, 1) of the determinant of a square rational matrix."""
    rows = []
    for row in matrix:
        row = [Fraction(x) for x in row]
        scale = lcm(*(x.denominator for x in row)) if row else 1
        rows.append([int(x * scale) for x in row])
    det = bareiss_det(rows)
    return (det > 0) - (det < 0)


def _sparse_rows(matrix):
    rows = []
    for row in matrix:
        d = {j: int(v) for j, v in enumerate(row) if v}
        if d:
            rows.append(d)
    return rows


def rank(matrix):
    """Rank over the rationals of an integer matrix (list of rows).

    Rows are kept sparse and primitive (content divided out), which keeps
    the entries of incidence matrices small.
    """
    return sparse_rank(_sparse_rows(matrix))


def sparse_rank(rows):
    """Rank over Q of a matrix given as a list of {column: int} dicts."""
    pivots = {}
    r = 0
    for row in rows:
        row = dict(row)
        while row:
            col = min(row)
            prow = pivots.get(col)
            if prow is None:
                g = 0
                for v in row.values():
                    g = gcd(g, v)
                if g > 1:
                    row = {k: v // g for k, v in row.items()}
                pivots[col] = row
                r += 1
                break
            a = prow[col]
            b = row[col]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            new = {}
            for k, v in row.items():
                new[k] = v * fa
            for k, v in prow.items():
                w = new.get(k, 0) - v * fb
                if w:
                    new[k] = w
                else:
                    new.pop(k, None)
            row = new
    return r


def matmul(a, b):
    """Product of two integer matrices given as lists of rows."""
    if not a or not b:
        cols = len(b[0]) if b else 0
        return [[0] * cols for _ in a]
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def smith_invariants(matrix):
    """Nonzero diagonal entries of the Smith normal form, in divisibility order.

    Plain integer row/column reduction: move the smallest nonzero entry to the
    pivot, clear its row and column by Euclidean steps, and repair any entry
    the pivot fails to divide by adding its row into the pivot row.
    """
    a = [list(map(int, row)) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = a[i][j]
                if v and (best is None or abs(v) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            changed = False
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    ri, rt = a[i], a[t]
                    for j in range(t, n):
                        ri[j] -= q * rt[j]
                    if ri[t]:
                        a[t], a[i] = a[i], a[t]
                        changed = True
                        break
            if changed:
                continue
            p = a[t][t]
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        changed = True
                        break
            if changed:
                continue
            p = a[t][t]
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            rt, rb = a[t], a[bad]
            for j in range(t, n):
                rt[j] += rb[j]
        diag.append(abs(a[t][t]))
        t += 1
    return diag
