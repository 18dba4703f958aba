"""Exact integer and rational matrix algebra.

Matrices are plain lists of rows.  Entries are Python ints (or
``Fraction`` where noted), so nothing ever overflows or rounds.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> Matrix:
    return [[0] * c for _ in range(r)]


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    if not a:
        return []
    bt = transpose(b)
    if not bt:
        return [[] for _ in a]
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def vecmat(v: Sequence, a: Sequence[Sequence]) -> list:
    if not a:
        return []
    return [sum(v[i] * a[i][j] for i in range(len(v))) for j in range(len(a[0]))]


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def congruent(b: Sequence[Sequence], g: Sequence[Sequence]) -> list[list]:
    """Return ``b · g · bᵀ``; rational inputs are scaled to integers first."""
    db, dg = common_denominator(b), common_denominator(g)
    if db == dg == 1:
        bg = matmul(b, g)
        return [[dot(r, s) for s in b] for r in bg]
    bi = [[int(x * db) for x in r] for r in b]
    gi = [[int(x * dg) for x in r] for r in g]
    den = db * db * dg
    bg = matmul(bi, gi)
    return [[Fraction(dot(r, s), den) for s in bi] for r in bg]


def block_diag(*blocks: Sequence[Sequence[int]]) -> Matrix:
    n = sum(len(b) for b in blocks)
    out = zeros(n, n)
    k = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[k + i][k + j] = x
        k += len(b)
    return out


def is_symmetric(a: Sequence[Sequence]) -> bool:
    n = len(a)
    return all(len(r) == n for r in a) and all(
        a[i][j] == a[j][i] for i in range(n) for j in range(i)
    )


def determinant(a: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
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


def rank(a: Sequence[Sequence]) -> int:
    return len(rref(a)[1])


def rref(a: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q, with pivot columns."""
    m = [[Fraction(x) for x in r] for r in a]
    rows = len(m)
    cols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def inverse(a: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(a)
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(a)]
    m, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in m[:n]]


def rational_solve(a: Sequence[Sequence], b: Sequence) -> Optional[list[Fraction]]:
    """Solve ``a·x = b`` over Q; ``None`` when b is outside the image.

    Free variables are set to zero, so a nonsingular square system
    returns its unique solution.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    aug = [list(a[i]) + [b[i]] for i in range(rows)]
    m, piv = rref(aug)
    if cols in piv:
        return None
    x = [Fraction(0)] * cols
    for r, c in enumerate(piv):
        x[c] = m[r][cols]
    return x


def common_denominator(rows: Sequence[Sequence]) -> int:
    den = 1
    for r in rows:
        for x in r:
            d = Fraction(x).denominator
            den = den * d // gcd(den, d)
    return den


def as_int_matrix(a: Sequence[Sequence]) -> Matrix:
    out = []
    for r in a:
        row = []
        for x in r:
            f = Fraction(x)
            if f.denominator != 1:
                raise ValueError("matrix is not integral")
            row.append(f.numerator)
        out.append(row)
    return out


def is_integral(a: Sequence[Sequence]) -> bool:
    return all(Fraction(x).denominator == 1 for r in a for x in r)


# --- Smith normal form -------------------------------------------------------

def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``U·M·V = D`` and U, V unimodular.

    D is diagonal with d1 | d2 | ... and nonnegative entries.  Pivots are
    chosen as the entry of smallest absolute value in the active block.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    d = [list(map(int, r)) for r in m]
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, f):
        # row_dst += f * row_src
        if f:
            d[dst] = [x + f * y for x, y in zip(d[dst], d[src])]
            u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):
        if f:
            for r in d:
                r[dst] += f * r[src]
            for r in v:
                r[dst] += f * r[src]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                ri = d[i]
                for j in range(t, cols):
                    x = ri[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best and best[0] == 1:
                    break
            if best is None:
                return u, d, v
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            p = d[t][t]
            clean = True
            for i in range(t + 1, rows):
                if d[i][t]:
                    add_row(i, t, -(d[i][t] // p))
                    if d[i][t]:
                        clean = False
            for j in range(t + 1, cols):
                if d[t][j]:
                    add_col(j, t, -(d[t][j] // p))
                    if d[t][j]:
                        clean = False
            if not clean:
                continue
            # divisibility condition on the remaining block
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if d[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return u, d, v


def elementary_divisors(m: Sequence[Sequence[int]]) -> list[int]:
    _, d, _ = smith_normal_form(m)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


# --- Hermite normal form, kernels, saturation -------------------------------

def hnf(m: Sequence[Sequence[int]]) -> Matrix:
    """Row-style Hermite normal form with zero rows removed.

    Pivots are positive, entries above a pivot lie in ``[0, pivot)``.
    """
    a = [list(map(int, r)) for r in m if any(r)]
    if not a:
        return []
    cols = len(a[0])
    out = []
    r = 0
    for c in range(cols):
        nz = [i for i in range(r, len(a)) if a[i][c]]
        if not nz:
            continue
        while len(nz) > 1:
            k = min(nz, key=lambda i: abs(a[i][c]))
            for i in nz:
                if i != k:
                    q = a[i][c] // a[k][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[k])]
            nz = [i for i in range(r, len(a)) if a[i][c]]
        k = nz[0]
        a[r], a[k] = a[k], a[r]
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        p = a[r][c]
        for i in range(r):
            q = a[i][c] // p
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return [row for row in a[:r]]


def integer_kernel(m: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    """Rows forming a saturated Z-basis of ``{x : m·x = 0}``."""
    if not m:
        return identity(ncols or 0)
    cols = len(m[0])
    _, d, v = smith_normal_form(m)
    r = sum(1 for i in range(min(len(d), cols)) if d[i][i])
    vt = transpose(v)
    return hnf([vt[j] for j in range(r, cols)])


def saturate_rows(rows: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Primitive closure (Q-span ∩ Zⁿ) of the row span."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return []
    k = integer_kernel(rows, ncols)
    if not k:
        return identity(ncols)
    return hnf(integer_kernel(k, ncols))


def lattice_basis(rows: Sequence[Sequence], ncols: Optional[int] = None) -> list[list[Fraction]]:
    """Z-basis (HNF over a common denominator) of the span of rational rows."""
    rows = [list(r) for r in rows]
    if not rows:
        return []
    den = common_denominator(rows)
    ints = [[_scale(x, den) for x in r] for r in rows]
    return [[Fraction(x, den) for x in r] for r in hnf(ints)]


def _scale(x, den: int) -> int:
    x = Fraction(x)
    return x.numerator * (den // x.denominator)


def solve_integer(basis: Sequence[Sequence], v: Sequence) -> Optional[list[int]]:
    """Coordinates of v in a Q-independent basis, if integral."""
    x = rational_solve(transpose(basis), v)
    if x is None or any(c.denominator != 1 for c in x):
        return None
    return [int(c) for c in x]
