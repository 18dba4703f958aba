import itertools
import math
import random
from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from k3lat import linalg as la
from k3lat.reduction import ldl_integral, lll_gram

small = st.integers(min_value=-9, max_value=9)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def square(max_n=5):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n))


def check_snf(m):
    u, d, v = la.smith_normal_form(m)
    assert la.matmul(la.matmul(u, m), v) == d
    assert abs(la.determinant(u)) == 1 and abs(la.determinant(v)) == 1
    diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
    assert all(d[i][j] == 0 for i in range(len(d)) for j in range(len(d[0])) if i != j)
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else b % a == 0
    return diag


def test_snf_contract_on_1000_random_matrices():
    rng = random.Random(20240611)
    for _ in range(1000):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        m = [[rng.randint(-20, 20) for _ in range(c)] for _ in range(r)]
        check_snf(m)


def determinantal_divisors(m):
    """Invariant factors from gcds of k×k minors."""
    M = sympy.Matrix(m)
    r, c = M.shape
    out, prev = [], 1
    for k in range(1, min(r, c) + 1):
        g = 0
        for rows in itertools.combinations(range(r), k):
            for cols in itertools.combinations(range(c), k):
                g = math.gcd(g, int(M.extract(list(rows), list(cols)).det()))
        if g == 0:
            out += [0] * (min(r, c) - k + 1)
            break
        out.append(g // prev)
        prev = g
    return out


@settings(max_examples=150, deadline=None)
@given(matrices(4, 4))
def test_snf_matches_determinantal_divisors(m):
    assert check_snf(m) == determinantal_divisors(m)


@settings(max_examples=200, deadline=None)
@given(square())
def test_determinant_matches_sympy(m):
    assert la.determinant(m) == int(sympy.Matrix(m).det())


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_hnf_same_row_lattice(m):
    h = la.hnf(m)
    assert la.rank(h) == len(h) == la.rank(m)
    for row in m:
        assert la.solve_integer(h, row) is not None or not any(row)
    for row in h:
        # every HNF row is an integer combination of the input rows
        ext = la.hnf(m + [row])
        assert ext == h
    pivots = [next(j for j, x in enumerate(r) if x) for r in h]
    assert pivots == sorted(pivots) and len(set(pivots)) == len(pivots)
    for i, p in enumerate(pivots):
        assert h[i][p] > 0
        assert all(0 <= h[k][p] < h[i][p] for k in range(i))


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_integer_kernel(m):
    cols = len(m[0])
    k = la.integer_kernel(m, cols)
    assert len(k) == cols - la.rank(m)
    for row in k:
        assert la.matvec(m, row) == [0] * len(m)
    if k:
        assert set(la.elementary_divisors(k)) <= {1}


@settings(max_examples=100, deadline=None)
@given(square(4))
def test_inverse(m):
    if la.determinant(m) == 0:
        return
    inv = la.inverse(m)
    assert la.matmul(m, inv) == la.identity(len(m))


def _random_positive_gram(rng, n):
    while True:
        b = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        if la.determinant(b):
            return la.matmul(b, la.transpose(b))


def test_lll_is_unimodular_congruence():
    rng = random.Random(7)
    for n in range(1, 7):
        for _ in range(20):
            g = _random_positive_gram(rng, n)
            red, h = lll_gram(g)
            assert abs(la.determinant(h)) == 1
            assert la.congruent(h, g) == red


def test_ldl_integral_reconstructs_gram():
    rng = random.Random(11)
    for n in range(1, 7):
        g = _random_positive_gram(rng, n)
        d, lam = ldl_integral(g)
        assert d[0] == 1
        for k in range(1, n + 1):
            assert d[k] == la.determinant([r[:k] for r in g[:k]])
        # Cholesky-like: G = Σ (ℓ_j ℓ_jᵀ) / (d_j d_{j+1}) with ℓ_j the j-th column of λ
        recon = [[Fraction(0)] * n for _ in range(n)]
        for j in range(n):
            col = [Fraction(lam[i][j]) if i != j else Fraction(d[j + 1]) for i in range(n)]
            for a in range(n):
                for b in range(n):
                    recon[a][b] += col[a] * col[b] / (d[j] * d[j + 1])
        assert recon == [[Fraction(x) for x in r] for r in g]
