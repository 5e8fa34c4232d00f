import random
from fractions import Fraction
from itertools import combinations, permutations
from math import gcd, prod

import pytest

from slnhom.homology import (BigradedAbelianGroup, Cell, ChainComplexError, FreeHomology, IntegerChainComplex,
                             IntMatrix, elementary_divisors, hermite_normal_form, homology, image_subcomplex,
                             induced_free_maps, inverse_unimodular, rank, render_cell, smith_normal_form,
                             solve_in_echelon)


# -- oracles ------------------------------------------------------------------------------

def det(A):
    n = len(A)
    total = 0
    for p in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        total += (-1) ** inv * prod(A[i][p[i]] for i in range(n))
    return total


def determinantal_divisors(A):
    """d_k = gcd of k x k minors; invariant factors are d_k / d_{k-1}."""
    m, n = len(A), len(A[0]) if A else 0
    out, prev = [], 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = gcd(g, det([[A[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def rational_rank(A):
    M = [[Fraction(x) for x in row] for row in A]
    r = 0
    cols = len(M[0]) if M else 0
    for c in range(cols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c] / M[r][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
    return r


def random_matrix(rng, m, n, lo=-6, hi=6, density=0.7):
    return [[rng.randint(lo, hi) if rng.random() < density else 0 for _ in range(n)] for _ in range(m)]


# -- Smith normal form --------------------------------------------------------------------

def test_snf_examples():
    _, D, _ = smith_normal_form(IntMatrix.from_dense([[2, 0], [0, 3]]))
    assert D.tolist() == [[1, 0], [0, 6]]
    _, D, _ = smith_normal_form(IntMatrix.from_dense([[2, 4], [6, 8]]))
    assert D.tolist() == [[2, 0], [0, 4]]
    assert elementary_divisors([[2, 0], [0, 3]]) == [1, 6]
    assert elementary_divisors([[0, 0], [0, 0]]) == []


@pytest.mark.parametrize("seed", range(200))
def test_snf_random(seed):
    rng = random.Random(seed)
    m, n = rng.randint(1, 4), rng.randint(1, 4)
    A = random_matrix(rng, m, n)
    M = IntMatrix.from_dense(A, n)
    U, D, V = smith_normal_form(M)
    assert U @ M @ V == D
    for i in range(m):
        for j in range(n):
            if i != j:
                assert D[i, j] == 0
    diag = [D[i, i] for i in range(min(m, n)) if D[i, i]]
    assert all(d > 0 for d in diag)
    assert all(diag[i + 1] % diag[i] == 0 for i in range(len(diag) - 1))
    assert diag == determinantal_divisors(A)
    assert elementary_divisors(M) == diag
    assert rank(M) == rational_rank(A)
    assert abs(det(U.tolist())) == 1 and abs(det(V.tolist())) == 1


@pytest.mark.parametrize("seed", range(30))
def test_sparse_divisors_on_larger_matrices(seed):
    rng = random.Random(1000 + seed)
    m, n = rng.randint(5, 12), rng.randint(5, 12)
    # low-rank products produce nontrivial invariants
    k = rng.randint(1, 5)
    A = random_matrix(rng, m, k, -3, 3)
    B = random_matrix(rng, k, n, -3, 3)
    C = [[sum(A[i][t] * B[t][j] for t in range(k)) * rng.choice([1, 2]) for j in range(n)] for i in range(m)]
    _, D, _ = smith_normal_form(IntMatrix.from_dense(C, n))
    full = [D[i, i] for i in range(min(m, n)) if D[i, i]]
    assert elementary_divisors(IntMatrix.from_dense(C, n)) == full
    assert len(full) == rational_rank(C)


def test_inverse_unimodular():
    V = IntMatrix.from_dense([[1, 2, 0], [0, 1, 3], [0, 0, 1]])
    W = IntMatrix.from_dense(inverse_unimodular(V))
    assert V @ W == IntMatrix.identity(3)


# -- Hermite normal form ----------------------------------------------------------------

def test_hnf_and_solve():
    vecs = [{0: 2, 1: 4}, {0: 6, 1: 8}, {1: 3}]
    H = hermite_normal_form(vecs)
    assert H == [{0: 2}, {1: 1}]
    assert solve_in_echelon(H, {0: 4, 1: -3}) == [2, -3]
    with pytest.raises(ValueError):
        solve_in_echelon(H, {0: 1})


@pytest.mark.parametrize("seed", range(40))
def test_hnf_spans_same_lattice(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    vecs = [{j: rng.randint(-5, 5) for j in range(n) if rng.random() < 0.8} for _ in range(rng.randint(1, 5))]
    H = hermite_normal_form(vecs)
    for v in vecs:
        solve_in_echelon(H, v)
    dense = [[row.get(j, 0) for j in range(n)] for row in H]
    orig = [[v.get(j, 0) for j in range(n)] for v in vecs]
    assert len(H) == rational_rank(orig) if any(any(r) for r in orig) else H == []
    if H:
        assert determinantal_divisors(dense) and prod(determinantal_divisors(dense)) == prod(determinantal_divisors(orig))


# -- chain complexes ---------------------------------------------------------------------

def rp2_complex():
    # cellular chains of RP^2: Z <-0- Z <-2- Z
    return IntegerChainComplex({(-2, 0): 1, (-1, 0): 1, (0, 0): 1},
                               {(-2, 0): [[2]], (-1, 0): [[0]]})


def test_rp2_homology():
    H = homology(rp2_complex())
    assert H[(0, 0)] == Cell(1)
    assert H[(-1, 0)] == Cell(0, (2,))
    assert H[(-2, 0)] == Cell(0)


def test_dd_zero_enforced_and_shapes():
    with pytest.raises(ChainComplexError):
        IntegerChainComplex({(0, 0): 1, (1, 0): 1, (2, 0): 1}, {(0, 0): [[1]], (1, 0): [[1]]})
    with pytest.raises(ChainComplexError):
        IntegerChainComplex({(0, 0): 2, (1, 0): 1}, {(0, 0): [[1, 0, 0]]})


def test_bigraded_group_operations():
    G = BigradedAbelianGroup({(0, 0): (1, (2, 3)), (1, 2): (0, ())})
    assert G[(0, 0)] == Cell(1, (6,))
    assert (1, 2) not in G.cells
    S = G.direct_sum(G).shift(1, 1)
    assert S[(1, 1)] == Cell(2, (6, 6))
    assert S.total_rank() == 2 and S.torsion_multiset() == [6, 6]
    assert G.collapse() == {0: Cell(1, (6,))}
    with pytest.raises(ValueError):
        Cell(0, (4, 6))


def test_render_cell():
    c = Cell(4, (2, 6, 6))
    assert render_cell(c, unicode=False) == "Z^4+Z_2+(Z_6)^2"
    assert render_cell(c) == "Z⁴⊕Z₂⊕(Z₆)²"
    assert render_cell(c, unicode=False, divisor_chain=True) == "Z^4+Z_2+Z_6+Z_6"
    assert render_cell(Cell(0)) == "0"


def random_complex(rng, length=3, max_rank=3):
    """Chain complex of the form G D G^-1 with D split into contractible pieces plus homology."""
    ranks, diffs = {}, {}
    for h in range(length):
        ranks[(h, 0)] = rng.randint(1, max_rank)
    for h in range(length - 1):
        src, tgt = ranks[(h, 0)], ranks[(h + 1, 0)]
        M = [[0] * src for _ in range(tgt)]
        diffs[(h, 0)] = M
    # a single nonzero block per step, arranged so that d o d = 0
    used_src = {h: 0 for h in range(length)}
    used_tgt = {h: 0 for h in range(length)}
    for h in range(length - 1):
        k = min(ranks[(h, 0)] - used_tgt[h], ranks[(h + 1, 0)])
        k = rng.randint(0, max(0, k))
        for t in range(k):
            i, j = t, used_tgt[h] + t
            diffs[(h, 0)][i][j] = rng.choice([1, 2, 3, -2])
        used_tgt[h + 1] = k
        used_src[h] = k
    return IntegerChainComplex(ranks, diffs)


@pytest.mark.parametrize("seed", range(40))
def test_homology_against_rational_ranks(seed):
    C = random_complex(random.Random(seed))
    H = homology(C)
    for (h, q), n in C.ranks.items():
        out = rational_rank(C.d(h, q).tolist()) if C.d(h, q).nrows else 0
        inn = rational_rank(C.d(h - 1, q).tolist()) if C.d(h - 1, q).nrows and C.d(h - 1, q).ncols else 0
        assert H[(h, q)].rank == n - out - inn
    # Euler characteristic is preserved
    assert sum((-1) ** h * c.rank for (h, q), c in H.items()) == sum((-1) ** h * n for (h, q), n in C.ranks.items())


def test_direct_sum_overlapping():
    C = rp2_complex()
    S = C.direct_sum(C)
    H = homology(S)
    assert H[(-1, 0)] == Cell(0, (2, 2))
    assert H[(0, 0)] == Cell(2)


def test_free_homology_and_induced_maps():
    # Z --(0)--> Z^2 --(1 1)--> Z, multiplication by 3 on everything
    C = IntegerChainComplex({(0, 0): 1, (1, 0): 2, (2, 0): 1}, {(1, 0): [[1, 1]]})
    F = FreeHomology(C, (1, 0))
    assert F.rank == 1
    assert F.coords({0: 1, 1: -1}) in ([1], [-1])
    three = {k: IntMatrix.diagonal([3] * n) for k, n in C.ranks.items()}
    maps = induced_free_maps(C, three)
    assert maps[(1, 0)].tolist() == [[3]]
    assert maps[(0, 0)].tolist() == [[3]]


def test_image_subcomplex():
    C = IntegerChainComplex({(0, 0): 2, (1, 0): 2}, {(0, 0): [[1, 0], [0, 0]]})
    f = {(0, 0): IntMatrix.diagonal([2, 2]), (1, 0): IntMatrix.diagonal([2, 2])}
    S = image_subcomplex(C, f)
    assert S.ranks == {(0, 0): 2, (1, 0): 2}
    assert homology(S)[(1, 0)] == Cell(1)
    bad = {(0, 0): IntMatrix.from_dense([[0, 1], [1, 0]]), (1, 0): IntMatrix.identity(2)}
    with pytest.raises(ChainComplexError):
        image_subcomplex(C, bad)


def fraction_det(A):
    M = [[Fraction(x) for x in row] for row in A]
    n, sign, out = len(M), 1, Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            sign = -sign
        out *= M[c][c]
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c] / M[c][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return sign * out


@pytest.mark.parametrize("seed", range(6))
def test_snf_large_random(seed):
    rng = random.Random(50 + seed)
    m, n = rng.randint(15, 30), rng.randint(15, 30)
    A = random_matrix(rng, m, n, -50, 50, density=0.3)
    M = IntMatrix.from_dense(A, n)
    U, D, V = smith_normal_form(M)
    assert U @ M @ V == D
    assert abs(fraction_det(U.tolist())) == 1 and abs(fraction_det(V.tolist())) == 1
    diag = [D[i, i] for i in range(min(m, n)) if D[i, i]]
    assert all(diag[i + 1] % diag[i] == 0 for i in range(len(diag) - 1))
    assert elementary_divisors(M) == diag
    assert len(diag) == rational_rank(A)


def test_snf_identity():
    _, D, _ = smith_normal_form(IntMatrix.identity(3))
    assert D == IntMatrix.identity(3)


def test_spec_homology_examples():
    H = homology(IntegerChainComplex({(0, 0): 1, (1, 0): 1}, {(0, 0): [[2]]}))
    assert H[(1, 0)] == Cell(0, (2,)) and H[(0, 0)] == Cell(0)
    H = homology(IntegerChainComplex({(0, 0): 2, (1, 0): 3}))
    assert H[(0, 0)] == Cell(2) and H[(1, 0)] == Cell(3)


@pytest.mark.parametrize("seed", range(40))
def test_torsion_against_stacked_snf(seed):
    # torsion of H at the middle term comes from the invariants of d_in alone
    rng = random.Random(300 + seed)
    a, b = rng.randint(1, 6), rng.randint(1, 6)
    A = random_matrix(rng, b, a, -4, 4)
    C = IntegerChainComplex({(0, 0): a, (1, 0): b}, {(0, 0): A})
    H = homology(C)
    inv = determinantal_divisors(A)
    assert H[(1, 0)].rank == b - len(inv)
    assert list(H[(1, 0)].torsion) == [d for d in inv if d > 1]
    assert H[(0, 0)].rank == a - rational_rank(A)


def test_image_subcomplex_examples():
    C = IntegerChainComplex({(0, 0): 2, (1, 0): 2}, {(0, 0): [[1, 1], [0, 3]]})
    ident = {k: IntMatrix.identity(n) for k, n in C.ranks.items()}
    assert homology(image_subcomplex(C, ident)) == homology(C)
    zero = {k: IntMatrix.zeros(n, n) for k, n in C.ranks.items()}
    assert image_subcomplex(C, zero).ranks == {}
    point = IntegerChainComplex({(0, 0): 1})
    S = image_subcomplex(point, {(0, 0): IntMatrix.from_dense([[2]])})
    assert S.ranks == {(0, 0): 1} and homology(S)[(0, 0)] == Cell(1)


@pytest.mark.parametrize("seed", range(20))
def test_image_subcomplex_pivot_order_invariance(seed):
    rng = random.Random(seed)
    C = random_complex(rng)
    # multiplication by an integer is a chain endomorphism
    c = rng.choice([2, 3, 6])
    f = {k: IntMatrix.diagonal([c] * n) for k, n in C.ranks.items()}
    up = homology(image_subcomplex(C, f, order="ascending"))
    down = homology(image_subcomplex(C, f, order="descending"))
    assert up == down == homology(C)
