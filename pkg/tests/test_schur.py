from collections import Counter
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from slnhom.partitions import partitions_of, transpose
from slnhom.schur import (SchurElement, embed, format_element, lr_coefficient, lr_coefficient_tableaux,
                          merge_blocks, parse_element, pieri_e, pieri_h, schur_multiply, split_full_elementary,
                          split_schur)


from oracles import element_to_poly, poly_mul, schur_poly


def test_s221_monomials():
    p = schur_poly((2, 2, 1), 3)
    assert p == Counter({(2, 2, 1): 1, (2, 1, 2): 1, (1, 2, 2): 1})
    v = SchurElement.schur((3,), 0, (2, 2, 1))
    assert element_to_poly(v, 3) == p


def test_pieri_examples():
    s1 = SchurElement.schur((2,), 0, (1,))
    expect = SchurElement.schur((2,), 0, (2,)) + SchurElement.schur((2,), 0, (1, 1))
    assert pieri_h(1, 0, s1) == expect
    assert pieri_e(1, 0, s1) == expect
    assert pieri_h(0, 0, s1) == s1
    assert pieri_h(2, 0, SchurElement.unit((2,))) == SchurElement.schur((2,), 0, (2,))
    assert pieri_e(2, 0, s1) == SchurElement.schur((2,), 0, (2, 1))
    assert not pieri_e(3, 0, SchurElement.unit((2,)))
    with pytest.raises(Exception):
        pieri_h(1, 3, s1)


def test_pieri_e_matches_monomials():
    # e_2 * s_1 in two variables is x1 x2 (x1 + x2)
    v = pieri_e(2, 0, SchurElement.schur((2,), 0, (1,)))
    assert element_to_poly(v, 2) == Counter({(2, 1): 1, (1, 2): 1})


def test_lr_examples():
    assert lr_coefficient((2, 1), (), (2, 1)) == 1
    assert lr_coefficient((1,), (1,), (2,)) == 1
    assert lr_coefficient((1,), (1,), (1, 1)) == 1
    assert lr_coefficient((2, 1), (2, 1), (3, 2, 1)) == 2
    assert lr_coefficient((1,), (1,), (3,)) == 0


def test_lr_321_against_monomials():
    # coefficient of s_(3,2,1) in s_(2,1)^2 over 3 variables, by triangularity in dominance order
    prod = poly_mul(schur_poly((2, 1), 3), schur_poly((2, 1), 3))
    rest = Counter(prod)
    coeffs = {}
    for nu in sorted((p for p in partitions_of(6, max_parts=3)), reverse=True):
        exps = tuple(list(nu) + [0] * (3 - len(nu)))
        c = rest.get(exps, 0)
        if c:
            coeffs[nu] = c
            for e, cc in schur_poly(nu, 3).items():
                rest[e] -= c * cc
    assert not +rest and not -rest
    assert coeffs[(3, 2, 1)] == 2


@pytest.mark.parametrize("n", range(0, 9))
def test_lr_engines_agree_and_symmetric(n):
    for nu in partitions_of(n):
        for k in range(n + 1):
            for lam in partitions_of(k):
                for mu in partitions_of(n - k):
                    c = lr_coefficient(lam, mu, nu)
                    assert c == lr_coefficient_tableaux(lam, mu, nu)
                    assert c == lr_coefficient(mu, lam, nu)
                    assert c == lr_coefficient(transpose(lam), transpose(mu), transpose(nu))


def _small_partitions(max_parts, max_weight):
    return [p for w in range(max_weight + 1) for p in partitions_of(w, max_parts=max_parts)]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_schur_products_against_ssyt(n):
    parts = _small_partitions(n, 8)
    for lam, mu in product(parts, parts):
        if sum(lam) + sum(mu) > 8:
            continue
        u = SchurElement.schur((n,), 0, lam)
        v = SchurElement.schur((n,), 0, mu)
        expected = poly_mul(schur_poly(lam, n), schur_poly(mu, n))
        assert element_to_poly(schur_multiply(u, v), n) == expected, (lam, mu)


def test_s1_cubed_in_two_variables():
    s1 = SchurElement.schur((2,), 0, (1,))
    got = s1 * s1 * s1
    assert got == SchurElement.schur((2,), 0, (3,)) + SchurElement.schur((2,), 0, (2, 1)).scale(2)


def test_unit_and_shape_mismatch():
    v = SchurElement.schur((2, 1), 1, (1,))
    assert SchurElement.unit((2, 1)) * v == v
    with pytest.raises(ValueError):
        schur_multiply(v, SchurElement.unit((2,)))


def test_part_bound_drops_terms():
    assert not SchurElement.schur((1,), 0, (1, 1))


def test_split_full_elementary_examples():
    assert split_full_elementary(0, (2, 1)) == SchurElement.unit((2, 1))
    e1 = split_full_elementary(1, (1, 1))
    assert e1 == SchurElement.schur((1, 1), 0, (1,)) + SchurElement.schur((1, 1), 1, (1,))
    e2 = split_full_elementary(2, (2, 1))
    assert e2 == SchurElement.schur((2, 1), 0, (1, 1)) + SchurElement((2, 1), {((1,), (1,)): 1})
    with pytest.raises(ValueError):
        split_full_elementary(1, (1, 1), N=3)


def test_split_schur_examples():
    assert split_schur((1,), 1, 1) == SchurElement((1, 1), {((1,), ()): 1, ((), (1,)): 1})
    assert split_schur((2,), 1, 1) == SchurElement((1, 1), {((2,), ()): 1, ((1,), (1,)): 1, ((), (2,)): 1})
    assert split_schur((1, 1), 1, 1) == SchurElement((1, 1), {((1,), (1,)): 1})


def _union_poly(v: SchurElement, sizes):
    """Expand a two-block element into monomials in the concatenated alphabet."""
    out = Counter()
    for (la, lb), c in v.terms.items():
        pa = schur_poly(la, sizes[0]) if sizes[0] else Counter({(): 1} if not la else {})
        pb = schur_poly(lb, sizes[1]) if sizes[1] else Counter({(): 1} if not lb else {})
        for ea, ca in pa.items():
            for eb, cb in pb.items():
                out[ea + eb] += c * ca * cb
    return Counter({k: x for k, x in out.items() if x})


@pytest.mark.parametrize("sizes", [(1, 1), (1, 2), (2, 2), (2, 1), (3, 1)])
def test_split_schur_against_union_alphabet(sizes):
    n = sum(sizes)
    for nu in _small_partitions(n, 5):
        assert _union_poly(split_schur(nu, *sizes), sizes) == schur_poly(nu, n), nu


@pytest.mark.parametrize("a", range(0, 5))
@pytest.mark.parametrize("b", range(0, 5))
def test_generating_function_identity(a, b):
    # sum_{i+j=k} (-1)^j e_i(A u B) h_j(B) = e_k(A)
    shape = (a, b)
    for k in range(7):
        total = SchurElement.zero(shape)
        for j in range(k + 1):
            total = total + (split_full_elementary(k - j, shape) * SchurElement.complete(shape, 1, j)).scale((-1) ** j)
        assert total == SchurElement.elementary(shape, 0, k), (a, b, k)


def test_merge_blocks_is_diagonal_restriction():
    v = split_full_elementary(2, (1, 2, 2))
    merged = merge_blocks(v, 1, 2)
    # e_2(x, y, y) restricted: e_2(x u y u y) = x e_1(2y) + e_2(2y)
    assert merged.shape == (1, 2)
    for (lx, ly), c in merged.terms.items():
        assert sum(lx) + sum(ly) == 2
    with pytest.raises(ValueError):
        merge_blocks(v, 0, 1)


def test_embed_places_blocks():
    v = split_schur((1,), 1, 1)
    w = embed(v, (1, 2, 1), [0, 2])
    assert w == SchurElement((1, 2, 1), {((1,), (), ()): 1, ((), (), (1,)): 1})


def test_serialization_round_trip():
    v = SchurElement((2, 1), {((2, 1), (1,)): 2, ((), ()): -1})
    text = format_element(v)
    assert "2*s[2,1|1]" in text
    assert parse_element(text, (2, 1)) == v


small_parts = st.sampled_from(_small_partitions(3, 3))


@settings(max_examples=1000, deadline=None)
@given(small_parts, small_parts, small_parts)
def test_associative_and_commutative(a, b, c):
    u, v, w = (SchurElement.schur((3,), 0, x) for x in (a, b, c))
    assert u * v == v * u
    assert (u * v) * w == u * (v * w)
