import pytest

from slnhom.flag_ring import (QuotientRingPresentation, SubgroupBlocks, TorsionError, ambient_basis, build_ambient,
                              build_quotient, chern_action, difference_generator, mult_operator, regularity_check,
                              truncated_hilbert)
from slnhom.laurent import poincare_flag
from slnhom.schur import SchurElement, split_full_elementary


def compositions(n):
    """Compositions of n into positive parts."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first,) + rest


# the N = 6 sweep runs in the acceptance suite
ALL_BLOCKS = [c for N in range(1, 6) for c in compositions(N)]
ALL_BLOCKS += [c[:i] + (0,) + c[i:] for N in range(1, 5) for c in compositions(N) for i in range(len(c) + 1)]


@pytest.mark.parametrize("blocks", ALL_BLOCKS, ids=lambda b: "-".join(map(str, b)))
def test_borel_quotient_matches_flag_poincare(blocks):
    P = build_quotient(SubgroupBlocks(blocks))
    assert P.poincare() == poincare_flag(blocks, sum(blocks))
    assert P.is_standard()


def test_grouped_factors_multiply():
    H = SubgroupBlocks((1, 1, 2, 1), grouping=((0, 1), (2, 3)))
    assert H.factor_sizes() == (2, 3)
    P = build_quotient(H)
    assert P.poincare() == poincare_flag((1, 1), 2) * poincare_flag((2, 1), 3)
    assert H.dimension() == 2 + 4


def test_bad_subgroups():
    with pytest.raises(ValueError):
        SubgroupBlocks((1, -1))
    with pytest.raises(ValueError):
        SubgroupBlocks((1, 1), grouping=((0,),))


def test_projective_line():
    P = build_quotient(SubgroupBlocks((1, 1)))
    assert P.ranks() == {0: 1, 1: 1}
    assert P.total_rank() == 2 and P.top_degree() == 1
    # x^2 = 0 in H*(CP^1) with x the first block's class
    x = SchurElement.elementary((1, 1), 0, 1)
    assert P.reduce(x * x, 2) == {}
    assert P.reduce(x, 1) != {}


def test_grassmannian_g24():
    P = build_quotient(SubgroupBlocks((2, 2)))
    assert truncated_hilbert(P) == [1, 1, 2, 1, 1]
    # s_(1) ^ 4 = 2 [pt] in G(2,4)
    s1 = SchurElement.schur((2, 2), 0, (1,))
    top = s1 * s1 * s1 * s1
    assert list(P.reduce(top, 4).values()) in ([2], [-2])


def test_mult_operator_is_ring_action():
    P = build_quotient(SubgroupBlocks((1, 2, 1)))
    a = SchurElement.elementary((1, 2, 1), 1, 1)
    b = SchurElement.complete((1, 2, 1), 0, 2)
    Ma, Mb, Mab = mult_operator(P, a), mult_operator(P, b), mult_operator(P, a * b)
    for d in P.degrees:
        if d + 3 > P.max_degree:
            continue
        assert Mb[d + 1] @ Ma[d] == Mab[d]
        assert Ma[d + 2] @ Mb[d] == Mab[d]
    with pytest.raises(ValueError):
        mult_operator(P, SchurElement.unit((2,)))


def test_chern_action_matches_product():
    P = build_ambient((1, 2), 4)
    c = chern_action(P, 2, (0, 1))
    direct = mult_operator(P, split_full_elementary(2, (1, 2)))
    assert c == direct
    with pytest.raises(ValueError):
        chern_action(P, 1, (1, 1))


def test_ambient_ranks():
    P = build_ambient((1, 2), 4)
    assert truncated_hilbert(P) == [len(ambient_basis((1, 2), d)) for d in range(5)]
    assert truncated_hilbert(P)[:3] == [1, 2, 4]


def test_regularity_check():
    shape = (2, 2)
    diffs = [difference_generator(shape, i, 0, 1) for i in (1, 2)]
    assert regularity_check(shape, diffs, 5) == []
    assert regularity_check(shape, [diffs[0], diffs[0]], 4)


def test_torsion_detected():
    with pytest.raises(TorsionError):
        QuotientRingPresentation((1,), [SchurElement.elementary((1,), 0, 1).scale(2)], 2)


def test_generator_validation():
    with pytest.raises(ValueError):
        QuotientRingPresentation((1,), [SchurElement.unit((1,))], 2)
    with pytest.raises(ValueError):
        QuotientRingPresentation((1,), [SchurElement.zero((1,))], 2)
