import pytest

from slnhom.flag_ring import build_ambient, difference_generator
from slnhom.homology import Cell, ChainComplexError, IntMatrix, homology
from slnhom.koszul import GradedRanks, KoszulSpec, Operator, build_koszul, ordered_subsets, sign_audit
from slnhom.schur import SchurElement


def scalar(c, degree=0):
    return Operator(degree, {0: IntMatrix.from_dense([[c]])})


def test_ordered_subsets_by_size_then_colex():
    assert ordered_subsets(3) == [(), (1,), (2,), (3,), (1, 2), (1, 3), (2, 3), (1, 2, 3)]
    assert len(ordered_subsets(5)) == 32


def test_single_scalar_double():
    C = build_koszul(KoszulSpec(GradedRanks({0: 1}), [scalar(2)]))
    assert C.ranks == {(0, 0): 1, (-1, 0): 1}
    H = homology(C)
    assert H[(0, 0)] == Cell(0, (2,))
    assert H[(-1, 0)] == Cell(0)


def test_coprime_scalars_are_acyclic():
    C = build_koszul(KoszulSpec(GradedRanks({0: 1}), [scalar(2), scalar(3)]))
    assert homology(C).cells == {}


def test_zero_operator_gives_exterior_algebra():
    C = build_koszul(KoszulSpec(GradedRanks({0: 1}), [scalar(0), scalar(0)], anchor=(1, 5)))
    H = homology(C)
    assert H.total_rank() == 4
    assert H[(1, 5)] == Cell(1) and H[(0, 5)] == Cell(2) and H[(-1, 5)] == Cell(1)


def test_exterior_generator_bidegree():
    ring = GradedRanks({0: 1, 1: 1, 2: 1})
    x = Operator(1, {0: IntMatrix.from_dense([[1]]), 1: IntMatrix.from_dense([[1]])})
    C = build_koszul(KoszulSpec(ring, [x]))
    # e_1 sits at (-1, 2 deg x) = (-1, 2)
    assert (-1, 2) in C.ranks and (-1, 0) not in C.ranks
    H = homology(C)
    assert H[(0, 0)] == Cell(1)
    # the truncation leaves the top class of e_1 * x^2 alive
    assert H[(-1, 6)] == Cell(1)


def test_noncommuting_operators_fail():
    ring = GradedRanks({0: 2})
    A = Operator(0, {0: IntMatrix.from_dense([[0, 1], [0, 0]])})
    B = Operator(0, {0: IntMatrix.from_dense([[0, 0], [1, 0]])})
    spec = KoszulSpec(ring, [A, B])
    assert any("do not commute" in r for r in sign_audit(spec))
    with pytest.raises(ChainComplexError):
        build_koszul(spec)


def test_operator_shape_checked():
    ring = GradedRanks({0: 2})
    with pytest.raises(ValueError):
        build_koszul(KoszulSpec(ring, [scalar(1)]))


def test_schur_generators_need_a_ring():
    with pytest.raises(TypeError):
        KoszulSpec(GradedRanks({0: 1}), [SchurElement.unit((1,))])
    with pytest.raises(TypeError):
        KoszulSpec(GradedRanks({0: 1}), ["x"])


def test_regular_difference_sequence_concentrates_in_degree_zero():
    shape = (2, 2)
    ring = build_ambient(shape, 6)
    gens = [difference_generator(shape, i, 0, 1) for i in (1, 2)]
    spec = KoszulSpec(ring, gens)
    assert sign_audit(spec) == []
    H = homology(build_koszul(spec))
    low = {k: c for k, c in H.items() if k[1] <= 8}
    assert all(h == 0 for (h, q) in low)
    # Z[e1, e2] of the remaining alphabet: ranks 1, 1, 2, 2, 3 in degrees 0..4
    assert [H[(0, 2 * d)].rank for d in range(5)] == [1, 1, 2, 2, 3]


def test_real_projective_three_space():
    # U(2) modulo the diagonal U(1): Z, 0, Z/2, Z
    from slnhom.invariants import trefoil_summand_homology
    H = trefoil_summand_homology(2, 1, 0, framing="blackboard")
    assert sorted(H.cells.values(), key=lambda c: (c.rank, c.torsion)) == [Cell(0, (2,)), Cell(1), Cell(1)]
    assert H.total_rank() == 2 and H.torsion_multiset() == [2]


def test_truncated_exterior_powers():
    C = build_koszul(KoszulSpec(GradedRanks({0: 1}), [scalar(0)] * 3), max_subset=1)
    assert sorted(C.ranks) == [(-1, 0), (0, 0)]
    assert C.ranks[(-1, 0)] == 3
