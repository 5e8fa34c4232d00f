"""Bigraded Koszul complexes K(g_1, ..., g_m) over a graded free ring.

The exterior generator e_i sits in bidegree (-1, 2 deg g_i); for the
difference classes y_i - z_i this is the q-shift 2i carried by zeta_i.
The differential sends e_J to sum_i (-1)^(i-1) g_{j_i} e_{J - j_i}.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

from .flag_ring import QuotientRingPresentation, mult_operator
from .homology import IntegerChainComplex, IntMatrix
from .schur import SchurElement


@dataclass
class Operator:
    """A degree-``degree`` endomorphism of a graded ring, one matrix per source degree."""

    degree: int
    matrices: dict

    def at(self, d: int, rows: int, cols: int) -> IntMatrix:
        M = self.matrices.get(d)
        if M is None:
            return IntMatrix.zeros(rows, cols)
        if M.shape != (rows, cols):
            raise ValueError(f"operator block at degree {d} has shape {M.shape}, expected {(rows, cols)}")
        return M


class GradedRanks:
    """Minimal graded ring stand-in: ranks per degree (used for test doubles)."""

    def __init__(self, ranks: Mapping[int, int], max_degree: int | None = None):
        self._ranks = {int(d): int(r) for d, r in ranks.items() if r}
        self.max_degree = max(self._ranks, default=0) if max_degree is None else max_degree

    def rank(self, d: int) -> int:
        return self._ranks.get(d, 0)


@dataclass
class KoszulSpec:
    ring: object  # QuotientRingPresentation or GradedRanks
    generators: list  # SchurElement or Operator
    anchor: tuple = (0, 0)
    operators: list = field(init=False)

    def __post_init__(self):
        ops = []
        for g in self.generators:
            if isinstance(g, Operator):
                ops.append(g)
            elif isinstance(g, SchurElement):
                if not isinstance(self.ring, QuotientRingPresentation):
                    raise TypeError("Schur generators need a QuotientRingPresentation")
                if not g.is_homogeneous():
                    raise ValueError("generators must be homogeneous")
                ops.append(Operator(g.degree() if g else 0, mult_operator(self.ring, g)))
            else:
                raise TypeError(f"unsupported generator {g!r}")
        self.operators = ops

    @property
    def m(self) -> int:
        return len(self.operators)

    def weight(self, J: Sequence[int]) -> int:
        """q-weight of e_J; J holds 1-based generator indices."""
        return sum(2 * self.operators[j - 1].degree for j in J)


def ordered_subsets(m: int) -> list[tuple[int, ...]]:
    """Subsets of {1..m} by size, then colex."""
    out = []
    for p in range(m + 1):
        out.extend(sorted(combinations(range(1, m + 1), p), key=lambda J: J[::-1]))
    return out


def _layout(spec: KoszulSpec, max_subset: int | None = None):
    """Map (h, q) -> list of (J, d, offset, size) and the chain ranks."""
    h0, q0 = spec.anchor
    ring = spec.ring
    blocks: dict[tuple[int, int], list] = {}
    for J in ordered_subsets(spec.m):
        if max_subset is not None and len(J) > max_subset:
            continue
        wt = spec.weight(J)
        for d in range(ring.max_degree + 1):
            r = ring.rank(d)
            if not r:
                continue
            key = (h0 - len(J), q0 + wt + 2 * d)
            blocks.setdefault(key, []).append([J, d, 0, r])
    ranks = {}
    for key, items in blocks.items():
        off = 0
        for item in items:
            item[2] = off
            off += item[3]
        ranks[key] = off
    return blocks, ranks


def build_koszul(spec: KoszulSpec, max_subset: int | None = None, check: bool = True) -> IntegerChainComplex:
    """The Koszul complex as an IntegerChainComplex.

    ``max_subset`` drops exterior powers above that size (the truncated
    complex is still a complex, and agrees with the full one in the lower
    homological range).
    """
    blocks, ranks = _layout(spec, max_subset)
    index = {}
    for key, items in blocks.items():
        for J, d, off, r in items:
            index[(J, d)] = (key, off, r)
    diffs: dict = {}
    for key, items in blocks.items():
        tgt_key = (key[0] + 1, key[1])
        if tgt_key not in ranks:
            continue
        rows: dict[int, dict[int, int]] = {}
        for J, d, off, r in items:
            for i, j in enumerate(J):
                op = spec.operators[j - 1]
                sub = J[:i] + J[i + 1:]
                target = index.get((sub, d + op.degree))
                if target is None:
                    continue
                _, toff, tr = target
                M = op.at(d, tr, r)
                sign = -1 if i % 2 else 1
                for a, row in M.rows.items():
                    dst = rows.setdefault(toff + a, {})
                    for b, v in row.items():
                        dst[off + b] = dst.get(off + b, 0) + sign * v
        diffs[key] = IntMatrix(ranks[tgt_key], ranks[key], rows)
    return IntegerChainComplex(ranks, diffs, check=check)


def _wedge(a: tuple, b: tuple):
    """e_a ^ e_b as (sign, sorted tuple) or None if they share an index."""
    if set(a) & set(b):
        return None
    seq = list(a + b)
    sign = 1
    for i in range(len(seq)):
        for j in range(len(seq) - 1 - i):
            if seq[j] > seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                sign = -sign
    return sign, tuple(seq)


def _leibniz(J: tuple) -> dict:
    """d(e_J) by the Leibniz rule from d(e_j) = g_j: map J' -> (generator, sign)."""
    if len(J) == 0:
        return {}
    if len(J) == 1:
        return {(): (J[0], 1)}
    first, rest = J[:1], J[1:]
    out = {}
    # d(e_first) ^ e_rest
    out[rest] = (first[0], 1)
    # - e_first ^ d(e_rest)
    for sub, (g, s) in _leibniz(rest).items():
        w = _wedge(first, sub)
        if w is None:
            continue
        ws, key = w
        out[key] = (g, -s * ws)
    return out


def sign_audit(spec: KoszulSpec) -> list[str]:
    """Compare the builder's signs with a Leibniz expansion; check commutation.

    Returns a list of violations (empty when everything agrees).  Only
    subsets of size up to 5 are expanded.
    """
    report = []
    m = spec.m
    for J in ordered_subsets(min(m, 5)) if m <= 5 else [J for J in ordered_subsets(m) if len(J) <= 5]:
        expected = _leibniz(J)
        for i, j in enumerate(J):
            sub = J[:i] + J[i + 1:]
            sign = -1 if i % 2 else 1
            got = expected.get(sub)
            if got != (j, sign):
                report.append(f"sign mismatch for e_{list(J)} -> e_{list(sub)}: builder {sign}, Leibniz {got}")
    ring = spec.ring
    for a in range(m):
        for b in range(a + 1, m):
            A, B = spec.operators[a], spec.operators[b]
            for d in range(ring.max_degree + 1):
                r0 = ring.rank(d)
                if not r0:
                    continue
                da, db = d + A.degree, d + B.degree
                dab = d + A.degree + B.degree
                if dab > ring.max_degree:
                    continue
                ab = B.at(da, ring.rank(dab), ring.rank(da)) @ A.at(d, ring.rank(da), r0)
                ba = A.at(db, ring.rank(dab), ring.rank(db)) @ B.at(d, ring.rank(db), r0)
                if ab != ba:
                    report.append(f"generators {a + 1} and {b + 1} do not commute in degree {d}")
    return report
