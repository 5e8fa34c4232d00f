"""Partitions, the constrained sets P(l, k), and lattice-path index sets.

A partition is stored as a plain tuple of weakly decreasing positive
integers; the empty tuple is the zero partition.  Tuples hash and compare
cheaply, which matters because partitions are dictionary keys everywhere in
the Schur algebra.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Sequence

Partition = tuple  # tuple[int, ...], weakly decreasing, no zeros


def make_partition(parts: Sequence[int]) -> Partition:
    """Normalize ``parts`` to a partition, dropping zeros.

    Raises ``ValueError`` for negative or increasing entries.
    """
    out = tuple(int(p) for p in parts if p != 0)
    if any(p < 0 for p in out):
        raise ValueError(f"negative part in {parts!r}")
    if any(out[i] < out[i + 1] for i in range(len(out) - 1)):
        raise ValueError(f"parts not weakly decreasing: {parts!r}")
    return out


def is_partition(parts) -> bool:
    return (
        isinstance(parts, tuple)
        and all(isinstance(p, int) and p > 0 for p in parts)
        and all(parts[i] >= parts[i + 1] for i in range(len(parts) - 1))
    )


def weight(lam: Partition) -> int:
    return sum(lam)


def part(lam: Partition, j: int) -> int:
    """The j-th part (1-based), zero past the end."""
    return lam[j - 1] if 1 <= j <= len(lam) else 0


def box(l: int, k: int) -> Partition:
    """The l x k rectangle."""
    if l < 0 or k < 0:
        raise ValueError("box dimensions must be nonnegative")
    return (k,) * l if k > 0 else ()


def in_box(lam: Partition, l: int, k: int) -> bool:
    """Membership in P(l, k): at most l parts, each at most k."""
    return len(lam) <= l and (not lam or lam[0] <= k)


def transpose(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > i) for i in range(lam[0]))


def _check_box(lam: Partition, l: int, k: int) -> None:
    if not in_box(lam, l, k):
        raise ValueError(f"{lam!r} is not in P({l}, {k})")


def complement(lam: Partition, l: int, k: int) -> Partition:
    """Complement of ``lam`` inside box(l, k), rotated by 180 degrees."""
    _check_box(lam, l, k)
    return make_partition([k - part(lam, l + 1 - i) for i in range(1, l + 1)])


def hat(lam: Partition, l: int, k: int) -> Partition:
    """Transpose of the complement; lands in P(k, l)."""
    return transpose(complement(lam, l, k))


def contains(outer: Partition, inner: Partition) -> bool:
    return len(inner) <= len(outer) and all(
        inner[i] <= outer[i] for i in range(len(inner))
    )


def partitions_of(n: int, max_parts: int | None = None, max_part: int | None = None) -> Iterator[Partition]:
    """Partitions of n in lexicographically decreasing order."""
    if max_parts is None:
        max_parts = n
    if max_part is None:
        max_part = n
    yield from _partitions(n, max_parts, max_part)


@lru_cache(maxsize=None)
def _partitions_cached(n: int, max_parts: int, max_part: int) -> tuple:
    if n == 0:
        return ((),)
    if max_parts == 0 or max_part == 0:
        return ()
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions_cached(n - first, max_parts - 1, first):
            out.append((first,) + rest)
    return tuple(out)


def _partitions(n: int, max_parts: int, max_part: int):
    if n < 0:
        return iter(())
    return iter(_partitions_cached(n, max(max_parts, 0), max(max_part, 0)))


def partitions_in_box(l: int, k: int) -> list[Partition]:
    """Enumerate P(l, k), ordered by weight then lexicographically."""
    out = []
    for w in range(l * k + 1):
        out.extend(sorted(_partitions(w, l, k)))
    return out


def sort_key(lam: Partition):
    return (sum(lam), lam)


# -- lattice paths and square-free index monomials ---------------------------

def index_set_to_partition(J: Sequence[int], r: int, s: int) -> Partition:
    """Read the D/L word with L's at positions ``J`` as a partition in P(r, s).

    Each D contributes a part equal to the number of L's that follow it.
    """
    J = tuple(J)
    if len(J) != s:
        raise ValueError(f"index set {J!r} must have exactly {s} elements")
    if any(J[i] >= J[i + 1] for i in range(len(J) - 1)):
        raise ValueError(f"index set {J!r} must be strictly increasing")
    if J and (J[0] < 1 or J[-1] > r + s):
        raise ValueError(f"index set {J!r} not contained in 1..{r + s}")
    marks = set(J)
    parts = []
    ls_after = s
    for pos in range(1, r + s + 1):
        if pos in marks:
            ls_after -= 1
        else:
            parts.append(ls_after)
    return make_partition(parts)


def partition_to_index_set(lam: Partition, r: int, s: int) -> tuple[int, ...]:
    """Inverse of :func:`index_set_to_partition`."""
    _check_box(lam, r, s)
    word = []
    prev = s
    for i in range(1, r + 1):
        word.extend("L" * (prev - part(lam, i)))
        word.append("D")
        prev = part(lam, i)
    word.extend("L" * prev)
    return tuple(i + 1 for i, c in enumerate(word) if c == "L")


def index_set_weight(J: Sequence[int]) -> int:
    """q-weight 2 * sum(J) of the square-free monomial zeta_J."""
    return 2 * sum(J)
