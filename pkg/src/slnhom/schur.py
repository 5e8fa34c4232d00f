"""Schur-basis arithmetic in block-symmetric polynomial rings.

An element of Sym(n_1) (x) ... (x) Sym(n_b) is a finite integer combination of
tuples of partitions ``(lam_1, ..., lam_b)``, one per block, where ``lam_i``
has at most ``n_i`` parts.  Multiplication goes through Pieri rules and
Littlewood-Richardson coefficients; nothing is ever expanded into monomials.

Two independent LR engines are provided: the dual Jacobi-Trudi determinant
(expanding ``s_lam`` into products of ``e_k`` and applying ``pieri_e``) and a
direct count of LR tableaux.
"""
from __future__ import annotations

import re
from functools import lru_cache
from itertools import product as iproduct
from typing import Iterable, Mapping, Sequence

from .partitions import Partition, contains, make_partition, partitions_of, transpose

# an unbounded alphabet, for LR coefficients that must not depend on size
_UNBOUNDED = 10**6


# -- single-alphabet Pieri rules ----------------------------------------------

@lru_cache(maxsize=None)
def pieri_e_single(mu: Partition, k: int, bound: int = _UNBOUNDED) -> tuple[Partition, ...]:
    """All nu obtained from mu by adding a vertical k-strip, len(nu) <= bound."""
    if k < 0:
        return ()
    if k == 0:
        return (mu,)
    rows = len(mu) + k
    out = []

    def rec(i, left, acc):
        if i == rows:
            if left == 0:
                nu = make_partition(acc)
                if len(nu) <= bound:
                    out.append(nu)
            return
        cur = mu[i] if i < len(mu) else 0
        prev = acc[-1] if acc else None
        for add in (1, 0):
            if add > left:
                continue
            val = cur + add
            if prev is not None and val > prev:
                continue
            # remaining rows must be able to absorb `left - add` boxes
            if left - add > rows - i - 1:
                continue
            rec(i + 1, left - add, acc + [val])

    rec(0, k, [])
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def pieri_h_single(mu: Partition, k: int, bound: int = _UNBOUNDED) -> tuple[Partition, ...]:
    """All nu obtained from mu by adding a horizontal k-strip, len(nu) <= bound."""
    if k < 0:
        return ()
    if k == 0:
        return (mu,)
    rows = len(mu) + 1
    out = []

    def rec(i, left, acc):
        if i == rows:
            if left == 0:
                nu = make_partition(acc)
                if len(nu) <= bound:
                    out.append(nu)
            return
        cur = mu[i] if i < len(mu) else 0
        # interlacing: mu_i <= nu_i <= mu_{i-1}
        top = cur + left if i == 0 else min(mu[i - 1], cur + left)
        for val in range(top, cur - 1, -1):
            rec(i + 1, left - (val - cur), acc + [val])

    rec(0, k, [])
    return tuple(sorted(out))


# -- Littlewood-Richardson coefficients ----------------------------------------

@lru_cache(maxsize=None)
def _dual_jacobi_trudi(lam: Partition) -> tuple[tuple[int, tuple[int, ...]], ...]:
    """Expand s_lam = det(e_{lam'_i - i + j}) as signed products of e_k.

    Returns ``((sign, (k_1, ..., k_m)), ...)`` with zero factors e_0 dropped.
    """
    conj = transpose(lam)
    m = len(conj)
    terms: dict[tuple[int, ...], int] = {}

    def rec(i, used, sign, factors):
        if i == m:
            key = tuple(sorted(f for f in factors if f > 0))
            terms[key] = terms.get(key, 0) + sign
            return
        for j in range(m):
            if used >> j & 1:
                continue
            idx = conj[i] - i + j
            if idx < 0:
                continue
            # sign of the permutation via inversions counted incrementally
            inv = bin(used >> (j + 1)).count("1")
            rec(i + 1, used | (1 << j), sign * (-1) ** inv, factors + [idx])

    rec(0, 0, 1, [])
    return tuple((c, k) for k, c in sorted(terms.items()) if c)


@lru_cache(maxsize=None)
def schur_product_single(lam: Partition, mu: Partition, bound: int = _UNBOUNDED) -> tuple[tuple[Partition, int], ...]:
    """s_lam * s_mu in an alphabet with ``bound`` letters, via dual Jacobi-Trudi."""
    if not lam:
        return ((mu, 1),) if len(mu) <= bound else ()
    if not mu:
        return ((lam, 1),) if len(lam) <= bound else ()
    if len(lam) > bound or len(mu) > bound:
        return ()
    acc: dict[Partition, int] = {}
    for sign, ks in _dual_jacobi_trudi(lam):
        cur = {mu: 1}
        for k in ks:
            nxt: dict[Partition, int] = {}
            for p, c in cur.items():
                for nu in pieri_e_single(p, k, bound):
                    nxt[nu] = nxt.get(nu, 0) + c
            cur = nxt
        for nu, c in cur.items():
            acc[nu] = acc.get(nu, 0) + sign * c
    return tuple(sorted((nu, c) for nu, c in acc.items() if c))


def lr_coefficient(lam: Partition, mu: Partition, nu: Partition) -> int:
    """c^nu_{lam, mu} through the dual Jacobi-Trudi / Pieri engine."""
    lam, mu, nu = tuple(lam), tuple(mu), tuple(nu)
    if sum(nu) != sum(lam) + sum(mu):
        return 0
    if not (contains(nu, lam) and contains(nu, mu)):
        return 0
    return dict(schur_product_single(lam, mu)).get(nu, 0)


@lru_cache(maxsize=None)
def lr_coefficient_tableaux(lam: Partition, mu: Partition, nu: Partition) -> int:
    """c^nu_{lam, mu} by counting LR tableaux of shape nu/lam and content mu.

    Rows weakly increase, columns strictly increase, and the reverse reading
    word (right to left, top to bottom) is a lattice word.
    """
    lam, mu, nu = tuple(lam), tuple(mu), tuple(nu)
    if sum(nu) != sum(lam) + sum(mu) or not contains(nu, lam):
        return 0
    nrows = len(nu)
    letters = len(mu)
    count = 0

    def rec(row, above, counts):
        nonlocal count
        if row == nrows:
            if list(counts) == list(mu):
                count += 1
            return
        start = lam[row] if row < len(lam) else 0
        stop = nu[row]
        width = stop - start
        # enumerate weakly increasing fillings of this row
        for filling in _weak_rows(width, letters):
            ok = True
            for off, val in enumerate(filling):
                col = start + off
                if row > 0 and col < len(above) and above[col] is not None and val <= above[col]:
                    ok = False
                    break
            if not ok:
                continue
            new_counts = list(counts)
            for val in reversed(filling):
                new_counts[val] += 1
                if new_counts[val] > mu[val] or (val > 0 and new_counts[val] > new_counts[val - 1]):
                    ok = False
                    break
            if not ok:
                continue
            row_vals = [None] * stop
            for off, val in enumerate(filling):
                row_vals[start + off] = val
            rec(row + 1, row_vals, tuple(new_counts))

    rec(0, [], tuple([0] * letters))
    return count


@lru_cache(maxsize=None)
def _weak_rows(width: int, letters: int) -> tuple[tuple[int, ...], ...]:
    if width == 0:
        return ((),)
    if letters == 0:
        return ()
    out = []

    def rec(pos, lo, acc):
        if pos == width:
            out.append(tuple(acc))
            return
        for v in range(lo, letters):
            rec(pos + 1, v, acc + [v])

    rec(0, 0, [])
    return tuple(out)


# -- block-symmetric elements ---------------------------------------------------

Key = tuple  # tuple of partitions, one per block


class SchurElement:
    """Integer combination of Schur tuples over a fixed block shape.

    ``shape`` lists the alphabet sizes; a term whose i-th partition has more
    than ``shape[i]`` parts is zero and never stored.
    """

    __slots__ = ("shape", "terms")

    def __init__(self, shape: Sequence[int], terms: Mapping[Key, int] | None = None):
        self.shape = tuple(int(n) for n in shape)
        if any(n < 0 for n in self.shape):
            raise ValueError(f"negative block size in {shape!r}")
        clean = {}
        for key, c in (terms or {}).items():
            if not c:
                continue
            key = tuple(tuple(p) for p in key)
            if len(key) != len(self.shape):
                raise ValueError(f"term {key!r} does not match shape {self.shape}")
            if any(len(p) > n for p, n in zip(key, self.shape)):
                continue
            clean[key] = clean.get(key, 0) + c
        self.terms = {k: c for k, c in clean.items() if c}

    @classmethod
    def _trusted(cls, shape: tuple, terms: dict) -> "SchurElement":
        # internal results whose keys are already valid for ``shape``
        v = object.__new__(cls)
        v.shape = shape
        v.terms = {k: c for k, c in terms.items() if c}
        return v

    # constructors
    @classmethod
    def zero(cls, shape):
        return cls(shape)

    @classmethod
    def unit(cls, shape):
        shape = tuple(shape)
        return cls(shape, {((),) * len(shape): 1})

    @classmethod
    def schur(cls, shape, block: int, lam: Sequence[int]):
        shape = tuple(shape)
        _check_block(shape, block)
        key = [()] * len(shape)
        key[block] = make_partition(lam)
        return cls(shape, {tuple(key): 1})

    @classmethod
    def elementary(cls, shape, block: int, k: int):
        if k < 0:
            return cls(shape)
        return cls.schur(shape, block, (1,) * k)

    @classmethod
    def complete(cls, shape, block: int, k: int):
        if k < 0:
            return cls(shape)
        return cls.schur(shape, block, (k,) if k else ())

    # arithmetic
    def _same(self, other: "SchurElement"):
        if not isinstance(other, SchurElement):
            return NotImplemented
        if other.shape != self.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return other

    def __add__(self, other):
        other = self._same(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return SchurElement(self.shape, out)

    def __neg__(self):
        return SchurElement(self.shape, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int) -> "SchurElement":
        return SchurElement(self.shape, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return schur_multiply(self, other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SchurElement):
            return NotImplemented
        return self.shape == other.shape and self.terms == other.terms

    def __hash__(self):
        return hash((self.shape, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"SchurElement({self.shape}, {format_element(self)!r})"

    def __str__(self):
        return format_element(self)

    # grading
    def degrees(self) -> set[int]:
        """Set of box counts (half the cohomological degree) over all terms."""
        return {sum(sum(p) for p in key) for key in self.terms}

    def degree(self) -> int:
        """Box count of a homogeneous element; raises if inhomogeneous."""
        degs = self.degrees()
        if len(degs) > 1:
            raise ValueError(f"inhomogeneous element {self}")
        return degs.pop() if degs else 0

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: term_sort_key(kv[0]))


def term_sort_key(key: Key):
    """Total order on partition tuples: total weight, then lexicographic."""
    return (sum(sum(p) for p in key), key)


def _check_block(shape, block):
    if not 0 <= block < len(shape):
        raise IndexError(f"block {block} out of range for shape {shape}")


def _replace(key: Key, block: int, lam: Partition) -> Key:
    return key[:block] + (lam,) + key[block + 1:]


def pieri_h(k: int, block: int, v: SchurElement) -> SchurElement:
    """Multiply by h_k of one block (horizontal strips)."""
    _check_block(v.shape, block)
    if k < 0:
        raise ValueError("k must be nonnegative")
    bound = v.shape[block]
    out: dict[Key, int] = {}
    for key, c in v.terms.items():
        for nu in pieri_h_single(key[block], k, bound):
            nk = _replace(key, block, nu)
            out[nk] = out.get(nk, 0) + c
    return SchurElement(v.shape, out)


def pieri_e(k: int, block: int, v: SchurElement) -> SchurElement:
    """Multiply by e_k of one block (vertical strips); e_k = 0 past the block size."""
    _check_block(v.shape, block)
    if k < 0:
        raise ValueError("k must be nonnegative")
    bound = v.shape[block]
    out: dict[Key, int] = {}
    for key, c in v.terms.items():
        for nu in pieri_e_single(key[block], k, bound):
            nk = _replace(key, block, nu)
            out[nk] = out.get(nk, 0) + c
    return SchurElement(v.shape, out)


@lru_cache(maxsize=200_000)
def _multiply_keys(a: Key, b: Key, shape: tuple[int, ...]) -> tuple[tuple[Key, int], ...]:
    per_block = [schur_product_single(x, y, n) for x, y, n in zip(a, b, shape)]
    if any(not blk for blk in per_block):
        return ()
    out = []
    for combo in iproduct(*per_block):
        coef = 1
        for _, c in combo:
            coef *= c
        out.append((tuple(nu for nu, _ in combo), coef))
    return tuple(out)


def schur_multiply(u: SchurElement, v: SchurElement) -> SchurElement:
    """Blockwise product through Littlewood-Richardson coefficients."""
    if u.shape != v.shape:
        raise ValueError(f"shape mismatch {u.shape} vs {v.shape}")
    out: dict[Key, int] = {}
    for ka, ca in u.terms.items():
        for kb, cb in v.terms.items():
            for key, c in _multiply_keys(ka, kb, u.shape):
                out[key] = out.get(key, 0) + ca * cb * c
    return SchurElement._trusted(u.shape, out)


def compositions(m: int, caps: Sequence[int]) -> Iterable[tuple[int, ...]]:
    """Compositions of m into len(caps) parts with part i at most caps[i]."""
    if not caps:
        if m == 0:
            yield ()
        return
    for first in range(min(m, caps[0]), -1, -1):
        if m - first > sum(caps[1:]):
            break
        for rest in compositions(m - first, caps[1:]):
            yield (first,) + rest


def split_full_elementary(m: int, shape: Sequence[int], blocks: Sequence[int] | None = None,
                          N: int | None = None) -> SchurElement:
    """Image of e_m of the union alphabet: sum over splittings of single columns.

    ``blocks`` restricts the union to a subset of blocks (default: all).  If
    ``N`` is given it must equal the total alphabet size.
    """
    shape = tuple(shape)
    if N is not None and sum(shape) != N:
        raise ValueError(f"block sizes {shape} do not sum to N={N}")
    if blocks is None:
        blocks = range(len(shape))
    blocks = list(blocks)
    if m < 0:
        return SchurElement(shape)
    caps = [shape[b] for b in blocks]
    terms = {}
    for comp in compositions(m, caps):
        key = [()] * len(shape)
        for b, i in zip(blocks, comp):
            key[b] = (1,) * i
        terms[tuple(key)] = 1
    return SchurElement(shape, terms)


def split_schur(nu: Sequence[int], size_a: int, size_b: int) -> SchurElement:
    """s_nu of a union alphabet A u B expanded over the two-block shape (|A|, |B|)."""
    nu = make_partition(nu)
    shape = (size_a, size_b)
    terms = {}
    n = sum(nu)
    for w in range(n + 1):
        for lam in partitions_of(w):
            if not contains(nu, lam) or len(lam) > size_a:
                continue
            for mu in partitions_of(n - w):
                if len(mu) > size_b or not contains(nu, mu):
                    continue
                c = lr_coefficient(lam, mu, nu)
                if c:
                    terms[(lam, mu)] = c
    return SchurElement(shape, terms)


def embed(v: SchurElement, shape: Sequence[int], blocks: Sequence[int]) -> SchurElement:
    """Place the blocks of ``v`` at positions ``blocks`` of a larger shape."""
    shape = tuple(shape)
    if len(blocks) != len(v.shape):
        raise ValueError("one target block per source block required")
    for src, dst in zip(v.shape, blocks):
        if shape[dst] != src:
            raise ValueError(f"block size mismatch: {src} into {shape[dst]}")
    out = {}
    for key, c in v.terms.items():
        nk = [()] * len(shape)
        for lam, dst in zip(key, blocks):
            nk[dst] = lam
        out[tuple(nk)] = c
    return SchurElement(shape, out)


def merge_blocks(v: SchurElement, i: int, j: int) -> SchurElement:
    """Restrict to the diagonal where blocks i and j carry the same alphabet.

    Requires ``shape[i] == shape[j]``; the result drops block j and multiplies
    its Schur factor into block i.
    """
    if v.shape[i] != v.shape[j] or i == j:
        raise ValueError("can only merge two distinct blocks of equal size")
    lo, hi = sorted((i, j))
    new_shape = v.shape[:hi] + v.shape[hi + 1:]
    n = v.shape[i]
    out: dict[Key, int] = {}
    for key, c in v.terms.items():
        for nu, cc in schur_product_single(key[lo], key[hi], n):
            nk = key[:lo] + (nu,) + key[lo + 1:hi] + key[hi + 1:]
            out[nk] = out.get(nk, 0) + c * cc
    return SchurElement(new_shape, out)


# -- text serialization ------------------------------------------------------------

def _fmt_key(key: Key) -> str:
    return "s[" + "|".join(",".join(str(p) for p in lam) for lam in key) + "]"


def format_element(v: SchurElement) -> str:
    """Render as ``c*s[lam1|lam2|...]`` summands in the fixed term order."""
    if not v.terms:
        return "0"
    parts = []
    for key, c in v.sorted_terms():
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = _fmt_key(key) if mag == 1 else f"{mag}*{_fmt_key(key)}"
        parts.append((sign, body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


_TERM = re.compile(r"([+-]?)\s*(?:(\d+)\s*\*\s*)?s\[([^\]]*)\]")


def parse_element(text: str, shape: Sequence[int]) -> SchurElement:
    """Inverse of :func:`format_element`."""
    text = text.strip()
    if text == "0":
        return SchurElement(shape)
    terms: dict[Key, int] = {}
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse Schur element near {text[pos:]!r}")
        sign, coef, body = m.groups()
        c = int(coef) if coef else 1
        if sign == "-":
            c = -c
        key = tuple(
            make_partition([int(x) for x in blk.split(",") if x.strip()]) for blk in body.split("|")
        )
        terms[key] = terms.get(key, 0) + c
        pos = m.end()
        while pos < len(text) and text[pos] == " ":
            pos += 1
    return SchurElement(shape, terms)
