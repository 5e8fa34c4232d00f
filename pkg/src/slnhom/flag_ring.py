"""Degreewise integer presentations of H*(BH) modulo an ideal.

The ambient ring is Sym(n_1) (x) ... (x) Sym(n_b) in the Schur basis.  For a
homogeneous space G/H with H a product of unitary blocks, the ideal is
generated by the elementary classes e_m of each factor of G (the union of its
blocks); other generator lists are allowed too, which is what the Koszul and
regularity checks use.

Degrees here count boxes; the cohomological degree is twice that.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Sequence

from .homology import IntMatrix, hermite_normal_form, inverse_unimodular, smith_normal_form
from .laurent import LaurentPoly
from .partitions import partitions_of
from .schur import Key, SchurElement, compositions, schur_multiply, split_full_elementary


class TorsionError(ArithmeticError):
    """Raised when a quotient degree turns out not to be free."""


@dataclass(frozen=True)
class SubgroupBlocks:
    """Blocks of H and how they group into the factors of the ambient group."""

    blocks: tuple
    grouping: tuple = None  # tuple of tuples of block indices

    def __post_init__(self):
        blocks = tuple(int(b) for b in self.blocks)
        if any(b < 0 for b in blocks):
            raise ValueError(f"negative block in {blocks}")
        grouping = self.grouping
        if grouping is None:
            grouping = (tuple(range(len(blocks))),)
        grouping = tuple(tuple(g) for g in grouping)
        flat = sorted(i for g in grouping for i in g)
        if flat != list(range(len(blocks))):
            raise ValueError(f"grouping {grouping} must partition the blocks")
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "grouping", grouping)

    @property
    def N(self) -> int:
        return sum(self.blocks)

    def factor_sizes(self) -> tuple[int, ...]:
        return tuple(sum(self.blocks[i] for i in g) for g in self.grouping)

    def dimension(self) -> int:
        """Real dimension of G/H."""
        return sum(s * s for s in self.factor_sizes()) - sum(b * b for b in self.blocks)

    def generators(self) -> list[SchurElement]:
        """e_m of every factor, 1 <= m <= factor size."""
        gens = []
        for g in self.grouping:
            size = sum(self.blocks[i] for i in g)
            for m in range(1, size + 1):
                gens.append(split_full_elementary(m, self.blocks, blocks=g))
        return gens


@lru_cache(maxsize=None)
def ambient_basis(shape: tuple, d: int) -> tuple:
    """All Schur tuples of total weight d over the block shape."""
    out = []
    for comp in compositions(d, [d] * len(shape)):
        per = [tuple(partitions_of(w, n)) for w, n in zip(comp, shape)]
        if any(not p for p in per):
            continue
        stack = [()]
        for choices in per:
            stack = [s + (lam,) for s in stack for lam in choices]
        out.extend(stack)
    out.sort(key=column_key)
    return tuple(out)


def column_key(key: Key):
    """Pivot preference: weight in later blocks first, then larger partitions.

    With this order the Borel ideal has unit pivots on every case tried and
    the surviving columns are the standard boxed tuples.
    """
    rev = key[::-1]
    return tuple(-sum(lam) for lam in rev) + tuple(tuple(-p for p in lam) + (1,) for lam in rev)


def _mul(c: SchurElement, vec: Mapping[Key, int]) -> dict[Key, int]:
    return schur_multiply(c, SchurElement._trusted(c.shape, dict(vec))).terms


@dataclass
class QuotientDegree:
    """One degree of the quotient: a basis and a reduction map.

    The ideal is held as unit-pivot rows (each pivot column eliminated from
    every other row) plus, when needed, a small unimodular change of
    coordinates ``transform = (V, k)`` on the remaining free columns.
    """

    degree: int
    basis: list  # ambient representatives (dict key -> coeff)
    pivots: dict = field(default_factory=dict)
    free: list = field(default_factory=list)  # non-pivot columns, in order
    transform: object = None

    @property
    def rank(self) -> int:
        return len(self.basis)

    def reduce(self, vec: Mapping[Key, int]) -> dict[int, int]:
        """Quotient coordinates of an ambient vector."""
        v = _reduce_by_pivots(vec, self.pivots)
        index = self._index
        w = {}
        for k, c in v.items():
            if k not in index:
                raise KeyError(f"{k} is not an ambient basis element in degree {self.degree}")
            w[index[k]] = c
        if self.transform is None:
            return w
        V, k0 = self.transform
        out = {}
        for j in range(k0, len(V)):
            s = sum(c * V[i][j] for i, c in w.items())
            if s:
                out[j - k0] = s
        return out

    @property
    def _index(self):
        idx = getattr(self, "_idx_cache", None)
        if idx is None:
            idx = {key: n for n, key in enumerate(self.free)}
            self._idx_cache = idx
        return idx


def _reduce_by_pivots(vec, pivots) -> dict:
    v = {k: c for k, c in vec.items() if c}
    for p in [k for k in v if k in pivots]:
        c = v.pop(p)
        for k, x in pivots[p].items():
            if k != p:
                nv = v.get(k, 0) - c * x
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
    return v


class QuotientRingPresentation:
    """Ambient ring modulo a homogeneous ideal, degree by degree.

    ``shape`` is the block shape, ``generators`` homogeneous ideal generators
    of positive degree, ``max_degree`` the last degree kept (boxes).  In each
    degree the ideal is spanned by g * s for every generator g and ambient
    basis element s of the complementary degree.
    """

    def __init__(self, shape: Sequence[int], generators: Sequence[SchurElement], max_degree: int,
                 check_free: bool = True, name: str = ""):
        self.shape = tuple(shape)
        self.generators = list(generators)
        self.max_degree = int(max_degree)
        self.name = name
        self.gen_degrees = []
        for g in self.generators:
            if g.shape != self.shape:
                raise ValueError("generator shape mismatch")
            if not g:
                raise ValueError("zero generator")
            deg = g.degree()
            if deg <= 0:
                raise ValueError("generators must have positive degree")
            self.gen_degrees.append(deg)
        self.degrees: dict[int, QuotientDegree] = {}
        for d in range(self.max_degree + 1):
            self.degrees[d] = self._build_degree(d, check_free)

    def _build_degree(self, d: int, check_free: bool) -> QuotientDegree:
        cols = ambient_basis(self.shape, d)
        rows = []
        for g, gd in zip(self.generators, self.gen_degrees):
            if gd > d:
                continue
            for key in ambient_basis(self.shape, d - gd):
                prod = _mul(g, {key: 1})
                if prod:
                    rows.append(prod)
        # rows whose leading column comes last go first: almost no fill-in
        pos = {k: n for n, k in enumerate(cols)}
        rows.sort(key=lambda r: -min(pos[k] for k in r))
        pivots, stuck = _unit_echelon(rows, cols)
        free = [k for k in cols if k not in pivots]
        if not stuck:
            return QuotientDegree(d, [{k: 1} for k in free], pivots=pivots, free=free)
        # leftover rows live on the free columns only, so this SNF is small
        stuck = hermite_normal_form(stuck, order=free)
        index = {k: n for n, k in enumerate(free)}
        dense = [[0] * len(free) for _ in stuck]
        for i, r in enumerate(stuck):
            for k, c in r.items():
                dense[i][index[k]] = c
        _, D, V = smith_normal_form(IntMatrix.from_dense(dense, len(free)))
        k0 = 0
        while k0 < min(D.shape) and D[k0, k0]:
            if D[k0, k0] != 1 and check_free:
                raise TorsionError(f"quotient is not free in degree {d}: invariant {D[k0, k0]}")
            k0 += 1
        Vinv = inverse_unimodular(V)
        basis = [{free[j]: Vinv[i][j] for j in range(len(free)) if Vinv[i][j]} for i in range(k0, len(free))]
        return QuotientDegree(d, basis, pivots=pivots, free=free, transform=(V.tolist(), k0))

    # queries

    def rank(self, d: int) -> int:
        qd = self.degrees.get(d)
        return qd.rank if qd else 0

    def ranks(self) -> dict[int, int]:
        return {d: q.rank for d, q in self.degrees.items() if q.rank}

    def poincare(self) -> LaurentPoly:
        """Poincare polynomial in the cohomological grading (q^2 per box)."""
        return LaurentPoly({2 * d: r for d, r in self.ranks().items()})

    def total_rank(self) -> int:
        return sum(self.ranks().values())

    def top_degree(self) -> int:
        r = self.ranks()
        return max(r) if r else 0

    def is_standard(self) -> bool:
        """True when every degree's basis is a set of ambient basis elements."""
        return all(q.transform is None for q in self.degrees.values())

    def reduce(self, vec: Mapping[Key, int] | SchurElement, d: int | None = None) -> dict[int, int]:
        if isinstance(vec, SchurElement):
            vec = vec.terms
        if d is None:
            degs = {sum(sum(p) for p in k) for k in vec}
            if len(degs) > 1:
                raise ValueError("inhomogeneous vector")
            d = degs.pop() if degs else 0
        if d > self.max_degree:
            return {}
        return self.degrees[d].reduce(vec)

    def basis(self, d: int) -> list:
        qd = self.degrees.get(d)
        return list(qd.basis) if qd else []

    def element(self, d: int, coords: Mapping[int, int]) -> dict[Key, int]:
        """Ambient representative of a quotient vector."""
        out: dict[Key, int] = {}
        basis = self.degrees[d].basis
        for i, c in coords.items():
            for k, x in basis[i].items():
                out[k] = out.get(k, 0) + c * x
        return {k: v for k, v in out.items() if v}


def _unit_echelon(rows, order) -> tuple[dict, list]:
    """Fully reduced echelon form on unit pivots, plus the rows left without one.

    Pivot rows never contain another pivot column, so reducing a vector is a
    single pass and rows stay as short as the quotient is small.  Each row
    pivots on its earliest unit entry (any unit keeps the column complement
    unimodular); rows without a unit are retried until nothing changes.
    """
    pos = {key: n for n, key in enumerate(order)}
    pivots: dict = {}
    where: dict = {}  # non-pivot column -> pivots whose row uses it

    def insert(v, p):
        if v[p] == -1:
            v = {k: -x for k, x in v.items()}
        for q in list(where.get(p, ())):
            row = pivots[q]
            f = row.pop(p)
            for k, x in v.items():
                if k == p:
                    continue
                nv = row.get(k, 0) - f * x
                if nv:
                    if k not in row:
                        where.setdefault(k, set()).add(q)
                    row[k] = nv
                elif k in row:
                    del row[k]
                    where[k].discard(q)
        where.pop(p, None)
        pivots[p] = v
        for k in v:
            if k != p:
                where.setdefault(k, set()).add(p)

    pending = list(rows)
    while True:
        stuck = []
        progress = False
        for r in pending:
            v = _reduce_by_pivots(r, pivots)
            if not v:
                continue
            units = [k for k, x in v.items() if x in (1, -1)]
            if not units:
                stuck.append(v)
                continue
            insert(v, min(units, key=pos.__getitem__))
            progress = True
        if not stuck or not progress:
            return pivots, [w for w in (_reduce_by_pivots(v, pivots) for v in stuck) if w]
        pending = stuck


def build_quotient(H: SubgroupBlocks) -> QuotientRingPresentation:
    """H*(G/H) as H*(BH) modulo the positive-degree classes of H*(BG)."""
    top = H.dimension() // 2
    return QuotientRingPresentation(H.blocks, H.generators(), top, name=f"G/H{H.blocks}")


def build_ambient(shape: Sequence[int], max_degree: int) -> QuotientRingPresentation:
    """The ambient ring H*(BH) itself, truncated at ``max_degree`` boxes."""
    return QuotientRingPresentation(shape, [], max_degree, name=f"BH{tuple(shape)}")


# -- operators ------------------------------------------------------------------

def mult_operator(P: QuotientRingPresentation, c: SchurElement) -> dict[int, IntMatrix]:
    """Per source degree d: matrix of multiplication by c from degree d to d + deg c."""
    if c.shape != P.shape:
        raise ValueError("element shape does not match the ring")
    if not c:
        return {d: IntMatrix.zeros(P.rank(d), P.rank(d)) for d in P.degrees}
    deg = c.degree()
    out = {}
    for d, qd in P.degrees.items():
        tgt = d + deg
        nt = P.rank(tgt) if tgt <= P.max_degree else 0
        rows: dict[int, dict[int, int]] = {}
        if nt:
            for j, vec in enumerate(qd.basis):
                for i, v in P.reduce(_mul(c, vec), tgt).items():
                    rows.setdefault(i, {})[j] = v
        out[d] = IntMatrix(nt, qd.rank, rows)
    return out


def chern_action(P: QuotientRingPresentation, i: int, blockpair: tuple[int, int]) -> dict[int, IntMatrix]:
    """Multiplication by sum_{p+q=i} e_p(first block) e_q(second block)."""
    a, b = blockpair
    if a == b:
        raise ValueError("the two blocks must be distinct")
    c = split_full_elementary(i, P.shape, blocks=sorted((a, b)))
    if i == 0:
        c = SchurElement.unit(P.shape)
    return mult_operator(P, c)


def difference_generator(shape: Sequence[int], i: int, first: int, second: int) -> SchurElement:
    """e_i(first block) - e_i(second block)."""
    return SchurElement.elementary(shape, first, i) - SchurElement.elementary(shape, second, i)


def regularity_check(shape: Sequence[int], generators: Sequence[SchurElement], max_degree: int) -> list[str]:
    """Check that each generator is a nonzerodivisor modulo the earlier ones.

    Works degreewise up to ``max_degree`` boxes; returns a list of failures
    (empty when the sequence is regular in that range).
    """
    failures = []
    from .homology import rank as matrix_rank
    for n, g in enumerate(generators):
        P = QuotientRingPresentation(shape, list(generators[:n]), max_degree)
        ops = mult_operator(P, g)
        for d, M in sorted(ops.items()):
            if d + g.degree() > max_degree:
                continue
            if matrix_rank(M) != M.ncols:
                failures.append(f"generator {n + 1} is a zero divisor in degree {d}")
    return failures


def truncated_hilbert(P: QuotientRingPresentation) -> list[int]:
    return [P.rank(d) for d in range(P.max_degree + 1)]
