"""Exact integer linear algebra and homology of bigraded chain complexes.

Everything here works over Python's arbitrary-precision integers.  Matrices
are stored sparsely (a dict of row dicts) because the chain complexes that
show up are large and mostly zero.
"""
from __future__ import annotations

import heapq
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

Bidegree = tuple  # (h, q)


class IntMatrix:
    """Sparse integer matrix with fixed dimensions."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Mapping[int, Mapping[int, int]] | None = None):
        self.nrows = int(nrows)
        self.ncols = int(ncols)
        self.rows: dict[int, dict[int, int]] = {}
        for i, row in (rows or {}).items():
            clean = {j: v for j, v in row.items() if v}
            if clean:
                if not 0 <= i < self.nrows or any(not 0 <= j < self.ncols for j in clean):
                    raise IndexError("entry outside matrix bounds")
                self.rows[i] = clean

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[int]], ncols: int | None = None) -> "IntMatrix":
        data = [list(r) for r in data]
        if ncols is None:
            ncols = len(data[0]) if data else 0
        return cls(len(data), ncols, {i: {j: v for j, v in enumerate(r) if v} for i, r in enumerate(data)})

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, {i: {i: 1} for i in range(n)})

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls(nrows, ncols)

    @classmethod
    def diagonal(cls, entries: Sequence[int], nrows: int | None = None, ncols: int | None = None) -> "IntMatrix":
        n = len(entries)
        return cls(nrows if nrows is not None else n, ncols if ncols is not None else n,
                   {i: {i: v} for i, v in enumerate(entries) if v})

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows.get(i, {}).get(j, 0)

    def tolist(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, row in self.rows.items():
            for j, v in row.items():
                out[i][j] = v
        return out

    def transpose(self) -> "IntMatrix":
        out: dict[int, dict[int, int]] = defaultdict(dict)
        for i, row in self.rows.items():
            for j, v in row.items():
                out[j][i] = v
        return IntMatrix(self.ncols, self.nrows, out)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        out: dict[int, dict[int, int]] = {}
        for i, row in self.rows.items():
            acc: dict[int, int] = {}
            for k, a in row.items():
                orow = other.rows.get(k)
                if not orow:
                    continue
                for j, b in orow.items():
                    acc[j] = acc.get(j, 0) + a * b
            acc = {j: v for j, v in acc.items() if v}
            if acc:
                out[i] = acc
        return IntMatrix(self.nrows, other.ncols, out)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        out = {i: dict(r) for i, r in self.rows.items()}
        for i, row in other.rows.items():
            tgt = out.setdefault(i, {})
            for j, v in row.items():
                tgt[j] = tgt.get(j, 0) + v
        return IntMatrix(self.nrows, self.ncols, out)

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(self.nrows, self.ncols, {i: {j: c * v for j, v in r.items()} for i, r in self.rows.items()})

    def is_zero(self) -> bool:
        return not self.rows

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def apply(self, vec: Mapping[int, int] | Sequence[int]) -> dict[int, int]:
        """Matrix times a (sparse) column vector."""
        if not isinstance(vec, Mapping):
            vec = {j: v for j, v in enumerate(vec) if v}
        out = {}
        for i, row in self.rows.items():
            s = sum(v * vec.get(j, 0) for j, v in row.items())
            if s:
                out[i] = s
        return out

    def column(self, j: int) -> dict[int, int]:
        return {i: r[j] for i, r in self.rows.items() if j in r}

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __repr__(self):
        return f"IntMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def _as_matrix(M) -> IntMatrix:
    if isinstance(M, IntMatrix):
        return M
    return IntMatrix.from_dense(M)


# -- Smith normal form ----------------------------------------------------------------

def smith_normal_form(M) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, D, V) with U unimodular, V unimodular and U M V = D.

    D is diagonal with nonnegative entries d_1 | d_2 | ...; pivots are chosen
    by minimal absolute value.
    """
    M = _as_matrix(M)
    m, n = M.shape
    A = M.tolist()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in A:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    def add_row(dst, src, c):  # row_dst += c * row_src
        if c:
            A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
            U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, c):  # col_dst += c * col_src
        if c:
            for row in A:
                row[dst] += c * row[src]
            for row in V:
                row[dst] += c * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            changed = False
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            # any remainder smaller than the pivot becomes the new pivot
            cand = None
            for i in range(t + 1, m):
                if A[i][t] and (cand is None or abs(A[i][t]) < cand[0]):
                    cand = (abs(A[i][t]), i, None)
            for j in range(t + 1, n):
                if A[t][j] and (cand is None or abs(A[t][j]) < cand[0]):
                    cand = (abs(A[t][j]), None, j)
            if cand is not None:
                _, i, j = cand
                if i is not None:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                changed = True
            if changed:
                continue
            # enforce divisibility of the remaining block by the pivot
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return IntMatrix.from_dense(U, m), IntMatrix.from_dense(A, n), IntMatrix.from_dense(V, n)


def _invariant_chain(diag: Iterable[int]) -> list[int]:
    """Turn any diagonal into a divisibility chain with the same cokernel."""
    d = sorted(abs(x) for x in diag if x)
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                if d[j] % d[i]:
                    g = gcd(d[i], d[j])
                    d[i], d[j] = g, d[i] * d[j] // g
                    changed = True
        d.sort()
    return d


def _torsion_chain(orders: Iterable[int]) -> list[int]:
    """Invariant factors of a finite abelian group given as a sum of cyclic groups."""
    return [x for x in _invariant_chain(orders) if x > 1]


def _dense_diagonal(A: list[list[int]]) -> list[int]:
    """Diagonal entries of a Smith-equivalent form, no transforms tracked."""
    A = [row[:] for row in A if any(row)]
    diag = []
    while A:
        ncols = len(A[0])
        best = None
        for i, row in enumerate(A):
            for j, v in enumerate(row):
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        while True:
            p = A[pi][pj]
            for i, row in enumerate(A):
                if i != pi and row[pj]:
                    f = row[pj] // p
                    if f:
                        prow = A[pi]
                        A[i] = [a - f * b for a, b in zip(row, prow)]
            for j in range(ncols):
                if j != pj and A[pi][j]:
                    f = A[pi][j] // p
                    if f:
                        for row in A:
                            if row[pj]:
                                row[j] -= f * row[pj]
            cand = None
            for i, row in enumerate(A):
                if i != pi and row[pj] and (cand is None or abs(row[pj]) < cand[0]):
                    cand = (abs(row[pj]), i, pj)
            for j in range(ncols):
                if j != pj and A[pi][j] and (cand is None or abs(A[pi][j]) < cand[0]):
                    cand = (abs(A[pi][j]), pi, j)
            if cand is None:
                break
            _, pi, pj = cand
        diag.append(abs(A[pi][pj]))
        A = [row[:pj] + row[pj + 1:] for i, row in enumerate(A) if i != pi]
        A = [row for row in A if any(row)]
    return diag


def elementary_divisors(M) -> list[int]:
    """Nonzero Smith invariants d_1 | d_2 | ... of an integer matrix.

    Unit pivots are eliminated sparsely first (fewest-fill heuristic); the
    remaining block, which has no unit entries, goes through a dense
    minimal-pivot reduction.  The length of the result is the rank.
    """
    M = _as_matrix(M)
    rows = {i: dict(r) for i, r in M.rows.items() if r}
    cols: dict[int, set[int]] = defaultdict(set)
    for i, r in rows.items():
        for j in r:
            cols[j].add(i)
    units = 0
    heap = [(len(r), i) for i, r in rows.items()]
    heapq.heapify(heap)
    stale: set[int] = set()
    while heap:
        length, i = heapq.heappop(heap)
        r = rows.get(i)
        if r is None or len(r) != length:
            continue
        best = None
        for j, v in r.items():
            if v == 1 or v == -1:
                cost = len(cols[j])
                if best is None or cost < best[0]:
                    best = (cost, j)
        if best is None:
            stale.add(i)
            continue
        pc = best[1]
        pv = r[pc]
        units += 1
        for k in list(cols[pc]):
            if k == i:
                continue
            rk = rows[k]
            f = rk[pc] * pv
            for j, v in r.items():
                nv = rk.get(j, 0) - f * v
                if nv:
                    if j not in rk:
                        cols[j].add(k)
                    rk[j] = nv
                elif j in rk:
                    del rk[j]
                    cols[j].discard(k)
            if rk:
                heapq.heappush(heap, (len(rk), k))
                stale.discard(k)
            else:
                del rows[k]
                stale.discard(k)
        for j in r:
            cols[j].discard(i)
        del rows[i]
    rest_rows = [i for i in rows if rows[i]]
    if not rest_rows:
        return [1] * units
    rest_cols = sorted({j for i in rest_rows for j in rows[i]})
    index = {j: n for n, j in enumerate(rest_cols)}
    dense = []
    for i in rest_rows:
        row = [0] * len(rest_cols)
        for j, v in rows[i].items():
            row[index[j]] = v
        dense.append(row)
    return [1] * units + _invariant_chain(_dense_diagonal(dense))


def rank(M) -> int:
    return len(elementary_divisors(M))


def inverse_unimodular(V: IntMatrix) -> list[list[int]]:
    """Exact inverse of a unimodular integer matrix, as nested lists."""
    n = V.nrows
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(V.tolist())]
    for c in range(n):
        p = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [x / piv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    out = []
    for row in A:
        vals = row[n:]
        if any(v.denominator != 1 for v in vals):
            raise ArithmeticError("matrix is not unimodular")
        out.append([int(v) for v in vals])
    return out


# -- Hermite normal form -----------------------------------------------------------------

def hermite_normal_form(vectors: Iterable[Mapping[int, int]], order: Sequence[int] | None = None) -> list[dict[int, int]]:
    """Row-style HNF of the lattice spanned by sparse integer vectors.

    ``order`` lists coordinates from most to least significant (default:
    ascending index); pivots are taken in that order.  Returns echelon rows
    with positive pivots and entries above each pivot reduced into
    ``[0, pivot)``.
    """
    vecs = [dict(v) for v in vectors]
    coords = sorted({j for v in vecs for j in v})
    if order is None:
        order = coords
    else:
        rank_of = {j: n for n, j in enumerate(order)}
        missing = [j for j in coords if j not in rank_of]
        if missing:
            raise ValueError(f"coordinates {missing} not covered by order")
    pos = {j: n for n, j in enumerate(order)}
    echelon: dict[int, dict[int, int]] = {}  # pivot coordinate -> row

    def lead(v):
        return min(v, key=pos.__getitem__) if v else None

    for v in vecs:
        v = {j: c for j, c in v.items() if c}
        while v:
            p = lead(v)
            row = echelon.get(p)
            if row is None:
                if v[p] < 0:
                    v = {j: -c for j, c in v.items()}
                echelon[p] = v
                break
            a, b = row[p], v[p]
            if b % a == 0:
                f = b // a
                v = _axpy(v, row, -f)
                continue
            # extended gcd step replaces the pivot row
            g, x, y = _xgcd(a, b)
            new_row = _axpy({j: x * c for j, c in row.items()}, v, y)
            v = _axpy({j: (b // g) * c for j, c in row.items()}, v, -(a // g))
            if new_row[p] < 0:
                new_row = {j: -c for j, c in new_row.items()}
            echelon[p] = new_row
    pivots = sorted(echelon, key=pos.__getitem__)
    # reduce entries above pivots
    for k, p in enumerate(pivots):
        prow = echelon[p]
        for q in pivots[:k]:
            qrow = echelon[q]
            c = qrow.get(p, 0)
            if c:
                f = c // prow[p]
                if f:
                    echelon[q] = _axpy(qrow, prow, -f)
    return [echelon[p] for p in pivots]


def _axpy(v: Mapping[int, int], w: Mapping[int, int], c: int) -> dict[int, int]:
    out = dict(v)
    if c:
        for j, x in w.items():
            nv = out.get(j, 0) + c * x
            if nv:
                out[j] = nv
            else:
                out.pop(j, None)
    return {j: x for j, x in out.items() if x}


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def solve_in_echelon(basis: Sequence[Mapping[int, int]], v: Mapping[int, int],
                     order: Sequence[int] | None = None) -> list[int]:
    """Coordinates of ``v`` in an echelon lattice basis; raises if v is outside."""
    if order is None:
        pos = None
    else:
        pos = {j: n for n, j in enumerate(order)}
    v = {j: c for j, c in v.items() if c}
    coeffs = [0] * len(basis)
    for k, row in enumerate(basis):
        p = min(row, key=pos.__getitem__) if pos else min(row)
        c = v.get(p, 0)
        if c:
            if c % row[p]:
                raise ValueError("vector is not in the lattice")
            f = c // row[p]
            coeffs[k] = f
            v = _axpy(v, row, -f)
    if v:
        raise ValueError("vector is not in the lattice")
    return coeffs


# -- bigraded groups and chain complexes ------------------------------------------------

@dataclass(frozen=True)
class Cell:
    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("negative rank")
        t = tuple(self.torsion)
        if any(d < 2 for d in t):
            raise ValueError("torsion orders must be at least 2")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"torsion {t} is not a divisibility chain")

    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion


class BigradedAbelianGroup:
    """Finitely generated abelian groups indexed by (h, q).

    Each cell stores the free rank and the torsion invariant factors as a
    divisibility chain; empty cells are not stored.
    """

    def __init__(self, cells: Mapping[Bidegree, Cell | tuple] | None = None):
        self.cells: dict[Bidegree, Cell] = {}
        for key, cell in (cells or {}).items():
            if not isinstance(cell, Cell):
                rank, torsion = cell
                cell = Cell(rank, tuple(_torsion_chain(torsion)))
            if not cell.is_zero():
                self.cells[tuple(key)] = cell

    def __getitem__(self, key) -> Cell:
        return self.cells.get(tuple(key), Cell(0))

    def __iter__(self):
        return iter(sorted(self.cells))

    def items(self):
        return sorted(self.cells.items())

    def __eq__(self, other):
        if not isinstance(other, BigradedAbelianGroup):
            return NotImplemented
        return self.cells == other.cells

    def __repr__(self):
        inner = ", ".join(f"{k}: {render_cell(v)}" for k, v in self.items())
        return f"BigradedAbelianGroup({{{inner}}})"

    def direct_sum(self, other: "BigradedAbelianGroup") -> "BigradedAbelianGroup":
        out = {}
        for src in (self, other):
            for key, cell in src.cells.items():
                r, t = out.get(key, (0, ()))
                out[key] = (r + cell.rank, t + cell.torsion)
        return BigradedAbelianGroup(out)

    def shift(self, dh: int, dq: int) -> "BigradedAbelianGroup":
        return BigradedAbelianGroup({(h + dh, q + dq): c for (h, q), c in self.cells.items()})

    def total_rank(self) -> int:
        return sum(c.rank for c in self.cells.values())

    def torsion_multiset(self) -> list[int]:
        """All torsion invariant factors, sorted (cell structure forgotten)."""
        return sorted(d for c in self.cells.values() for d in c.torsion)

    def rank_series(self) -> dict[Bidegree, int]:
        return {k: c.rank for k, c in self.cells.items() if c.rank}

    def collapse(self) -> dict[int, Cell]:
        """Collapse (h, q) to the total degree h + q."""
        acc: dict[int, tuple[int, tuple]] = {}
        for (h, q), c in self.cells.items():
            r, t = acc.get(h + q, (0, ()))
            acc[h + q] = (r + c.rank, t + c.torsion)
        return {d: Cell(r, tuple(_torsion_chain(t))) for d, (r, t) in sorted(acc.items())}

    def h_support(self) -> list[int]:
        return sorted({h for h, _ in self.cells})

    def q_support(self) -> list[int]:
        return sorted({q for _, q in self.cells})


_SUB = str.maketrans("0123456789-", "₀₁₂₃₄₅₆₇₈₉₋")
_SUP = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")


def render_cell(cell: Cell, unicode: bool = True, divisor_chain: bool = False) -> str:
    """Render like the published tables: ``Z^2 + Z_2 + (Z_6)^2`` grouped by order.

    With ``divisor_chain`` the torsion is listed as the raw invariant factor
    chain instead of grouping repeated orders.
    """
    if cell.is_zero():
        return "0"
    plus = "⊕" if unicode else "+"
    pieces = []
    if cell.rank:
        if cell.rank == 1:
            pieces.append("Z")
        else:
            pieces.append("Z" + (str(cell.rank).translate(_SUP) if unicode else f"^{cell.rank}"))
    if divisor_chain:
        for d in cell.torsion:
            pieces.append("Z" + (str(d).translate(_SUB) if unicode else f"_{d}"))
    else:
        counts: dict[int, int] = {}
        for d in cell.torsion:
            counts[d] = counts.get(d, 0) + 1
        for d in sorted(counts):
            base = "Z" + (str(d).translate(_SUB) if unicode else f"_{d}")
            m = counts[d]
            if m == 1:
                pieces.append(base)
            else:
                pieces.append(f"({base})" + (str(m).translate(_SUP) if unicode else f"^{m}"))
    return plus.join(pieces)


class ChainComplexError(ValueError):
    pass


@dataclass
class IntegerChainComplex:
    """Bigraded complex of free abelian groups with a differential of bidegree (1, 0).

    ``ranks[(h, q)]`` is the rank of the chain group; ``differentials[(h, q)]``
    maps C_{h,q} to C_{h+1,q} as a (rank target x rank source) matrix.
    Missing differentials are zero.  d o d = 0 is verified on construction.
    """

    ranks: dict = field(default_factory=dict)
    differentials: dict = field(default_factory=dict)
    check: bool = True

    def __post_init__(self):
        self.ranks = {tuple(k): int(v) for k, v in self.ranks.items() if v}
        clean = {}
        for (h, q), M in self.differentials.items():
            M = _as_matrix(M)
            src, tgt = self.ranks.get((h, q), 0), self.ranks.get((h + 1, q), 0)
            if M.shape != (tgt, src):
                raise ChainComplexError(f"differential at {(h, q)} has shape {M.shape}, expected {(tgt, src)}")
            if not M.is_zero():
                clean[(h, q)] = M
        self.differentials = clean
        if self.check:
            self.verify()

    def d(self, h: int, q: int) -> IntMatrix:
        M = self.differentials.get((h, q))
        if M is None:
            return IntMatrix.zeros(self.ranks.get((h + 1, q), 0), self.ranks.get((h, q), 0))
        return M

    def verify(self) -> None:
        for (h, q), M in self.differentials.items():
            nxt = self.differentials.get((h + 1, q))
            if nxt is not None and not (nxt @ M).is_zero():
                raise ChainComplexError(f"d o d != 0 at {(h, q)}")

    def euler_ranks(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (h, q), r in self.ranks.items():
            out[q] = out.get(q, 0) + (-1) ** (h % 2) * r
        return {q: v for q, v in out.items() if v}

    def shift(self, dh: int, dq: int) -> "IntegerChainComplex":
        return IntegerChainComplex(
            {(h + dh, q + dq): r for (h, q), r in self.ranks.items()},
            {(h + dh, q + dq): M for (h, q), M in self.differentials.items()},
            check=False,
        )

    def direct_sum(self, other: "IntegerChainComplex") -> "IntegerChainComplex":
        """Block direct sum: at each bidegree ``self``'s basis comes first."""
        ranks = dict(self.ranks)
        for k, n in other.ranks.items():
            ranks[k] = ranks.get(k, 0) + n
        diffs = {}
        for key in set(self.differentials) | set(other.differentials):
            tgt = (key[0] + 1, key[1])
            rows: dict[int, dict[int, int]] = {}
            A = self.differentials.get(key)
            if A is not None:
                for i, row in A.rows.items():
                    rows[i] = dict(row)
            B = other.differentials.get(key)
            if B is not None:
                ro, co = self.ranks.get(tgt, 0), self.ranks.get(key, 0)
                for i, row in B.rows.items():
                    rows[ro + i] = {co + j: v for j, v in row.items()}
            diffs[key] = IntMatrix(ranks.get(tgt, 0), ranks.get(key, 0), rows)
        return IntegerChainComplex(ranks, diffs, check=False)


def homology(C: IntegerChainComplex) -> BigradedAbelianGroup:
    """ker(d_out) / im(d_in) at every bidegree, via Smith invariants."""
    divisors = {key: elementary_divisors(M) for key, M in C.differentials.items()}
    cells = {}
    for (h, q), n in C.ranks.items():
        out_rank = len(divisors.get((h, q), ()))
        d_in = divisors.get((h - 1, q), [])
        free = n - out_rank - len(d_in)
        tors = tuple(d for d in d_in if d > 1)
        if free < 0:
            raise ChainComplexError(f"negative homology rank at {(h, q)}")
        cells[(h, q)] = (free, tors)
    return BigradedAbelianGroup(cells)


def image_subcomplex(C: IntegerChainComplex, f: Mapping[Bidegree, IntMatrix], degree: tuple[int, int] = (0, 0),
                     order: str = "ascending") -> IntegerChainComplex:
    """Subcomplex im(f) for a chain map f of bidegree ``degree``.

    ``f[(h, q)]`` maps C_{h,q} to C_{h+dh, q+dq}.  Commutation with d is
    checked.  Image lattices get HNF bases (pivot order ascending or
    descending in the ambient coordinates) and the differential is rewritten
    in those bases.
    """
    dh, dq = degree
    f = {tuple(k): _as_matrix(M) for k, M in f.items()}
    for (h, q), M in f.items():
        src = C.ranks.get((h, q), 0)
        tgt = C.ranks.get((h + dh, q + dq), 0)
        if M.shape != (tgt, src):
            raise ChainComplexError(f"map at {(h, q)} has shape {M.shape}, expected {(tgt, src)}")
    for (h, q), n in C.ranks.items():
        left = C.d(h + dh, q + dq) @ f.get((h, q), IntMatrix.zeros(C.ranks.get((h + dh, q + dq), 0), n))
        nxt = f.get((h + 1, q), IntMatrix.zeros(C.ranks.get((h + 1 + dh, q + dq), 0), C.ranks.get((h + 1, q), 0)))
        right = nxt @ C.d(h, q)
        if (-1) ** (dh % 2) == 1:
            ok = left == right
        else:
            ok = left == -right
        if not ok:
            raise ChainComplexError(f"map does not commute with d at {(h, q)}")
    bases: dict[Bidegree, list[dict[int, int]]] = {}
    orders: dict[Bidegree, list[int]] = {}
    for (h, q), M in f.items():
        tgt_key = (h + dh, q + dq)
        n = C.ranks.get(tgt_key, 0)
        order_list = list(range(n)) if order == "ascending" else list(range(n - 1, -1, -1))
        cols = M.transpose().rows.values()
        basis = hermite_normal_form(cols, order=order_list)
        if basis:
            bases[tgt_key] = basis
            orders[tgt_key] = order_list
    ranks = {k: len(b) for k, b in bases.items()}
    diffs = {}
    for (h, q), basis in bases.items():
        tgt = bases.get((h + 1, q))
        D = C.d(h, q)
        if D.is_zero():
            continue
        if tgt is None:
            for b in basis:
                if D.apply(b):
                    raise ChainComplexError("image is not closed under d")
            continue
        rows: dict[int, dict[int, int]] = defaultdict(dict)
        for col, b in enumerate(basis):
            coords = solve_in_echelon(tgt, D.apply(b), orders[(h + 1, q)])
            for i, c in enumerate(coords):
                if c:
                    rows[i][col] = c
        diffs[(h, q)] = IntMatrix(len(tgt), len(basis), rows)
    return IntegerChainComplex(ranks, diffs)


# -- free parts of homology and induced maps ------------------------------------------

class FreeHomology:
    """Coordinates on H/torsion = ker(d_out) / saturation(im d_in) at one bidegree."""

    def __init__(self, C: IntegerChainComplex, key: Bidegree):
        h, q = key
        n = C.ranks.get(key, 0)
        self.n = n
        d_out = C.d(h, q)
        _, D, V = smith_normal_form(d_out)
        r = sum(1 for i in range(min(D.shape)) if D[i, i])
        self.Vinv = inverse_unimodular(V) if n else []
        Vd = V.tolist()
        k = n - r
        self.r = r
        # kernel coordinates of the incoming boundaries
        d_in = C.d(h - 1, q)
        cols = [d_in.column(j) for j in range(d_in.ncols)]
        Bz = [[0] * len(cols) for _ in range(k)]
        for j, col in enumerate(cols):
            y = self._v_coords(col)
            if any(y[:r]):
                raise ChainComplexError("boundary outside the kernel")
            for i in range(k):
                Bz[i][j] = y[r + i]
        U2, D2, _ = smith_normal_form(IntMatrix.from_dense(Bz, len(cols)) if k else IntMatrix(0, len(cols)))
        s = sum(1 for i in range(min(D2.shape)) if D2[i, i])
        self.s = s
        self.U2 = U2.tolist()
        U2inv = inverse_unimodular(U2) if k else []
        self.rank = k - s
        self.reps = []
        for i in range(s, k):
            z = [U2inv[row][i] for row in range(k)]
            x = {}
            for row in range(n):
                v = sum(Vd[row][r + t] * z[t] for t in range(k))
                if v:
                    x[row] = v
            self.reps.append(x)

    def _v_coords(self, x: Mapping[int, int]) -> list[int]:
        return [sum(self.Vinv[i][j] * c for j, c in x.items()) for i in range(self.n)]

    def coords(self, x: Mapping[int, int]) -> list[int]:
        """Free-part coordinates of a cycle."""
        y = self._v_coords(x)
        if any(y[:self.r]):
            raise ChainComplexError("not a cycle")
        z = y[self.r:]
        w = [sum(row[t] * z[t] for t in range(len(z))) for row in self.U2]
        return w[self.s:]


def induced_free_maps(C: IntegerChainComplex, f: Mapping[Bidegree, IntMatrix],
                      degree: tuple[int, int] = (0, 0)) -> dict[Bidegree, IntMatrix]:
    """Matrices of the map induced by a chain map on homology free parts.

    Keyed by source bidegree; only bidegrees with nonzero free part on both
    sides are reported.
    """
    dh, dq = degree
    cache: dict[Bidegree, FreeHomology] = {}

    def free(key):
        if key not in cache:
            cache[key] = FreeHomology(C, key)
        return cache[key]

    out = {}
    for key, M in sorted(f.items()):
        src = free(key)
        if not src.rank:
            continue
        tkey = (key[0] + dh, key[1] + dq)
        if tkey not in C.ranks:
            continue
        tgt = free(tkey)
        if not tgt.rank:
            continue
        rows: dict[int, dict[int, int]] = {}
        for j, x in enumerate(src.reps):
            for i, v in enumerate(tgt.coords(M.apply(x))):
                if v:
                    rows.setdefault(i, {})[j] = v
        out[key] = IntMatrix(tgt.rank, src.rank, rows)
    return out
