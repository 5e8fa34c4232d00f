"""Homological perturbation over a finite poset, with strong deformation retracts.

Conventions: differentials have bidegree (1, 0), homotopies (-1, 0), and a
strong deformation retract (pi, iota, h) of A onto B satisfies

    pi iota = Id,   iota pi - Id = d h + h d,   h iota = 0,  pi h = 0,  h h = 0.

For a complex split over a poset (components d_{q,p} vanish unless p <= q)
the retracts of the pieces glue along chains p = p_1 < ... < p_k = q.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Iterable, Mapping

from .homology import IntegerChainComplex, IntMatrix

D_DEG = (1, 0)
H_DEG = (-1, 0)


class PerturbationError(ValueError):
    pass


def _shift(key, deg):
    return (key[0] + deg[0], key[1] + deg[1])


class GradedMap:
    """A bigraded homomorphism between free bigraded groups, one block per source bidegree."""

    __slots__ = ("src", "tgt", "degree", "blocks")

    def __init__(self, src: Mapping, tgt: Mapping, degree=(0, 0), blocks: Mapping | None = None):
        self.src = {k: v for k, v in src.items() if v}
        self.tgt = {k: v for k, v in tgt.items() if v}
        self.degree = tuple(degree)
        self.blocks: dict = {}
        for key, M in (blocks or {}).items():
            if key not in self.src or M.is_zero():
                continue
            tk = _shift(key, self.degree)
            if M.shape != (self.tgt.get(tk, 0), self.src[key]):
                raise ValueError(f"block at {key} has shape {M.shape}")
            self.blocks[key] = M

    @classmethod
    def zero(cls, src, tgt, degree=(0, 0)):
        return cls(src, tgt, degree)

    @classmethod
    def identity(cls, ranks):
        return cls(ranks, ranks, (0, 0), {k: IntMatrix.identity(n) for k, n in ranks.items()})

    def block(self, key) -> IntMatrix:
        M = self.blocks.get(key)
        if M is None:
            return IntMatrix.zeros(self.tgt.get(_shift(key, self.degree), 0), self.src.get(key, 0))
        return M

    def __matmul__(self, other: "GradedMap") -> "GradedMap":
        # self after other
        deg = (self.degree[0] + other.degree[0], self.degree[1] + other.degree[1])
        out = {}
        for key, M in other.blocks.items():
            mid = _shift(key, other.degree)
            N = self.blocks.get(mid)
            if N is not None:
                out[key] = N @ M
        return GradedMap(other.src, self.tgt, deg, out)

    def __add__(self, other: "GradedMap") -> "GradedMap":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        out = dict(self.blocks)
        for key, M in other.blocks.items():
            out[key] = out[key] + M if key in out else M
        return GradedMap(self.src, self.tgt, self.degree, out)

    def __neg__(self):
        return GradedMap(self.src, self.tgt, self.degree, {k: -M for k, M in self.blocks.items()})

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self) -> bool:
        return not self.blocks

    def __eq__(self, other):
        if not isinstance(other, GradedMap):
            return NotImplemented
        return (self - other).is_zero() if self.degree == other.degree else False

    def __repr__(self):
        return f"GradedMap(degree={self.degree}, blocks={len(self.blocks)})"


@dataclass
class Complex:
    """A free bigraded complex given by ranks and a degree-(1,0) differential."""

    ranks: dict
    d: GradedMap

    def __post_init__(self):
        self.ranks = {k: v for k, v in self.ranks.items() if v}
        if self.d.degree != D_DEG:
            raise ValueError("differential must have degree (1, 0)")
        if not (self.d @ self.d).is_zero():
            raise PerturbationError("differential does not square to zero")

    def to_chain_complex(self) -> IntegerChainComplex:
        return IntegerChainComplex(self.ranks, dict(self.d.blocks))


@dataclass
class SDR:
    """Strong deformation retract data from ``source`` onto ``target``."""

    source: Complex
    target: Complex
    pi: GradedMap
    iota: GradedMap
    h: GradedMap

    def retract_failures(self) -> list[str]:
        d, db = self.source.d, self.target.d
        out = []
        if not (self.pi @ d - db @ self.pi).is_zero():
            out.append("pi is not a chain map")
        if not (self.iota @ db - d @ self.iota).is_zero():
            out.append("iota is not a chain map")
        if not (self.pi @ self.iota - GradedMap.identity(self.target.ranks)).is_zero():
            out.append("pi iota != Id")
        lhs = self.iota @ self.pi - GradedMap.identity(self.source.ranks)
        if not (lhs - (d @ self.h + self.h @ d)).is_zero():
            out.append("iota pi - Id != dh + hd")
        return out

    def side_failures(self) -> list[str]:
        out = []
        if not (self.h @ self.iota).is_zero():
            out.append("h iota != 0")
        if not (self.pi @ self.h).is_zero():
            out.append("pi h != 0")
        if not (self.h @ self.h).is_zero():
            out.append("h h != 0")
        return out

    def failures(self) -> list[str]:
        return self.retract_failures() + self.side_failures()

    def is_valid(self) -> bool:
        return not self.failures()


def fix_side_conditions(s: SDR) -> SDR:
    """Replace h by -h' d h' with h' = (Id - iota pi) h (Id - iota pi).

    The minus sign comes from the convention iota pi - Id = dh + hd; with
    Id - iota pi = dh + hd the same recipe reads h' d h'.
    """
    bad = s.retract_failures()
    if bad:
        raise PerturbationError("not a deformation retract: " + "; ".join(bad))
    P = GradedMap.identity(s.source.ranks) - s.iota @ s.pi
    h1 = P @ s.h @ P
    h2 = -(h1 @ s.source.d @ h1)
    return SDR(s.source, s.target, s.pi, s.iota, h2)


def identity_sdr(C: Complex) -> SDR:
    I = GradedMap.identity(C.ranks)
    return SDR(C, C, I, I, GradedMap.zero(C.ranks, C.ranks, H_DEG))


# -- poset splittings --------------------------------------------------------------------

def _transitive_closure(nodes, relations):
    less = {p: set() for p in nodes}
    for p, q in relations:
        if p != q:
            less[p].add(q)
    changed = True
    while changed:
        changed = False
        for p in nodes:
            extra = set()
            for q in less[p]:
                extra |= less[q]
            if not extra <= less[p]:
                less[p] |= extra
                changed = True
    for p in nodes:
        if p in less[p]:
            raise ValueError("relations contain a cycle")
    return less


class PosetSplitComplex:
    """A complex A = sum_p A_p whose differential components d_{q,p} vanish unless p <= q.

    ``relations`` lists generating pairs (p, q) meaning p < q.  ``components``
    maps (q, p) to d_{q,p}: A_p -> A_q for p < q.
    """

    def __init__(self, nodes: Iterable[Hashable], relations: Iterable[tuple],
                 pieces: Mapping[Hashable, Complex], components: Mapping[tuple, GradedMap]):
        self.nodes = list(nodes)
        self.above = _transitive_closure(self.nodes, list(relations))
        self.pieces = dict(pieces)
        if set(self.pieces) != set(self.nodes):
            raise ValueError("need one complex per node")
        self.components = {}
        for (q, p), f in components.items():
            if f.is_zero():
                continue
            if q not in self.above[p]:
                raise PerturbationError(f"component from {p!r} to {q!r} between non-comparable nodes")
            if f.degree != D_DEG:
                raise ValueError("components must have degree (1, 0)")
            self.components[(q, p)] = f
        # linear extension: every node after everything below it
        order, seen = [], set()

        def visit(p):
            if p in seen:
                return
            seen.add(p)
            for r in self.nodes:
                if p in self.above[r]:
                    visit(r)
            order.append(p)

        for p in self.nodes:
            visit(p)
        self.order = order
        if not (self.total_d() @ self.total_d()).is_zero():
            raise PerturbationError("total differential does not square to zero")

    def less(self, p, q) -> bool:
        return q in self.above[p]

    def d(self, q, p) -> GradedMap:
        if p == q:
            return self.pieces[p].d
        f = self.components.get((q, p))
        if f is None:
            return GradedMap.zero(self.pieces[p].ranks, self.pieces[q].ranks, D_DEG)
        return f

    def layout(self):
        """Offsets of each node inside the direct sum, per bidegree."""
        return _layout({p: self.pieces[p].ranks for p in self.order}, self.order)

    def total_d(self) -> GradedMap:
        maps = {(p, p): self.pieces[p].d for p in self.nodes}
        maps.update(self.components)
        return _assemble({p: self.pieces[p].ranks for p in self.nodes}, self.order, maps, D_DEG)

    def total(self) -> Complex:
        ranks, _ = self.layout()
        return Complex(ranks, self.total_d())


def _layout(piece_ranks: Mapping, order):
    offsets = {}
    ranks: dict = {}
    for p in order:
        for key, n in piece_ranks[p].items():
            offsets[(p, key)] = ranks.get(key, 0)
            ranks[key] = ranks.get(key, 0) + n
    return ranks, offsets


def _assemble(piece_ranks, order, maps: Mapping[tuple, GradedMap], degree,
              tgt_ranks=None, tgt_order=None) -> GradedMap:
    """Glue component maps (q, p) -> f: piece p -> piece q into one graded map."""
    src_total, src_off = _layout(piece_ranks, order)
    if tgt_ranks is None:
        tgt_ranks, tgt_order = piece_ranks, order
    tgt_total, tgt_off = _layout(tgt_ranks, tgt_order)
    rows: dict = {}
    for (q, p), f in maps.items():
        for key, M in f.blocks.items():
            tk = _shift(key, degree)
            so, to = src_off[(p, key)], tgt_off[(q, tk)]
            dst = rows.setdefault(key, {})
            for i, row in M.rows.items():
                r = dst.setdefault(to + i, {})
                for j, v in row.items():
                    r[so + j] = r.get(so + j, 0) + v
    blocks = {key: IntMatrix(tgt_total.get(_shift(key, degree), 0), src_total[key], r)
              for key, r in rows.items()}
    return GradedMap(src_total, tgt_total, degree, blocks)


def perturb(C: PosetSplitComplex, retracts: Mapping[Hashable, SDR]) -> tuple[PosetSplitComplex, SDR]:
    """Glue per-node retracts into a retract of the whole complex.

    Returns the reduced complex (split over the same poset) and the SDR from
    the total complex of ``C`` onto its total complex.
    """
    for p in C.nodes:
        s = retracts[p]
        if s.source.ranks != C.pieces[p].ranks:
            raise ValueError(f"retract at {p!r} has the wrong source")
        bad = s.failures()
        if bad:
            raise PerturbationError(f"retract at {p!r}: " + "; ".join(bad))

    @lru_cache(maxsize=None)
    def walk(q, p) -> GradedMap:
        # sum over chains p = p_1 < ... < p_k = q of d h d h ... d
        acc = C.d(q, p)
        for r in C.nodes:
            if C.less(p, r) and C.less(r, q):
                acc = acc + walk(q, r) @ retracts[r].h @ C.d(r, p)
        return acc

    pairs = [(q, p) for p in C.nodes for q in C.nodes if C.less(p, q)]
    dbar, pi, iota, h = {}, {}, {}, {}
    for p in C.nodes:
        s = retracts[p]
        pi[(p, p)], iota[(p, p)], h[(p, p)] = s.pi, s.iota, s.h
    for q, p in pairs:
        W = walk(q, p)
        sq, sp = retracts[q], retracts[p]
        dbar[(q, p)] = sq.pi @ W @ sp.iota
        pi[(q, p)] = sq.pi @ W @ sp.h
        iota[(q, p)] = sq.h @ W @ sp.iota
        h[(q, p)] = sq.h @ W @ sp.h

    pieces = {p: retracts[p].target for p in C.nodes}
    rel = [(p, q) for q, p in pairs]
    reduced = PosetSplitComplex(C.nodes, rel, pieces, dbar)
    src = {p: C.pieces[p].ranks for p in C.nodes}
    tgt = {p: pieces[p].ranks for p in C.nodes}
    order = C.order
    sdr = SDR(C.total(), reduced.total(),
              _assemble(src, order, pi, (0, 0), tgt, order),
              _assemble(tgt, order, iota, (0, 0), src, order),
              _assemble(src, order, h, H_DEG))
    bad = sdr.failures()
    if bad:
        raise PerturbationError("glued retract failed: " + "; ".join(bad))
    return reduced, sdr


# -- random instances (for tests and the self-check) -----------------------------------

def _random_unimodular(rng, n: int, steps: int = 6) -> tuple[IntMatrix, IntMatrix]:
    """A random unimodular matrix and its inverse, built from elementary moves."""
    g = [[int(i == j) for j in range(n)] for i in range(n)]
    gi = [row[:] for row in g]
    if n < 2:
        return IntMatrix.from_dense(g, n), IntMatrix.from_dense(gi, n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        # g <- E g with E = I + c e_ij; inverse picks up (I - c e_ij) on the right
        g[i] = [a + c * b for a, b in zip(g[i], g[j])]
        for row in gi:
            row[j] -= c * row[i]
    return IntMatrix.from_dense(g, n), IntMatrix.from_dense(gi, n)


def _random_matrix(rng, rows: int, cols: int, bound: int = 2) -> IntMatrix:
    return IntMatrix.from_dense([[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)], cols)


def random_piece(rng, max_rank: int = 4) -> SDR:
    """A random free complex with a known retract onto a smaller complex."""
    hs = [0, 1, 2]
    qs = [0, 2]
    ranks: dict = {}
    kinds = []  # (kind, key, k)
    for _ in range(rng.randint(1, 5)):
        key = (rng.choice(hs), rng.choice(qs))
        kind = rng.choice(["free", "torsion", "contract", "contract"])
        need = [key] if kind == "free" else [key, (key[0] + 1, key[1])]
        if any(ranks.get(k, 0) >= max_rank for k in need):
            continue
        kinds.append((kind, key, rng.choice([2, 3, 4]) if kind == "torsion" else 1))
        for k in need:
            ranks[k] = ranks.get(k, 0) + 1
    # standard bases: each piece gets its slots in order of appearance
    fill: dict = {}

    def take(k):
        fill[k] = fill.get(k, 0) + 1
        return fill[k] - 1

    small: dict = {}

    def take_small(k):
        small[k] = small.get(k, 0) + 1
        return small[k] - 1

    d, db, pi, io, h = {}, {}, {}, {}, {}

    def put(store, key, i, j, v):
        store.setdefault(key, {}).setdefault(i, {})[j] = v

    for idx, (kind, key, k) in enumerate(kinds):
        up = (key[0] + 1, key[1])
        if kind == "free":
            a, s = take(key), take_small(key)
            put(pi, key, s, a, 1)
            put(io, key, a, s, 1)
        elif kind == "torsion":
            a, b = take(key), take(up)
            sa, sb = take_small(key), take_small(up)
            put(d, key, b, a, k)
            put(db, key, sb, sa, k)
            put(pi, key, sa, a, 1)
            put(pi, up, sb, b, 1)
            put(io, key, a, sa, 1)
            put(io, up, b, sb, 1)
        else:
            a, b = take(key), take(up)
            put(d, key, b, a, 1)
            put(h, up, a, b, -1)
    big = dict(ranks)
    little = {k: v for k, v in small.items() if v}

    def gm(store, src, tgt, deg):
        return GradedMap(src, tgt, deg, {key: IntMatrix(tgt.get(_shift(key, deg), 0), src[key], rows)
                                         for key, rows in store.items() if key in src})

    d0 = gm(d, big, big, D_DEG)
    s0 = SDR(Complex(big, d0), Complex(little, gm(db, little, little, D_DEG)),
             gm(pi, big, little, (0, 0)), gm(io, little, big, (0, 0)), gm(h, big, big, H_DEG))
    # change of basis on the big side
    g, gi = {}, {}
    for key, n in big.items():
        g[key], gi[key] = _random_unimodular(rng, n)
    G = GradedMap(big, big, (0, 0), g)
    Gi = GradedMap(big, big, (0, 0), gi)
    src = Complex(big, G @ d0 @ Gi)
    return SDR(src, s0.target, s0.pi @ Gi, G @ s0.iota, G @ s0.h @ Gi)


def spoil_side_conditions(rng, s: SDR) -> SDR:
    """Add a commutator [d, k] to h: the retract identities survive, side conditions usually not."""
    ranks = s.source.ranks
    blocks = {}
    for key, n in ranks.items():
        tk = (key[0] - 2, key[1])
        if tk in ranks:
            blocks[key] = _random_matrix(rng, ranks[tk], n, 1)
    k = GradedMap(ranks, ranks, (-2, 0), blocks)
    d = s.source.d
    return SDR(s.source, s.target, s.pi, s.iota, s.h + d @ k - k @ d)


def random_poset(rng, n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.5]


def random_split_complex(rng, max_nodes: int = 5, max_rank: int = 4, spoil: bool = False):
    """A random poset-split complex with per-node retracts.

    The glued differential is G D0 G^-1 for a block-diagonal D0 and a
    unipotent G supported on comparable pairs, so it squares to zero.
    """
    n = rng.randint(1, max_nodes)
    rel = random_poset(rng, n)
    above = _transitive_closure(range(n), rel)
    retracts = {p: random_piece(rng, max_rank) for p in range(n)}
    ranks = {p: retracts[p].source.ranks for p in range(n)}
    Nmap = {}
    for p in range(n):
        for q in above[p]:
            blocks = {key: _random_matrix(rng, ranks[q].get(key, 0), m, 1)
                      for key, m in ranks[p].items() if ranks[q].get(key, 0)}
            Nmap[(q, p)] = GradedMap(ranks[p], ranks[q], (0, 0), blocks)

    def mul(X, Y):
        out = {}
        for (q, r), f in X.items():
            for (r2, p), g in Y.items():
                if r == r2:
                    out[(q, p)] = out[(q, p)] + f @ g if (q, p) in out else f @ g
        return out

    def add(X, Y):
        out = dict(X)
        for k, f in Y.items():
            out[k] = out[k] + f if k in out else f
        return out

    I = {(p, p): GradedMap.identity(ranks[p]) for p in range(n)}
    negN = {k: -f for k, f in Nmap.items()}
    Ginv, term = dict(I), dict(I)
    for _ in range(n):
        term = mul(term, negN)
        Ginv = add(Ginv, term)
    G = add(I, Nmap)
    D0 = {(p, p): retracts[p].source.d for p in range(n)}
    D = mul(mul(G, D0), Ginv)
    comps = {k: f for k, f in D.items() if k[0] != k[1]}
    C = PosetSplitComplex(range(n), rel, {p: retracts[p].source for p in range(n)}, comps)
    if spoil:
        retracts = {p: spoil_side_conditions(rng, s) for p, s in retracts.items()}
    return C, retracts
