"""SU(N) representation spaces of the Hopf link and the trefoil.

Components are homogeneous spaces U(N)/K.  Their integral cohomology is
computed as Tor over H*(BU(N)) of H*(BK): the Koszul complex on
e_1, ..., e_N acting on a degree-truncated copy of H*(BK).  A diagonal
factor U(m) sitting in U(m) x U(m) is never built as a matrix group; it is
the restriction merging the two alphabets into one.

The numerical half checks the defining relations with explicit unitary
matrices.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .flag_ring import SubgroupBlocks, build_ambient, build_quotient
from .homology import BigradedAbelianGroup, Cell, IntegerChainComplex, homology
from .invariants import LinkSpec, hopf_range, trefoil_range
from .koszul import KoszulSpec, build_koszul
from .schur import merge_blocks, split_full_elementary


# -- components --------------------------------------------------------------------------

@dataclass(frozen=True)
class ComponentDescriptor:
    """U(N)/K with K block diagonal; ``diagonal_pair`` marks two blocks carrying the same matrix."""

    N: int
    blocks: tuple
    diagonal_pair: tuple | None = None
    params: tuple = ()  # e.g. (("l", 1),)

    def __post_init__(self):
        if any(b < 0 for b in self.blocks):
            raise ValueError("negative block size")
        if sum(self.blocks) != self.N:
            raise ValueError(f"blocks {self.blocks} do not fill C^{self.N}")
        if self.diagonal_pair is not None:
            i, j = self.diagonal_pair
            if self.blocks[i] != self.blocks[j]:
                raise ValueError("diagonal blocks must have equal size")

    def subgroup_blocks(self) -> tuple:
        """Block sizes of K as an abstract product of unitary groups."""
        if self.diagonal_pair is None:
            return self.blocks
        _, j = sorted(self.diagonal_pair)
        return self.blocks[:j] + self.blocks[j + 1:]

    def dimension(self) -> int:
        """dim_R U(N) - dim_R K."""
        return self.N ** 2 - sum(b * b for b in self.subgroup_blocks())

    def restriction(self, m: int):
        """Image of e_m of U(N) in H*(BK)."""
        e = split_full_elementary(m, self.blocks)
        if self.diagonal_pair is not None:
            e = merge_blocks(e, *self.diagonal_pair)
        return e

    def as_dict(self) -> dict:
        return {"params": dict(self.params), "block_sizes": list(self.blocks),
                "diagonal_pair": list(self.diagonal_pair) if self.diagonal_pair else None,
                "dim": self.dimension()}


def enumerate_components(spec: LinkSpec) -> list[ComponentDescriptor]:
    N = spec.N
    if spec.link == "unknot":
        a = spec.labels[0]
        return [ComponentDescriptor(N, (a, N - a), None, ())]
    if spec.link == "positive-hopf":
        a, b = spec.labels
        return [ComponentDescriptor(N, (k, a - k, b - k, N - a - b + k), None, (("k", k),))
                for k in hopf_range(N, a, b)]
    if spec.link == "right-handed-trefoil":
        a = spec.labels[0]
        out = []
        for l in trefoil_range(N, a):
            pair = (1, 2) if a - l else None
            out.append(ComponentDescriptor(N, (l, a - l, a - l, N - 2 * a + l), pair, (("l", l),)))
        return out
    raise ValueError(f"unsupported link {spec.link!r}")


def torus_components(m: int, N: int, a: int, b: int) -> list[tuple[Fraction, ...]]:
    """Principal-angle sequences (in units of pi) with m * theta in Z pi, for the (2, m) torus link."""
    if m <= 0:
        raise ValueError("m must be positive")
    if m % 2 and a != b:
        raise ValueError("a torus knot needs equal labels")
    if not (0 <= a <= N and 0 <= b <= N):
        raise ValueError("labels out of range")
    n = min(a, b)
    forced = max(a + b - N, 0)
    angles = [Fraction(k, m) for k in range(m + 1) if Fraction(k, m) <= Fraction(1, 2)]
    out = []

    def rec(prefix, start):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for i in range(start, len(angles)):
            if len(prefix) < forced and angles[i] != 0:
                break
            rec(prefix + [angles[i]], i)

    rec([], 0)
    return out


# -- cohomology ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _tor_cohomology(N: int, blocks: tuple, diagonal_pair, max_subset) -> dict:
    """Collapsed Koszul homology; with ``max_subset`` only columns below the cap are kept."""
    c = ComponentDescriptor(N, blocks, diagonal_pair)
    dim = c.dimension()
    shape = c.subgroup_blocks()
    ring = build_ambient(shape, dim // 2 + 1)
    gens = [c.restriction(m) for m in range(1, N + 1)]
    gens = [g for g in gens if g]
    C = build_koszul(KoszulSpec(ring, gens), max_subset=max_subset)
    # homology in collapsed degree h+q <= dim only sees chains up to dim+1
    keep = {k: n for k, n in C.ranks.items() if k[0] + k[1] <= dim + 1}
    C = IntegerChainComplex(keep, {k: M for k, M in C.differentials.items()
                                   if k in keep and (k[0] + 1, k[1]) in keep}, check=False)
    H = homology(C)
    if max_subset is not None:
        # the top kept column has no incoming boundaries
        H = BigradedAbelianGroup({k: v for k, v in H.items() if -k[0] < max_subset})
    H = H.collapse()
    return {d: cell for d, cell in H.items() if d <= dim and (cell.rank or cell.torsion)}


def component_cohomology(c: ComponentDescriptor, method: str = "auto") -> dict[int, Cell]:
    """Integral cohomology of U(N)/K as {degree: Cell}.

    ``method`` is "quotient" (Borel presentation, only without a diagonal
    pair), "tor" (Koszul complex over H*(BU(N))), or "auto".
    """
    if method == "auto":
        method = "quotient" if c.diagonal_pair is None else "tor"
    if method == "quotient":
        if c.diagonal_pair is not None:
            raise ValueError("the Borel quotient only covers subgroups without diagonal factors")
        P = build_quotient(SubgroupBlocks(tuple(c.blocks)))
        return {2 * d: Cell(r) for d, r in sorted(P.ranks().items()) if r}
    if method == "tor":
        # Tor vanishes beyond the rank deficiency of K; one extra exterior
        # power keeps the last nonzero column exact
        deficiency = c.N - sum(c.subgroup_blocks())
        cap = deficiency + 1 if deficiency + 1 < c.N else None
        return _tor_cohomology(c.N, tuple(c.blocks), c.diagonal_pair, cap)
    raise ValueError(f"unknown method {method!r}")


def total_cohomology(spec: LinkSpec, method: str = "auto") -> tuple[int, list[int]]:
    """(total rank, sorted torsion multiset) summed over all components."""
    rank, tors = 0, []
    for c in enumerate_components(spec):
        for cell in component_cohomology(c, method).values():
            rank += cell.rank
            tors.extend(cell.torsion)
    return rank, sorted(tors)


def poincare_string(groups: dict[int, Cell]) -> str:
    from .homology import render_cell
    return " + ".join(f"{render_cell(cell, unicode=False)}[{d}]" for d, cell in sorted(groups.items()))


# -- numerical verification ---------------------------------------------------------------

def _check_label(N: int, a: int) -> None:
    if N < 1 or not 0 <= a <= N:
        raise ValueError(f"label {a} out of range for N={N}")


def phi_matrix(N: int, a: int) -> np.ndarray:
    """e^{a pi i / N} (-Id_a + Id_{N-a})."""
    _check_label(N, a)
    w = cmath.exp(1j * math.pi * a / N)
    return np.diag([-w] * a + [w] * (N - a)).astype(complex)


def _check_frame(P: np.ndarray, tol: float = 1e-10) -> None:
    P = np.asarray(P)
    if P.ndim != 2 or not np.all(np.isfinite(P)):
        raise ValueError("frame must be a finite 2-d array")
    k = P.shape[1]
    err = np.max(np.abs(P.conj().T @ P - np.eye(k))) if k else 0.0
    if err > tol:
        raise ValueError(f"columns are not orthonormal (error {err:.2e})")


def hermitian_jacobi(A: np.ndarray, tol: float = 1e-12, max_sweeps: int = 60) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations, ascending."""
    A = np.array(A, dtype=complex)
    n = A.shape[0]
    for _ in range(max_sweeps):
        off = math.sqrt(sum(abs(A[p, q]) ** 2 for p in range(n) for q in range(n) if p != q))
        if off <= tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                r = abs(apq)
                if r <= tol * 1e-3:
                    continue
                phase = apq / r
                alpha, gamma = A[p, p].real, A[q, q].real
                theta = 0.5 * math.atan2(2 * r, alpha - gamma)
                c, s = math.cos(theta), math.sin(theta)
                # columns p, q of the unitary: (c, s conj(phase)) and (-s phase, c)
                J = np.eye(n, dtype=complex)
                J[p, p] = c
                J[q, p] = s * phase.conjugate()
                J[p, q] = -s * phase
                J[q, q] = c
                A = J.conj().T @ A @ J
    return np.sort(np.diag(A).real)


def principal_angles(PA: np.ndarray, PB: np.ndarray, tol: float = 1e-12) -> list[float]:
    """Principal angles between two column spaces, ascending."""
    PA, PB = np.asarray(PA, dtype=complex), np.asarray(PB, dtype=complex)
    _check_frame(PA)
    _check_frame(PB)
    if PA.shape[0] != PB.shape[0]:
        raise ValueError("frames live in different spaces")
    M = PA.conj().T @ PB
    k = min(M.shape)
    if k == 0:
        return []
    G = M @ M.conj().T if M.shape[0] <= M.shape[1] else M.conj().T @ M
    ev = hermitian_jacobi(G, tol)[::-1][:k]
    cs = [min(1.0, math.sqrt(max(v, 0.0))) for v in ev]
    return sorted(math.acos(c) for c in cs)


def subspace_to_matrix(P: np.ndarray, N: int, a: int) -> np.ndarray:
    """The element of C_a whose (-e^{a pi i/N})-eigenspace is the column span of P."""
    _check_label(N, a)
    P = np.asarray(P, dtype=complex)
    if P.shape != (N, a):
        raise ValueError(f"expected an {N}x{a} frame")
    _check_frame(P)
    return cmath.exp(1j * math.pi * a / N) * (np.eye(N) - 2 * P @ P.conj().T)


def _check_l(N: int, a: int, l: int) -> None:
    _check_label(N, a)
    if not max(2 * a - N, 0) <= l <= a:
        raise ValueError(f"l={l} outside [{max(2 * a - N, 0)}, {a}]")


def trefoil_frames(N: int, a: int, l: int, theta: float = math.pi / 3, interleaved: bool = True):
    """Orthonormal frames of Lambda_A, Lambda_B with angles 0 (l times) and theta (a-l times).

    ``interleaved`` uses the rotation-block layout (coordinates l+1, l+2 share a
    2x2 block); otherwise the stacked layout with tan(theta) Id below Id.
    """
    _check_l(N, a, l)
    m = a - l
    PA = np.zeros((N, a), dtype=complex)
    PB = np.zeros((N, a), dtype=complex)
    for i in range(l):
        PA[i, i] = PB[i, i] = 1
    c, s = math.cos(theta), math.sin(theta)
    for i in range(m):
        if interleaved:
            x, y = l + 2 * i, l + 2 * i + 1
        else:
            x, y = l + i, a + i
        PA[x, l + i] = 1
        PB[x, l + i] = c
        PB[y, l + i] = s
    return PA, PB


def trefoil_meridians(N: int, a: int, l: int, theta: float = math.pi / 3):
    """M_A, M_B in C_a built from the 2x2 reflection blocks."""
    _check_l(N, a, l)
    w = cmath.exp(1j * math.pi * a / N)
    MA = np.zeros((N, N), dtype=complex)
    MB = np.zeros((N, N), dtype=complex)
    for i in range(l):
        MA[i, i] = MB[i, i] = -1
    c2, s2 = math.cos(2 * theta), math.sin(2 * theta)
    for i in range(a - l):
        x, y = l + 2 * i, l + 2 * i + 1
        MA[x, x], MA[y, y] = -1, 1
        MB[x, x], MB[x, y], MB[y, x], MB[y, y] = -c2, -s2, -s2, c2
    for i in range(2 * a - l, N):
        MA[i, i] = MB[i, i] = 1
    return w * MA, w * MB


@dataclass
class BraidReport:
    N: int
    a: int
    l: int
    braid: float  # max |M_A M_B M_A - M_B M_A M_B|
    cube: float  # max |(e^{-2a pi i/N} M_B M_A)^3 - Id|
    unitary: float
    angles: list = field(default_factory=list)
    angle_error: float = 0.0
    frame_match: float = 0.0  # M_A, M_B against subspace_to_matrix of the frames

    def worst(self) -> float:
        return max(self.braid, self.cube, self.unitary, self.angle_error, self.frame_match)


def verify_braid(N: int, a: int, l: int) -> BraidReport:
    _check_l(N, a, l)
    MA, MB = trefoil_meridians(N, a, l)
    I = np.eye(N)
    braid = np.max(np.abs(MA @ MB @ MA - MB @ MA @ MB)) if N else 0.0
    W = cmath.exp(-2j * math.pi * a / N) * MB @ MA
    cube = np.max(np.abs(W @ W @ W - I))
    unitary = max(np.max(np.abs(M.conj().T @ M - I)) for M in (MA, MB))
    PA, PB = trefoil_frames(N, a, l)
    angles = principal_angles(PA, PB)
    expected = [0.0] * l + [math.pi / 3] * (a - l)
    err = max((abs(x - y) for x, y in zip(angles, expected)), default=0.0)
    match = max(np.max(np.abs(subspace_to_matrix(PA, N, a) - MA)),
                np.max(np.abs(subspace_to_matrix(PB, N, a) - MB)))
    return BraidReport(N, a, l, float(braid), float(cube), float(unitary), angles, err, float(match))


def random_frame(rng: np.random.Generator, N: int, a: int) -> np.ndarray:
    """Orthonormal a-frame from the QR factorization of a complex Gaussian matrix."""
    Z = rng.standard_normal((N, a)) + 1j * rng.standard_normal((N, a))
    Q, _ = np.linalg.qr(Z)
    return Q[:, :a]
