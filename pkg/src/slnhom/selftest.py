"""Fast end-to-end consistency checks behind ``slnhom selftest``."""
from __future__ import annotations

import random

from .homology import Cell, homology


def _check(name, cond, failures, out):
    out.write(f"  {'ok  ' if cond else 'FAIL'} {name}\n")
    if not cond:
        failures.append(name)


def run_selftest(out) -> list[str]:
    from .invariants import LinkSpec, hopf_homology, reduced_homology, trefoil_homology, unknot_homology
    from .partitions import partitions_of
    from .perturbation import fix_side_conditions, perturb, random_split_complex
    from .repspaces import verify_braid
    from .schur import lr_coefficient, lr_coefficient_tableaux
    from .tables import table_mismatches

    failures: list[str] = []
    lr_ok = all(lr_coefficient(lam, mu, nu) == lr_coefficient_tableaux(lam, mu, nu)
                for n in range(1, 5) for nu in partitions_of(n)
                for k in range(n + 1) for lam in partitions_of(k) for mu in partitions_of(n - k))
    _check("Littlewood-Richardson engines agree (|nu| <= 4)", lr_ok, failures, out)

    U = unknot_homology(2, 1)
    _check("unknot N=2 a=1 is Z at q=-1 and q=1", U[(0, -1)] == Cell(1) and U[(0, 1)] == Cell(1)
           and U.total_rank() == 2, failures, out)
    _check("Hopf N=2 a=b=1 has rank 4", hopf_homology(2, 1, 1).total_rank() == 4, failures, out)
    T = trefoil_homology(2, 1)
    _check("trefoil N=2 a=1: rank 4 with one Z_2", T.total_rank() == 4 and T.torsion_multiset() == [2],
           failures, out)
    R = reduced_homology(LinkSpec("trefoil", 2, (1,), reduced=True))
    _check("reduced trefoil N=2 a=1 has rank 3", R.total_rank() == 3, failures, out)
    _check("trefoil N=4 a=2 matches the published table", not table_mismatches(trefoil_homology(4, 2), 4, 2),
           failures, out)

    rng = random.Random(2024)
    pert_ok = True
    for _ in range(20):
        C, S = random_split_complex(rng, spoil=True)
        red, _sdr = perturb(C, {p: fix_side_conditions(s) for p, s in S.items()})
        pert_ok &= homology(C.total().to_chain_complex()) == homology(red.total().to_chain_complex())
    _check("perturbation preserves homology (20 random posets)", pert_ok, failures, out)

    worst = max(verify_braid(N, a, l).worst() for N in range(1, 6) for a in range(N + 1)
                for l in range(max(2 * a - N, 0), a + 1))
    _check(f"braid and cube residuals <= 1e-9 (worst {worst:.1e})", worst <= 1e-9, failures, out)
    return failures
