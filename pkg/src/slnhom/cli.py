"""Command-line interface.

    slnhom trefoil --n 4 --a 2 --format table
    slnhom hopf --n 3 --a 1 --b 2 --format json
    slnhom unknot --n 2 --a 1
    slnhom repspace --link trefoil --n 4 --a 2
    slnhom verify-tables
    slnhom selftest

Exit codes: 0 success, 1 verification failure, 2 invalid arguments.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .homology import BigradedAbelianGroup, render_cell
from .invariants import (LinkSpec, equivariant_hilbert, euler_polynomial, link_homology,
                         resolution_check, to_json, trefoil_homology, trefoil_range)


class UsageError(Exception):
    pass


# -- rendering ------------------------------------------------------------------------------

def render_table(H: BigradedAbelianGroup, unicode: bool = True, divisor_chain: bool = False) -> str:
    """h across, q down in descending order, as in the published tables."""
    cells = {k: c for k, c in H.items() if not c.is_zero()}
    if not cells:
        return "(zero)\n"
    hs = list(range(min(h for h, _ in cells), max(h for h, _ in cells) + 1))
    qs = sorted({q for _, q in cells}, reverse=True)
    text = {k: render_cell(c, unicode=unicode, divisor_chain=divisor_chain) for k, c in cells.items()}
    qw = max(len(str(q)) for q in qs + ["q"])
    widths = {h: max([len(str(h))] + [len(text.get((h, q), "")) for q in qs]) for h in hs}
    lines = []
    for q in qs:
        row = [str(q).rjust(qw)] + [text.get((h, q), "").center(widths[h]) for h in hs]
        lines.append(" | ".join(row).rstrip())
    lines.append("-" * (qw + sum(widths[h] + 3 for h in hs)))
    lines.append(" | ".join(["h".rjust(qw)] + [str(h).center(widths[h]) for h in hs]).rstrip())
    return "\n".join(lines) + "\n"


def render_csv(H: BigradedAbelianGroup) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["h", "q", "rank", "torsion"])
    for (h, q), c in H.items():
        if not c.is_zero():
            w.writerow([h, q, c.rank, " ".join(str(t) for t in c.torsion)])
    return buf.getvalue()


def emit_homology(spec: LinkSpec, H: BigradedAbelianGroup, args) -> str:
    if args.format == "json":
        return to_json(spec, H) + "\n"
    if args.format == "csv":
        return render_csv(H)
    head = f"{spec.link} N={spec.N} labels={','.join(map(str, spec.labels))}"
    head += f" framing={spec.framing}" + (" reduced" if spec.reduced else "")
    return (head + "\n" + render_table(H, unicode=not args.ascii, divisor_chain=args.divisor_chain)
            + f"euler: {euler_polynomial(H)}\n")


# -- commands ----------------------------------------------------------------------------------

def _spec(args, link) -> LinkSpec:
    labels = (args.a, args.b) if link == "hopf" else (args.a,)
    if link == "hopf" and args.b is None:
        raise UsageError("hopf needs --b")
    try:
        return LinkSpec(link, args.n, labels, framing=getattr(args, "framing", "seifert"),
                        reduced=args.reduced, basepoint=getattr(args, "basepoint", 0))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_link(args, out) -> int:
    spec = _spec(args, args.command)
    H = link_homology(spec, threads=args.threads)
    out.write(emit_homology(spec, H, args))
    if spec.link == "right-handed-trefoil" and args.truncation is not None:
        if args.truncation < 0:
            raise UsageError("--truncation must be nonnegative")
        out.write(render_equivariant(spec.N, spec.labels[0], args.truncation))
    if args.plot:
        from .plotting import plot_table
        plot_table(H, args.plot, title=f"{spec.link} N={spec.N} labels={spec.labels}",
                   divisor_chain=args.divisor_chain)
    return 0


def render_equivariant(N: int, a: int, truncation: int) -> str:
    lines = [f"equivariant Hilbert series (truncation q^{truncation}):"]
    for l, (h, dq, series) in equivariant_hilbert(N, a, truncation).items():
        check = resolution_check(N, a, l, truncation)
        ok = not check["higher"] and all(check["lambda0"].get(d, None) is not None
                                         and check["lambda0"][d].rank == c
                                         for d, c in check["expected"].coeffs.items())
        lines.append(f"  l={l}: h={h} q-shift={dq} series={series}  resolution={'ok' if ok else 'FAIL'}")
    return "\n".join(lines) + "\n"


def cmd_repspace(args, out) -> int:
    from .repspaces import component_cohomology, enumerate_components, poincare_string, verify_braid
    spec = _spec(args, args.link)
    comps = enumerate_components(spec)
    report = {"link": spec.link, "N": spec.N, "labels": list(spec.labels), "components": [], "residuals": []}
    groups = []
    for c in comps:
        H = component_cohomology(c)
        entry = c.as_dict()
        entry["poincare"] = poincare_string(H)
        entry["cohomology"] = [{"degree": d, "rank": cell.rank, "torsion": list(cell.torsion)}
                               for d, cell in sorted(H.items())]
        report["components"].append(entry)
        groups.append((",".join(f"{k}={v}" for k, v in c.params) or "G(a,N)", H))
    worst = 0.0
    if spec.link == "right-handed-trefoil":
        a = spec.labels[0]
        for l in trefoil_range(spec.N, a):
            r = verify_braid(spec.N, a, l)
            worst = max(worst, r.worst())
            report["residuals"].append({"l": l, "braid": r.braid, "cube": r.cube, "unitary": r.unitary,
                                        "angle_error": r.angle_error, "frame_match": r.frame_match})
    ok = worst <= args.tol
    report["max_residual"] = worst
    report["within_tolerance"] = ok
    if args.format == "json":
        out.write(json.dumps(report, indent=2) + "\n")
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["params", "block_sizes", "diagonal_pair", "dim", "poincare"])
        for e in report["components"]:
            w.writerow([" ".join(f"{k}={v}" for k, v in e["params"].items()),
                        " ".join(map(str, e["block_sizes"])),
                        " ".join(map(str, e["diagonal_pair"] or [])), e["dim"], e["poincare"]])
        out.write(buf.getvalue())
    else:
        out.write(f"{spec.link} N={spec.N} labels={','.join(map(str, spec.labels))}: "
                  f"{len(comps)} component(s)\n")
        for e in report["components"]:
            params = " ".join(f"{k}={v}" for k, v in e["params"].items()) or "-"
            out.write(f"  {params:6s} blocks={tuple(e['block_sizes'])} "
                      f"diagonal={tuple(e['diagonal_pair']) if e['diagonal_pair'] else '-'} "
                      f"dim={e['dim']}  {e['poincare']}\n")
        for r in report["residuals"]:
            out.write(f"  l={r['l']}: braid={r['braid']:.2e} cube={r['cube']:.2e} "
                      f"unitary={r['unitary']:.2e} angles={r['angle_error']:.2e}\n")
        out.write(f"max residual {worst:.2e} ({'ok' if ok else 'above tolerance'})\n")
    if args.plot:
        from .plotting import plot_components
        plot_components(groups, args.plot, title=f"{spec.link} N={spec.N} labels={spec.labels}")
    return 0 if ok else 1


def _parse_pairs(items) -> list[tuple[int, int]]:
    out = []
    for item in items:
        try:
            N, a = (int(x) for x in item.split(","))
        except ValueError:
            raise UsageError(f"expected N,a but got {item!r}") from None
        out.append((N, a))
    return out


def cmd_verify(args, out) -> int:
    from .plotting import plot_table
    from .tables import TREFOIL_TABLES, euler_caption, EULER_CAPTIONS, table_mismatches
    wanted = _parse_pairs(args.table) if args.table else sorted(TREFOIL_TABLES)
    status = 0
    for N, a in wanted:
        if (N, a) not in TREFOIL_TABLES:
            raise UsageError(f"no published table for N={N}, a={a}")
        H = trefoil_homology(N, a, threads=args.threads)
        bad = table_mismatches(H, N, a)
        line = f"table N={N} a={a}: "
        if bad:
            status = 1
            h, q, got, want = bad[0]
            line += (f"FAIL ({len(bad)} cell(s)); first mismatch at (h,q)=({h},{q}): computed "
                     f"{render_cell(got, unicode=False) or '0'}, printed {render_cell(want, unicode=False)}")
        else:
            line += "ok"
        if (N, a) in EULER_CAPTIONS:
            e_ok = euler_polynomial(H) == euler_caption(N, a)
            line += f"; euler {'ok' if e_ok else 'FAIL'}"
            if not e_ok:
                status = 1
        out.write(line + "\n")
        if args.plot:
            stem = args.plot[:-4] if args.plot.endswith(".png") else args.plot
            plot_table(H, f"{stem}_N{N}_a{a}.png", title=f"trefoil N={N} a={a}",
                       highlight=[(h, q) for h, q, _, _ in bad])
    return status


def cmd_selftest(args, out) -> int:
    from .selftest import run_selftest
    failures = run_selftest(out)
    out.write("selftest " + ("ok" if not failures else f"FAILED ({len(failures)})") + "\n")
    return 1 if failures else 0


# -- argument parsing ----------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="slnhom", description="Colored sl(N) homology of small links, exactly over Z.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, labels=True, b=False):
        sp.add_argument("--n", type=int, required=True, help="rank N of sl(N)")
        if labels:
            sp.add_argument("--a", type=int, required=True, help="label of the (first) component")
        if b:
            sp.add_argument("--b", type=int, required=True, help="label of the second component")
        sp.add_argument("--format", choices=["table", "json", "csv"], default="table")
        sp.add_argument("--plot", metavar="PATH", help="also write a figure to PATH")

    titles = {"trefoil": "right-handed trefoil", "hopf": "positive Hopf link", "unknot": "unknot"}
    for name in ("trefoil", "hopf", "unknot"):
        sp = sub.add_parser(name, help=f"homology of the {titles[name]}")
        common(sp, b=(name == "hopf"))
        sp.add_argument("--reduced", action="store_true")
        sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--divisor-chain", action="store_true", help="torsion as invariant factors")
        sp.add_argument("--ascii", action="store_true", help="plain ASCII cells")
        if name == "trefoil":
            sp.add_argument("--framing", choices=["seifert", "blackboard"], default="seifert")
            sp.add_argument("--truncation", type=int, help="also print equivariant Hilbert series to this q-degree")
        else:
            sp.set_defaults(framing="seifert", truncation=None)
        if name == "hopf":
            sp.add_argument("--basepoint", type=int, choices=[0, 1], default=0)
        else:
            sp.set_defaults(b=None)
        sp.set_defaults(func=cmd_link)

    sp = sub.add_parser("repspace", help="components of the SU(N) representation space")
    sp.add_argument("--link", choices=["trefoil", "hopf", "unknot"], required=True)
    common(sp)
    sp.add_argument("--b", type=int)
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.set_defaults(func=cmd_repspace, reduced=False)

    sp = sub.add_parser("verify-tables", help="recompute the published trefoil tables")
    sp.add_argument("--table", action="append", metavar="N,a", help="restrict to one table (repeatable)")
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--plot", metavar="PATH", help="figure stem; one PNG per table")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("selftest", help="fast internal consistency checks")
    sp.set_defaults(func=cmd_selftest)
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) is not None and getattr(args, "threads", 1) < 1:
        parser.error("--threads must be at least 1")
    try:
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"slnhom: error: {exc}\n")
        return 2


def main(argv=None) -> int:
    try:
        code = run(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
    sys.exit(code)


if __name__ == "__main__":
    main()
