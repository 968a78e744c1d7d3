"""Command-line driver: ``bipcage <verb> [options]``.

Exit codes: 0 success, 1 a verification failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import feasibility, graphcore, irreducibility, polycore, spectral

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_range(text: str) -> list[int]:
    """``6..20``, ``7`` or ``6,8,10``."""
    out: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = part.split("..", 1)
                out.extend(range(int(lo), int(hi) + 1))
            elif part:
                out.append(int(part))
    except ValueError:
        raise UsageError(f"bad range {text!r}") from None
    if not out:
        raise UsageError(f"empty range {text!r}")
    return out


def _poly_json(p: polycore.IntPolynomial) -> dict:
    return {"coeffs": p.to_list(), "pretty": polycore.pretty(p), "degree": p.degree}


# verbs; each returns (payload, exit code, pretty text, csv text or None)

def cmd_poly(args):
    p = polycore.dickson(args.family, args.k, args.i)
    payload = {"family": args.family, "k": args.k, "i": args.i, "poly": _poly_json(p)}
    return payload, EXIT_OK, f"{args.family}_{args.i}(x) = {polycore.pretty(p)}", None


def cmd_cyclotomic(args):
    phi = polycore.cyclotomic(args.l)
    payload = {"l": args.l, "totient": polycore.euler_totient(args.l), "cyclotomic": _poly_json(phi)}
    lines = [f"Phi_{args.l}(x) = {polycore.pretty(phi)}"]
    if args.l >= 3:
        f = polycore.half_trace(args.l)
        payload["half_trace"] = _poly_json(f)
        lines.append(f"f_{args.l}(x) = {polycore.pretty(f)}")
    else:
        payload["half_trace"] = None
    return payload, EXIT_OK, "\n".join(lines), None


def cmd_factor(args):
    try:
        p = polycore.IntPolynomial.parse(args.coeffs)
    except polycore.PolynomialError as exc:
        raise UsageError(str(exc)) from None
    cert = irreducibility.is_irreducible_over_Q(p, args.eisenstein_bound)
    ok = cert.verify()
    payload = cert.to_dict() | {"pretty": polycore.pretty(p), "reverified": ok}
    w = cert.witness
    if w["type"] == "factors":
        detail = f"({polycore.pretty(cert.factors[0])}) * ({polycore.pretty(cert.factors[1])})"
    elif w["type"] == "eisenstein":
        detail = f"Eisenstein at p = {w['p']}"
    else:
        detail = w["method"]
    text = f"{polycore.pretty(p)}: {cert.verdict} [{detail}]"
    return payload, EXIT_OK if ok else EXIT_FAIL, text, None


def cmd_moore(args):
    m = graphcore.moore_bound(args.k, args.g)
    payload = {"k": args.k, "g": args.g, "moore_bound": m, "excess4_order": m + 4}
    return payload, EXIT_OK, f"{m}\nexcess-4 order: {m + 4}", None


def _load_graph(args) -> graphcore.Graph:
    if args.graph and args.graph6_file:
        raise UsageError("give either --graph or --graph6-file, not both")
    if args.graph:
        try:
            return graphcore.builtin(args.graph)
        except graphcore.GraphError as exc:
            raise UsageError(str(exc)) from None
    if args.graph6_file:
        try:
            graphs = graphcore.read_graph6_file(args.graph6_file)
        except OSError as exc:
            raise UsageError(str(exc)) from None
        if not 0 <= args.index < len(graphs):
            raise UsageError(f"{args.graph6_file} has {len(graphs)} graph(s); index {args.index} is out of range")
        g = graphs[args.index]
        return graphcore.Graph(g.n, g.adjacency, Path(args.graph6_file).name)
    raise UsageError("one of --graph or --graph6-file is required")


def _graph_header(g: graphcore.Graph) -> dict:
    return {"name": g.name, "n": g.n, "graph6": graphcore.write_graph6(g)}


def cmd_excess_graph(args):
    g = _load_graph(args)
    ep = graphcore.excess_graph(g)
    payload = {"graph": _graph_header(g), "excess_graph": ep.to_dict()}
    text = json.dumps(ep.cycle_lengths, separators=(",", ":"))
    if not ep.is_2_regular:
        text += f"  ({ep.classification})"
    return payload, EXIT_OK, text, None


def verify_graph(g: graphcore.Graph, tol: float = spectral.DEFAULT_TOL, dump_matrices: bool = False) -> dict:
    prof = graphcore.profile(g)
    ep = graphcore.excess_graph(g)
    reports = [
        spectral.verify_partition_identity(g),
        spectral.verify_path_identity(g),
        spectral.verify_quotient_identity(g),
    ]
    if ep.is_2_regular or ep.classification == graphcore.EMPTY:
        reports.append(spectral.annihilator_check(g))
    else:
        reports.append(
            spectral.IdentityReport("annihilator", spectral.NOT_APPLICABLE, reason=f"excess graph is {ep.classification}")
        )
    spec = spectral.spectrum_crosscheck(g, tol)
    failed = [r.identity for r in reports if r.status == spectral.FAILS]
    if spec.reason is None and not spec.ok:
        failed.append("spectrum_crosscheck")
    out = {
        "graph": _graph_header(g),
        "profile": prof.to_dict(),
        "excess_graph": ep.to_dict(),
        "identities": [r.to_dict() for r in reports],
        "spectrum": spec.to_dict(),
        "failed": failed,
        "ok": not failed,
    }
    if dump_matrices:
        out["matrices"] = {"A": g.adjacency_matrix().tolist()}
        if ep.excess_distance is not None:
            out["matrices"]["E"] = graphcore.excess_matrix(g, ep.excess_distance).tolist()
    return out


def cmd_verify(args):
    g = _load_graph(args)
    if args.tol <= 0:
        raise UsageError("--tol must be positive")
    try:
        report = verify_graph(g, args.tol, args.dump_matrices)
    except graphcore.GraphError as exc:
        raise UsageError(str(exc)) from None
    p = report["profile"]
    lines = [
        f"graph {g.name}: n={p['n']} k={p['k']} girth={p['girth']} diameter={p['diameter']} "
        f"bipartite={p['bipartite']} excess={p['excess']}",
        f"excess graph: {report['excess_graph']['classification']} {report['excess_graph']['cycle_lengths']}",
    ]
    for r in report["identities"]:
        extra = f" ({r['reason']})" if r["reason"] else ""
        if r["first_discrepancy"]:
            extra = f" first discrepancy at {r['first_discrepancy']}"
        lines.append(f"  {r['identity']}: {r['status']}{extra}")
    s = report["spectrum"]
    if s["reason"]:
        lines.append(f"  spectrum_crosscheck: NOT_APPLICABLE ({s['reason']})")
    else:
        lines.append(f"  spectrum_crosscheck: max residual {s['max_residual']:.3e} (tol {s['tolerance']:g})")
    if report["failed"]:
        lines.append("FAILED: " + ", ".join(report["failed"]))
    return report, EXIT_OK if report["ok"] else EXIT_FAIL, "\n".join(lines), None


def cmd_scan(args):
    try:
        scopes = feasibility.parse_scopes(args.scope)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    result = feasibility.scan(parse_range(args.k), parse_range(args.g), scopes, workers=args.workers)
    failed = [
        f"{r.k},{r.g},{r.scope}" for r in result.rows for c in r.certificates if not c.verify()
    ]
    payload = result.to_dict()
    lines = []
    for r in result.rows:
        rules = ",".join(r.rule_ids) or "-"
        lines.append(f"k={r.k:<4} g={r.g:<4} {r.scope:<18} {r.verdict:<12} {rules}")
    lines.append("summary: " + json.dumps(result.summary(), sort_keys=True))
    if failed:
        lines.append("certificate re-verification failed: " + "; ".join(failed))
    return payload, EXIT_FAIL if failed else EXIT_OK, "\n".join(lines), result.to_csv()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["pretty", "json", "csv"], default="pretty")
    common.add_argument("--out", help="write the report here instead of standard output")

    parser = argparse.ArgumentParser(prog="bipcage", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("poly", parents=[common], help="print F_i, G_i or H_i")
    p.add_argument("family", choices=["F", "G", "H"])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("cyclotomic", parents=[common], help="print Phi_l and f_l")
    p.add_argument("--l", type=int, required=True)
    p.set_defaults(func=cmd_cyclotomic)

    p = sub.add_parser("factor", parents=[common], help="irreducibility certificate over Q")
    p.add_argument("--coeffs", required=True, help='lowest degree first, e.g. "[-1,-12,0,1]"')
    p.add_argument("--eisenstein-bound", type=int, default=irreducibility.DEFAULT_EISENSTEIN_BOUND)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("moore", parents=[common], help="Moore bound and excess-4 order")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.set_defaults(func=cmd_moore)

    for verb, func, text in (
        ("verify", cmd_verify, "profile, excess graph, identities and spectrum of a graph"),
        ("excess-graph", cmd_excess_graph, "cycle multiset of the excess graph"),
    ):
        p = sub.add_parser(verb, parents=[common], help=text)
        p.add_argument("--graph", help="catalog name, e.g. pappus or cycle(8)")
        p.add_argument("--graph6-file")
        p.add_argument("--index", type=int, default=0, help="which graph of a multi-line graph6 file")
        if verb == "verify":
            p.add_argument("--tol", type=float, default=spectral.DEFAULT_TOL)
            p.add_argument("--dump-matrices", action="store_true")
        p.set_defaults(func=func)

    p = sub.add_parser("scan", parents=[common], help="feasibility table over (k, g)")
    p.add_argument("--k", required=True, help="e.g. 6..20")
    p.add_argument("--g", required=True, help="e.g. 8..16 (odd values are skipped)")
    p.add_argument("--scope", default="cyclic,bicyclic,general")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_scan)
    return parser


def _render(fmt: str, payload: dict, pretty: str, csv_text: str | None) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        if csv_text is None:
            raise UsageError("csv output is only available for scan")
        return csv_text
    return pretty + "\n"


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        payload, code, pretty, csv_text = args.func(args)
        text = _render(args.format, payload, pretty, csv_text)
    except (UsageError, polycore.PolynomialError, ValueError) as exc:
        print(f"bipcage {args.verb}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())
