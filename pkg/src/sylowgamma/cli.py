"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 refusal (cap or budget),
3 internal cross-check failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import tables
from .certify import (
    DEFAULT_NODE_BUDGET,
    Certificate,
    SearchBounds,
    format_certificate_file,
    parse_certificate_file,
    search_with_stats,
    verify_certificate,
)
from .errors import CrossCheckError, Refusal
from .groups import order_of, parse_group, realize
from .numerics import PrimePower, format_rat, parse_rat, pretty_rat
from .perm import center, is_solvable, normalizer, sylow_profile_bruteforce, sylow_subgroup
from .sylow import gamma_breakdown, sylow_polynomial

EXIT_OK, EXIT_USAGE, EXIT_REFUSED, EXIT_CROSSCHECK = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _fmt(args) -> str:
    if getattr(args, "json", False):
        return "json"
    if getattr(args, "csv", False):
        return "csv"
    return "text"


def cmd_gamma(args) -> str:
    g = parse_group(args.expr)
    rows, total = gamma_breakdown(g)
    fmt = _fmt(args)
    if fmt == "json":
        return json.dumps(
            {
                "expr": g.render(),
                "order": str(order_of(g)),
                "rows": [{"p": p, "nu": nu, "sigma": s, "term": format_rat(t)} for p, nu, s, t in rows],
                "gamma": format_rat(total),
            },
            indent=2,
        ) + "\n"
    if fmt == "csv":
        body = [[p, nu, s, format_rat(t)] for p, nu, s, t in rows]
        body.append(["total", "", "", format_rat(total)])
        return _csv(["p", "nu", "sigma", "term"], body)
    lines = [f"G = {g.render()}", f"|G| = {order_of(g)}", f"{'p':>5} {'nu':>4} {'sigma':>6}  nu/(sigma+1)"]
    for p, nu, s, t in rows:
        lines.append(f"{p:>5} {nu:>4} {s:>6}  {pretty_rat(t)}")
    lines.append(f"gamma = {pretty_rat(total)}")
    return "\n".join(lines) + "\n"


def cmd_sylow(args) -> str:
    poly = sylow_polynomial(parse_group(args.expr))
    if _fmt(args) == "json":
        return json.dumps(poly.to_json()) + "\n"
    return str(poly) + "\n"


def _parse_set(text: str) -> list[PrimePower]:
    parts = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        q, _, e = tok.partition("^")
        parts.append(PrimePower(int(q), int(e) if e else 1))
    return sorted(parts)


def cmd_certify(args) -> str:
    forbidden = _forbidden(args)
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            cert, w = parse_certificate_file(fh.read(), forbidden)
    else:
        if args.target is None or args.set is None:
            raise ValueError("certify needs --target and --set, or --file")
        cert = Certificate(tuple(_parse_set(args.set)), parse_rat(args.target), forbidden)
        w = verify_certificate(cert)
    if _fmt(args) == "json":
        return json.dumps({"certificate": cert.to_json(), "witness": w.to_json()}, indent=2) + "\n"
    out = format_certificate_file(cert, w)
    if w.valid:
        out += "# valid: the numerators add up to target * denominator\n"
    else:
        out += f"# invalid: target - sum = {format_rat(w.deficit)}\n"
    return out


def _forbidden(args):
    if getattr(args, "forbid", None) is None:
        return frozenset({2, 3, 5})
    return frozenset(int(t) for t in args.forbid.split(",") if t.strip())


def cmd_search(args) -> str:
    bounds = SearchBounds(args.max_prime, args.max_parts, args.max_exponent, _forbidden(args))
    certs, nodes = search_with_stats(parse_rat(args.target), bounds, args.node_budget)
    fmt = _fmt(args)
    if fmt == "json":
        out = []
        for c in certs:
            out.append({**c.to_json(), "witness": verify_certificate(c).to_json()})
        return json.dumps({"count": len(certs), "nodes": nodes, "certificates": out}, indent=2) + "\n"
    if fmt == "csv":
        rows = []
        for c in certs:
            w = verify_certificate(c)
            rows.append([" ".join(str(p) for p in c.parts), format_rat(c.target), w.common_denominator, w.total])
        return _csv(["parts", "target", "denominator", "total"], rows)
    lines = [str(c) for c in certs]
    lines.append(f"# {len(certs)} certificate(s), {nodes} search nodes")
    return "\n".join(lines) + "\n"


def cmd_oracle(args) -> str:
    g = parse_group(args.expr)
    G = realize(g)
    want_all = not (args.profile or args.center or args.solvable or args.normalizers)
    result: dict = {"expr": g.render(), "degree": G.degree, "order": G.order}
    if args.profile or want_all:
        result["profile"] = sylow_profile_bruteforce(G).to_json()
    if args.normalizers or want_all:
        norms = []
        for d in result.get("profile") or sylow_profile_bruteforce(G).to_json():
            P = sylow_subgroup(G, d["p"])
            norms.append({"p": d["p"], "normalizer_order": normalizer(G, P).order})
        result["normalizers"] = norms
    if args.center or want_all:
        result["center_order"] = center(G).order
    if args.solvable or want_all:
        result["solvable"] = is_solvable(G)
    if _fmt(args) == "json":
        return json.dumps(result, indent=2) + "\n"
    lines = [f"G = {result['expr']}  (degree {G.degree}, order {G.order})"]
    for d in result.get("profile", []):
        lines.append(f"  p={d['p']}: nu={d['nu']} sigma={d['sigma']}")
    for d in result.get("normalizers", []):
        lines.append(f"  |N_G(P_{d['p']})| = {d['normalizer_order']}")
    if "center_order" in result:
        lines.append(f"  |Z(G)| = {result['center_order']}")
    if "solvable" in result:
        lines.append(f"  solvable: {'yes' if result['solvable'] else 'no'}")
    return "\n".join(lines) + "\n"


def cmd_table(args) -> str:
    rows = tables.rows_for(args.which)
    fmt = _fmt(args)
    if fmt == "text":
        return tables.render_text(args.which, rows)
    recs = tables.to_records(args.which, rows)
    if fmt == "json":
        return json.dumps(recs, indent=2) + "\n"
    header = list(recs[0].keys())
    return _csv(header, [[" ".join(map(str, v)) if isinstance(v, list) else v for v in r.values()] for r in recs])


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sylowgamma", description="Sylow polynomial and gamma(G) toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def formats(p, csv_ok=True):
        grp = p.add_mutually_exclusive_group()
        grp.add_argument("--json", action="store_true")
        if csv_ok:
            grp.add_argument("--csv", action="store_true")

    p = sub.add_parser("gamma", help="gamma(G) with its per-prime breakdown")
    p.add_argument("expr")
    formats(p)
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("sylow", help="the Sylow polynomial SP(G, x)")
    p.add_argument("expr")
    formats(p, csv_ok=False)
    p.set_defaults(func=cmd_sylow)

    p = sub.add_parser("certify", help="verify an Egyptian-fraction certificate")
    p.add_argument("--target")
    p.add_argument("--set", help="comma-separated primes, q^e allowed (e.g. 7,11,13^2)")
    p.add_argument("--file", help="certificate file in the line format")
    p.add_argument("--forbid", help="comma-separated forbidden primes (default 2,3,5)")
    formats(p, csv_ok=False)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("search", help="enumerate certificates within bounds")
    p.add_argument("--target", required=True)
    p.add_argument("--max-prime", type=int, required=True)
    p.add_argument("--max-parts", type=int, required=True)
    p.add_argument("--max-exponent", type=int, default=1)
    p.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    p.add_argument("--forbid", help="comma-separated forbidden primes (default 2,3,5)")
    formats(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("oracle", help="brute-force permutation-group checks")
    p.add_argument("expr")
    p.add_argument("--profile", action="store_true")
    p.add_argument("--normalizers", action="store_true")
    p.add_argument("--center", action="store_true")
    p.add_argument("--solvable", action="store_true")
    formats(p, csv_ok=False)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("table", help="reproduce a reference table")
    p.add_argument("which", choices=tables.TABLES)
    formats(p)
    p.set_defaults(func=cmd_table)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except CrossCheckError as exc:
        print(f"internal cross-check failed: {exc}", file=sys.stderr)
        return EXIT_CROSSCHECK
    except Refusal as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (ValueError, ZeroDivisionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
