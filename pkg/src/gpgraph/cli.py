"""Command-line front end: ``gpgraph <subcommand> ...``.

Exit codes: 0 success, 2 a structural check failed, 64 usage or input error,
70 unexpected internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import golden, oracle
from .classify import classify, verdict_line
from .decompose import aut_descriptor, decompose, decomposition_report, waring_number
from .errors import GPGraphError, InternalTheoremViolation
from .finite_field import build_field, divisors, parse_modulus
from .gp_graph import LABEL_MODES, GPGraph, export_graph
from .spectra import character_spectrum, group_eigenvalues, spectra_match
from .sweep import CHECKS, SweepSpec, default_budget, rows_to_csv, rows_to_json, rows_to_markdown, run_sweep

EXIT_OK = 0
EXIT_VIOLATION = 2
EXIT_USAGE = 64
EXIT_INTERNAL = 70


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def load_moduli(path: Optional[str]) -> dict[tuple[int, int], tuple[int, ...]]:
    """Read ``p,m = polynomial`` (or ``p^m = ...``) lines; '#' comments and [sections] are ignored."""
    if not path:
        return {}
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line or line.startswith("["):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key, value = (part.strip().strip('"') for part in line.split("=", 1))
        sep = "^" if "^" in key else ","
        try:
            p, m = (int(x) for x in key.split(sep))
        except ValueError:
            raise UsageError(f"{path}:{lineno}: key must look like 'p,m' or 'p^m'") from None
        out[(p, m)] = tuple(parse_modulus(value))
    return out


def _field(args):
    modulus = parse_modulus(args.modulus) if getattr(args, "modulus", None) else None
    if modulus is None:
        modulus = load_moduli(getattr(args, "config", None)).get((args.p, args.m))
    return build_field(args.p, args.m, modulus)


def _graphs(args) -> list[GPGraph]:
    f = _field(args)
    ks = args.k if args.k else divisors(f.q - 1)
    return [GPGraph(f, k) for k in ks]


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _oracle_crosscheck(g: GPGraph, d) -> list[str]:
    dg = oracle.DenseGraph.from_gp(g)
    for mode in ("weak", "strong"):
        count = len(oracle.components(dg, mode))
        if count != d.component_count:
            raise InternalTheoremViolation(f"{mode} component count", f"{g.name}: BFS {count}, predicted {d.component_count}")
    notes = ["components"]
    coloring, _ = oracle.two_coloring(dg)
    if (coloring is not None) != (g.p == 2 and g.k == g.q - 1):
        raise InternalTheoremViolation("bipartiteness differs from 2-coloring", g.name)
    notes.append("2-coloring")
    if g.q <= oracle.EIGEN_ORDER_CAP:
        num = group_eigenvalues(oracle.numeric_eigenvalues(dg), "numeric_oracle", 1e-6)
        if not spectra_match(character_spectrum(g), num, 1e-6):
            raise InternalTheoremViolation("character spectrum differs from numeric eigenvalues", g.name)
        notes.append("spectrum")
    return notes


def cmd_analyze(args) -> int:
    for g in _graphs(args):
        d = decompose(g)
        c = classify(g, d)
        print(verdict_line(g, d, c))
        checked = _oracle_crosscheck(g, d) if args.oracle == "on" else []
        if args.json:
            doc = decomposition_report(d)
            doc["classification"] = c.to_dict(g)
            doc["spectrum"] = character_spectrum(g).to_dict()
            doc["oracle"] = checked
            print(json.dumps(doc, ensure_ascii=False))
    return EXIT_OK


def cmd_decompose(args) -> int:
    for g in _graphs(args):
        d = decompose(g)
        if args.json:
            print(json.dumps(decomposition_report(d), ensure_ascii=False))
            continue
        cg = d.component_graph
        print(f"{g.name}: n={d.n}, a={d.a}, k_a={d.k_a}, {d.component_count} component(s) ≅ {cg.name}")
        print(f"  Aut: {aut_descriptor(d)}")
        w = waring_number(g)
        print(f"  Waring number: {w if w is not None else 'does not exist'}")
        for c, rep in enumerate(d.coset_reps):
            members = " ".join(g.vertex_label(int(v), args.labels) for v in d.witnesses[c])
            print(f"  coset {g.vertex_label(rep, args.labels)}: {members}")
    return EXIT_OK


def cmd_spectrum(args) -> int:
    for g in _graphs(args):
        s = character_spectrum(g)
        if args.json:
            doc = s.to_dict()
            doc["graph"] = {"q": g.q, "k": g.k}
            print(json.dumps(doc))
        elif args.csv:
            sys.stdout.write(s.to_csv())
        else:
            entries = ", ".join(f"[{v.real:.6g}{v.imag:+.6g}i]^{mult}" if abs(v.imag) > s.tolerance
                                else f"[{v.real:.6g}]^{mult}" for v, mult in s.entries)
            print(f"Spec({g.name}) = {{{entries}}}")
    return EXIT_OK


def cmd_classify(args) -> int:
    for g in _graphs(args):
        d = decompose(g)
        c = classify(g, d)
        if args.json:
            print(json.dumps({"graph": g.name, **c.to_dict(g)}, ensure_ascii=False))
        else:
            print(verdict_line(g, d, c))
    return EXIT_OK


def cmd_export(args) -> int:
    if not args.k or len(args.k) != 1:
        raise UsageError("export needs exactly one -k")
    g = GPGraph(_field(args), args.k[0])
    fmt = "json" if args.json else "csv" if args.csv else "dot"
    data = export_graph(g, fmt, args.labels)
    if args.output:
        Path(args.output).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
    return EXIT_OK


def cmd_sweep(args) -> int:
    checks = set(args.checks.split(",")) if args.checks else {"decompose", "bipartite", "srg", "classify"}
    if args.oracle == "on":
        checks.add("oracle-crosscheck")
    spec = SweepSpec(
        p_list=tuple(args.primes),
        m_max=args.m_max,
        k_filter=tuple(args.k) if args.k else None,
        checks=frozenset(checks),
        budget=args.budget if args.budget is not None else default_budget(),
        moduli=load_moduli(args.config),
    )
    rows = run_sweep(spec, workers=args.workers)
    if args.json:
        text = rows_to_json(rows)
    elif args.csv:
        text = rows_to_csv(rows)
    else:
        text = rows_to_markdown(rows)
    _emit(text, args.output)
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    failed = 0
    total = 0
    for result in golden.run_all(quick=args.quick):
        total += 1
        failed += not result.ok
        print(result.line(), flush=True)
    print(f"{total - failed}/{total} claims verified")
    return EXIT_OK if failed == 0 else EXIT_VIOLATION


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gpgraph", description="Generalized Paley graphs Γ(k,q) over explicit finite fields.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_args(sp, k_required=False):
        sp.add_argument("-p", type=int, required=True, help="characteristic (prime)")
        sp.add_argument("-m", type=int, required=True, help="extension degree")
        sp.add_argument("-k", type=_int_list, required=k_required,
                        help="k or comma-separated list (default: every divisor of q-1)")
        sp.add_argument("--modulus", help="irreducible modulus, e.g. 'x^4+x+1' or '1,1,0,0,1'")
        sp.add_argument("--config", help="file of 'p,m = modulus' lines pinning moduli")
        sp.add_argument("--labels", choices=LABEL_MODES, default="poly", help="vertex naming")

    sp = sub.add_parser("analyze", help="verdict line and optional JSON report")
    graph_args(sp, k_required=True)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--oracle", choices=("on", "off"), default="on", help="brute-force cross-checks")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("decompose", help="connected components, witnesses, Aut and Waring number")
    graph_args(sp)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("spectrum", help="character-sum spectrum")
    graph_args(sp)
    fmt = sp.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("classify", help="named form, srg parameters and bipartiteness")
    graph_args(sp)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("export", help="write the graph as DOT, JSON or CSV edges")
    graph_args(sp, k_required=True)
    fmt = sp.add_mutually_exclusive_group()
    fmt.add_argument("--dot", action="store_true", help="Graphviz (default)")
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_export)

    sp = sub.add_parser("sweep", help="table over all k | p^m - 1")
    sp.add_argument("-p", dest="primes", type=_int_list, required=True, help="comma-separated primes")
    sp.add_argument("--m-max", type=int, required=True)
    sp.add_argument("-k", type=_int_list, help="only these k")
    sp.add_argument("--checks", help=f"comma-separated subset of {','.join(CHECKS)}")
    sp.add_argument("--oracle", choices=("on", "off"), default="off")
    sp.add_argument("--budget", type=int, help="maximum total number of vertices (env GPGRAPH_BUDGET)")
    sp.add_argument("--config", help="file of 'p,m = modulus' lines pinning moduli")
    sp.add_argument("--workers", type=int, default=1)
    fmt = sp.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    fmt.add_argument("--markdown", action="store_true", help="default")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_sweep)

    for name in ("verify-paper", "verify"):
        sp = sub.add_parser(name, help="run the reference tables and exhaustive sweeps")
        sp.add_argument("--quick", action="store_true", help="smaller sweeps")
        sp.set_defaults(func=cmd_verify_paper)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InternalTheoremViolation as exc:
        print(f"check failed: {exc.claim}: {exc.detail}", file=sys.stderr)
        return EXIT_VIOLATION
    except (GPGraphError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # pragma: no cover - last-resort guard
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
