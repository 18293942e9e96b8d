"""Command line entry point.

Exit codes: 0 PASS/CONSISTENT, 1 FAIL/COUNTEREXAMPLE, 2 INCONCLUSIVE (or a
solver that did not converge), 3 usage, parse or I/O error.
"""

from __future__ import annotations

import argparse
import sys

from . import families as fam
from . import harness, surgery
from .enumeration import SupertreeClass, enumerate_supertrees, filter_class, rank_by_q
from .errors import BadParams, NoConvergence, SupertreeError
from .hypergraph import canonical_code, diameter, pendent_counts
from .io import ENUMERATE_COLUMNS, dumps_graph, load_graph, rows_to_csv, save_graph, to_json, write_text
from .spectral import SolverOptions, oracle_rayleigh_max, spectral_radius

EXIT_USAGE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _solver_flags(p):
    p.add_argument("--tol", type=float, default=1e-10, help="bracket width at convergence")
    p.add_argument("--max-iter", type=int, default=200_000)
    p.add_argument("--shift", type=float, default=None, help="power iteration shift (default 1 + max degree)")


def _output_flags(p, default_format="json"):
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default=default_format)


def _opts(args) -> SolverOptions:
    try:
        return SolverOptions(args.tol, args.max_iter, args.shift)
    except ValueError as exc:
        raise BadParams(str(exc)) from None


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        write_text(args.out, text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _kv(items) -> dict[str, str]:
    out = {}
    for item in items or []:
        for part in item.split():
            key, sep, value = part.partition("=")
            if not sep:
                raise BadParams(f"expected key=value, got {part!r}")
            out[key] = value
    return out


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v]
    except ValueError:
        raise BadParams(f"expected comma-separated integers, got {text!r}") from None


# -- families ---------------------------------------------------------------


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise BadParams(f"family {args.family} needs {', '.join(missing)}")
    return [getattr(args, n) for n in names]


def cmd_families_build(args) -> int:
    family = args.family
    if family in ("loose_path", "path"):
        G = fam.loose_path(*_need(args, "m", "k"))
    elif family in ("hyperstar", "star"):
        G = fam.hyperstar(*_need(args, "m", "k"))
    elif family in ("s1", "s2", "s3"):
        G = getattr(fam, family)(*_need(args, "m", "d", "k"))
    elif family == "s4":
        G = fam.s4(*_need(args, "m", "k"))
    elif family == "t1":
        G = fam.t1(*_need(args, "n", "p", "k"))
    elif family == "power":
        tree, k = _need(args, "tree", "k")
        pairs = [tuple(_int_list(e.replace("-", ","))) for e in tree.split(",") if e]
        G = fam.power_k(pairs, k)
    elif family == "bfs":
        if args.degrees is not None:
            pi = fam.DegreeSequence.of(_int_list(args.degrees), _need(args, "k")[0])
        else:
            pi = fam.pendant_degree_sequence(*_need(args, "n", "q", "k"))
        G, _ = fam.bfs_supertree(pi)
    else:  # argparse restricts choices
        raise BadParams(f"unknown family {family}")
    if args.out:
        save_graph(G, args.out)
    else:
        print(dumps_graph(G))
    return 0


# -- surgery ----------------------------------------------------------------


def _pairs(text: str) -> list[tuple[int, int]]:
    out = []
    for item in text.split(","):
        a, sep, b = item.partition(":")
        if not sep:
            raise BadParams(f"expected edge:vertex pairs, got {item!r}")
        out.append((int(a), int(b)))
    return out


def cmd_surgery_apply(args) -> int:
    G = load_graph(args.input)
    kv = _kv(args.args)

    def get(name):
        if name not in kv:
            raise BadParams(f"--op {args.op} needs {name}=...")
        return kv[name]

    try:
        if args.op == "move":
            H = surgery.move_edges(G, int(get("u")), _pairs(get("moves")))
        elif args.op == "release":
            H = surgery.edge_release(G, int(get("e")), int(get("u")))
        elif args.op == "collapse":
            keep = _int_list(get("keep"))
            if len(keep) != 2:
                raise BadParams("keep takes exactly two vertices")
            H = surgery.branch_collapse(G, int(get("e")), (keep[0], keep[1]))
        elif args.op == "switch":
            H = surgery.two_switch(G, int(get("e")), int(get("f")), _int_list(get("U1")), _int_list(get("V1")))
        else:
            H = surgery.graft_step(G, int(get("u")), int(get("p")), int(get("q")))
    except (ValueError, IndexError) as exc:
        if isinstance(exc, SupertreeError):
            raise
        raise BadParams(f"bad surgery arguments: {exc}") from None
    if args.out:
        save_graph(H, args.out)
    else:
        print(dumps_graph(H))
    return 0


# -- spectral ---------------------------------------------------------------


def cmd_spectral_solve(args) -> int:
    G = load_graph(args.input)
    opts = _opts(args)
    try:
        res = spectral_radius(G, args.tensor, opts)
    except NoConvergence as exc:
        print(f"no convergence: {exc}", file=sys.stderr)
        return 2
    out = res.to_dict()
    out["solver"] = opts.to_dict()
    if args.oracle:
        out["oracle_rayleigh_max"] = oracle_rayleigh_max(G, restarts=args.oracle, tensor=args.tensor)
    _emit(args, to_json(out))
    return 0


# -- enumerate --------------------------------------------------------------


def enumerate_rows(m: int, k: int, selector: SupertreeClass, rank: bool, opts: SolverOptions,
                   allow_large: bool = False) -> list[dict]:
    max_d = selector.value if selector.kind == "diameter" else None
    graphs = filter_class(enumerate_supertrees(m, k, max_diameter=max_d, allow_large=allow_large), selector)
    rows = []
    if rank:
        ordered = [(r.graph, r.result, r.group) for r in rank_by_q(graphs, opts)]
    else:
        ordered = [(T, None, None) for T in graphs]
    for T, res, group in ordered:
        p, q = pendent_counts(T)
        row = {"code": str(canonical_code(T)), "n": T.n, "m": T.m, "d": diameter(T), "p": p, "q_pendent": q}
        if res is not None:
            row.update(q_value=res.value, lower=res.lower, upper=res.upper, iterations=res.iterations,
                       tie_group=group)
        else:
            row.update(q_value="", lower="", upper="", iterations="")
        rows.append(row)
    return rows


def cmd_enumerate(args) -> int:
    selector = SupertreeClass.parse(args.cls)
    rows = enumerate_rows(args.m, args.k, selector, args.rank, _opts(args), args.allow_large)
    if args.format == "csv":
        _emit(args, rows_to_csv(rows, ENUMERATE_COLUMNS))
    else:
        _emit(args, to_json(rows))
    print(f"{len(rows)} supertrees (m={args.m}, k={args.k}, class={args.cls})", file=sys.stderr)
    return 0


# -- verify / scan ----------------------------------------------------------


def _report_out(args, report) -> int:
    if args.format == "csv":
        _emit(args, rows_to_csv(report.rows))
    else:
        _emit(args, to_json(report))
    print(report.summary(), file=sys.stderr)
    return report.exit_code


def cmd_verify(args) -> int:
    params = harness.parse_grid(" ".join(args.grid)) if args.grid else {}
    report = harness.verify(args.claim, params, _opts(args), seed=args.seed)
    return _report_out(args, report)


def cmd_conjecture_scan(args) -> int:
    d_values = harness.parse_values(args.d)
    k_values = harness.parse_values(args.k)
    report = harness.conjecture_scan(d_values, lambda d: harness.parse_values(args.m, {"d": d}),
                                     k_values, _opts(args))
    return _report_out(args, report)


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="supertrees", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    families = sub.add_parser("families", help="build a named supertree")
    fsub = families.add_subparsers(dest="action", required=True, parser_class=_Parser)
    b = fsub.add_parser("build", help="write a family member as JSON")
    b.add_argument("--family", required=True,
                   choices=("loose_path", "path", "hyperstar", "star", "s1", "s2", "s3", "s4", "t1", "power", "bfs"))
    for flag in ("m", "d", "k", "n", "p", "q"):
        b.add_argument(f"--{flag}", type=int)
    b.add_argument("--degrees", help="comma-separated degree sequence (family bfs)")
    b.add_argument("--tree", help="tree edges for family power, e.g. 0-1,1-2")
    b.add_argument("--out")
    b.set_defaults(func=cmd_families_build)

    surg = sub.add_parser("surgery", help="apply a graph transformation")
    ssub = surg.add_subparsers(dest="action", required=True, parser_class=_Parser)
    a = ssub.add_parser("apply")
    a.add_argument("--op", required=True, choices=("move", "release", "collapse", "switch", "graft"))
    a.add_argument("--in", dest="input", required=True)
    a.add_argument("--args", nargs="*", default=[],
                   help="key=value items: move u= moves=e:v,...; release e= u=; collapse e= keep=a,b; "
                        "switch e= f= U1=.. V1=..; graft u= p= q=")
    a.add_argument("--out")
    a.set_defaults(func=cmd_surgery_apply)

    solve_cmd = sub.add_parser("spectral", help="spectral radius of a graph file")
    psub = solve_cmd.add_subparsers(dest="action", required=True, parser_class=_Parser)
    s = psub.add_parser("solve")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--tensor", choices=("Q", "A"), default="Q")
    s.add_argument("--oracle", type=int, default=0, metavar="RESTARTS",
                   help="also run the gradient-ascent oracle with this many restarts")
    _solver_flags(s)
    s.add_argument("--out")
    s.set_defaults(func=cmd_spectral_solve)

    e = sub.add_parser("enumerate", help="all supertrees with m edges, optionally filtered and ranked")
    e.add_argument("--m", type=int, required=True)
    e.add_argument("--k", type=int, required=True)
    e.add_argument("--class", dest="cls", default="all",
                   help="all | diameter=D | p=P | q=Q | degrees=3,2,1,...")
    e.add_argument("--rank", action="store_true", help="solve and sort by q")
    e.add_argument("--allow-large", action="store_true", help="lift the m(k-1) <= 40 guard rail")
    _solver_flags(e)
    _output_flags(e, "csv")
    e.set_defaults(func=cmd_enumerate)

    v = sub.add_parser("verify", help="check one claim over a grid")
    v.add_argument("--claim", required=True, choices=sorted(harness.CLAIMS))
    v.add_argument("--grid", nargs="*", default=[], help='e.g. "k=3,4" "d=3..5" "m=d+1..d+3"')
    v.add_argument("--seed", type=int, default=0)
    _solver_flags(v)
    _output_flags(v)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("conjecture-scan", help="is S2 second in S(m,d,k)?")
    c.add_argument("--d", required=True, help="e.g. 4..5")
    c.add_argument("--m", required=True, help="e.g. d+1..d+2")
    c.add_argument("--k", default="3")
    c.add_argument("--seed", type=int, default=0, help="unused; accepted for symmetry with verify")
    _solver_flags(c)
    _output_flags(c, "csv")
    c.set_defaults(func=cmd_conjecture_scan)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help, or a usage error already reported
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except NoConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SupertreeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
