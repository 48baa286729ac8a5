"""Command-line front end.

    adlv [--type A2] [--format F] [--b 1|pgl:n:r] [--budget N] [--seed S] [--jobs J] COMMAND ...

A bare Cartan type as the first word is accepted as a shorthand for --type,
so `adlv A2 eval s0` works.  Exit codes: 0 success or Nonempty, 1 Empty,
2 OutsideTheoremScope, 3 verification failure, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from concurrent.futures import ThreadPoolExecutor

from .affine import affine_group
from .demazure import star
from .parse import ParseError, parse_element
from .predict import EMPTY, NONEMPTY, OUTSIDE, RECORD_COLUMNS, parse_b, predict, prediction_record
from .reduction import DEFAULT_BUDGET, BudgetExceeded, build_reduction_tree, tilde_path, tilde_reachable
from .roots import UnsupportedTypeError
from .verify import DEFAULT_SEED, SUITES, run_suite

EXIT_OK, EXIT_EMPTY, EXIT_OUTSIDE, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2, 3, 64
STATUS_EXIT = {NONEMPTY: EXIT_OK, EMPTY: EXIT_EMPTY, OUTSIDE: EXIT_OUTSIDE}
DEFAULT_TYPE = "A2"
_TYPE_RE = re.compile(r"^[A-Ga-g]\d+$")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _global_flags(p, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--type", default=d(DEFAULT_TYPE), help="Cartan type, e.g. A2, B3, G2 (default A2)")
    p.add_argument("--format", choices=("json", "tsv", "dot", "text"), default=d(None),
                   help="output format (default depends on the command)")
    p.add_argument("--b", default=d("1"), help='basic class: "1" or "pgl:n:r" (default 1)')
    p.add_argument("--budget", type=int, default=d(DEFAULT_BUDGET), help="node budget for searches")
    p.add_argument("--seed", type=int, default=d(DEFAULT_SEED), help="seed for sampled checks")
    p.add_argument("--jobs", type=int, default=d(1), help="worker threads for sweeps")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="adlv", description="Affine Weyl group combinatorics for affine Deligne-Lusztig varieties.")
    _global_flags(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, help_):
        c = sub.add_parser(name, help=help_)
        _global_flags(c, suppress=True)
        return c

    c = cmd("eval", "print length, decomposition, eta, kappa and d(x)")
    c.add_argument("expr")
    c = cmd("predict", "emptiness and dimension prediction for basic b")
    c.add_argument("expr")
    c = cmd("sweep", "predictions for every element up to a length")
    c.add_argument("max_length", type=int)
    c.add_argument("--all-components", action="store_true",
                   help="include elements outside the connected component of b")
    c = cmd("tree", "reduction tree export")
    c.add_argument("expr")
    c = cmd("verify", "run verification suites")
    c.add_argument("suite", choices=list(SUITES) + ["all"])
    c.add_argument("vtype", nargs="?", metavar="TYPE")
    c.add_argument("bound", nargs="?", type=int)
    c = cmd("star", "Demazure product of two elements")
    c.add_argument("a")
    c.add_argument("b_expr", metavar="b")
    c = cmd("reachable", "~> closure of an element, or a path to --target")
    c.add_argument("expr")
    c.add_argument("--target")
    c.add_argument("--floor", type=int, default=0, help="do not expand below this length")
    return p


def _group(args):
    try:
        return affine_group(args.type.upper())
    except UnsupportedTypeError as e:
        raise UsageError(str(e))


def _elt(G, text):
    try:
        return parse_element(G, text)
    except ParseError as e:
        raise UsageError(f"cannot parse element:\n{e}")


def _frac(q) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _kappa_str(k) -> str:
    return ",".join(_frac(c) for c in k)


def _emit_records(records, fmt, out):
    if fmt == "json":
        out.write(json.dumps(records if isinstance(records, list) else records, indent=2) + "\n")
        return
    rows = records if isinstance(records, list) else [records]
    if fmt == "tsv":
        out.write("\t".join(RECORD_COLUMNS) + "\n")
        for r in rows:
            out.write("\t".join(_tsv_cell(r[c]) for c in RECORD_COLUMNS) + "\n")
        return
    for r in rows:
        out.write(" ".join(f"{c}={_tsv_cell(r[c])}" for c in RECORD_COLUMNS) + "\n")


def _tsv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return ";".join(v)
    return str(v)


def eval_data(x, b) -> dict:
    G = x.group
    d = G.canonical_decomposition(x)
    eta = G.eta(x)
    dim = G.virtual_dim(x, b) if G.kappa(x) == b.kappa else None
    return {
        "element": str(x),
        "word": G.word_str(x),
        "type": str(G.rs.type),
        "length": x.length,
        "decomposition": {"v": str(d.v), "mu": list(d.mu), "w": str(d.w)},
        "canonical": str(d),
        "eta1": str(G.eta1(x)),
        "eta2": str(d.v),
        "eta": str(eta),
        "eta_length": eta.length,
        "kappa": _kappa_str(G.kappa(x)),
        "in_affine_weyl": G.in_affine_weyl(x),
        "shrunken": G.is_shrunken(x),
        "defect": b.defect,
        "dim_times_2": None if dim is None else int(2 * dim),
        "d": None if dim is None else _frac(dim),
    }


def cmd_eval(args, G, b, out):
    x = _elt(G, args.expr)
    data = eval_data(x, b)
    if args.format == "json":
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        for k, v in data.items():
            if k == "decomposition":
                continue
            out.write(f"{k}: {_tsv_cell(v) if v is not None else '-'}\n")
    return EXIT_OK


def cmd_predict(args, G, b, out):
    x = _elt(G, args.expr)
    pred = predict(x, b)
    if G.kappa(x) != b.kappa:
        print(f"kappa(x) = {_kappa_str(G.kappa(x))} but kappa(b) = {_kappa_str(b.kappa)}: "
              "b and x are not in the same connected component, so X_x(b) is empty", file=sys.stderr)
    rec = prediction_record(x, b, pred)
    _emit_records(rec, args.format or "json", out)
    return STATUS_EXIT[pred.status]


def sweep_records(G, max_length, b, all_components=False, jobs=1) -> list[dict]:
    elts = G.enumerate(max_length)
    if not all_components:
        elts = [x for x in elts if G.kappa(x) == b.kappa]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(lambda x: prediction_record(x, b), elts))
    return [prediction_record(x, b) for x in elts]


def cmd_sweep(args, G, b, out):
    if args.max_length < 0:
        raise UsageError("max_length must be nonnegative")
    recs = sweep_records(G, args.max_length, b, args.all_components, max(1, args.jobs))
    _emit_records(recs, args.format or "tsv", out)
    return EXIT_OK


def tree_text(tree) -> str:
    lines = []
    seen = set()

    def walk(x, depth, label):
        n = tree.nodes[x]
        mark = " *" if n.minimal else ""
        ref = " (see above)" if x in seen and n.edges else ""
        lines.append(f"{'  ' * depth}{label}{x}  l={n.length} l(eta)={n.eta_length}{mark}{ref}")
        if x in seen:
            return
        seen.add(x)
        for m in n.edges:
            walk(m.target, depth + 1, f"[{m.label} +{m.increment}] ")
    walk(tree.root, 0, "")
    if tree.partial:
        lines.append("(partial: budget exhausted)")
    return "\n".join(lines) + "\n"


def cmd_tree(args, G, b, out):
    x = _elt(G, args.expr)
    tree = build_reduction_tree(x, args.budget)
    fmt = args.format or "dot"
    if fmt == "dot":
        out.write(tree.to_dot())
    elif fmt == "json":
        out.write(tree.to_json() + "\n")
    else:
        out.write(tree_text(tree))
    return EXIT_VERIFY if tree.partial else EXIT_OK


def cmd_verify(args, G, b, out):
    if args.vtype and args.vtype.isdigit() and args.bound is None:
        # `verify SUITE BOUND` with the type given globally
        args.vtype, args.bound = None, int(args.vtype)
    type_ = (args.vtype or args.type).upper()
    try:
        results = run_suite(args.suite, type_, args.bound, args.seed)
    except UnsupportedTypeError as e:
        raise UsageError(str(e))
    if args.format == "json":
        out.write(json.dumps([{
            "suite": r.name, "type": r.type, "bound": r.bound, "ok": r.ok, "checked": r.checked,
            "failures": r.failures, "notes": r.notes} for r in results], indent=2) + "\n")
    else:
        for r in results:
            out.write(r.summary() + "\n")
    return EXIT_OK if all(r.ok for r in results) else EXIT_VERIFY


def cmd_star(args, G, b, out):
    z = star(_elt(G, args.a), _elt(G, args.b_expr))
    if args.format == "json":
        out.write(json.dumps({"element": str(z), "word": G.word_str(z), "length": z.length}) + "\n")
    else:
        out.write(f"{z}\n")
    return EXIT_OK


def cmd_reachable(args, G, b, out):
    x = _elt(G, args.expr)
    if args.target:
        y = _elt(G, args.target)
        try:
            path = tilde_path(x, y, args.budget)
        except BudgetExceeded as e:
            print(str(e), file=sys.stderr)
            return EXIT_VERIFY
        if args.format == "json":
            out.write(json.dumps({"source": str(x), "target": str(y), "reachable": path is not None,
                                  "path": None if path is None else [
                                      {"move": m.label, "element": str(m.target)} for m in path]}, indent=2) + "\n")
        elif path is None:
            out.write(f"{y} is not reachable from {x}\n")
        else:
            out.write(f"{x}\n")
            for m in path:
                out.write(f"  -> [{m.label}] {m.target}\n")
        return EXIT_OK if path is not None else EXIT_VERIFY
    r = tilde_reachable(x, args.floor, args.budget)
    els = r.elements
    if args.format == "json":
        out.write(json.dumps({"source": str(x), "partial": r.partial,
                              "elements": [{"element": str(y), "length": y.length} for y in els]}, indent=2) + "\n")
    else:
        for y in els:
            out.write(f"{y.length}\t{y}\n")
        if r.partial:
            out.write("(partial: budget exhausted)\n")
    return EXIT_VERIFY if r.partial else EXIT_OK


COMMANDS = {
    "eval": cmd_eval, "predict": cmd_predict, "sweep": cmd_sweep, "tree": cmd_tree,
    "verify": cmd_verify, "star": cmd_star, "reachable": cmd_reachable,
}


def main(argv=None, out=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = out or sys.stdout
    if argv and _TYPE_RE.match(argv[0]):
        argv = ["--type", argv[0]] + argv[1:]
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            G = b = None
        else:
            G = _group(args)
            b = parse_b(args.b, G.rs)
        return COMMANDS[args.command](args, G, b, out)
    except (UsageError, ValueError) as e:
        print(f"adlv: error: {e}", file=sys.stderr)
        return EXIT_USAGE
