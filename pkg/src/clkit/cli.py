"""Command-line front end.

Exit codes: 0 positive verdict, 1 negative verdict, 2 usage/parse error,
3 resource cap exceeded. Reports are key=value lines with deterministic
content; wall time is only included with --timing, so that identical inputs
produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import base_domain as bd
from . import boundedness, entailment, sat_analysis, semantics, syntax, tightness
from .errors import (CapExceededError, ClkitError, ParseError,
                     PreconditionError, UnboundedInstanceError,
                     ValidationError)

EXIT_POSITIVE = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def _cap(args) -> int:
    if getattr(args, "cap", None):
        return args.cap
    env = os.environ.get("CLKIT_CAP")
    if env:
        return int(env)
    return sat_analysis.DEFAULT_CAP


def _load(path: str) -> syntax.SID:
    with open(path, "r", encoding="utf-8") as fh:
        return syntax.parse_sid(fh.read())


class Report:
    def __init__(self, command: str):
        self.lines = [("command", command)]
        self.t0 = time.monotonic()

    def add(self, key, value):
        self.lines.append((key, value))

    def add_metrics(self, sid):
        m = syntax.sid_metrics(sid)
        self.add("size", m.size)
        self.add("max_arity", m.max_arity)
        self.add("width", m.width)
        self.add("max_inter_size", m.max_inter_size)

    def emit(self, timing: bool):
        if timing:
            self.add("wall_ms", int((time.monotonic() - self.t0) * 1000))
        for k, v in self.lines:
            print(f"{k}={v}")


def _trace_printer(enabled: bool):
    if not enabled:
        return None

    def trace(iteration, pred, t, rule_index):
        print(f"iter={iteration} pred={pred} tuple={bd.format_tuple(t)} "
              f"rule=r{rule_index + 1}")
    return trace


def cmd_sat(args) -> int:
    sid = _load(args.file)
    sid.arity(args.pred)  # fail fast on a typo before the fixpoint runs
    rep = Report(f"sat {args.file} {args.pred}")
    rep.add_metrics(sid)
    sol = sat_analysis.least_solution(sid, cap=_cap(args),
                                      trace=_trace_printer(args.trace_fixpoint))
    sat = sat_analysis.decide_sat(sid, args.pred, solution=sol)
    rep.add("verdict", "SAT" if sat else "UNSAT")
    rep.add("iterations", sol.iterations)
    rep.add("tuples", sol.tuple_count)
    if args.witness and sat:
        g, store = sat_analysis.witness_model(sid, args.pred, solution=sol)
        rep.add("witness", semantics.format_model(
            g, store, sid.params_of(args.pred)))
    rep.emit(args.timing)
    return EXIT_POSITIVE if sat else EXIT_NEGATIVE


def cmd_tight(args) -> int:
    sid = _load(args.file)
    rep = Report(f"tight {args.file} {args.pred}")
    rep.add_metrics(sid)
    red = tightness.build_loose_sid(sid, args.pred)
    if args.emit_reduction:
        with open(args.emit_reduction, "w", encoding="utf-8") as fh:
            fh.write(syntax.print_sid(red.sid))
        rep.add("artifact", args.emit_reduction)
    loose = sat_analysis.decide_sat(red.sid, red.loose_pred, cap=_cap(args))
    rep.add("verdict", "LOOSE" if loose else "TIGHT")
    rep.emit(args.timing)
    return EXIT_NEGATIVE if loose else EXIT_POSITIVE


def _graph_dot(primed, graph) -> str:
    names = {}
    for i, v in enumerate(sorted(graph.vertices,
                                 key=lambda v: (v[0], bd.format_tuple(v[1])))):
        names[v] = f"v{i}"
    out = ["digraph dependencies {"]
    for v in sorted(names, key=lambda v: names[v]):
        label = f"{v[0]} {bd.format_tuple(v[1])}".replace('"', "'")
        out.append(f'  {names[v]} [label="{label}"];')
    for src, (ri, pos), dst in sorted(
            graph.edges, key=lambda e: (names[e[0]], e[1], names[e[2]])):
        style = ' style=bold color=red' if primed.tag_of(ri).kind == "bound" else ""
        out.append(f'  {names[src]} -> {names[dst]} '
                   f'[label="r{ri + 1}#{pos}"{style}];')
    out.append("}")
    return "\n".join(out) + "\n"


def cmd_bounded(args) -> int:
    sid = _load(args.file)
    rep = Report(f"bounded {args.file} {args.pred}")
    rep.add_metrics(sid)
    primed = boundedness.build_primed_sid(sid)
    graph = boundedness.build_dependency_graph(primed.sid, cap=_cap(args))
    if args.emit_graph:
        with open(args.emit_graph, "w", encoding="utf-8") as fh:
            fh.write(_graph_dot(primed, graph))
        rep.add("artifact", args.emit_graph)
    unbounded = boundedness._has_bound_cycle(primed, graph, args.pred)
    rep.add("verdict", "UNBOUNDED" if unbounded else "BOUNDED")
    rep.add("vertices", len(graph.vertices))
    rep.add("edges", len(graph.edges))
    if args.cutoff and not unbounded:
        report = boundedness.cutoff_report(sid, args.pred, cap=_cap(args))
        rep.add("cutoff", report.value)
        if args.verbose:
            rep.add("cutoff_formula_bound", report.formula_bound)
            rep.add("cutoff_graph_bound", report.graph_bound)
    rep.emit(args.timing)
    return EXIT_NEGATIVE if unbounded else EXIT_POSITIVE


def cmd_entail(args) -> int:
    sid = _load(args.file)
    rep = Report(f"entail {args.file} {args.lhs} {args.rhs}")
    rep.add_metrics(sid)
    if args.emit_sl:
        bound = boundedness.degree_cutoff(sid, args.lhs, cap=_cap(args))
        bound = max(1, min(bound, args.sl_bound))
        slsid = entailment.annotate_sid(sid, bound, cap=_cap(args))
        with open(args.emit_sl, "w", encoding="utf-8") as fh:
            fh.write(entailment.emit_sl_text(slsid))
        rep.add("artifact", args.emit_sl)
        rep.add("sl_bound", bound)
        rep.add("sl_rules", len(slsid.rules))
    budget = semantics.ModelBudget(args.depth, args.universe)
    verdict = entailment.decide_entail_bounded(sid, args.lhs, args.rhs, budget)
    rep.add("direction", verdict.direction)
    rep.add("models_checked", verdict.models_checked)
    if verdict.holds:
        rep.add("verdict",
                f"ENTAILS-UP-TO-BOUND(depth={args.depth},universe={args.universe})")
    else:
        g, store = verdict.counterexample
        rep.add("verdict", "COUNTEREXAMPLE")
        rep.add("counterexample", semantics.format_model(
            g, store, sid.params_of(args.lhs)))
    rep.emit(args.timing)
    return EXIT_POSITIVE if verdict.holds else EXIT_NEGATIVE


def cmd_models(args) -> int:
    sid = _load(args.file)
    rep = Report(f"models {args.file} {args.pred}")
    rep.add_metrics(sid)
    budget = semantics.ModelBudget(args.depth, args.universe,
                                   args.enumerate_states)
    count = 0
    lines = []
    for g, store in semantics.enumerate_models(sid, args.pred, budget):
        lines.append(semantics.format_model(g, store, sid.params_of(args.pred)))
        count += 1
        if args.limit and count >= args.limit:
            break
    rep.add("models", count)
    rep.emit(args.timing)
    for line in lines:
        print(line)
    return EXIT_POSITIVE


def cmd_check(args) -> int:
    sid = _load(args.file)
    rep = Report(f"check {args.file}")
    rep.add_metrics(sid)
    cls = entailment.classify_rules(sid)
    for pred, _arity in sid.decls:
        prof = ",".join(str(i) for i in sorted(cls.profile[pred]))
        rep.add(f"profile.{pred}", "{" + prof + "}")
    for i, flags in enumerate(cls.per_rule):
        rep.add(f"rule.r{i + 1}",
                f"progressing={flags.progressing} connected={flags.connected} "
                f"e_restricted={flags.e_restricted}")
    rep.add("sid_progressing", cls.progressing)
    rep.add("sid_connected", cls.connected)
    rep.add("sid_e_restricted", cls.e_restricted)
    rep.emit(args.timing)
    return EXIT_POSITIVE


def cmd_gen(args) -> int:
    params = {}
    if args.kind == "ring":
        params = {"h_cap": args.h_cap, "t_cap": args.t_cap}
    elif args.kind == "worstcase":
        params = {"n": args.n}
    sid = syntax.generate_family(args.kind, **params)
    text = syntax.print_sid(sid)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text, end="")
    return EXIT_POSITIVE


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="clkit",
                                 description=__doc__.splitlines()[0])

    def common(sp, pred=True):
        sp.add_argument("file")
        if pred:
            sp.add_argument("pred")
        sp.add_argument("--cap", type=int, default=None,
                        help="resource cap on generated base tuples")
        sp.add_argument("--timing", action="store_true",
                        help="append wall_ms to the report")

    sub = ap.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("sat", help="decide satisfiability of a predicate")
    common(sp)
    sp.add_argument("--trace-fixpoint", action="store_true")
    sp.add_argument("--witness", action="store_true",
                    help="print a reconstructed model when satisfiable")
    sp.set_defaults(fn=cmd_sat)

    sp = sub.add_parser("tight", help="decide tightness of a predicate")
    common(sp)
    sp.add_argument("--emit-reduction", metavar="OUT.sid")
    sp.set_defaults(fn=cmd_tight)

    sp = sub.add_parser("bounded", help="decide degree boundedness")
    common(sp)
    sp.add_argument("--cutoff", action="store_true")
    sp.add_argument("--verbose", action="store_true")
    sp.add_argument("--emit-graph", metavar="OUT.dot")
    sp.set_defaults(fn=cmd_bounded)

    sp = sub.add_parser("entail", help="bounded entailment between predicates")
    sp.add_argument("file")
    sp.add_argument("lhs")
    sp.add_argument("rhs")
    sp.add_argument("--cap", type=int, default=None)
    sp.add_argument("--timing", action="store_true")
    sp.add_argument("--depth", type=int, default=6)
    sp.add_argument("--universe", type=int, default=6)
    sp.add_argument("--emit-sl", metavar="OUT.sl")
    sp.add_argument("--sl-bound", type=int, default=2,
                    help="cap on the degree bound used for the SL emission")
    sp.set_defaults(fn=cmd_entail)

    sp = sub.add_parser("models", help="dump bounded models of a predicate")
    common(sp)
    sp.add_argument("--depth", type=int, default=4)
    sp.add_argument("--universe", type=int, default=4)
    sp.add_argument("--limit", type=int, default=0)
    sp.add_argument("--enumerate-states", action="store_true")
    sp.set_defaults(fn=cmd_models)

    sp = sub.add_parser("check", help="print profile, rule classes, metrics")
    common(sp, pred=False)
    sp.set_defaults(fn=cmd_check)

    sp = sub.add_parser("gen", help="generate a SID family")
    sp.add_argument("kind", choices=["ring", "star", "worstcase"])
    sp.add_argument("--h-cap", type=int, default=1)
    sp.add_argument("--t-cap", type=int, default=1)
    sp.add_argument("-n", type=int, default=2)
    sp.add_argument("-o", "--output")
    sp.set_defaults(fn=cmd_gen)

    return ap


def main(argv=None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except CapExceededError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except (ParseError, ValidationError, PreconditionError,
            UnboundedInstanceError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ClkitError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
