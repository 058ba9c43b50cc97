"""Command-line front end.

Exit codes: 0 success, 1 analysis finding (imprecision, structural problem,
disabled step), 2 usage or input error, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import _kernel
from .diagnose import compare, diagnose_efficient, diagnose_exact, precision_check
from .errors import (
    BudgetExceeded,
    ConfigurationError,
    DisabledTransitionError,
    NetFormatError,
    NetStructureError,
)
from .explain import SearchBudget, enumerate_runs, explain_multiset, explain_ordered
from .net import enabled_set, fire_sequence
from .netfile import load_net
from .observation import prefixes, project, to_multiset

EXIT_OK, EXIT_FINDING, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_events(text: str) -> list[str]:
    """Split ``"A,B,E*3"`` into ``["A", "B", "E", "E", "E"]``."""
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        name, star, rep = tok.partition("*")
        if star:
            try:
                n = int(rep)
            except ValueError:
                raise UsageError(f"bad repetition {tok!r}") from None
            if n < 0:
                raise UsageError(f"bad repetition {tok!r}")
            out.extend([name.strip()] * n)
        else:
            out.append(name)
    return out


def _fmt_seq(names) -> str:
    return "[" + ",".join(names) + "]"


def _emit(args, payload, human):
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(human() + "\n")


def _budget(args) -> SearchBudget:
    return SearchBudget(args.max_unobs_segment, args.max_explanations)


def _trace_table(trace) -> str:
    lines = [f"mode: {trace.mode}   observation: {trace.observation}"]
    for row in trace.per_prefix:
        expl = " ".join(str(e) for e in row.explanations) or "-"
        lines.append(f"  o_{row.index:<3} {str(row.observation):<24} {row.verdict!s:<15} {expl}")
    lines.append(f"final: {trace.final}" + ("   (anomalous)" if trace.anomalous else ""))
    return "\n".join(lines)


# -- subcommands -----------------------------------------------------------------


def cmd_check(args, net):
    rep = net.structure
    payload = {
        "places": len(net.places),
        "transitions": len(net.transitions),
        "observable": [t.name for t in net.observable_ids],
        "fault": [t.name for t in net.fault_ids],
        "structure": rep.to_dict(),
    }

    def human():
        lines = [
            f"places: {len(net.places)}  transitions: {len(net.transitions)}",
            f"observable: {', '.join(payload['observable']) or '-'}",
            f"fault: {', '.join(payload['fault']) or '-'}",
            f"unobservable subnet acyclic: {'yes' if rep.acyclic else 'no'}",
        ]
        lines += [f"finding: {f}" for f in rep.findings]
        lines.append("status: " + ("ok" if rep.ok else "NOT DIAGNOSABLE AS GIVEN"))
        return "\n".join(lines)

    _emit(args, payload, human)
    return EXIT_OK if rep.ok else EXIT_FINDING


def cmd_simulate(args, net):
    seq = net.sequence(parse_events(args.seq))
    try:
        m = fire_sequence(net, net.initial, seq)
    except DisabledTransitionError as exc:
        payload = {
            "sequence": [t.name for t in seq],
            "error": "disabled",
            "step": exc.step,
            "transition": exc.transition.name,
            "marking": exc.marking.by_name(),
        }
        message = f"step {exc.step}: {exc.transition.name} is not enabled at {exc.marking}"
        _emit(args, payload, lambda: message)
        return EXIT_FINDING
    enabled = sorted(enabled_set(net, m))
    payload = {
        "sequence": [t.name for t in seq],
        "marking": m.by_name(),
        "enabled": [t.name for t in enabled],
    }
    _emit(args, payload, lambda: f"marking: {m}\nenabled: "
                                 + (", ".join(payload["enabled"]) or "-"))
    return EXIT_OK


def cmd_project(args, net):
    seq = net.sequence(parse_events(args.seq))
    o = project(net.labeling, seq)
    payload = {"sequence": [t.name for t in seq], "observation": list(o.names)}
    _emit(args, payload, lambda: str(o))
    return EXIT_OK


def cmd_explain(args, net):
    o = net.observation(parse_events(args.obs))
    targets = prefixes(o) if args.prefixes else [o]
    rows = []
    for oi in targets:
        if args.multiset:
            expl = explain_multiset(net, to_multiset(oi), _budget(args))
        else:
            expl = explain_ordered(net, oi, _budget(args))
        rows.append({
            "observation": list(oi.names),
            "explanations": [list(e.names) for e in expl],
            "faulty": [e.contains_fault for e in expl],
        })
    payload = {"semantics": "multiset" if args.multiset else "ordered", "results": rows}

    def human():
        lines = []
        for i, r in enumerate(rows):
            label = f"o_{i}" if args.prefixes else "o"
            body = ", ".join(
                _fmt_seq(e) + ("*" if f else "") for e, f in zip(r["explanations"], r["faulty"])
            )
            lines.append(f"{label} = {_fmt_seq(r['observation'])}: {body or '(none)'}")
        lines.append("(* marks explanations containing a fault)")
        return "\n".join(lines)

    _emit(args, payload, human)
    return EXIT_OK


def cmd_diagnose(args, net):
    o = net.observation(parse_events(args.obs))
    fn = diagnose_exact if args.mode == "exact" else diagnose_efficient
    trace = fn(net, o, _budget(args))
    _emit(args, trace.to_dict(), lambda: _trace_table(trace))
    return EXIT_OK


def cmd_compare(args, net):
    o = net.observation(parse_events(args.obs))
    exact, eff = compare(net, o, _budget(args))
    payload = {"exact": exact.to_dict(), "efficient": eff.to_dict(),
               "agree": exact.final == eff.final}
    _emit(args, payload, lambda: _trace_table(exact) + "\n\n" + _trace_table(eff))
    return EXIT_OK


def cmd_precision(args, net):
    rep = precision_check(net, args.bound, _budget(args), jobs=args.jobs)
    payload = rep.to_dict()

    def human():
        lines = [
            f"bound: {rep.bound}   observations explored: {rep.observations_explored}",
            f"diagnosable within bound: {'yes' if rep.diagnosable_within_bound else 'no'}",
            f"detection delay (observable events after the fault): "
            f"{'-' if rep.detection_delay is None else rep.detection_delay}",
            f"imprecision witnesses: {len(rep.imprecise_witnesses)}",
        ]
        for w in rep.imprecise_witnesses:
            lines.append(f"  run {_fmt_seq(t.name for t in w.run)}  obs {w.observation}  "
                         f"exact {w.exact}  efficient {w.efficient}")
        for u in rep.undetected:
            lines.append(f"  undetected: obs {u.observation} fault after {u.fault_after}")
        return "\n".join(lines)

    _emit(args, payload, human)
    return EXIT_FINDING if rep.imprecise_witnesses else EXIT_OK


def cmd_runs(args, net):
    runs = enumerate_runs(net, args.max_len)
    if args.exact_length:
        runs = [r for r in runs if len(r) == args.max_len]
    names = [[t.name for t in r] for r in runs]
    payload = {"max_len": args.max_len, "count": len(names), "runs": names}
    _emit(args, payload, lambda: "\n".join(_fmt_seq(r) for r in names)
          + f"\n({len(names)} runs)")
    return EXIT_OK


COMMANDS = {
    "check": cmd_check,
    "simulate": cmd_simulate,
    "project": cmd_project,
    "explain": cmd_explain,
    "diagnose": cmd_diagnose,
    "compare": cmd_compare,
    "precision": cmd_precision,
    "runs": cmd_runs,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--net", required=True,
                        help="net file (.net.json) or builtin:fig1")
    common.add_argument("--format", choices=["human", "json"], default="human")
    common.add_argument("--max-unobs-segment", type=int, default=None,
                        help="cap on consecutive unobservable firings (default 10 x places)")
    common.add_argument("--max-explanations", type=int, default=100_000)

    parser = _Parser(prog="petridiag", description="Petri net fault diagnosis")
    parser.add_argument("--kernel-info", action="store_true",
                        help="print the active search kernel and exit")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    sub.add_parser("check", parents=[common], help="structure report")
    p = sub.add_parser("simulate", parents=[common], help="fire a sequence")
    p.add_argument("--seq", required=True, help="comma-separated transition names")
    p = sub.add_parser("project", parents=[common], help="project a sequence")
    p.add_argument("--seq", required=True)
    p = sub.add_parser("explain", parents=[common], help="enumerate explanations")
    p.add_argument("--obs", required=True, help="e.g. A,B,D,E*3")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--ordered", dest="multiset", action="store_false")
    g.add_argument("--multiset", dest="multiset", action="store_true")
    p.set_defaults(multiset=False)
    p.add_argument("--prefixes", action="store_true", help="explain every prefix o_0..o_n")
    p = sub.add_parser("diagnose", parents=[common], help="diagnose an observation")
    p.add_argument("--obs", required=True)
    p.add_argument("--mode", choices=["exact", "efficient"], default="exact")
    p = sub.add_parser("compare", parents=[common], help="exact vs efficient side by side")
    p.add_argument("--obs", required=True)
    p = sub.add_parser("precision", parents=[common], help="bounded precision check")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p = sub.add_parser("runs", parents=[common], help="bounded run enumeration")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--exact-length", action="store_true",
                   help="only list runs of length exactly --max-len")
    return parser


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"petridiag: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if args.kernel_info:
        print(_kernel.backend_name())
        return EXIT_OK
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        net = load_net(args.net)
        return COMMANDS[args.command](args, net)
    except (NetFormatError, OSError) as exc:
        print(f"petridiag: cannot load net: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, NetStructureError, ConfigurationError, ValueError) as exc:
        print(f"petridiag: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"petridiag: {exc}", file=sys.stderr)
        return EXIT_BUDGET


def main(argv=None):
    sys.exit(run_cli(argv))
