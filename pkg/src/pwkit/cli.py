"""Command-line surface.

Exit codes: 0 success (or decision yes), 1 decision no / failed check,
2 usage or parse error, 3 oracle cap exceeded.  Reports are tab-separated
key/value lines and are byte-identical across runs for identical inputs
when --no-timings is given.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import auditing, composition, figures, formats, oracles, rules
from .decompositions import (
    PathDecomposition,
    decomposition_width,
    validate_path_decomposition,
    validate_tree_decomposition,
)
from .errors import CapExceededError, PwkitError
from .graph import Instance, WeightedGraph
from .kernels import DEFAULT_CONSTANTS, DecidedNo, DecidedYes, KernelConstants

EXIT_YES = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pwkit",
        description="Pathwidth preprocessing toolkit: exact width oracles, safe "
                    "reduction rules, kernelizers, and the cutwidth composition gadget.",
    )
    parser.add_argument("--config", help="JSON file with oracle caps and audit constants")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="compute an exact width measure with certificate")
    p.add_argument("--measure", required=True,
                   choices=["pathwidth", "treewidth", "cutwidth", "weighted-treewidth"])
    p.add_argument("--cap", type=int, help="override the solver's vertex cap")
    p.add_argument("--no-timings", action="store_true")
    p.add_argument("file")

    p = sub.add_parser("reduce", help="exhaustively apply reduction rules")
    p.add_argument("--rules", help="comma-separated subset, e.g. R1,R2,R4 (default: all but R3G)")
    p.add_argument("--rule7-filter", choices=["star"],
                   help="restrict R7 to vertices with at most one neighbor outside S")
    p.add_argument("--trace", help="write the rule trace to this file instead of stdout")
    p.add_argument("--no-timings", action="store_true")
    p.add_argument("file")

    p = sub.add_parser("kernelize", help="run a kernelization pipeline")
    p.add_argument("--family", required=True, help="vc, bounded:<c>, or stars")
    p.add_argument("--no-timings", action="store_true")
    p.add_argument("file")

    p = sub.add_parser("compose", help="build the cutwidth composition gadget")
    p.add_argument("--out", help="write the gadget dump to this file")
    p.add_argument("--no-timings", action="store_true")
    p.add_argument("files", nargs="+")

    p = sub.add_parser("verify-composition",
                       help="check the OR-equivalence of a composed batch")
    p.add_argument("--fast-cap", type=int, help="cap for the co-bipartite fast path")
    p.add_argument("--no-timings", action="store_true")
    p.add_argument("files", nargs="+")

    p = sub.add_parser("validate-decomposition", help="validate a certificate file")
    p.add_argument("--graph", required=True)
    p.add_argument("--decomposition", required=True)
    p.add_argument("--no-timings", action="store_true")

    p = sub.add_parser("audit", help="audit kernelizer counting bounds on random instances")
    p.add_argument("--family", required=True, help="vc, bounded:<c>, or stars")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the per-instance table to this file")
    p.add_argument("--figures", help="directory for rendered figures")
    p.add_argument("--no-timings", action="store_true")
    return parser


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    with open(path) as fh:
        return json.load(fh)


def _read(path: str) -> str:
    with open(path) as fh:
        return fh.read()


def _emit(report: formats.Report, args, started: float, extra: str = "") -> None:
    if not getattr(args, "no_timings", False):
        report.add("elapsed-ms", round(1000 * (time.perf_counter() - started), 1))
    sys.stdout.write(report.render())
    if extra:
        sys.stdout.write(extra)


def _cap(config: dict, name: str, override: int | None, default: int) -> int:
    if override is not None:
        return override
    return config.get("caps", {}).get(name, default)


def _constants(config: dict) -> KernelConstants:
    overrides = config.get("kernel_constants", {})
    if not overrides:
        return DEFAULT_CONSTANTS
    base = DEFAULT_CONSTANTS.__dict__ | overrides
    return KernelConstants(**base)


def _cmd_solve(args, config) -> int:
    started = time.perf_counter()
    text = _read(args.file)
    parsed = formats.read_instance_file(text)
    g = parsed.payload.graph
    k = parsed.payload.target
    report = formats.Report()
    report.add("command", "solve").add("input", formats.digest(text))
    report.add("measure", args.measure)
    certificate = ""
    if args.measure == "pathwidth":
        width, pd = oracles.pathwidth_exact(g, cap=_cap(config, "pathwidth", args.cap,
                                                        oracles.DEFAULT_CAP))
        certificate = formats.serialize_decomposition(g, pd)
    elif args.measure == "treewidth":
        width, ordering = oracles.treewidth_exact(g, cap=_cap(config, "treewidth", args.cap,
                                                              oracles.DEFAULT_CAP))
        certificate = formats.serialize_ordering(g, ordering)
    elif args.measure == "cutwidth":
        width, layout = oracles.cutwidth_exact(g, cap=_cap(config, "cutwidth", args.cap,
                                                           oracles.DEFAULT_CUTWIDTH_CAP))
        certificate = formats.serialize_ordering(g, layout)
    else:
        weights = parsed.weights or tuple([1] * g.n)
        width, ordering = oracles.weighted_treewidth_exact(
            WeightedGraph(g, weights),
            cap=_cap(config, "weighted_treewidth", args.cap, oracles.DEFAULT_CAP),
        )
        certificate = formats.serialize_ordering(g, ordering)
    decision = "yes" if width <= k else "no"
    report.add("width", width).add("k", k).add("decision", decision)
    _emit(report, args, started, certificate)
    return EXIT_YES if decision == "yes" else EXIT_NO


def _parse_rule_set(text: str | None) -> set[rules.RuleId] | None:
    if text is None:
        return None
    try:
        return {rules.RuleId(tok.strip().upper()) for tok in text.split(",") if tok.strip()}
    except ValueError as exc:
        raise PwkitError(f"unknown rule id in --rules: {exc}") from None


def _star_filter(inst: Instance, v: int) -> bool:
    return sum(1 for u in inst.graph.adj[v] if u not in inst.modulator) <= 1


def _cmd_reduce(args, config) -> int:
    started = time.perf_counter()
    text = _read(args.file)
    parsed = formats.read_instance_file(text)
    if not isinstance(parsed.payload, Instance):
        raise PwkitError("reduce expects a modulator instance, not a cutwidth instance")
    enabled = _parse_rule_set(args.rules)
    filt = _star_filter if args.rule7_filter == "star" else None
    outcome = rules.exhaustive_reduce(parsed.payload, enabled=enabled, rule7_filter=filt)
    report = formats.Report()
    report.add("command", "reduce").add("input", formats.digest(text))
    trace_text = formats.serialize_trace(outcome.trace)
    if args.trace:
        with open(args.trace, "w") as fh:
            fh.write(trace_text)
        report.add("trace", args.trace)
    else:
        report.add("trace", "inline")
    extra = "" if args.trace else trace_text
    if isinstance(outcome, DecidedNo):
        report.add("outcome", "no").add("applications", len(outcome.trace))
        _emit(report, args, started, extra)
        return EXIT_NO
    report.add("outcome", "reduced").add("applications", len(outcome.trace))
    report.add("vertices", outcome.instance.graph.n)
    _emit(report, args, started, extra + formats.serialize_instance(outcome.instance))
    return EXIT_YES


def _cmd_kernelize(args, config) -> int:
    started = time.perf_counter()
    text = _read(args.file)
    parsed = formats.read_instance_file(text)
    if not isinstance(parsed.payload, Instance):
        raise PwkitError("kernelize expects a modulator instance")
    spec = auditing.FamilySpec.parse(args.family)
    result = auditing.kernelize_for(spec, parsed.payload, _constants(config), strict=False)
    report = formats.Report()
    report.add("command", "kernelize").add("input", formats.digest(text))
    report.add("family", args.family)
    outcome = {DecidedYes: "yes", DecidedNo: "no"}.get(type(result.outcome), "reduced")
    report.add("outcome", outcome).add("applications", result.applications)
    report.add("bound-ok", str(result.bound_ok).lower())
    report.add("bound", result.bound_formula)
    for violation in result.violations:
        report.add("violation", violation)
    extra = formats.serialize_trace(getattr(result.outcome, "trace", ()))
    if outcome == "reduced":
        report.add("vertices", result.stats.vertices)
        extra += formats.serialize_instance(result.outcome.instance)
    _emit(report, args, started, extra)
    if outcome == "no":
        return EXIT_NO
    return EXIT_YES if result.bound_ok else EXIT_NO


def _parse_batch(paths: list[str]) -> tuple[list[composition.Cutwidth3Instance], str]:
    insts = []
    digest_parts = []
    for path in paths:
        text = _read(path)
        payload = formats.parse_instance(text)
        if not isinstance(payload, composition.Cutwidth3Instance):
            raise PwkitError(f"{path}: composition inputs must carry 'f cutwidth3'")
        insts.append(payload)
        digest_parts.append(formats.digest(text))
    return insts, formats.digest("".join(digest_parts))


def _cmd_compose(args, config) -> int:
    started = time.perf_counter()
    insts, digest = _parse_batch(args.files)
    prepared = composition.prepare_batch(
        insts, cutwidth_cap=_cap(config, "cutwidth", None, oracles.DEFAULT_CUTWIDTH_CAP))
    report = formats.Report()
    report.add("command", "compose").add("input", digest)
    if isinstance(prepared, composition.Solved):
        report.add("outcome", "solved")
        report.add("answer", "yes" if prepared.answer else "no")
        _emit(report, args, started)
        return EXIT_YES if prepared.answer else EXIT_NO
    ci = composition.compose(prepared)
    dump = formats.serialize_composed(ci)
    report.add("outcome", "composed").add("t", ci.t).add("n", ci.n)
    report.add("kprime", ci.kprime)
    report.add("vertices", ci.gadget.graph.n)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(dump)
        report.add("gadget", args.out)
        _emit(report, args, started)
    else:
        report.add("gadget", "inline")
        _emit(report, args, started, dump)
    return EXIT_YES


def _cmd_verify_composition(args, config) -> int:
    started = time.perf_counter()
    insts, digest = _parse_batch(args.files)
    report = formats.Report()
    report.add("command", "verify-composition").add("input", digest)
    prepared = composition.prepare_batch(
        insts, cutwidth_cap=_cap(config, "cutwidth", None, oracles.DEFAULT_CUTWIDTH_CAP))
    if isinstance(prepared, composition.Solved):
        report.add("outcome", "solved")
        report.add("answer", "yes" if prepared.answer else "no")
        _emit(report, args, started)
        return EXIT_YES if prepared.answer else EXIT_NO
    ci = composition.compose(prepared)
    verdict = composition.verify_composition(
        ci, insts,
        fast_path_cap=_cap(config, "verify_fast_path", args.fast_cap, len(ci.a_side)),
        cutwidth_cap=_cap(config, "cutwidth", None, oracles.DEFAULT_CUTWIDTH_CAP),
    )
    report.add("outcome", "verified")
    report.add("equivalent", str(verdict.equivalent).lower())
    report.add("weighted-treewidth", verdict.weighted_treewidth)
    report.add("kprime", verdict.kprime)
    report.add("composed-answer", "yes" if verdict.composed_yes else "no")
    report.add("inputs-answer", "yes" if verdict.inputs_yes else "no")
    report.add("cutwidths", ",".join(map(str, verdict.cutwidths)))
    _emit(report, args, started)
    return EXIT_YES if verdict.equivalent else EXIT_NO


def _cmd_validate_decomposition(args, config) -> int:
    started = time.perf_counter()
    graph_text = _read(args.graph)
    payload = formats.parse_instance(graph_text)
    g = payload.graph
    dec_text = _read(args.decomposition)
    dec = formats.parse_decomposition(dec_text, g)
    if isinstance(dec, PathDecomposition):
        verdict = validate_path_decomposition(g, dec)
    else:
        verdict = validate_tree_decomposition(g, dec)
    report = formats.Report()
    report.add("command", "validate-decomposition")
    report.add("input", formats.digest(graph_text + dec_text))
    report.add("valid", str(verdict.ok).lower())
    report.add("detail", verdict.message)
    if verdict.ok:
        report.add("width", decomposition_width(dec))
    _emit(report, args, started)
    return EXIT_YES if verdict.ok else EXIT_NO


def _cmd_audit(args, config) -> int:
    started = time.perf_counter()
    spec = auditing.FamilySpec.parse(args.family)
    rows, all_ok = auditing.run_audit(spec, args.count, args.seed, _constants(config))
    table = auditing.render_rows(rows)
    report = formats.Report()
    report.add("command", "audit").add("family", args.family)
    report.add("count", args.count).add("seed", args.seed)
    report.add("bounds-ok", str(all_ok).lower())
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(table)
        report.add("table", args.out)
    else:
        report.add("table", "inline")
    if args.figures:
        for path in figures.render_audit_figures(rows, args.figures, spec.kind):
            report.add("figure", path)
    _emit(report, args, started, "" if args.out else table)
    return EXIT_YES if all_ok else EXIT_NO


_COMMANDS = {
    "solve": _cmd_solve,
    "reduce": _cmd_reduce,
    "kernelize": _cmd_kernelize,
    "compose": _cmd_compose,
    "verify-composition": _cmd_verify_composition,
    "validate-decomposition": _cmd_validate_decomposition,
    "audit": _cmd_audit,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        config = _load_config(args.config)
        return _COMMANDS[args.command](args, config)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (PwkitError, OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
