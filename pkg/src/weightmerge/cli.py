"""Command-line front end: ``compress``, ``verify`` and ``profile``.

Exit codes: 0 success, 1 unreadable or malformed input, 2 invalid request
or usage, 3 predicted and recomputed errors disagree, 4 oracle too large,
5 an oracle found a better redistribution than the plan (``verify`` only).
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence
from fractions import Fraction

from . import oracle
from .errors import InconsistentReport, ParseError, TooLarge, ValidationError
from .formats import (
    MODES,
    format_edge_list,
    format_signed,
    format_weight,
    parse_plan,
    render_records,
    resolve_plan,
)
from .graph import ContractionRequest, Mode, Redistribution, WeightedGraph, contract, load_graph
from .metrics import ErrorReport, marking_unit_error, total_error
from .paths import plan_for
from .trees import Marking, NeighborProfile, plan_tree, profile

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_INCONSISTENT, EXIT_TOO_LARGE = 0, 1, 2, 3, 4
EXIT_REFUTED = 5


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _load(args) -> tuple[WeightedGraph, ContractionRequest]:
    g = load_graph(_read(args.graph_file))
    plan = parse_plan(_read(args.plan_file))
    return g, resolve_plan(g, plan, args.mode)


def _step(text: str) -> Fraction | None:
    if text.lower() == "none":
        return None
    try:
        step = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad step {text!r}") from None
    if step <= 0:
        raise argparse.ArgumentTypeError("step must be positive")
    return step


# -- report assembly ----------------------------------------------------------


def _compress(g: WeightedGraph, req: ContractionRequest):
    """Plan, contract and recheck; returns everything a report needs."""
    tree_plan = None
    if req.mode is Mode.TREE_SINGLE_EDGE:
        tree_plan = plan_tree(g, next(iter(req.targets)))
        redist, predicted = tree_plan.redistribution, tree_plan.predicted_error
    else:
        path_plan = plan_for(g, req)
        redist, predicted = path_plan.redistribution, path_plan.predicted_error

    cg = contract(g, req, redist)
    report = total_error(g, req, redist)
    if tree_plan is not None:
        (e_star,) = req.targets
        units = marking_unit_error(g, e_star, tree_plan.marking)
        if units * g.weight(e_star) != report.outside_pairs:
            raise InconsistentReport(
                f"marking units {units} disagree with outside-pair error {report.outside_pairs}"
            )
        report = ErrorReport(report.total, report.outside_pairs, report.cross_pairs, units)
    if report.total != predicted:
        raise InconsistentReport(f"predicted error {predicted} but recomputed {report.total}")
    return cg, redist, predicted, report, tree_plan


def _redistribution_rows(g: WeightedGraph, req: ContractionRequest, redist: Redistribution):
    for e in g.edges:
        if e.id in req.targets:
            continue
        eps = redist.get(e.id)
        yield e, e.weight, e.weight + eps, eps


def _marking_rows(prof: NeighborProfile, m: Marking):
    for side, entries in (("left", prof.left), ("right", prof.right)):
        for eid, size in entries:
            yield side, eid, size, m.value(eid)


def _table(header: Sequence[str], rows: Sequence[Sequence[object]]) -> list[str]:
    cells = [list(map(str, header))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return ["  " + "  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]


def render_compress(g, req, cg, redist, predicted, report, tree_plan, fmt: str) -> str:
    if fmt == "records":
        recs = [{"record": "request", "mode": req.mode.value, "targets": ",".join(map(str, sorted(req.targets)))}]
        for e, old, new, eps in _redistribution_rows(g, req, redist):
            recs.append({
                "record": "edge", "id": e.id, "u": e.u, "v": e.v,
                "old": format_weight(old), "new": format_weight(new), "eps": format_weight(eps),
            })
        for e in cg.base.edges:
            recs.append({"record": "contracted", "u": e.u, "v": e.v, "w": format_weight(e.weight)})
        err = {
            "record": "error", "predicted": format_weight(predicted), "total": format_weight(report.total),
            "outside": format_weight(report.outside_pairs), "cross": format_weight(report.cross_pairs),
        }
        if report.unit_count is not None:
            err["units"] = report.unit_count
        recs.append(err)
        if tree_plan is not None:
            for side, eid, size, c in _marking_rows(tree_plan.profile, tree_plan.marking):
                recs.append({"record": "marking", "id": eid, "side": side, "size": size, "mark": format_weight(c)})
            recs.append({"record": "partial", "side": "left", "units": tree_plan.left_units})
            recs.append({"record": "partial", "side": "right", "units": tree_plan.right_units})
        return render_records(recs)

    out = [f"mode: {req.mode.value}", f"contracted: {', '.join(str(t) for t in sorted(req.targets))}", ""]
    out.append("redistribution")
    rows = [
        (e.id, f"{e.u}-{e.v}", format_weight(old), format_weight(new), format_signed(eps))
        for e, old, new, eps in _redistribution_rows(g, req, redist)
    ]
    out += _table(("edge", "endpoints", "old", "new", "eps"), rows) if rows else ["  (no surviving edges)"]
    out += ["", "contracted graph"]
    out += [f"  {line}" for line in format_edge_list(cg.base).splitlines()] or ["  (no edges)"]
    out += ["", "error"]
    err_rows = [
        ("predicted", format_weight(predicted)),
        ("total", format_weight(report.total)),
        ("outside_pairs", format_weight(report.outside_pairs)),
        ("cross_pairs", format_weight(report.cross_pairs)),
    ]
    if report.unit_count is not None:
        err_rows.append(("unit_count", report.unit_count))
    out += _table(("quantity", "value"), err_rows)
    if tree_plan is not None:
        out += ["", "marking"]
        out += _table(
            ("edge", "side", "size", "mark"),
            [(eid, side, size, format_weight(c)) for side, eid, size, c in _marking_rows(tree_plan.profile, tree_plan.marking)],
        )
        out += ["", "partial markings"]
        out += _table(
            ("side", "marked", "units"),
            [
                ("left", ",".join(map(str, sorted(tree_plan.left_partial.marked))) or "-", tree_plan.left_units),
                ("right", ",".join(map(str, sorted(tree_plan.right_partial.marked))) or "-", tree_plan.right_units),
            ],
        )
    return "\n".join(out) + "\n"


def _witness(w) -> str:
    if isinstance(w, Marking):
        return "marked:" + (",".join(map(str, sorted(w.marked))) or "-")
    return ",".join(f"{e}:{format_signed(d)}" for e, d in w.items()) or "unchanged"


def render_verdicts(verdicts: list[tuple[str, oracle.OracleVerdict]], fmt: str) -> str:
    if fmt == "records":
        return render_records(
            {
                "record": "oracle", "name": name, "verdict": v.verdict.split("(")[0],
                "best": format_weight(v.best_value), "claimed": format_weight(v.claimed_value),
                "gap": format_weight(v.gap), "evaluated": v.evaluated, "witness": _witness(v.best_witness),
            }
            for name, v in verdicts
        )
    rows = [
        (name, v.verdict, format_weight(v.best_value), format_weight(v.claimed_value), v.evaluated, _witness(v.best_witness))
        for name, v in verdicts
    ]
    return "\n".join(_table(("oracle", "verdict", "best", "claimed", "evaluated", "witness"), rows)) + "\n"


def render_profile(prof: NeighborProfile, fmt: str) -> str:
    if fmt == "records":
        recs = [{"record": "profile", "edge": prof.e_star, "v1": prof.v1, "v2": prof.v2, "S_L": prof.S_L, "S_R": prof.S_R}]
        for side, entries in (("left", prof.left), ("right", prof.right)):
            recs += [{"record": "subtree", "side": side, "id": eid, "size": size} for eid, size in entries]
        return render_records(recs)
    out = [
        f"edge {prof.e_star}: v1={prof.v1} v2={prof.v2}",
        f"S_L={prof.S_L} S_R={prof.S_R} left_edges={prof.n_left_edges} right_edges={prof.n_right_edges}",
    ]
    rows = [(side, eid, size) for side, entries in (("left", prof.left), ("right", prof.right)) for eid, size in entries]
    out += _table(("side", "edge", "size"), rows) if rows else ["  (no neighbour edges)"]
    return "\n".join(out) + "\n"


# -- subcommands --------------------------------------------------------------


def cmd_compress(args) -> int:
    g, req = _load(args)
    result = _compress(g, req)
    sys.stdout.write(render_compress(g, req, *result, args.format))
    if args.output_graph:
        with open(args.output_graph, "w", encoding="utf-8") as fh:
            fh.write(format_edge_list(result[0].base))
    return EXIT_OK


def cmd_verify(args) -> int:
    if not args.samples and args.grid_step is None and not args.enumerate:
        raise UsageError("no oracle selected: give --grid-step, --samples or --enumerate")
    g, req = _load(args)
    cap = args.max_oracle_size
    tree = req.mode is Mode.TREE_SINGLE_EDGE
    verdicts = []
    if args.enumerate:
        if not tree:
            raise UsageError("--enumerate applies to tree mode only")
        (e_star,) = req.targets
        m = len(profile(g, e_star).edges)
        if m > oracle.MAX_MARKING_EDGES or 2**m > cap:
            raise TooLarge(f"{2**m} markings exceed the oracle cap")
        verdicts.append(("enumerate", oracle.enumerate_markings(g, e_star)))
    if args.grid_step is not None:
        spec = oracle.GridSpec.default(g, req, args.grid_step)
        verdicts.append(("grid", oracle.grid_search_path(g, req, spec, max_cells=cap)))
    if args.samples:
        if args.samples > cap:
            raise TooLarge(f"{args.samples} samples exceed the oracle cap")
        if tree:
            v = oracle.sample_redistributions(
                g, req, args.samples, args.seed, fractional=True, part="outside"
            )
        else:
            v = oracle.sample_redistributions(g, req, args.samples, args.seed)
        verdicts.append(("samples", v))
    sys.stdout.write(render_verdicts(verdicts, args.format))
    return EXIT_OK if all(v.confirmed for _, v in verdicts) else EXIT_REFUTED


def cmd_profile(args) -> int:
    g, req = _load(args)
    if len(req.targets) != 1:
        raise ValidationError("profile needs exactly one contracted edge")
    sys.stdout.write(render_profile(profile(g, next(iter(req.targets))), args.format))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weightmerge",
        description="Contract edges of a weighted path or tree with optimal weight redistribution.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("graph_file", help="edge list, one 'u v w' per line")
        p.add_argument("plan_file", help="'contract u v' lines and an optional 'mode' line")
        p.add_argument("--mode", choices=MODES, help="override the derived contraction mode")
        p.add_argument("--format", choices=("table", "records"), default="table")

    p = sub.add_parser("compress", help="plan the redistribution and report the error")
    common(p)
    p.add_argument("--output-graph", metavar="PATH", help="also write the contracted edge list")
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("verify", help="check the plan against brute-force oracles")
    common(p)
    p.add_argument("--grid-step", type=_step, default=None, metavar="STEP",
                   help="grid search over neighbour weights at this step ('none' to skip)")
    p.add_argument("--samples", type=int, default=0, help="number of random redistributions")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--enumerate", action="store_true", help="enumerate every tree marking")
    p.add_argument("--max-oracle-size", type=int, default=oracle.MAX_GRID_CELLS,
                   help="cap on grid cells, markings or samples evaluated")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("profile", help="print the neighbour subtrees of one edge")
    common(p)
    p.set_defaults(func=cmd_profile)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ParseError as exc:
        code = EXIT_PARSE
        msg = str(exc)
    except (ValidationError, UsageError) as exc:
        code = EXIT_INVALID
        msg = str(exc)
    except InconsistentReport as exc:
        code = EXIT_INCONSISTENT
        msg = f"internal inconsistency: {exc}"
    except TooLarge as exc:
        code = EXIT_TOO_LARGE
        msg = str(exc)
    print(f"error: {msg}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
