"""Command-line interface: ``cliquegen <command> [options]``.

Errors are reported on stderr as a single line ``error: <kind>: <message>``
with exit status 2 for usage errors and 1 for everything else. Any
subcommand accepts ``--config FILE`` holding ``key=value`` lines (keys are
long option names); options given on the command line take precedence.
"""
from __future__ import annotations

import argparse
import io
import logging
import os
import sys

import numpy as np

from . import bounds, graph as graphmod, models, sweep
from .cliques import DEFAULT_MAX_CLIQUES, enumerate_maximal_cliques
from .estimators import MODEL_NAMES, MaxCliqueGraphModel, make_model
from .overlap import estimate_overlap
from .rng import stream
from .stats import StatsReport, stats_report

KIND_CHOICES = ("ei", "ni", "fd", "mcei", "mcni", "mcfd")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load_graph(args) -> graphmod.Graph:
    parsed = graphmod.read_graph(args.input, relabel=getattr(args, "relabel", False))
    if parsed.self_loops:
        logging.getLogger("cliquegen").warning("dropped %d self-loop line(s) from %s", parsed.self_loops, args.input)
    if parsed.id_map is not None and getattr(args, "id_map", None):
        graphmod.write_id_map(parsed.id_map, args.id_map)
    return parsed.graph


def _out(path):
    if path in (None, "-"):
        return sys.stdout.buffer
    return open(path, "wb")


def _write_text(path, text: str) -> None:
    fh = _out(path)
    try:
        fh.write(text.encode("utf-8"))
        fh.flush()
    finally:
        if fh is not sys.stdout.buffer:
            fh.close()


def _csv(rows, columns) -> str:
    buf = io.StringIO()
    sweep.write_csv(rows, columns, buf)
    return buf.getvalue()


def cmd_stats(args) -> None:
    g = _load_graph(args)
    ref = graphmod.read_graph(args.reference, relabel=args.relabel).graph if args.reference else None
    report = stats_report(g, reference=ref)
    _write_text(args.out, _csv([report.as_dict()], StatsReport.columns()))


def cmd_cliques(args) -> None:
    g = _load_graph(args)
    cs = enumerate_maximal_cliques(g, max_cliques=args.max_cliques)
    lines = [" ".join(map(str, c)) for c in cs]
    lines.append(f"# count={len(cs)} max_size={cs.max_size}")
    _write_text(args.out, "\n".join(lines) + "\n")


def _fit(args, g) -> MaxCliqueGraphModel:
    return MaxCliqueGraphModel(kind=args.kind, p=args.p, epsilon=args.epsilon, max_iter=args.max_iters).fit(g)


def cmd_fit(args) -> None:
    model = _fit(args, _load_graph(args))
    fit = model.residual_
    _write_text(args.out, "".join("%.17g\n" % x for x in fit.logits))
    print(f"converged={int(fit.converged)} iterations={fit.n_iter} error={fit.final_error:.6g}", file=sys.stderr)
    if not fit.converged:
        raise RuntimeError(f"residual fit did not converge (error {fit.final_error:.3g})")


def cmd_sample(args) -> None:
    model = _fit(args, _load_graph(args))
    if not model.residual_.converged:
        logging.getLogger("cliquegen").warning("residual fit did not converge; sampling anyway")
    os.makedirs(args.out_dir, exist_ok=True)
    width = max(4, len(str(args.count - 1)))
    for k in range(args.count):
        g = model.draw(stream(args.seed, k))
        graphmod.write_graph(g, os.path.join(args.out_dir, f"sample_{k:0{width}d}.txt"))


def _model_from_args(args):
    g = _load_graph(args) if args.input else None
    return make_model(args.model, args.p, n_nodes=args.n, graph=g)


def cmd_overlap(args) -> None:
    model = _model_from_args(args)
    est = estimate_overlap(model, args.pairs, args.seed, pairing=args.pairing or "disjoint")
    row = {"model": args.model, "overlap": est.overlap, "volume": est.volume,
           "std_error": est.std_error, "pairs_used": est.pairs_used}
    _write_text(args.out, _csv([row], ["model", "overlap", "volume", "std_error", "pairs_used"]))


def cmd_verify_bounds(args) -> None:
    model = _model_from_args(args)
    kinds = args.kind or [model.level]
    rows = []
    for kind in kinds:
        rep = bounds.verify_bound(model, kind=kind, k=args.k, num_samples=args.samples, seed=args.seed,
                                  pairing=args.pairing or "all", name=args.model)
        rows.append(rep.as_dict())
    _write_text(args.out, _csv(rows, bounds.BoundReport.columns()))


def cmd_sweep(args) -> None:
    grid = tuple(args.p_values) if args.p_values else sweep.make_grid(args.grid, square=args.square_grid)
    cfg = sweep.SweepConfig(
        input_path=args.input, kind=args.kind, p_grid=grid, samples_per_point=args.samples,
        pairs_for_overlap=args.pairs, seed=args.seed, output_path=args.out,
        epsilon=args.epsilon, max_iter=args.max_iters,
    )
    rows = sweep.run_sweep(cfg, graph=_load_graph(args))
    _write_text(args.out, sweep.sweep_csv(rows))


def cmd_gen_synthetic(args) -> None:
    if args.family == "ring-of-cliques":
        g = graphmod.ring_of_cliques(args.cliques, args.size)
    else:
        if args.n is None or args.p is None:
            raise UsageError(f"{args.family} needs --n and --p")
        sampler = {"gnp": models.gnp, "active-nodes": models.active_nodes,
                   "complete-or-empty": models.complete_or_empty}[args.family]
        g = sampler(args.n, args.p, stream(args.seed))
    _write_text(args.out, graphmod.write_edge_list(g).decode("ascii"))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cliquegen", description="Max-clique graph generative models and overlap tools.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more logging (repeatable)")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    common = _Parser(add_help=False)
    common.add_argument("--config", metavar="FILE", help="flat key=value file of option defaults")
    common.add_argument("--out", metavar="PATH", default=None, help="output file (default: stdout)")

    graph_in = _Parser(add_help=False)
    graph_in.add_argument("--input", metavar="PATH", help="edge-list file")
    graph_in.add_argument("--relabel", action="store_true", help="compact sparse node ids to 0..k-1")
    graph_in.add_argument("--id-map", metavar="PATH", help="with --relabel, write 'original new' id pairs here")

    fitting = _Parser(add_help=False)
    fitting.add_argument("--p", type=float, default=0.5, help="planting probability (default 0.5)")
    fitting.add_argument("--kind", choices=KIND_CHOICES, default="fd", help="dependency level (default fd)")
    fitting.add_argument("--epsilon", type=float, default=1e-8, help="degree error tolerance (default 1e-8)")
    fitting.add_argument("--max-iters", type=int, default=100, help="Newton iteration cap (default 100)")

    model_sel = _Parser(add_help=False)
    model_sel.add_argument("--model", choices=MODEL_NAMES, required=True)
    model_sel.add_argument("--n", type=int, help="node count for reference models")
    model_sel.add_argument("--p", type=float, required=True, help="model probability parameter")
    model_sel.add_argument("--seed", type=int, default=0)
    model_sel.add_argument("--pairing", choices=("disjoint", "all"),
                           help="sample pairing (default: disjoint for overlap, all for verify-bounds)")

    p = sub.add_parser("stats", parents=[common, graph_in], help="graph statistics as one CSV row")
    p.add_argument("--reference", metavar="PATH", help="reference graph for correlations and ratios")
    p.set_defaults(func=cmd_stats, needs_input=True)

    p = sub.add_parser("cliques", parents=[common, graph_in], help="list maximal cliques")
    p.add_argument("--max-cliques", type=int, default=DEFAULT_MAX_CLIQUES)
    p.set_defaults(func=cmd_cliques, needs_input=True)

    p = sub.add_parser("fit", parents=[common, graph_in, fitting], help="fit the residual model; write logits")
    p.set_defaults(func=cmd_fit, needs_input=True)

    p = sub.add_parser("sample", parents=[common, graph_in, fitting], help="write sampled edge lists")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--out-dir", metavar="DIR", required=True)
    p.set_defaults(func=cmd_sample, needs_input=True)

    p = sub.add_parser("overlap", parents=[common, graph_in, model_sel], help="Monte-Carlo overlap and volume")
    p.add_argument("--pairs", type=int, default=1000)
    p.set_defaults(func=cmd_overlap, needs_input=False)

    p = sub.add_parser("verify-bounds", parents=[common, graph_in, model_sel],
                       help="check triangle / k-cycle bounds empirically")
    p.add_argument("--kind", choices=("ei", "ni", "fd"), action="append",
                   help="bound level to test (repeatable; default: the model's own level)")
    p.add_argument("--k", type=int, default=3, help="cycle length (3 = triangles)")
    p.add_argument("--samples", type=int, default=10_000)
    p.set_defaults(func=cmd_verify_bounds, needs_input=False)

    p = sub.add_parser("sweep", parents=[common, graph_in], help="statistics across a grid of p")
    p.add_argument("--kind", choices=KIND_CHOICES, default="fd")
    p.add_argument("--grid", type=int, default=10, help="number of evenly spaced p values in [0, 1]")
    p.add_argument("--p-values", type=float, nargs="+", help="explicit ascending p values (overrides --grid)")
    p.add_argument("--square-grid", action="store_true", help="square the grid values")
    p.add_argument("--samples", type=int, default=10, help="samples per grid point")
    p.add_argument("--pairs", type=int, default=100, help="sample pairs for the pairwise overlap")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--epsilon", type=float, default=1e-8)
    p.add_argument("--max-iters", type=int, default=100)
    p.set_defaults(func=cmd_sweep, needs_input=True)

    p = sub.add_parser("gen-synthetic", parents=[common], help="write a synthetic graph")
    p.add_argument("family", choices=("ring-of-cliques", "gnp", "active-nodes", "complete-or-empty"))
    p.add_argument("--cliques", type=int, default=10)
    p.add_argument("--size", type=int, default=10)
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen_synthetic, needs_input=False)
    return parser


def read_config(path) -> list[tuple[str, str]]:
    items = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            if "=" not in s:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (x.strip() for x in s.split("=", 1))
            items.append((key.replace("_", "-"), value))
    return items


def _config_tokens(parser, command: str, items) -> list[str]:
    subparser = parser._subparsers._group_actions[0].choices[command]
    flags = {s: a for a in subparser._actions for s in a.option_strings}
    tokens = []
    for key, value in items:
        flag = "--" + key
        action = flags.get(flag)
        if action is None:
            raise UsageError(f"unknown config key {key!r} for {command}")
        if isinstance(action, argparse._StoreTrueAction):
            if value.lower() in ("1", "true", "yes", "on"):
                tokens.append(flag)
        elif action.nargs in ("+", "*"):
            tokens.extend([flag, *value.replace(",", " ").split()])
        else:
            tokens.extend([flag, value])
    return tokens


def _config_path(argv) -> str | None:
    for i, a in enumerate(argv):
        if a == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if a.startswith("--config="):
            return a.split("=", 1)[1]
    return None


def parse_args(argv):
    parser = build_parser()
    path = _config_path(argv)
    if path:
        commands = parser._subparsers._group_actions[0].choices
        idx = next((i for i, a in enumerate(argv) if a in commands), None)
        if idx is None:
            raise UsageError("--config needs a command")
        tokens = _config_tokens(parser, argv[idx], read_config(path))
        argv = argv[: idx + 1] + tokens + argv[idx + 1:]
    args = parser.parse_args(argv)
    if getattr(args, "needs_input", False) and not args.input:
        raise UsageError(f"{args.command} requires --input")
    return args


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parse_args(argv)
    except (UsageError, OSError) as exc:
        print(f"error: usage: {exc}".replace("\n", " "), file=sys.stderr)
        return 2
    logging.basicConfig(level=max(logging.DEBUG, logging.WARNING - 10 * args.verbose),
                        format="%(levelname)s %(name)s: %(message)s")
    np.seterr(all="ignore")
    try:
        args.func(args)
    except UsageError as exc:
        print(f"error: usage: {exc}".replace("\n", " "), file=sys.stderr)
        return 2
    except Exception as exc:
        print(f"error: {type(exc).__name__}: {exc}".replace("\n", " "), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
