"""Command-line entry point: ``discrimnet {stats,indices,aggregates,estimate,linkpred}``.

Exit codes: 0 success, 1 usage error, 2 input error, 3 computation error.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from typing import Any, Sequence, TextIO

import numpy as np

from discrimnet import graph as gc
from discrimnet import indices as ix
from discrimnet import linkpred as lp
from discrimnet import sampling as sp
from discrimnet.sssp import UnreachablePolicy

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_COMPUTE = 0, 1, 2, 3
DEFAULT_SEED = 0
# stats computes the discriminative diameter only up to this many vertices
STATS_EXACT_LIMIT = 20_000

logger = logging.getLogger("discrimnet")


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def fmt(x: float | int | None) -> str:
    """12 significant digits; integers stay integral; missing values print ``NA``."""
    if x is None:
        return "NA"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.12g}"


def _json_value(x: Any) -> Any:
    # JSON carries the same rounded numbers as the TSV
    if x is None or isinstance(x, (str, bool)):
        return x
    if isinstance(x, (int, np.integer)):
        return int(x)
    return float(fmt(x))


def _csv(value: str) -> list[str]:
    return [p.strip() for p in value.split(",") if p.strip()]


def _common(p: argparse.ArgumentParser, weighted: bool = True) -> None:
    p.add_argument("--input", "-i", required=True, help="edge-list file")
    if weighted:
        p.add_argument("--weighted", action="store_true", help="third column is a positive weight")
        p.add_argument("--lcc", action="store_true", help="restrict to the largest connected component")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.add_argument("--threads", type=int, default=None, help="worker cap (env DISCRIMNET_THREADS)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="discrimnet", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("stats", help="size, components and discriminative diameter")
    _common(p)

    p = sub.add_parser("indices", help="per-vertex index scores and discriminability")
    _common(p)
    p.add_argument("--kind", default="dc", help="comma list of c,dc,hc,dhc,e,de (or full names)")
    p.add_argument("--policy", choices=[x.value for x in UnreachablePolicy], default=None)
    p.add_argument("--unnormalized", action="store_true", help="drop the 1/(n-1) factor")
    p.add_argument("--digits", type=int, default=9, help="significant digits for discriminability")

    p = sub.add_parser("aggregates", help="APL, ADPL, AE, ADE, diameters and radii")
    _common(p)
    p.add_argument("--policy", choices=[x.value for x in UnreachablePolicy], default="substitute_n")

    p = sub.add_parser("estimate", help="sampled ADPL/ADE")
    _common(p)
    p.add_argument("--kind", choices=("adpl", "ade"), default="adpl")
    p.add_argument("--policy", choices=[x.value for x in UnreachablePolicy], default="substitute_n")
    how = p.add_mutually_exclusive_group()
    how.add_argument("--samples", type=int)
    how.add_argument("--sample-pct", type=float)
    how.add_argument("--epsilon", type=float)
    how.add_argument("--exhaustive", action="store_true")
    p.add_argument("--delta", type=float, default=0.05)
    p.add_argument("--bound", type=float, default=None, help="per-sample bound (default log2 n)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = sub.add_parser("linkpred", help="temporal link prediction report")
    _common(p, weighted=False)
    p.add_argument("--ratio", default="0.6,0.7,0.8,0.9")
    p.add_argument("--method", default="lidin,negspl,aa")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--edge-cap", type=int, default=None)
    p.add_argument("--nt", type=int, default=None)
    p.add_argument("--candidate-cap", type=int, default=lp.DEFAULT_CANDIDATE_CAP)
    return parser


def _load(args: argparse.Namespace) -> gc.Graph:
    try:
        g = gc.load_edge_list(args.input, weighted=getattr(args, "weighted", False))
    except (OSError, gc.EdgeListError) as exc:
        raise InputError(str(exc)) from exc
    if getattr(args, "lcc", False):
        g = gc.largest_connected_component(g)
    return g


def _emit(out: TextIO, fmt_name: str, rows: list[tuple[str, Any]], doc: dict[str, Any]) -> None:
    if fmt_name == "json":
        json.dump(doc, out, indent=2, sort_keys=False)
        out.write("\n")
    else:
        for name, value in rows:
            out.write(f"{name}\t{fmt(value)}\n")


def cmd_stats(args: argparse.Namespace, out: TextIO) -> None:
    g = _load(args)
    comp = gc.connected_components(g)
    lcc = gc.largest_connected_component(g)
    rows: list[tuple[str, Any]] = [
        ("n", g.n),
        ("m", g.m),
        ("components", int(comp.max()) + 1 if g.n else 0),
        ("lcc_n", lcc.n),
        ("lcc_m", lcc.m),
    ]
    if 2 <= lcc.n <= STATS_EXACT_LIMIT:
        prof = ix.vertex_profiles(lcc, threads=args.threads)
        rows.append(("discriminative_diameter", float(prof.discriminative_eccentricity.max())))
    else:
        rows.append(("discriminative_diameter", None))
    _emit(out, args.format, rows, {k: _json_value(v) for k, v in rows})


def cmd_indices(args: argparse.Namespace, out: TextIO) -> None:
    try:
        kinds = [ix.IndexKind(ix.KIND_ALIASES.get(k, k)) for k in _csv(args.kind)]
    except ValueError as exc:
        raise UsageError(f"unknown index kind in {args.kind!r}") from exc
    if not kinds or ix.IndexKind.GENERALIZED in kinds:
        raise UsageError("--kind needs at least one of c,dc,hc,dhc,e,de")
    g = _load(args)
    vectors = [
        ix.compute_index(g, k, args.policy, normalized=not args.unnormalized, threads=args.threads)
        for k in kinds
    ]
    disc = [ix.discriminability(v, args.digits) for v in vectors]
    labels = [g.label(v) for v in range(g.n)]
    if args.format == "json":
        doc = {
            "n": g.n,
            "normalized": not args.unnormalized,
            "policy": {k.value: v.policy.value for k, v in zip(kinds, vectors)},
            "vertices": labels,
            "scores": {k.value: [_json_value(x) for x in v.scores] for k, v in zip(kinds, vectors)},
            "discriminability": {k.value: _json_value(d) for k, d in zip(kinds, disc)},
        }
        json.dump(doc, out, indent=2)
        out.write("\n")
        return
    out.write("vertex\t" + "\t".join(k.value for k in kinds) + "\n")
    for v, label in enumerate(labels):
        out.write(label + "\t" + "\t".join(fmt(vec.scores[v]) for vec in vectors) + "\n")
    out.write("discriminability\t" + "\t".join(fmt(d) for d in disc) + "\n")


def cmd_aggregates(args: argparse.Namespace, out: TextIO) -> None:
    g = _load(args)
    agg = ix.compute_aggregates(g, args.policy, threads=args.threads)
    rows = list(agg.as_dict().items())
    _emit(out, args.format, rows, {k: _json_value(v) for k, v in rows})


def cmd_estimate(args: argparse.Namespace, out: TextIO) -> None:
    g = _load(args)
    if args.exhaustive:
        samples = None
    elif args.samples is not None:
        samples = args.samples
    elif args.sample_pct is not None:
        samples = sp.samples_from_percent(g.n, args.sample_pct)
    elif args.epsilon is not None:
        bound = args.bound if args.bound is not None else sp.log_bound(g.n)
        samples = sp.required_sample_size(args.epsilon, args.delta, bound)
    else:
        raise UsageError("one of --samples, --sample-pct, --epsilon or --exhaustive is required")
    fn = sp.estimate_adpl if args.kind == "adpl" else sp.estimate_ade
    res = fn(
        g,
        samples,
        args.seed,
        policy=args.policy,
        exhaustive=args.exhaustive,
        threads=args.threads,
        keep_samples=False,
    )
    rows: list[tuple[str, Any]] = [
        ("estimate", res.estimate),
        ("samples", res.samples_used),
        ("seed", res.seed if res.seed is not None else "NA"),
    ]
    if args.format == "json":
        _emit(out, "json", rows, {"kind": args.kind, **{k: _json_value(v) for k, v in rows}})
    else:
        for name, value in rows:
            out.write(f"{name}\t{value if isinstance(value, str) else fmt(value)}\n")


def cmd_linkpred(args: argparse.Namespace, out: TextIO) -> None:
    try:
        ratios = [float(r) for r in _csv(args.ratio)]
        methods = [lp.Method(m.lower()) for m in _csv(args.method)]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if not ratios or not methods:
        raise UsageError("--ratio and --method must be non-empty")
    try:
        edges = gc.load_temporal_edge_list(args.input)
    except (OSError, gc.EdgeListError) as exc:
        raise InputError(str(exc)) from exc
    rows = lp.evaluate(
        edges,
        ratios,
        methods,
        seed=args.seed,
        edge_cap=args.edge_cap,
        n_t=args.nt,
        threads=args.threads,
        candidate_cap=args.candidate_cap,
    )
    if args.format == "json":
        doc = {
            "seed": args.seed,
            "rows": [
                {
                    "ratio": _json_value(r.ratio),
                    "method": r.method.value,
                    "auc": _json_value(r.auc),
                    "q": _json_value(r.q),
                    "test_pairs": r.test_pairs,
                    "nt": r.nt,
                }
                for r in rows
            ],
        }
        json.dump(doc, out, indent=2)
        out.write("\n")
        return
    out.write("ratio\tmethod\tauc\tq\ttest_pairs\tnt\n")
    for r in rows:
        out.write(
            f"{fmt(r.ratio)}\t{r.method.value}\t{fmt(r.auc)}\t{fmt(r.q)}\t{r.test_pairs}\t{r.nt}\n"
        )


COMMANDS = {
    "stats": cmd_stats,
    "indices": cmd_indices,
    "aggregates": cmd_aggregates,
    "estimate": cmd_estimate,
    "linkpred": cmd_linkpred,
}


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    """Run one command; returns the exit code instead of exiting."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
        if args.threads is not None and args.threads < 1:
            raise UsageError("--threads must be >= 1")
        COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"discrimnet: usage error: {exc}", file=err)
        return EXIT_USAGE
    except InputError as exc:
        print(f"discrimnet: input error: {exc}", file=err)
        return EXIT_INPUT
    except (ValueError, KeyError, ArithmeticError) as exc:
        print(f"discrimnet: error: {exc}", file=err)
        return EXIT_COMPUTE
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
