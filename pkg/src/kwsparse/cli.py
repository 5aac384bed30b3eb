"""Command-line front end.

Exit codes: 0 success (verifier YES), 1 verifier NO, 2 usage or input
error, 3 computation error.
"""

from __future__ import annotations

import argparse
import random
import sys
import warnings

import numpy as np

from . import lowerbound
from .derand import DEFAULT_CAP, DerandConfig, derandomized_sparsify, derived_constants
from .errors import ExhaustedSeeds, KwsparseError, OutOfRange, ParseError
from .fixtures import by_name
from .graph import WeightedGraph, laplacian, parse_edge_list, round_to_multigraph, serialize_edge_list
from .kwise import build_space, sample_at, seed_count
from .resistance import effective_resistances_approx, effective_resistances_exact
from .sparsify import SparsifyParams, plan_sparsify
from .verify import COMPARE_SLACK, VerifierParams, verify

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_COMPUTE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonneg_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--tolerance", type=float, default=COMPARE_SLACK,
                        help="relative slack for numeric comparisons")
    common.add_argument("--quiet", action="store_true", help="suppress diagnostics on stderr")
    common.add_argument("--output", help="write the main output to this path")

    parser = _Parser(prog="kwsparse", description="Spectral sparsification with k-wise independence.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sparsify", parents=[common], help="sparsify an edge list with one seed")
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--delta", type=float, default=0.25)
    p.add_argument("--t", type=_positive_int, required=True, help="bits per probability")
    p.add_argument("--rate", type=float, help="override the oversampling rate")
    p.add_argument("--approx-gamma", type=float, default=0.0,
                   help="use (1 +- gamma) approximate resistances")
    p.add_argument("--noise-seed", type=_nonneg_int, default=1)
    pick = p.add_mutually_exclusive_group()
    pick.add_argument("--seed", type=_nonneg_int, default=0, help="seed index in the space")
    pick.add_argument("--random", nargs="?", const=0, type=_nonneg_int, metavar="RNG_SEED",
                      help="draw the seed index from a generator seeded with RNG_SEED")

    p = sub.add_parser("derand", parents=[common], help="deterministic sparsification")
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--cap", type=_positive_int, default=DEFAULT_CAP)
    p.add_argument("--jobs", type=_positive_int, default=1)
    p.add_argument("--noise-seed", type=_nonneg_int, default=1)

    p = sub.add_parser("verify", parents=[common], help="trace-power spectral proximity test")
    p.add_argument("reference")
    p.add_argument("candidate")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--mode", choices=("exact", "solver"), default="exact")
    p.add_argument("--noise-seed", type=_nonneg_int, default=1)

    p = sub.add_parser("resistances", parents=[common], help="effective resistance per edge")
    p.add_argument("graph")
    p.add_argument("--approx-gamma", type=float, default=0.0)
    p.add_argument("--noise-seed", type=_nonneg_int, default=1)

    p = sub.add_parser("kwise", parents=[common], help="one sample of a k-wise independent space")
    p.add_argument("--m", type=_positive_int, required=True)
    p.add_argument("--k", type=_positive_int, required=True)
    p.add_argument("--t", type=_positive_int, required=True)
    p.add_argument("--marginals", required=True, help="file of m probabilities")
    p.add_argument("--seed", type=_nonneg_int, default=0)

    p = sub.add_parser("lowerbound", parents=[common], help="exact lower-bound distributions")
    p.add_argument("--fixture", required=True, help="petersen, heawood, complete:n or cycle:n")
    p.add_argument("--dist", choices=("partition", "threewise"), default="partition")
    p.add_argument("--report", choices=("independence", "disconnect"), default="independence")

    p = sub.add_parser("round", parents=[common], help="round weights to a scaled multigraph")
    p.add_argument("graph")
    return parser


def _read_text(path, stdin) -> str:
    if path == "-":
        return stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _read_graph(path, stdin) -> WeightedGraph:
    return parse_edge_list(_read_text(path, stdin))


def _resistances(G, gamma, noise_seed):
    if gamma:
        return effective_resistances_approx(G, gamma, noise_seed)
    return effective_resistances_exact(G)


def _cmd_sparsify(args, stdin, note):
    params = SparsifyParams(args.k, args.eps, args.delta, args.rate)
    G = _read_graph(args.graph, stdin)
    R = _resistances(G, args.approx_gamma, args.noise_seed)
    plan = plan_sparsify(G, R, params, args.t)
    seed = args.seed
    if args.random is not None:
        seed = random.Random(args.random).randrange(plan.seed_count)
        note(f"rng_seed={args.random} seed={seed}")
    out = plan.output(seed)
    note(f"edges={out.edge_count} expected={float(np.sum(out.probs))!r}")
    return EXIT_OK, serialize_edge_list(out.graph)


def _cmd_derand(args, stdin, note):
    config = DerandConfig(args.k, args.eps, args.cap, args.jobs, args.noise_seed)
    G = _read_graph(args.graph, stdin)
    threshold = derived_constants(G, config).threshold
    try:
        H, report = derandomized_sparsify(G, config)
    except ExhaustedSeeds as exc:
        if exc.best is not None:
            note(exc.best.line(threshold))
        raise
    # The report line is part of the result, so --quiet keeps it.
    note(report.line(threshold), force=True)
    return EXIT_OK, serialize_edge_list(H)


def _cmd_verify(args, stdin, note):
    params = VerifierParams(args.eps, args.alpha, args.mode, args.noise_seed, args.tolerance)
    A = _read_graph(args.reference, stdin)
    B = _read_graph(args.candidate, stdin)
    if A.n != B.n:
        raise OutOfRange(f"graphs have {A.n} and {B.n} vertices")
    verdict = verify(laplacian(A), laplacian(B), params)
    return (EXIT_OK if verdict else EXIT_NO), f"{verdict}\n"


def _cmd_resistances(args, stdin, note):
    G = _read_graph(args.graph, stdin)
    R = _resistances(G, args.approx_gamma, args.noise_seed)
    lines = [f"{u} {v} {r!r}" for (u, v, _), r in zip(G.edges, R.values.tolist())]
    return EXIT_OK, "".join(line + "\n" for line in lines)


def _cmd_kwise(args, stdin, note):
    try:
        p = [float(x) for x in _read_text(args.marginals, stdin).split()]
    except ValueError as exc:
        raise ParseError(f"bad marginal: {exc}") from None
    if len(p) != args.m:
        raise OutOfRange(f"--m is {args.m} but the file lists {len(p)} marginals")
    space = build_space(p, args.k, args.t)
    note(f"seeds={seed_count(space)}")
    bits = sample_at(space, args.seed)
    return EXIT_OK, "".join("1" if b else "0" for b in bits) + "\n"


def _cmd_lowerbound(args, stdin, note):
    try:
        G = by_name(args.fixture)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.dist == "partition":
        dist = lowerbound.PartitionDistribution(G)
    else:
        kind, _, size = args.fixture.partition(":")
        if kind != "complete":
            raise UsageError("the three-wise distribution is defined on complete:n fixtures only")
        dist = lowerbound.ThreeWiseCompleteDistribution(int(size))
    if args.report == "disconnect":
        prob = lowerbound.disconnection_probability(dist)
        return EXIT_OK, f"disconnect={prob} ({float(prob)!r})\n"
    witness = lowerbound.independence_failure(dist)
    order = dist.m if witness is None else len(witness) - 1
    lines = [f"order={order}"]
    if witness is not None:
        lines.append("witness=" + " ".join(f"{dist.graph.edges[e][0]}-{dist.graph.edges[e][1]}" for e in witness))
    return EXIT_OK, "\n".join(lines) + "\n"


def _cmd_round(args, stdin, note):
    G = _read_graph(args.graph, stdin)
    rounded = round_to_multigraph(G)
    H = rounded.graph
    lines = [f"t={rounded.shift_t}", f"{H.n} {H.m}"]
    lines.extend(f"{u} {v} {int(w)}" for u, v, w in H.edges)
    return EXIT_OK, "\n".join(lines) + "\n"


COMMANDS = {
    "sparsify": _cmd_sparsify,
    "derand": _cmd_derand,
    "verify": _cmd_verify,
    "resistances": _cmd_resistances,
    "kwise": _cmd_kwise,
    "lowerbound": _cmd_lowerbound,
    "round": _cmd_round,
}


def run(argv, stdin=None, stdout=None, stderr=None) -> int:
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        stderr.write(f"kwsparse: usage error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE

    def note(message, force=False):
        if force or not args.quiet:
            stderr.write(message + "\n")

    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            code, text = COMMANDS[args.command](args, stdin, note)
        for w in caught:
            note(f"kwsparse: warning: {w.message}")
    except (UsageError, OutOfRange, ParseError, OSError) as exc:
        stderr.write(f"kwsparse: error: {exc}\n")
        return EXIT_USAGE
    except (KwsparseError, ArithmeticError, ValueError) as exc:
        stderr.write(f"kwsparse: {type(exc).__name__}: {exc}\n")
        return EXIT_COMPUTE
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main(argv=None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
