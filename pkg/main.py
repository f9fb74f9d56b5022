"""
Command-line front end for the cluster editing solvers.

Exit codes: 0 for a Yes answer (or a successful generate/stats/verify),
1 for a No answer or an invalid solution, 2 for usage and input errors.
"""
import argparse
import logging
import os
import sys
from typing import List, Optional, TextIO, Tuple

import networkx as nx
import numpy as np
from dotenv import load_dotenv

from core.instance import AnnotatedInstance, NoInstance, PairState, Params, build_instance
from core.solution import Solution, Verdict, validate_solution
from generators.formula import Formula
from generators.gadgets import GADGET_PARAMS, build_sat_reduction, clause_gadget, variable_gadget
from generators.planted import planted_instance
from oracle.partitions import oracle_minimum, script_for_partition
from reduction.driver import kernel_stats, reduce
from reduction.trace import RuleTrace
from solver.branching import solve_decision, solve_minimum
from solver.large_clusters import in_large_cluster_regime, solve_large_clusters
from solver.zero_one import in_zero_one_regime, solve_zero_one
from tools.file_operations import FileOperations
from utils.file_handler import FileHandler, InstanceFile, ParseError

# Load environment variables
load_dotenv()

EXIT_YES = 0
EXIT_NO = 1
EXIT_USAGE = 2

MODES = ("auto", "branch", "poly", "zero-one")

logger = logging.getLogger("cluster_edit")


class UsageError(Exception):
    """Input problem that is not a parse error, such as an unreadable file."""


def configure_logging() -> None:
    level_name = os.getenv("CLUSTER_EDIT_LOG_LEVEL", "WARNING").upper()
    logging.basicConfig(
        level=getattr(logging, level_name, logging.WARNING),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


def _read_text(path: str) -> str:
    file_ops = FileOperations(
        root_dir=os.getcwd(),
        max_file_size_mb=int(os.getenv("CLUSTER_EDIT_MAX_FILE_MB", "5")),
    )
    result = file_ops.read_file(path)
    if result["status"] != "success":
        raise UsageError(result["message"])
    return result["content"]


def _params(args: argparse.Namespace) -> Params:
    return Params(a=args.add, d=args.delete, s=args.min_size, k=args.budget)


def _load(args: argparse.Namespace) -> Tuple[InstanceFile, AnnotatedInstance]:
    parsed = FileHandler.parse_instance(_read_text(args.instance))
    inst = build_instance(parsed.n, parsed.edges, _params(args), parsed.alpha, parsed.delta)
    return parsed, inst


def choose_mode(params: Params, requested: str) -> str:
    if requested not in MODES:
        raise UsageError(f"Unknown mode {requested!r}; expected one of {', '.join(MODES)}")
    if requested != "auto":
        return requested
    if in_large_cluster_regime(params.a, params.d, params.s):
        return "poly"
    if in_zero_one_regime(params.a, params.d, params.s):
        return "zero-one"
    return "branch"


def run_solver(inst: AnnotatedInstance, mode: str) -> Solution:
    if mode == "poly":
        solution, stats = solve_large_clusters(inst)
    elif mode == "zero-one":
        solution, stats = solve_zero_one(inst)
    elif inst.residual_k is None:
        solution, stats = solve_minimum(inst)
    else:
        solution, stats = solve_decision(inst)
    logger.info(
        "mode=%s verdict=%s nodes=%d reductions=%d",
        mode, solution.verdict.value, stats.nodes_expanded, stats.reductions_applied,
    )
    return solution


def cmd_solve(args: argparse.Namespace, out: TextIO) -> int:
    _, inst = _load(args)
    mode = choose_mode(inst.params, args.mode or os.getenv("CLUSTER_EDIT_MODE", "auto"))
    solution = run_solver(inst, mode)
    out.write(FileHandler.serialize_solution(solution))
    return EXIT_YES if solution.is_yes else EXIT_NO


def _reduced_file(inst: AnnotatedInstance) -> InstanceFile:
    """Active part of a reduced instance, with annotations kept as comments."""
    active = set(inst.vertices())
    edges = [(u, v) for u, v in inst.current_edges() if u in active and v in active]
    reduced = InstanceFile(
        n=inst.n,
        edges=edges,
        alpha={v: int(inst.alpha[v]) for v in sorted(active) if inst.alpha[v] != inst.params.a},
        delta={v: int(inst.delta[v]) for v in sorted(active) if inst.delta[v] != inst.params.d},
    )
    for cluster in inst.removed_clusters:
        reduced.comments.append("removed " + " ".join(map(str, cluster)))
    for state, label in ((PairState.PERMANENT, "permanent"), (PairState.FORBIDDEN, "forbidden")):
        rows, cols = np.nonzero(np.triu(inst.state_mask(state), 1))
        for u, v in zip(rows.tolist(), cols.tolist()):
            reduced.comments.append(f"{label} {u} {v}")
    for edit in inst.edit_log:
        reduced.comments.append(f"charged {edit}")
    if inst.residual_k is not None:
        reduced.comments.append(f"residual-k {inst.residual_k}")
    reduced.comments.extend(kernel_stats(inst).as_lines())
    return reduced


def cmd_reduce(args: argparse.Namespace, out: TextIO) -> int:
    _, inst = _load(args)
    trace: RuleTrace = []
    outcome = reduce(inst, trace=trace)
    trace_lines = [f"trace {entry}" for entry in trace] if args.trace else []
    if isinstance(outcome, NoInstance):
        out.write(FileHandler.serialize_solution(Solution.no(outcome.reason), trace_lines))
        return EXIT_NO
    reduced = _reduced_file(outcome.instance)
    reduced.comments.extend(trace_lines)
    out.write(FileHandler.serialize_instance(reduced, with_comments=True))
    return EXIT_YES


def cmd_oracle(args: argparse.Namespace, out: TextIO) -> int:
    parsed = FileHandler.parse_instance(_read_text(args.instance))
    params = _params(args)
    build_instance(parsed.n, parsed.edges, params, parsed.alpha, parsed.delta)
    result = oracle_minimum(parsed.n, parsed.edges, params, parsed.alpha, parsed.delta)
    if not result.feasible:
        out.write(FileHandler.serialize_solution(Solution.no("oracle")))
        return EXIT_NO
    witness = result.witnesses[0]
    solution = Solution.yes(script_for_partition(parsed.n, parsed.edges, witness), witness)
    out.write(FileHandler.serialize_solution(solution, [f"witnesses {len(result.witnesses)}"]))
    return EXIT_YES


def cmd_verify(args: argparse.Namespace, out: TextIO) -> int:
    parsed = FileHandler.parse_instance(_read_text(args.instance))
    claimed = FileHandler.parse_solution(_read_text(args.solution))
    params = _params(args)
    build_instance(parsed.n, parsed.edges, params, parsed.alpha, parsed.delta)
    if claimed.verdict is Verdict.NO:
        out.write(f"unverifiable: solution answers no ({claimed.reason})\n")
        return EXIT_NO
    report = validate_solution(parsed.n, parsed.edges, claimed.edits, params, parsed.alpha, parsed.delta)
    if report.valid and claimed.clusters and sorted(claimed.clusters) != report.clusters:
        report.valid, report.reason = False, "cluster lines disagree with the edited graph"
    if not report.valid:
        out.write(f"invalid: {report.reason}\n")
        return EXIT_NO
    out.write(f"valid: {len(claimed.edits)} edits, {len(report.clusters)} clusters\n")
    return EXIT_YES


def _parse_clause(text: str) -> Tuple[int, int, int]:
    parts = [p for p in text.replace(",", " ").split() if p]
    if len(parts) != 3 or not all(p.isdecimal() for p in parts):
        raise argparse.ArgumentTypeError(f"clause must be three variable ids, got {text!r}")
    return tuple(int(p) for p in parts)


def _parse_sizes(text: str) -> List[int]:
    parts = [p for p in text.replace(",", " ").split() if p]
    if not parts or not all(p.isdecimal() for p in parts):
        raise argparse.ArgumentTypeError(f"sizes must be positive integers, got {text!r}")
    return [int(p) for p in parts]


def cmd_generate(args: argparse.Namespace, out: TextIO) -> int:
    if args.kind == "sat":
        formula = Formula(num_vars=args.vars, clauses=args.clause or [])
        layout = build_sat_reduction(formula, k=args.budget)
        instance = InstanceFile(n=layout.instance.n, edges=sorted(layout.instance.original_edges))
        instance.comments.append(f"params a {GADGET_PARAMS.a} d {GADGET_PARAMS.d} s {GADGET_PARAMS.s}")
        for index, wired in enumerate(layout.clause_edges):
            stubs = " ".join(f"{c}-{p}" for c, p in wired)
            instance.comments.append(f"clause {index} vertex {layout.clause_vertex[index]} stubs {stubs}")
        for var, slots in layout.var_slots.items():
            instance.comments.append(f"variable {var} pendants " + " ".join(map(str, slots)))
    elif args.kind == "planted":
        planted = planted_instance(args.sizes, args.flips, args.seed)
        instance = InstanceFile(n=planted.n, edges=list(planted.edges))
        instance.comments.append(f"seed {args.seed} flips {args.flips}")
        for block in planted.partition:
            instance.comments.append("planted " + " ".join(map(str, block)))
    else:
        fragment = clause_gadget() if args.kind == "clause-gadget" else variable_gadget()
        instance = InstanceFile(n=fragment.n, edges=list(fragment.edges))
        instance.comments.append(f"params a {GADGET_PARAMS.a} d {GADGET_PARAMS.d} s {GADGET_PARAMS.s}")
        for label, vertex in fragment.labels.items():
            instance.comments.append(f"label {label} {vertex}")
    out.write(FileHandler.serialize_instance(instance, with_comments=True))
    return EXIT_YES


def cmd_stats(args: argparse.Namespace, out: TextIO) -> int:
    parsed = FileHandler.parse_instance(_read_text(args.instance))
    graph = nx.Graph()
    graph.add_nodes_from(range(parsed.n))
    graph.add_edges_from(parsed.edges)
    parts = list(nx.connected_components(graph))
    cluster_graph = all(
        graph.subgraph(p).number_of_edges() == len(p) * (len(p) - 1) // 2 for p in parts
    )
    degrees = [deg for _, deg in graph.degree()]
    out.write(f"vertices {parsed.n}\n")
    out.write(f"edges {len(parsed.edges)}\n")
    out.write(f"components {len(parts)}\n")
    out.write(f"cluster-graph {'yes' if cluster_graph else 'no'}\n")
    out.write(f"max-degree {max(degrees) if degrees else 0}\n")
    out.write(f"budget-overrides {len(parsed.alpha)} {len(parsed.delta)}\n")
    return EXIT_YES


def _add_param_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("instance", help="instance file")
    parser.add_argument("--add", type=int, required=True, help="per-vertex addition budget a")
    parser.add_argument("--delete", type=int, required=True, help="per-vertex deletion budget d")
    parser.add_argument("--min-size", type=int, default=1, help="minimum cluster size s")
    parser.add_argument("--budget", type=int, default=None, help="global edit budget k")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cluster-edit", description="Exact multi-parameterized cluster editing")
    commands = parser.add_subparsers(dest="command")
    commands.required = True

    solve = commands.add_parser("solve", help="solve an instance")
    _add_param_flags(solve)
    solve.add_argument("--mode", choices=MODES, default=None, help="solver path (default: CLUSTER_EDIT_MODE or auto)")
    solve.set_defaults(handler=cmd_solve)

    reduce_cmd = commands.add_parser("reduce", help="apply the reduction rules and print the reduced instance")
    _add_param_flags(reduce_cmd)
    reduce_cmd.add_argument("--trace", action="store_true", help="append the rule trace as comments")
    reduce_cmd.set_defaults(handler=cmd_reduce)

    oracle = commands.add_parser("oracle", help="brute-force reference solve (at most 12 vertices)")
    _add_param_flags(oracle)
    oracle.set_defaults(handler=cmd_oracle)

    verify = commands.add_parser("verify", help="check a solution file against an instance")
    _add_param_flags(verify)
    verify.add_argument("solution", help="solution file")
    verify.set_defaults(handler=cmd_verify)

    generate = commands.add_parser("generate", help="write a generated instance")
    kinds = generate.add_subparsers(dest="kind")
    kinds.required = True
    sat = kinds.add_parser("sat", help="reduction from a positive 1-in-3 SAT formula")
    sat.add_argument("--vars", type=int, required=True)
    sat.add_argument("--clause", type=_parse_clause, action="append", help="three variable ids, e.g. 0,1,2")
    sat.add_argument("--budget", type=int, default=None)
    planted = kinds.add_parser("planted", help="planted clustering with random flips")
    planted.add_argument("--sizes", type=_parse_sizes, required=True, help="cluster sizes, e.g. 3,3,2")
    planted.add_argument("--flips", type=int, default=0)
    planted.add_argument("--seed", type=int, required=True)
    kinds.add_parser("clause-gadget", help="single clause gadget with its three stubs")
    kinds.add_parser("variable-gadget", help="single variable gadget")
    generate.set_defaults(handler=cmd_generate)

    stats = commands.add_parser("stats", help="print basic graph statistics")
    stats.add_argument("instance", help="instance file")
    stats.set_defaults(handler=cmd_stats)
    return parser


def main(argv: Optional[List[str]] = None, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_YES
    configure_logging()
    try:
        return args.handler(args, out)
    except (ParseError, UsageError, ValueError) as e:
        logger.debug("Command failed", exc_info=True)
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
