"""
Diagnostic script to check the solver installation and configuration
"""
import os
import sys
from typing import List, Tuple

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

Check = Tuple[str, bool, str]


def _check_environment() -> Check:
    mode = os.getenv("CLUSTER_EDIT_MODE", "auto")
    level = os.getenv("CLUSTER_EDIT_LOG_LEVEL", "WARNING")
    size = os.getenv("CLUSTER_EDIT_MAX_FILE_MB", "5")
    if mode not in ("auto", "branch", "poly", "zero-one"):
        return "environment", False, f"CLUSTER_EDIT_MODE={mode} is not a known mode"
    if not size.isdecimal():
        return "environment", False, f"CLUSTER_EDIT_MAX_FILE_MB={size} is not a whole number"
    return "environment", True, f"mode={mode} log-level={level} max-file-mb={size}"


def _check_imports() -> Check:
    try:
        import networkx
        import numpy
        import pydantic
    except ImportError as e:
        return "imports", False, f"{e}; run: pip install -r requirements.txt"
    return "imports", True, f"numpy {numpy.__version__}, networkx {networkx.__version__}, pydantic {pydantic.VERSION}"


def _check_solver() -> Check:
    from core.instance import Params, build_instance
    from solver.branching import solve_minimum

    inst = build_instance(3, [(0, 1), (1, 2)], Params(a=1, d=1))
    solution, _ = solve_minimum(inst)
    if not solution.is_yes or solution.cost != 1:
        return "solver", False, f"path on three vertices solved with cost {solution.cost}, expected 1"
    return "solver", True, "path on three vertices solved with one edit"


def _check_oracle() -> Check:
    from core.instance import Params
    from oracle.partitions import oracle_minimum

    result = oracle_minimum(3, [(0, 1), (1, 2)], Params(a=1, d=1))
    if result.min_cost != 1 or len(result.witnesses) != 3:
        return "oracle", False, f"unexpected oracle answer {result}"
    return "oracle", True, "three optimal clusterings found for the path on three vertices"


def _check_planted() -> Check:
    from core.instance import Params, build_instance
    from generators.planted import planted_instance
    from oracle.partitions import oracle_minimum
    from solver.branching import solve_minimum

    planted = planted_instance([3, 3], flips=1, seed=11)
    params = Params(a=2, d=2)
    solution, _ = solve_minimum(build_instance(planted.n, planted.edges, params))
    expected = oracle_minimum(planted.n, planted.edges, params)
    if not solution.is_yes or not expected.feasible or solution.cost != expected.min_cost:
        return "planted", False, f"solver cost {solution.cost} but oracle cost {expected.min_cost} on a planted instance"
    return "planted", True, f"solver and oracle agree on a planted 3+3 instance (cost {solution.cost})"


def run_checks() -> List[Check]:
    checks = [_check_environment(), _check_imports()]
    if checks[-1][1]:
        for check in (_check_solver, _check_oracle, _check_planted):
            try:
                checks.append(check())
            except Exception as e:
                checks.append((check.__name__.replace("_check_", ""), False, f"{type(e).__name__}: {e}"))
    return checks


if __name__ == "__main__":
    print("=" * 60)
    print("Cluster Editing Solver Diagnostics")
    print("=" * 60)
    results = run_checks()
    for index, (name, ok, detail) in enumerate(results, start=1):
        print(f"\n{index}. {name}:")
        print("-" * 60)
        print(f"{'✓' if ok else '❌'} {detail}")
    print("\n" + "=" * 60)
    print("Diagnostics complete!")
    print("=" * 60)
    sys.exit(0 if all(ok for _, ok, _ in results) else 1)
